fn main() {
    std::process::exit(partition_force::cli::main());
}
