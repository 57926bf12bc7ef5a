fn main() {
    std::process::exit(dynmass::cli::main());
}
