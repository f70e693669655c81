fn main() {
    std::process::exit(designlab::cli::main_exit());
}
