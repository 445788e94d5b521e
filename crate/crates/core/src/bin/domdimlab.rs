fn main() {
    std::process::exit(domdimlab::cli::main_with_args(std::env::args().collect()));
}
