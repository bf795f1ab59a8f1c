fn main() {
    std::process::exit(riccati::cli::main_with_args(std::env::args_os()));
}
