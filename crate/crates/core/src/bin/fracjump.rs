fn main() {
    std::process::exit(fracjump::cli::main_with_args(std::env::args_os()));
}
