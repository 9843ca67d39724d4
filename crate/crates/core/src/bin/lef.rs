fn main() {
    std::process::exit(lefkit::cli::main_with_args(std::env::args_os()));
}
