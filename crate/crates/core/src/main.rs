fn main() {
    std::process::exit(fieldext::cli::main_with_args(std::env::args_os()));
}
