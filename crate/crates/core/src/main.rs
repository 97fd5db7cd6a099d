fn main() {
    std::process::exit(pinchcert::cli::main_with_args(std::env::args_os()));
}
