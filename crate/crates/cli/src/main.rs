fn main() {
    std::process::exit(lpvv_cli::main_with_args(std::env::args_os()));
}
