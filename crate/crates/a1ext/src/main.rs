fn main() {
    std::process::exit(a1ext::cli::main_with_args(std::env::args_os()));
}
