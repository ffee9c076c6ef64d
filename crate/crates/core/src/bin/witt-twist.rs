fn main() {
    std::process::exit(witt_twist::cli::main_with_args(std::env::args_os()));
}
