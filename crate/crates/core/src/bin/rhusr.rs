fn main() {
    std::process::exit(rhusr::cli::main_with_args(std::env::args_os()));
}
