fn main() {
    std::process::exit(glis::cli::main_with_args(std::env::args_os()));
}
