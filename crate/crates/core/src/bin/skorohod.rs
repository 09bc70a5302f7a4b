fn main() {
    std::process::exit(conformal_skorohod::cli::main_with(std::env::args_os()));
}
