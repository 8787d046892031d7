fn main() {
    std::process::exit(biflogis::cli::main_from(std::env::args_os()));
}
