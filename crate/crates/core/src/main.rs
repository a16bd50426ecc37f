fn main() {
    std::process::exit(homfinsler::cli::run(std::env::args_os()));
}
