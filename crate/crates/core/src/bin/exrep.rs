fn main() {
    std::process::exit(exrep::cli::run(std::env::args_os()));
}
