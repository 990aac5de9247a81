fn main() {
    std::process::exit(leglab::cli::run(std::env::args_os()));
}
