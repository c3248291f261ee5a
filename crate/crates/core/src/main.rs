fn main() {
    std::process::exit(socdef::cli::run(std::env::args_os()));
}
