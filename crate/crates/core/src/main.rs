fn main() {
    std::process::exit(isozeta::cli::run_from(std::env::args_os()));
}
