fn main() {
    std::process::exit(ranklab::cli::run(std::env::args_os()));
}
