fn main() {
    std::process::exit(berge::cli::run(std::env::args_os()));
}
