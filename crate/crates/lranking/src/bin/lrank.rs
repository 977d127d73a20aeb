fn main() {
    std::process::exit(lranking::cli::run(std::env::args()));
}
