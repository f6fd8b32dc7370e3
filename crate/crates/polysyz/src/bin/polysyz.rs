fn main() {
    std::process::exit(polysyz::cli::run(std::env::args()));
}
