fn main() {
    std::process::exit(fptkit_cli::run(std::env::args().collect()));
}
