fn main() {
    std::process::exit(anglevec::cli::run(std::env::args().collect()));
}
