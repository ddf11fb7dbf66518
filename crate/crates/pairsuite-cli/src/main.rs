fn main() {
    std::process::exit(pairsuite_cli::run());
}
