fn main() {
    std::process::exit(covertjam::cli::run());
}
