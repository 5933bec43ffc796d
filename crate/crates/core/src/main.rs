fn main() {
    std::process::exit(windtf::cli::run());
}
