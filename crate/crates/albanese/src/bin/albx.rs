fn main() {
    std::process::exit(albanese::cli::run());
}
