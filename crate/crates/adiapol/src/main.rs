fn main() {
    std::process::exit(adiapol::cli::run());
}
