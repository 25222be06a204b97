fn main() {
    std::process::exit(fracduff_cli::run());
}
