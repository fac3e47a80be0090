fn main() {
    std::process::exit(flagged_weyl::cli::run());
}
