fn main() {
    std::process::exit(flagcone::cli::run());
}
