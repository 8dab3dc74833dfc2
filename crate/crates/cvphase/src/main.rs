fn main() {
    std::process::exit(cvphase::cli::main());
}
