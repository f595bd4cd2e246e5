fn main() {
    std::process::exit(simbet::cli::main());
}
