fn main() {
    std::process::exit(dimerq::cli::main());
}
