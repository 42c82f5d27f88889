fn main() {
    std::process::exit(noma_slicing::cli::main());
}
