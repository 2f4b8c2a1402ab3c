fn main() {
    std::process::exit(qcoh::cli::main_from_env());
}
