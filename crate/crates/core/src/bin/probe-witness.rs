fn main() {
    std::process::exit(probe_witness::cli::main_with_env());
}
