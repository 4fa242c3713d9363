fn main() {
    std::process::exit(plap::cli::main_with_env());
}
