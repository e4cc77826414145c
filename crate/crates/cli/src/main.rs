fn main() {
    std::process::exit(proofminer_cli::run(std::env::args_os()));
}
