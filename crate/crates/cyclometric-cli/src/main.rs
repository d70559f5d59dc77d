fn main() {
    std::process::exit(cyclometric_cli::run(std::env::args_os()));
}
