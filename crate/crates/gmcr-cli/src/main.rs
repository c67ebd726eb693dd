fn main() {
    std::process::exit(gmcr_cli::run(std::env::args_os()));
}
