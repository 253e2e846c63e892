fn main() {
    std::process::exit(xorgap_cli::run(std::env::args_os()));
}
