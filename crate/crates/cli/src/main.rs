fn main() {
    std::process::exit(subrev_cli::run(std::env::args_os()));
}
