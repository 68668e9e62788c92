fn main() {
    std::process::exit(kravchuk_cli::run(std::env::args_os()));
}
