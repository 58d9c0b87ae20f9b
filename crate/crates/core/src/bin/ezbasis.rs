fn main() {
    std::process::exit(ezbasis::cli::run(std::env::args_os()));
}
