fn main() {
    std::process::exit(polphase::cli::run(std::env::args_os()));
}
