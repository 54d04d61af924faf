fn main() {
    std::process::exit(reecd::cli::run(std::env::args_os()));
}
