fn main() {
    std::process::exit(ehvac::cli::run(std::env::args_os()));
}
