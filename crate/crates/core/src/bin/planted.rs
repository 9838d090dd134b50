fn main() {
    std::process::exit(planted::harness::cli::run(std::env::args_os()));
}
