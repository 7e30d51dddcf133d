fn main() {
    std::process::exit(csub::cli::run(std::env::args_os()));
}
