fn main() {
    std::process::exit(freydlab::cli::run(std::env::args_os()));
}
