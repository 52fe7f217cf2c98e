fn main() {
    std::process::exit(ethline::cli::run(std::env::args_os()));
}
