fn main() {
    std::process::exit(qfslopes::cli::run(std::env::args_os()));
}
