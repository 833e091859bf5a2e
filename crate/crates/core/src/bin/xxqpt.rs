fn main() {
    std::process::exit(xxqpt::cli::run(std::env::args_os()));
}
