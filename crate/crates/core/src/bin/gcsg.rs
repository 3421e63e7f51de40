fn main() {
    std::process::exit(gcsg::cli::run_cli(std::env::args_os()));
}
