fn main() {
    std::process::exit(indlab_cli::run(std::env::args_os()));
}
