fn main() {
    std::process::exit(superpair::cli::run(std::env::args_os()));
}
