fn main() {
    std::process::exit(cubecx::cli::run(std::env::args_os()));
}
