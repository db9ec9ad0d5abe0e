fn main() {
    std::process::exit(multimodal_cli::run(std::env::args_os()));
}
