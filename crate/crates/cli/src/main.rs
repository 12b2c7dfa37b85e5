fn main() {
    let code = signcoh_cli::app::run(std::env::args_os());
    std::process::exit(code.into());
}
