fn main() {
    let code = qprod::cli::parse_and_dispatch(std::env::args_os());
    std::process::exit(code);
}
