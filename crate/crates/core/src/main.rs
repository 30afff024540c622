fn main() {
    let code = riskmatrix::evalio::cli::run(std::env::args_os());
    std::process::exit(code);
}
