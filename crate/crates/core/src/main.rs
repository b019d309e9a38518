fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let code = souslin::cli::run(&argv, &mut std::io::stdout());
    std::process::exit(code);
}
