fn main() {
    let code = telres_cli::run_from_args(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
        Vec::new(),
    );
    std::process::exit(code);
}
