fn main() {
    let (code, output) = nilcohopf_cli::run(std::env::args_os());
    if code == nilcohopf_cli::EXIT_INPUT {
        eprint!("{output}");
    } else {
        print!("{output}");
    }
    std::process::exit(code);
}
