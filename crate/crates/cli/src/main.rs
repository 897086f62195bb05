fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(hyperell_cli::run(&args));
}
