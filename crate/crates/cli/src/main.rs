fn main() {
    std::process::exit(creutz_cli::run_cli(std::env::args_os()));
}
