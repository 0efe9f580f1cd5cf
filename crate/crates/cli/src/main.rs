fn main() {
    std::process::exit(cheeger_cli::main_with(std::env::args_os()));
}
