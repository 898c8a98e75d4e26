fn main() {
    std::process::exit(jacquet::cli::main_entry(std::env::args_os()));
}
