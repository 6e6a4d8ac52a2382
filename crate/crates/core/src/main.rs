fn main() {
    std::process::exit(unitforge::cli::main_with(std::env::args_os()));
}
