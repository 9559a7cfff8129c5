fn main() {
    std::process::exit(sumprod::cli::main_entry());
}
