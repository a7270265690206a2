fn main() {
    std::process::exit(ainf_core::cli::main_with(std::env::args_os()));
}
