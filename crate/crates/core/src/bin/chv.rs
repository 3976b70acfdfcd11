fn main() {
    std::process::exit(chv_core::cli::main_with_args(std::env::args_os()));
}
