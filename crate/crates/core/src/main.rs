fn main() {
    std::process::exit(spinor_forge::cli::main_with_args(std::env::args_os()));
}
