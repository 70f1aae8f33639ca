fn main() {
    std::process::exit(spinor_moments::cli::main_with_args(std::env::args_os()));
}
