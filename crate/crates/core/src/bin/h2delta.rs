fn main() {
    std::process::exit(h2delta_core::cli::main_with_args(std::env::args_os()));
}
