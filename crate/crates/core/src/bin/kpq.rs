fn main() {
    std::process::exit(kpq::cli::main_with_args(std::env::args_os()));
}
