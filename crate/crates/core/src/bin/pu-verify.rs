fn main() {
    std::process::exit(pais_uhlenbeck::cli::main_with_args(std::env::args_os()));
}
