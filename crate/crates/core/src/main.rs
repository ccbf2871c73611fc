fn main() {
    std::process::exit(qthermo::cli::main_with_args(std::env::args_os()));
}
