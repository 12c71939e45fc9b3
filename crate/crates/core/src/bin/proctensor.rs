fn main() {
    std::process::exit(proctensor::cli::main_from_args(std::env::args_os()));
}
