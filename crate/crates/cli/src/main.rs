fn main() {
    std::process::exit(tlsf::main_with_args(std::env::args_os()));
}
