fn main() {
    std::process::exit(sepctl::run(std::env::args_os()));
}
