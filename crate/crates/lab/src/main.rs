fn main() {
    std::process::exit(hormander_lab::cli::run(std::env::args_os()));
}
