fn main() {
    std::process::exit(htype::cli::run(std::env::args_os()));
}
