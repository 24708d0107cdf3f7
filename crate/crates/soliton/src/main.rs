fn main() {
    std::process::exit(soliton::cli::run(std::env::args_os()));
}
