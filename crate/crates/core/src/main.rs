fn main() {
    std::process::exit(innerhom::cli::run(std::env::args_os()));
}
