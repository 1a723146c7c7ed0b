fn main() {
    std::process::exit(loopjones::cli::run(std::env::args_os()));
}
