fn main() {
    std::process::exit(stepgraphon::cli::run(std::env::args_os()));
}
