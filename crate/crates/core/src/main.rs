fn main() {
    std::process::exit(trilax::cli::run(std::env::args().collect()));
}
