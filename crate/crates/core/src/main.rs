fn main() {
    std::process::exit(tpsgeo::cli::run(std::env::args_os()));
}
