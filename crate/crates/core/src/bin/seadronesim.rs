fn main() {
    seadronesim::cli::init_logging();
    std::process::exit(seadronesim::cli::run(std::env::args_os()));
}
