fn main() {
    std::process::exit(qperc_harness::cli::run_from_env());
}
