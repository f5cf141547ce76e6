fn main() {
    std::process::exit(sn_bifurcation::cli::run_command(std::env::args_os()));
}
