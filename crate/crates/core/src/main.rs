fn main() {
    std::process::exit(levy_drawdown::cli::run(std::env::args_os()));
}
