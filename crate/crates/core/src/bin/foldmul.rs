fn main() {
    std::process::exit(operand_fold::cli::run(std::env::args_os()));
}
