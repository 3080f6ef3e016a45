fn main() {
    std::process::exit(qcv::cli_report::main_with_args(std::env::args_os()));
}
