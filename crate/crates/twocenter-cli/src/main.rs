fn main() {
    std::process::exit(twocenter_cli::run());
}
