fn main() {
    std::process::exit(invroot_cli::run());
}
