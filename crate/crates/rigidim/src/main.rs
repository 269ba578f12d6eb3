fn main() {
    std::process::exit(rigidim::cli_main());
}
