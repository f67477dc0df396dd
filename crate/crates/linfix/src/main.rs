fn main() {
    std::process::exit(linfix::run_cli());
}
