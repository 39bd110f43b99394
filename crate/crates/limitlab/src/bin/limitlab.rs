fn main() {
    std::process::exit(limitlab::cli::main());
}
