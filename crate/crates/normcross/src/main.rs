fn main() {
    std::process::exit(normcross::cli::main());
}
