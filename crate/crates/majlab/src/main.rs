fn main() {
    std::process::exit(majlab::cli::run() as i32);
}
