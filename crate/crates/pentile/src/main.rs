fn main() {
    std::process::exit(pentile::cli::run(std::env::args_os(), &mut std::io::stdout()));
}
