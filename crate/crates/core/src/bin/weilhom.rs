fn main() {
    std::process::exit(weilhom::cli::main_from(std::env::args_os()));
}
