fn main() {
    std::process::exit(laplace_contour_cli::run(std::env::args_os()));
}
