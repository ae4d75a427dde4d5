fn main() {
    std::process::exit(vertexkernels::cli::run(std::env::args_os()));
}
