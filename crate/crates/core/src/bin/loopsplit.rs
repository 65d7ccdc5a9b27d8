fn main() {
    let (code, out) = loopsplit::cli::run(std::env::args_os());
    if code == 1 {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
