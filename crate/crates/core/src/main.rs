fn main() {
    let out = qiso2::cli::run_from(std::env::args_os());
    if out.code == 0 {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    std::process::exit(out.code);
}
