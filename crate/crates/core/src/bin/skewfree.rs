fn main() {
    let out = skewfree::cli::run_from_args(std::env::args_os());
    println!("{}", out.output);
    std::process::exit(out.code);
}
