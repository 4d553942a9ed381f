use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let code = finalg::cli::run(&refs, &mut lock);
    let _ = lock.flush();
    std::process::exit(code);
}
