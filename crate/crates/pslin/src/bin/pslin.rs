use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let code = pslin::cli::run(std::env::args(), &mut lock);
    let _ = lock.flush();
    std::process::exit(code);
}
