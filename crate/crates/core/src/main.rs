use std::io::Write;

fn main() {
    let result = capfree::cli::execute(std::env::args_os());
    print!("{}", result.stdout);
    if !result.stderr.is_empty() {
        eprintln!("{}", result.stderr.trim_end());
    }
    std::io::stdout().flush().ok();
    std::process::exit(result.exit_code);
}
