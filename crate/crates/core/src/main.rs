use std::io::Write;

fn main() {
    let out = mixgrass::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
