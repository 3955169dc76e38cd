use std::io::Write;

fn main() {
    let (code, out) = gorfro::cli::run_command(std::env::args_os());
    if code == 2 {
        eprint!("{out}");
    } else {
        print!("{out}");
        let _ = std::io::stdout().flush();
    }
    std::process::exit(code);
}
