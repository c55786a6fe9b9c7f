use std::io::Write;

fn main() {
    let (code, text) = lozenge_gap::cli::run(std::env::args_os());
    let mut handle = if code == 0 {
        Box::new(std::io::stdout()) as Box<dyn Write>
    } else {
        Box::new(std::io::stderr())
    };
    let _ = handle.write_all(text.as_bytes());
    std::process::exit(code);
}
