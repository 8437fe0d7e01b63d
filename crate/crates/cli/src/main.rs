use std::io::Write;

fn main() {
    orbiweight_cli::configure_threads();
    let exec = orbiweight_cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(exec.stdout().as_bytes());
    if !exec.json && exec.result.status == orbiweight_cli::Status::Ok {
        for d in &exec.result.diagnostics {
            eprintln!("note: {d}");
        }
    }
    std::process::exit(exec.exit_code);
}
