use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("CONTRAAEC_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .expect("the global pool is configured once");
            }
            _ => {
                eprintln!("error: CONTRAAEC_THREADS must be a positive integer, got `{v}`");
                return ExitCode::from(contraaec_cli::EXIT_INVALID as u8);
            }
        }
    }
    let code = contraaec_cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
