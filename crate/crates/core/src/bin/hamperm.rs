//! The `hamperm` command-line tool; see [`hamperm::cli`].

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("HAMPERM_LOG")).init();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = hamperm::cli::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
