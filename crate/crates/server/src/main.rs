use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use uzmorph::Analyzer;
use uzmorph_server::{router, AppState};

/// Serves the analyzer over HTTP.
#[derive(Debug, Parser)]
#[command(name = "uzmorph-server", version)]
struct Args {
    #[arg(long, default_value_t = 8080)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: std::net::IpAddr,
    /// Lexicon data directory; the embedded seed data is used when unset.
    #[arg(long, env = "UZMORPH_DATA")]
    data: Option<PathBuf>,
}

#[tokio::main]
async fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let addr = SocketAddr::new(args.host, args.port);
    let listener = match tokio::net::TcpListener::bind(addr).await {
        Ok(l) => l,
        Err(e) => {
            eprintln!("uzmorph-server: cannot bind {addr}: {e}");
            return ExitCode::from(1);
        }
    };

    let state = AppState::new();
    let loader = {
        let state = state.clone();
        let data = args.data.clone();
        tokio::task::spawn_blocking(move || {
            let analyzer = match data {
                Some(dir) => {
                    Analyzer::load_dir(&dir).map_err(|e| format!("{}: {e}", dir.display()))?
                }
                None => Analyzer::seed(),
            };
            let _ = state.install(analyzer);
            Ok::<_, String>(())
        })
    };
    eprintln!("uzmorph-server: listening on {addr}");
    let server = axum::serve(listener, router(state)).with_graceful_shutdown(async {
        let _ = tokio::signal::ctrl_c().await;
    });
    let server = tokio::spawn(async move { server.await });

    match loader.await {
        Ok(Ok(())) => eprintln!("uzmorph-server: lexicon loaded"),
        Ok(Err(msg)) => {
            eprintln!("uzmorph-server: {msg}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("uzmorph-server: loader failed: {e}");
            return ExitCode::from(2);
        }
    }
    match server.await {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("uzmorph-server: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("uzmorph-server: {e}");
            ExitCode::from(1)
        }
    }
}
