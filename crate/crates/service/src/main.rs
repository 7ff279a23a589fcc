use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use locuscover_service::{
    handle_compute, router, selftest, ComputeRequest, PlotRequest, ServiceError, DEFAULT_PORT,
};

#[derive(Parser)]
#[command(
    name = "locuscover",
    version,
    about = "Algebraic loci and envelopes of geometric constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the locus or envelope of a construction file and print JSON.
    Compute {
        file: PathBuf,
        #[arg(long, default_value = "grobner_cover")]
        method: String,
        /// Include plot data in the output.
        #[arg(long)]
        plot: bool,
        /// Plot window `xmin,xmax,ymin,ymax`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        bbox: Option<Vec<f64>>,
        /// Plot cells per axis.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        budget_ms: Option<u64>,
    },
    /// Serve the HTTP JSON API.
    Serve {
        #[arg(long, env = "LOCUSCOVER_PORT", default_value_t = DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
    },
    /// Run the reference constructions and compare with the known loci.
    Selftest,
}

fn fail(e: &ServiceError) -> ExitCode {
    eprintln!("{}", serde_json::to_string(e).expect("error serializes"));
    ExitCode::from(e.exit_code())
}

fn compute(
    file: PathBuf,
    method: String,
    plot: bool,
    bbox: Option<Vec<f64>>,
    grid: Option<usize>,
    budget_ms: Option<u64>,
) -> ExitCode {
    let bbox = match bbox.map(<[f64; 4]>::try_from) {
        Some(Err(v)) => {
            return fail(&ServiceError::invalid(format!(
                "--bbox needs 4 numbers, got {}",
                v.len()
            )))
        }
        Some(Ok(b)) => Some(b),
        None => None,
    };
    let text = match std::fs::read_to_string(&file)
        .with_context(|| format!("reading {}", file.display()))
    {
        Ok(t) => t,
        Err(e) => return fail(&ServiceError::invalid(format!("{e:#}"))),
    };
    let construction = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(e) => return fail(&ServiceError::invalid(format!("{}: {e}", file.display()))),
    };
    let plot = (plot || bbox.is_some() || grid.is_some()).then_some(PlotRequest {
        bbox,
        resolution: grid,
    });
    let req = ComputeRequest {
        construction,
        method,
        plot,
        budget_ms,
    };
    match handle_compute(&req) {
        Ok(resp) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&resp).expect("response serializes")
            );
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

async fn serve(addr: SocketAddr) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .with_context(|| format!("binding {addr}"))?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router())
        .await
        .context("server stopped")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Compute {
            file,
            method,
            plot,
            bbox,
            grid,
            budget_ms,
        } => compute(file, method, plot, bbox, grid, budget_ms),
        Command::Serve { port, host } => {
            let rt = match tokio::runtime::Runtime::new() {
                Ok(rt) => rt,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match rt.block_on(serve(SocketAddr::new(host, port))) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Selftest => {
            let report = selftest();
            print!("{}", report.text());
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
    }
}
