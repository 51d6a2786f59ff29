use std::path::PathBuf;
use std::process::ExitCode;

use caustica::Q;
use caustica_cli::commands::{cmd_caustic, cmd_ovals, cmd_render, cmd_verify, parse_specialize, Options};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "caustica", version, about = "Caustics by refraction at circles and lines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the closing quartic of the scene's Cartesian ovals.
    Ovals(Common),
    /// Compute the caustic polynomial two ways and cross-check them.
    Caustic(Common),
    /// Draw rays, caustic points, ovals and mirror as SVG.
    Render(Common),
    /// Run the invariant checks for one scene and write a JSON report.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    /// Scene file (TOML).
    #[arg(long)]
    scene: PathBuf,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Normalized circle scene to use instead of the file's, as `r=<p/q>,n=<p/q>`.
    #[arg(long, value_parser = parse_specialize)]
    specialize: Option<(Q, Q)>,
    /// Also run the elimination with r and n symbolic (very slow).
    #[arg(long)]
    symbolic: bool,
    /// Ray count: drawn rays per family for `render`, checked rays for `verify`.
    #[arg(long)]
    samples: Option<usize>,
    /// Override every floating-point tolerance of `verify`.
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn init_threads() {
    let Ok(v) = std::env::var("CAUSTICA_THREADS") else { return };
    match v.parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("ignoring CAUSTICA_THREADS={v}: expected a positive integer"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let (run, c): (fn(&Options) -> _, Common) = match cli.command {
        Command::Ovals(c) => (cmd_ovals, c),
        Command::Caustic(c) => (cmd_caustic, c),
        Command::Render(c) => (cmd_render, c),
        Command::Verify(c) => (cmd_verify, c),
    };
    let opts = Options {
        scene: c.scene,
        out: c.out,
        specialize: c.specialize,
        symbolic: c.symbolic,
        samples: c.samples,
        tol: c.tol,
        seed: c.seed,
    };
    let code = match run(&opts) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code.clamp(0, 255) as u8)
}
