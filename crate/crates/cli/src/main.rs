use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gyrodisc::scene::TheoremId;
use gyrodisc_cli::campaign::CampaignOptions;
use gyrodisc_cli::run;

/// Menelaus-type identity checker for the Poincare disc.
#[derive(Parser)]
#[command(name = "gyro", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scene file's assertions.
    Verify {
        /// Path to a .gyro scene.
        scene: PathBuf,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Override every assertion bound in the scene.
        #[arg(long, env = "GYRO_TOLERANCE")]
        tolerance: Option<f64>,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate and check random configurations.
    Random {
        /// Identity to drive: t2 | t3 | t5 | t4-converse (long names accepted).
        theorem: String,
        /// Number of cases.
        #[arg(short = 'n', default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Master seed; case i runs under a seed derived from (seed, i).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Vertex radius cap as a fraction of the ball radius, in (0, 1).
        #[arg(long)]
        max_radius: Option<f64>,
        /// Minimum gyrodistance between the transversal and each vertex.
        #[arg(long)]
        vertex_guard: Option<f64>,
        /// Per-case acceptance bound on |product - 1|.
        #[arg(long, env = "GYRO_TOLERANCE")]
        tolerance: Option<f64>,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Directory for failing-case repro scenes.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Draw a scene as SVG.
    Render {
        /// Path to a .gyro scene.
        scene: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-embed a scene in growing balls and tabulate both deviations.
    Limit {
        /// Path to a .gyro scene.
        scene: PathBuf,
        /// Comma-separated ascending ball radii; default 10,100,1000,10000.
        #[arg(long, value_delimiter = ',')]
        s_list: Option<Vec<f64>>,
        /// Bound the final euclidean deviation must meet.
        #[arg(long, env = "GYRO_TOLERANCE")]
        tolerance: Option<f64>,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: String = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let code = match cli.command {
        Command::Verify {
            scene,
            json,
            tolerance,
            out,
        } => run::cmd_verify(&scene, json, tolerance, out.as_deref(), command),
        Command::Random {
            theorem,
            n,
            seed,
            max_radius,
            vertex_guard,
            tolerance,
            json,
            out,
        } => match TheoremId::from_token(&theorem) {
            Some(id) => {
                let mut opt = CampaignOptions::new(id, n, seed);
                opt.max_radius = max_radius;
                opt.vertex_guard = vertex_guard;
                if let Some(t) = tolerance {
                    opt.tolerance = t;
                }
                opt.command = command;
                if opt.tolerance.is_finite() && opt.tolerance > 0.0 {
                    run::cmd_random(&opt, json, &out)
                } else {
                    eprintln!(
                        "error: tolerance must be positive and finite, got {}",
                        opt.tolerance
                    );
                    2
                }
            }
            None => {
                eprintln!("error: unknown theorem `{theorem}`; use t2, t3, t5 or t4-converse");
                2
            }
        },
        Command::Render { scene, out } => run::cmd_render(&scene, out.as_deref()),
        Command::Limit {
            scene,
            s_list,
            tolerance,
            json,
            out,
        } => run::cmd_limit(&scene, s_list, tolerance, json, out.as_deref(), command),
    };
    ExitCode::from(code as u8)
}
