use clap::{Args, Parser, Subcommand};
use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use unram_cli::{parse_job, run, Command, Format, JobSpec, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "unram", version, about = "Unramified Kottwitz sets, tilting checks and averaging for reductive groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Group, e.g. `GL3`, `G2`, `B3.sc`, `A2+T1`, `2A2`.
    #[arg(long, visible_alias = "type")]
    group: String,
    /// Galois twist: `2A`, `2D`, `3D4`, `none` or a JSON integer matrix.
    #[arg(long)]
    twist: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Orbit and weight cap; defaults to KOTTWITZ_CAP or 10^6.
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Root datum, twist and coinvariant lattice.
    Describe {
        #[command(flatten)]
        common: Common,
    },
    /// Newton polygons and unramified classes in B(G, mu).
    Bgmu {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Weights of V_mu with multiplicities.
    Weights {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Group the weights by coinvariant class.
        #[arg(long)]
        coinvariant: bool,
    },
    /// Genericity and regularity ladder of an unramified character.
    CheckCharacter {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<String>,
        /// Condition deciding the exit status, e.g. `generic`, `regular`, `mu-regular`.
        #[arg(long)]
        level: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// `strong` or `decomposed`.
        #[arg(long)]
        mode: Option<String>,
        /// `piece:mult;piece:mult`.
        #[arg(long, allow_hyphen_values = true)]
        decomposition: Option<String>,
    },
    /// Jantzen sum and tilting test for one coweight.
    Tilting {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Non-tilting primes of all fundamental coweights, diffed against the fixture.
    TiltingTable {
        #[command(flatten)]
        common: Common,
    },
    /// Refined averaging check at the level of Frobenius eigenvalues.
    Averaging {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<String>,
    },
    /// Evaluate a JSON job file.
    Run { file: std::path::PathBuf },
}

fn job(command: Command, common: Common, params: &[(&str, Option<String>)]) -> JobSpec {
    let mut parameters: BTreeMap<String, String> =
        params.iter().filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v))).collect();
    if let Some(c) = common.cap {
        parameters.insert("cap".into(), c.to_string());
    }
    JobSpec { group: common.group, twist: common.twist, command, parameters, output: common.format }
}

fn usage(msg: String) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let spec = match cli.cmd {
        Cmd::Describe { common } => job(Command::Describe, common, &[]),
        Cmd::Bgmu { common, mu } => job(Command::Bgmu, common, &[("mu", Some(mu))]),
        Cmd::Weights { common, mu, coinvariant } => job(
            Command::Weights,
            common,
            &[("mu", Some(mu)), ("coinvariant", coinvariant.then(|| "true".to_string()))],
        ),
        Cmd::CheckCharacter { common, chi, phi, level, mu, mode, decomposition } => job(
            Command::CheckCharacter,
            common,
            &[("chi", chi), ("phi", phi), ("level", level), ("mu", mu), ("mode", mode), ("decomposition", decomposition)],
        ),
        Cmd::Tilting { common, mu, ell } => {
            job(Command::Tilting, common, &[("mu", Some(mu)), ("ell", ell.map(|l| l.to_string()))])
        }
        Cmd::TiltingTable { common } => job(Command::TiltingTable, common, &[]),
        Cmd::Averaging { common, mu, phi, chi } => {
            job(Command::Averaging, common, &[("mu", Some(mu)), ("phi", Some(phi)), ("chi", chi)])
        }
        Cmd::Run { file } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return usage(format!("{}: {e}", file.display())),
            };
            match parse_job(&text) {
                Ok(j) => j,
                Err(e) => return usage(e),
            }
        }
    };
    let out = run(&spec);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.status as u8)
}
