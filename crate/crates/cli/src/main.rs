use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use appbascert::commands::{
    cmd_bench, cmd_gen, cmd_prove, cmd_tamper, cmd_verify, parse_grid_point, parse_shift_profile,
    parse_sigma_profile, parse_tamper_target, resolve_seed, GenOptions, VerifyOptions,
};
use appbascert::format::write_verdict;
use appbascert::{Error, Result};
use appbascert_core::prover::TamperSpec;

/// Prover and probabilistic verifier for shifted minimal approximant bases
/// over prime fields.
#[derive(Parser)]
#[command(name = "appbascert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Gen {
        /// Field modulus (prime).
        #[arg(long, default_value_t = 10007)]
        p: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// uniform:<σ>, random-max:<max> or skewed:<D>.
        #[arg(long, default_value = "uniform:4")]
        order: String,
        /// zero, range:<lo>:<hi> or staircase:<h>.
        #[arg(long, default_value = "zero")]
        shift: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a minimal basis and its certificate.
    Prove {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        basis_out: PathBuf,
        #[arg(long)]
        cert_out: PathBuf,
        /// Print field-operation counts.
        #[arg(long)]
        count_ops: bool,
    },
    /// Check a basis and certificate against an instance. Exits with 0 on
    /// accept, 1 on reject, 2 on usage or IO errors, 3 if the field is too
    /// small.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Sample from {0, …, N−1} instead of the whole field.
        #[arg(long)]
        s_size: Option<u64>,
        /// Use the powers of a single random element as the challenge vector.
        #[arg(long)]
        zeta: bool,
        /// Independent runs; all must accept.
        #[arg(long, default_value_t = 1)]
        repeat: usize,
        /// Verdict file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print field-operation counts.
        #[arg(long)]
        count_ops: bool,
    },
    /// Corrupt a basis or certificate.
    Tamper {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        /// basis-coeff[:i:l:k], cert-entry[:i:j], swap-rows[:a:b] or
        /// scale-row:<factor>[:row].
        #[arg(long)]
        target: String,
        /// Keep the deterministic checks passing.
        #[arg(long)]
        preserve: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        basis_out: PathBuf,
        #[arg(long)]
        cert_out: PathBuf,
    },
    /// Tabulate operation counts over a grid of sizes.
    Bench {
        #[arg(long, default_value_t = 10007)]
        p: u64,
        /// Grid points such as 4x4:uniform:32; repeatable.
        #[arg(long = "grid", required = true)]
        grid: Vec<String>,
        /// Comma-separated seeds.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        seeds: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn seed(flag: Option<u64>) -> Result<u64> {
    resolve_seed(flag, std::env::var("APPBASCERT_SEED").ok().as_deref())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen {
            p,
            m,
            n,
            order,
            shift,
            seed: s,
            out,
        } => {
            let opts = GenOptions {
                p,
                m,
                n,
                sigma: parse_sigma_profile(&order)?,
                shift: parse_shift_profile(&shift)?,
                seed: seed(s)?,
            };
            emit(out.as_deref(), &cmd_gen(&opts)?)?;
            Ok(0)
        }
        Command::Prove {
            instance,
            basis_out,
            cert_out,
            count_ops,
        } => {
            let out = cmd_prove(&read(&instance)?)?;
            write(&basis_out, &out.basis)?;
            write(&cert_out, &out.certificate)?;
            if count_ops {
                for (what, o) in [("basis", out.basis_ops), ("certificate", out.certificate_ops)] {
                    println!("{what}: {} add, {} mul, {} inv", o.add_like, o.mul, o.inv);
                }
            }
            Ok(0)
        }
        Command::Verify {
            instance,
            basis,
            cert,
            seed: s,
            s_size,
            zeta,
            repeat,
            out,
            count_ops,
        } => {
            let opts = VerifyOptions {
                seed: seed(s)?,
                sample_size: s_size,
                zeta,
                repeat,
            };
            let doc = cmd_verify(&read(&instance)?, &read(&basis)?, &read(&cert)?, &opts)?;
            if let Some(path) = out {
                write(&path, &write_verdict(&doc))?;
            }
            for (i, r) in doc.runs.iter().enumerate() {
                let status = match r.failed {
                    None => "accept".to_string(),
                    Some(c) => format!("reject ({})", c.as_str()),
                };
                print!("run {i}: {status}");
                if count_ops {
                    print!(", {} field operations", r.ops.total());
                }
                println!();
            }
            println!("seed {}: {}", doc.seed, if doc.accepted { "ACCEPT" } else { "REJECT" });
            Ok(if doc.accepted { 0 } else { 1 })
        }
        Command::Tamper {
            instance,
            basis,
            cert,
            target,
            preserve,
            seed: s,
            basis_out,
            cert_out,
        } => {
            let spec = TamperSpec {
                target: parse_tamper_target(&target)?,
                preserve_cheap_checks: preserve,
            };
            let out = cmd_tamper(&read(&instance)?, &read(&basis)?, &read(&cert)?, &spec, seed(s)?)?;
            write(&basis_out, &out.basis)?;
            write(&cert_out, &out.certificate)?;
            println!("{}", out.description);
            Ok(0)
        }
        Command::Bench { p, grid, seeds, out } => {
            let grid = grid.iter().map(|g| parse_grid_point(g)).collect::<Result<Vec<_>>>()?;
            emit(out.as_deref(), &cmd_bench(p, &grid, &seeds)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
