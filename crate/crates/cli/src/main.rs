use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use cfourier_core::coset::{gamma_conv, gamma_twisted, lift_n, lift_n_check};
use cfourier_core::group::GroupModel;
use cfourier_core::suites::{self, SuiteConfig};
use cfourier_core::trig::{algebra_norm, check_involution, convolve, AlgebraNormKind, GroupSpec, TrigPoly};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "cfourier", version, about = "Fourier coefficient toolkit for compact groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print a JSON report.
    Verify {
        /// orthogonality, tnormcoeff, norms, central, conv-theorem, coset-maps,
        /// ideals, derivation, roundtrip or all.
        #[arg(long)]
        suite: String,
        /// Built-in name (z2..z12, s3, d4, q8, su2, torus, products like s3xs3)
        /// or a group JSON file.
        #[arg(long)]
        group: String,
        /// Replaces every per-check tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest spin j for su2 (a half-integer); also the torus frequency
        /// cutoff 2j.
        #[arg(long, default_value_t = 2.0)]
        max_spin: f64,
        /// Random inputs per check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print an algebra norm of a coefficient file.
    Norm {
        #[arg(long)]
        input: PathBuf,
        /// a, adelta:n or agamma.
        #[arg(long)]
        algebra: String,
    },
    /// Apply a coset map or convolution to coefficient files.
    Map {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        map: MapKind,
        #[arg(long)]
        second: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    #[value(name = "N")]
    N,
    #[value(name = "gamma")]
    Gamma,
    #[value(name = "Ncheck")]
    NCheck,
    #[value(name = "gammacheck")]
    GammaCheck,
    #[value(name = "conv")]
    Conv,
    #[value(name = "twistconv")]
    TwistConv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { suite, group, tol, seed, max_spin, samples, out } => {
            verify(&suite, &group, tol, seed, max_spin, samples, out.as_deref())
        }
        Command::Norm { input, algebra } => norm(&input, &algebra).map(|_| true),
        Command::Map { input, map, second, out } => apply_map(&input, map, second.as_deref(), out.as_deref()).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn two_j(max_spin: f64) -> Result<u32> {
    let t = 2.0 * max_spin;
    if !(0.0..=64.0).contains(&t) || t.fract() != 0.0 {
        bail!("--max-spin must be a half-integer in [0, 32], got {max_spin}");
    }
    Ok(t as u32)
}

fn load_group(name: &str, two_j_max: u32) -> Result<GroupModel> {
    if name.ends_with(".json") {
        let text = fs::read_to_string(name).with_context(|| format!("reading {name}"))?;
        let spec: GroupSpec = serde_json::from_str(&text).with_context(|| format!("parsing {name}"))?;
        return Ok(spec.resolve()?);
    }
    Ok(GroupModel::named(name, two_j_max)?)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn verify(
    suite: &str,
    group: &str,
    tol: Option<f64>,
    seed: u64,
    max_spin: f64,
    samples: usize,
    out: Option<&Path>,
) -> Result<bool> {
    let suites_to_run = suites::Suite::parse_list(suite)?;
    let two_j_max = two_j(max_spin)?;
    let group = load_group(group, two_j_max)?;
    let cfg = SuiteConfig { group, seed, tol, samples };
    let mut results = Vec::new();
    for s in suites_to_run {
        let start = Instant::now();
        let r = suites::run_suite(s, &cfg)?;
        let elapsed = start.elapsed().as_secs_f64();
        match &r.skipped {
            Some(why) => eprintln!("{:<14} skipped: {why}", r.suite),
            None => eprintln!(
                "{:<14} {:<4}  cases {:>7}  max residual {:.3e}  {:.2}s",
                r.suite,
                if r.pass { "pass" } else { "FAIL" },
                r.cases,
                r.max_residual,
                elapsed
            ),
        }
        for c in r.checks.iter().filter(|c| !c.pass) {
            eprintln!("    failed: {} ({:.3e} > {:.1e})", c.name, c.max_residual, c.tolerance);
        }
        results.push(r);
    }
    let pass = results.iter().all(|r| r.pass);
    let report = json!({
        "group": cfg.group.name(),
        "seed": seed,
        "tol": tol,
        "max_spin": max_spin,
        "samples": samples,
        "pass": pass,
        "suites": results,
    });
    write_output(out, &serde_json::to_string_pretty(&report)?)?;
    Ok(pass)
}

/// `x` with 12 significant digits.
fn significant(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-4..12).contains(&exponent) {
        format!("{:.*}", (11 - exponent) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

fn norm(input: &Path, algebra: &str) -> Result<()> {
    let kind: AlgebraNormKind = algebra.parse()?;
    let f = TrigPoly::load(input)?;
    println!("{}", significant(algebra_norm(&f, kind)?));
    Ok(())
}

fn apply_map(input: &Path, map: MapKind, second: Option<&Path>, out: Option<&Path>) -> Result<()> {
    let f = TrigPoly::load(input)?;
    let second = || -> Result<TrigPoly> {
        let path = second.ok_or_else(|| anyhow!("this map takes two inputs; pass --second"))?;
        Ok(TrigPoly::load(path)?)
    };
    let result = match map {
        MapKind::N => lift_n(&f)?,
        MapKind::Gamma => gamma_twisted(&f)?,
        MapKind::NCheck => lift_n_check(&f)?,
        MapKind::GammaCheck => gamma_conv(&f)?,
        MapKind::Conv => convolve(&f, &second()?)?,
        MapKind::TwistConv => convolve(&f, &check_involution(&second()?)?)?,
    };
    write_output(out, &result.to_json_string())
}
