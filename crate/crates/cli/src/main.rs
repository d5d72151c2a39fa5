//! `sylow-branch`: queries, tables and verification sweeps over the
//! restriction engine.
//!
//! Exit codes: 0 success, 1 usage, 2 domain or parse error, 3 element
//! budget exceeded, 4 verification failure, 5 I/O or internal error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use sylow_branch::cache::CacheFile;
use sylow_branch::closed_forms::{almost_hook_sbc, classify_odd, classify_two, ClassificationOutcome};
use sylow_branch::oracle::oracle_linear_multiplicity;
use sylow_branch::partition::{almost_hook, big_b, partitions};
use sylow_branch::restriction::{
    hook_text, lin_constituents, linear_product_text, parse_linear_product, restrict_sylow, LinearProduct,
    RestrictionVector,
};
use sylow_branch::tower::{hook_to_linear, SylowShape};
use sylow_branch::verify::{run, Criterion, VerifyConfig, DEFAULT_SEED};
use sylow_branch::{Error, Partition};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_VERIFY: u8 = 4;
const EXIT_OTHER: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "sylow-branch", version, about = "Exact restriction of S_n characters to Sylow subgroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplicity of one linear character in χ^λ↓P_n.
    Sbc {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        lambda: String,
        /// Linear label: digits `0.1.1`, factors joined by `|`; at p = 2 also `y=3`.
        #[arg(long)]
        linear: String,
        /// Sum over the group elements instead of using the engine.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Linear constituents of χ^λ↓P_n with multiplicities.
    Lin {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// The full decomposition of χ^λ↓P_n.
    Restrict {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Engine count of linear constituents against the predicted count, for every λ ⊢ n.
    Classify {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
    },
    /// Emit a table as TSV.
    Table {
        #[command(subcommand)]
        table: Table,
    },
    /// Run an acceptance suite (name, number 1-10, or `all`).
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// Largest n in the classification sweeps.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write oracle comparisons as JSON lines.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Also print per-suite notes.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Table {
    /// Almost-hook coefficients over the full (x, y) grid: x, y, B(y), formula, engine.
    AlmostHook {
        #[arg(long)]
        k: u32,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug)]
enum Suite {
    All,
    One(Criterion),
}

/// `all`, a suite name, or a criterion number.
fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    if s == "all" {
        return Ok(Suite::All);
    }
    s.parse::<Criterion>().map(Suite::One).map_err(|_| {
        let names: Vec<&str> = Criterion::ALL.iter().map(|c| c.name()).collect();
        format!("unknown suite `{s}`; expected `all`, 1-10, or one of: {}", names.join(", "))
    })
}

/// Computes through the cache when one is given, saving it afterwards.
fn restriction(p: usize, lambda: &Partition, cache: Option<&Path>) -> Result<RestrictionVector> {
    let Some(path) = cache else { return Ok(restrict_sylow(lambda, p)?) };
    let mut c = CacheFile::load_or_new(path, p)?;
    let hit = c.get(lambda).is_some();
    let v = c.get_or_compute(lambda)?;
    if !hit {
        c.save(path).with_context(|| format!("writing cache {}", path.display()))?;
    }
    Ok(v)
}

fn label_text(p: usize, label: &[sylow_branch::tower::LinearLabel]) -> Result<String> {
    Ok(if p == 2 { hook_text(label)? } else { linear_product_text(label) })
}

fn lin_line(p: usize, lin: &[(LinearProduct, u64)]) -> Result<String> {
    let mut rows: Vec<(Vec<u64>, String, u64)> = Vec::new();
    for (label, m) in lin {
        let order = if p == 2 { sylow_branch::restriction::hook_coordinates(label)? } else { vec![] };
        rows.push((order, label_text(p, label)?, *m));
    }
    rows.sort();
    Ok(rows.iter().map(|(_, l, m)| format!("{l}:{m}")).collect::<Vec<_>>().join(", "))
}

fn classify_table(p: usize, n: usize, out: &mut String) -> Result<bool> {
    let mut ok = true;
    writeln!(out, "lambda\tengine\tpredicted\tcase\tstatus")?;
    for lambda in partitions(n) {
        let count = lin_constituents(&lambda, p)?.len();
        let outcome: ClassificationOutcome = if p == 2 {
            classify_two(n, &lambda)?
        } else if lambda == Partition::row(n) || lambda == Partition::column(n) {
            writeln!(out, "{lambda}\t{count}\t1\ttrivial-or-sign\t{}", if count == 1 { "ok" } else { "MISMATCH" })?;
            ok &= count == 1;
            continue;
        } else {
            classify_odd(p, n, &lambda)?
        };
        let good = outcome.predicted.matches(count);
        ok &= good;
        writeln!(
            out,
            "{lambda}\t{count}\t{}\t{}\t{}",
            outcome.predicted,
            outcome.case_tag,
            if good { "ok" } else { "MISMATCH" }
        )?;
    }
    Ok(ok)
}

fn almost_hook_table(k: u32, out: &mut String) -> Result<()> {
    if !(2..=6).contains(&k) {
        return Err(Error::Domain(format!("table supports 2 <= k <= 6, got {k}")).into());
    }
    writeln!(out, "x\ty\tB(y)\tformula\tengine")?;
    let n = 1u64 << k;
    for x in 0..=n - 4 {
        let lin = lin_constituents(&almost_hook(n as usize, x as usize)?, 2)?;
        for y in 0..n {
            let engine = lin.get(&vec![hook_to_linear(k, y)?]).copied().unwrap_or(0);
            writeln!(out, "{x}\t{y}\t{}\t{}\t{engine}", big_b(y), almost_hook_sbc(k, x, y)?)?;
        }
    }
    Ok(())
}

fn verify(
    suite: Suite,
    n_max: Option<usize>,
    seed: u64,
    report: Option<&Path>,
    verbose: bool,
    out: &mut String,
) -> Result<bool> {
    let criteria: Vec<Criterion> = match suite {
        Suite::All => Criterion::ALL.to_vec(),
        Suite::One(c) => vec![c],
    };
    let mut cfg = VerifyConfig { seed, ..VerifyConfig::default() };
    if let Some(n) = n_max {
        cfg.n_max_two = n;
        cfg.n_max_three = n;
    }
    let mut all_ok = true;
    let mut lines = String::new();
    for c in criteria {
        let r = run(c, &cfg)?;
        all_ok &= r.passed();
        writeln!(out, "{}", r.summary_line())?;
        for f in &r.failures {
            writeln!(out, "  failed {} {}: {}", f.check, f.subject, f.detail)?;
        }
        if verbose {
            for note in &r.notes {
                writeln!(out, "  note: {note}")?;
            }
        }
        for o in &r.oracle_reports {
            lines.push_str(&o.to_json_line());
            lines.push('\n');
        }
    }
    if let Some(path) = report {
        fs::write(path, lines).with_context(|| format!("writing report {}", path.display()))?;
    }
    Ok(all_ok)
}

/// Runs one command; `Ok(false)` means a verification check failed.
fn execute(cmd: Command, out: &mut String) -> Result<bool> {
    match cmd {
        Command::Sbc { p, lambda, linear, oracle, cache } => {
            let lambda: Partition = lambda.parse()?;
            let shape = SylowShape::new(p, lambda.size())?;
            let psi = parse_linear_product(&linear, &shape)?;
            let m = if oracle {
                oracle_linear_multiplicity(&lambda, &psi, p)?
            } else {
                let v = restriction(p, &lambda, cache.as_deref())?;
                v.linear_part().get(&psi).copied().unwrap_or(0)
            };
            writeln!(out, "{m}")?;
        }
        Command::Lin { p, lambda, cache } => {
            let lambda: Partition = lambda.parse()?;
            let lin: Vec<(LinearProduct, u64)> = match cache {
                Some(path) => restriction(p, &lambda, Some(&path))?.linear_part().into_iter().collect(),
                None => lin_constituents(&lambda, p)?.into_iter().collect(),
            };
            writeln!(out, "{}", lin_line(p, &lin)?)?;
        }
        Command::Restrict { p, lambda, format, cache } => {
            let lambda: Partition = lambda.parse()?;
            let v = restriction(p, &lambda, cache.as_deref())?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&v.to_json())?)?,
                Format::Tsv => out.push_str(&v.to_tsv()),
            }
        }
        Command::Classify { p, n } => return classify_table(p, n, out),
        Command::Table { table: Table::AlmostHook { k } } => almost_hook_table(k, out)?,
        Command::Verify { suite, n_max, seed, report, verbose } => {
            return verify(suite, n_max, seed, report.as_deref(), verbose, out)
        }
    }
    Ok(true)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Domain(_) | Error::Parse(_) | Error::StaleCache(_)) => EXIT_DOMAIN,
        Some(Error::Budget { .. }) => EXIT_BUDGET,
        _ => EXIT_OTHER,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let mut out = String::new();
    let result = execute(cli.command, &mut out);
    let _ = std::io::stdout().write_all(out.as_bytes());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_by_name_number_or_all() {
        assert!(matches!(parse_suite("all"), Ok(Suite::All)));
        assert!(matches!(parse_suite("9"), Ok(Suite::One(Criterion::Structural))));
        assert!(matches!(parse_suite("oracle"), Ok(Suite::One(Criterion::OracleEquivalence))));
        assert!(parse_suite("11").is_err());
    }

    #[test]
    fn lin_line_orders_by_hook_coordinate() {
        let lambda: Partition = "3,3,3".parse().unwrap();
        let lin: Vec<_> = lin_constituents(&lambda, 2).unwrap().into_iter().collect();
        assert_eq!(lin_line(2, &lin).unwrap(), "y=0|2:1, y=0|5:1");
    }

    #[test]
    fn table_rejects_large_k() {
        let mut out = String::new();
        let err = almost_hook_table(7, &mut out).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_DOMAIN);
    }
}
