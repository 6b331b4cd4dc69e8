//! Batch verification driver: runs named check suites across root systems
//! and Lie-algebra presets, emits JSON or Markdown reports, and exits
//! nonzero iff any check fails.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use symdirac_core::quadlie::QuadLie;
use symdirac_core::roots::{table_systems, CartanType, RootSystem};
use symdirac_core::scalar::{Q, Sym};
use symdirac_core::verify::{
    root_system_report, run_suite, run_suite_for_target, suite_lie_commutator, suites,
    table_deg0, table_omega_scalars_a, table_omega_scalars_b, Config, Report, Status, TableRow,
};

#[derive(Parser)]
#[command(
    name = "symdirac",
    about = "Exact verification of symplectic Dirac element identities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite (or `all`).
    Verify {
        /// Suite name from `list-suites`, or `all`.
        suite: String,
        /// Restrict to one Cartan type (A..G) where the suite supports it.
        #[arg(long, value_name = "X")]
        r#type: Option<String>,
        /// Rank for the restricted run.
        #[arg(long)]
        rank: Option<usize>,
        /// Lie-algebra preset for `lie-commutator` (sl2-split, so3, gl2).
        #[arg(long)]
        preset: Option<String>,
        /// JSON file with a Lie algebra description
        /// `{basis, grading, gram, brackets}` for `lie-commutator`.
        #[arg(long)]
        lie_json: Option<String>,
        /// Parameter specialization: `symbolic`, a single rational, or
        /// `k_s=1,k_l=1/2` pairs.
        #[arg(long)]
        k: Option<String>,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<String>,
        /// Seed of the randomized property checks.
        #[arg(long)]
        seed: Option<u64>,
        /// Weyl-group enumeration cap.
        #[arg(long)]
        cap: Option<usize>,
        /// TOML config file (keys: suites, seed, group_cap, k).
        #[arg(long)]
        config: Option<String>,
    },
    /// Print a verification table (Markdown by default).
    Table {
        /// One of: deg0, omega-scalars-a, omega-scalars-b.
        kind: String,
        /// Systems like `A2..A4,B2,G2,E8` (deg0) or a single rank (scalars).
        #[arg(long)]
        range: Option<String>,
        /// Write JSON instead of Markdown.
        #[arg(long)]
        json: Option<String>,
    },
    /// List the registered suites with their anchors.
    ListSuites,
    /// Print the JSON description of a root system.
    Show {
        #[arg(long, value_name = "X")]
        r#type: String,
        #[arg(long)]
        rank: usize,
    },
}

fn parse_k(spec: &str) -> Result<Vec<(Sym, Q)>> {
    if spec == "symbolic" {
        return Ok(Vec::new());
    }
    if !spec.contains('=') {
        let v: Q = spec
            .parse()
            .map_err(|e| anyhow!("bad rational {}: {}", spec, e))?;
        return Ok(vec![
            (Sym::k(), v.clone()),
            (Sym::k_s(), v.clone()),
            (Sym::k_l(), v),
        ]);
    }
    let mut out = Vec::new();
    for part in spec.split(',') {
        let (name, val) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("expected name=value in {}", part))?;
        let v: Q = val
            .parse()
            .map_err(|e| anyhow!("bad rational {}: {}", val, e))?;
        out.push((Sym::new(name.trim()), v));
    }
    Ok(out)
}

fn parse_type(s: &str) -> Result<CartanType> {
    CartanType::parse(s).ok_or_else(|| anyhow!("unknown Cartan type {}", s))
}

/// `A2..A4,B2,G2` into (type, rank) pairs; `all` means the full table list.
fn parse_range(spec: &str) -> Result<Vec<(CartanType, usize)>> {
    if spec == "all" {
        return Ok(table_systems());
    }
    let mut out = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let t = parse_type(&lo[..1])?;
            let t2 = parse_type(&hi[..1])?;
            if t != t2 {
                bail!("range endpoints must share a type: {}", part);
            }
            let a: usize = lo[1..].parse()?;
            let b: usize = hi[1..].parse()?;
            for n in a..=b {
                out.push((t, n));
            }
        } else {
            let t = parse_type(&part[..1])?;
            out.push((t, part[1..].parse()?));
        }
    }
    Ok(out)
}

#[derive(Default)]
struct FileConfig {
    suites: Option<Vec<String>>,
    seed: Option<u64>,
    group_cap: Option<usize>,
    k: Option<String>,
}

fn read_config(path: &str) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path))?;
    let value: toml::Value = text.parse().context("parsing config")?;
    Ok(FileConfig {
        suites: value.get("suites").and_then(|v| {
            v.as_array().map(|a| {
                a.iter()
                    .filter_map(|x| x.as_str().map(String::from))
                    .collect()
            })
        }),
        seed: value.get("seed").and_then(|v| v.as_integer()).map(|v| v as u64),
        group_cap: value
            .get("group_cap")
            .and_then(|v| v.as_integer())
            .map(|v| v as usize),
        k: value.get("k").and_then(|v| v.as_str()).map(String::from),
    })
}

fn print_report(report: &Report) {
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        println!("{:<4} {:<42} [{}] {} ms", tag, c.id, c.anchor, c.ms);
        if c.status == Status::Fail {
            println!("     witness: {}", c.witness);
        }
    }
}

fn rows_to_markdown(rows: &[TableRow]) -> String {
    let mut out = String::new();
    if rows.is_empty() {
        return out;
    }
    let headers: Vec<&str> = std::iter::once("system")
        .chain(rows[0].columns.iter().map(|(n, _)| n.as_str()))
        .collect();
    out.push_str(&format!("| {} |\n", headers.join(" | ")));
    out.push_str(&format!(
        "|{}|\n",
        headers.iter().map(|_| " --- ").collect::<Vec<_>>().join("|")
    ));
    for row in rows {
        let cells: Vec<String> = std::iter::once(row.label.clone())
            .chain(row.columns.iter().map(|(_, v)| v.clone()))
            .collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out
}

fn cmd_verify(
    suite: String,
    ty: Option<String>,
    rank: Option<usize>,
    preset: Option<String>,
    lie_json: Option<String>,
    k: Option<String>,
    json_out: Option<String>,
    seed: Option<u64>,
    cap: Option<usize>,
    config_path: Option<String>,
) -> Result<bool> {
    let file_cfg = config_path
        .as_deref()
        .map(read_config)
        .transpose()?
        .unwrap_or_default();

    let env_cap = std::env::var("SYMDIRAC_GROUP_CAP")
        .ok()
        .and_then(|v| v.parse().ok());
    let mut cfg = Config::default();
    cfg.group_cap = cap
        .or(env_cap)
        .or(file_cfg.group_cap)
        .unwrap_or(cfg.group_cap);
    cfg.seed = seed.or(file_cfg.seed).unwrap_or(cfg.seed);
    if let Some(spec) = k.or(file_cfg.k) {
        cfg.k_bindings = parse_k(&spec)?;
    }

    let mut reports = Vec::new();
    if suite == "lie-commutator" && (preset.is_some() || lie_json.is_some()) {
        let checks = if let Some(path) = lie_json {
            let text = std::fs::read_to_string(&path)?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            let name = path.clone();
            let g = QuadLie::from_json(&name, &value).map_err(|e| anyhow!("{}", e))?;
            let violations = g.validate();
            if !violations.is_empty() {
                bail!("input algebra is invalid: {:?}", violations);
            }
            let rep = symdirac_core::quadlie::verify_lie_commutator(&g);
            vec![symdirac_core::verify::CheckResult {
                id: format!("lie-commutator.{}", name),
                anchor: "lie-dirac-commutator".into(),
                status: if rep.holds_first_form && rep.holds_second_form {
                    Status::Pass
                } else {
                    Status::Fail
                },
                witness: serde_json::json!({ "diff": rep.witness }),
                ms: 0,
            }]
        } else {
            suite_lie_commutator(&[preset.as_deref().unwrap()])
        };
        reports.push(Report::new("lie-commutator", checks));
    } else if suite == "all" {
        let names: Vec<String> = file_cfg
            .suites
            .unwrap_or_else(|| suites().iter().map(|s| s.name.to_string()).collect());
        for name in names {
            reports.push(
                run_suite(&name, &cfg).ok_or_else(|| anyhow!("unknown suite {}", name))?,
            );
        }
    } else if let (Some(t), Some(n)) = (ty.as_deref(), rank) {
        let t = parse_type(t)?;
        let report = run_suite_for_target(&suite, t, n, &cfg)
            .ok_or_else(|| anyhow!("suite {} has no per-system variant", suite))?;
        reports.push(report);
    } else {
        reports.push(run_suite(&suite, &cfg).ok_or_else(|| anyhow!("unknown suite {}", suite))?);
    }

    let mut all_pass = true;
    for report in &reports {
        print_report(report);
        all_pass &= report.all_pass();
    }
    if let Some(path) = json_out {
        let value = if reports.len() == 1 {
            serde_json::to_value(&reports[0])?
        } else {
            serde_json::to_value(&reports)?
        };
        std::fs::write(&path, serde_json::to_string_pretty(&value)?)?;
        println!("report written to {}", path);
    }
    Ok(all_pass)
}

fn cmd_table(kind: String, range: Option<String>, json_out: Option<String>) -> Result<()> {
    let cfg = Config::default();
    let rows = match kind.as_str() {
        "deg0" => {
            let systems = parse_range(range.as_deref().unwrap_or("all"))?;
            table_deg0(&systems)
        }
        "omega-scalars-a" => {
            let n: u32 = range.as_deref().unwrap_or("3").parse()?;
            if !(2..=6).contains(&n) {
                bail!("omega-scalars-a supports 2 <= n <= 6");
            }
            table_omega_scalars_a(n, &cfg)
        }
        "omega-scalars-b" => {
            let n: u32 = range.as_deref().unwrap_or("2").parse()?;
            if !(2..=4).contains(&n) {
                bail!("omega-scalars-b supports 2 <= n <= 4");
            }
            table_omega_scalars_b(n, &cfg)
        }
        other => bail!("unknown table kind {}", other),
    };
    if let Some(path) = json_out {
        std::fs::write(&path, serde_json::to_string_pretty(&rows)?)?;
        println!("table written to {}", path);
    } else {
        print!("{}", rows_to_markdown(&rows));
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify {
            suite,
            r#type,
            rank,
            preset,
            lie_json,
            k,
            json,
            seed,
            cap,
            config,
        } => cmd_verify(suite, r#type, rank, preset, lie_json, k, json, seed, cap, config),
        Command::Table { kind, range, json } => cmd_table(kind, range, json).map(|_| true),
        Command::ListSuites => {
            for s in suites() {
                println!("{:<22} [{}] {}", s.name, s.anchor, s.description);
            }
            Ok(true)
        }
        Command::Show { r#type, rank } => (|| -> Result<bool> {
            let t = parse_type(&r#type)?;
            let rs = RootSystem::build(t, rank).map_err(|e| anyhow!("{}", e))?;
            let _ = rs;
            let value = root_system_report(t, rank, &Config::default());
            println!("{}", serde_json::to_string_pretty(&value)?);
            Ok(true)
        })(),
    };
    match outcome {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            std::process::exit(2);
        }
    }
}
