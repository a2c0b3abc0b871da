//! `sahlq` — command-line workbench for intuitionistic Sahlqvist theory:
//! recognizer, Gödel–McKinsey–Tarski translation, first-order
//! correspondents, algebra checking, canonicity, the `φᵏ` constructions,
//! metarules, axiom sets, the linear-logic check, and enumeration sweeps.
//!
//! Reports are JSON on stdout (stable key order, byte-identical across runs
//! for fixed inputs and seed); `--pretty` renders a human-readable text
//! report instead. Exit codes: 0 verdict computed, 1 property violated,
//! 2 input error.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use sahlq_core::algebra::{up_algebra, FiniteAlgebra, Language};
use sahlq_core::correspondence::{correspondent, gmt_translate};
use sahlq_core::duality::meet_irreducible_filters;
use sahlq_core::fomodel::{
    check_fo, enumerate_algebras, enumerate_posets, ClassFilter, EnumerationConfig,
};
use sahlq_core::metalogic::{a_phi, ipc_profile, metarules, phi_k};
use sahlq_core::substructural::{
    characteristic_formula_ill, check_linear_correspondence, enumerate_fle, fle_validate,
    ill_compatible, ill_phi_k, ill_witnesses, FLeAlgebra,
};
use sahlq_core::syntax::{
    btw_quasiequation, build_quasiequation, classify_sahlqvist,
    excluded_middle_quasiequation, goedel_dummett_quasiequation, parse_formula,
    weml_quasiequation, Quasiequation, SahlqvistClass,
};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sahlq", about = "Sahlqvist correspondence workbench", version)]
struct Cli {
    /// Render a human-readable report instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a formula with the Sahlqvist recognizer.
    Classify { formula: String },
    /// Apply the Gödel–McKinsey–Tarski translation to a formula.
    Gmt { formula: String },
    /// Compute the first-order correspondent of a Sahlqvist quasiequation.
    Correspond { quasiequation: String },
    /// Check a quasiequation or formula on an algebra loaded from JSON.
    CheckAlgebra { file: PathBuf, target: String },
    /// Compute the dual, its upset algebra, and both validities.
    Canonicity { file: PathBuf, quasiequation: String },
    /// The doubled formula set of a compatible formula.
    Phik {
        formula: String,
        #[arg(long, default_value = "ipc")]
        logic: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// The metarule family of a quasiequation.
    Metarules {
        quasiequation: String,
        #[arg(long, default_value = "ipc")]
        logic: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// The axiom set A(Φ) up to a fusion bound.
    Aphi {
        quasiequation: String,
        #[arg(long, default_value_t = 1)]
        kmax: usize,
    },
    /// The linear correspondence check on an FL_e algebra from JSON.
    IllCheck {
        file: PathBuf,
        quasiequation: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Count enumerated structures of a class up to a size.
    Enumerate {
        #[arg(long)]
        class: String,
        #[arg(long)]
        size: usize,
    },
    /// Full correspondence sweep: X ⊨ tr(Φ) against Up(X) ⊨ Φ.
    Oracle {
        quasiequation: String,
        #[arg(long, default_value_t = 4)]
        size: usize,
    },
}

/// Outcome of a subcommand: the report plus whether a checked property was
/// violated (exit 1).
struct Outcome {
    report: Value,
    violated: bool,
}

fn ok(report: Value) -> Result<Outcome> {
    Ok(Outcome {
        report,
        violated: false,
    })
}

fn seed() -> u64 {
    std::env::var("SAHLQ_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

/// Accepts a named corpus quasiequation (`em`, `gd`, `weml`, `btw1`,
/// `btw2`, …) or a semicolon-separated list of premise formulas.
fn parse_quasiequation_arg(text: &str) -> Result<Quasiequation> {
    let lower = text.trim().to_lowercase();
    match lower.as_str() {
        "em" => return Ok(excluded_middle_quasiequation()),
        "gd" => return Ok(goedel_dummett_quasiequation()),
        "weml" => return Ok(weml_quasiequation()),
        _ => {}
    }
    if let Some(n) = lower.strip_prefix("btw") {
        if let Ok(n) = n.parse::<usize>() {
            if n >= 1 {
                return Ok(btw_quasiequation(n));
            }
        }
    }
    let premises = text
        .split(';')
        .map(|part| {
            parse_formula(part.trim(), false)
                .map_err(|e| anyhow!("cannot parse premise {:?}: {e}", part.trim()))
        })
        .collect::<Result<Vec<_>>>()?;
    if premises.is_empty() {
        bail!("empty quasiequation");
    }
    Ok(build_quasiequation(premises))
}

fn load_algebra(path: &PathBuf) -> Result<FiniteAlgebra> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).context("file is not JSON")?;
    FiniteAlgebra::from_json(&value).map_err(|e| anyhow!("bad algebra file: {e}"))
}

fn load_fle(path: &PathBuf) -> Result<FLeAlgebra> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).context("file is not JSON")?;
    FLeAlgebra::from_json(&value).map_err(|e| anyhow!("bad FL_e algebra file: {e}"))
}

fn class_name(c: SahlqvistClass) -> &'static str {
    match c {
        SahlqvistClass::Antecedent => "SahlqvistAntecedent",
        SahlqvistClass::Implication => "SahlqvistImplication",
        SahlqvistClass::SahlqvistFormula => "SahlqvistFormula",
        SahlqvistClass::NotSahlqvist => "NotSahlqvist",
    }
}

fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Classify { formula } => {
            let f = parse_formula(formula, false).map_err(|e| anyhow!("parse error: {e}"))?;
            let class = classify_sahlqvist(&f, false);
            ok(json!({
                "command": "classify",
                "inputs": {"formula": f.to_string()},
                "class": class_name(class),
                "seed": seed(),
            }))
        }
        Command::Gmt { formula } => {
            let f = parse_formula(formula, false).map_err(|e| anyhow!("parse error: {e}"))?;
            let g = gmt_translate(&f).map_err(|e| anyhow!("{e}"))?;
            ok(json!({
                "command": "gmt",
                "inputs": {"formula": f.to_string()},
                "translation": g.to_string(),
                "seed": seed(),
            }))
        }
        Command::Correspond { quasiequation } => {
            let q = parse_quasiequation_arg(quasiequation)?;
            if !q.is_sahlqvist(false) {
                bail!("quasiequation is not Sahlqvist: {}", q.display());
            }
            let tr = correspondent(&q).map_err(|e| anyhow!("{e}"))?;
            ok(json!({
                "command": "correspond",
                "inputs": {"quasiequation": q.display()},
                "correspondent": tr.to_string(),
                "correspondent_sexpr": tr.to_sexpr(),
                "quantifiers": tr.quantifier_count(),
                "seed": seed(),
            }))
        }
        Command::CheckAlgebra { file, target } => {
            let a = load_algebra(file)?;
            let looks_like_quasiequation = target.contains(';')
                || parse_quasiequation_arg(target)
                    .map(|q| q.premises.len() > 1 || parse_formula(target, false).is_err())
                    .unwrap_or(false);
            if looks_like_quasiequation || parse_formula(target, false).is_err() {
                let q = parse_quasiequation_arg(target)?;
                let holds = a
                    .validates_quasiequation(&q)
                    .map_err(|e| anyhow!("{e}"))?;
                let witness = a
                    .quasiequation_counterexample(&q)
                    .map_err(|e| anyhow!("{e}"))?
                    .map(|sigma| {
                        sigma
                            .iter()
                            .map(|(v, &e)| (v.clone(), json!(a.labels()[e])))
                            .collect::<serde_json::Map<_, _>>()
                    });
                Ok(Outcome {
                    report: json!({
                        "command": "check-algebra",
                        "inputs": {"file": file.display().to_string(), "quasiequation": q.display()},
                        "holds": holds,
                        "counterexample": witness,
                        "seed": seed(),
                    }),
                    violated: !holds,
                })
            } else {
                let f = parse_formula(target, false).map_err(|e| anyhow!("parse error: {e}"))?;
                let holds = a.validates_formula(&f).map_err(|e| anyhow!("{e}"))?;
                Ok(Outcome {
                    report: json!({
                        "command": "check-algebra",
                        "inputs": {"file": file.display().to_string(), "formula": f.to_string()},
                        "holds": holds,
                        "seed": seed(),
                    }),
                    violated: !holds,
                })
            }
        }
        Command::Canonicity { file, quasiequation } => {
            let a = load_algebra(file)?;
            let q = parse_quasiequation_arg(quasiequation)?;
            if !q.is_sahlqvist(false) {
                bail!("quasiequation is not Sahlqvist: {}", q.display());
            }
            let a_validates = a
                .validates_quasiequation(&q)
                .map_err(|e| anyhow!("{e}"))?;
            let (dual, _) = meet_irreducible_filters(&a);
            let up = up_algebra(&dual, Language::full());
            let up_validates = up
                .validates_quasiequation(&q)
                .map_err(|e| anyhow!("{e}"))?;
            let tr = correspondent(&q).map_err(|e| anyhow!("{e}"))?;
            let dual_satisfies_correspondent =
                check_fo(&dual, &tr).map_err(|e| anyhow!("{e}"))?;
            let violated = a_validates && !up_validates;
            Ok(Outcome {
                report: json!({
                    "command": "canonicity",
                    "inputs": {"file": file.display().to_string(), "quasiequation": q.display()},
                    "algebra_validates": a_validates,
                    "dual_size": dual.size(),
                    "up_of_dual_validates": up_validates,
                    "dual_satisfies_correspondent": dual_satisfies_correspondent,
                    "canonicity_holds": !violated,
                    "seed": seed(),
                }),
                violated,
            })
        }
        Command::Phik { formula, logic, k } => {
            let f = parse_formula(formula, false).map_err(|e| anyhow!("parse error: {e}"))?;
            if *k == 0 {
                bail!("k must be positive");
            }
            let formulas: Vec<String> = match logic.as_str() {
                "ipc" => phi_k(&f, *k, &ipc_profile())
                    .map_err(|e| anyhow!("{e}"))?
                    .iter()
                    .map(|g| g.to_string())
                    .collect(),
                "ill" => ill_phi_k(&f, &ill_witnesses(*k))
                    .map_err(|e| anyhow!("{e}"))?
                    .iter()
                    .map(|g| g.to_string())
                    .collect(),
                other => bail!("unknown logic {other:?} (expected ipc or ill)"),
            };
            ok(json!({
                "command": "phik",
                "inputs": {"formula": f.to_string(), "logic": logic, "k": k},
                "formulas": formulas,
                "seed": seed(),
            }))
        }
        Command::Metarules { quasiequation, logic, k } => {
            let q = parse_quasiequation_arg(quasiequation)?;
            if *k == 0 {
                bail!("k must be positive");
            }
            let rules: Vec<Value> = match logic.as_str() {
                "ipc" => {
                    let profile = ipc_profile();
                    metarules(&q, &profile, *k)
                        .map_err(|e| anyhow!("{e}"))?
                        .iter()
                        .map(|r| {
                            json!({
                                "json": r.to_json(),
                                "text": r.display(),
                            })
                        })
                        .collect()
                }
                "ill" => {
                    let mut out = Vec::new();
                    for kk in 1..=*k {
                        let w = ill_witnesses(kk);
                        let premises = q
                            .premises
                            .iter()
                            .map(|p| {
                                ill_phi_k(p, &w).map(|set| {
                                    set.iter().map(|f| f.to_string()).collect::<Vec<_>>()
                                })
                            })
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|e| anyhow!("{e}"))?;
                        out.push(json!({
                            "json": {"k": kk, "premises": premises, "conclusion": "G |> psi"},
                            "text": premises
                                .iter()
                                .map(|set| format!("G, {} |> psi", set.join(", ")))
                                .collect::<Vec<_>>()
                                .join("    ")
                                + "\n--------\nG |> psi",
                        }));
                    }
                    out
                }
                other => bail!("unknown logic {other:?} (expected ipc or ill)"),
            };
            ok(json!({
                "command": "metarules",
                "inputs": {"quasiequation": q.display(), "logic": logic, "k": k},
                "rules": rules,
                "seed": seed(),
            }))
        }
        Command::Aphi { quasiequation, kmax } => {
            let q = parse_quasiequation_arg(quasiequation)?;
            let axioms: Vec<String> = a_phi(&q, &ipc_profile(), *kmax)
                .map_err(|e| anyhow!("{e}"))?
                .iter()
                .map(|f| f.to_string())
                .collect();
            ok(json!({
                "command": "aphi",
                "inputs": {"quasiequation": q.display(), "kmax": kmax},
                "axioms": axioms,
                "seed": seed(),
            }))
        }
        Command::IllCheck { file, quasiequation, k } => {
            let a = load_fle(file)?;
            fle_validate(&a).map_err(|e| anyhow!("invalid FL_e algebra: {e}"))?;
            let q = parse_quasiequation_arg(quasiequation)?;
            if !q.is_sahlqvist(false) {
                bail!("quasiequation is not Sahlqvist: {}", q.display());
            }
            if *k == 0 {
                bail!("k must be positive");
            }
            let compatible = ill_compatible(&a, &q, *k).map_err(|e| anyhow!("{e}"))?;
            let report = check_linear_correspondence(&a, &q, *k).map_err(|e| anyhow!("{e}"))?;
            let violated = compatible && report.lhs && !report.rhs;
            Ok(Outcome {
                report: json!({
                    "command": "ill-check",
                    "inputs": {"file": file.display().to_string(), "quasiequation": q.display(), "k": k},
                    "characteristic_formula": characteristic_formula_ill(&q, *k)
                        .map_err(|e| anyhow!("{e}"))?
                        .to_string(),
                    "compatible": compatible,
                    "theorem": report.lhs,
                    "spectrum_satisfies_correspondent": report.rhs,
                    "seed": seed(),
                }),
                violated,
            })
        }
        Command::Enumerate { class, size } => {
            if *size == 0 {
                bail!("size must be positive");
            }
            let counts: Vec<usize> = match class.as_str() {
                "posets" => {
                    let all = enumerate_posets(&EnumerationConfig::posets(*size));
                    (1..=*size)
                        .map(|k| all.iter().filter(|p| p.size() == k).count())
                        .collect()
                }
                "fle" => {
                    let all = enumerate_fle(*size);
                    (1..=*size)
                        .map(|k| all.iter().filter(|a| a.size() == k).count())
                        .collect()
                }
                name => {
                    let filter = ClassFilter::from_name(name)
                        .ok_or_else(|| anyhow!("unknown class {name:?}"))?;
                    let all = enumerate_algebras(&EnumerationConfig::algebras(*size, filter));
                    (1..=*size)
                        .map(|k| all.iter().filter(|a| a.size() == k).count())
                        .collect()
                }
            };
            ok(json!({
                "command": "enumerate",
                "inputs": {"class": class, "size": size},
                "counts_by_size": counts,
                "total": counts.iter().sum::<usize>(),
                "seed": seed(),
            }))
        }
        Command::Oracle { quasiequation, size } => {
            let q = parse_quasiequation_arg(quasiequation)?;
            if !q.is_sahlqvist(false) {
                bail!("quasiequation is not Sahlqvist: {}", q.display());
            }
            let tr = correspondent(&q).map_err(|e| anyhow!("{e}"))?;
            let mut checked = 0usize;
            let mut mismatches = Vec::new();
            for x in enumerate_posets(&EnumerationConfig::posets(*size)) {
                let frame_side = check_fo(&x, &tr).map_err(|e| anyhow!("{e}"))?;
                let algebra_side = up_algebra(&x, Language::full())
                    .validates_quasiequation(&q)
                    .map_err(|e| anyhow!("{e}"))?;
                checked += 1;
                if frame_side != algebra_side {
                    mismatches.push(json!({
                        "poset_size": x.size(),
                        "poset": x.to_json(),
                        "frame_side": frame_side,
                        "algebra_side": algebra_side,
                    }));
                }
            }
            let violated = !mismatches.is_empty();
            Ok(Outcome {
                report: json!({
                    "command": "oracle",
                    "inputs": {"quasiequation": q.display(), "size": size},
                    "correspondent": tr.to_string(),
                    "posets_checked": checked,
                    "mismatches": mismatches,
                    "seed": seed(),
                }),
                violated,
            })
        }
    }
}

/// Flatten a report into indented `key: value` lines.
fn render_pretty(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_pretty(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_pretty(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(v))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(value))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            if cli.pretty {
                let mut text = String::new();
                render_pretty(&outcome.report, 0, &mut text);
                print!("{text}");
            } else {
                println!("{}", outcome.report);
            }
            if outcome.violated {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
