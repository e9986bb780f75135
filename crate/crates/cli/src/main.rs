//! Command-line front end: construct, recognize, analyze, classify,
//! verify, and export LR triples as canonical JSON.
//!
//! Exit codes: 0 success, 1 mathematical rejection or identity violation,
//! 2 input or usage error.

use clap::{Args, Parser, Subcommand};
use lrt_core::families::{self, classify, normalize, FamilyDescriptor, NormalizationReport};
use lrt_core::json;
use lrt_core::lrpair::WeylKind;
use lrt_core::lrtriple::{recognize_lr_triple, LRTripleData};
use lrt_core::relations::{
    casimir_check, exp_identity_check, sl2_module, sl2_module_bipartite, uq_module,
    uq_module_bipartite, uq_parameter_candidates, verify_relations, RelationCheck,
};
use lrt_core::FieldSpec;
use serde_json::Value;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lrt",
    about = "Exact construction, recognition, analysis, and classification of lowering-raising triples"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family instance from a descriptor such as "nbg:d=4,q=2"
    Construct {
        /// Family descriptor, e.g. nbg:d=2,q=2 | b:d=4,t=3,rho0=1,rho0p=2 |
        /// weyl:d=4 | qweyl:d=2,j=1,q=3
        descriptor: String,
        #[command(flatten)]
        field: FieldArg,
        /// Output path (stdout when omitted)
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Skip the advisory derived block
        #[arg(long)]
        no_derived: bool,
    },
    /// Decide whether a JSON file holds an LR triple and report its data
    Recognize { input: PathBuf },
    /// Print the full derived data of a recognized triple
    Analyze { input: PathBuf },
    /// Normalize if needed and print the family descriptor
    Classify { input: PathBuf },
    /// Run verification suites and report pass/fail per identity
    Verify {
        input: PathBuf,
        /// data | relations | rotator | cycle | module | all
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Re-emit a triple as canonical JSON with recomputed derived data
    ExportData {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FieldArg {
    /// Field: "q" (rationals), "gfp:P", or "auto"
    #[arg(long, default_value = "q")]
    field: String,
}

enum CliError {
    /// Invalid input or usage (exit 2).
    Usage(String),
    /// Mathematical rejection or violated identity (exit 1).
    Rejected(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn rejected(msg: impl Into<String>) -> CliError {
    CliError::Rejected(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Rejected(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_field(text: &str, descriptor: &str) -> Result<FieldSpec, CliError> {
    match text {
        "q" => Ok(FieldSpec::Rationals),
        "auto" => {
            let tag = descriptor.split(':').next().unwrap_or(descriptor);
            let d = descriptor
                .split(['=', ',', ':'])
                .collect::<Vec<_>>()
                .windows(2)
                .find(|w| w[0] == "d")
                .and_then(|w| w[1].parse::<usize>().ok())
                .ok_or_else(|| usage("auto field needs d= in the descriptor"))?;
            families::suggest_field(tag, d)
                .ok_or_else(|| usage(format!("no automatic field for {tag} at d = {d}")))
        }
        other => match other.strip_prefix("gfp:") {
            Some(p) => {
                let p: u64 = p.parse().map_err(|_| usage("bad prime in gfp:P"))?;
                FieldSpec::gfp(p).map_err(|e| usage(e.to_string()))
            }
            None => Err(usage(format!("unknown field {other:?}"))),
        },
    }
}

fn read_triple(path: &PathBuf) -> Result<(Value, LRTripleData), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("invalid JSON: {e}")))?;
    let (a, b, c) = json::triple_matrices_from_value(&value).map_err(|e| usage(e.to_string()))?;
    let t = recognize_lr_triple(&a, &b, &c)
        .map_err(|e| rejected(format!("not an LR triple: {e}")))?;
    Ok((value, t))
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn describe(t: &LRTripleData) -> String {
    let flags = t.flags();
    let mut parts = vec![format!("LR triple, d={}", t.diameter())];
    if t.is_trivial() {
        parts.push("trivial".into());
    }
    parts.push(
        if flags.bipartite {
            "bipartite"
        } else {
            "nonbipartite"
        }
        .into(),
    );
    if flags.equitable {
        parts.push("equitable".into());
    }
    if flags.normalized {
        parts.push("normalized".into());
    }
    parts.join(", ")
}

fn scalars(list: &[lrt_core::Scalar]) -> String {
    let inner: Vec<String> = list.iter().map(|s| s.to_canonical_string()).collect();
    format!("[{}]", inner.join(", "))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Construct {
            descriptor,
            field,
            out,
            no_derived,
        } => {
            let fieldspec = parse_field(&field.field, &descriptor)?;
            let desc = FamilyDescriptor::parse(&descriptor, fieldspec)
                .map_err(|e| usage(e.to_string()))?;
            let t = desc.construct().map_err(|e| usage(e.to_string()))?;
            let v = json::triple_to_value(&t, !no_derived);
            write_output(&out, &json::to_canonical_string(&v))
        }
        Command::Recognize { input } => {
            let (_, t) = read_triple(&input)?;
            println!("{}", describe(&t));
            println!("phi   = {}", scalars(t.pair(0).parameter_sequence()));
            println!("phi'  = {}", scalars(t.pair(1).parameter_sequence()));
            println!("phi'' = {}", scalars(t.pair(2).parameter_sequence()));
            Ok(())
        }
        Command::Analyze { input } => {
            let (_, t) = read_triple(&input)?;
            println!("{}", describe(&t));
            println!("phi   = {}", scalars(t.pair(0).parameter_sequence()));
            println!("phi'  = {}", scalars(t.pair(1).parameter_sequence()));
            println!("phi'' = {}", scalars(t.pair(2).parameter_sequence()));
            println!("a     = {}", scalars(t.trace_data(0)));
            println!("a'    = {}", scalars(t.trace_data(1)));
            println!("a''   = {}", scalars(t.trace_data(2)));
            println!("alpha   = {}", scalars(t.toeplitz().alpha(0)));
            println!("alpha'  = {}", scalars(t.toeplitz().alpha(1)));
            println!("alpha'' = {}", scalars(t.toeplitz().alpha(2)));
            println!("beta    = {}", scalars(t.toeplitz().beta(0)));
            println!("beta'   = {}", scalars(t.toeplitz().beta(1)));
            println!("beta''  = {}", scalars(t.toeplitz().beta(2)));
            println!("theta = {}", t.theta().to_canonical_string());
            Ok(())
        }
        Command::Classify { input } => {
            let (_, t) = read_triple(&input)?;
            let (normalized, report) = normalize(&t);
            match report {
                NormalizationReport::Trivial => {}
                NormalizationReport::Scaled { alpha, beta, gamma } => {
                    if !(alpha.is_one() && beta.is_one() && gamma.is_one()) {
                        println!(
                            "normalized with scalings ({}, {}, {})",
                            alpha.to_canonical_string(),
                            beta.to_canonical_string(),
                            gamma.to_canonical_string()
                        );
                    }
                }
                NormalizationReport::OuterScaled { alpha, beta, gamma } => {
                    if !(alpha.is_one() && beta.is_one() && gamma.is_one()) {
                        println!(
                            "normalized with outer scalings ({}, {}, {})",
                            alpha.to_canonical_string(),
                            beta.to_canonical_string(),
                            gamma.to_canonical_string()
                        );
                    }
                }
            }
            let desc = classify(&normalized).map_err(|e| rejected(e.to_string()))?;
            println!("{desc}");
            Ok(())
        }
        Command::Verify { input, suite } => {
            let (value, t) = read_triple(&input)?;
            let checks = run_suites(&value, &t, &suite)?;
            let mut failed = Vec::new();
            for c in &checks {
                println!("{} {}", if c.holds { "ok  " } else { "FAIL" }, c.id);
                if !c.holds {
                    failed.push(c.id.clone());
                }
            }
            if failed.is_empty() {
                println!("all {} checks hold", checks.len());
                Ok(())
            } else {
                Err(rejected(format!(
                    "failing identities: {}",
                    failed.join(", ")
                )))
            }
        }
        Command::ExportData { input, out } => {
            let (_, t) = read_triple(&input)?;
            let v = json::triple_to_value(&t, true);
            write_output(&out, &json::to_canonical_string(&v))
        }
    }
}

fn run_suites(
    value: &Value,
    t: &LRTripleData,
    suite: &str,
) -> Result<Vec<RelationCheck>, CliError> {
    let mut checks = Vec::new();
    let want = |name: &str| suite == name || suite == "all";
    if !["data", "relations", "rotator", "cycle", "module", "all"].contains(&suite) {
        return Err(usage(format!("unknown suite {suite:?}")));
    }

    if want("data") || want("rotator") || want("cycle") {
        for (id, holds) in t.identity_suite() {
            let in_rotator = id.starts_with("unipotent") || id.starts_with("rotator");
            let in_cycle = id.starts_with("cycle");
            let keep = (want("data") && !in_rotator && !in_cycle)
                || (want("rotator") && in_rotator)
                || (want("cycle") && in_cycle);
            if keep {
                checks.push(RelationCheck { id, holds });
            }
        }
    }
    if want("data") {
        for key in json::derived_block_mismatches(value, t) {
            checks.push(RelationCheck {
                id: format!("derived.{key}"),
                holds: false,
            });
        }
    }
    if want("cycle") {
        if let Ok(scalar) = t.twelve_cycle_check() {
            println!("cycle scalar: {}", scalar.to_canonical_string());
        }
    }
    if want("relations") || want("module") {
        let (normalized, _) = normalize(t);
        match classify(&normalized) {
            Ok(desc) => {
                if want("relations") {
                    let report = verify_relations(&normalized, &desc);
                    checks.extend(report.checks);
                    checks.extend(exp_identity_check(&normalized, &desc));
                }
                if want("module") {
                    checks.extend(module_checks(&normalized, &desc));
                }
            }
            Err(e) => checks.push(RelationCheck {
                id: format!("classify ({e})"),
                holds: false,
            }),
        }
        // raw triples satisfying a Weyl-type relation get those checks too
        if want("relations") {
            match t.pair(0).weyl_kind() {
                WeylKind::Weyl => {
                    let ident = lrt_core::Matrix::identity(t.diameter() + 1, t.field());
                    let ok = [(t.a(), t.b()), (t.b(), t.c()), (t.c(), t.a())]
                        .iter()
                        .all(|(x, y)| (&(*x * *y) - &(*y * *x)) == ident);
                    checks.push(RelationCheck {
                        id: "weyl.commutators".into(),
                        holds: ok,
                    });
                }
                WeylKind::QWeyl(qs) => {
                    let ok = qs.iter().any(|qv| casimir_check(t, qv).is_ok());
                    checks.push(RelationCheck {
                        id: "qweyl.casimir".into(),
                        holds: ok,
                    });
                }
                WeylKind::None => {}
            }
        }
    }
    Ok(checks)
}

fn module_checks(t: &LRTripleData, desc: &FamilyDescriptor) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    match desc {
        FamilyDescriptor::NbgQ { q, .. } => {
            let cands = uq_parameter_candidates(q);
            match cands.first() {
                Some(qv) => match uq_module(t, qv) {
                    Ok(m) => out.extend(m.checks),
                    Err(e) => out.push(RelationCheck {
                        id: format!("module.uq ({e})"),
                        holds: false,
                    }),
                },
                None => out.push(RelationCheck {
                    id: "module.uq.skipped (no q with q^-2 = parameter)".into(),
                    holds: true,
                }),
            }
        }
        FamilyDescriptor::Nbg1 { .. } => match sl2_module(t) {
            Ok(m) => out.extend(m.checks),
            Err(e) => out.push(RelationCheck {
                id: format!("module.sl2 ({e})"),
                holds: false,
            }),
        },
        FamilyDescriptor::BT { t: tp, .. } => {
            let cands = uq_parameter_candidates(tp);
            match cands.first() {
                Some(qv) => match uq_module_bipartite(t, qv) {
                    Ok(m) => out.extend(m.checks),
                    Err(e) => out.push(RelationCheck {
                        id: format!("module.uqbip ({e})"),
                        holds: false,
                    }),
                },
                None => out.push(RelationCheck {
                    id: "module.uqbip.skipped (no q with q^-2 = parameter)".into(),
                    holds: true,
                }),
            }
        }
        FamilyDescriptor::B1 { .. } | FamilyDescriptor::B2 { .. } => {
            if t.field().characteristic() == 2 {
                out.push(RelationCheck {
                    id: "module.sl2bip.skipped (characteristic 2)".into(),
                    holds: true,
                });
            } else {
                match sl2_module_bipartite(t) {
                    Ok(m) => out.extend(m.checks),
                    Err(e) => out.push(RelationCheck {
                        id: format!("module.sl2bip ({e})"),
                        holds: false,
                    }),
                }
            }
        }
        _ => out.push(RelationCheck {
            id: "module.skipped (no module structure for this family)".into(),
            holds: true,
        }),
    }
    out
}
