use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use permlab::lattice::{level_json, to_dot, LatticeLevel, LatticeModel, Tower, DEFAULT_LEVEL_CAP};
use permlab::perm::DEFAULT_W;
use permlab::report::Report;
use permlab::shelah::{closure, is_closed, ShelahAtom, DEFAULT_BASE};
use permlab::suites::{self, stream};
use permlab::symmetric::{mostowski_witness, CARRIER_CAP, Q};

#[derive(Parser, Debug)]
#[command(
    name = "permlab",
    version,
    about = "Permutation constructions, model kernels and the lattice tower"
)]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand. All of them are echoed into reports.
#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Truncation width for sequence encodings.
    #[arg(long, global = true, default_value_t = DEFAULT_W)]
    w: u32,
    /// Highest lattice level that may be built.
    #[arg(long, global = true, default_value_t = DEFAULT_LEVEL_CAP)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Keep wall-clock timings in reports; they are zeroed by default so that
    /// reports are byte-identical across runs.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build, verify and export the lattice levels A_n.
    Lattice {
        #[command(subcommand)]
        op: LatticeOp,
    },
    /// Self-check the explicit permutation constructions.
    Constructions {
        #[command(subcommand)]
        op: ConstructionsOp,
    },
    /// Finite kernels of the permutation models.
    Model {
        #[command(subcommand)]
        model: ModelCmd,
    },
}

#[derive(Subcommand, Debug)]
enum LatticeOp {
    /// Print A_n as JSON, a DOT Hasse diagram or a text listing.
    Build { n: usize },
    /// Run every building-block check on A_n.
    Verify { n: usize },
    /// Same as build, written to --out.
    Export { n: usize },
    /// Random fiber extensions, extension chains, move witnesses and separation.
    Automorphisms {
        /// Highest level used.
        #[arg(long, default_value_t = 4)]
        level: usize,
        /// Random draws per frame.
        #[arg(long, default_value_t = 100)]
        draws: usize,
    },
    /// Finite-to-one check of the join map.
    Join {
        /// Level whose subsets are enumerated exhaustively.
        #[arg(long, default_value_t = 2)]
        exhaustive: usize,
        /// Level sampled at random.
        #[arg(long, default_value_t = 4)]
        level: usize,
        #[arg(long, default_value_t = 10_000)]
        random: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructionsOp {
    /// Run the construction oracles, exhaustively at small sizes.
    Test {
        #[arg(long, default_value_t = 4)]
        size: usize,
        /// Run only checks with this name or name prefix.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum ModelCmd {
    /// Basic Fraenkel model on finitely many atoms.
    Fraenkel {
        #[command(subcommand)]
        op: FraenkelOp,
    },
    /// Ordered Mostowski model over the rationals.
    Mostowski {
        #[command(subcommand)]
        op: MostowskiOp,
    },
    /// Block projection of the second Fraenkel model.
    N23 {
        #[arg(long, default_value_t = 3)]
        blocks: usize,
    },
    /// Lazy tree of atoms for the Shelah model.
    Shelah {
        #[command(subcommand)]
        op: ShelahOp,
    },
}

#[derive(Subcommand, Debug)]
enum FraenkelOp {
    /// Witnesses fixing B and carrying p onto q, for all B, p, q.
    Transitivity {
        #[arg(long, default_value_t = 8)]
        atoms: usize,
        #[arg(long, default_value_t = 3)]
        support: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum MostowskiOp {
    /// Order automorphism of Q fixing --fix and moving --move.
    Witness {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        fix: Vec<Q>,
        #[arg(long = "move", allow_hyphen_values = true)]
        target: Q,
        /// An extra point to keep fixed.
        #[arg(long, allow_hyphen_values = true)]
        forbid: Option<Q>,
    },
}

#[derive(Subcommand, Debug)]
enum ShelahOp {
    /// Closure of a named fixture or of explicit atoms.
    Closure {
        #[arg(long, conflicts_with = "atom")]
        fixture: Option<String>,
        #[arg(long)]
        atom: Vec<String>,
    },
    /// Closure, extension, sibling-swap and triple checks.
    Suite {
        #[arg(long, default_value_t = 4)]
        base: u32,
        #[arg(long, default_value_t = 100)]
        random: usize,
        #[arg(long, default_value_t = 50)]
        triples: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{what} = {value} exceeds cap {cap}")]
    Cap {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error(transparent)]
    Lattice(#[from] permlab::lattice::LatticeError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// What a subcommand produced.
enum Output {
    Report { report: Report, params: Value },
    Document(String),
}

fn check_cap(what: &'static str, value: usize, cap: usize) -> Result<(), CliError> {
    if value > cap {
        return Err(CliError::Cap { what, value, cap });
    }
    Ok(())
}

fn report_value(r: &Report) -> Value {
    let mut m = Map::new();
    m.insert("check".into(), json!(r.check));
    m.insert(
        "verdict".into(),
        json!(if r.pass { "pass" } else { "fail" }),
    );
    m.insert("cases".into(), json!(r.cases));
    m.insert("millis".into(), json!(r.millis));
    if let Some(d) = &r.detail {
        let key = if r.pass { "witness" } else { "counterexample" };
        m.insert(key.into(), d.clone());
    }
    if !r.checks.is_empty() {
        m.insert("checks".into(), r.checks.iter().map(report_value).collect());
    }
    Value::Object(m)
}

fn report_text(r: &Report, depth: usize, out: &mut String) {
    let mark = if r.pass { "PASS" } else { "FAIL" };
    let _ = writeln!(
        out,
        "{:indent$}{mark} {} ({} cases, {} ms)",
        "",
        r.check,
        r.cases,
        r.millis,
        indent = 2 * depth
    );
    if !r.pass && r.checks.is_empty() {
        if let Some(d) = &r.detail {
            let _ = writeln!(out, "{:indent$}  {d}", "", indent = 2 * depth);
        }
    }
    for c in &r.checks {
        report_text(c, depth + 1, out);
    }
}

fn level_text(tower: &Tower, level: &LatticeLevel) -> String {
    let mut out = format!("A_{}: {} elements\n", level.n, level.len());
    for a in 0..level.len() {
        let below: Vec<String> = level
            .poset
            .lower_covers(a)
            .iter()
            .map(|&b| tower.name(b))
            .collect();
        let _ = writeln!(out, "{a}\t{}\tcovers {}", tower.name(a), below.join(" "));
    }
    out
}

fn lattice(cfg: &RunConfig, op: LatticeOp) -> Result<Output, CliError> {
    let render = |n: usize| -> Result<Output, CliError> {
        check_cap("n", n, cfg.cap)?;
        let tower = Tower::build_with_cap(n, cfg.cap)?;
        let level = tower.level_unchecked(n)?;
        Ok(Output::Document(match cfg.format {
            Format::Json => format!("{:#}\n", level_json(&tower, &level)),
            Format::Dot => to_dot(&tower, &level),
            Format::Text => level_text(&tower, &level),
        }))
    };
    match op {
        LatticeOp::Build { n } => render(n),
        LatticeOp::Export { n } => {
            if cfg.out.is_none() {
                return Err(CliError::Usage("export needs --out".into()));
            }
            render(n)
        }
        LatticeOp::Verify { n } => {
            check_cap("n", n, cfg.cap)?;
            let model = LatticeModel::from_tower(Tower::build_with_cap(n, cfg.cap)?)?;
            let report = Report::timed(|| suites::level_check(&model, n));
            Ok(Output::Report {
                report,
                params: json!({ "n": n }),
            })
        }
        LatticeOp::Automorphisms { level, draws } => {
            check_cap("level", level, cfg.cap)?;
            let model = LatticeModel::from_tower(Tower::build_with_cap(level, cfg.cap)?)?;
            let mut rng = stream(cfg.seed, "automorphisms");
            let report =
                Report::timed(|| suites::lattice_automorphism_check(&model, draws, &mut rng));
            Ok(Output::Report {
                report,
                params: json!({ "level": level, "draws": draws }),
            })
        }
        LatticeOp::Join {
            exhaustive,
            level,
            random,
        } => {
            check_cap("level", level.max(exhaustive), cfg.cap)?;
            let model =
                LatticeModel::from_tower(Tower::build_with_cap(level.max(exhaustive), cfg.cap)?)?;
            let mut rng = stream(cfg.seed, "join");
            let report = Report::timed(|| suites::join_check(&model, exhaustive, random, &mut rng));
            Ok(Output::Report {
                report,
                params: json!({ "exhaustive": exhaustive, "level": level, "random": random }),
            })
        }
    }
}

fn constructions(cfg: &RunConfig, op: ConstructionsOp) -> Result<Output, CliError> {
    let ConstructionsOp::Test { size, only } = op;
    check_cap("size", size, suites::SIZE_CAP)?;
    let mut err = None;
    let report = Report::timed(|| {
        let checks = suites::construction_checks(size, only.as_deref(), cfg.seed)
            .map(|cs| cs.into_iter().map(|c| Report::timed(|| c)).collect())
            .unwrap_or_else(|e| {
                err = Some(e);
                Vec::new()
            });
        Report::composite("constructions", checks)
    });
    if let Some(e) = err {
        return Err(CliError::Usage(format!(
            "{e}; known checks: {}",
            suites::CONSTRUCTION_CHECKS.join(", ")
        )));
    }
    Ok(Output::Report {
        report,
        params: json!({ "size": size, "only": only }),
    })
}

fn model(cfg: &RunConfig, cmd: ModelCmd) -> Result<Output, CliError> {
    match cmd {
        ModelCmd::Fraenkel {
            op: FraenkelOp::Transitivity { atoms, support, k },
        } => {
            check_cap("atoms", atoms, CARRIER_CAP)?;
            let report = Report::timed(|| suites::transitivity_check(atoms, support, k));
            Ok(Output::Report {
                report,
                params: json!({ "atoms": atoms, "support": support, "k": k }),
            })
        }
        ModelCmd::Mostowski {
            op:
                MostowskiOp::Witness {
                    fix,
                    target,
                    forbid,
                },
        } => {
            let params = json!({
                "fix": fix.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "move": target.to_string(),
                "forbid": forbid.map(|q| q.to_string()),
            });
            if cfg.format == Format::Text {
                let w = mostowski_witness(&fix, target, forbid)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                return Ok(Output::Document(format!(
                    "{w}\n{target} ↦ {}\n",
                    w.eval(target)
                )));
            }
            let mut fixed = fix.clone();
            fixed.extend(forbid);
            let report = Report::timed(|| suites::mostowski_check(&fixed, target));
            Ok(Output::Report { report, params })
        }
        ModelCmd::N23 { blocks } => {
            let report = Report::timed(|| suites::n23_check(blocks, cfg.w));
            Ok(Output::Report {
                report,
                params: json!({ "blocks": blocks }),
            })
        }
        ModelCmd::Shelah {
            op: ShelahOp::Closure { fixture, atom },
        } => {
            let atoms: Vec<ShelahAtom> = match fixture {
                Some(name) => suites::shelah_fixture(&name)
                    .ok_or_else(|| {
                        let known: Vec<&str> =
                            suites::SHELAH_FIXTURES.iter().map(|(n, _)| *n).collect();
                        CliError::Usage(format!(
                            "unknown fixture {name}; known: {}",
                            known.join(", ")
                        ))
                    })?
                    .map_err(CliError::Usage)?,
                None => atom
                    .iter()
                    .map(|s| s.parse().map_err(|e| CliError::Usage(format!("{s}: {e}"))))
                    .collect::<Result<_, _>>()?,
            };
            let c = closure(&atoms);
            if cfg.format == Format::Text {
                return Ok(Output::Document(
                    c.iter().map(|a| format!("{a}\n")).collect(),
                ));
            }
            let listing: Vec<String> = c.iter().map(ToString::to_string).collect();
            let report = Report::verdict(
                "closure",
                is_closed(&c) && atoms.iter().all(|a| c.contains(a)),
            )
            .with_cases(c.len() as u64)
            .with_detail(json!({ "closure": listing }));
            let input: Vec<String> = atoms.iter().map(ToString::to_string).collect();
            Ok(Output::Report {
                report,
                params: json!({ "atoms": input }),
            })
        }
        ModelCmd::Shelah {
            op:
                ShelahOp::Suite {
                    base,
                    random,
                    triples,
                },
        } => {
            check_cap("base", base as usize, DEFAULT_BASE as usize)?;
            let mut rng = stream(cfg.seed, "shelah");
            let report =
                Report::timed(|| suites::shelah_check(base, random, random, triples, &mut rng));
            Ok(Output::Report {
                report,
                params: json!({ "base": base, "random": random, "triples": triples }),
            })
        }
    }
}

fn envelope(cfg: &RunConfig, report: &Report, params: Value) -> Value {
    let mut v = report_value(report);
    let m = v.as_object_mut().expect("object");
    m.insert("seed".into(), json!(cfg.seed));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert(
        "caps".into(),
        json!({ "level": cfg.cap, "w": cfg.w, "size": suites::SIZE_CAP }),
    );
    m.insert("params".into(), params);
    v
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let cfg = cli.run;
    let output = match cli.command {
        Command::Lattice { op } => lattice(&cfg, op)?,
        Command::Constructions { op } => constructions(&cfg, op)?,
        Command::Model { model: m } => model(&cfg, m)?,
    };
    let (text, pass) = match output {
        Output::Document(doc) => (doc, true),
        Output::Report { report, params } => {
            let report = report.normalized(cfg.timing);
            let text = match cfg.format {
                Format::Json | Format::Dot => format!("{:#}\n", envelope(&cfg, &report, params)),
                Format::Text => {
                    let mut s = String::new();
                    report_text(&report, 0, &mut s);
                    s
                }
            };
            (text, report.pass)
        }
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?,
        None => print!("{text}"),
    }
    Ok(pass)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("permlab: {e}");
            ExitCode::from(2)
        }
    }
}
