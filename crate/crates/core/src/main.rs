//! Command-line front end for the double-cover classification toolkit.

use clap::{Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use k3cover::covers::{self, BranchConfig};
use k3cover::error::Error;
use k3cover::evensets::{self, CodeJson, EvenSetCodeId};
use k3cover::k3lattices::{self, derive, NamedLatticeId};
use k3cover::lattice::{Lattice, LatticeJson};
use k3cover::verify;

#[derive(Parser)]
#[command(
    name = "k3cover",
    about = "Branch loci of smooth double covers of K3 surfaces: lattices, codes, invariants",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(clap::Args)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a named lattice or a lattice JSON file.
    #[command(name = "lattice-info")]
    LatticeInfo {
        /// Lattice id (e.g. L_9_2, M_2e4, K, U, U2, D4, R2d:6) or a path to
        /// a lattice JSON file.
        target: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Emit the defining data (Gram matrix + glue vectors) of a named lattice.
    #[command(name = "lattice-build")]
    LatticeBuild {
        /// Lattice id.
        id: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Classify a branch configuration given by its curve genera.
    Classify {
        /// Comma-separated list of genera, e.g. 2,0,0,0,0,0.
        #[arg(long)]
        genera: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// The candidate NS lattices for n branch curves (table lookup).
    #[command(name = "ns-candidates")]
    NsCandidates {
        n: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Rederive the candidate list by brute force over glue classes.
    #[command(name = "derive-candidates")]
    DeriveCandidates {
        n: usize,
        /// Include the per-candidate records and filter verdicts.
        #[arg(long)]
        details: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Even-set codes: validate a named code, or list the alternative
    /// 2-divisible sets on a candidate surface.
    #[command(name = "even-sets")]
    EvenSets {
        /// Code id: M_2e1, M_2e2, M_2e3, M_2e4 or K. Without an id and
        /// without --n/--r, all five codes are validated.
        id: Option<String>,
        /// Number of branch curves for the alternative-set listing.
        #[arg(long, requires = "r")]
        n: Option<usize>,
        /// Overlattice index of the candidate lattice.
        #[arg(long, requires = "n")]
        r: Option<usize>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Existence of the double cover for the extremal cases n = 1, 16, 17.
    Existence {
        n: usize,
        h: i64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Recompute every reproduced value and report pass/fail per check.
    #[command(name = "verify-paper")]
    VerifyPaper {
        #[command(flatten)]
        output: OutputOpts,
        /// Corrupt one Gram entry first (negative control; must fail).
        #[arg(long, hide = true)]
        negative_control: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn emit(output: &OutputOpts, content: &str) -> Result<(), Error> {
    match &output.out {
        None => {
            print!("{content}");
            if !content.ends_with('\n') {
                println!();
            }
            Ok(())
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::LatticeInfo { target, output } => {
            let lattice = load_lattice(&target)?;
            let content = render_lattice_info(&lattice, output.format)?;
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::LatticeBuild { id, output } => {
            let parsed = NamedLatticeId::parse(&id)?;
            let (base, glue) = parsed.recipe()?;
            let js = LatticeJson::from_lattice(&base, &glue);
            let content = match output.format {
                Format::Json => serde_json::to_string_pretty(&js).expect("serializable"),
                Format::Text => {
                    let mut s = String::new();
                    let _ = writeln!(s, "name: {}", js.name);
                    let _ = writeln!(s, "labels: {}", js.labels.join(", "));
                    let _ = writeln!(s, "gram:");
                    for row in &js.gram {
                        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                        let _ = writeln!(s, "  [{}]", cells.join(", "));
                    }
                    if !js.glue.is_empty() {
                        let _ = writeln!(s, "glue:");
                        for g in &js.glue {
                            let _ = writeln!(s, "  ({})", g.join(", "));
                        }
                    }
                    s
                }
                Format::Csv => {
                    return Err(Error::InvalidInput(
                        "csv does not apply to lattice-build; use json or text".into(),
                    ))
                }
            };
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { genera, output } => {
            let cfg = BranchConfig::parse_csv(&genera)?;
            let outcome = covers::classify_branch(&cfg);
            let content = match output.format {
                Format::Json => serde_json::to_string_pretty(&outcome).expect("serializable"),
                Format::Text => render_classify_text(&outcome),
                Format::Csv => render_classify_csv(&outcome),
            };
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::NsCandidates { n, output } => {
            let list = k3lattices::ns_candidates(n);
            let content = match output.format {
                Format::Json => serde_json::to_string_pretty(&list).expect("serializable"),
                Format::Text => format!("{list}\n"),
                Format::Csv => {
                    let mut s = String::from("n,r\n");
                    for e in &list.entries {
                        let _ = writeln!(s, "{},{}", e.n, e.r);
                    }
                    s
                }
            };
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DeriveCandidates { n, details, output } => {
            let derivation = derive::derive(n)?;
            let content = match output.format {
                Format::Json => {
                    if details {
                        serde_json::to_string_pretty(&derivation).expect("serializable")
                    } else {
                        serde_json::to_string_pretty(&derivation.list).expect("serializable")
                    }
                }
                Format::Text => {
                    let mut s = format!("{}\n", derivation.list);
                    if details {
                        for r in &derivation.records {
                            let _ = writeln!(
                                s,
                                "  [dim {}] {} -> {:?} (length {}, det {})",
                                r.code_dim, r.description, r.verdict, r.length, r.det
                            );
                        }
                        for note in &derivation.notes {
                            let _ = writeln!(s, "  note: {note}");
                        }
                    }
                    s
                }
                Format::Csv => {
                    let mut s = String::from("n,r\n");
                    for e in &derivation.list.entries {
                        let _ = writeln!(s, "{},{}", e.n, e.r);
                    }
                    s
                }
            };
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::EvenSets { id, n, r, output } => {
            let content = match (id, n, r) {
                (Some(id), None, None) if id.ends_with(".json") || id.contains('/') => {
                    let text = std::fs::read_to_string(&id)
                        .map_err(|e| Error::InvalidInput(format!("cannot read {id}: {e}")))?;
                    let js: CodeJson = serde_json::from_str(&text)
                        .map_err(|e| Error::Parse(format!("bad code JSON: {e}")))?;
                    let code = js.to_code()?;
                    let verdict = evensets::validate_even_code(&code)?;
                    match output.format {
                        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                            "code": js,
                            "valid": verdict.valid,
                            "violations": verdict.violations,
                        }))
                        .expect("serializable"),
                        _ => format!(
                            "[{},{}] code: {}\n{}",
                            code.len(),
                            code.dimension(),
                            if verdict.valid { "valid" } else { "INVALID" },
                            verdict
                                .violations
                                .iter()
                                .map(|v| format!("  violation: {v:?}\n"))
                                .collect::<String>()
                        ),
                    }
                }
                (Some(id), None, None) => {
                    let code_id = parse_code_id(&id)?;
                    render_code(code_id, output.format)?
                }
                (None, Some(n), Some(r)) => {
                    let sets = covers::alternative_even_sets(n, r)?;
                    match output.format {
                        Format::Json => serde_json::to_string_pretty(&sets).expect("serializable"),
                        Format::Text => {
                            let mut s = format!("alternative 2-divisible sets on Y_{n}^({r}):\n");
                            for d in &sets {
                                let _ = writeln!(
                                    s,
                                    "  genus {} curve ({}) with {} rational classes {:?}",
                                    d.genus, d.curve_class, d.rationals, d.rational_indices
                                );
                            }
                            s
                        }
                        Format::Csv => {
                            let mut s = String::from("genus,rationals,curve_class\n");
                            for d in &sets {
                                let _ =
                                    writeln!(s, "{},{},{}", d.genus, d.rationals, d.curve_class);
                            }
                            s
                        }
                    }
                }
                (None, None, None) => {
                    let mut s = String::new();
                    for code_id in EvenSetCodeId::ALL {
                        let verdict = evensets::validate_even_code(&evensets::code_of(code_id))?;
                        let _ = writeln!(
                            s,
                            "{}: {} ({} positions, dimension {})",
                            code_id.name(),
                            if verdict.valid { "valid" } else { "INVALID" },
                            code_id.positions(),
                            evensets::code_of(code_id).dimension()
                        );
                    }
                    s
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "pass either a code id or both --n and --r".into(),
                    ))
                }
            };
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Existence { n, h, output } => {
            let v = covers::existence(n, h)?;
            let content = match output.format {
                Format::Json => serde_json::to_string_pretty(&v).expect("serializable"),
                Format::Text => format!(
                    "n={} h={} g(C)={}: {}\n  {}\n",
                    v.n,
                    v.h,
                    v.genus_c,
                    if v.exists { "exists" } else { "does not exist" },
                    v.note
                ),
                Format::Csv => format!(
                    "n,h,gC,exists\n{},{},{},{}\n",
                    v.n, v.h, v.genus_c, v.exists
                ),
            };
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPaper {
            output,
            negative_control,
        } => {
            let report = if negative_control {
                verify::paper_report_negative_control()
            } else {
                verify::paper_report()
            };
            let content = match output.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
                Format::Csv => report.to_csv(),
            };
            emit(&output, &content)?;
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn parse_code_id(s: &str) -> Result<EvenSetCodeId, Error> {
    EvenSetCodeId::ALL
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| Error::UnknownId(s.into()))
}

fn load_lattice(target: &str) -> Result<Lattice, Error> {
    if target.ends_with(".json") || target.contains('/') {
        let text = std::fs::read_to_string(target)
            .map_err(|e| Error::InvalidInput(format!("cannot read {target}: {e}")))?;
        let js: LatticeJson = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("bad lattice JSON: {e}")))?;
        return js.resolve();
    }
    NamedLatticeId::parse(target)?.build()
}

fn render_classify_text(outcome: &covers::ClassifyOutcome) -> String {
    match outcome {
        covers::ClassifyOutcome::Inadmissible(i) => {
            format!("inadmissible ({:?}): {}\n", i.reason, i.detail)
        }
        covers::ClassifyOutcome::Admissible(r) => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "case {:?}: n={}, k={}, g(C)={}, h={}, L^2={}",
                r.case, r.n, r.k, r.g_c, r.h, r.l_squared
            );
            let fmt_opt = |x: Option<i64>| match x {
                Some(v) => v.to_string(),
                None => "-".into(),
            };
            let _ = writeln!(
                s,
                "X:    chi={}, p_g={}, q={}, c1^2={}, c2={}",
                r.x.chi,
                fmt_opt(r.x.pg),
                fmt_opt(r.x.q),
                r.x.c1sq,
                r.x.c2
            );
            let _ = writeln!(
                s,
                "Xmin: chi={}, c1^2={}, c2={}",
                r.x_min.chi, r.x_min.c1sq, r.x_min.c2
            );
            let _ = writeln!(s, "Kodaira dimension: {}", r.kodaira);
            if let Some(g_a) = r.base_genus {
                let _ = writeln!(s, "base curve genus: {g_a}");
            }
            for note in &r.notes {
                let _ = writeln!(s, "note: {note}");
            }
            s
        }
    }
}

fn render_classify_csv(outcome: &covers::ClassifyOutcome) -> String {
    let mut s =
        String::from("case,n,k,h,gC,L2,chi,pg,q,c1sq,c2,min_chi,min_c1sq,min_c2,kodaira,gA\n");
    match outcome {
        covers::ClassifyOutcome::Inadmissible(i) => {
            let _ = writeln!(s, "Inadmissible,,,,,,,,,,,,,,{:?},", i.reason);
        }
        covers::ClassifyOutcome::Admissible(r) => {
            let opt = |x: Option<i64>| x.map(|v| v.to_string()).unwrap_or_default();
            let _ = writeln!(
                s,
                "{:?},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.case,
                r.n,
                r.k,
                r.h,
                r.g_c,
                r.l_squared,
                r.x.chi,
                opt(r.x.pg),
                opt(r.x.q),
                r.x.c1sq,
                r.x.c2,
                r.x_min.chi,
                r.x_min.c1sq,
                r.x_min.c2,
                r.kodaira,
                opt(r.base_genus),
            );
        }
    }
    s
}

fn render_lattice_info(l: &Lattice, format: Format) -> Result<String, Error> {
    let (p, m, z) = l.signature();
    let degenerate = l.is_degenerate();
    let dg = if degenerate {
        None
    } else {
        Some(l.discriminant_group()?)
    };
    let two_elem = if degenerate {
        None
    } else {
        l.two_elementary_invariants()?
    };
    let embedding = if !degenerate && l.is_even() && p == 1 && z == 0 {
        Some(k3lattices::embedding_status(l)?)
    } else {
        None
    };
    match format {
        Format::Json => {
            let value = k3lattices::lattice_report(l)?;
            Ok(serde_json::to_string_pretty(&value).expect("serializable"))
        }
        Format::Text => {
            let mut s = String::new();
            let name = if l.name.is_empty() { "(unnamed)" } else { &l.name };
            let _ = writeln!(s, "lattice {name}");
            let _ = writeln!(s, "  rank: {}", l.rank());
            let _ = writeln!(s, "  even: {}", l.is_even());
            let _ = writeln!(s, "  signature: ({p}, {m}, {z})");
            if degenerate {
                let _ = writeln!(s, "  degenerate: determinant is zero");
                return Ok(s);
            }
            let _ = writeln!(s, "  det: {}", l.det_raw());
            if let Some(d) = &dg {
                let divisors: Vec<String> =
                    d.elementary_divisors().iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "  discriminant group: [{}]", divisors.join(", "));
                let qv: Vec<String> = d.qvalues().iter().map(|q| q.to_string()).collect();
                let _ = writeln!(s, "  q-values (mod 2Z): [{}]", qv.join(", "));
                let _ = writeln!(s, "  length: {}", d.elementary_divisors().len());
            }
            if let Some(t) = two_elem {
                let _ = writeln!(
                    s,
                    "  2-elementary: (r, a, delta) = ({}, {}, {})",
                    t.rank, t.length, t.delta
                );
            }
            if let Some(e) = embedding {
                let _ = writeln!(s, "  K3 embedding: {:?} ({})", e.verdict, e.reason);
            }
            Ok(s)
        }
        Format::Csv => {
            let divisors = dg
                .as_ref()
                .map(|d| {
                    d.elementary_divisors()
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .unwrap_or_default();
            let mut s =
                String::from("name,rank,even,sig_plus,sig_minus,sig_zero,det,divisors,length\n");
            let _ = writeln!(
                s,
                "{},{},{},{p},{m},{z},{},{divisors},{}",
                l.name,
                l.rank(),
                l.is_even(),
                if degenerate {
                    "0".into()
                } else {
                    l.det_raw().to_string()
                },
                dg.as_ref().map(|d| d.elementary_divisors().len()).unwrap_or(0),
            );
            Ok(s)
        }
    }
}

fn render_code(id: EvenSetCodeId, format: Format) -> Result<String, Error> {
    let code = evensets::code_of(id);
    let verdict = evensets::validate_even_code(&code)?;
    match format {
        Format::Json => {
            let value = serde_json::json!({
                "id": id.name(),
                "code": CodeJson::from_code(&code),
                "valid": verdict.valid,
                "violations": verdict.violations,
                "codewords": code.codewords()?.len(),
            });
            Ok(serde_json::to_string_pretty(&value).expect("serializable"))
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{} on {} positions, dimension {}",
                id.name(),
                code.len(),
                code.dimension()
            );
            for g in code.generators() {
                let positions: Vec<String> = (0..code.len())
                    .filter(|i| g >> i & 1 == 1)
                    .map(|i| (i + 1).to_string())
                    .collect();
                let _ = writeln!(s, "  generator: {{{}}}", positions.join(","));
            }
            let _ = writeln!(s, "  codewords: {}", code.codewords()?.len());
            let _ = writeln!(s, "  valid even-set code: {}", verdict.valid);
            Ok(s)
        }
        Format::Csv => {
            let mut s = String::from("id,positions,dimension,codewords,valid\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                id.name(),
                code.len(),
                code.dimension(),
                code.codewords()?.len(),
                verdict.valid
            );
            Ok(s)
        }
    }
}
