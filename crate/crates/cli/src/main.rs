use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use dighom_core::io::{image_to_json, load_image, load_map, to_pretty};
use dighom_core::maps::{homotopy_classes, DEFAULT_MAP_CAP};
use dighom_core::singular::DEFAULT_BASIS_CAP;
use dighom_core::theory::{homology, induced, render_groups};
use dighom_core::verify::{
    check_chainmap_theorem, check_dimension_zero, check_h1_surjection, cross_theory_report, probe_iso_conjecture,
    report_json, EnumerationOptions,
};
use dighom_core::{DigitalImage, DigitalMap, Error, IntMatrix, Relation, Theory};
use serde_json::{json, Value};

const EXIT_VALIDATION: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_COUNTEREXAMPLE: u8 = 4;

#[derive(Parser)]
#[command(name = "dighom", version, about = "Homotopy and homology invariants of digital images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Emit a JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Homology groups H_0..H_qmax of an image.
    Homology {
        #[arg(long, default_value = "simplicial")]
        theory: Theory,
        #[arg(long)]
        qmax: Option<usize>,
        /// Limit on generators enumerated by the brute-force theories.
        #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
        cap: usize,
        #[command(flatten)]
        out: Output,
        /// Image literal or JSON file.
        image: String,
    },
    /// Partition all continuous maps X -> Y into homotopy classes.
    Classify {
        #[arg(long, default_value = "ordinary")]
        relation: Relation,
        /// Limit on the number of continuous maps enumerated.
        #[arg(long, default_value_t = DEFAULT_MAP_CAP)]
        cap: usize,
        #[command(flatten)]
        out: Output,
        domain: String,
        codomain: String,
    },
    /// Homomorphism induced on H_q by a map.
    Induced {
        #[arg(long, default_value = "simplicial")]
        theory: Theory,
        /// Degree.
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
        cap: usize,
        #[command(flatten)]
        out: Output,
        /// A map JSON file, or DOMAIN CODOMAIN ASSIGNMENT with the assignment
        /// as comma-separated codomain indices.
        #[arg(num_args = 1..=3, required = true)]
        map: Vec<String>,
    },
    /// Check the chain-map property over every normalized map I^q -> [-q,q]^q.
    VerifyChainmap {
        #[arg(long)]
        q: usize,
        /// Required for q = 4.
        #[arg(long)]
        long_running: bool,
        /// Append finished shards here and skip them on a rerun.
        #[arg(long)]
        journal: Option<PathBuf>,
        /// Also count maps without the first-value normalization.
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Homology of an image in every applicable theory, side by side.
    Compare {
        /// Defaults to max(2, ambient dimension).
        #[arg(long)]
        qmax: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
        cap: usize,
        #[command(flatten)]
        out: Output,
        image: String,
    },
    /// Compare cubical homology over maps with c1 homology; exit 4 on a mismatch.
    ProbeConjecture {
        #[arg(long, default_value_t = 1)]
        qmax: usize,
        #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
        cap: usize,
        #[command(flatten)]
        out: Output,
        image: String,
    },
    /// Write the named example images as JSON fixtures.
    Examples {
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Compare against the files in --out instead of writing them.
        #[arg(long)]
        check: bool,
    },
}

/// Literal and file name of every shipped fixture.
const EXAMPLES: &[&str] = &[
    "cycle:4",
    "cycle:5",
    "cycle:6",
    "cycle:7",
    "cycle:8",
    "cycle:9",
    "cycle:10",
    "embed-cycle:4",
    "embed-cycle:6",
    "embed-cycle:8",
    "embed-cycle:10",
    "I3",
    "MSS6",
    "MSS6-prime",
];

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::NotAChainComplex | Error::ChainMapViolation { .. } => 1,
            _ => EXIT_VALIDATION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn emit(json: bool, text: String, report: Value) {
    if json {
        print!("{}", to_pretty(&report));
    } else {
        print!("{text}");
    }
}

fn matrix_json(m: &IntMatrix) -> Value {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| match i64::try_from(x) {
                    Ok(v) => json!(v),
                    Err(_) => json!(x.to_string()),
                })
                .collect::<Vec<Value>>()
        })
        .collect()
}

fn image_summary(input: &str, x: &DigitalImage) -> Value {
    json!({ "input": input, "points": x.len(), "dim": x.dim(), "edges": x.edge_count() })
}

fn parse_map(args: &[String]) -> Result<DigitalMap, Error> {
    match args {
        [path] => load_map(path),
        [domain, codomain, assignment] => {
            let domain = Arc::new(load_image(domain)?);
            let codomain = if codomain == &args[0] {
                domain.clone()
            } else {
                Arc::new(load_image(codomain)?)
            };
            let values = assignment
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("bad assignment entry {t:?}")))
                })
                .collect::<Result<Vec<usize>, _>>()?;
            DigitalMap::new(domain, codomain, values)
        }
        _ => Err(Error::InvalidArgument("expected MAP.json or DOMAIN CODOMAIN ASSIGNMENT".into())),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Homology {
            theory,
            qmax,
            cap,
            out,
            image,
        } => {
            let x = load_image(&image)?;
            let groups = homology(theory, &x, qmax, cap)?;
            let text = render_groups(&groups);
            let report = report_json(
                "homology",
                json!({ "theory": theory, "image": image_summary(&image, &x), "groups": groups, "text": text }),
            );
            emit(out.json, format!("{text}\n"), report);
            Ok(0)
        }
        Command::Classify {
            relation,
            cap,
            out,
            domain,
            codomain,
        } => {
            let x = Arc::new(load_image(&domain)?);
            let y = if codomain == domain {
                x.clone()
            } else {
                Arc::new(load_image(&codomain)?)
            };
            let classes = homotopy_classes(&x, &y, relation, cap)?;
            let is_identity = |f: &DigitalMap| x == y && f.assignment().iter().enumerate().all(|(i, &j)| i == j);
            let mut text = format!(
                "{} continuous maps, {} {} classes\n",
                classes.maps.len(),
                classes.len(),
                relation
            );
            let mut rows = Vec::new();
            for (c, members) in classes.classes.iter().enumerate() {
                let maps: Vec<&DigitalMap> = members.iter().map(|&i| &classes.maps[i]).collect();
                let sizes: Vec<usize> = maps.iter().map(|f| f.image_size()).collect();
                let has_id = maps.iter().any(|f| is_identity(f));
                text.push_str(&format!(
                    "class {c}: {} maps, image sizes {}..{}{}\n",
                    maps.len(),
                    sizes.iter().min().unwrap_or(&0),
                    sizes.iter().max().unwrap_or(&0),
                    if has_id { ", contains id" } else { "" }
                ));
                for f in &maps {
                    text.push_str(&format!("  {:?}\n", f.assignment()));
                }
                rows.push(json!({
                    "class": c,
                    "contains_identity": has_id,
                    "members": maps.iter().map(|f| f.assignment()).collect::<Vec<_>>(),
                }));
            }
            let report = report_json(
                "classify",
                json!({
                    "relation": relation,
                    "domain": image_summary(&domain, &x),
                    "codomain": image_summary(&codomain, &y),
                    "map_count": classes.maps.len(),
                    "classes": rows,
                }),
            );
            emit(out.json, text, report);
            Ok(0)
        }
        Command::Induced {
            theory,
            q,
            cap,
            out,
            map,
        } => {
            let f = parse_map(&map)?;
            if !f.is_continuous() {
                return Err(Error::Precondition("the map is not continuous".into()).into());
            }
            let m = induced(theory, &f, q, cap)?;
            let text = format!("H{q}: {} -> {}\n{}\n", m.source, m.target, m.homology);
            let report = report_json(
                "induced",
                json!({
                    "theory": theory,
                    "q": q,
                    "source": m.source,
                    "target": m.target,
                    "matrix": matrix_json(&m.homology),
                }),
            );
            emit(out.json, text, report);
            Ok(0)
        }
        Command::VerifyChainmap {
            q,
            long_running,
            journal,
            raw,
            out,
        } => {
            let opts = EnumerationOptions {
                threads: None,
                journal,
                long_running,
                count_raw: raw,
            };
            let r = check_chainmap_theorem(q, &opts)?;
            eprintln!("wall time {:.3}s", r.wall_time.as_secs_f64());
            let text = if out.json {
                String::new()
            } else if raw || !r.violations.is_empty() {
                r.to_text()
            } else {
                format!("{}\n", r.summary())
            };
            emit(out.json, text, r.to_json());
            Ok(if r.confirmed() { 0 } else { EXIT_COUNTEREXAMPLE })
        }
        Command::Compare { qmax, cap, out, image } => {
            let x = load_image(&image)?;
            let qmax = qmax.unwrap_or(x.dim().max(2));
            let r = cross_theory_report(&x, qmax, cap);
            let mut report = r.to_json();
            let mut checks = Vec::new();
            checks.push(check_dimension_zero(&x, cap)?);
            if x.is_c1() && x.dim() > 0 {
                checks.push(check_h1_surjection(&x)?);
            }
            let mut text = r.to_text();
            for c in &checks {
                text.push_str(&format!(
                    "{}: {} ({})\n",
                    c.name,
                    if c.passed { "holds" } else { "FAILS" },
                    c.detail
                ));
            }
            report["checks"] = serde_json::to_value(&checks).expect("serializable");
            report["image"] = image_summary(&image, &x);
            emit(out.json, text, report);
            Ok(if checks.iter().all(|c| c.passed) { 0 } else { EXIT_COUNTEREXAMPLE })
        }
        Command::ProbeConjecture { qmax, cap, out, image } => {
            let x = load_image(&image)?;
            let p = probe_iso_conjecture(&x, qmax, cap)?;
            emit(out.json, p.to_text(), p.to_json());
            Ok(if p.is_counterexample() { EXIT_COUNTEREXAMPLE } else { 0 })
        }
        Command::Examples { out, check } => examples(&out, check),
    }
}

fn fixture_name(literal: &str) -> String {
    format!("{}.json", literal.replace(':', "-"))
}

fn examples(dir: &Path, check: bool) -> Outcome {
    let io_err = |e: std::io::Error| Failure::from(Error::from(e));
    if !check {
        std::fs::create_dir_all(dir).map_err(io_err)?;
    }
    let mut stale = Vec::new();
    for lit in EXAMPLES {
        let x = load_image(lit)?;
        let body = to_pretty(&image_to_json(&x));
        let path = dir.join(fixture_name(lit));
        if check {
            if std::fs::read_to_string(&path).ok().as_deref() != Some(body.as_str()) {
                stale.push(path.display().to_string());
            }
        } else {
            std::fs::write(&path, body).map_err(io_err)?;
            println!("{}", path.display());
        }
    }
    if stale.is_empty() {
        if check {
            println!("{} fixtures up to date", EXAMPLES.len());
        }
        Ok(0)
    } else {
        for s in &stale {
            println!("differs: {s}");
        }
        Ok(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
