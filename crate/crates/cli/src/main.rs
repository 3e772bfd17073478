//! `qsm`: quasismoothness checks, Delsarte decompositions and good-pair
//! duality from the command line.
//!
//! Exit codes: 0 for a positive outcome, 1 for a negative one (not
//! quasismooth, not decomposable, not a good pair), 2 for input or internal
//! errors.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use qsm_core::delsarte::{classify_atomic, delsarte_system, delsarte_weights, transpose_dual, wps_check};
use qsm_core::duality::{dual_pair, good_pair_check, induced_system};
use qsm_core::format::{format_monomial, parse_monomials};
use qsm_core::qscheck::{is_quasismooth_with, necessary_screen, sufficient_screen, CheckOptions, StratumOutcome};
use qsm_core::{Error, ExponentMatrix, Method, MonomialSystem, Polytope, QSVerdict, ToricAmbient};

use report::{OutputFormat, Report};

#[derive(Parser)]
#[command(name = "qsm", version, about = "Quasismoothness certificates for monomial linear systems on toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    output: OutputFormat,
}

#[derive(Args)]
struct SystemArgs {
    /// Ambient file with `[rays]`/`[cones]` or `[grading]`/`[irrelevant]`.
    #[arg(long)]
    ambient: PathBuf,
    /// Monomial file, one monomial per line.
    #[arg(long)]
    monomials: PathBuf,
}

#[derive(Args)]
struct PairArgs {
    /// Polytope file for the inner polytope, one vertex per line.
    #[arg(long)]
    p1: PathBuf,
    /// Polytope file for the outer polytope.
    #[arg(long)]
    p2: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Decide quasismoothness and report the certificate.
    Check {
        #[command(flatten)]
        system: SystemArgs,
        /// rank, polytope or both.
        #[arg(long, default_value = "both", value_parser = parse_method)]
        method: Method,
        /// Report the certificate of every base stratum.
        #[arg(long)]
        witness: bool,
    },
    /// List the base locus strata with their screening data.
    Strata {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Decompose a square system into atomic types and run the subset test.
    Delsarte {
        /// Weighted projective ambient; weights are computed when omitted.
        #[arg(long)]
        ambient: Option<PathBuf>,
        #[arg(long)]
        monomials: PathBuf,
    },
    /// Transpose a square system and compute its weights and degree.
    Transpose {
        #[arg(long)]
        ambient: Option<PathBuf>,
        #[arg(long)]
        monomials: PathBuf,
        /// Write `transpose.ambient` and `transpose.monomials` here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Check whether two polytopes form a good pair.
    Goodpair {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Compute the dual pair of a good pair.
    Dualize {
        #[command(flatten)]
        pair: PairArgs,
        /// Write `dual_p1.polytope` and `dual_p2.polytope` here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Build the toric ambient and monomial system of a pair.
    Induce {
        #[command(flatten)]
        pair: PairArgs,
        /// Write `induced.ambient` and `induced.monomials` here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Parse an ambient and optionally a monomial file, checking homogeneity.
    Validate {
        #[arg(long)]
        ambient: PathBuf,
        #[arg(long)]
        monomials: Option<PathBuf>,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("QSM_THREADS must be a nonnegative integer, got {0:?}")]
    Threads(String),
}

type Result<T, E = CliError> = std::result::Result<T, E>;

/// Whether the command reached its positive outcome.
struct Outcome {
    report: Report,
    positive: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(dir: &Path, name: &str, text: &str) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_owned(),
        source,
    })?;
    let path = dir.join(name);
    fs::write(&path, text).map_err(|source| CliError::Io { path, source })
}

fn with_path<T>(path: &Path, r: qsm_core::Result<T>) -> Result<T> {
    r.map_err(|source| CliError::Input {
        path: path.to_owned(),
        source,
    })
}

fn load_ambient(path: &Path) -> Result<Arc<ToricAmbient>> {
    Ok(Arc::new(with_path(path, ToricAmbient::from_text(&read(path)?))?))
}

fn load_system(args: &SystemArgs) -> Result<MonomialSystem> {
    let amb = load_ambient(&args.ambient)?;
    with_path(&args.monomials, MonomialSystem::from_text(amb, &read(&args.monomials)?))
}

fn load_polytope(path: &Path) -> Result<Polytope> {
    with_path(path, Polytope::from_text(&read(path)?))
}

fn threads() -> Result<Option<usize>> {
    match std::env::var("QSM_THREADS") {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| CliError::Threads(v)),
        Err(_) => Ok(None),
    }
}

/// A square system given alone or on a weighted projective ambient.
fn load_square(ambient: Option<&Path>, monomials: &Path) -> Result<MonomialSystem> {
    let text = read(monomials)?;
    if let Some(path) = ambient {
        let amb = load_ambient(path)?;
        return with_path(monomials, MonomialSystem::from_text(amb, &text));
    }
    let r = text
        .lines()
        .filter(|l| !l.split('#').next().unwrap_or("").trim().is_empty())
        .count();
    let names: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
    let rows = with_path(monomials, parse_monomials(&text, &names))?;
    let a = with_path(monomials, ExponentMatrix::new(r, rows))?;
    let (w, _) = with_path(monomials, delsarte_weights(&a))?;
    with_path(monomials, delsarte_system(&a, &w))
}

fn weights_of(sys: &MonomialSystem) -> Result<Vec<i64>> {
    if !sys.ambient().is_fake_wps() {
        return Err(Error::NotFakeWps.into());
    }
    let g = sys.ambient().grading().free_part();
    if g.rows() != 1 {
        return Err(Error::Unsupported("weights need a single grading row".into()).into());
    }
    g.row(0)
        .iter()
        .map(|x| i64::try_from(x).map_err(|_| Error::Unsupported("weight out of range".into()).into()))
        .collect()
}

fn verdict_report(report: &mut Report, sys: &MonomialSystem, v: &QSVerdict, witness: bool) {
    let amb = sys.ambient();
    report
        .section("verdict")
        .kv("status", v.status)
        .kv("method", v.method)
        .kv("variables", sys.num_vars())
        .kv("monomials", sys.num_monomials())
        .kv("degree", sys.degree())
        .kv("base_strata", v.strata.len());
    if let Some(row) = v.generator_row {
        report.kv("generator", sys.monomial_name(row));
    }
    if let Some((c, reason)) = v.failure() {
        report.kv("failing_stratum", amb.display_set(c)).kv("reason", reason);
    }
    if !witness {
        return;
    }
    for s in &v.strata {
        report
            .section("stratum")
            .kv("set", amb.display_set(s.stratum))
            .kv("k", s.k);
        match &s.outcome {
            StratumOutcome::Witness(w) => {
                report
                    .kv("outcome", "witness")
                    .kv("gamma", amb.display_set(w.gamma))
                    .kv("rank_small", w.rank_small)
                    .kv("rank_big", w.rank_big)
                    .kv("span_dim", w.span_dim);
            }
            StratumOutcome::Failed(reason) => {
                report.kv("outcome", "failed").kv("reason", reason);
            }
        }
    }
}

fn check(system: &SystemArgs, method: Method, witness: bool) -> Result<Outcome> {
    let sys = load_system(system)?;
    let opts = CheckOptions {
        method,
        threads: threads()?,
        ..CheckOptions::default()
    };
    let v = is_quasismooth_with(&sys, &opts)?;
    let mut report = Report::default();
    verdict_report(&mut report, &sys, &v, witness);
    Ok(Outcome {
        report,
        positive: v.is_quasismooth(),
    })
}

fn strata(system: &SystemArgs) -> Result<Outcome> {
    let sys = load_system(system)?;
    let amb = sys.ambient();
    let mut report = Report::default();
    let comps = sys.base_locus_components();
    report
        .section("base_locus")
        .kv("strata", sys.base_locus_strata().len())
        .kv(
            "components",
            comps.iter().map(|c| amb.display_set(*c)).collect::<Vec<_>>().join(" "),
        );
    for st in sys.base_locus_strata() {
        let necessary = match necessary_screen(&sys, st.set) {
            Ok(b) => b.to_string(),
            Err(Error::GeneratorInBasis(_)) => "n/a".into(),
            Err(e) => return Err(e.into()),
        };
        report
            .section("stratum")
            .kv("set", amb.display_set(st.set))
            .kv("k", st.k())
            .kv("nonempty_faces", amb.display_set(st.nonempty_faces()))
            .kv("image_dim", amb.stratum_image_dim(st.set)?)
            .kv(
                "irrelevant_dim",
                amb.irrelevant_dim_in_stratum(st.set)
                    .map_or_else(|| "none".to_string(), |d| d.to_string()),
            )
            .kv("sufficient_screen", sufficient_screen(&sys, st.set)?)
            .kv("necessary_screen", necessary);
    }
    Ok(Outcome {
        report,
        positive: true,
    })
}

fn delsarte(ambient: Option<&Path>, monomials: &Path) -> Result<Outcome> {
    let sys = load_square(ambient, monomials)?;
    let w = weights_of(&sys)?;
    let dec = classify_atomic(sys.exponents(), &w)?;
    let v = wps_check(&sys)?;
    let names = sys.ambient().names();
    let mut report = Report::default();
    report
        .section("delsarte")
        .kv("weights", join(&w))
        .kv("degree", sys.degree())
        .kv("decomposable", dec.is_some());
    if let Some(d) = &dec {
        report.kv("decomposition", d.display_with(names));
    }
    report.kv("status", v.status);
    if let Some((c, reason)) = v.failure() {
        report.kv("failing_subset", sys.ambient().display_set(c)).kv("reason", reason);
    }
    Ok(Outcome {
        report,
        positive: dec.is_some(),
    })
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn transpose(ambient: Option<&Path>, monomials: &Path, out_dir: Option<&Path>) -> Result<Outcome> {
    let sys = load_square(ambient, monomials)?;
    let w = weights_of(&sys)?;
    let d: i64 = sys.exponents().row(0).iter().zip(&w).map(|(a, b)| a * b).sum();
    let t = transpose_dual(sys.exponents(), &w, d)?;
    let dual = delsarte_system(&t.matrix, &t.weights)?;
    let names = dual.ambient().names();
    let mut report = Report::default();
    report
        .section("transpose")
        .kv("weights", join(&t.weights))
        .kv("degree", t.degree);
    for (i, row) in t.matrix.rows().iter().enumerate() {
        report.kv(&format!("monomial.{}", i + 1), format_monomial(row, names));
    }
    if let Some(dir) = out_dir {
        write(dir, "transpose.ambient", &dual.ambient().to_text())?;
        write(dir, "transpose.monomials", &dual.to_text())?;
    }
    Ok(Outcome {
        report,
        positive: true,
    })
}

fn goodpair(pair: &PairArgs) -> Result<Outcome> {
    let p1 = load_polytope(&pair.p1)?;
    let p2 = load_polytope(&pair.p2)?;
    let gp = good_pair_check(&p1, &p2)?;
    let mut report = Report::default();
    report
        .section("good_pair")
        .kv("good", gp.is_good())
        .kv("containment", gp.containment)
        .kv("p1_canonical", gp.p1_canonical)
        .kv("p2star_canonical", gp.p2star_canonical)
        .kv("p2star_non_integral", gp.non_integral);
    Ok(Outcome {
        report,
        positive: gp.is_good(),
    })
}

fn vertices_text(p: &Polytope) -> String {
    p.to_text().lines().collect::<Vec<_>>().join("; ")
}

fn dualize(pair: &PairArgs, out_dir: Option<&Path>) -> Result<Outcome> {
    let p1 = load_polytope(&pair.p1)?;
    let p2 = load_polytope(&pair.p2)?;
    let good = good_pair_check(&p1, &p2)?.is_good();
    let mut report = Report::default();
    report.section("dual_pair").kv("input_good", good);
    if !good {
        return Ok(Outcome {
            report,
            positive: false,
        });
    }
    let (q1, q2) = dual_pair(&p1, &p2)?;
    report
        .kv("p1_vertices", vertices_text(&q1))
        .kv("p2_vertices", vertices_text(&q2))
        .kv("output_good", good_pair_check(&q1, &q2)?.is_good());
    if let Some(dir) = out_dir {
        write(dir, "dual_p1.polytope", &q1.to_text())?;
        write(dir, "dual_p2.polytope", &q2.to_text())?;
    }
    Ok(Outcome {
        report,
        positive: true,
    })
}

fn induce(pair: &PairArgs, out_dir: Option<&Path>) -> Result<Outcome> {
    let p1 = load_polytope(&pair.p1)?;
    let p2 = load_polytope(&pair.p2)?;
    let ind = induced_system(&p1, &p2)?;
    let mut report = Report::default();
    let amb = &ind.ambient;
    let fan = amb.fan().expect("induced ambients carry a fan");
    report
        .section("ambient")
        .kv("variables", amb.num_vars())
        .kv("dimension", amb.dim())
        .kv(
            "rays",
            fan.rays().iter().map(|r| join(r)).collect::<Vec<_>>().join("; "),
        )
        .kv(
            "irrelevant",
            amb.irrelevant_components()
                .iter()
                .map(|c| amb.display_set(*c))
                .collect::<Vec<_>>()
                .join(" "),
        );
    report
        .section("system")
        .kv("monomials", ind.system.num_monomials())
        .kv("degree", ind.system.degree());
    for i in 0..ind.system.num_monomials() {
        report.kv(&format!("monomial.{}", i + 1), ind.system.monomial_name(i));
    }
    if let Some(dir) = out_dir {
        write(dir, "induced.ambient", &amb.to_text())?;
        write(dir, "induced.monomials", &ind.system.to_text())?;
    }
    Ok(Outcome {
        report,
        positive: true,
    })
}

fn validate(ambient: &Path, monomials: Option<&Path>) -> Result<Outcome> {
    let amb = load_ambient(ambient)?;
    let mut report = Report::default();
    report
        .section("ambient")
        .kv("variables", amb.num_vars())
        .kv("dimension", amb.dim())
        .kv("presentation", if amb.fan().is_some() { "fan" } else { "quotient" })
        .kv("irrelevant_components", amb.irrelevant_components().len());
    if let Some(path) = monomials {
        let sys = with_path(path, MonomialSystem::from_text(amb.clone(), &read(path)?))?;
        report
            .section("monomials")
            .kv("count", sys.num_monomials())
            .kv("degree", sys.degree())
            .kv("homogeneous", true);
    }
    Ok(Outcome {
        report,
        positive: true,
    })
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check {
            system,
            method,
            witness,
        } => check(system, *method, *witness),
        Command::Strata { system } => strata(system),
        Command::Delsarte { ambient, monomials } => delsarte(ambient.as_deref(), monomials),
        Command::Transpose {
            ambient,
            monomials,
            out_dir,
        } => transpose(ambient.as_deref(), monomials, out_dir.as_deref()),
        Command::Goodpair { pair } => goodpair(pair),
        Command::Dualize { pair, out_dir } => dualize(pair, out_dir.as_deref()),
        Command::Induce { pair, out_dir } => induce(pair, out_dir.as_deref()),
        Command::Validate { ambient, monomials } => validate(ambient, monomials.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.report.render(cli.output));
            ExitCode::from(if outcome.positive { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
