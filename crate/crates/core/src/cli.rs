//! Command-line front end. Every command writes its artifacts under the
//! output directory and a short summary on stdout.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::game::{replay_stages, standard_stages, MoveKind};
use crate::graph::CurveGraph;
use crate::lattice::DivisorClass;
use crate::oracle::{monomials_of_multidegree, CoxOracle, PointConfiguration};
use crate::scalar::Field;
use crate::validity::{
    certify_with, check_certificate_json, enumerate_nef_classes, sweep_outcomes, CertifyOptions,
    DivisorContext, DivisorOracle,
};
use crate::{PrimeField, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "delpezzo", version, about = "Cox rings of Del Pezzo surfaces: certificates and interpolation checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Number of blown-up points.
    #[arg(long, global = true, default_value_t = 6)]
    pub rank: usize,
    /// Largest anticanonical degree to visit.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_degree: i64,
    /// Seed for the random points.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// JSON file `[[x,y,z], ...]` with integer points.
    #[arg(long, global = true)]
    pub points: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Arithmetic::Exact)]
    pub arithmetic: Arithmetic,
    /// Allow moves with no side conditions beyond disjoint anchors.
    #[arg(long, global = true)]
    pub allow_generic_moves: bool,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    Exact,
    Prime,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleCheck {
    #[value(name = "27sections")]
    TwentySevenSections,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exceptional curves, the curve graph and its structural facts.
    Curves,
    /// Certificate for one divisor.
    Certify {
        /// Divisor as a JSON array `[d, a_1, ..., a_r]`.
        #[arg(long)]
        divisor: String,
    },
    /// Certificates for every nef class up to the maximal degree.
    Sweep,
    /// Interpolation checks: one strand, or the standard battery.
    Oracle {
        #[arg(long)]
        divisor: Option<String>,
        #[arg(long, value_enum)]
        check: Option<OracleCheck>,
    },
    /// Re-checks certificates from a file, or plays the staged sequence.
    Replay {
        /// Certificate JSON or JSON-lines file.
        file: Option<PathBuf>,
        /// Divisor for the staged sequence (default `-K`, or `-2K` at rank 7).
        #[arg(long)]
        divisor: Option<String>,
    },
}

/// Validated configuration shared by all commands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub rank: usize,
    pub max_degree: i64,
    pub points_file: Option<PathBuf>,
    pub seed: u64,
    pub arithmetic: Arithmetic,
    pub allow_generic_moves: bool,
    pub output_dir: PathBuf,
}

impl RunConfig {
    pub fn from_args(a: &CommonArgs) -> Result<Self, Failure> {
        if !(2..=7).contains(&a.rank) {
            return Err(Failure::Usage(format!("rank {} is outside 2..=7", a.rank)));
        }
        Ok(RunConfig {
            rank: a.rank,
            max_degree: a.max_degree,
            points_file: a.points.clone(),
            seed: a.seed,
            arithmetic: a.arithmetic,
            allow_generic_moves: a.allow_generic_moves,
            output_dir: a.out.clone(),
        })
    }

    fn options(&self) -> CertifyOptions {
        CertifyOptions {
            allow_generic: self.allow_generic_moves,
        }
    }

    fn require_certification_degree(&self) -> Result<(), Failure> {
        if self.max_degree < 3 {
            return Err(Failure::Usage(format!(
                "--max-degree {} is below 3",
                self.max_degree
            )));
        }
        Ok(())
    }

    fn point_configuration(&self) -> Result<PointConfiguration, Failure> {
        let pts = match &self.points_file {
            None => PointConfiguration::standard(self.rank, self.seed)?,
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                PointConfiguration::from_json(&text)?
            }
        };
        if pts.rank() != self.rank {
            return Err(Failure::Usage(format!(
                "{} points given for rank {}",
                pts.rank(),
                self.rank
            )));
        }
        Ok(pts)
    }

    fn write(&self, name: &str, contents: &str) -> Result<PathBuf, Failure> {
        fs::create_dir_all(&self.output_dir).map_err(io_failure(&self.output_dir))?;
        let path = self.output_dir.join(name);
        fs::write(&path, contents).map_err(io_failure(&path))?;
        Ok(path)
    }

    fn write_json(&self, name: &str, v: &Value) -> Result<PathBuf, Failure> {
        let mut text = serde_json::to_string_pretty(v).expect("JSON values serialize");
        text.push('\n');
        self.write(name, &text)
    }
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Verification(_) => EXIT_VERIFICATION,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RankOutOfRange(_)
            | Error::RankMismatch { .. }
            | Error::UnknownLabel(_)
            | Error::GeneralPosition(_)
            | Error::MalformedPoints(_)
            | Error::MalformedCertificate(_)
            | Error::Contract(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

fn io_failure(path: &Path) -> impl Fn(std::io::Error) -> Failure + '_ {
    move |e| Failure::Usage(format!("{}: {e}", path.display()))
}

fn parse_divisor(text: &str, rank: usize) -> Result<DivisorClass, Failure> {
    let d: DivisorClass = text
        .parse()
        .map_err(|e: Error| Failure::Usage(format!("bad divisor {text}: {e}")))?;
    if d.rank() != rank {
        return Err(Failure::Usage(format!(
            "divisor {text} has rank {}, expected {rank}",
            d.rank()
        )));
    }
    Ok(d)
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(stdout, "{}", e.render());
            return code;
        }
    };
    let started = Instant::now();
    let result = RunConfig::from_args(&cli.common).and_then(|cfg| dispatch(&cli.command, &cfg, stdout));
    match result {
        Ok(true) => {
            let _ = writeln!(stdout, "ok ({:.2?})", started.elapsed());
            EXIT_OK
        }
        Ok(false) => {
            let _ = writeln!(stdout, "FAILED ({:.2?})", started.elapsed());
            EXIT_VERIFICATION
        }
        Err(f) => {
            let (kind, msg) = match &f {
                Failure::Usage(m) => ("usage error", m),
                Failure::Verification(m) => ("verification failure", m),
            };
            let _ = writeln!(stdout, "{kind}: {msg}");
            f.exit_code()
        }
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, Failure> {
    match cmd {
        Command::Curves => cmd_curves(cfg, out),
        Command::Certify { divisor } => {
            let d = parse_divisor(divisor, cfg.rank)?;
            cmd_certify(cfg, &d, out)
        }
        Command::Sweep => cmd_sweep(cfg, out),
        Command::Oracle { divisor, check } => {
            let d = divisor
                .as_deref()
                .map(|t| parse_divisor(t, cfg.rank))
                .transpose()?;
            match cfg.arithmetic {
                Arithmetic::Exact => cmd_oracle::<Rational>(cfg, d, *check, out),
                Arithmetic::Prime => cmd_oracle::<PrimeField>(cfg, d, *check, out),
            }
        }
        Command::Replay { file, divisor } => {
            let d = divisor
                .as_deref()
                .map(|t| parse_divisor(t, cfg.rank))
                .transpose()?;
            cmd_replay(cfg, file.as_deref(), d, out)
        }
    }
}

/// Writes `curves.json`, `graph.json` and `edges.txt`.
pub fn cmd_curves(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, Failure> {
    let g = CurveGraph::for_rank(cfg.rank)?;
    let report = g.structural_report();
    let checks: BTreeMap<&str, bool> = report.checks().into_iter().collect();
    cfg.write_json("curves.json", &g.model().curve_table_json())?;
    let mut graph = g.to_json();
    graph["structural"] = serde_json::to_value(&report).expect("report serializes");
    graph["checks"] = json!(checks);
    cfg.write_json("graph.json", &graph)?;
    cfg.write("edges.txt", &g.edge_list())?;
    writeln!(
        out,
        "rank {}: {} curves, {} simple edges, {} double edges, {} triangles",
        cfg.rank,
        g.len(),
        report.simple_edges,
        report.double_edges,
        report.triangles
    )
    .ok();
    for (name, ok) in &checks {
        writeln!(out, "  {name}: {ok}").ok();
    }
    Ok(report.all_hold())
}

/// Writes `certificate.json`, or `stuck.json` when the game stalls.
pub fn cmd_certify(cfg: &RunConfig, d: &DivisorClass, out: &mut dyn Write) -> Result<bool, Failure> {
    let g = CurveGraph::for_rank(cfg.rank)?;
    let degree = d.anticanonical_degree();
    if degree < 3 {
        return Err(Failure::Usage(format!("{d} has anticanonical degree {degree} < 3")));
    }
    match certify_with(d, &g, &cfg.options()) {
        Ok(cert) => {
            cfg.write_json("certificate.json", &cert.to_json(&g))?;
            writeln!(
                out,
                "{d}: degree {degree}, m_D = {}, route {}, {} moves",
                cert.m_d,
                cert.route.name(),
                cert.move_count()
            )
            .ok();
            Ok(cert.route.name() != "NOT_NEF")
        }
        Err(Error::CertificationFailed {
            divisor,
            captured,
            total,
            stuck,
        }) => {
            cfg.write_json(
                "stuck.json",
                &json!({"divisor": divisor, "captured": captured, "total": total, "stuck": stuck}),
            )?;
            writeln!(out, "{divisor}: stuck after {captured} of {total} curves").ok();
            writeln!(out, "  captured: {}", stuck.join(" ")).ok();
            Ok(false)
        }
        Err(e @ Error::UnsupportedRank { .. }) => Err(Failure::Usage(format!(
            "{e}; pass --allow-generic-moves to use unconstrained moves"
        ))),
        Err(e) => Err(e.into()),
    }
}

/// Writes `certificates.jsonl` and `summary.json`.
pub fn cmd_sweep(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, Failure> {
    cfg.require_certification_degree()?;
    let g = CurveGraph::for_rank(cfg.rank)?;
    let outcomes = sweep_outcomes(&g, cfg.max_degree, &cfg.options())?;
    let mut lines = String::new();
    let mut routes: BTreeMap<&str, usize> = ["GAME", "CONTRACTION", "NOT_NEF"]
        .into_iter()
        .map(|r| (r, 0))
        .collect();
    let mut by_degree: BTreeMap<i64, BTreeMap<&str, usize>> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut moves = 0;
    let mut min_n2: Option<i64> = None;
    for (d, res) in &outcomes {
        let slot = by_degree.entry(d.anticanonical_degree()).or_default();
        match res {
            Ok(cert) => {
                lines.push_str(&serde_json::to_string(&cert.to_json(&g)).expect("serializes"));
                lines.push('\n');
                *routes.entry(cert.route.name()).or_default() += 1;
                *slot.entry(cert.route.name()).or_default() += 1;
                moves += cert.move_count();
                if let Some(n2) = cert.min_n_squared() {
                    min_n2 = Some(min_n2.map_or(n2, |m| m.min(n2)));
                }
            }
            Err(e) => {
                *slot.entry("FAILED").or_default() += 1;
                failures.push(json!({"divisor": d, "error": e.to_string()}));
            }
        }
    }
    cfg.write("certificates.jsonl", &lines)?;
    let certified = failures.is_empty() && routes["NOT_NEF"] == 0;
    let summary = json!({
        "rank": cfg.rank,
        "max_degree": cfg.max_degree,
        "allow_generic_moves": cfg.allow_generic_moves,
        "classes": outcomes.len(),
        "routes": routes,
        "by_degree": by_degree.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "moves": moves,
        "min_n_squared": min_n2,
        "failures": failures,
        "all_certified": certified,
    });
    cfg.write_json("summary.json", &summary)?;
    writeln!(
        out,
        "rank {}, degrees 3..={}: {} classes, GAME {}, CONTRACTION {}, NOT_NEF {}, failed {}",
        cfg.rank,
        cfg.max_degree,
        outcomes.len(),
        routes["GAME"],
        routes["CONTRACTION"],
        routes["NOT_NEF"],
        failures.len()
    )
    .ok();
    Ok(certified)
}

/// Writes `oracle.json`.
pub fn cmd_oracle<F: Field>(
    cfg: &RunConfig,
    divisor: Option<DivisorClass>,
    check: Option<OracleCheck>,
    out: &mut dyn Write,
) -> Result<bool, Failure> {
    let points = cfg.point_configuration()?;
    let oracle = CoxOracle::<F>::new(points)?;
    let header = json!({
        "rank": cfg.rank,
        "points": oracle.points().points(),
        "seed": oracle.points().seed(),
        "arithmetic": F::NAME,
    });
    let mut report = header.clone();
    let ok = match (divisor, check) {
        (Some(d), _) => {
            let rep = oracle.koszul_b1(&d)?;
            writeln!(
                out,
                "{d}: dims {:?}, rank d1 {}, rank d2 {}, b1 = {}",
                rep.dims, rep.rank_d1, rep.rank_d2, rep.b1
            )
            .ok();
            report["strand"] = serde_json::to_value(&rep).expect("serializes");
            true
        }
        (None, Some(OracleCheck::TwentySevenSections)) => {
            let rep = oracle.verify_27_sections()?;
            writeln!(
                out,
                "27 sections: {} of {} subsets of rank 3, full rank {}: {}",
                rep.subsets_of_rank_3, rep.subsets_checked, rep.full_rank, rep.holds
            )
            .ok();
            report["twenty_seven_sections"] = serde_json::to_value(&rep).expect("serializes");
            rep.holds
        }
        (None, None) => battery(cfg, &oracle, &mut report, out)?,
    };
    report["passed"] = json!(ok);
    cfg.write_json("oracle.json", &report)?;
    Ok(ok)
}

fn battery<F: Field>(
    cfg: &RunConfig,
    oracle: &CoxOracle<F>,
    report: &mut Value,
    out: &mut dyn Write,
) -> Result<bool, Failure> {
    let model = oracle.model();
    let mut checks: BTreeMap<&str, bool> = BTreeMap::new();

    // degree 2: no relations exist below, so b1 counts monomials beyond h0
    let mut degree_two = Vec::new();
    let mut generators = Vec::new();
    let mut counts_hold = true;
    for d in oracle.degree_two_classes() {
        let rep = oracle.koszul_b1(&d)?;
        let monos = monomials_of_multidegree(&d, model)?.len();
        let h0 = model.h0(&d)?;
        if model.is_nef(&d) && rep.b1 as i64 != monos as i64 - h0 {
            counts_hold = false;
        }
        if rep.b1 > 0 {
            generators.push(json!({"divisor": d, "b1": rep.b1}));
            writeln!(out, "generator degree {d}: b1 = {}", rep.b1).ok();
        }
        degree_two.push(json!({"divisor": d, "monomials": monos, "h0": h0, "b1": rep.b1}));
    }
    checks.insert("degree_two_b1_counts_monomials", counts_hold);
    if cfg.rank == 4 {
        let expected: Vec<Value> = [
            [1, -1, 0, 0, 0],
            [1, 0, -1, 0, 0],
            [1, 0, 0, -1, 0],
            [1, 0, 0, 0, -1],
            [2, -1, -1, -1, -1],
        ]
        .iter()
        .map(|v| json!({"divisor": v, "b1": 1}))
        .collect();
        let mut got = generators.clone();
        got.sort_by_key(|v| v.to_string());
        let mut want = expected;
        want.sort_by_key(|v| v.to_string());
        checks.insert("x4_quadric_generators", got == want);
    }

    // higher degrees: no minimal generators, cross-checked with certificates
    let g = CurveGraph::new(model.clone())?;
    let mut strands = Vec::new();
    let mut vanish = true;
    for t in 3..=cfg.max_degree {
        for d in enumerate_nef_classes(model, t)? {
            let rep = oracle.koszul_b1(&d)?;
            let route = match DivisorContext::new(&d, &g) {
                Ok(_) => certify_with(&d, &g, &cfg.options())
                    .map(|c| c.route.name().to_string())
                    .unwrap_or_else(|e| format!("none ({e})")),
                Err(e) => format!("none ({e})"),
            };
            if rep.b1 != 0 {
                vanish = false;
                writeln!(out, "b1({d}) = {} (certificate: {route})", rep.b1).ok();
            }
            strands.push(json!({
                "divisor": d,
                "dims": rep.dims,
                "b1": rep.b1,
                "ranks_by": rep.ranks_by,
                "certificate": route,
            }));
        }
    }
    if cfg.max_degree >= 3 {
        checks.insert("b1_vanishes_from_degree_3", vanish);
    }
    writeln!(
        out,
        "{} degree-2 classes, {} generator degrees, {} strands in degrees 3..={}",
        degree_two.len(),
        generators.len(),
        strands.len(),
        cfg.max_degree
    )
    .ok();

    if cfg.rank == 7 {
        let rep = oracle.verify_27_sections()?;
        checks.insert("twenty_seven_sections", rep.holds);
        report["twenty_seven_sections"] = serde_json::to_value(&rep).expect("serializes");
    }
    for (name, ok) in &checks {
        writeln!(out, "  {name}: {ok}").ok();
    }
    report["degree_two"] = json!(degree_two);
    report["generators"] = json!(generators);
    report["strands"] = json!(strands);
    report["checks"] = json!(checks);
    Ok(checks.values().all(|&ok| ok))
}

/// Writes `replay.json`.
pub fn cmd_replay(
    cfg: &RunConfig,
    file: Option<&Path>,
    divisor: Option<DivisorClass>,
    out: &mut dyn Write,
) -> Result<bool, Failure> {
    let g = CurveGraph::for_rank(cfg.rank)?;
    let report = match file {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(io_failure(path))?;
            let certs: Vec<Value> = match serde_json::from_str::<Value>(&text) {
                Ok(v) => vec![v],
                Err(_) => text
                    .lines()
                    .filter(|l| !l.trim().is_empty())
                    .map(|l| {
                        serde_json::from_str(l).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
                    })
                    .collect::<Result<_, _>>()?,
            };
            let mut results = Vec::new();
            for c in &certs {
                let ok = check_certificate_json(c, &g, &cfg.options())?;
                if !ok {
                    writeln!(out, "rejected: {}", c["divisor"]).ok();
                }
                results.push(json!({"divisor": c["divisor"], "route": c["route"], "valid": ok}));
            }
            let valid = results.iter().filter(|r| r["valid"] == json!(true)).count();
            writeln!(out, "{valid} of {} certificates valid", certs.len()).ok();
            json!({"rank": cfg.rank, "certificates": results, "valid": valid == certs.len()})
        }
        None => {
            let d = match divisor {
                Some(d) => d,
                // the rank 7 kinds need m_D >= 2
                None if cfg.rank == 7 => g.model().anticanonical().checked_scale(2)?,
                None => g.model().anticanonical(),
            };
            let kinds = match cfg.rank {
                5 => vec![MoveKind::R5Edge],
                6 => vec![MoveKind::R6Path],
                7 => vec![MoveKind::P1, MoveKind::P2],
                r => {
                    return Err(Failure::Usage(format!("no staged sequence at rank {r}")));
                }
            };
            let (start, stages) = standard_stages(&g)?;
            let ctx = DivisorContext::new(&d, &g)?;
            let oracle = DivisorOracle { ctx, kinds };
            let cert = replay_stages(&start, &stages, &oracle, &g);
            let ok = cert.is_some();
            writeln!(out, "staged sequence for {d} at rank {}: {}", cfg.rank, if ok { "complete" } else { "stuck" }).ok();
            json!({
                "rank": cfg.rank,
                "divisor": d,
                "certificate": cert.map(|c| c.to_json(&g)),
                "valid": ok,
            })
        }
    };
    let ok = report["valid"] == json!(true);
    cfg.write_json("replay.json", &report)?;
    Ok(ok)
}
