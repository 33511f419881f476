//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use delpezzo::game::{replay, replay_stages, standard_stages, AllowAll, MoveKind};
use delpezzo::graph::CurveGraph;
use delpezzo::validity::{
    certify, enumerate_effective_classes, enumerate_nef_classes, nef_big_check, sweep,
    DivisorContext, DivisorOracle, Route,
};
use delpezzo::{enumerate_exceptional, DivisorClass, ExactOracle};

const SEEDS: [u64; 3] = [1, 2, 3];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn cls(v: &[i64]) -> DivisorClass {
    DivisorClass::new(v).unwrap()
}

fn curve_enumeration() -> Outcome {
    let want = [3, 6, 10, 16, 27, 56];
    let got: Vec<usize> = (2..=7).map(|r| enumerate_exceptional(r).unwrap().len()).collect();
    let m7 = enumerate_exceptional(7).unwrap();
    let labels: BTreeSet<String> = m7.curves().iter().map(|c| c.label.to_string()).collect();
    let labels_ok = ["e1", "f12", "g12", "h1", "e7", "f67", "g67", "h7"]
        .iter()
        .all(|l| labels.contains(*l))
        && enumerate_exceptional(5).unwrap().index_of_str("g").is_ok()
        && enumerate_exceptional(6).unwrap().index_of_str("g3").is_ok();
    outcome(got == want && labels_ok, format!("counts {got:?}"))
}

fn graph_facts() -> Outcome {
    let reports: Vec<_> = (5..=7)
        .map(|r| CurveGraph::for_rank(r).unwrap().structural_report())
        .collect();
    let (g5, g6, g7) = (&reports[0], &reports[1], &reports[2]);
    let ok = g5.triangle_free
        && g6.every_edge_in_exactly_one_triangle
        && g6.triangles == 45
        && g7.double_edges == 28
        && g7.double_edges_perfect_matching
        && g7.diameter == Some(2)
        && g7.no_triangle_with_double_edge
        && g7.triangles_sum_to_minus_k_plus_curve;
    outcome(
        ok && reports.iter().all(|r| r.all_hold()),
        format!(
            "G6 triangles {}, G7 double edges {}, G7 diameter {:?}",
            g6.triangles, g7.double_edges, g7.diameter
        ),
    )
}

fn staged_replay() -> Outcome {
    let mut ok = true;
    let mut moves = Vec::new();
    for (r, kind) in [(5, MoveKind::R5Edge), (6, MoveKind::R6Path)] {
        let g = CurveGraph::for_rank(r).unwrap();
        let (start, stages) = standard_stages(&g).unwrap();
        let shape = AllowAll::new(&[kind]);
        match replay_stages(&start, &stages, &shape, &g) {
            Some(cert) => {
                ok &= replay(&cert, &shape, &g).unwrap();
                moves.push(cert.moves.len());
            }
            None => ok = false,
        }
        // the same sequence against the validity rules of -K
        let ctx = DivisorContext::new(&g.model().anticanonical(), &g).unwrap();
        let oracle = DivisorOracle { ctx, kinds: vec![kind] };
        ok &= replay_stages(&start, &stages, &oracle, &g)
            .map_or(false, |c| replay(&c, &oracle, &g).unwrap());
    }
    outcome(ok, format!("moves per rank {moves:?}"))
}

fn side_conditions_imply_evidence() -> Outcome {
    let mut instances = 0u64;
    let mut counterexamples = Vec::new();
    for r in 5..=7 {
        let g = CurveGraph::for_rank(r).unwrap();
        let m = g.model();
        for t in 3..=6 {
            for d in enumerate_nef_classes(m, t).unwrap() {
                let ctx = DivisorContext::new(&d, &g).unwrap();
                let base = d - m.canonical();
                for kind in MoveKind::ALL {
                    if kind == MoveKind::Generic {
                        continue;
                    }
                    for mv in ctx.instances(kind) {
                        instances += 1;
                        let mut n = base - m.class(mv.captured);
                        for &a in &mv.anchors {
                            n = n - m.class(a);
                        }
                        if nef_big_check(&n, m).is_none() && counterexamples.len() < 5 {
                            counterexamples.push(format!("{d} {:?}", mv));
                        }
                    }
                }
            }
        }
    }
    outcome(
        counterexamples.is_empty(),
        format!("{instances} instances, counterexamples {counterexamples:?}"),
    )
}

fn full_certification() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for r in 5..=7 {
        let g = CurveGraph::for_rank(r).unwrap();
        match sweep(&g, 6, &Default::default()) {
            Ok(certs) => {
                let mut game = 0;
                for c in &certs {
                    match &c.route {
                        Route::NotNef { .. } => ok = false,
                        Route::Contraction { .. } => {}
                        Route::Game { certificate } => {
                            game += 1;
                            let ctx = DivisorContext::new(&c.divisor, &g).unwrap();
                            let kinds = MoveKind::ALL
                                .into_iter()
                                .filter(|&k| k != MoveKind::Generic)
                                .collect();
                            let oracle = DivisorOracle { ctx, kinds };
                            ok &= replay(certificate, &oracle, &g).unwrap();
                        }
                    }
                }
                parts.push(format!("r={r}: {} classes, {game} GAME", certs.len()));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("r={r}: {e}"));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn x4_reproduction() -> Outcome {
    let o = ExactOracle::standard(4, 0).unwrap();
    let mut gens = Vec::new();
    for d in o.degree_two_classes() {
        let rep = o.koszul_b1(&d).unwrap();
        if rep.b1 > 0 {
            gens.push((d, rep.b1));
        }
    }
    let mut want: Vec<(DivisorClass, usize)> = [
        [1, -1, 0, 0, 0],
        [1, 0, -1, 0, 0],
        [1, 0, 0, -1, 0],
        [1, 0, 0, 0, -1],
        [2, -1, -1, -1, -1],
    ]
    .iter()
    .map(|v| (cls(v), 1))
    .collect();
    gens.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    want.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let mut higher = 0;
    let mut nonzero = Vec::new();
    for t in 3..=5 {
        for d in enumerate_nef_classes(o.model(), t).unwrap() {
            higher += 1;
            let b1 = o.koszul_b1(&d).unwrap().b1;
            if b1 != 0 {
                nonzero.push(format!("{d}: {b1}"));
            }
        }
    }
    outcome(
        gens == want && nonzero.is_empty(),
        format!(
            "generators {:?}, {higher} nef classes in degrees 3..=5, nonzero b1 {nonzero:?}",
            gens.iter().map(|(d, _)| d.to_string()).collect::<Vec<_>>()
        ),
    )
}

fn oracle_certificate_agreement() -> Outcome {
    let mut ok = true;
    let mut strands = 0;
    let mut bad = Vec::new();
    for (r, top) in [(5, 4), (6, 3)] {
        let g = CurveGraph::for_rank(r).unwrap();
        for seed in SEEDS {
            let o = ExactOracle::standard(r, seed).unwrap();
            for t in 3..=top {
                for d in enumerate_nef_classes(o.model(), t).unwrap() {
                    strands += 1;
                    let certified = certify(&d, &g).map_or(false, |c| c.route.name() != "NOT_NEF");
                    let b1 = o.koszul_b1(&d).unwrap().b1;
                    if !certified || b1 != 0 {
                        ok = false;
                        bad.push(format!("r={r} seed={seed} {d}: b1 {b1}, certified {certified}"));
                    }
                }
            }
        }
    }
    outcome(ok, format!("{strands} strands, disagreements {bad:?}"))
}

fn twenty_seven_sections() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for seed in SEEDS {
        let rep = ExactOracle::standard(7, seed).unwrap().verify_27_sections().unwrap();
        ok &= rep.holds && rep.subsets_of_rank_3 == 28;
        parts.push(format!("seed {seed}: {}/28", rep.subsets_of_rank_3));
    }
    outcome(ok, parts.join(", "))
}

fn h0_equivalence() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for r in 4..=7 {
        let o = ExactOracle::standard(r, SEEDS[0]).unwrap();
        let classes = enumerate_effective_classes(o.model(), 6).unwrap();
        let mut eliminated = 0;
        let mut mismatches = 0;
        for d in &classes {
            let c = o.certified_h0(d).unwrap();
            if c.method == "elimination" {
                eliminated += 1;
            }
            if !c.agrees() {
                mismatches += 1;
                if mismatches <= 3 {
                    parts.push(format!("mismatch {c:?}"));
                }
            }
        }
        ok &= mismatches == 0;
        parts.push(format!(
            "r={r}: {} classes, {eliminated} by elimination, {mismatches} mismatches",
            classes.len()
        ));
    }
    outcome(ok, parts.join("; "))
}

fn determinism() -> Outcome {
    let runs: &[&[&str]] = &[
        &["curves", "--rank", "7"],
        &["certify", "--rank", "6", "--divisor", "[3,-1,-1,-1,-1,-1,-1]"],
        &["sweep", "--rank", "6", "--max-degree", "4"],
        &["oracle", "--rank", "5", "--max-degree", "3", "--seed", "9"],
        &["oracle", "--rank", "7", "--check", "27sections", "--arithmetic", "prime"],
        &["replay", "--rank", "7"],
    ];
    let mut ok = true;
    let mut compared = 0;
    let mut problems = Vec::new();
    for args in runs {
        let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
        for dir in &dirs {
            let mut argv = vec!["delpezzo"];
            argv.extend_from_slice(args);
            let out = dir.path().to_str().unwrap().to_string();
            argv.extend_from_slice(&["--out", &out]);
            let code = delpezzo::cli::run(argv, &mut std::io::sink());
            if code != 0 {
                ok = false;
                problems.push(format!("`{}` exited {code}", args.join(" ")));
            }
        }
        let mut names: Vec<_> = std::fs::read_dir(dirs[0].path())
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        names.sort();
        ok &= !names.is_empty();
        for name in names {
            let a = std::fs::read(dirs[0].path().join(&name)).unwrap();
            let b = std::fs::read(dirs[1].path().join(&name)).unwrap_or_default();
            if a != b {
                ok = false;
                problems.push(format!("{} differs", name.to_string_lossy()));
            }
            compared += 1;
        }
    }
    outcome(ok, format!("{compared} artifacts compared, problems {problems:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("curve enumeration", curve_enumeration, Duration::from_secs(1)),
        ("graph facts", graph_facts, Duration::from_secs(5)),
        ("staged replay", staged_replay, Duration::from_secs(1)),
        ("side conditions imply evidence", side_conditions_imply_evidence, Duration::from_secs(600)),
        ("full certification", full_certification, Duration::from_secs(600)),
        ("X4 oracle reproduction", x4_reproduction, Duration::from_secs(120)),
        ("oracle/certificate agreement", oracle_certificate_agreement, Duration::from_secs(900)),
        ("27 sections", twenty_seven_sections, Duration::from_secs(60)),
        ("h0 oracle equivalence", h0_equivalence, Duration::from_secs(600)),
        ("determinism", determinism, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let pass = out.passed && took <= *budget;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<30} {} ({:.2?}, budget {:?}): {}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            took,
            budget,
            out.detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
