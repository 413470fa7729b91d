//! The acceptance suite, runnable from the library, the CLI and the test
//! harness.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::aggregate::{
    bound_and_parity_reports, congruence_reports, identity_reports, Analyzer, CycleClass, Statistic, Status, SumTable,
    VerificationReport,
};
use crate::diagram::{extract_link_diagram, gauss_diagram, GaussCode};
use crate::generators::{moment_curve, random_embedding, sampled_knot, KnotCurve};
use crate::geometry::{build_scene_diagram, generic_scene, Direction, DEFAULT_DIRECTION_BUDGET};
use crate::graph::{binomial, cycle_from, enumerate_cycles};
use crate::invariants::{a2, conway_skein_oracle, knot_a2, linking_number, DEFAULT_SKEIN_CUTOFF};

/// Coordinate bound for every random embedding in the suite.
pub const RANDOM_BOUND: i64 = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} criterion {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "moment-curve sharp values"),
    (2, "K8 regression triple"),
    (3, "lk2 split identities"),
    (4, "a2 doubled identity"),
    (5, "parities"),
    (6, "congruences"),
    (7, "bounds"),
    (8, "oracle equivalence"),
    (9, "robustness properties"),
    (10, "determinism"),
];

/// One embedding of the shared corpus with its precomputed sums.
pub struct Sample {
    pub label: String,
    pub n: usize,
    pub random: bool,
    pub seed: u64,
    pub analyzer: Analyzer,
    pub table: SumTable,
}

fn sample(label: String, n: usize, random: bool, seed: u64) -> Result<Sample, String> {
    let e = if random {
        random_embedding(n, seed, RANDOM_BOUND)
    } else {
        moment_curve(n, &(1..=n as i64).collect::<Vec<_>>())
    }
    .map_err(|e| format!("{label}: {e}"))?;
    let analyzer = Analyzer::new(e).map_err(|e| format!("{label}: {e}"))?;
    let table = analyzer.sum_table().map_err(|e| format!("{label}: {e}"))?;
    Ok(Sample { label, n, random, seed, analyzer, table })
}

/// Moment curves for n = 6..9, twenty random embeddings for each of
/// n = 6, 7, 8 and three for n = 9 (seeds from 1).
pub fn corpus() -> &'static Result<Vec<Sample>, String> {
    static CORPUS: OnceLock<Result<Vec<Sample>, String>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut specs: Vec<(String, usize, bool, u64)> =
            (6..=9).map(|n| (format!("moment K{n}"), n, false, 0)).collect();
        for (n, count) in [(6, 20), (7, 20), (8, 20), (9, 3)] {
            for seed in 1..=count {
                specs.push((format!("random K{n} seed {seed}"), n, true, seed));
            }
        }
        specs.into_par_iter().map(|(l, n, r, s)| sample(l, n, r, s)).collect()
    })
}

fn with_corpus(f: impl FnOnce(&[Sample]) -> Result<String, String>) -> Result<String, String> {
    match corpus() {
        Ok(c) => f(c),
        Err(e) => Err(e.clone()),
    }
}

fn first_failure<'a>(
    reports: impl IntoIterator<Item = (&'a str, VerificationReport)>,
    keep: impl Fn(&VerificationReport) -> bool,
) -> Result<usize, String> {
    let mut checked = 0;
    for (label, r) in reports {
        if !keep(&r) {
            continue;
        }
        if r.status != Status::Holds {
            return Err(format!("{label}: {} ({:?},{:?}) {} lhs={} rhs={}", r.claim_id, r.p, r.q, r.status, r.lhs, r.rhs));
        }
        checked += 1;
    }
    Ok(checked)
}

fn lk2(a: &Analyzer, p: usize, q: usize) -> Result<i128, String> {
    a.class_sum(CycleClass::pair(p, q), Statistic::Lk2).map(|s| s.value).map_err(|e| e.to_string())
}

fn criterion_1() -> Result<String, String> {
    let mut got = Vec::new();
    for n in 6..=9 {
        let e = moment_curve(n, &(1..=n as i64).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
        let v = lk2(&Analyzer::new(e).map_err(|e| e.to_string())?, 3, 3)?;
        let want = binomial(n, 6) as i128;
        if v != want {
            return Err(format!("K{n}: sum lk2 over triangle pairs = {v}, expected {want}"));
        }
        got.push(v.to_string());
    }
    Ok(format!("n=6..9 give {}", got.join(", ")))
}

fn criterion_2() -> Result<String, String> {
    let e = moment_curve(8, &(1..=8).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
    let a = Analyzer::new(e).map_err(|e| e.to_string())?;
    let (s33, s35, s44) = (lk2(&a, 3, 3)?, lk2(&a, 3, 5)?, lk2(&a, 4, 4)?);
    let total = s35 + s44;
    if (s35, s44, total, s33 * 6) != (112, 56, 168, 168) {
        return Err(format!("got (3,5)={s35} (4,4)={s44} total={total} 6*(3,3)={}", 6 * s33));
    }
    Ok(format!("(3,5)={s35} (4,4)={s44} total={total}"))
}

fn criterion_3() -> Result<String, String> {
    with_corpus(|c| {
        let reports = c
            .iter()
            .filter(|s| s.random)
            .flat_map(|s| identity_reports(&s.table).into_iter().map(move |r| (s.label.as_str(), r)));
        let checked = first_failure(reports, |r| r.claim_id == "lk2-split-identity" || r.claim_id == "lk2-total-identity")?;
        Ok(format!("{checked} identity instances on 63 random embeddings"))
    })
}

fn criterion_4() -> Result<String, String> {
    with_corpus(|c| {
        let chosen = c.iter().filter(|s| (6..=8).contains(&s.n) && (!s.random || s.seed <= 10));
        let reports = chosen.flat_map(|s| identity_reports(&s.table).into_iter().map(move |r| (s.label.as_str(), r)));
        let checked = first_failure(reports, |r| r.claim_id == "a2-lk2-doubled-identity")?;
        let k7 = c.iter().find(|s| !s.random && s.n == 7).ok_or("moment K7 missing")?;
        if k7.table.a2_hamiltonian != 1 {
            return Err(format!("moment K7 Hamiltonian a2 sum = {}", k7.table.a2_hamiltonian));
        }
        Ok(format!("{checked} instances; moment K7 Hamiltonian a2 sum = 1"))
    })
}

fn random_analyzer(n: usize, seed: u64) -> Result<Analyzer, String> {
    let e = random_embedding(n, seed, RANDOM_BOUND).map_err(|e| e.to_string())?;
    Analyzer::new(e).map_err(|e| format!("K{n} seed {seed}: {e}"))
}

fn criterion_5() -> Result<String, String> {
    let k6: Vec<i128> = (1..=50u64)
        .into_par_iter()
        .map(|seed| {
            let a = random_analyzer(6, seed)?;
            a.class_sum(CycleClass::pair(3, 3), Statistic::Lk).map(|s| s.value).map_err(|e| e.to_string())
        })
        .collect::<Result<_, String>>()?;
    if let Some(k) = k6.iter().position(|v| v.rem_euclid(2) != 1) {
        return Err(format!("K6 seed {}: triangle-pair lk sum {} is even", k + 1, k6[k]));
    }
    let k7: Vec<i128> = (1..=10u64)
        .into_par_iter()
        .map(|seed| {
            let a = random_analyzer(7, seed)?;
            a.class_sum(CycleClass::knot(7), Statistic::A2).map(|s| s.value).map_err(|e| e.to_string())
        })
        .collect::<Result<_, String>>()?;
    if let Some(k) = k7.iter().position(|v| v.rem_euclid(2) != 1) {
        return Err(format!("K7 seed {}: Hamiltonian a2 sum {} is even", k + 1, k7[k]));
    }
    for n in [7, 8] {
        (1..=10u64).into_par_iter().try_for_each(|seed| hamiltonian_lk_parity(n, seed))?;
    }
    Ok("50 K6 odd lk sums, 10 K7 odd a2 sums, 20 even Hamiltonian lk totals with odd witnesses".into())
}

fn hamiltonian_lk_parity(n: usize, seed: u64) -> Result<(), String> {
    let a = random_analyzer(n, seed)?;
    let mut total = 0i128;
    let mut witness = None;
    for class in CycleClass::hamiltonian_splits(n) {
        let values = a.linking_numbers(class.p(), class.q().unwrap()).map_err(|e| e.to_string())?;
        for (pair, lk) in values {
            total += lk as i128;
            if witness.is_none() && lk % 2 != 0 {
                witness = Some(pair);
            }
        }
    }
    if total % 2 != 0 {
        return Err(format!("K{n} seed {seed}: Hamiltonian lk total {total} is odd"));
    }
    let pair = witness.ok_or_else(|| format!("K{n} seed {seed}: no odd Hamiltonian link"))?;
    // Re-evaluate on a fresh projection.
    let scene = generic_scene(a.embedding(), DEFAULT_DIRECTION_BUDGET).map_err(|e| e.to_string())?;
    let ld = extract_link_diagram(&scene, &[pair.first.clone(), pair.second.clone()]).map_err(|e| e.to_string())?;
    let lk = linking_number(&ld).map_err(|e| e.to_string())?;
    if lk % 2 == 0 {
        return Err(format!("K{n} seed {seed}: witness {pair} re-evaluates to even lk {lk}"));
    }
    Ok(())
}

fn criterion_6() -> Result<String, String> {
    with_corpus(|c| {
        let reports = c.iter().flat_map(|s| congruence_reports(&s.table).into_iter().map(move |r| (s.label.as_str(), r)));
        let checked = first_failure(reports, |_| true)?;
        let a2_checked = c.iter().filter(|s| (7..=8).contains(&s.n)).count();
        Ok(format!("{checked} residues on {} embeddings, a2 residue on {a2_checked}", c.len()))
    })
}

fn criterion_7() -> Result<String, String> {
    with_corpus(|c| {
        if let Some(s) = c.iter().find(|s| !s.analyzer.embedding().is_rectilinear()) {
            return Err(format!("{} is not rectilinear", s.label));
        }
        let reports =
            c.iter().flat_map(|s| bound_and_parity_reports(&s.table).into_iter().map(move |r| (s.label.as_str(), r)));
        let skip_ok = |r: &VerificationReport| !(r.status == Status::Skipped && r.witness == "no threshold applies");
        let checked = first_failure(reports, skip_ok)?;
        let k6: Vec<String> =
            c.iter().filter(|s| s.n == 6).map(|s| s.table.s33).collect::<std::collections::BTreeSet<_>>().iter().map(i128::to_string).collect();
        Ok(format!("{checked} bound and parity instances; K6 triangle sums seen: {{{}}}", k6.join(",")))
    })
}

fn calibration() -> Result<(), String> {
    let unknot = GaussCode::new(vec![vec![]], vec![]).map_err(|e| e.to_string())?;
    if knot_a2(&unknot).map_err(|e| e.to_string())? != 0 {
        return Err("unknot a2 is not 0".into());
    }
    for (curve, want) in [(KnotCurve::Trefoil, 1), (KnotCurve::FigureEight, -1)] {
        let e = sampled_knot(curve, 60, 100.0).map_err(|e| e.to_string())?;
        let scene = generic_scene(&e, DEFAULT_DIRECTION_BUDGET).map_err(|e| e.to_string())?;
        let cycle = cycle_from(&[1, 2, 3], 3).map_err(|e| e.to_string())?;
        let ld = extract_link_diagram(&scene, std::slice::from_ref(&cycle)).map_err(|e| e.to_string())?;
        let got = a2(&gauss_diagram(&ld).map_err(|e| e.to_string())?);
        let oracle = conway_skein_oracle(&ld, 64).map(|p| p.coefficient(2));
        if got != want || oracle != Some(want) {
            return Err(format!("{curve:?}: a2 {got}, oracle {oracle:?}, expected {want}"));
        }
    }
    Ok(())
}

fn criterion_8() -> Result<String, String> {
    calibration()?;
    let counts: Vec<(usize, usize)> = (1..=5u64)
        .into_par_iter()
        .map(|seed| {
            let a = random_analyzer(7, seed)?;
            let mut knots = 0;
            for (cycle, value) in a.a2_values(7).map_err(|e| e.to_string())? {
                let ld = extract_link_diagram(a.scene(), std::slice::from_ref(&cycle)).map_err(|e| e.to_string())?;
                if let Some(p) = conway_skein_oracle(&ld, DEFAULT_SKEIN_CUTOFF) {
                    if p.coefficient(2) != value {
                        return Err(format!("K7 seed {seed} {cycle}: a2 {value}, oracle {}", p.coefficient(2)));
                    }
                    knots += 1;
                }
            }
            let mut links = 0;
            for (pair, value) in a.linking_numbers(3, 4).map_err(|e| e.to_string())? {
                let ld = extract_link_diagram(a.scene(), &[pair.first.clone(), pair.second.clone()])
                    .map_err(|e| e.to_string())?;
                if let Some(p) = conway_skein_oracle(&ld, DEFAULT_SKEIN_CUTOFF) {
                    if p.coefficient(1) != value {
                        return Err(format!("K7 seed {seed} {pair}: lk {value}, oracle {}", p.coefficient(1)));
                    }
                    links += 1;
                }
            }
            Ok((knots, links))
        })
        .collect::<Result<_, String>>()?;
    let knots: usize = counts.iter().map(|c| c.0).sum();
    let links: usize = counts.iter().map(|c| c.1).sum();
    if knots == 0 || links == 0 {
        return Err(format!("oracle ran on {knots} knots and {links} links"));
    }
    Ok(format!("calibration ok; oracle agreed on {knots} Hamiltonian knots and {links} (3,4) links"))
}

fn second_direction(a: &Analyzer) -> Result<Analyzer, String> {
    let first = a.scene().direction().clone();
    for d in Direction::candidates(DEFAULT_DIRECTION_BUDGET) {
        if d == first {
            continue;
        }
        if build_scene_diagram(a.embedding(), &d).is_ok() {
            return Analyzer::with_direction(a.embedding().clone(), &d).map_err(|e| e.to_string());
        }
    }
    Err("no second generic direction".into())
}

fn criterion_9() -> Result<String, String> {
    (1..=5u64).into_par_iter().try_for_each(|seed| -> Result<(), String> {
        let a = random_analyzer(7, seed)?;
        let b = second_direction(&a)?;
        let err = |e: crate::Error| e.to_string();
        for (p, q) in [(3, 3), (3, 4)] {
            if a.linking_numbers(p, q).map_err(err)? != b.linking_numbers(p, q).map_err(err)? {
                return Err(format!("K7 seed {seed}: lk on ({p},{q}) depends on the direction"));
            }
        }
        for p in 3..=7 {
            if a.a2_values(p).map_err(err)? != b.a2_values(p).map_err(err)? {
                return Err(format!("K7 seed {seed}: a2 on {p}-cycles depends on the direction"));
            }
        }
        for cycle in enumerate_cycles(7, 7).map_err(err)? {
            let ld = extract_link_diagram(a.scene(), std::slice::from_ref(&cycle)).map_err(err)?;
            let gd = gauss_diagram(&ld).map_err(err)?;
            let base = a2(&gd);
            if (1..gd.len().max(1)).any(|s| a2(&gd.rotate(s)) != base) {
                return Err(format!("K7 seed {seed} {cycle}: a2 depends on the base point"));
            }
        }
        let t = a.sum_table().map_err(err)?;
        if t.max_abs_lk_33 > 1 || t.short_a2_nonzero != Some(0) {
            return Err(format!("K7 seed {seed}: stick bounds fail"));
        }
        Ok(())
    })?;
    with_corpus(|c| {
        if let Some(s) = c.iter().find(|s| s.table.max_abs_lk_33 > 1 || s.table.short_a2_nonzero != Some(0)) {
            return Err(format!("{}: six-stick or five-stick property fails", s.label));
        }
        Ok(format!("5 embeddings x 2 directions agree; stick properties on {} more embeddings", c.len()))
    })
}

fn criterion_10() -> Result<String, String> {
    let dir = std::env::temp_dir().join(format!("spatial-linking-selftest-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let result = determinism_in(&dir);
    let _ = std::fs::remove_dir_all(&dir);
    result
}

fn determinism_in(dir: &std::path::Path) -> Result<String, String> {
    use crate::cli::run_captured;
    let moment = dir.join("moment.json");
    let random = dir.join("random.json");
    let gens: [Vec<String>; 2] = [
        vec!["gen".into(), "--moment".into(), "-n".into(), "8".into(), "-o".into(), moment.display().to_string()],
        vec![
            "gen".into(),
            "--random".into(),
            "--seed".into(),
            "5".into(),
            "-n".into(),
            "7".into(),
            "-o".into(),
            random.display().to_string(),
        ],
    ];
    let mut files = Vec::new();
    for g in &gens {
        let (code, _, err) = run_captured(g.iter());
        if code != 0 {
            return Err(format!("gen failed: {err}"));
        }
        files.push(std::fs::read(g.last().unwrap()).map_err(|e| e.to_string())?);
    }
    for g in &gens {
        run_captured(g.iter());
    }
    for (g, before) in gens.iter().zip(&files) {
        if std::fs::read(g.last().unwrap()).map_err(|e| e.to_string())? != *before {
            return Err("gen output changed between runs".into());
        }
    }
    let mut compared = 0;
    for input in [&moment, &random] {
        for format in ["csv", "json"] {
            let input = input.display().to_string();
            let commands: [Vec<&str>; 2] = [
                vec!["sums", "-i", &input, "--stat", "lk,lk2,maxlk,a2", "--format", format],
                vec!["verify", "-i", &input, "--format", format],
            ];
            for cmd in &commands {
                let runs: Vec<(u8, Vec<u8>, String)> = ["1", "1", "8"]
                    .iter()
                    .map(|jobs| run_captured(cmd.iter().copied().chain(["--jobs", jobs])))
                    .collect();
                if runs[0].0 != 0 {
                    return Err(format!("{} exited {}: {}", cmd.join(" "), runs[0].0, runs[0].2));
                }
                if runs.iter().any(|r| r != &runs[0]) {
                    return Err(format!("{} output differs between runs", cmd.join(" ")));
                }
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} commands byte-identical across runs and --jobs 1/8"))
}

/// Runs criterion `id` (1 to 10).
pub fn criterion(id: u8) -> CriterionResult {
    let outcome = match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        _ => Err(format!("no criterion {id}")),
    };
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
    match outcome {
        Ok(detail) => CriterionResult { id, name, passed: true, detail },
        Err(detail) => CriterionResult { id, name, passed: false, detail },
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().map(|c| criterion(c.0)).collect()
}
