//! Summed invariants over cycle classes and exact checks of the integer
//! relations they satisfy.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    build_scene_diagram, generic_scene, validate_embedding, Direction, PLEmbedding, SceneDiagram,
    DEFAULT_DIRECTION_BUDGET,
};
use crate::graph::{binomial, enumerate_cycles, enumerate_disjoint_pairs, factorial, Cycle, CyclePair};
use crate::invariants::{cycle_a2, pair_linking_number, CycleEdges};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    /// Σ lk
    Lk,
    /// Σ lk²
    Lk2,
    /// max |lk|
    #[serde(rename = "maxlk")]
    MaxAbsLk,
    /// Σ a₂
    A2,
}

impl Statistic {
    pub const ALL: [Statistic; 4] = [Statistic::Lk, Statistic::Lk2, Statistic::MaxAbsLk, Statistic::A2];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Lk => "lk",
            Statistic::Lk2 => "lk2",
            Statistic::MaxAbsLk => "maxlk",
            Statistic::A2 => "a2",
        }
    }

    pub fn is_link_statistic(self) -> bool {
        self != Statistic::A2
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Statistic> {
        Statistic::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown statistic {s:?} (expected lk, lk2, maxlk or a2)")))
    }
}

/// `Γ_{p,q}` (with `p ≤ q`) or `Γ_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleClass {
    Pair { p: usize, q: usize },
    Knot { p: usize },
}

impl CycleClass {
    pub fn pair(p: usize, q: usize) -> CycleClass {
        CycleClass::Pair { p: p.min(q), q: p.max(q) }
    }

    pub fn knot(p: usize) -> CycleClass {
        CycleClass::Knot { p }
    }

    pub fn p(self) -> usize {
        match self {
            CycleClass::Pair { p, .. } | CycleClass::Knot { p } => p,
        }
    }

    pub fn q(self) -> Option<usize> {
        match self {
            CycleClass::Pair { q, .. } => Some(q),
            CycleClass::Knot { .. } => None,
        }
    }

    pub fn check(self, n: usize) -> Result<()> {
        let ok = match self {
            CycleClass::Pair { p, q } => p >= 3 && p <= q && p + q <= n,
            CycleClass::Knot { p } => p >= 3 && p <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidClass(format!("{self} for n = {n}")))
        }
    }

    /// Every Hamiltonian pair class of `K_n`, `p ≤ q`.
    pub fn hamiltonian_splits(n: usize) -> Vec<CycleClass> {
        (3..=n / 2).filter(|p| n - p >= 3).map(|p| CycleClass::pair(p, n - p)).collect()
    }
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleClass::Pair { p, q } => write!(f, "Γ({p},{q})"),
            CycleClass::Knot { p } => write!(f, "Γ({p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSum {
    pub n: usize,
    pub p: usize,
    pub q: Option<usize>,
    pub statistic: Statistic,
    pub value: i128,
    /// Cycle or pair achieving a maximum, if the statistic is one.
    pub witness: Option<String>,
}

#[derive(Debug)]
struct PairValues {
    pairs: Vec<CyclePair>,
    lk: Vec<i64>,
}

#[derive(Debug)]
struct KnotValues {
    cycles: Vec<Cycle>,
    a2: Vec<i64>,
}

/// Owns an embedding, its single projection, and per-class invariant
/// values computed on demand.
#[derive(Debug)]
pub struct Analyzer {
    embedding: PLEmbedding,
    scene: SceneDiagram,
    pairs: Mutex<BTreeMap<(usize, usize), Arc<PairValues>>>,
    knots: Mutex<BTreeMap<usize, Arc<KnotValues>>>,
}

impl Analyzer {
    /// Validates the embedding and projects along the first generic
    /// candidate direction.
    pub fn new(embedding: PLEmbedding) -> Result<Analyzer> {
        Self::check(&embedding)?;
        let scene = generic_scene(&embedding, DEFAULT_DIRECTION_BUDGET)?;
        Ok(Self::from_parts(embedding, scene))
    }

    pub fn with_direction(embedding: PLEmbedding, direction: &Direction) -> Result<Analyzer> {
        Self::check(&embedding)?;
        let scene = build_scene_diagram(&embedding, direction)?;
        Ok(Self::from_parts(embedding, scene))
    }

    fn check(e: &PLEmbedding) -> Result<()> {
        let verdict = validate_embedding(e);
        if verdict.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidEmbedding(verdict.to_string()))
        }
    }

    fn from_parts(embedding: PLEmbedding, scene: SceneDiagram) -> Analyzer {
        Analyzer { embedding, scene, pairs: Mutex::default(), knots: Mutex::default() }
    }

    pub fn n(&self) -> usize {
        self.embedding.n()
    }

    pub fn embedding(&self) -> &PLEmbedding {
        &self.embedding
    }

    pub fn scene(&self) -> &SceneDiagram {
        &self.scene
    }

    fn pair_values(&self, p: usize, q: usize) -> Result<Arc<PairValues>> {
        if let Some(v) = self.pairs.lock().unwrap().get(&(p, q)) {
            return Ok(v.clone());
        }
        let pairs = enumerate_disjoint_pairs(self.n(), p, q)?;
        let lk = pairs
            .par_iter()
            .map(|pair| {
                let a = CycleEdges::new(&pair.first);
                let b = CycleEdges::new(&pair.second);
                pair_linking_number(&self.scene, &a, &b)
            })
            .collect::<Result<Vec<i64>>>()?;
        let values = Arc::new(PairValues { pairs, lk });
        self.pairs.lock().unwrap().insert((p, q), values.clone());
        Ok(values)
    }

    fn knot_values(&self, p: usize) -> Result<Arc<KnotValues>> {
        if let Some(v) = self.knots.lock().unwrap().get(&p) {
            return Ok(v.clone());
        }
        let cycles = enumerate_cycles(self.n(), p)?;
        let a2 = cycles
            .par_iter()
            .map(|c| cycle_a2(&self.scene, c))
            .collect::<Result<Vec<i64>>>()?;
        let values = Arc::new(KnotValues { cycles, a2 });
        self.knots.lock().unwrap().insert(p, values.clone());
        Ok(values)
    }

    /// Linking numbers of every pair of `Γ_{p,q}` in enumeration order.
    pub fn linking_numbers(&self, p: usize, q: usize) -> Result<Vec<(CyclePair, i64)>> {
        CycleClass::pair(p, q).check(self.n())?;
        let v = self.pair_values(p.min(q), p.max(q))?;
        Ok(v.pairs.iter().cloned().zip(v.lk.iter().copied()).collect())
    }

    /// a₂ of every cycle of `Γ_p` in enumeration order.
    pub fn a2_values(&self, p: usize) -> Result<Vec<(Cycle, i64)>> {
        CycleClass::knot(p).check(self.n())?;
        let v = self.knot_values(p)?;
        Ok(v.cycles.iter().cloned().zip(v.a2.iter().copied()).collect())
    }

    pub fn class_sum(&self, class: CycleClass, statistic: Statistic) -> Result<ClassSum> {
        class.check(self.n())?;
        let (value, witness) = match (class, statistic) {
            (CycleClass::Pair { p, q }, s) if s.is_link_statistic() => {
                let v = self.pair_values(p, q)?;
                match s {
                    Statistic::Lk => (v.lk.iter().map(|&x| x as i128).sum(), None),
                    Statistic::Lk2 => (v.lk.iter().map(|&x| (x as i128) * (x as i128)).sum(), None),
                    _ => match first_max(v.lk.iter().map(|x| x.abs())) {
                        Some((k, m)) => (m as i128, Some(format!("{} lk={}", v.pairs[k], v.lk[k]))),
                        None => (0, None),
                    },
                }
            }
            (CycleClass::Knot { p }, Statistic::A2) => {
                let v = self.knot_values(p)?;
                (v.a2.iter().map(|&x| x as i128).sum(), None)
            }
            _ => {
                return Err(Error::InvalidClass(format!("statistic {statistic} does not apply to {class}")));
            }
        };
        Ok(ClassSum { n: self.n(), p: class.p(), q: class.q(), statistic, value, witness })
    }

    /// Largest a₂ over `Γ_p` and the first cycle attaining it.
    pub fn max_a2(&self, p: usize) -> Result<Option<(Cycle, i64)>> {
        CycleClass::knot(p).check(self.n())?;
        let v = self.knot_values(p)?;
        Ok(first_max(v.a2.iter().copied()).map(|(k, m)| (v.cycles[k].clone(), m)))
    }

    /// Every sum the verification suites need.
    pub fn sum_table(&self) -> Result<SumTable> {
        let n = self.n();
        if n < 6 {
            return Err(Error::InvalidClass(format!("verification needs n ≥ 6, got {n}")));
        }
        let lk2 = |p, q| -> Result<i128> { Ok(self.class_sum(CycleClass::pair(p, q), Statistic::Lk2)?.value) };
        let mut splits = Vec::new();
        for class in CycleClass::hamiltonian_splits(n) {
            let CycleClass::Pair { p, q } = class else { unreachable!() };
            let v = self.pair_values(p, q)?;
            let maxlk = first_max(v.lk.iter().map(|x| x.abs()));
            let odd = v.lk.iter().position(|x| x % 2 != 0);
            splits.push(SplitSums {
                p,
                q,
                lk: v.lk.iter().map(|&x| x as i128).sum(),
                lk2: v.lk.iter().map(|&x| (x as i128) * (x as i128)).sum(),
                max_abs_lk: maxlk.map_or(0, |(_, m)| m as i128),
                max_witness: maxlk.map(|(k, _)| format!("{} lk={}", v.pairs[k], v.lk[k])),
                odd_count: v.lk.iter().filter(|x| *x % 2 != 0).count() as i128,
                odd_witness: odd.map(|k| format!("{} lk={}", v.pairs[k], v.lk[k])),
            });
        }
        let triangles = self.pair_values(3, 3)?;
        let short_a2_nonzero = if self.embedding.is_rectilinear() {
            let mut count = 0i128;
            for p in 3..=5.min(n) {
                count += self.knot_values(p)?.a2.iter().filter(|&&x| x != 0).count() as i128;
            }
            Some(count)
        } else {
            None
        };
        let ham = self.knot_values(n)?;
        let max_a2 = first_max(ham.a2.iter().copied());
        Ok(SumTable {
            n,
            rectilinear: self.embedding.is_rectilinear(),
            s33: lk2(3, 3)?,
            lk_33: triangles.lk.iter().map(|&x| x as i128).sum(),
            max_abs_lk_33: triangles.lk.iter().map(|x| x.abs() as i128).max().unwrap_or(0),
            s34: if n >= 7 { Some(lk2(3, 4)?) } else { None },
            s35: if n >= 8 { Some(lk2(3, 5)?) } else { None },
            splits,
            a2_hamiltonian: ham.a2.iter().map(|&x| x as i128).sum(),
            a2_five: self.knot_values(5)?.a2.iter().map(|&x| x as i128).sum(),
            max_a2: max_a2.map_or(0, |(_, m)| m as i128),
            max_a2_witness: max_a2.map(|(k, m)| format!("{} a2={m}", ham.cycles[k])),
            short_a2_nonzero,
        })
    }
}

fn first_max<I: Iterator<Item = i64>>(values: I) -> Option<(usize, i64)> {
    let mut best: Option<(usize, i64)> = None;
    for (k, v) in values.enumerate() {
        if best.map_or(true, |(_, b)| v > b) {
            best = Some((k, v));
        }
    }
    best
}

/// Sums over one Hamiltonian split `Γ_{p,q}`, `p + q = n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSums {
    pub p: usize,
    pub q: usize,
    pub lk: i128,
    pub lk2: i128,
    pub max_abs_lk: i128,
    pub max_witness: Option<String>,
    pub odd_count: i128,
    pub odd_witness: Option<String>,
}

/// The raw sums behind every report. Kept separate from the geometry so the
/// checks can be exercised on arbitrary values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumTable {
    pub n: usize,
    pub rectilinear: bool,
    /// Σ lk² over `Γ_{3,3}`
    pub s33: i128,
    /// Σ lk over `Γ_{3,3}`
    pub lk_33: i128,
    pub max_abs_lk_33: i128,
    pub s34: Option<i128>,
    pub s35: Option<i128>,
    pub splits: Vec<SplitSums>,
    /// Σ a₂ over `Γ_n`
    pub a2_hamiltonian: i128,
    /// Σ a₂ over `Γ_5`
    pub a2_five: i128,
    pub max_a2: i128,
    pub max_a2_witness: Option<String>,
    /// Cycles of length at most five with nonzero a₂; rectilinear only.
    pub short_a2_nonzero: Option<i128>,
}

impl SumTable {
    pub fn total_lk2(&self) -> i128 {
        self.splits.iter().map(|s| s.lk2).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Violated,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub n: usize,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub statistic: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    /// Witness for existence claims, or the reason a claim was skipped.
    pub witness: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Relation {
    Eq,
    Ge,
    Le,
}

struct Claim<'a> {
    id: &'a str,
    n: usize,
    p: Option<usize>,
    q: Option<usize>,
    statistic: String,
}

impl Claim<'_> {
    fn compare(&self, lhs: i128, rel: Relation, rhs: i128, witness: Option<String>) -> VerificationReport {
        let ok = match rel {
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Le => lhs <= rhs,
        };
        self.report(if ok { Status::Holds } else { Status::Violated }, lhs.to_string(), rhs.to_string(), witness)
    }

    fn skip(&self, reason: &str) -> VerificationReport {
        self.report(Status::Skipped, String::new(), String::new(), Some(reason.to_string()))
    }

    fn report(&self, status: Status, lhs: String, rhs: String, witness: Option<String>) -> VerificationReport {
        VerificationReport {
            claim_id: self.id.to_string(),
            n: self.n,
            p: self.p,
            q: self.q,
            statistic: self.statistic.clone(),
            status,
            lhs,
            rhs,
            witness: witness.unwrap_or_default(),
        }
    }
}

fn claim(id: &str, n: usize, pq: Option<(usize, usize)>, statistic: impl Into<String>) -> Claim<'_> {
    Claim { id, n, p: pq.map(|x| x.0), q: pq.map(|x| x.1), statistic: statistic.into() }
}

fn fact(k: usize) -> i128 {
    factorial(k) as i128
}

const NOT_RECTILINEAR: &str = "not rectilinear";

/// Exact class-sum identities relating every Hamiltonian split, the short
/// classes and the Hamiltonian a₂ sum to Σ lk² over `Γ_{3,3}`.
pub fn identity_reports(t: &SumTable) -> Vec<VerificationReport> {
    let n = t.n;
    let mut out = Vec::new();
    for s in &t.splits {
        let factor = if s.p == s.q { fact(n - 6) } else { 2 * fact(n - 6) };
        out.push(claim("lk2-split-identity", n, Some((s.p, s.q)), "lk2").compare(
            s.lk2,
            Relation::Eq,
            factor * t.s33,
            None,
        ));
    }
    out.push(claim("lk2-total-identity", n, None, "lk2").compare(
        t.total_lk2(),
        Relation::Eq,
        fact(n - 5) * t.s33,
        None,
    ));
    if let Some(s34) = t.s34 {
        out.push(claim("lk2-3-4-identity", n, Some((3, 4)), "lk2").compare(
            s34,
            Relation::Eq,
            2 * (n as i128 - 6) * t.s33,
            None,
        ));
    }
    if let Some(s35) = t.s35 {
        out.push(claim("lk2-3-5-identity", n, Some((3, 5)), "lk2").compare(
            s35,
            Relation::Eq,
            2 * (n as i128 - 6) * (n as i128 - 7) * t.s33,
            None,
        ));
    }
    let f = fact(n - 5);
    out.push(claim("a2-lk2-doubled-identity", n, None, "a2").compare(
        2 * (t.a2_hamiltonian - f * t.a2_five),
        Relation::Eq,
        f * (t.s33 - binomial(n - 1, 5) as i128),
        None,
    ));
    out
}

fn lk_congruence_case(n: usize) -> bool {
    matches!(n % 8, 6 | 7)
}

/// Residues of the lk² sums and of the Hamiltonian a₂ sum, which do not
/// depend on the embedding.
pub fn congruence_reports(t: &SumTable) -> Vec<VerificationReport> {
    let n = t.n;
    let odd_case = lk_congruence_case(n);
    let mut out = Vec::new();
    for s in &t.splits {
        let (modulus, residue) = if s.p == s.q {
            (2 * fact(n - 6), if odd_case { fact(n - 6) } else { 0 })
        } else {
            (4 * fact(n - 6), if odd_case { 2 * fact(n - 6) } else { 0 })
        };
        out.push(claim("lk2-split-congruence", n, Some((s.p, s.q)), format!("lk2 mod {modulus}")).compare(
            s.lk2.rem_euclid(modulus),
            Relation::Eq,
            residue,
            None,
        ));
    }
    let modulus = 2 * fact(n - 5);
    out.push(claim("lk2-total-congruence", n, None, format!("lk2 mod {modulus}")).compare(
        t.total_lk2().rem_euclid(modulus),
        Relation::Eq,
        if odd_case { fact(n - 5) } else { 0 },
        None,
    ));
    if n >= 7 {
        let modulus = fact(n - 5);
        let residue = if matches!(n % 8, 0 | 7) { modulus / 2 } else { 0 };
        out.push(claim("a2-hamiltonian-congruence", n, None, format!("a2 mod {modulus}")).compare(
            t.a2_hamiltonian.rem_euclid(modulus),
            Relation::Eq,
            residue,
            None,
        ));
    }
    out
}

/// Lower and rectilinear upper bounds, maximum-value bounds, parities and
/// the existence of an odd Hamiltonian link.
pub fn bound_and_parity_reports(t: &SumTable) -> Vec<VerificationReport> {
    let n = t.n;
    let ni = n as i128;
    let base = fact(n) / fact(6);
    let mut out = Vec::new();

    for s in &t.splits {
        let pq = Some((s.p, s.q));
        let lower = if s.p == s.q { base } else { 2 * base };
        out.push(claim("lk2-split-lower-bound", n, pq, "lk2").compare(s.lk2, Relation::Ge, lower, None));
        let upper = claim("lk2-split-rectilinear-upper-bound", n, pq, "lk2");
        out.push(if t.rectilinear {
            upper.compare(s.lk2, Relation::Le, 3 * lower, None)
        } else {
            upper.skip(NOT_RECTILINEAR)
        });
    }
    out.push(claim("lk2-total-lower-bound", n, None, "lk2").compare(
        t.total_lk2(),
        Relation::Ge,
        (ni - 5) * base,
        None,
    ));
    let upper = claim("lk2-total-rectilinear-upper-bound", n, None, "lk2");
    out.push(if t.rectilinear {
        upper.compare(t.total_lk2(), Relation::Le, 3 * (ni - 5) * base, None)
    } else {
        upper.skip(NOT_RECTILINEAR)
    });
    out.push(claim("lk2-triangle-lower-bound", n, Some((3, 3)), "lk2").compare(
        t.s33,
        Relation::Ge,
        binomial(n, 6) as i128,
        None,
    ));

    if n == 6 {
        let range = claim("lk2-k6-rectilinear-range", n, Some((3, 3)), "lk2");
        out.push(if t.rectilinear {
            let status = if t.s33 == 1 || t.s33 == 3 { Status::Holds } else { Status::Violated };
            range.report(status, t.s33.to_string(), "{1,3}".into(), None)
        } else {
            range.skip(NOT_RECTILINEAR)
        });
    }

    for s in &t.splits {
        let pq = Some((s.p, s.q));
        let prod = (s.p * s.q) as i128;
        out.push(claim("max-lk-squared-bound", n, pq, "maxlk").compare(
            90 * s.max_abs_lk * s.max_abs_lk,
            Relation::Ge,
            prod,
            s.max_witness.clone(),
        ));
        let mut m = 1i128;
        while prod > 90 * m * m {
            m += 1;
        }
        out.push(claim("max-lk-threshold", n, pq, "maxlk").compare(
            s.max_abs_lk,
            Relation::Ge,
            m,
            s.max_witness.clone(),
        ));
    }

    if n == 6 {
        out.push(claim("lk-k6-parity", n, Some((3, 3)), "lk mod 2").compare(
            t.lk_33.rem_euclid(2),
            Relation::Eq,
            1,
            None,
        ));
    }
    if n == 7 {
        out.push(claim("a2-k7-parity", n, None, "a2 mod 2").compare(
            t.a2_hamiltonian.rem_euclid(2),
            Relation::Eq,
            1,
            None,
        ));
    }
    if n >= 7 {
        let total: i128 = t.splits.iter().map(|s| s.lk).sum();
        out.push(claim("lk-hamiltonian-parity", n, None, "lk mod 2").compare(
            total.rem_euclid(2),
            Relation::Eq,
            0,
            None,
        ));
        let count: i128 = t.splits.iter().map(|s| s.odd_count).sum();
        let witness = t.splits.iter().find_map(|s| s.odd_witness.clone());
        out.push(claim("lk-odd-hamiltonian-witness", n, None, "odd lk count").compare(
            count,
            Relation::Ge,
            1,
            witness,
        ));
    }

    let rect = |id: &'static str, stat: &str| claim(id, n, None, stat.to_string());
    let poly = (ni - 5) * (ni - 6);
    if t.rectilinear {
        out.push(rect("a2-hamiltonian-rectilinear-lower-bound", "a2").compare(
            2 * fact(6) * t.a2_hamiltonian,
            Relation::Ge,
            poly * fact(n - 1),
            None,
        ));
        out.push(rect("a2-max-rectilinear-bound", "max a2").compare(
            fact(6) * t.max_a2,
            Relation::Ge,
            poly,
            t.max_a2_witness.clone(),
        ));
        let threshold = rect("a2-max-rectilinear-threshold", "max a2");
        out.push(if poly > 0 {
            threshold.compare(t.max_a2, Relation::Ge, (poly - 1) / fact(6) + 1, t.max_a2_witness.clone())
        } else {
            threshold.skip("no threshold applies")
        });
        out.push(claim("lk-six-stick-dichotomy", n, Some((3, 3)), "maxlk").compare(
            t.max_abs_lk_33,
            Relation::Le,
            1,
            None,
        ));
        out.push(rect("a2-five-stick-triviality", "nonzero a2 count").compare(
            t.short_a2_nonzero.unwrap_or(0),
            Relation::Eq,
            0,
            None,
        ));
    } else {
        for id in [
            "a2-hamiltonian-rectilinear-lower-bound",
            "a2-max-rectilinear-bound",
            "a2-max-rectilinear-threshold",
            "lk-six-stick-dichotomy",
            "a2-five-stick-triviality",
        ] {
            out.push(rect(id, "").skip(NOT_RECTILINEAR));
        }
    }
    out
}

pub fn verify_identities(a: &Analyzer) -> Result<Vec<VerificationReport>> {
    Ok(identity_reports(&a.sum_table()?))
}

pub fn verify_congruences(a: &Analyzer) -> Result<Vec<VerificationReport>> {
    Ok(congruence_reports(&a.sum_table()?))
}

pub fn verify_bounds_and_parities(a: &Analyzer) -> Result<Vec<VerificationReport>> {
    Ok(bound_and_parity_reports(&a.sum_table()?))
}

/// Identities, then congruences, then bounds and parities.
pub fn verify_all(a: &Analyzer) -> Result<Vec<VerificationReport>> {
    let t = a.sum_table()?;
    let mut out = identity_reports(&t);
    out.extend(congruence_reports(&t));
    out.extend(bound_and_parity_reports(&t));
    Ok(out)
}

/// One-shot class sum on a fresh analyzer.
pub fn class_sum(e: &PLEmbedding, class: CycleClass, statistic: Statistic) -> Result<ClassSum> {
    Analyzer::new(e.clone())?.class_sum(class, statistic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{moment_curve, random_embedding};

    fn moment(n: usize) -> Analyzer {
        Analyzer::new(moment_curve(n, &(1..=n as i64).collect::<Vec<_>>()).unwrap()).unwrap()
    }

    #[test]
    fn statistic_parse_roundtrip() {
        for s in Statistic::ALL {
            assert_eq!(s.name().parse::<Statistic>().unwrap(), s);
        }
        assert!("lk3".parse::<Statistic>().is_err());
    }

    #[test]
    fn class_checks() {
        assert!(CycleClass::pair(4, 3).check(7).is_ok());
        assert_eq!(CycleClass::pair(4, 3), CycleClass::Pair { p: 3, q: 4 });
        assert!(CycleClass::pair(3, 5).check(7).is_err());
        assert!(CycleClass::knot(2).check(7).is_err());
        assert_eq!(CycleClass::hamiltonian_splits(9).len(), 2);
        assert!(CycleClass::hamiltonian_splits(5).is_empty());
    }

    #[test]
    fn statistic_must_match_class() {
        let a = moment(6);
        assert!(a.class_sum(CycleClass::knot(6), Statistic::Lk).is_err());
        assert!(a.class_sum(CycleClass::pair(3, 3), Statistic::A2).is_err());
    }

    #[test]
    fn moment_k6_values() {
        let a = moment(6);
        assert_eq!(a.class_sum(CycleClass::pair(3, 3), Statistic::Lk2).unwrap().value, 1);
        assert_eq!(a.class_sum(CycleClass::pair(3, 3), Statistic::MaxAbsLk).unwrap().value, 1);
        assert_eq!(a.class_sum(CycleClass::pair(3, 3), Statistic::Lk).unwrap().value.rem_euclid(2), 1);
    }

    #[test]
    fn triangle_only_k3() {
        let e = moment_curve(3, &[1, 2, 3]).unwrap();
        let a = Analyzer::new(e).unwrap();
        assert_eq!(a.class_sum(CycleClass::knot(3), Statistic::A2).unwrap().value, 0);
        assert!(a.sum_table().is_err());
    }

    #[test]
    fn moment_k7_reports_hold() {
        let a = moment(7);
        assert_eq!(a.class_sum(CycleClass::knot(7), Statistic::A2).unwrap().value, 1);
        for r in verify_all(&a).unwrap() {
            assert_eq!(r.status, Status::Holds, "{r:?}");
        }
    }

    #[test]
    fn random_k6_reports_hold() {
        let a = Analyzer::new(random_embedding(6, 3, 50).unwrap()).unwrap();
        for r in verify_all(&a).unwrap() {
            assert_ne!(r.status, Status::Violated, "{r:?}");
        }
    }

    #[test]
    fn corrupted_sum_is_violated() {
        let mut t = moment(7).sum_table().unwrap();
        t.splits[0].lk2 += 1;
        let reports = identity_reports(&t);
        let bad: Vec<_> = reports.iter().filter(|r| r.status == Status::Violated).collect();
        assert_eq!(bad.len(), 2);
        assert_eq!(bad[0].claim_id, "lk2-split-identity");
        assert_eq!(bad[0].lhs, "15");
        assert_eq!(bad[0].rhs, "14");
        assert!(congruence_reports(&t).iter().any(|r| r.status == Status::Violated));
    }

    #[test]
    fn bent_embedding_skips_rectilinear_claims() {
        use std::collections::BTreeMap;

        use crate::geometry::{Point3, Rational};
        use crate::graph::{EdgeId, VertexId};
        let base = moment_curve(6, &[1, 2, 3, 4, 5, 6]).unwrap();
        let v = |k| VertexId::new(k, 6).unwrap();
        let (p, q) = (base.vertex(v(1)), base.vertex(v(2)));
        let half = Rational::new(1.into(), 2.into());
        let mut mid = Point3::lerp(p, q, &half);
        mid.x += Rational::new(1.into(), 7.into());
        let mut bends = BTreeMap::new();
        bends.insert(EdgeId::between(v(1), v(2)), vec![mid]);
        let vertices = (1..=6).map(|k| base.vertex(v(k)).clone()).collect();
        let bent = PLEmbedding::new(6, vertices, bends).unwrap();
        let a = Analyzer::new(bent).unwrap();
        let reports = verify_all(&a).unwrap();
        let skipped: Vec<_> = reports.iter().filter(|r| r.status == Status::Skipped).collect();
        assert!(skipped.iter().any(|r| r.claim_id == "lk2-k6-rectilinear-range"));
        assert!(skipped.iter().all(|r| r.witness == NOT_RECTILINEAR || r.witness == "no threshold applies"));
        assert!(reports.iter().all(|r| r.status != Status::Violated));
    }

    #[test]
    fn linking_numbers_match_diagram_route() {
        let a = Analyzer::new(random_embedding(7, 11, 40).unwrap()).unwrap();
        for (pair, lk) in a.linking_numbers(3, 4).unwrap() {
            assert_eq!(crate::invariants::diagram_linking_number(a.scene(), &pair).unwrap(), lk);
        }
    }
}
