//! Cycles and disjoint cycle pairs of the complete graph `K_n`.
//!
//! Vertices are numbered `1..=n`. Every cycle is stored in a canonical form
//! (minimum vertex first, smaller of its two neighbours second), so two
//! cycles are the same subgraph exactly when their vertex sequences are equal.
//! Enumeration output is always in lexicographic order of these sequences.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported `n`. Edge sets of `K_16` fit in a `u128` mask.
pub const MAX_N: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexId(u8);

impl VertexId {
    pub fn new(value: usize, n: usize) -> Result<Self> {
        if value == 0 || value > n || n > MAX_N {
            return Err(Error::MalformedCycle(format!(
                "vertex {value} outside 1..={n}"
            )));
        }
        Ok(VertexId(value as u8))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Index of the edge `{i, j}`, independent of `n`: edges of `K_n` occupy
/// `0..n(n-1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(u8);

impl EdgeId {
    pub fn between(a: VertexId, b: VertexId) -> EdgeId {
        let (i, j) = if a < b { (a.get(), b.get()) } else { (b.get(), a.get()) };
        debug_assert!(i != j);
        EdgeId(((j - 1) * (j - 2) / 2 + (i - 1)) as u8)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> EdgeId {
        EdgeId(index as u8)
    }

    /// Endpoints `(i, j)` with `i < j`.
    pub fn endpoints(self) -> (VertexId, VertexId) {
        let k = self.index();
        let mut j = 2;
        while j * (j - 1) / 2 <= k {
            j += 1;
        }
        let i = k - (j - 1) * (j - 2) / 2 + 1;
        (VertexId(i as u8), VertexId(j as u8))
    }

    #[inline]
    pub fn bit(self) -> u128 {
        1u128 << self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.endpoints();
        write!(f, "{i}-{j}")
    }
}

pub fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    vertices: Vec<VertexId>,
}

impl Cycle {
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges in traversal order, each with `true` when it is traversed from
    /// its smaller to its larger endpoint.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, bool)> + '_ {
        let p = self.vertices.len();
        (0..p).map(move |k| {
            let a = self.vertices[k];
            let b = self.vertices[(k + 1) % p];
            (EdgeId::between(a, b), a < b)
        })
    }

    pub fn edge_mask(&self) -> u128 {
        self.edges().fold(0, |m, (e, _)| m | e.bit())
    }

    pub fn vertex_mask(&self) -> u32 {
        self.vertices.iter().fold(0, |m, v| m | (1 << v.get()))
    }

    /// The same cycle traversed in the opposite direction, starting at the
    /// same vertex. Not canonical.
    pub fn reversed_sequence(&self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.len());
        out.push(self.vertices[0]);
        out.extend(self.vertices[1..].iter().rev());
        out
    }

    fn from_canonical(vertices: Vec<VertexId>) -> Cycle {
        debug_assert!(vertices.len() >= 3 && vertices[1] < vertices[vertices.len() - 1]);
        Cycle { vertices }
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.vertices.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclePair {
    pub first: Cycle,
    pub second: Cycle,
}

impl CyclePair {
    /// Normalizes the order of two vertex-disjoint cycles.
    pub fn new(a: Cycle, b: Cycle) -> Result<CyclePair> {
        if a.vertex_mask() & b.vertex_mask() != 0 {
            return Err(Error::NotDisjoint);
        }
        let swap = match a.len().cmp(&b.len()) {
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => b < a,
        };
        Ok(if swap {
            CyclePair { first: b, second: a }
        } else {
            CyclePair { first: a, second: b }
        })
    }
}

impl fmt::Display for CyclePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.first, self.second)
    }
}

/// Canonical form of a cycle given as a closed vertex walk.
pub fn canonicalize(raw: &[VertexId]) -> Result<Cycle> {
    let p = raw.len();
    if p < 3 {
        return Err(Error::MalformedCycle(format!("length {p} < 3")));
    }
    let mut seen = 0u32;
    for v in raw {
        let bit = 1u32 << v.get();
        if seen & bit != 0 {
            return Err(Error::MalformedCycle(format!("vertex {v} repeated")));
        }
        seen |= bit;
    }
    let (start, _) = raw.iter().enumerate().min_by_key(|(_, v)| **v).unwrap();
    let next = raw[(start + 1) % p];
    let prev = raw[(start + p - 1) % p];
    let vertices = if next < prev {
        (0..p).map(|k| raw[(start + k) % p]).collect()
    } else {
        (0..p).map(|k| raw[(start + p - k) % p]).collect()
    };
    Ok(Cycle::from_canonical(vertices))
}

/// Convenience for tests and bindings: canonicalize plain integers.
pub fn cycle_from(raw: &[usize], n: usize) -> Result<Cycle> {
    let ids = raw
        .iter()
        .map(|&v| VertexId::new(v, n))
        .collect::<Result<Vec<_>>>()?;
    canonicalize(&ids)
}

/// All canonical `p`-cycles whose vertices come from `pool` (sorted ascending),
/// in lexicographic order.
fn cycles_on(pool: &[VertexId], p: usize, out: &mut Vec<Cycle>) {
    if p < 3 || pool.len() < p {
        return;
    }
    let mut seq = Vec::with_capacity(p);
    let mut used = vec![false; pool.len()];
    for s in 0..=pool.len() - p {
        seq.push(pool[s]);
        used[s] = true;
        extend(pool, p, s, &mut seq, &mut used, out);
        used[s] = false;
        seq.pop();
    }

    fn extend(
        pool: &[VertexId],
        p: usize,
        start: usize,
        seq: &mut Vec<VertexId>,
        used: &mut [bool],
        out: &mut Vec<Cycle>,
    ) {
        if seq.len() == p {
            if seq[1] < seq[p - 1] {
                out.push(Cycle::from_canonical(seq.clone()));
            }
            return;
        }
        for k in start + 1..pool.len() {
            if used[k] {
                continue;
            }
            // The last vertex must exceed the second one; prune when the
            // second vertex is already the largest remaining choice.
            if seq.len() == p - 1 && pool[k] < seq[1] {
                continue;
            }
            used[k] = true;
            seq.push(pool[k]);
            extend(pool, p, start, seq, used, out);
            seq.pop();
            used[k] = false;
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::InvalidClass(format!("n = {n} exceeds {MAX_N}")));
    }
    Ok(())
}

fn all_vertices(n: usize) -> Vec<VertexId> {
    (1..=n).map(|v| VertexId(v as u8)).collect()
}

/// Every `p`-cycle of `K_n` once, canonical, in lexicographic order.
pub fn enumerate_cycles(n: usize, p: usize) -> Result<Vec<Cycle>> {
    check_n(n)?;
    if p < 3 || p > n {
        return Err(Error::InvalidClass(format!("p = {p} for n = {n}")));
    }
    let mut out = Vec::new();
    cycles_on(&all_vertices(n), p, &mut out);
    Ok(out)
}

/// Every unordered pair of vertex-disjoint cycles of lengths `p` and `q`,
/// normalized (shorter cycle first, ties broken lexicographically) and
/// sorted lexicographically.
pub fn enumerate_disjoint_pairs(n: usize, p: usize, q: usize) -> Result<Vec<CyclePair>> {
    check_n(n)?;
    let (p, q) = if p <= q { (p, q) } else { (q, p) };
    if p < 3 || p + q > n {
        return Err(Error::InvalidClass(format!("(p, q) = ({p}, {q}) for n = {n}")));
    }
    let firsts = enumerate_cycles(n, p)?;
    let vertices = all_vertices(n);
    let mut out = Vec::new();
    let mut seconds = Vec::new();
    for first in firsts {
        let mask = first.vertex_mask();
        let rest: Vec<VertexId> = vertices
            .iter()
            .copied()
            .filter(|v| mask & (1 << v.get()) == 0)
            .collect();
        seconds.clear();
        cycles_on(&rest, q, &mut seconds);
        for second in &seconds {
            if p == q && *second < first {
                continue;
            }
            out.push(CyclePair {
                first: first.clone(),
                second: second.clone(),
            });
        }
    }
    Ok(out)
}

pub fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Closed-form sizes of the cycle classes of `K_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleClassCounts {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    /// `|Γ_p|`
    pub cycle_count: u128,
    /// `|Γ_{p,q}|`, zero when `p + q > n`.
    pub pair_count: u128,
}

impl CycleClassCounts {
    pub fn new(n: usize, p: usize, q: usize) -> CycleClassCounts {
        let cycle_count = if p >= 3 && p <= n {
            binomial(n, p) * factorial(p - 1) / 2
        } else {
            0
        };
        let pair_count = if p < 3 || q < 3 || p + q > n {
            0
        } else {
            let base = binomial(n, p)
                * binomial(n - p, q)
                * (factorial(p - 1) / 2)
                * (factorial(q - 1) / 2);
            if p == q {
                base / 2
            } else {
                base
            }
        };
        CycleClassCounts { n, p, q, cycle_count, pair_count }
    }

    /// Hamiltonian pair count `n!/(8p²)` or `n!/(4pq)`; `n` must equal `p + q`.
    pub fn hamiltonian_pair_count(p: usize, q: usize) -> u128 {
        let n = p + q;
        if p == q {
            factorial(n) / (8 * (p * p) as u128)
        } else {
            factorial(n) / (4 * (p * q) as u128)
        }
    }

    /// Hamiltonian cycle count `(n-1)!/2`.
    pub fn hamiltonian_cycle_count(n: usize) -> u128 {
        factorial(n - 1) / 2
    }
}
