//! Moment-curve and seeded random rectilinear embeddings.

use std::collections::BTreeMap;
use std::fmt;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{validate_embedding, PLEmbedding, Point3};
use crate::graph::{EdgeId, VertexId};

/// Attempts before `random_embedding` gives up.
pub const DEFAULT_RESAMPLE_BUDGET: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Moment { n: usize, params: Vec<i64> },
    Random { n: usize, seed: u64, bound: i64 },
}

impl GeneratorSpec {
    /// Moment curve with parameters `1..=n`.
    pub fn standard(n: usize) -> GeneratorSpec {
        GeneratorSpec::Moment { n, params: (1..=n as i64).collect() }
    }

    pub fn n(&self) -> usize {
        match self {
            GeneratorSpec::Moment { n, .. } | GeneratorSpec::Random { n, .. } => *n,
        }
    }

    pub fn generate(&self) -> Result<PLEmbedding> {
        match self {
            GeneratorSpec::Moment { n, params } => moment_curve(*n, params),
            GeneratorSpec::Random { n, seed, bound } => random_embedding(*n, *seed, *bound),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Moment { n, params } => {
                let t: Vec<String> = params.iter().map(i64::to_string).collect();
                write!(f, "moment n={n} t={}", t.join(","))
            }
            GeneratorSpec::Random { n, seed, bound } => write!(f, "random n={n} seed={seed} bound={bound}"),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if !(3..=crate::graph::MAX_N).contains(&n) {
        return Err(Error::Parameter(format!("n = {n} outside 3..={}", crate::graph::MAX_N)));
    }
    Ok(())
}

/// Vertex `i` at `(tᵢ, tᵢ², tᵢ³)`, straight edges. Validity is checked, not
/// assumed.
pub fn moment_curve(n: usize, t: &[i64]) -> Result<PLEmbedding> {
    check_n(n)?;
    if t.len() != n {
        return Err(Error::Parameter(format!("expected {n} parameters, got {}", t.len())));
    }
    if t.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter("moment parameters must be strictly increasing".into()));
    }
    let cube = |v: i64| -> Result<i64> {
        v.checked_mul(v)
            .and_then(|s| s.checked_mul(v))
            .ok_or_else(|| Error::Parameter(format!("parameter {v} too large")))
    };
    let mut vertices = Vec::with_capacity(n);
    for &v in t {
        vertices.push(Point3::from_ints(v, v * v, cube(v)?));
    }
    let e = PLEmbedding::rectilinear(vertices)?;
    let verdict = validate_embedding(&e);
    if !verdict.is_valid() {
        return Err(Error::InvalidEmbedding(verdict.to_string()));
    }
    Ok(e)
}

/// Uniform integer in `[-bound, bound]` by rejection on 64-bit draws.
fn uniform(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let span = 2 * bound as u128 + 1;
    let zone = (1u128 << 64) - (1u128 << 64) % span;
    loop {
        let x = rng.next_u64() as u128;
        if x < zone {
            return (x % span) as i64 - bound;
        }
    }
}

/// Rectilinear embedding with vertices drawn from `[-bound, bound]³`.
///
/// The stream is `ChaCha8Rng::seed_from_u64(seed)`; each attempt draws
/// x, y, z for vertices 1..n in order, and a failed attempt continues the
/// same stream.
pub fn random_embedding(n: usize, seed: u64, bound: i64) -> Result<PLEmbedding> {
    random_embedding_with_budget(n, seed, bound, DEFAULT_RESAMPLE_BUDGET)
}

pub fn random_embedding_with_budget(n: usize, seed: u64, bound: i64, budget: usize) -> Result<PLEmbedding> {
    check_n(n)?;
    if bound < n as i64 {
        return Err(Error::Parameter(format!("bound {bound} smaller than n = {n}")));
    }
    if bound > 1 << 30 {
        return Err(Error::Parameter(format!("bound {bound} too large")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let vertices: Vec<Point3> = (0..n)
            .map(|_| {
                let x = uniform(&mut rng, bound);
                let y = uniform(&mut rng, bound);
                let z = uniform(&mut rng, bound);
                Point3::from_ints(x, y, z)
            })
            .collect();
        let e = PLEmbedding::rectilinear(vertices)?;
        if validate_embedding(&e).is_valid() {
            return Ok(e);
        }
    }
    Err(Error::GenerationFailed(budget))
}

/// `K_3` whose Hamiltonian cycle `[1 2 3]` traces the closed polygon
/// `points` in order. Vertices sit at indices `0`, `m/3` and `2m/3`; the rest
/// become bends.
pub fn closed_polygon(points: &[Point3]) -> Result<PLEmbedding> {
    let m = points.len();
    if m < 3 {
        return Err(Error::Parameter(format!("polygon needs at least 3 points, got {m}")));
    }
    let (a, b) = (m / 3, 2 * m / 3);
    let v = |k| VertexId::new(k, 3).unwrap();
    let mut bends = BTreeMap::new();
    bends.insert(EdgeId::between(v(1), v(2)), points[1..a].to_vec());
    bends.insert(EdgeId::between(v(2), v(3)), points[a + 1..b].to_vec());
    bends.insert(EdgeId::between(v(1), v(3)), points[b + 1..].iter().rev().cloned().collect());
    let vertices = vec![points[0].clone(), points[a].clone(), points[b].clone()];
    let e = PLEmbedding::new(3, vertices, bends)?;
    let verdict = validate_embedding(&e);
    if !verdict.is_valid() {
        return Err(Error::InvalidEmbedding(verdict.to_string()));
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnotCurve {
    Trefoil,
    FigureEight,
}

/// Standard parametrization sampled at `samples` points, scaled and rounded
/// to integers, as a [`closed_polygon`].
pub fn sampled_knot(curve: KnotCurve, samples: usize, scale: f64) -> Result<PLEmbedding> {
    use std::f64::consts::TAU;
    let points: Vec<Point3> = (0..samples)
        .map(|k| {
            let t = TAU * k as f64 / samples as f64;
            let (x, y, z) = match curve {
                KnotCurve::Trefoil => (t.sin() + 2.0 * (2.0 * t).sin(), t.cos() - 2.0 * (2.0 * t).cos(), -(3.0 * t).sin()),
                KnotCurve::FigureEight => {
                    let r = 2.0 + (2.0 * t).cos();
                    (r * (3.0 * t).cos(), r * (3.0 * t).sin(), (4.0 * t).sin())
                }
            };
            let round = |c: f64| (c * scale).round() as i64;
            Point3::from_ints(round(x), round(y), round(z))
        })
        .collect();
    closed_polygon(&points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_curve_valid_up_to_eleven() {
        for n in 3..=11 {
            let e = moment_curve(n, &(1..=n as i64).collect::<Vec<_>>()).unwrap();
            assert!(e.is_rectilinear());
            assert_eq!(e.n(), n);
        }
    }

    #[test]
    fn moment_rejects_bad_parameters() {
        assert!(matches!(moment_curve(4, &[1, 2, 2, 3]), Err(Error::Parameter(_))));
        assert!(matches!(moment_curve(4, &[1, 2, 3]), Err(Error::Parameter(_))));
        assert!(matches!(moment_curve(2, &[1, 2]), Err(Error::Parameter(_))));
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_embedding(6, 1, 100).unwrap();
        let b = random_embedding(6, 1, 100).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
        assert_ne!(a, random_embedding(6, 2, 100).unwrap());
    }

    #[test]
    fn random_respects_bound() {
        let e = random_embedding(8, 7, 8).unwrap();
        let b = crate::geometry::Rational::from_integer(8.into());
        for p in e.points() {
            for c in [&p.x, &p.y, &p.z] {
                assert!(c.is_integer() && *c <= b && *c >= -b.clone());
            }
        }
    }

    #[test]
    fn random_rejects_small_bound() {
        assert!(matches!(random_embedding(6, 1, 5), Err(Error::Parameter(_))));
    }

    #[test]
    fn tiny_budget_can_fail() {
        assert!(matches!(random_embedding_with_budget(6, 1, 100, 0), Err(Error::GenerationFailed(0))));
    }

    #[test]
    fn uniform_covers_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut seen = [false; 7];
        for _ in 0..500 {
            let v = uniform(&mut rng, 3);
            seen[(v + 3) as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn sampled_knots_are_valid_k3() {
        for curve in [KnotCurve::Trefoil, KnotCurve::FigureEight] {
            let e = sampled_knot(curve, 60, 100.0).unwrap();
            assert_eq!(e.n(), 3);
            assert!(!e.is_rectilinear());
        }
    }

    #[test]
    fn polygon_needs_three_points() {
        assert!(closed_polygon(&[Point3::from_ints(0, 0, 0), Point3::from_ints(1, 0, 0)]).is_err());
    }
}
