//! Generic projection directions and the crossing diagram of a whole
//! embedding under one projection.
//!
//! The viewer sits far out along the direction `d` and looks back at the
//! embedding. The projection plane is spanned by `u = a × d` and `v = d × u`
//! (for a coordinate axis `a` not parallel to `d`), so `u × v` points along
//! `d`: the plane is seen with its standard orientation. The strand with the
//! larger height `p · d` is the over strand. A crossing is positive when the
//! 2D cross product `over × under` of the strand directions is positive, i.e.
//! the under strand passes right-to-left beneath the over strand.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::predicates::{cross2, on_segment2, orient2d, sign, Point2, Rational};
use super::{PLEmbedding, Point3, PointId, Segment, SegmentId};
use crate::error::{Error, Result};
use crate::graph::EdgeId;

pub const DEFAULT_DIRECTION_BUDGET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Direction {
    pub dx: Rational,
    pub dy: Rational,
    pub dz: Rational,
}

impl Direction {
    pub fn new(dx: Rational, dy: Rational, dz: Rational) -> Result<Direction> {
        if dx.is_zero() && dy.is_zero() && dz.is_zero() {
            return Err(Error::Parameter("projection direction must be nonzero".into()));
        }
        Ok(Direction { dx, dy, dz })
    }

    pub fn from_ints(dx: i64, dy: i64, dz: i64) -> Result<Direction> {
        let q = |v: i64| Rational::from_integer(BigInt::from(v));
        Direction::new(q(dx), q(dy), q(dz))
    }

    /// The fixed search order: `(0,0,1)`, then `(1, t, t²)` for `t = 1, 2, …`.
    pub fn candidates(budget: usize) -> impl Iterator<Item = Direction> {
        (0..budget).map(|k| {
            if k == 0 {
                Direction::from_ints(0, 0, 1).unwrap()
            } else {
                let t = k as i64;
                Direction::from_ints(1, t, t * t).unwrap()
            }
        })
    }

    fn vector(&self) -> Point3 {
        Point3::new(self.dx.clone(), self.dy.clone(), self.dz.clone())
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.dx, self.dy, self.dz)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let den: BigInt = b.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rational::new(a.trim().parse().ok()?, den))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for Direction {
    type Err = Error;

    /// `dx,dy,dz`, each an integer or `a/b`.
    fn from_str(s: &str) -> Result<Direction> {
        let parts: Vec<&str> = s.split(',').collect();
        let bad = || Error::Parameter(format!("bad direction {s:?}; expected dx,dy,dz with a/b rationals"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let q: Vec<Rational> = parts.iter().map(|p| parse_rational(p).ok_or_else(bad)).collect::<Result<_>>()?;
        Direction::new(q[0].clone(), q[1].clone(), q[2].clone())
    }
}

/// A failed genericity condition for a projection direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenericityViolation {
    /// (a) a segment parallel to the direction
    ParallelSegment { segment: SegmentId },
    /// (b) two points project to the same point
    CoincidentProjections { first: PointId, second: PointId },
    /// (c) a projected point on a projected segment it does not bound
    PointOnSegment { point: PointId, segment: SegmentId },
    /// (d) three or more segments through one projected point
    ConcurrentSegments { segments: Vec<SegmentId> },
    /// (e) a crossing at a segment endpoint
    NonInteriorCrossing { first: SegmentId, second: SegmentId },
    /// Two segments meet in space, so the input is not an embedding.
    SegmentsMeet { first: SegmentId, second: SegmentId },
}

impl GenericityViolation {
    pub fn condition(&self) -> &'static str {
        match self {
            GenericityViolation::ParallelSegment { .. } => "(a) segment parallel to direction",
            GenericityViolation::CoincidentProjections { .. } => "(b) coincident projected points",
            GenericityViolation::PointOnSegment { .. } => "(c) projected point on projected segment",
            GenericityViolation::ConcurrentSegments { .. } => "(d) concurrent projected segments",
            GenericityViolation::NonInteriorCrossing { .. } => "(e) non-interior crossing",
            GenericityViolation::SegmentsMeet { .. } => "segments meet in space",
        }
    }
}

impl fmt::Display for GenericityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.condition())?;
        match self {
            GenericityViolation::ParallelSegment { segment } => write!(f, "{segment}"),
            GenericityViolation::CoincidentProjections { first, second } => {
                write!(f, "{first} and {second}")
            }
            GenericityViolation::PointOnSegment { point, segment } => write!(f, "{point} on {segment}"),
            GenericityViolation::ConcurrentSegments { segments } => {
                let names: Vec<String> = segments.iter().map(|s| s.to_string()).collect();
                write!(f, "{}", names.join(", "))
            }
            GenericityViolation::NonInteriorCrossing { first, second }
            | GenericityViolation::SegmentsMeet { first, second } => write!(f, "{first} and {second}"),
        }
    }
}

/// Position of a crossing along an edge: segment index plus the exact
/// parameter in `(0, 1)` along that segment.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegmentLocator {
    pub edge: EdgeId,
    pub segment: usize,
    pub param: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub over: SegmentLocator,
    pub under: SegmentLocator,
    /// Sign with both edges oriented from smaller to larger endpoint.
    pub sign: i8,
}

/// One passage of an edge through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgePassage {
    pub crossing: u32,
    pub over: bool,
    /// The edge carrying the other strand.
    pub other: EdgeId,
    pub sign: i8,
}

/// Crossing data of the whole embedding under one generic projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SceneDiagram {
    n: usize,
    direction: Direction,
    crossings: Vec<Crossing>,
    per_edge: Vec<Vec<EdgePassage>>,
}

impl SceneDiagram {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn direction(&self) -> &Direction {
        &self.direction
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Passages along `edge` ordered from its smaller endpoint to its larger.
    pub fn passages(&self, edge: EdgeId) -> &[EdgePassage] {
        &self.per_edge[edge.index()]
    }
}

struct Projected {
    flat: Vec<Point2>,
    height: Vec<Rational>,
}

fn project(e: &PLEmbedding, d: &Direction) -> Projected {
    let dv = d.vector();
    let abs = [dv.x.abs(), dv.y.abs(), dv.z.abs()];
    let axis = (0..3).min_by(|&a, &b| abs[a].cmp(&abs[b])).unwrap();
    let unit = |k: usize| {
        let one = Rational::one();
        let zero = Rational::zero();
        match k {
            0 => Point3::new(one, zero.clone(), zero),
            1 => Point3::new(zero.clone(), one, zero),
            _ => Point3::new(zero.clone(), zero, one),
        }
    };
    let u = unit(axis).cross(&dv);
    let v = dv.cross(&u);
    let flat = e
        .points()
        .iter()
        .map(|p| Point2 { x: p.dot(&u), y: p.dot(&v) })
        .collect();
    let height = e.points().iter().map(|p| p.dot(&dv)).collect();
    Projected { flat, height }
}

struct RawCrossing {
    first: usize,
    second: usize,
    t_first: Rational,
    t_second: Rational,
    first_over: bool,
    sign: i8,
    at: Point2,
}

fn lerp2(a: &Point2, b: &Point2, t: &Rational) -> Point2 {
    Point2 { x: &a.x + (&b.x - &a.x) * t, y: &a.y + (&b.y - &a.y) * t }
}

fn lerp1(a: &Rational, b: &Rational, t: &Rational) -> Rational {
    a + (b - a) * t
}

fn crossing_of(
    proj: &Projected,
    s: &Segment,
    t: &Segment,
    i: usize,
    j: usize,
) -> std::result::Result<Option<RawCrossing>, GenericityViolation> {
    let (a, b) = (&proj.flat[s.start], &proj.flat[s.end]);
    let (c, d) = (&proj.flat[t.start], &proj.flat[t.end]);
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    let strictly_opposite =
        |x: &Rational, y: &Rational| sign(x) != Ordering::Equal && sign(y) != Ordering::Equal && sign(x) != sign(y);
    if !(strictly_opposite(&o1, &o2) && strictly_opposite(&o3, &o4)) {
        return Ok(None);
    }
    let ts = &o3 / (&o3 - &o4);
    let tt = &o1 / (&o1 - &o2);
    if ts <= Rational::zero() || ts >= Rational::one() || tt <= Rational::zero() || tt >= Rational::one() {
        return Err(GenericityViolation::NonInteriorCrossing { first: s.id, second: t.id });
    }
    let hs = lerp1(&proj.height[s.start], &proj.height[s.end], &ts);
    let ht = lerp1(&proj.height[t.start], &proj.height[t.end], &tt);
    let first_over = match hs.cmp(&ht) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => return Err(GenericityViolation::SegmentsMeet { first: s.id, second: t.id }),
    };
    let ds = (&b.x - &a.x, &b.y - &a.y);
    let dt = (&d.x - &c.x, &d.y - &c.y);
    let (over, under) = if first_over { (ds, dt) } else { (dt, ds) };
    let det = cross2(&over.0, &over.1, &under.0, &under.1);
    let sign = if det.is_positive() { 1 } else { -1 };
    Ok(Some(RawCrossing {
        first: i,
        second: j,
        at: lerp2(a, b, &ts),
        t_first: ts,
        t_second: tt,
        first_over,
        sign,
    }))
}

/// Builds the crossing diagram, checking every genericity condition.
pub fn build_scene_diagram(e: &PLEmbedding, d: &Direction) -> Result<SceneDiagram> {
    scene_or_violation(e, d).map_err(Error::NotGeneric)
}

fn scene_or_violation(
    e: &PLEmbedding,
    d: &Direction,
) -> std::result::Result<SceneDiagram, GenericityViolation> {
    let segments = e.segments();
    let points = e.points();
    let ids = e.point_ids();
    let dv = d.vector();

    // (a)
    for s in &segments {
        if (&points[s.end] - &points[s.start]).cross(&dv).is_zero() {
            return Err(GenericityViolation::ParallelSegment { segment: s.id });
        }
    }
    let proj = project(e, d);

    // (b)
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| proj.flat[a].cmp(&proj.flat[b]).then(a.cmp(&b)));
    if let Some(w) = order.windows(2).find(|w| proj.flat[w[0]] == proj.flat[w[1]]) {
        return Err(GenericityViolation::CoincidentProjections { first: ids[w[0]], second: ids[w[1]] });
    }

    // (c)
    for (k, p) in proj.flat.iter().enumerate() {
        for s in &segments {
            if s.start != k && s.end != k && on_segment2(p, &proj.flat[s.start], &proj.flat[s.end]) {
                return Err(GenericityViolation::PointOnSegment { point: ids[k], segment: s.id });
            }
        }
    }

    // Segments sharing an endpoint cannot cross once (b) and (c) hold.
    let pairs: Vec<(usize, usize)> = (0..segments.len())
        .flat_map(|i| (i + 1..segments.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            let (s, t) = (&segments[i], &segments[j]);
            s.start != t.start && s.start != t.end && s.end != t.start && s.end != t.end
        })
        .collect();
    let found: Vec<Option<RawCrossing>> = pairs
        .par_iter()
        .map(|&(i, j)| crossing_of(&proj, &segments[i], &segments[j], i, j))
        .collect::<std::result::Result<_, _>>()?;
    let raw: Vec<RawCrossing> = found.into_iter().flatten().collect();

    // (d)/(e): crossing points pairwise distinct.
    let mut by_point: Vec<usize> = (0..raw.len()).collect();
    by_point.sort_by(|&a, &b| raw[a].at.cmp(&raw[b].at).then(a.cmp(&b)));
    if let Some(w) = by_point.windows(2).find(|w| raw[w[0]].at == raw[w[1]].at) {
        let mut segs: Vec<SegmentId> = [raw[w[0]].first, raw[w[0]].second, raw[w[1]].first, raw[w[1]].second]
            .iter()
            .map(|&k| segments[k].id)
            .collect();
        segs.sort();
        segs.dedup();
        return Err(GenericityViolation::ConcurrentSegments { segments: segs });
    }

    let mut crossings = Vec::with_capacity(raw.len());
    let mut per_edge: Vec<Vec<(usize, Rational, EdgePassage)>> = vec![Vec::new(); e.edge_count()];
    for (k, r) in raw.into_iter().enumerate() {
        let (s, t) = (&segments[r.first], &segments[r.second]);
        let loc_s = SegmentLocator { edge: s.id.edge, segment: s.id.index, param: r.t_first };
        let loc_t = SegmentLocator { edge: t.id.edge, segment: t.id.index, param: r.t_second };
        let (over, under) = if r.first_over { (loc_s, loc_t) } else { (loc_t, loc_s) };
        let id = k as u32;
        per_edge[over.edge.index()].push((
            over.segment,
            over.param.clone(),
            EdgePassage { crossing: id, over: true, other: under.edge, sign: r.sign },
        ));
        per_edge[under.edge.index()].push((
            under.segment,
            under.param.clone(),
            EdgePassage { crossing: id, over: false, other: over.edge, sign: r.sign },
        ));
        crossings.push(Crossing { over, under, sign: r.sign });
    }
    let per_edge = per_edge
        .into_iter()
        .map(|mut list| {
            list.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
            list.into_iter().map(|(_, _, p)| p).collect()
        })
        .collect();
    Ok(SceneDiagram { n: e.n(), direction: d.clone(), crossings, per_edge })
}

/// First direction from the fixed candidate sequence satisfying every
/// genericity condition.
pub fn find_generic_direction(e: &PLEmbedding) -> Result<Direction> {
    generic_scene(e, DEFAULT_DIRECTION_BUDGET).map(|s| s.direction.clone())
}

/// Scene diagram under the first generic candidate direction.
pub fn generic_scene(e: &PLEmbedding, budget: usize) -> Result<SceneDiagram> {
    let mut last = None;
    for d in Direction::candidates(budget) {
        match scene_or_violation(e, &d) {
            Ok(scene) => return Ok(scene),
            Err(v @ GenericityViolation::SegmentsMeet { .. }) => {
                return Err(Error::InvalidEmbedding(v.to_string()))
            }
            Err(v) => last = Some(v),
        }
    }
    Err(Error::NoGenericDirection {
        tried: budget,
        last: last.unwrap_or(GenericityViolation::ConcurrentSegments { segments: Vec::new() }),
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::graph::VertexId;

    fn moment(n: i64) -> PLEmbedding {
        PLEmbedding::rectilinear((1..=n).map(|t| Point3::from_ints(t, t * t, t * t * t)).collect())
            .unwrap()
    }

    /// Two disjoint straight edges packaged as K_4 with far-away extra edges
    /// is awkward; instead use K_2 pairs directly through a 4-vertex graph
    /// whose only crossing is the one under test.
    fn skew_pair() -> PLEmbedding {
        // Vertices 1,2 carry the over segment; 3,4 the under segment.
        // Edges 1-3, 1-4, 2-3, 2-4 are the other K_4 edges; none of them
        // crosses 1-2 or 3-4 in the xy-projection except at shared vertices.
        PLEmbedding::rectilinear(vec![
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(2, 2, 0),
            Point3::from_ints(0, 2, -1),
            Point3::from_ints(2, 0, -1),
        ])
        .unwrap()
    }

    #[test]
    fn hand_computed_crossing_sign() {
        let e = skew_pair();
        let d = Direction::from_ints(0, 0, 1).unwrap();
        let scene = build_scene_diagram(&e, &d).unwrap();
        let v = |k| VertexId::new(k, 4).unwrap();
        let e12 = EdgeId::between(v(1), v(2));
        let e34 = EdgeId::between(v(3), v(4));
        let c: Vec<&Crossing> = scene
            .crossings()
            .iter()
            .filter(|c| c.over.edge == e12 && c.under.edge == e34)
            .collect();
        assert_eq!(c.len(), 1);
        // over (2,2), under (2,-2): 2·(-2) - 2·2 = -8 < 0.
        assert_eq!(c[0].sign, -1);
        assert_eq!(c[0].over.param, Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn vertical_edge_rejects_first_candidate() {
        let e = PLEmbedding::rectilinear(vec![
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(0, 0, 5),
            Point3::from_ints(3, 1, 2),
        ])
        .unwrap();
        let err = build_scene_diagram(&e, &Direction::from_ints(0, 0, 1).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotGeneric(GenericityViolation::ParallelSegment { .. })));
        assert_eq!(find_generic_direction(&e).unwrap(), Direction::from_ints(1, 1, 1).unwrap());
    }

    #[test]
    fn planar_triangle_accepts_vertical_view() {
        let e = PLEmbedding::rectilinear(vec![
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(4, 0, 0),
            Point3::from_ints(1, 3, 0),
        ])
        .unwrap();
        let scene = generic_scene(&e, DEFAULT_DIRECTION_BUDGET).unwrap();
        assert_eq!(scene.direction(), &Direction::from_ints(0, 0, 1).unwrap());
        assert!(scene.crossings().is_empty());
    }

    #[test]
    fn moment_k6_scene_is_deterministic() {
        let e = moment(6);
        let a = generic_scene(&e, DEFAULT_DIRECTION_BUDGET).unwrap();
        let b = generic_scene(&e, DEFAULT_DIRECTION_BUDGET).unwrap();
        assert_eq!(a, b);
        for c in a.crossings() {
            assert!(c.over.param > Rational::zero() && c.over.param < Rational::one());
        }
        // Each crossing appears once as over and once as under.
        let mut seen = vec![(0, 0); a.crossings().len()];
        for k in 0..e.edge_count() {
            for p in a.passages(EdgeId::from_index(k)) {
                if p.over {
                    seen[p.crossing as usize].0 += 1;
                } else {
                    seen[p.crossing as usize].1 += 1;
                }
            }
        }
        assert!(seen.iter().all(|&s| s == (1, 1)));
    }

    #[test]
    fn rescaling_preserves_scene_signs() {
        let e = moment(6);
        let k = Rational::new(7.into(), 3.into());
        let scaled = PLEmbedding::new(6, e.points().iter().map(|p| p.scale(&k)).collect(), BTreeMap::new())
            .unwrap();
        let a = generic_scene(&e, DEFAULT_DIRECTION_BUDGET).unwrap();
        let b = generic_scene(&scaled, DEFAULT_DIRECTION_BUDGET).unwrap();
        assert_eq!(a.direction(), b.direction());
        let sig = |s: &SceneDiagram| {
            s.crossings()
                .iter()
                .map(|c| (c.over.clone(), c.under.clone(), c.sign))
                .collect::<Vec<_>>()
        };
        assert_eq!(sig(&a), sig(&b));
    }

    #[test]
    fn concurrent_projection_detected() {
        // Three edges through (0,0) in the xy-projection at different heights.
        let e = PLEmbedding::rectilinear(vec![
            Point3::from_ints(-2, 0, 0),
            Point3::from_ints(2, 0, 0),
            Point3::from_ints(0, -2, 1),
            Point3::from_ints(0, 2, 1),
            Point3::from_ints(-2, -2, 2),
            Point3::from_ints(2, 2, 2),
        ])
        .unwrap();
        let err = build_scene_diagram(&e, &Direction::from_ints(0, 0, 1).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotGeneric(_)));
    }

    #[test]
    fn parse_direction() {
        let d: Direction = "1/2,-3,4/6".parse().unwrap();
        assert_eq!(d.dx, Rational::new(1.into(), 2.into()));
        assert_eq!(d.dz, Rational::new(2.into(), 3.into()));
        assert!("0,0,0".parse::<Direction>().is_err());
        assert!("1,2".parse::<Direction>().is_err());
        assert!("1/0,2,3".parse::<Direction>().is_err());
    }
}
