//! Linking numbers and the second Conway coefficient, each with an
//! independent oracle.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::diagram::{GaussCode, GaussDiagram, Passage};
use crate::error::{Error, Result};
use crate::geometry::{orient3d, PLEmbedding, Point3, SceneDiagram};
use crate::graph::{Cycle, CyclePair};

/// Crossings above this count make the skein oracle decline.
pub const DEFAULT_SKEIN_CUTOFF: usize = 14;

/// Half the signed count of crossings between the two components.
/// Self-crossings are ignored.
pub fn linking_number<D: AsRef<GaussCode>>(diagram: &D) -> Result<i64> {
    let code = diagram.as_ref();
    if code.component_count() != 2 {
        return Err(Error::WrongArity { expected: 2, actual: code.component_count() });
    }
    let mut in_first = vec![0u8; code.crossing_count()];
    for p in &code.words[0] {
        in_first[p.crossing as usize] += 1;
    }
    let sum: i64 = in_first
        .iter()
        .zip(&code.signs)
        .filter(|(k, _)| **k == 1)
        .map(|(_, &s)| s as i64)
        .sum();
    if sum % 2 != 0 {
        return Err(Error::Inconsistent(format!("odd inter-component crossing sum {sum}")));
    }
    Ok(sum / 2)
}

/// Per-cycle data for the linking-number fast path: selected edges and the
/// traversal orientation of each.
#[derive(Debug, Clone)]
pub struct CycleEdges {
    mask: u128,
    /// +1 / -1 per edge index for edges in the cycle.
    orientation: Vec<(usize, i8)>,
}

impl CycleEdges {
    pub fn new(c: &Cycle) -> CycleEdges {
        CycleEdges {
            mask: c.edge_mask(),
            orientation: c.edges().map(|(e, fwd)| (e.index(), if fwd { 1 } else { -1 })).collect(),
        }
    }
}

/// Linking number of two disjoint cycles straight from the scene diagram,
/// without materializing the link diagram.
pub fn pair_linking_number(scene: &SceneDiagram, a: &CycleEdges, b: &CycleEdges) -> Result<i64> {
    let mut orient_b = [0i8; 128];
    for &(e, o) in &b.orientation {
        orient_b[e] = o;
    }
    let mut sum = 0i64;
    for &(e, oa) in &a.orientation {
        for p in scene.passages(crate::graph::EdgeId::from_index(e)) {
            if b.mask & p.other.bit() != 0 {
                sum += (p.sign * oa * orient_b[p.other.index()]) as i64;
            }
        }
    }
    if sum % 2 != 0 {
        return Err(Error::Inconsistent(format!("odd inter-component crossing sum {sum}")));
    }
    Ok(sum / 2)
}

/// Signed count of the second triangle's edges piercing the flat disk of
/// the first. Both cycles must be straight-edged triangles.
pub fn triangle_disk_lk_oracle(e: &PLEmbedding, pair: &CyclePair) -> Result<i64> {
    let (a, b) = (&pair.first, &pair.second);
    if a.len() != 3 || b.len() != 3 {
        return Err(Error::InvalidClass("triangle oracle needs two 3-cycles".into()));
    }
    for c in [a, b] {
        if c.edges().any(|(edge, _)| e.polyline(edge).len() != 2) {
            return Err(Error::InvalidClass("triangle oracle needs straight edges".into()));
        }
    }
    let pts = |c: &Cycle| -> Vec<Point3> { c.vertices().iter().map(|&v| e.vertex(v).clone()).collect() };
    triangle_disk_count(&pts(a), &pts(b))
}

/// Signed intersection count of the closed polygon `loop_pts` with the
/// triangle `tri`, oriented by the right-hand rule.
pub fn triangle_disk_count(tri: &[Point3], loop_pts: &[Point3]) -> Result<i64> {
    let (t0, t1, t2) = (&tri[0], &tri[1], &tri[2]);
    let side = |p: &Point3| orient3d(t0, t1, t2, p);
    let m = loop_pts.len();
    let mut total = 0i64;
    for k in 0..m {
        let (p, q) = (&loop_pts[k], &loop_pts[(k + 1) % m]);
        let (sp, sq) = (side(p), side(q));
        if sp.is_zero() || sq.is_zero() {
            // Contact with the plane at an endpoint or along the segment.
            if sp.is_zero() && sq.is_zero() {
                if segment_meets_triangle_coplanar(p, q, tri) {
                    return Err(Error::DegenerateContact(format!("segment {p}–{q} lies in the disk plane")));
                }
                continue;
            }
            let on = if sp.is_zero() { p } else { q };
            if point_in_triangle_coplanar(on, tri) {
                return Err(Error::DegenerateContact(format!("vertex {on} touches the disk")));
            }
            continue;
        }
        if (sp.is_positive()) == (sq.is_positive()) {
            continue;
        }
        let o = [orient3d(p, q, t0, t1), orient3d(p, q, t1, t2), orient3d(p, q, t2, t0)];
        if o.iter().any(|v| v.is_zero()) {
            if o.iter().all(|v| !v.is_negative()) || o.iter().all(|v| !v.is_positive()) {
                return Err(Error::DegenerateContact(format!("segment {p}–{q} hits the disk boundary")));
            }
            continue;
        }
        let inside = o.iter().all(|v| v.is_positive()) || o.iter().all(|v| v.is_negative());
        if inside {
            total += if sq.is_positive() { 1 } else { -1 };
        }
    }
    Ok(total)
}

fn drop_axis(tri: &[Point3]) -> usize {
    let n = (&tri[1] - &tri[0]).cross(&(&tri[2] - &tri[0]));
    let abs = [n.x.abs(), n.y.abs(), n.z.abs()];
    (0..3).max_by(|&a, &b| abs[a].cmp(&abs[b])).unwrap()
}

fn flat(p: &Point3, axis: usize) -> crate::geometry::Point2 {
    use crate::geometry::Point2;
    match axis {
        0 => Point2 { x: p.y.clone(), y: p.z.clone() },
        1 => Point2 { x: p.x.clone(), y: p.z.clone() },
        _ => Point2 { x: p.x.clone(), y: p.y.clone() },
    }
}

fn point_in_triangle_coplanar(p: &Point3, tri: &[Point3]) -> bool {
    use crate::geometry::orient2d;
    let axis = drop_axis(tri);
    let q = flat(p, axis);
    let t: Vec<_> = tri.iter().map(|x| flat(x, axis)).collect();
    let o = [orient2d(&t[0], &t[1], &q), orient2d(&t[1], &t[2], &q), orient2d(&t[2], &t[0], &q)];
    o.iter().all(|v| !v.is_negative()) || o.iter().all(|v| !v.is_positive())
}

fn segment_meets_triangle_coplanar(p: &Point3, q: &Point3, tri: &[Point3]) -> bool {
    use crate::geometry::{segment_contact2, SegmentContact};
    if point_in_triangle_coplanar(p, tri) || point_in_triangle_coplanar(q, tri) {
        return true;
    }
    let axis = drop_axis(tri);
    let (a, b) = (flat(p, axis), flat(q, axis));
    (0..3).any(|k| {
        let (c, d) = (flat(&tri[k], axis), flat(&tri[(k + 1) % 3], axis));
        segment_contact2(&a, &b, &c, &d) != SegmentContact::Disjoint
    })
}

/// Second Conway coefficient of a knot from its based Gauss diagram.
///
/// Sums `ε(x)·ε(y)` over interleaved chord pairs `x, y` met in the order
/// `x, y, x, y` from the base, where the first passage of `x` is over and
/// the first passage of `y` is under.
pub fn a2(gd: &GaussDiagram) -> i64 {
    let arrows = gd.arrows();
    let mut total = 0i64;
    for (i, x) in arrows.iter().enumerate() {
        if !x.over_first {
            continue;
        }
        for y in &arrows[i + 1..] {
            if y.first > x.second {
                break;
            }
            if !y.over_first && y.second > x.second {
                total += (x.sign * y.sign) as i64;
            }
        }
    }
    total
}

/// a₂ straight from a one-component code.
pub fn knot_a2(code: &GaussCode) -> Result<i64> {
    Ok(a2(&GaussDiagram::from_code(code)?))
}

/// Conway polynomial as integer coefficients of `z^0, z^1, …`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConwayPolynomial(pub Vec<i64>);

impl ConwayPolynomial {
    pub fn coefficient(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn add_shifted(&mut self, other: &ConwayPolynomial, factor: i64) {
        if self.0.len() < other.0.len() + 1 {
            self.0.resize(other.0.len() + 1, 0);
        }
        for (k, c) in other.0.iter().enumerate() {
            self.0[k + 1] += factor * c;
        }
    }
}

impl fmt::Display for ConwayPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}z"),
                _ => format!("{c}z^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Conway polynomial by skein resolution: crossings are switched until the
/// diagram is descending (hence a trivial link), with
/// `∇(L₊) − ∇(L₋) = z ∇(L₀)` at each switch. Exponential; returns `None`
/// above `cutoff` crossings.
pub fn conway_skein_oracle<D: AsRef<GaussCode>>(diagram: &D, cutoff: usize) -> Option<ConwayPolynomial> {
    let code = diagram.as_ref();
    if code.crossing_count() > cutoff {
        return None;
    }
    let mut words = code.words.clone();
    let mut signs: Vec<i8> = code.signs.clone();
    Some(skein(&mut words, &mut signs).trimmed())
}

fn skein(words: &mut Vec<Vec<Passage>>, signs: &mut Vec<i8>) -> ConwayPolynomial {
    remove_kinks(words, signs);
    if words.len() > 1 && words.iter().any(|w| w.is_empty()) {
        return ConwayPolynomial(vec![0]);
    }
    // Scan components in order; the first meeting with every crossing must
    // be over for the diagram to be descending.
    let mut seen = vec![false; signs.len()];
    for c in 0..words.len() {
        for k in 0..words[c].len() {
            let p = words[c][k];
            let x = p.crossing as usize;
            if seen[x] {
                continue;
            }
            seen[x] = true;
            if p.over {
                continue;
            }
            let eps = signs[x] as i64;
            let (mut w0, mut s0) = smooth(words, signs, p.crossing);
            let smoothed = skein(&mut w0, &mut s0);
            switch(words, signs, p.crossing);
            let mut result = skein(words, signs);
            // ∇(D) = ∇(D switched) + ε z ∇(D₀)
            result.add_shifted(&smoothed, eps);
            return result;
        }
    }
    if words.len() == 1 {
        ConwayPolynomial(vec![1])
    } else {
        ConwayPolynomial(vec![0])
    }
}

fn switch(words: &mut [Vec<Passage>], signs: &mut [i8], x: u32) {
    for w in words.iter_mut() {
        for p in w.iter_mut() {
            if p.crossing == x {
                p.over = !p.over;
            }
        }
    }
    signs[x as usize] = -signs[x as usize];
}

/// Drops crossing `x` from the code and renumbers the rest.
fn drop_crossing(words: &mut [Vec<Passage>], signs: &mut Vec<i8>, x: u32) {
    for w in words.iter_mut() {
        w.retain(|p| p.crossing != x);
        for p in w.iter_mut() {
            if p.crossing > x {
                p.crossing -= 1;
            }
        }
    }
    signs.remove(x as usize);
}

/// Oriented smoothing at crossing `x`.
fn smooth(words: &[Vec<Passage>], signs: &[i8], x: u32) -> (Vec<Vec<Passage>>, Vec<i8>) {
    let locate: Vec<(usize, usize)> = words
        .iter()
        .enumerate()
        .flat_map(|(c, w)| w.iter().enumerate().filter(|(_, p)| p.crossing == x).map(move |(k, _)| (c, k)))
        .collect();
    let ((c1, i), (c2, j)) = (locate[0], locate[1]);
    let mut out: Vec<Vec<Passage>> = Vec::with_capacity(words.len() + 1);
    if c1 == c2 {
        // Splits into two components.
        let w = &words[c1];
        let inner: Vec<Passage> = w[i + 1..j].to_vec();
        let mut outer: Vec<Passage> = w[j + 1..].to_vec();
        outer.extend_from_slice(&w[..i]);
        for (c, other) in words.iter().enumerate() {
            if c == c1 {
                out.push(outer.clone());
                out.push(inner.clone());
            } else {
                out.push(other.clone());
            }
        }
    } else {
        // Joins two components: a[..i], b[j+1..], b[..j], a[i+1..].
        let (a, b) = (&words[c1], &words[c2]);
        let mut joined: Vec<Passage> = a[..i].to_vec();
        joined.extend_from_slice(&b[j + 1..]);
        joined.extend_from_slice(&b[..j]);
        joined.extend_from_slice(&a[i + 1..]);
        for (c, other) in words.iter().enumerate() {
            if c == c1 {
                out.push(joined.clone());
            } else if c != c2 {
                out.push(other.clone());
            }
        }
    }
    let mut signs = signs.to_vec();
    drop_crossing(&mut out, &mut signs, x);
    (out, signs)
}

/// Removes crossings whose two passages are adjacent on one component.
fn remove_kinks(words: &mut [Vec<Passage>], signs: &mut Vec<i8>) {
    loop {
        let mut kink = None;
        'search: for w in words.iter() {
            let m = w.len();
            for k in 0..m {
                if m >= 2 && w[k].crossing == w[(k + 1) % m].crossing {
                    kink = Some(w[k].crossing);
                    break 'search;
                }
            }
        }
        match kink {
            Some(x) => drop_crossing(words, signs, x),
            None => return,
        }
    }
}

/// Linking number of a cycle pair computed through the full diagram route.
pub fn diagram_linking_number(scene: &SceneDiagram, pair: &CyclePair) -> Result<i64> {
    let ld = crate::diagram::extract_link_diagram(scene, &[pair.first.clone(), pair.second.clone()])?;
    linking_number(&ld)
}

/// a₂ of a cycle's constituent knot under the scene projection.
pub fn cycle_a2(scene: &SceneDiagram, cycle: &Cycle) -> Result<i64> {
    let ld = crate::diagram::extract_link_diagram(scene, std::slice::from_ref(cycle))?;
    knot_a2(ld.code())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::GaussCode;
    use crate::graph::cycle_from;

    fn trefoil() -> GaussCode {
        GaussCode::from_signed_words(&[&[1, -2, 3, -1, 2, -3]], &[1, 1, 1]).unwrap()
    }

    fn hopf(sign: i8) -> GaussCode {
        GaussCode::from_signed_words(&[&[1, -2], &[-1, 2]], &[sign, sign]).unwrap()
    }

    #[test]
    fn trefoil_skein() {
        let p = conway_skein_oracle(&trefoil(), DEFAULT_SKEIN_CUTOFF).unwrap();
        assert_eq!(p, ConwayPolynomial(vec![1, 0, 1]));
        let m = conway_skein_oracle(&trefoil().mirror(), DEFAULT_SKEIN_CUTOFF).unwrap();
        assert_eq!(m, ConwayPolynomial(vec![1, 0, 1]));
    }

    #[test]
    fn trefoil_a2_both_chiralities() {
        assert_eq!(knot_a2(&trefoil()).unwrap(), 1);
        assert_eq!(knot_a2(&trefoil().mirror()).unwrap(), 1);
    }

    #[test]
    fn unknot_and_unlink() {
        let unknot = GaussCode::new(vec![vec![]], vec![]).unwrap();
        assert_eq!(conway_skein_oracle(&unknot, 14).unwrap(), ConwayPolynomial(vec![1]));
        assert_eq!(knot_a2(&unknot).unwrap(), 0);
        let unlink = GaussCode::new(vec![vec![], vec![]], vec![]).unwrap();
        assert_eq!(conway_skein_oracle(&unlink, 14).unwrap(), ConwayPolynomial(vec![]));
        // Twisted unknot: one kink.
        let kink = GaussCode::from_signed_words(&[&[1, -1]], &[1]).unwrap();
        assert_eq!(conway_skein_oracle(&kink, 14).unwrap(), ConwayPolynomial(vec![1]));
        assert_eq!(knot_a2(&kink).unwrap(), 0);
    }

    #[test]
    fn hopf_skein_and_lk() {
        for s in [1i8, -1] {
            let h = hopf(s);
            assert_eq!(linking_number(&h).unwrap(), s as i64);
            let p = conway_skein_oracle(&h, 14).unwrap();
            assert_eq!(p, ConwayPolynomial(vec![0, s as i64]));
        }
    }

    #[test]
    fn reversing_a_component_negates_lk() {
        let h = hopf(1);
        assert_eq!(linking_number(&h.reverse_component(1)).unwrap(), -1);
        assert_eq!(linking_number(&h.reverse_component(0)).unwrap(), -1);
    }

    #[test]
    fn skein_cutoff() {
        assert!(conway_skein_oracle(&trefoil(), 2).is_none());
    }

    #[test]
    fn lk_needs_two_components() {
        assert!(matches!(linking_number(&trefoil()), Err(Error::WrongArity { .. })));
    }

    #[test]
    fn rotation_keeps_trefoil_a2() {
        let gd = GaussDiagram::from_code(&trefoil()).unwrap();
        for s in 0..gd.len() {
            assert_eq!(a2(&gd.rotate(s)), 1);
        }
    }

    fn hopf_triangles() -> PLEmbedding {
        PLEmbedding::rectilinear(vec![
            Point3::from_ints(0, -1, 0),
            Point3::from_ints(2, -1, 0),
            Point3::from_ints(1, 2, 0),
            Point3::from_ints(1, 0, 1),
            Point3::from_ints(2, 0, -2),
            Point3::from_ints(3, 1, 1),
        ])
        .unwrap()
    }

    #[test]
    fn triangle_oracle_hopf_and_symmetry() {
        let e = hopf_triangles();
        let a = cycle_from(&[1, 2, 3], 6).unwrap();
        let b = cycle_from(&[4, 5, 6], 6).unwrap();
        let pair = CyclePair::new(a.clone(), b.clone()).unwrap();
        let v = triangle_disk_lk_oracle(&e, &pair).unwrap();
        assert_eq!(v.abs(), 1);
        let pts = |c: &Cycle| -> Vec<Point3> { c.vertices().iter().map(|&x| e.vertex(x).clone()).collect() };
        assert_eq!(triangle_disk_count(&pts(&b), &pts(&a)).unwrap(), v);
        // Matches the diagram route including sign.
        let scene = crate::geometry::generic_scene(&e, 64).unwrap();
        assert_eq!(diagram_linking_number(&scene, &pair).unwrap(), v);
    }

    #[test]
    fn triangle_oracle_split_and_degenerate() {
        let e = PLEmbedding::rectilinear(vec![
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(3, 0, 1),
            Point3::from_ints(0, 3, 2),
            Point3::from_ints(100, 0, 0),
            Point3::from_ints(103, 1, 0),
            Point3::from_ints(100, 3, 1),
        ])
        .unwrap();
        let pair = CyclePair::new(cycle_from(&[1, 2, 3], 6).unwrap(), cycle_from(&[4, 5, 6], 6).unwrap()).unwrap();
        assert_eq!(triangle_disk_lk_oracle(&e, &pair).unwrap(), 0);
        // Second triangle's vertex sitting on the first triangle's disk.
        let tri = [Point3::from_ints(0, 0, 0), Point3::from_ints(4, 0, 0), Point3::from_ints(0, 4, 0)];
        let poke = [Point3::from_ints(1, 1, 0), Point3::from_ints(1, 1, 5), Point3::from_ints(9, 9, 5)];
        assert!(matches!(triangle_disk_count(&tri, &poke), Err(Error::DegenerateContact(_))));
    }

    fn knot_a2_and_skein(curve: crate::generators::KnotCurve) -> (i64, ConwayPolynomial) {
        let e = crate::generators::sampled_knot(curve, 60, 100.0).unwrap();
        let scene = crate::geometry::generic_scene(&e, 64).unwrap();
        let c = cycle_from(&[1, 2, 3], 3).unwrap();
        let ld = crate::diagram::extract_link_diagram(&scene, std::slice::from_ref(&c)).unwrap();
        let poly = conway_skein_oracle(&ld, 40).unwrap();
        (cycle_a2(&scene, &c).unwrap(), poly)
    }

    #[test]
    fn geometric_trefoil_calibration() {
        let (a, poly) = knot_a2_and_skein(crate::generators::KnotCurve::Trefoil);
        assert_eq!(poly, ConwayPolynomial(vec![1, 0, 1]));
        assert_eq!(a, 1);
    }

    #[test]
    fn geometric_figure_eight_calibration() {
        let (a, poly) = knot_a2_and_skein(crate::generators::KnotCurve::FigureEight);
        assert_eq!(poly, ConwayPolynomial(vec![1, 0, -1]));
        assert_eq!(a, -1);
    }
}
