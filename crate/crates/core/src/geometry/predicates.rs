//! Exact orientation and segment-intersection predicates over rationals.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::Point3;

pub type Rational = BigRational;

pub fn sign(value: &Rational) -> Ordering {
    if value.is_positive() {
        Ordering::Greater
    } else if value.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

/// Twice the signed area of `abc`; positive when counterclockwise.
pub fn orient2d(a: &Point2, b: &Point2, c: &Point2) -> Rational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

pub fn cross2(ux: &Rational, uy: &Rational, vx: &Rational, vy: &Rational) -> Rational {
    ux * vy - uy * vx
}

/// `det[b - a, c - a, d - a]`, i.e. `(d - a) · ((b - a) × (c - a))`.
pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Rational {
    let n = (b - a).cross(&(c - a));
    (d - a).dot(&n)
}

/// Closed point-on-segment test in the plane.
pub fn on_segment2(p: &Point2, a: &Point2, b: &Point2) -> bool {
    orient2d(a, b, p).is_zero() && within(&p.x, &a.x, &b.x) && within(&p.y, &a.y, &b.y)
}

fn within(v: &Rational, a: &Rational, b: &Rational) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    lo <= v && v <= hi
}

/// Intersection of two closed segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentContact {
    Disjoint,
    /// A single common point, given as the parameter along the first segment.
    Point(Rational),
    /// Collinear overlap of positive length.
    Overlap,
}

/// Closed 2D segment intersection `[a, b] ∩ [c, d]`.
pub fn segment_contact2(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> SegmentContact {
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    if o1.is_zero() && o2.is_zero() {
        return collinear_contact(a, b, c, d);
    }
    let (s1, s2) = (sign(&o1), sign(&o2));
    let (s3, s4) = (sign(&o3), sign(&o4));
    if (s1 == s2 && s1 != Ordering::Equal) || (s3 == s4 && s3 != Ordering::Equal) {
        return SegmentContact::Disjoint;
    }
    // Not collinear, so a and b cannot both lie on line cd.
    let denom = &o3 - &o4;
    SegmentContact::Point(o3 / denom)
}

fn collinear_contact(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> SegmentContact {
    // Parametrize along ab using the dominant axis.
    let use_x = a.x != b.x;
    let coord = |p: &Point2| if use_x { p.x.clone() } else { p.y.clone() };
    let (pa, pb) = (coord(a), coord(b));
    if pa == pb {
        // Degenerate first segment.
        return if on_segment2(a, c, d) {
            SegmentContact::Point(Rational::zero())
        } else {
            SegmentContact::Disjoint
        };
    }
    let span = &pb - &pa;
    let tc = (coord(c) - &pa) / &span;
    let td = (coord(d) - &pa) / &span;
    let (lo, hi) = if tc <= td { (tc, td) } else { (td, tc) };
    let zero = Rational::zero();
    let one: Rational = num_traits::One::one();
    let start = if lo > zero { lo } else { zero };
    let end = if hi < one { hi } else { one };
    match start.cmp(&end) {
        Ordering::Greater => SegmentContact::Disjoint,
        Ordering::Equal => SegmentContact::Point(start),
        Ordering::Less => SegmentContact::Overlap,
    }
}

/// Closed 3D segment intersection `[a, b] ∩ [c, d]`.
pub fn segment_contact3(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> SegmentContact {
    if !orient3d(a, b, c, d).is_zero() {
        return SegmentContact::Disjoint;
    }
    let ab = b - a;
    let mut normal = ab.cross(&(c - a));
    if normal.is_zero() {
        normal = ab.cross(&(d - a));
    }
    // Drop a coordinate whose removal keeps the configuration faithful.
    let axis = if normal.is_zero() {
        // All four points collinear (or ab degenerate): drop an axis the
        // common line is not parallel to.
        let dir = if ab.is_zero() { d - c } else { ab };
        if dir.x.is_zero() {
            0
        } else {
            1
        }
    } else if !normal.z.is_zero() {
        2
    } else if !normal.y.is_zero() {
        1
    } else {
        0
    };
    let flat = |p: &Point3| match axis {
        0 => Point2 { x: p.y.clone(), y: p.z.clone() },
        1 => Point2 { x: p.x.clone(), y: p.z.clone() },
        _ => Point2 { x: p.x.clone(), y: p.y.clone() },
    };
    segment_contact2(&flat(a), &flat(b), &flat(c), &flat(d))
}

/// Closed point-on-segment test in 3D.
pub fn on_segment3(p: &Point3, a: &Point3, b: &Point3) -> bool {
    if !(b - a).cross(&(p - a)).is_zero() {
        return false;
    }
    within(&p.x, &a.x, &b.x) && within(&p.y, &a.y, &b.y) && within(&p.z, &a.z, &b.z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(x: i64, y: i64) -> Point2 {
        Point2 { x: Rational::from_integer(x.into()), y: Rational::from_integer(y.into()) }
    }

    fn p3(x: i64, y: i64, z: i64) -> Point3 {
        Point3::from_ints(x, y, z)
    }

    fn half() -> Rational {
        Rational::new(1.into(), 2.into())
    }

    #[test]
    fn proper_crossing_2d() {
        let c = segment_contact2(&p2(0, 0), &p2(2, 2), &p2(0, 2), &p2(2, 0));
        assert_eq!(c, SegmentContact::Point(half()));
    }

    #[test]
    fn touching_and_disjoint_2d() {
        assert_eq!(
            segment_contact2(&p2(0, 0), &p2(2, 0), &p2(1, 0), &p2(1, 5)),
            SegmentContact::Point(half())
        );
        assert_eq!(
            segment_contact2(&p2(0, 0), &p2(2, 0), &p2(3, -1), &p2(3, 5)),
            SegmentContact::Disjoint
        );
        assert_eq!(
            segment_contact2(&p2(0, 0), &p2(2, 0), &p2(3, 0), &p2(5, 0)),
            SegmentContact::Disjoint
        );
        assert_eq!(
            segment_contact2(&p2(0, 0), &p2(2, 0), &p2(1, 0), &p2(5, 0)),
            SegmentContact::Overlap
        );
        assert_eq!(
            segment_contact2(&p2(0, 0), &p2(2, 0), &p2(2, 0), &p2(5, 0)),
            SegmentContact::Point(Rational::from_integer(1.into()))
        );
    }

    #[test]
    fn skew_segments_are_disjoint_3d() {
        let c = segment_contact3(&p3(0, 0, 0), &p3(2, 2, 0), &p3(0, 2, -1), &p3(2, 0, -1));
        assert_eq!(c, SegmentContact::Disjoint);
        let c = segment_contact3(&p3(0, 0, 0), &p3(2, 2, 0), &p3(0, 2, 0), &p3(2, 0, 0));
        assert_eq!(c, SegmentContact::Point(half()));
    }

    #[test]
    fn collinear_3d() {
        let c = segment_contact3(&p3(0, 0, 1), &p3(0, 0, 3), &p3(0, 0, 2), &p3(0, 0, 7));
        assert_eq!(c, SegmentContact::Overlap);
        let c = segment_contact3(&p3(0, 0, 1), &p3(0, 0, 3), &p3(0, 0, 4), &p3(0, 0, 7));
        assert_eq!(c, SegmentContact::Disjoint);
        assert!(on_segment3(&p3(1, 1, 1), &p3(0, 0, 0), &p3(2, 2, 2)));
        assert!(!on_segment3(&p3(3, 3, 3), &p3(0, 0, 0), &p3(2, 2, 2)));
    }

    #[test]
    fn orientation_signs() {
        assert!(orient2d(&p2(0, 0), &p2(1, 0), &p2(0, 1)).is_positive());
        assert!(orient3d(&p3(0, 0, 0), &p3(1, 0, 0), &p3(0, 1, 0), &p3(0, 0, 1)).is_positive());
    }
}
