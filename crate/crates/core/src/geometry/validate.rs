use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use super::{on_segment3, segment_contact3, PLEmbedding, Point3, PointId, SegmentContact, SegmentId};
use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    CoincidentPoints { first: PointId, second: PointId, at: Point3 },
    VertexInteriorToSegment { vertex: VertexId, segment: SegmentId },
    SegmentsIntersect { first: SegmentId, second: SegmentId, at: Option<Point3> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CoincidentPoints { first: PointId::Vertex(a), second: PointId::Vertex(b), at } => {
                write!(f, "coincident vertices {a} and {b} at {at}")
            }
            Violation::CoincidentPoints { first, second, at } => {
                write!(f, "coincident points: {first} and {second} at {at}")
            }
            Violation::VertexInteriorToSegment { vertex, segment } => {
                write!(f, "vertex {vertex} interior to edge {} (segment {segment})", segment.edge)
            }
            Violation::SegmentsIntersect { first, second, at: Some(p) } => {
                write!(f, "segments {first} and {second} intersect at {p}")
            }
            Violation::SegmentsIntersect { first, second, at: None } => {
                write!(f, "segments {first} and {second} overlap")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationVerdict {
    pub violations: Vec<Violation>,
}

impl ValidationVerdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid embedding");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks that the polylines form a genuine embedding: distinct points,
/// no vertex inside a segment, and segments meeting only at shared endpoints.
pub fn validate_embedding(e: &PLEmbedding) -> ValidationVerdict {
    let points = e.points();
    let ids = e.point_ids();
    let mut violations = Vec::new();
    // Positions already explained by a point-level violation.
    let mut flagged: BTreeSet<Point3> = BTreeSet::new();

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]).then(a.cmp(&b)));
    for w in order.windows(2) {
        if points[w[0]] == points[w[1]] {
            violations.push(Violation::CoincidentPoints {
                first: ids[w[0]],
                second: ids[w[1]],
                at: points[w[0]].clone(),
            });
            flagged.insert(points[w[0]].clone());
        }
    }

    let segments = e.segments();
    for v in 0..e.n() {
        let p = &points[v];
        for s in &segments {
            let (a, b) = (&points[s.start], &points[s.end]);
            if p != a && p != b && on_segment3(p, a, b) {
                let PointId::Vertex(vertex) = ids[v] else { unreachable!() };
                violations.push(Violation::VertexInteriorToSegment { vertex, segment: s.id });
                flagged.insert(p.clone());
            }
        }
    }

    let pairs: Vec<(usize, usize)> = (0..segments.len())
        .flat_map(|i| (i + 1..segments.len()).map(move |j| (i, j)))
        .collect();
    let contacts: Vec<Violation> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let (s, t) = (&segments[i], &segments[j]);
            let (a, b) = (&points[s.start], &points[s.end]);
            let (c, d) = (&points[t.start], &points[t.end]);
            let shared = [s.start, s.end]
                .into_iter()
                .find(|k| *k == t.start || *k == t.end)
                .map(|k| &points[k]);
            match segment_contact3(a, b, c, d) {
                SegmentContact::Disjoint => None,
                SegmentContact::Overlap => Some(Violation::SegmentsIntersect {
                    first: s.id,
                    second: t.id,
                    at: None,
                }),
                SegmentContact::Point(param) => {
                    let at = Point3::lerp(a, b, &param);
                    if shared == Some(&at) || flagged.contains(&at) {
                        None
                    } else {
                        Some(Violation::SegmentsIntersect { first: s.id, second: t.id, at: Some(at) })
                    }
                }
            }
        })
        .collect();
    violations.extend(contacts);
    ValidationVerdict { violations }
}
