//! Exact rational geometry of piecewise-linear embeddings of `K_n`.

mod predicates;
mod projection;
mod validate;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Sub;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge_count, EdgeId, VertexId, MAX_N};

pub use predicates::{
    on_segment2, on_segment3, orient2d, orient3d, segment_contact2, segment_contact3, Point2,
    Rational, SegmentContact,
};
pub use projection::{
    build_scene_diagram, find_generic_direction, generic_scene, Crossing, Direction, EdgePassage,
    GenericityViolation, SceneDiagram, SegmentLocator, DEFAULT_DIRECTION_BUDGET,
};
pub use validate::{validate_embedding, ValidationVerdict, Violation};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Point3 {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Point3 {
        let q = |v: i64| Rational::from_integer(BigInt::from(v));
        Point3 { x: q(x), y: q(y), z: q(z) }
    }

    pub fn cross(&self, o: &Point3) -> Point3 {
        Point3 {
            x: &self.y * &o.z - &self.z * &o.y,
            y: &self.z * &o.x - &self.x * &o.z,
            z: &self.x * &o.y - &self.y * &o.x,
        }
    }

    pub fn dot(&self, o: &Point3) -> Rational {
        &self.x * &o.x + &self.y * &o.y + &self.z * &o.z
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Point3 {
        Point3 { x: &self.x * k, y: &self.y * k, z: &self.z * k }
    }

    /// `a + t (b - a)`.
    pub fn lerp(a: &Point3, b: &Point3, t: &Rational) -> Point3 {
        Point3 {
            x: &a.x + (&b.x - &a.x) * t,
            y: &a.y + (&b.y - &a.y) * t,
            z: &a.z + (&b.z - &a.z) * t,
        }
    }
}

impl Sub for &Point3 {
    type Output = Point3;

    fn sub(self, o: &Point3) -> Point3 {
        Point3 { x: &self.x - &o.x, y: &self.y - &o.y, z: &self.z - &o.z }
    }
}

impl Sub for Point3 {
    type Output = Point3;

    fn sub(self, o: Point3) -> Point3 {
        &self - &o
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A point of the embedding: a graph vertex or a bend of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointId {
    Vertex(VertexId),
    Bend { edge: EdgeId, index: usize },
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointId::Vertex(v) => write!(f, "vertex {v}"),
            PointId::Bend { edge, index } => write!(f, "bend {index} of edge {edge}"),
        }
    }
}

/// Straight piece `index` of an edge's polyline, counted from the edge's
/// smaller endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegmentId {
    pub edge: EdgeId,
    pub index: usize,
}

impl fmt::Display for SegmentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.edge, self.index)
    }
}

/// A segment with indices into [`PLEmbedding::points`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub id: SegmentId,
    pub start: usize,
    pub end: usize,
}

/// Rational coordinates for the vertices of `K_n` plus optional bend points
/// on each edge. An edge without bends is a straight segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLEmbedding {
    n: usize,
    /// Vertices first (vertex `v` at `v - 1`), then bends edge by edge.
    points: Vec<Point3>,
    point_ids: Vec<PointId>,
    /// Per edge: indices into `points` from the smaller endpoint to the larger.
    polylines: Vec<Vec<usize>>,
}

impl PLEmbedding {
    pub fn new(
        n: usize,
        vertices: Vec<Point3>,
        bends: BTreeMap<EdgeId, Vec<Point3>>,
    ) -> Result<PLEmbedding> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidEmbedding(format!("n = {n} outside 1..={MAX_N}")));
        }
        if vertices.len() != n {
            return Err(Error::InvalidEmbedding(format!(
                "expected {n} vertices, got {}",
                vertices.len()
            )));
        }
        let edges = edge_count(n);
        if let Some(e) = bends.keys().find(|e| e.index() >= edges) {
            return Err(Error::InvalidEmbedding(format!("bends on unknown edge index {}", e.index())));
        }
        let mut point_ids: Vec<PointId> = (1..=n).map(|v| PointId::Vertex(VertexId::new(v, n).unwrap())).collect();
        let mut points = vertices;
        let mut polylines = Vec::with_capacity(edges);
        for k in 0..edges {
            let edge = EdgeId::from_index(k);
            let (i, j) = edge.endpoints();
            let mut line = vec![i.get() - 1];
            if let Some(list) = bends.get(&edge) {
                for (index, p) in list.iter().enumerate() {
                    line.push(points.len());
                    points.push(p.clone());
                    point_ids.push(PointId::Bend { edge, index });
                }
            }
            line.push(j.get() - 1);
            polylines.push(line);
        }
        Ok(PLEmbedding { n, points, point_ids, polylines })
    }

    /// Straight-edge embedding.
    pub fn rectilinear(vertices: Vec<Point3>) -> Result<PLEmbedding> {
        PLEmbedding::new(vertices.len(), vertices, BTreeMap::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex(&self, v: VertexId) -> &Point3 {
        &self.points[v.get() - 1]
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn point_ids(&self) -> &[PointId] {
        &self.point_ids
    }

    pub fn edge_count(&self) -> usize {
        self.polylines.len()
    }

    /// Point indices along an edge, smaller endpoint first.
    pub fn polyline(&self, edge: EdgeId) -> &[usize] {
        &self.polylines[edge.index()]
    }

    pub fn bends(&self, edge: EdgeId) -> impl Iterator<Item = &Point3> {
        let line = &self.polylines[edge.index()];
        line[1..line.len() - 1].iter().map(|&k| &self.points[k])
    }

    pub fn is_rectilinear(&self) -> bool {
        self.polylines.iter().all(|l| l.len() == 2)
    }

    pub fn segments(&self) -> Vec<Segment> {
        let mut out = Vec::new();
        for (k, line) in self.polylines.iter().enumerate() {
            for (index, w) in line.windows(2).enumerate() {
                out.push(Segment {
                    id: SegmentId { edge: EdgeId::from_index(k), index },
                    start: w[0],
                    end: w[1],
                });
            }
        }
        out
    }

    pub fn from_json(text: &str) -> Result<PLEmbedding> {
        let file: EmbeddingFile =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        file.into_embedding()
    }

    pub fn to_json(&self) -> String {
        // One point per line keeps generated files diff-friendly.
        let file = EmbeddingFile::from_embedding(self);
        let row = |p: &[i64; 6]| serde_json::to_string(p).expect("integers serialize");
        let rows = |list: &[[i64; 6]], indent: &str| {
            list.iter()
                .map(|p| format!("{indent}{}", row(p)))
                .collect::<Vec<_>>()
                .join(",\n")
        };
        let mut text = format!(
            "{{\n  \"format_version\": {},\n  \"n\": {},\n  \"vertices\": [\n{}\n  ]",
            file.format_version,
            file.n,
            rows(&file.vertices, "    ")
        );
        if !file.bends.is_empty() {
            let entries = file
                .bends
                .iter()
                .map(|(k, list)| format!("    {k:?}: [\n{}\n    ]", rows(list, "      ")))
                .collect::<Vec<_>>()
                .join(",\n");
            text.push_str(&format!(",\n  \"bends\": {{\n{entries}\n  }}"));
        }
        text.push_str("\n}\n");
        text
    }
}

/// On-disk embedding format, version 1.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EmbeddingFile {
    format_version: u32,
    n: usize,
    vertices: Vec<[i64; 6]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    bends: BTreeMap<String, Vec<[i64; 6]>>,
}

fn decode_point(raw: &[i64; 6], at: &str) -> Result<Point3> {
    let q = |num: i64, den: i64, axis: &str| -> Result<Rational> {
        if den == 0 {
            return Err(Error::Format(format!("{at}: zero denominator in {axis}")));
        }
        Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
    };
    Ok(Point3 {
        x: q(raw[0], raw[1], "x")?,
        y: q(raw[2], raw[3], "y")?,
        z: q(raw[4], raw[5], "z")?,
    })
}

fn encode_point(p: &Point3) -> Result<[i64; 6]> {
    let part = |q: &Rational| -> Result<(i64, i64)> {
        let (num, den) = (q.numer(), q.denom());
        let conv = |b: &BigInt| {
            i64::try_from(b.clone())
                .map_err(|_| Error::Format(format!("coordinate {q} does not fit in 64 bits")))
        };
        Ok((conv(num)?, conv(den)?))
    };
    let (xn, xd) = part(&p.x)?;
    let (yn, yd) = part(&p.y)?;
    let (zn, zd) = part(&p.z)?;
    Ok([xn, xd, yn, yd, zn, zd])
}

fn parse_edge_key(key: &str, n: usize) -> Result<EdgeId> {
    let bad = || Error::Format(format!("bends: bad edge key {key:?} (expected \"i-j\" with 1 <= i < j <= {n})"));
    let (a, b) = key.split_once('-').ok_or_else(bad)?;
    let i: usize = a.trim().parse().map_err(|_| bad())?;
    let j: usize = b.trim().parse().map_err(|_| bad())?;
    if !(1 <= i && i < j && j <= n) {
        return Err(bad());
    }
    Ok(EdgeId::between(VertexId::new(i, n)?, VertexId::new(j, n)?))
}

impl EmbeddingFile {
    fn into_embedding(self) -> Result<PLEmbedding> {
        if self.format_version != 1 {
            return Err(Error::Format(format!(
                "unsupported format_version {}",
                self.format_version
            )));
        }
        if self.n == 0 || self.n > MAX_N {
            return Err(Error::Format(format!("n = {} outside 1..={MAX_N}", self.n)));
        }
        if self.vertices.len() != self.n {
            return Err(Error::Format(format!(
                "expected {} vertices, got {}",
                self.n,
                self.vertices.len()
            )));
        }
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(k, raw)| decode_point(raw, &format!("vertices[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        let mut bends = BTreeMap::new();
        for (key, list) in &self.bends {
            let edge = parse_edge_key(key, self.n)?;
            let pts = list
                .iter()
                .enumerate()
                .map(|(k, raw)| decode_point(raw, &format!("bends[{key}][{k}]")))
                .collect::<Result<Vec<_>>>()?;
            if !pts.is_empty() {
                bends.insert(edge, pts);
            }
        }
        PLEmbedding::new(self.n, vertices, bends)
    }

    fn from_embedding(e: &PLEmbedding) -> EmbeddingFile {
        let enc = |p: &Point3| encode_point(p).expect("coordinates fit the file format");
        let vertices = e.points[..e.n].iter().map(enc).collect();
        let mut bends = BTreeMap::new();
        for k in 0..e.edge_count() {
            let edge = EdgeId::from_index(k);
            let list: Vec<[i64; 6]> = e.bends(edge).map(enc).collect();
            if !list.is_empty() {
                bends.insert(edge.to_string(), list);
            }
        }
        EmbeddingFile { format_version: 1, n: e.n, vertices, bends }
    }
}

/// Whether all coordinates fit the 64-bit file format.
pub fn fits_file_format(e: &PLEmbedding) -> bool {
    e.points.iter().all(|p| encode_point(p).is_ok())
}
