//! Link diagrams of selected cycles, and based Gauss diagrams of knots.

use crate::error::{Error, Result};
use crate::geometry::SceneDiagram;
use crate::graph::Cycle;

/// One pass of a component through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Passage {
    pub crossing: u32,
    pub over: bool,
}

/// Purely combinatorial diagram: for each component the cyclic sequence of
/// passages, plus a sign per crossing. Every crossing is passed exactly
/// twice, once over and once under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussCode {
    pub words: Vec<Vec<Passage>>,
    pub signs: Vec<i8>,
}

impl GaussCode {
    pub fn new(words: Vec<Vec<Passage>>, signs: Vec<i8>) -> Result<GaussCode> {
        let code = GaussCode { words, signs };
        code.check()?;
        Ok(code)
    }

    /// Builds a code from signed crossing labels: `+k` is an over passage
    /// of crossing `k`, `-k` an under passage; crossings are numbered from 1.
    pub fn from_signed_words(words: &[&[i32]], signs: &[i8]) -> Result<GaussCode> {
        let words = words
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&x| Passage { crossing: x.unsigned_abs() - 1, over: x > 0 })
                    .collect()
            })
            .collect();
        GaussCode::new(words, signs.to_vec())
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn component_count(&self) -> usize {
        self.words.len()
    }

    fn check(&self) -> Result<()> {
        let mut seen = vec![(0u8, 0u8); self.signs.len()];
        for w in &self.words {
            for p in w {
                let slot = seen.get_mut(p.crossing as usize).ok_or_else(|| {
                    Error::MalformedDiagram(format!("crossing {} out of range", p.crossing))
                })?;
                if p.over {
                    slot.0 += 1;
                } else {
                    slot.1 += 1;
                }
            }
        }
        if let Some(k) = seen.iter().position(|&s| s != (1, 1)) {
            return Err(Error::MalformedDiagram(format!(
                "crossing {k} not passed exactly once over and once under"
            )));
        }
        if let Some(k) = self.signs.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::MalformedDiagram(format!("crossing {k} has sign {}", self.signs[k])));
        }
        Ok(())
    }

    /// Mirror image: over/under exchanged and every sign negated.
    pub fn mirror(&self) -> GaussCode {
        GaussCode {
            words: self
                .words
                .iter()
                .map(|w| w.iter().map(|p| Passage { crossing: p.crossing, over: !p.over }).collect())
                .collect(),
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    /// Same link with one component traversed backwards: the word is
    /// reversed and crossings between that component and the others change
    /// sign. Self-crossings keep their sign.
    pub fn reverse_component(&self, k: usize) -> GaussCode {
        let mut owners = vec![[usize::MAX; 2]; self.signs.len()];
        for (c, w) in self.words.iter().enumerate() {
            for p in w {
                owners[p.crossing as usize][p.over as usize] = c;
            }
        }
        let mut out = self.clone();
        out.words[k].reverse();
        for (x, o) in owners.iter().enumerate() {
            if (o[0] == k) != (o[1] == k) {
                out.signs[x] = -out.signs[x];
            }
        }
        out
    }
}

impl AsRef<GaussCode> for GaussCode {
    fn as_ref(&self) -> &GaussCode {
        self
    }
}

/// Diagram of one or two cycles cut out of a scene diagram. Passage order
/// follows each cycle's canonical orientation from its first vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    cycles: Vec<Cycle>,
    /// Scene crossing id for each local crossing.
    scene_ids: Vec<u32>,
    code: GaussCode,
}

impl LinkDiagram {
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn scene_ids(&self) -> &[u32] {
        &self.scene_ids
    }

    pub fn code(&self) -> &GaussCode {
        &self.code
    }
}

impl AsRef<GaussCode> for LinkDiagram {
    fn as_ref(&self) -> &GaussCode {
        &self.code
    }
}

/// Restricts `scene` to the crossings among the segments of `cycles`.
pub fn extract_link_diagram(scene: &SceneDiagram, cycles: &[Cycle]) -> Result<LinkDiagram> {
    if cycles.is_empty() || cycles.len() > 2 {
        return Err(Error::WrongArity { expected: 2, actual: cycles.len() });
    }
    if cycles.len() == 2 && cycles[0].vertex_mask() & cycles[1].vertex_mask() != 0 {
        return Err(Error::NotDisjoint);
    }
    let mask = cycles.iter().fold(0u128, |m, c| m | c.edge_mask());
    let mut local = vec![u32::MAX; scene.crossings().len()];
    let mut scene_ids = Vec::new();
    let mut signs = Vec::new();
    // Orientation of each selected edge relative to its smaller-to-larger direction.
    let mut forward = [true; 128];
    for c in cycles {
        for (e, fwd) in c.edges() {
            forward[e.index()] = fwd;
        }
    }
    let mut words = Vec::with_capacity(cycles.len());
    for c in cycles {
        let mut word = Vec::new();
        for (edge, fwd) in c.edges() {
            let list = scene.passages(edge);
            let mut push = |p: &crate::geometry::EdgePassage| {
                if mask & p.other.bit() == 0 {
                    return;
                }
                let slot = &mut local[p.crossing as usize];
                if *slot == u32::MAX {
                    *slot = scene_ids.len() as u32;
                    scene_ids.push(p.crossing);
                    let flip = (!fwd) ^ (!forward[p.other.index()]);
                    signs.push(if flip { -p.sign } else { p.sign });
                }
                word.push(Passage { crossing: *slot, over: p.over });
            };
            if fwd {
                list.iter().for_each(&mut push);
            } else {
                list.iter().rev().for_each(&mut push);
            }
        }
        words.push(word);
    }
    let code = GaussCode { words, signs };
    debug_assert!(code.check().is_ok());
    Ok(LinkDiagram { cycles: cycles.to_vec(), scene_ids, code })
}

/// A chord of a based Gauss diagram. Positions count passages from the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub first: usize,
    pub second: usize,
    pub sign: i8,
    /// Whether the earlier passage (at `first`) is the over passage.
    pub over_first: bool,
}

/// Based chord diagram of a one-component diagram with signed arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussDiagram {
    len: usize,
    arrows: Vec<Arrow>,
}

impl GaussDiagram {
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Number of passages, twice the number of arrows.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn from_code(code: &GaussCode) -> Result<GaussDiagram> {
        if code.words.len() != 1 {
            return Err(Error::WrongArity { expected: 1, actual: code.words.len() });
        }
        code.check()?;
        let word = &code.words[0];
        let mut first_seen = vec![usize::MAX; code.signs.len()];
        let mut arrows = Vec::with_capacity(code.signs.len());
        for (pos, p) in word.iter().enumerate() {
            let k = p.crossing as usize;
            if first_seen[k] == usize::MAX {
                first_seen[k] = pos;
            } else {
                let first = first_seen[k];
                arrows.push(Arrow {
                    first,
                    second: pos,
                    sign: code.signs[k],
                    over_first: word[first].over,
                });
            }
        }
        arrows.sort_by_key(|a| a.first);
        Ok(GaussDiagram { len: word.len(), arrows })
    }

    /// Moves the base point forward past `shift` passages.
    pub fn rotate(&self, shift: usize) -> GaussDiagram {
        if self.len == 0 {
            return self.clone();
        }
        let s = shift % self.len;
        let at = |p: usize| (p + self.len - s) % self.len;
        let mut arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .map(|a| {
                let (x, y) = (at(a.first), at(a.second));
                if x < y {
                    Arrow { first: x, second: y, sign: a.sign, over_first: a.over_first }
                } else {
                    Arrow { first: y, second: x, sign: a.sign, over_first: !a.over_first }
                }
            })
            .collect();
        arrows.sort_by_key(|a| a.first);
        GaussDiagram { len: self.len, arrows }
    }
}

/// Based Gauss diagram of a single-component link diagram, based just
/// before the first passage after the canonical cycle start.
pub fn gauss_diagram(ld: &LinkDiagram) -> Result<GaussDiagram> {
    GaussDiagram::from_code(&ld.code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{generic_scene, PLEmbedding, Point3, DEFAULT_DIRECTION_BUDGET};
    use crate::graph::{cycle_from, enumerate_cycles, enumerate_disjoint_pairs};

    fn split_triangles() -> PLEmbedding {
        PLEmbedding::rectilinear(vec![
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(3, 0, 1),
            Point3::from_ints(0, 3, 2),
            Point3::from_ints(100, 0, 0),
            Point3::from_ints(103, 1, 0),
            Point3::from_ints(100, 3, 1),
        ])
        .unwrap()
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
    fn split_triangles_have_no_crossings() {
        let e = split_triangles();
        let scene = generic_scene(&e, DEFAULT_DIRECTION_BUDGET).unwrap();
        let a = cycle_from(&[1, 2, 3], 6).unwrap();
        let b = cycle_from(&[4, 5, 6], 6).unwrap();
        let ld = extract_link_diagram(&scene, &[a, b]).unwrap();
        assert_eq!(ld.code().crossing_count(), 0);
    }

    #[test]
    fn hopf_triangles_have_two_equal_sign_crossings() {
        let e = hopf_triangles();
        let scene = generic_scene(&e, DEFAULT_DIRECTION_BUDGET).unwrap();
        let a = cycle_from(&[1, 2, 3], 6).unwrap();
        let b = cycle_from(&[4, 5, 6], 6).unwrap();
        let ld = extract_link_diagram(&scene, &[a, b]).unwrap();
        let code = ld.code();
        let inter: Vec<i8> = (0..code.crossing_count() as u32)
            .filter(|&x| {
                let in0 = code.words[0].iter().filter(|p| p.crossing == x).count();
                in0 == 1
            })
            .map(|x| code.signs[x as usize])
            .collect();
        assert_eq!(inter.len(), 2);
        assert_eq!(inter[0], inter[1]);
    }

    #[test]
    fn single_triangle_never_self_crosses() {
        let e = hopf_triangles();
        let scene = generic_scene(&e, DEFAULT_DIRECTION_BUDGET).unwrap();
        for c in enumerate_cycles(6, 3).unwrap() {
            let ld = extract_link_diagram(&scene, &[c]).unwrap();
            assert_eq!(ld.code().crossing_count(), 0);
        }
    }

    #[test]
    fn overlapping_cycles_rejected() {
        let e = hopf_triangles();
        let scene = generic_scene(&e, DEFAULT_DIRECTION_BUDGET).unwrap();
        let a = cycle_from(&[1, 2, 3], 6).unwrap();
        let b = cycle_from(&[3, 4, 5], 6).unwrap();
        assert_eq!(extract_link_diagram(&scene, &[a, b]).unwrap_err(), Error::NotDisjoint);
    }

    #[test]
    fn passage_counts_are_twice_crossings() {
        let e = PLEmbedding::rectilinear((1..=7).map(|t| Point3::from_ints(t, t * t, t * t * t)).collect())
            .unwrap();
        let scene = generic_scene(&e, DEFAULT_DIRECTION_BUDGET).unwrap();
        for pair in enumerate_disjoint_pairs(7, 3, 4).unwrap() {
            let ld = extract_link_diagram(&scene, &[pair.first, pair.second]).unwrap();
            let total: usize = ld.code().words.iter().map(|w| w.len()).sum();
            assert_eq!(total, 2 * ld.code().crossing_count());
        }
    }

    #[test]
    fn trefoil_arrows_pairwise_interleave() {
        // Standard alternating trefoil: O1 U2 O3 U1 O2 U3.
        let code = GaussCode::from_signed_words(&[&[1, -2, 3, -1, 2, -3]], &[1, 1, 1]).unwrap();
        let gd = GaussDiagram::from_code(&code).unwrap();
        assert_eq!(gd.arrows().len(), 3);
        let a = gd.arrows();
        for i in 0..3 {
            for j in i + 1..3 {
                let (x, y) = (a[i], a[j]);
                assert!(x.first < y.first && y.first < x.second && x.second < y.second);
            }
        }
    }

    #[test]
    fn empty_diagram() {
        let code = GaussCode::new(vec![vec![]], vec![]).unwrap();
        let gd = GaussDiagram::from_code(&code).unwrap();
        assert!(gd.arrows().is_empty());
    }

    #[test]
    fn two_components_rejected() {
        let code = GaussCode::new(vec![vec![], vec![]], vec![]).unwrap();
        assert_eq!(
            GaussDiagram::from_code(&code).unwrap_err(),
            Error::WrongArity { expected: 1, actual: 2 }
        );
    }

    #[test]
    fn malformed_codes_rejected() {
        assert!(GaussCode::from_signed_words(&[&[1, 1]], &[1]).is_err());
        assert!(GaussCode::from_signed_words(&[&[1, -1]], &[0]).is_err());
        assert!(GaussCode::from_signed_words(&[&[1, -2]], &[1]).is_err());
    }
}
