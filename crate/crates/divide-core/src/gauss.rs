//! Chord diagrams and Gauss codes of immersed curves.

use crate::curve::{CurveKind, DoublePoint, PLCurve};
use crate::error::Result;
use crate::num::Rat;

/// The double points of a curve recorded as chords on its parameter domain.
#[derive(Clone, Debug)]
pub struct ChordDiagram {
    /// One `(first, second)` parameter pair per double point, in id order.
    pub chords: Vec<(Rat, Rat)>,
}

impl ChordDiagram {
    pub fn from_double_points(dps: &[DoublePoint]) -> Self {
        ChordDiagram { chords: dps.iter().map(|d| d.visits.clone()).collect() }
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    /// Two chords interleave when their endpoints alternate along the
    /// parameter domain.
    pub fn interleaved(&self, i: usize, j: usize) -> bool {
        let (a1, a2) = &self.chords[i];
        let (b1, b2) = &self.chords[j];
        (a1 < b1 && b1 < a2 && a2 < b2) || (b1 < a1 && a1 < b2 && b2 < a2)
    }

    pub fn interleaving_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.interleaved(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Number of chords interleaving chord `i`.
    pub fn interleave_count(&self, i: usize) -> usize {
        (0..self.len()).filter(|&j| j != i && self.interleaved(i, j)).count()
    }

    /// Number of chords lying strictly inside the span of chord `i`.
    pub fn nested_count(&self, i: usize) -> usize {
        let (a1, a2) = &self.chords[i];
        (0..self.len())
            .filter(|&j| {
                if j == i {
                    return false;
                }
                let (b1, b2) = &self.chords[j];
                a1 < b1 && b2 < a2
            })
            .count()
    }

    pub fn is_tree_like(&self) -> bool {
        self.interleaving_pairs().is_empty()
    }
}

/// Canonical Gauss code of a generic curve: the sequence of double-point
/// passages with frame signs, crossings relabeled by first occurrence, and
/// (for closed curves) minimized over rotations. Two curves are ambient
/// isotopic as immersions only if their codes agree, which is what the
/// diagonalization check relies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussCode {
    pub word: Vec<(usize, i8)>,
}

impl std::fmt::Display for GaussCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (id, frame)) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", id + 1, if *frame > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

pub fn gauss_code(curve: &PLCurve) -> Result<GaussCode> {
    let dps = curve.double_points()?;
    let mut passages: Vec<(Rat, usize, i8)> = Vec::with_capacity(2 * dps.len());
    for dp in &dps {
        passages.push((dp.visits.0.clone(), dp.id, dp.frame));
        passages.push((dp.visits.1.clone(), dp.id, dp.frame));
    }
    passages.sort_by(|a, b| a.0.cmp(&b.0));
    let raw: Vec<(usize, i8)> = passages.into_iter().map(|(_, id, fr)| (id, fr)).collect();
    match curve.kind {
        CurveKind::Open => Ok(GaussCode { word: relabel(&raw) }),
        CurveKind::Closed => {
            let n = raw.len();
            if n == 0 {
                return Ok(GaussCode { word: vec![] });
            }
            let mut best: Option<Vec<(usize, i8)>> = None;
            for r in 0..n {
                let rotated: Vec<(usize, i8)> =
                    (0..n).map(|k| raw[(k + r) % n]).collect();
                let cand = relabel(&rotated);
                best = Some(match best {
                    None => cand,
                    Some(cur) => cur.min(cand),
                });
            }
            Ok(GaussCode { word: best.unwrap() })
        }
    }
}

fn relabel(word: &[(usize, i8)]) -> Vec<(usize, i8)> {
    let mut map: Vec<Option<usize>> = vec![None; word.len()];
    let mut next = 0usize;
    let mut out = Vec::with_capacity(word.len());
    for (id, frame) in word {
        let new = match map[*id] {
            Some(n) => n,
            None => {
                let n = next;
                map[*id] = Some(n);
                next += 1;
                n
            }
        };
        out.push((new, *frame));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn chords(pairs: &[(i64, i64)]) -> ChordDiagram {
        ChordDiagram {
            chords: pairs
                .iter()
                .map(|(a, b)| (rat(*a) / rat(100), rat(*b) / rat(100)))
                .collect(),
        }
    }

    #[test]
    fn interleaving_combinatorics() {
        // word: 1 2 1 2  (interleaved)
        let d = chords(&[(10, 30), (20, 40)]);
        assert!(d.interleaved(0, 1));
        assert!(!d.is_tree_like());
        // word: 1 2 2 1  (nested)
        let d = chords(&[(10, 40), (20, 30)]);
        assert!(!d.interleaved(0, 1));
        assert!(d.is_tree_like());
        assert_eq!(d.nested_count(0), 1);
        // word: 1 1 2 2  (disjoint)
        let d = chords(&[(10, 20), (30, 40)]);
        assert!(d.is_tree_like());
        // three mutually interleaved chords: 1 2 3 1 2 3
        let d = chords(&[(10, 40), (20, 50), (30, 60)]);
        assert_eq!(d.interleaving_pairs().len(), 3);
        assert_eq!(d.interleave_count(0), 2);
    }
}
