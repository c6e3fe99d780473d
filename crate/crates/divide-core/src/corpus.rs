//! Fixture curves and divides, plus the seeded random divide generator used
//! by the verification harness.

use crate::curve::PLCurve;
use crate::divide::Divide;
use crate::error::{Error, Result};
use crate::num::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The standard curve with Whitney index `omega + 1`: a counterclockwise
/// diamond carrying `omega` small counterclockwise petals on its lower-left
/// edge. `omega = 0` gives the plain diamond.
pub fn standard_curve(omega: usize) -> Result<PLCurve> {
    let s = 8 * omega as i64 + 8;
    let mut pts = vec![Point::ints(s, 0), Point::ints(0, s), Point::ints(-s, 0)];
    for k in 0..omega as i64 {
        let q = Point::ints(-s + 3 + 5 * k, -3 - 7 * k);
        pts.push(q.add(&Point::ints(1, -1)));
        pts.push(q.add(&Point::ints(2, 0)));
        pts.push(q.add(&Point::ints(1, 1)));
        pts.push(q.add(&Point::ints(-1, -1)));
    }
    pts.push(Point::ints(-(omega as i64), -s - omega as i64));
    PLCurve::closed(pts)
}

/// A point inside petal `k` (0-based) of `standard_curve(omega)`, where the
/// winding number is 2.
pub fn standard_curve_loop_probe(omega: usize) -> Point {
    let s = 8 * omega as i64 + 8;
    Point::ints(-s + 3 + 1, -3)
}

/// Figure-eight curve of Whitney index 0 with a single double point at the
/// origin; the top lobe runs counterclockwise.
pub fn figure_eight() -> PLCurve {
    PLCurve::closed(vec![
        Point::ints(1, 1),
        Point::ints(0, 2),
        Point::ints(-1, 1),
        Point::ints(1, -1),
        Point::ints(0, -2),
        Point::ints(-1, -1),
    ])
    .expect("fixture")
}

/// The straight diameter divide.
pub fn diameter_divide() -> Divide {
    Divide::new(
        PLCurve::open(vec![Point::ints(-1, 0), Point::ints(1, 0)]).expect("fixture"),
    )
    .expect("fixture")
}

/// The standard divide `D_n`: the standard curve with `n` petals, cut open
/// on its upper-right edge and immersed in the unit disc. Its knot is the
/// connected sum of `n` trefoils.
pub fn standard_divide(n: usize) -> Result<Divide> {
    let curve = standard_curve(n)?;
    let s = 8 * n as i64 + 8;
    let scale = frac(1, 4 * s);
    let scaled: Vec<Point> = curve.points().iter().map(|p| p.scale(&scale)).collect();

    // cut the R -> T edge at thirds: run from c_start through T, L, the
    // petals, B*, R, and stop at c_end
    let r = Point::ints(s, 0).scale(&scale);
    let t = Point::ints(0, s).scale(&scale);
    let c_start = r.add(&t.sub(&r).scale(&frac(2, 3)));
    let c_end = r.add(&t.sub(&r).scale(&frac(1, 3)));

    let mut pts = Vec::new();
    pts.push(snap_to_unit_circle(&c_start));
    pts.push(c_start);
    pts.extend(scaled[1..].iter().cloned()); // T, L, petals, B*
    pts.push(r);
    pts.push(c_end.clone());
    pts.push(snap_to_unit_circle(&c_end));
    Divide::new(PLCurve::open(pts)?)
}

/// A divide whose three chords are pairwise interleaved (Gauss word
/// `1 2 3 1 2 3`): the smallest divide with intersecting smoothed pieces.
pub fn interleaved_divide() -> Divide {
    let sc = frac(1, 16);
    let raw = [
        (8i64, 0i64),
        (9, 4),
        (3, 6),
        (-5, -6),
        (1, -8),
        (1, 8),
        (-12, 10),
    ];
    let mut pts = vec![Point::ints(-1, 0)];
    pts.extend(raw.iter().map(|(x, y)| Point::ints(*x, *y).scale(&sc)));
    pts.push(Point::new(frac(-171, 221), frac(140, 221)));
    Divide::new(PLCurve::open(pts).expect("fixture")).expect("fixture")
}

/// A tree-like divide with Gauss word `a b b a`: a large counterclockwise
/// petal whose arc carries a small clockwise kink, so the closed piece at
/// the outer vertex has one double point and `J̃ = 2`.
pub fn nested_divide() -> Divide {
    let sc = frac(1, 32);
    let raw = [
        (-4i64, 4i64), // heading SE through the outer crossing at (0,0)
        (4, -4),
        (7, -1),
        (8, -2),
        (7, -3),
        (5, -1), // NW through the kink crossing at (6,-2)
        (8, 2),
        (5, 5),
        (-4, -4), // SW through (0,0)
        (2, -10),
    ];
    let mut pts = vec![Point::new(frac(-48, 73), frac(55, 73))];
    pts.extend(raw.iter().map(|(x, y)| Point::ints(*x, *y).scale(&sc)));
    pts.push(Point::new(frac(228, 397), frac(-325, 397)));
    Divide::new(PLCurve::open(pts).expect("fixture")).expect("fixture")
}

/// Parameters for the random divide generator.
#[derive(Clone, Debug)]
pub struct GenParams {
    pub max_crossings: usize,
    pub max_steps: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { max_crossings: 8, max_steps: 60 }
    }
}

/// Seed-deterministic random I-divide: a self-avoiding-edge walk on a
/// diagonal lattice inside the disc, endpoint-snapped to the circle and
/// rejection-sampled for genericity.
pub fn random_divide(seed: u64, params: &GenParams) -> Divide {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..2000 {
        if let Some(d) = try_walk(&mut rng, params) {
            return d;
        }
    }
    panic!("random divide generation failed for seed {seed}");
}

fn try_walk(rng: &mut ChaCha8Rng, params: &GenParams) -> Option<Divide> {
    const B: i64 = 8;
    let dirs = [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)];

    #[derive(Clone, Copy, PartialEq)]
    enum Visit {
        Straight((i64, i64)),
        Turned,
        Twice,
    }

    use std::collections::{BTreeMap, BTreeSet};
    let mut pos = (-B + 2, rng.random_range(-2..=2i64) * 2);
    let mut pts: Vec<(i64, i64)> = vec![pos];
    let mut dir = if rng.random_bool(0.5) { (1, 1) } else { (1, -1) };
    let mut edges: BTreeSet<((i64, i64), (i64, i64))> = BTreeSet::new();
    let mut state: BTreeMap<(i64, i64), Visit> = BTreeMap::new();
    let mut crossings = 0usize;

    let steps = rng.random_range(params.max_steps / 2..=params.max_steps);
    for _ in 0..steps {
        // candidate next directions: keep the walk from reversing, leaving
        // the box, reusing an edge, or entering a vertex it cannot cross
        let candidates: Vec<((i64, i64), (i64, i64))> = dirs
            .iter()
            .copied()
            .filter(|d| (d.0 + dir.0, d.1 + dir.1) != (0, 0))
            .filter_map(|d| {
                let next = (pos.0 + d.0, pos.1 + d.1);
                if next.0.abs() >= B || next.1.abs() >= B {
                    return None;
                }
                let edge = (pos.min(next), pos.max(next));
                if edges.contains(&edge) {
                    return None;
                }
                match state.get(&next) {
                    None => Some((d, next)),
                    Some(Visit::Straight(d0)) => {
                        // crossing through is only possible transversally
                        let transversal = *d0 != d && (d0.0 + d.0, d0.1 + d.1) != (0, 0);
                        if transversal && crossings < params.max_crossings {
                            Some((d, next))
                        } else {
                            None
                        }
                    }
                    Some(_) => None,
                }
            })
            .collect();
        if candidates.is_empty() {
            break;
        }
        let weights: Vec<f64> = candidates
            .iter()
            .map(|(d, _)| if *d == dir { 3.0 } else { 1.0 })
            .collect();
        let totalw: f64 = weights.iter().sum();
        let mut pick = rng.random_range(0.0..totalw);
        let mut chosen = candidates[0];
        for (c, w) in candidates.iter().zip(weights.iter()) {
            if pick < *w {
                chosen = *c;
                break;
            }
            pick -= w;
        }
        let (step_dir, next) = chosen;
        edges.insert((pos.min(next), pos.max(next)));
        // leaving the current vertex settles whether the passage was straight
        let depart_state = if step_dir == dir { Visit::Straight(dir) } else { Visit::Turned };
        match state.get(&pos) {
            None => {
                state.insert(pos, depart_state);
            }
            Some(Visit::Straight(_)) => {
                // second passage: must leave straight along the entry step
                if step_dir != dir {
                    break;
                }
                state.insert(pos, Visit::Twice);
                crossings += 1;
            }
            Some(_) => break,
        }
        pts.push(next);
        pos = next;
        dir = step_dir;
    }
    if pts.len() < 8 {
        return None;
    }
    if crossings > params.max_crossings {
        return None;
    }

    // endpoints of the walk must be simple points
    let first = pts[0];
    let last = *pts.last().unwrap();
    if pts.iter().filter(|p| **p == first).count() > 1 {
        return None;
    }
    if pts.iter().filter(|p| **p == last).count() > 1 {
        return None;
    }

    // scale into the disc and extend the ends to the circle
    let scale = frac(1, 2 * B);
    let mut coords: Vec<Point> = pts
        .iter()
        .map(|(x, y)| Point::ints(*x, *y).scale(&scale))
        .collect();
    let head = extend_to_circle(&coords[0], &coords[1]);
    let tail = extend_to_circle(
        &coords[coords.len() - 1],
        &coords[coords.len() - 2],
    );
    coords.insert(0, head);
    coords.push(tail);

    let curve = PLCurve::open(coords).ok()?.simplify_collinear();
    let report = curve.validate();
    if !report.valid || report.double_points.len() != crossings {
        return None;
    }
    Divide::new(curve).ok()
}

/// Extend the endpoint `end` away from `inner` onto a rational point of the
/// unit circle.
pub(crate) fn extend_to_circle(end: &Point, inner: &Point) -> Point {
    let dir = end.sub(inner);
    // march outward until outside, then snap the last inside-ish point
    let mut probe = end.clone();
    let step = dir.scale(&frac(1, 4));
    for _ in 0..64 {
        let next = probe.add(&step);
        if next.norm2() >= rat(1) {
            break;
        }
        probe = next;
    }
    snap_to_unit_circle(&probe)
}

/// Deterministic batch of random divides.
pub fn random_divides(seed: u64, count: usize, params: &GenParams) -> Vec<Divide> {
    (0..count)
        .map(|i| random_divide(seed.wrapping_add(i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64), params))
        .collect()
}

/// A random closed generic curve: the closure of a random divide.
pub fn random_closed_curve(seed: u64, params: &GenParams) -> Result<PLCurve> {
    let d = random_divide(seed, params);
    d.closure()
}

/// Validate that a fixture satisfies what the tests assume about it.
#[allow(dead_code)]
pub(crate) fn check_fixture(curve: &PLCurve, crossings: usize) -> Result<()> {
    let report = curve.validate();
    if !report.valid {
        return Err(Error::not_generic(&report));
    }
    if report.double_points.len() != crossings {
        return Err(Error::internal(format!(
            "fixture has {} double points, expected {crossings}",
            report.double_points.len()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss;

    #[test]
    fn standard_curves_are_generic() {
        for omega in 0..=6 {
            let c = standard_curve(omega).unwrap();
            let r = c.validate();
            assert!(r.valid, "K_{}: {:?}", omega + 1, r.violations);
            assert_eq!(r.double_points.len(), omega);
            assert_eq!(c.turning_number().unwrap(), omega as i64 + 1);
        }
    }

    #[test]
    fn standard_divides_are_generic() {
        for n in 0..=6 {
            let d = standard_divide(n).unwrap();
            assert_eq!(d.double_points().len(), n);
            assert!(d.is_tree_like());
        }
    }

    #[test]
    fn interleaved_divide_word() {
        let d = interleaved_divide();
        let code = gauss::gauss_code(d.curve()).unwrap();
        let ids: Vec<usize> = code.word.iter().map(|(id, _)| *id).collect();
        assert_eq!(ids, vec![0, 1, 2, 0, 1, 2]);
    }

    #[test]
    fn nested_divide_word() {
        let d = nested_divide();
        let code = gauss::gauss_code(d.curve()).unwrap();
        let ids: Vec<usize> = code.word.iter().map(|(id, _)| *id).collect();
        assert_eq!(ids, vec![0, 1, 1, 0]);
    }

    #[test]
    fn random_divides_are_deterministic() {
        let p = GenParams::default();
        let a = random_divide(42, &p);
        let b = random_divide(42, &p);
        assert_eq!(a.curve().points(), b.curve().points());
        let c = random_divide(43, &p);
        assert!(a.curve().points() != c.curve().points());
    }

    #[test]
    fn random_divides_have_bounded_crossings() {
        let p = GenParams { max_crossings: 5, max_steps: 50 };
        for seed in 0..20 {
            let d = random_divide(seed, &p);
            assert!(d.double_points().len() <= 5);
        }
    }
}
