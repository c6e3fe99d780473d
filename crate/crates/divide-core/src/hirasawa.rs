//! The planar knot diagram of a divide: double the divide into two offset
//! strands joined at the endpoints, insert four crossings per divide double
//! point, and route one "jump through infinity" per x-extremum. The result
//! is encoded as a combinatorial diagram and reduced for the oracle.

use crate::curve::CurveKind;
use crate::diagonal::{diagonalize, DiagonalPosition};
use crate::diagram::{Diagram, Passage};
use crate::divide::Divide;
use crate::error::{Error, Result};
use crate::num::*;
use crate::arnold::Extremum;
use num_traits::{Signed, Zero};

/// Fixed drawing conventions. Over and under are decided by the strands'
/// tangent directions lifted along the fiber of the unit-tangent bundle,
/// with the branch cut at the straight-down direction; the two booleans fix
/// the residual mirror choices and are pinned by the trefoil anchor (`D_1`
/// must produce a trefoil with `v2 = 1`) and the corpus cross-validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conventions {
    /// at a doubled double point, the strand whose tangent direction lifts
    /// higher (SE < NE < NW < SW) goes over
    pub higher_tangent_over: bool,
    /// at a local maximum, the outgoing jump leg passes over everything it
    /// crosses (the return leg passes under); a local minimum mirrors this
    pub max_out_over: bool,
}

/// The frozen conventions: of the two mirror-consistent choices, the one
/// under which `D_n` comes out with writhe `+3n` (right-handed trefoils).
pub const CONVENTIONS: Conventions =
    Conventions { higher_tangent_over: false, max_out_over: true };

/// Tangent direction lifted to the fiber scale, branch cut at straight
/// down: SE < NE < NW < SW.
fn tangent_height(d: &Point) -> i8 {
    match (sign(&d.x), sign(&d.y)) {
        (1, -1) => 0,  // SE
        (1, 1) => 1,   // NE
        (-1, 1) => 2,  // NW
        (-1, -1) => 3, // SW
        _ => unreachable!("diagonal strand directions only"),
    }
}

/// Provenance of one segment of the doubled loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegTag {
    /// offset copy of divide segment `seg`; `right` tells which side of the
    /// divide's travel direction
    Strand { seg: usize, right: bool },
    /// U-turn around a divide endpoint
    EndCap,
    /// outgoing jump leg of jump `id`
    JumpOut { id: usize },
    /// turnaround far outside the drawing
    JumpTurn { id: usize },
    /// returning jump leg
    JumpBack { id: usize },
}

/// The doubled divide: a single closed polyline with per-segment provenance.
#[derive(Clone, Debug)]
pub struct DoubledDivide {
    /// cyclic: segment `i` runs from `points[i]` to `points[i+1 mod n]`
    pub points: Vec<Point>,
    pub tags: Vec<SegTag>,
    pub offset: Rat,
    /// jump targets: one per divide x-extremum, vertex index into `points`
    /// of the down-strand cap before surgery
    pub jump_caps: Vec<(usize, Extremum)>,
}

/// One self-intersection of the final loop with resolved over/under.
#[derive(Clone, Debug)]
pub struct LoopCrossing {
    pub at: Point,
    /// (segment index, fraction along it) for both passages
    pub passes: [(usize, Rat); 2],
    /// which of the two passages is the over strand
    pub over_pass: usize,
    pub sign: i8,
}

/// The full construction: geometry retained for rendering, combinatorial
/// diagrams for the oracle.
#[derive(Clone, Debug)]
pub struct HirasawaDiagram {
    pub diagonal: DiagonalPosition,
    pub doubled: DoubledDivide,
    /// loop after jump surgery
    pub points: Vec<Point>,
    pub tags: Vec<SegTag>,
    pub crossings: Vec<LoopCrossing>,
    /// raw combinatorial diagram (one passage pair per crossing)
    pub diagram: Diagram,
    /// kink/bigon-reduced diagram; the exported PD code
    pub reduced: Diagram,
}

impl HirasawaDiagram {
    pub fn pd_text(&self) -> String {
        self.reduced.pd_text()
    }

    pub fn gauss_text(&self) -> String {
        self.reduced.gauss_text()
    }
}

/// Double a diagonal divide: two strands offset by `delta` on each side,
/// joined by caps at the endpoints. The result is one closed polyline;
/// crossings are not yet inserted.
pub fn double(diag: &DiagonalPosition, delta: &Rat) -> Result<DoubledDivide> {
    let curve = &diag.curve;
    if curve.kind != CurveKind::Open {
        return Err(Error::OpenRequired);
    }
    let pts = curve.points();
    let n = pts.len();
    let m = n - 1;

    let unit = |i: usize| -> Point {
        let d = curve.seg_dir(i);
        Point::new(rat(sign(&d.x) as i64), rat(sign(&d.y) as i64))
    };
    let right_normal = |i: usize| -> Point {
        let u = unit(i);
        Point::new(u.y.clone(), -u.x.clone())
    };

    // offset vertex where segments i-1 and i meet, shifted to one side
    let offset_vertex = |v: usize, s: i8| -> Point {
        let shift = rat(s as i64) * delta;
        if v == 0 {
            return pts[0].add(&right_normal(0).scale(&shift));
        }
        if v == n - 1 {
            return pts[n - 1].add(&right_normal(m - 1).scale(&shift));
        }
        let u1 = unit(v - 1);
        let u2 = unit(v);
        let n1 = right_normal(v - 1).scale(&shift);
        let n2 = right_normal(v).scale(&shift);
        if u1 == u2 {
            return pts[v].add(&n1);
        }
        // intersection of the two shifted lines
        let a = pts[v].add(&n1);
        let c = pts[v].add(&n2);
        let denom = u1.cross(&u2);
        debug_assert!(!denom.is_zero());
        let t = c.sub(&a).cross(&u2) / denom;
        a.add(&u1.scale(&t))
    };

    let mut points: Vec<Point> = Vec::new();
    let mut tags: Vec<SegTag> = Vec::new();

    // right strand, forward
    for v in 0..n {
        points.push(offset_vertex(v, 1));
        if v < m {
            tags.push(SegTag::Strand { seg: v, right: true });
        }
    }
    // end cap at the far endpoint
    let far_apex = pts[n - 1].add(&unit(m - 1).scale(delta));
    tags.push(SegTag::EndCap);
    points.push(far_apex);
    tags.push(SegTag::EndCap);
    // left strand, backward
    for v in (0..n).rev() {
        points.push(offset_vertex(v, -1));
        if v > 0 {
            tags.push(SegTag::Strand { seg: v - 1, right: false });
        }
    }
    // end cap at the start endpoint
    let start_apex = pts[0].sub(&unit(0).scale(delta));
    tags.push(SegTag::EndCap);
    points.push(start_apex);
    tags.push(SegTag::EndCap);
    debug_assert_eq!(points.len(), tags.len());

    // locate the doubled caps of each divide x-extremum and pick the strand
    // pointing downwards
    let mut jump_caps = Vec::new();
    for (v, kind) in &diag.extrema {
        let mut down_vertex = None;
        for (idx, p) in points.iter().enumerate() {
            // offset vertices of divide vertex v sit within delta-ball scaled
            let candidates = [offset_vertex(*v, 1), offset_vertex(*v, -1)];
            if p != &candidates[0] && p != &candidates[1] {
                continue;
            }
            let len = points.len();
            let din = points[idx].sub(&points[(idx + len - 1) % len]);
            let dout = points[(idx + 1) % len].sub(&points[idx]);
            if sign(&din.x) * sign(&dout.x) != -1 {
                return Err(Error::internal("extremum copy is not an x-reversal"));
            }
            if din.y.is_negative() && dout.y.is_negative() {
                down_vertex = Some(idx);
            }
        }
        let idx = down_vertex
            .ok_or_else(|| Error::internal("no downward cap at divide extremum"))?;
        jump_caps.push((idx, *kind));
    }

    Ok(DoubledDivide { points, tags, offset: delta.clone(), jump_caps })
}

/// Insert the jump detours into the doubled loop.
///
/// The jumping strand leaves the diagram vertically — crossing everything
/// above the cap on the way out for a maximum (everything below, for a
/// minimum) — and returns vertically on the opposite side of the diagram.
/// All detours are routed around the right of the drawing as nested arcs,
/// so distinct jumps never intersect each other.
fn route_jumps(doubled: &DoubledDivide, attempt: usize) -> Result<(Vec<Point>, Vec<SegTag>)> {
    let mut points = doubled.points.clone();
    let mut tags = doubled.tags.clone();
    if doubled.jump_caps.is_empty() {
        return Ok((points, tags));
    }

    let spacing = rat(12);
    let mut min_y = points[0].y.clone();
    let mut max_y = points[0].y.clone();
    let mut max_x = points[0].x.clone();
    for p in &points {
        if p.y < min_y {
            min_y = p.y.clone();
        }
        if p.y > max_y {
            max_y = p.y.clone();
        }
        if p.x > max_x {
            max_x = p.x.clone();
        }
    }

    // innermost arc = rightmost cap; outer arcs run higher, lower and
    // further right
    let mut order: Vec<usize> = (0..doubled.jump_caps.len()).collect();
    order.sort_by(|&a, &b| {
        let xa = &points[doubled.jump_caps[a].0].x;
        let xb = &points[doubled.jump_caps[b].0].x;
        xb.cmp(xa)
    });

    let mut splices: Vec<(usize, Vec<Point>, Vec<SegTag>)> = Vec::new();
    for (rank, &j) in order.iter().enumerate() {
        let (idx, kind) = doubled.jump_caps[j];
        let len = points.len();
        let prev = points[(idx + len - 1) % len].clone();
        let w = points[idx].clone();
        let next = points[(idx + 1) % len].clone();
        // entry/exit partway along the incident segments; vary the fraction
        // per attempt to dodge exact coincidences
        let f = frac(1, 3 + 2 * attempt as i64);
        let entry = w.add(&prev.sub(&w).scale(&f));
        let exit = w.add(&next.sub(&w).scale(&f));
        let depth = &spacing * rat(rank as i64 + 1);
        let top = &max_y + &depth;
        let bot = &min_y - &depth;
        let right = &max_x + &depth;
        // the "above" attachment climbs out of the top of the diagram, the
        // "below" attachment out of the bottom; a maximum exits above and
        // returns below, a minimum the other way around
        let mid = match kind {
            Extremum::Max { .. } => vec![
                Point::new(entry.x.clone(), top.clone()),
                Point::new(right.clone(), top),
                Point::new(right, bot.clone()),
                Point::new(exit.x.clone(), bot),
            ],
            Extremum::Min { .. } => vec![
                Point::new(entry.x.clone(), bot.clone()),
                Point::new(right.clone(), bot),
                Point::new(right, top.clone()),
                Point::new(exit.x.clone(), top),
            ],
        };
        let mut new_pts = vec![entry];
        new_pts.extend(mid);
        new_pts.push(exit);
        splices.push((
            idx,
            new_pts,
            vec![
                SegTag::JumpOut { id: j },
                SegTag::JumpTurn { id: j },
                SegTag::JumpTurn { id: j },
                SegTag::JumpTurn { id: j },
                SegTag::JumpBack { id: j },
            ],
        ));
    }
    splices.sort_by(|a, b| b.0.cmp(&a.0));
    for (idx, new_pts, mid_tags) in splices {
        // segment idx-1 keeps its tag and now ends at `entry`; the exit point
        // continues with the old outgoing tag
        let out_tag = tags[idx];
        points.splice(idx..=idx, new_pts);
        let mut insert_tags = mid_tags;
        insert_tags.push(out_tag);
        tags.splice(idx..=idx, insert_tags);
    }
    debug_assert_eq!(points.len(), tags.len());
    Ok((points, tags))
}

/// All pairwise transversal crossings of the loop, with an interval sweep
/// over bounding boxes to keep the pair count down.
fn loop_crossings(points: &[Point], tags: &[SegTag]) -> Result<Vec<(usize, Rat, usize, Rat, Point)>> {
    let n = points.len();
    let seg = |i: usize| (points[i].clone(), points[(i + 1) % n].clone());
    let mut order: Vec<usize> = (0..n).collect();
    let xmin = |i: usize| -> Rat {
        let (a, b) = seg(i);
        a.x.min(b.x)
    };
    let xmax = |i: usize| -> Rat {
        let (a, b) = seg(i);
        a.x.max(b.x)
    };
    order.sort_by(|&a, &b| xmin(a).cmp(&xmin(b)));
    let mut active: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for &i in &order {
        let xi = xmin(i);
        active.retain(|&j| xmax(j) >= xi);
        for &j in &active {
            let (lo, hi) = (i.min(j), i.max(j));
            if hi == lo + 1 || (lo == 0 && hi == n - 1) {
                continue; // adjacent segments share a vertex
            }
            let (a, b) = seg(lo);
            let (c, d) = seg(hi);
            match seg_seg(&a, &b, &c, &d) {
                SegSeg::Disjoint => {}
                SegSeg::Cross { at, s, t } => out.push((lo, s, hi, t, at)),
                other => {
                    return Err(Error::construction(
                        "hirasawa",
                        format!(
                            "non-transversal contact between segments {lo} ({:?}) and {hi} ({:?}): {other:?}",
                            tags[lo], tags[hi]
                        ),
                    ))
                }
            }
        }
        active.push(i);
    }
    Ok(out)
}

/// Resolve over/under for every crossing of the final loop.
fn classify_crossings(
    divide_dps: &[(usize, usize)],
    conv: Conventions,
    jump_kinds: &[Extremum],
    points: &[Point],
    tags: &[SegTag],
    raw: Vec<(usize, Rat, usize, Rat, Point)>,
) -> Result<Vec<LoopCrossing>> {
    let n = points.len();
    let seg_dir = |i: usize| points[(i + 1) % n].sub(&points[i]);
    let mut out = Vec::new();
    for (si, s, sj, t, at) in raw {
        let (ti, tj) = (tags[si], tags[sj]);
        // which passage is over: 0 -> si, 1 -> sj
        let over = match (ti, tj) {
            (SegTag::Strand { seg: a, right: _ }, SegTag::Strand { seg: b, right: _ }) => {
                let pair_ok = divide_dps
                    .iter()
                    .any(|(x, y)| (a == *x && b == *y) || (a == *y && b == *x));
                if !pair_ok {
                    return Err(Error::construction(
                        "hirasawa",
                        format!("stray strand crossing between divide segments {a} and {b}"),
                    ));
                }
                let hi = tangent_height(&seg_dir(si));
                let hj = tangent_height(&seg_dir(sj));
                debug_assert!(hi != hj);
                if (hi > hj) == conv.higher_tangent_over {
                    0
                } else {
                    1
                }
            }
            (SegTag::JumpOut { id }, other) | (other, SegTag::JumpOut { id }) => {
                if matches!(
                    other,
                    SegTag::JumpOut { .. } | SegTag::JumpBack { .. } | SegTag::JumpTurn { .. }
                ) {
                    return Err(Error::construction("hirasawa", "jump legs intersect"));
                }
                let leg_over = match jump_kinds[id] {
                    Extremum::Max { .. } => conv.max_out_over,
                    Extremum::Min { .. } => !conv.max_out_over,
                };
                let leg_is_si = matches!(ti, SegTag::JumpOut { .. });
                match (leg_over, leg_is_si) {
                    (true, true) | (false, false) => 0,
                    _ => 1,
                }
            }
            (SegTag::JumpBack { id }, other) | (other, SegTag::JumpBack { id }) => {
                if matches!(
                    other,
                    SegTag::JumpOut { .. } | SegTag::JumpBack { .. } | SegTag::JumpTurn { .. }
                ) {
                    return Err(Error::construction("hirasawa", "jump legs intersect"));
                }
                let back_over = match jump_kinds[id] {
                    Extremum::Max { .. } => !conv.max_out_over,
                    Extremum::Min { .. } => conv.max_out_over,
                };
                let leg_is_si = matches!(ti, SegTag::JumpBack { .. });
                match (back_over, leg_is_si) {
                    (true, true) | (false, false) => 0,
                    _ => 1,
                }
            }
            (SegTag::JumpTurn { .. }, _) | (_, SegTag::JumpTurn { .. }) => {
                return Err(Error::construction("hirasawa", "turnaround is crossed"));
            }
            _ => {
                return Err(Error::construction(
                    "hirasawa",
                    format!("unexpected crossing between {ti:?} and {tj:?}"),
                ));
            }
        };
        let d_over = seg_dir(if over == 0 { si } else { sj });
        let d_under = seg_dir(if over == 0 { sj } else { si });
        let sgn = sign(&d_over.cross(&d_under));
        debug_assert!(sgn != 0);
        out.push(LoopCrossing {
            at,
            passes: [(si, s), (sj, t)],
            over_pass: over,
            sign: sgn,
        });
    }
    Ok(out)
}

/// Assemble the combinatorial diagram from classified loop crossings.
fn to_diagram(crossings: &[LoopCrossing]) -> Diagram {
    // passages sorted along the loop
    let mut passages: Vec<(usize, Rat, usize, bool)> = Vec::new(); // (seg, frac, crossing, over)
    for (cid, c) in crossings.iter().enumerate() {
        for (k, (seg, t)) in c.passes.iter().enumerate() {
            passages.push((*seg, t.clone(), cid, c.over_pass == k));
        }
    }
    passages.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let strand: Vec<Passage> = passages
        .into_iter()
        .map(|(_, _, crossing, over)| Passage { crossing, over })
        .collect();
    let sign: Vec<i8> = crossings.iter().map(|c| c.sign).collect();
    Diagram { strands: vec![strand], sign }
}

/// Build the Hirasawa diagram of a divide with explicit conventions.
pub fn build_diagram_with(divide: &Divide, conv: Conventions) -> Result<HirasawaDiagram> {
    let diagonal = diagonalize(divide.curve())?;
    let dps = diagonal.curve.double_points()?;
    let dp_pairs: Vec<(usize, usize)> = dps.iter().map(|d| d.segs).collect();

    let mut last = None;
    for attempt in 0..6 {
        let delta = frac(1, 1 << attempt);
        let doubled = double(&diagonal, &delta)?;
        let jump_kinds: Vec<Extremum> = doubled.jump_caps.iter().map(|(_, k)| *k).collect();
        let routed = route_jumps(&doubled, attempt);
        let (points, tags) = match routed {
            Ok(x) => x,
            Err(e) => {
                last = Some(e);
                continue;
            }
        };
        let raw = match loop_crossings(&points, &tags) {
            Ok(r) => r,
            Err(e) => {
                last = Some(e);
                continue;
            }
        };
        match classify_crossings(&dp_pairs, conv, &jump_kinds, &points, &tags, raw) {
            Ok(crossings) => {
                // exactly four doubled crossings per divide double point
                let strand_crossings = crossings
                    .iter()
                    .filter(|c| {
                        matches!(tags[c.passes[0].0], SegTag::Strand { .. })
                            && matches!(tags[c.passes[1].0], SegTag::Strand { .. })
                    })
                    .count();
                if strand_crossings != 4 * dp_pairs.len() {
                    last = Some(Error::construction(
                        "hirasawa",
                        format!(
                            "expected {} strand crossings, found {strand_crossings}",
                            4 * dp_pairs.len()
                        ),
                    ));
                    continue;
                }
                let diagram = to_diagram(&crossings);
                diagram.validate()?;
                let reduced = diagram.reduce();
                return Ok(HirasawaDiagram {
                    diagonal,
                    doubled,
                    points,
                    tags,
                    crossings,
                    diagram,
                    reduced,
                });
            }
            Err(e) => {
                last = Some(e);
                continue;
            }
        }
    }
    Err(last.unwrap_or_else(|| Error::construction("hirasawa", "construction failed")))
}

/// Build the Hirasawa diagram with the frozen conventions.
pub fn build_diagram(divide: &Divide) -> Result<HirasawaDiagram> {
    build_diagram_with(divide, CONVENTIONS)
}

/// The Casson invariant of the divide knot computed along the diagram +
/// Alexander route: the independent oracle for `casson_formula`.
pub fn casson_oracle(divide: &Divide) -> Result<i64> {
    let h = build_diagram(divide)?;
    crate::alexander::casson_of_diagram(&h.reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::{alexander, casson_of_diagram, LaurentPoly};
    use crate::corpus;

    #[test]
    fn embedded_arc_gives_unknot() {
        let d = corpus::diameter_divide();
        let h = build_diagram(&d).unwrap();
        assert_eq!(h.diagram.component_count(), 1);
        assert_eq!(casson_of_diagram(&h.reduced).unwrap(), 0);
        assert_eq!(alexander(&h.reduced).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn one_loop_divide_gives_trefoil() {
        let d = corpus::standard_divide(1).unwrap();
        let h = build_diagram(&d).unwrap();
        assert_eq!(h.diagram.component_count(), 1);
        let p = alexander(&h.reduced).unwrap();
        assert_eq!(p, LaurentPoly::from_terms([(-1, 1), (0, -1), (1, 1)]));
        assert_eq!(casson_of_diagram(&h.reduced).unwrap(), 1);
    }

    #[test]
    fn standard_divides_give_trefoil_powers() {
        let tre = LaurentPoly::from_terms([(-1, 1), (0, -1), (1, 1)]);
        let mut power = tre.clone();
        for n in 2..=3usize {
            power = power.mul(&tre);
            let d = corpus::standard_divide(n).unwrap();
            let h = build_diagram(&d).unwrap();
            assert_eq!(alexander(&h.reduced).unwrap(), power, "Δ(D(D_{n}))");
            assert_eq!(casson_of_diagram(&h.reduced).unwrap(), n as i64);
        }
    }

    #[test]
    fn oracle_matches_formula_on_fixtures() {
        for d in [
            corpus::diameter_divide(),
            corpus::standard_divide(1).unwrap(),
            corpus::standard_divide(2).unwrap(),
            corpus::interleaved_divide(),
            corpus::nested_divide(),
        ] {
            assert_eq!(
                casson_oracle(&d).unwrap(),
                d.casson_formula().unwrap(),
                "oracle disagrees with the Arnold-invariant formula"
            );
        }
    }

    #[test]
    fn oracle_matches_formula_on_random_divides() {
        let params = corpus::GenParams { max_crossings: 5, max_steps: 44 };
        for seed in 100..110 {
            let d = corpus::random_divide(seed, &params);
            assert_eq!(
                casson_oracle(&d).unwrap(),
                d.casson_formula().unwrap(),
                "seed {seed}"
            );
        }
    }
}
