//! Arnold's perestroikas as local PL surgeries: positive self-tangency
//! moves realized by finger splices, triple-point moves realized by sliding
//! a triangle side across the opposite vertex, and the second-order delta
//! formulas for the Casson invariant under tangency moves on divides.

use crate::arnold;
use crate::curve::{CurveKind, DoublePoint, PLCurve};
use crate::divide::Divide;
use crate::error::{Error, Result};
use crate::num::*;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    DirectTangency,
    InverseTangency,
    TriplePoint,
}

/// A validated site for a positive self-tangency move: a finger grown from
/// a sub-segment of `from_seg` across the interior of `across_seg`, with
/// the swept quadrilateral free of any other part of the curve.
#[derive(Clone, Debug)]
pub struct TangencySite {
    pub kind: MoveKind,
    pub from_seg: usize,
    pub across_seg: usize,
    a1: Point,
    a2: Point,
    b1: Point,
    b2: Point,
}

/// A vanishing triangle: three pairwise-crossing segments with an empty
/// triangle between the crossings.
#[derive(Clone, Debug)]
pub struct TripleSite {
    /// double-point ids of the triangle corners, as (opposite carrier,
    /// corner id): corner `k` is the crossing NOT involving `carriers[k]`
    pub corners: [usize; 3],
    /// the three carrier segments
    pub carriers: [usize; 3],
    /// which carrier slides across the opposite corner
    pub movable: usize,
}

/// Outcome of a move: the input curve, the output curve, and what changed.
#[derive(Clone, Debug)]
pub struct MoveReceipt {
    pub kind: MoveKind,
    pub before: PLCurve,
    pub after: PLCurve,
    /// positions of double points created by a tangency move (empty for
    /// triple moves)
    pub created: Vec<Point>,
    /// vanishing-triangle signs for triple moves
    pub triangle_signs: Option<(i8, i8)>,
}

impl MoveReceipt {
    /// A positive tangency move creates exactly two double points.
    pub fn is_positive_tangency(&self) -> bool {
        self.created.len() == 2
    }
}

fn quad_is_convex_ccw(q: &[Point; 4]) -> bool {
    (0..4).all(|i| orient(&q[i], &q[(i + 1) % 4], &q[(i + 2) % 4]) > 0)
}

fn point_in_convex(q: &[Point; 4], p: &Point) -> bool {
    (0..4).all(|i| orient(&q[i], &q[(i + 1) % 4], p) >= 0)
}

fn seg_hits_convex(q: &[Point; 4], a: &Point, b: &Point) -> bool {
    if point_in_convex(q, a) || point_in_convex(q, b) {
        return true;
    }
    (0..4).any(|i| seg_seg(&q[i], &q[(i + 1) % 4], a, b) != SegSeg::Disjoint)
}

/// Enumerate tangency sites on a generic curve. Best effort: a site is
/// proposed for every ordered segment pair whose connecting corridor is
/// clear; completeness is not attempted.
pub fn find_tangency_sites(curve: &PLCurve, want: Option<MoveKind>) -> Vec<TangencySite> {
    let m = curve.seg_count();
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i == j || adjacent(curve, i, j) {
                continue;
            }
            if let Some(site) = tangency_site(curve, i, j) {
                if want.is_none() || want == Some(site.kind) {
                    out.push(site);
                }
            }
        }
    }
    out
}

fn adjacent(curve: &PLCurve, i: usize, j: usize) -> bool {
    let m = curve.seg_count();
    let (lo, hi) = (i.min(j), i.max(j));
    hi == lo + 1 || (curve.kind == CurveKind::Closed && lo == 0 && hi == m - 1)
}

fn tangency_site(curve: &PLCurve, i: usize, j: usize) -> Option<TangencySite> {
    let (pi, qi) = curve.seg(i);
    let (pj, qj) = curve.seg(j);
    let di = qi.sub(pi);
    let dj = qj.sub(pj);
    let a1 = pi.add(&di.scale(&frac(2, 5)));
    let a2 = pi.add(&di.scale(&frac(3, 5)));
    let mid_i = pi.add(&di.scale(&frac(1, 2)));
    let mid_j = pj.add(&dj.scale(&frac(1, 2)));
    let u = mid_j.sub(&mid_i);
    let denom = u.cross(&dj);
    if denom.is_zero() {
        return None;
    }
    // ray A_k + s u meets line(j) at parameter t_k along j
    let hit = |a: &Point| -> Option<(Rat, Rat)> {
        let s = pj.sub(a).cross(&dj) / denom.clone();
        if !s.is_positive() {
            return None;
        }
        let t = pj.sub(a).cross(&u) / denom.clone();
        Some((s, t))
    };
    let (s1, t1) = hit(&a1)?;
    let (s2, t2) = hit(&a2)?;
    let lo = frac(1, 10);
    let hi = frac(9, 10);
    if t1 < lo || t1 > hi || t2 < lo || t2 > hi || t1 == t2 {
        return None;
    }
    // tip edge parallel to j: b2 = b1 + (a2 - a1) + lambda u
    let overshoot = Rat::one() + frac(1, 7);
    let s1b = &s1 * &overshoot;
    let b1 = a1.add(&u.scale(&s1b));
    let lambda = -(a2.sub(&a1).cross(&dj)) / denom.clone();
    let s2b = &s1b + &lambda;
    let b2 = a2.add(&u.scale(&s2b));
    // b2 must also be beyond j along its own ray
    if s2b <= s2 {
        return None;
    }
    let quad = [a1.clone(), a2.clone(), b2.clone(), b1.clone()];
    let quad = if quad_is_convex_ccw(&quad) {
        quad
    } else {
        let alt = [a2.clone(), a1.clone(), b1.clone(), b2.clone()];
        if !quad_is_convex_ccw(&alt) {
            return None;
        }
        alt
    };
    // the swept region must meet nothing but the host sub-segment and the
    // crossed part of j
    for k in 0..curve.seg_count() {
        if k == i || k == j {
            continue;
        }
        let (a, b) = curve.seg(k);
        if seg_hits_convex(&quad, a, b) {
            return None;
        }
    }
    // the host segment may touch the quad only along [a1, a2]
    {
        let (a, b) = curve.seg(i);
        for piece in [(a.clone(), a1.clone()), (a2.clone(), b.clone())] {
            if strictly_enters_convex(&quad, &piece.0, &piece.1) {
                return None;
            }
        }
    }
    // within the disc for open curves
    if curve.kind == CurveKind::Open {
        for p in [&b1, &b2] {
            if p.norm2() >= rat(1) {
                return None;
            }
        }
    }
    let tip = b2.sub(&b1);
    let kind = if tip.dot(&dj).is_positive() {
        MoveKind::DirectTangency
    } else {
        MoveKind::InverseTangency
    };
    Some(TangencySite { kind, from_seg: i, across_seg: j, a1, a2, b1, b2 })
}

fn strictly_enters_convex(q: &[Point; 4], a: &Point, b: &Point) -> bool {
    let strictly_in =
        |p: &Point| (0..4).all(|i| orient(&q[i], &q[(i + 1) % 4], p) > 0);
    if strictly_in(a) || strictly_in(b) {
        return true;
    }
    // proper crossings with the quad boundary mean the segment passes inside
    (0..4).any(|i| matches!(seg_seg(&q[i], &q[(i + 1) % 4], a, b), SegSeg::Cross { .. }))
}

/// Execute a positive self-tangency move at the given site.
pub fn apply_tangency(curve: &PLCurve, site: &TangencySite) -> Result<MoveReceipt> {
    let before_dps = curve.double_points()?;
    let mut pts = Vec::new();
    for (v, p) in curve.points().iter().enumerate() {
        pts.push(p.clone());
        if v == site.from_seg {
            pts.push(site.a1.clone());
            pts.push(site.b1.clone());
            pts.push(site.b2.clone());
            pts.push(site.a2.clone());
        }
    }
    let after = PLCurve::new(curve.kind, pts)?;
    let report = after.validate_plane();
    if !report.valid {
        return Err(Error::BadSite(format!(
            "tangency splice is not generic: {}",
            report.violations[0]
        )));
    }
    if report.double_points.len() != before_dps.len() + 2 {
        return Err(Error::BadSite(format!(
            "tangency move created {} double points, expected 2",
            report.double_points.len() as i64 - before_dps.len() as i64
        )));
    }
    let before_pos: Vec<&Point> = before_dps.iter().map(|d| &d.position).collect();
    let created: Vec<Point> = report
        .double_points
        .iter()
        .filter(|d| !before_pos.contains(&&d.position))
        .map(|d| d.position.clone())
        .collect();
    debug_assert_eq!(created.len(), 2);
    Ok(MoveReceipt {
        kind: site.kind,
        before: curve.clone(),
        after,
        created,
        triangle_signs: None,
    })
}

/// All empty vanishing triangles of a generic curve.
pub fn find_triple_sites(curve: &PLCurve) -> Result<Vec<TripleSite>> {
    let dps = curve.double_points()?;
    let n = dps.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in (x + 1)..n {
            for z in (y + 1)..n {
                if let Some(site) = triangle_of(curve, &dps, [x, y, z]) {
                    out.push(site);
                }
            }
        }
    }
    Ok(out)
}

fn triangle_of(curve: &PLCurve, dps: &[DoublePoint], ids: [usize; 3]) -> Option<TripleSite> {
    // the three crossings must pairwise share a carrier segment, using
    // three distinct segments total
    let segs: Vec<(usize, usize)> = ids.iter().map(|&i| dps[i].segs).collect();
    let mut carriers: Vec<usize> = segs.iter().flat_map(|(a, b)| [*a, *b]).collect();
    carriers.sort();
    carriers.dedup();
    if carriers.len() != 3 {
        return None;
    }
    // corner k is the crossing avoiding carriers[k]
    let mut corners = [usize::MAX; 3];
    for (k, &c) in carriers.iter().enumerate() {
        let found: Vec<usize> = ids
            .iter()
            .copied()
            .filter(|&i| dps[i].segs.0 != c && dps[i].segs.1 != c)
            .collect();
        if found.len() != 1 {
            return None;
        }
        corners[k] = found[0];
    }
    // triangle interior must be empty and the sides free of other curve parts
    let tri = [
        dps[corners[0]].position.clone(),
        dps[corners[1]].position.clone(),
        dps[corners[2]].position.clone(),
    ];
    if orient(&tri[0], &tri[1], &tri[2]) == 0 {
        return None;
    }
    for k in 0..curve.seg_count() {
        if carriers.contains(&k) {
            continue;
        }
        let (a, b) = curve.seg(k);
        if seg_hits_triangle(&tri, a, b) {
            return None;
        }
    }
    // no fourth crossing on a side
    for dp in dps {
        if ids.contains(&dp.id) {
            continue;
        }
        if point_in_triangle(&tri, &dp.position) {
            return None;
        }
    }
    Some(TripleSite { corners, carriers: [carriers[0], carriers[1], carriers[2]], movable: 0 })
}

fn tri_orient(t: &[Point; 3]) -> i8 {
    orient(&t[0], &t[1], &t[2])
}

fn point_in_triangle(t: &[Point; 3], p: &Point) -> bool {
    let o = tri_orient(t);
    (0..3).all(|i| orient(&t[i], &t[(i + 1) % 3], p) * o >= 0)
}

fn seg_hits_triangle(t: &[Point; 3], a: &Point, b: &Point) -> bool {
    if point_in_triangle(t, a) || point_in_triangle(t, b) {
        return true;
    }
    (0..3).any(|i| matches!(seg_seg(&t[i], &t[(i + 1) % 3], a, b), SegSeg::Cross { .. }))
}

/// Sign of a vanishing triangle: `(-1)^q` where `q` counts the sides whose
/// orientation induced by the cyclic order of traversal matches the curve.
pub fn triangle_sign(curve: &PLCurve, site: &TripleSite) -> Result<i8> {
    let dps = curve.double_points()?;
    triangle_sign_of(curve, &dps, &site.corners, &site.carriers)
}

fn triangle_sign_of(
    curve: &PLCurve,
    dps: &[DoublePoint],
    corners: &[usize; 3],
    carriers: &[usize; 3],
) -> Result<i8> {
    // side k runs along carriers[k] between the two corners on it
    // (every corner except corners[k])
    let corner_pos = |k: usize| dps[corners[k]].position.clone();
    // traversal parameter of each side: the visit parameter of its carrier
    let visit_on = |corner: usize, carrier: usize| -> Result<Rat> {
        let dp = &dps[corners[corner]];
        let m = rat(curve.seg_count() as i64);
        for t in [&dp.visits.0, &dp.visits.1] {
            let seg = (t * &m).floor();
            let seg: i64 = crate::curve::int_to_i64(&seg);
            if seg as usize == carrier {
                return Ok(t.clone());
            }
        }
        Err(Error::internal("corner visit not on carrier"))
    };
    // per side: (entry param, exit param, from corner, to corner)
    let mut sides = Vec::new();
    for k in 0..3 {
        let ends: Vec<usize> = (0..3).filter(|&c| c != k).collect();
        let t_a = visit_on(ends[0], carriers[k])?;
        let t_b = visit_on(ends[1], carriers[k])?;
        let (t_in, c_in, t_out, c_out) = if t_a < t_b {
            (t_a, ends[0], t_b, ends[1])
        } else {
            (t_b, ends[1], t_a, ends[0])
        };
        sides.push((t_in, t_out, c_in, c_out, k));
    }
    // cyclic order in which the curve meets the sides
    sides.sort_by(|x, y| x.0.cmp(&y.0));
    // walk the triangle boundary visiting the sides in that order; the walk
    // direction on each side runs from its shared corner with the previous
    // side to the shared corner with the next
    let mut q = 0;
    for i in 0..3 {
        let (_, _, c_in, c_out, _k) = sides[i].clone();
        let next = &sides[(i + 1) % 3];
        // the walk leaves this side at the corner shared with the next side
        let shared_with_next = if next.2 == c_in || next.3 == c_in { c_in } else { c_out };
        let walk_from = if shared_with_next == c_in { c_out } else { c_in };
        // curve direction on the side: from entry corner to exit corner
        let curve_dir = corner_pos(c_out).sub(&corner_pos(c_in));
        let walk_dir = corner_pos(shared_with_next).sub(&corner_pos(walk_from));
        if curve_dir.dot(&walk_dir).is_positive() {
            q += 1;
        }
    }
    Ok(if q % 2 == 0 { 1 } else { -1 })
}

/// Execute a triple-point move: slide the movable carrier across the
/// opposite corner.
pub fn apply_triple(curve: &PLCurve, site: &TripleSite) -> Result<MoveReceipt> {
    let dps = curve.double_points()?;
    let sign_before = triangle_sign_of(curve, &dps, &site.corners, &site.carriers)?;
    let mv = site.carriers[site.movable];
    let opp = &dps[site.corners[site.movable]]; // corner not on the movable side
    let _tri = [
        dps[site.corners[0]].position.clone(),
        dps[site.corners[1]].position.clone(),
        dps[site.corners[2]].position.clone(),
    ];
    // the two triangle corners on the movable side
    let on_side: Vec<Point> = (0..3)
        .filter(|&k| k != site.movable)
        .map(|k| dps[site.corners[k]].position.clone())
        .collect();
    let side_mid = on_side[0].mid(&on_side[1]);
    // push the side past the opposite corner by the same distance again
    let push = opp.position.sub(&side_mid).scale(&rat(2));
    let (pa, pb) = curve.seg(mv);
    let da = pa.add(&push);
    let db = pb.add(&push);
    // detour: pa -> cut1 -> cut1+push -> cut2+push -> cut2 -> pb, where the
    // cuts bracket the side on the carrier
    let d = pb.sub(pa);
    let n2 = d.norm2();
    let t1 = on_side[0].sub(pa).dot(&d) / n2.clone();
    let t2 = on_side[1].sub(pa).dot(&d) / n2;
    let (t_lo, t_hi) = if t1 < t2 { (t1, t2) } else { (t2, t1) };
    let margin = (&t_hi - &t_lo) / rat(4);
    let c_lo = pa.add(&d.scale(&(&t_lo - &margin)));
    let c_hi = pa.add(&d.scale(&(&t_hi + &margin)));
    let _ = (da, db);

    let mut pts = Vec::new();
    for (v, p) in curve.points().iter().enumerate() {
        pts.push(p.clone());
        if v == mv {
            // insert in traversal order along the carrier
            pts.push(c_lo.clone());
            pts.push(c_lo.add(&push));
            pts.push(c_hi.add(&push));
            pts.push(c_hi.clone());
        }
    }
    let after = PLCurve::new(curve.kind, pts)?;
    let report = after.validate_plane();
    if !report.valid {
        return Err(Error::BadSite(format!(
            "triple move splice is not generic: {}",
            report.violations[0]
        )));
    }
    if report.double_points.len() != dps.len() {
        return Err(Error::BadSite(
            "triple move changed the double point count".to_string(),
        ));
    }
    if curve.kind == CurveKind::Open {
        for p in [&c_lo.add(&push), &c_hi.add(&push)] {
            if p.norm2() >= rat(1) {
                return Err(Error::BadSite("triple move leaves the disc".into()));
            }
        }
    }
    // find the new triangle: the moved side now crosses the carriers of the
    // two old side-corners on the other side of `opp`
    let after_dps = after.double_points()?;
    let sign_after = {
        // the new triangle has the same opposite corner and the two
        // crossings created by the moved side; locate them as the crossings
        // nearest to opp that are not among the old ones
        let old_pos: Vec<&Point> = dps.iter().map(|d| &d.position).collect();
        let new_ids: Vec<usize> = after_dps
            .iter()
            .filter(|d| !old_pos.contains(&&d.position))
            .map(|d| d.id)
            .collect();
        if new_ids.len() != 2 {
            return Err(Error::BadSite("triple move did not produce a clean slide".into()));
        }
        let opp_new = after_dps
            .iter()
            .find(|d| d.position == opp.position)
            .ok_or_else(|| Error::BadSite("opposite corner moved".into()))?;
        let corners = [opp_new.id, new_ids[0], new_ids[1]];
        // carriers of the new triangle
        let mut carr: Vec<usize> = corners
            .iter()
            .flat_map(|&i| {
                let d = &after_dps[i];
                [d.segs.0, d.segs.1]
            })
            .collect();
        carr.sort();
        carr.dedup();
        if carr.len() != 3 {
            return Err(Error::BadSite("new triangle is not clean".into()));
        }
        // order carriers so corner k avoids carrier k
        let mut ordered = [usize::MAX; 3];
        for (k, &c) in carr.iter().enumerate() {
            let found: Vec<usize> = corners
                .iter()
                .copied()
                .filter(|&i| after_dps[i].segs.0 != c && after_dps[i].segs.1 != c)
                .collect();
            if found.len() != 1 {
                return Err(Error::BadSite("new triangle is degenerate".into()));
            }
            ordered[k] = found[0];
        }
        triangle_sign_of(&after, &after_dps, &ordered, &[carr[0], carr[1], carr[2]])?
    };
    if sign_after != -sign_before {
        return Err(Error::internal(
            "vanishing triangle signs before and after a triple move must differ",
        ));
    }
    Ok(MoveReceipt {
        kind: MoveKind::TriplePoint,
        before: curve.clone(),
        after,
        created: vec![],
        triangle_signs: Some((sign_before, sign_after)),
    })
}

/// Grow a finger from segment `i` across both branches of crossing `dp`,
/// producing a curve that contains an empty vanishing triangle near the
/// crossing. Used to manufacture triple-move sites.
pub fn poke_triangle(curve: &PLCurve, from_seg: usize, dp_id: usize) -> Result<PLCurve> {
    let dps = curve.double_points()?;
    let dp = dps
        .iter()
        .find(|d| d.id == dp_id)
        .ok_or(Error::NoSuchVertex(dp_id))?;
    let i = from_seg;
    if i == dp.segs.0 || i == dp.segs.1 {
        return Err(Error::BadSite("finger source carries the crossing".into()));
    }
    let (pi, qi) = curve.seg(i);
    let di = qi.sub(pi);
    let a1 = pi.add(&di.scale(&frac(2, 5)));
    let a2 = pi.add(&di.scale(&frac(3, 5)));
    let mid = a1.mid(&a2);
    let u = dp.position.sub(&mid);
    // overshoot past the crossing
    let b1 = a1.add(&u.scale(&frac(9, 8)));
    let b2 = a2.add(&u.scale(&frac(9, 8)));
    let mut pts = Vec::new();
    for (v, p) in curve.points().iter().enumerate() {
        pts.push(p.clone());
        if v == i {
            pts.push(a1.clone());
            pts.push(b1.clone());
            pts.push(b2.clone());
            pts.push(a2.clone());
        }
    }
    let after = PLCurve::new(curve.kind, pts)?;
    let report = after.validate_plane();
    if !report.valid {
        return Err(Error::BadSite("triangle poke is not generic".into()));
    }
    if report.double_points.len() != dps.len() + 4 {
        return Err(Error::BadSite("triangle poke must add exactly 4 crossings".into()));
    }
    if curve.kind == CurveKind::Open {
        for p in [&b1, &b2] {
            if p.norm2() >= rat(1) {
                return Err(Error::BadSite("poke leaves the disc".into()));
            }
        }
    }
    Ok(after)
}

/// Both printed forms of the delta of the Casson invariant under a positive
/// inverse self-tangency move on an I-divide.
#[derive(Clone, Debug)]
pub struct ChmutovReport {
    pub form_a: i64,
    pub form_b: i64,
    pub value: i64,
}

fn created_chords(before: &Divide, after: &Divide) -> Result<(usize, usize)> {
    let before_pos: Vec<&Point> =
        before.double_points().iter().map(|d| &d.position).collect();
    let created: Vec<&DoublePoint> = after
        .double_points()
        .iter()
        .filter(|d| !before_pos.contains(&&d.position))
        .collect();
    if created.len() != 2 {
        return Err(Error::BadSite("not a single positive tangency move".into()));
    }
    let (c1, c2) = (created[0], created[1]);
    // outer chord contains the inner one
    let span = |d: &DoublePoint| (d.visits.0.clone(), d.visits.1.clone());
    let (s1, s2) = (span(c1), span(c2));
    if s1.0 < s2.0 && s2.1 < s1.1 {
        Ok((c1.id, c2.id))
    } else if s2.0 < s1.0 && s1.1 < s2.1 {
        Ok((c2.id, c1.id))
    } else {
        Err(Error::BadSite("created chords are not nested (not an inverse move)".into()))
    }
}

/// Evaluate the inverse-tangency delta formulas on a before/after pair,
/// asserting that both forms agree.
pub fn chmutov_delta_inverse(before: &Divide, after: &Divide) -> Result<ChmutovReport> {
    let (a_id, b_id) = created_chords(before, after)?;
    let dps = after.double_points();
    let a = dps.iter().find(|d| d.id == a_id).unwrap().clone();
    let b = dps.iter().find(|d| d.id == b_id).unwrap().clone();

    let sa = after.smooth_at(a_id)?;
    let sb = after.smooth_at(b_id)?;
    let jt_a = arnold::j_tilde(&sa.closed_part)?;
    let jt_b = arnold::j_tilde(&sb.closed_part)?;
    let ind_ab = sa.closed_part.point_index(&b.position)?;
    let ind_ba = sb.closed_part.point_index(&a.position)?;
    if ind_ab != ind_ba {
        return Err(Error::internal(format!(
            "ind_Oa(b) = {ind_ab} but ind_Ob(a) = {ind_ba}"
        )));
    }
    if sa.crossings != sb.crossings {
        return Err(Error::internal("#(Oa∩Ia) differs from #(Ob∩Ib)"));
    }
    // identity: J̃(O_a) = J̃(O_b) - 2 ind + 1
    let two_ind = &ind_ab * rat(2);
    if !two_ind.is_integer() {
        return Err(Error::internal("edge index is not half-integral"));
    }
    let two_ind = crate::curve::int_to_i64(&two_ind);
    if jt_a != jt_b - two_ind + 1 {
        return Err(Error::internal(format!(
            "identity J̃(Oa) = J̃(Ob) - 2ind + 1 fails: {jt_a} vs {jt_b} - {two_ind} + 1"
        )));
    }

    let alpha_beta = alpha_beta_crossings(after, &a)?;
    let form_a = 2 * jt_a + two_ind + sa.crossings as i64 + 2 * alpha_beta - 1;
    let form_b = 2 * jt_b - two_ind + sb.crossings as i64 + 2 * alpha_beta + 1;
    if form_a != form_b {
        return Err(Error::internal(format!(
            "inverse-move delta forms disagree: {form_a} vs {form_b}"
        )));
    }
    Ok(ChmutovReport { form_a, form_b, value: form_a })
}

/// Evaluate the direct-tangency delta formulas on a before/after pair.
pub fn chmutov_delta_direct(before: &Divide, after: &Divide) -> Result<ChmutovReport> {
    let before_pos: Vec<&Point> =
        before.double_points().iter().map(|d| &d.position).collect();
    let created: Vec<usize> = after
        .double_points()
        .iter()
        .filter(|d| !before_pos.contains(&&d.position))
        .map(|d| d.id)
        .collect();
    if created.len() != 2 {
        return Err(Error::BadSite("not a single positive tangency move".into()));
    }
    let sa = after.smooth_at(created[0])?;
    let sb = after.smooth_at(created[1])?;
    if sa.crossings != sb.crossings {
        return Err(Error::internal("#(Oa∩Ia) differs from #(Ob∩Ib)"));
    }
    let form_a = 2 * arnold::j_tilde(&sa.closed_part)? + sa.crossings as i64;
    let form_b = 2 * arnold::j_tilde(&sb.closed_part)? + sb.crossings as i64;
    if form_a != form_b {
        return Err(Error::internal(format!(
            "direct-move delta forms disagree: {form_a} vs {form_b}"
        )));
    }
    Ok(ChmutovReport { form_a, form_b, value: form_a })
}

/// Crossings between the initial piece (before the outer chord) and the
/// final piece (after it): the `#(α∩β)` term.
fn alpha_beta_crossings(divide: &Divide, outer: &DoublePoint) -> Result<i64> {
    let (t1, t2) = (&outer.visits.0, &outer.visits.1);
    let mut count = 0i64;
    for dp in divide.double_points() {
        if dp.id == outer.id {
            continue;
        }
        let (u1, u2) = (&dp.visits.0, &dp.visits.1);
        let in_alpha = |t: &Rat| t < t1;
        let in_beta = |t: &Rat| t > t2;
        if (in_alpha(u1) && in_beta(u2)) || (in_alpha(u2) && in_beta(u1)) {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arnold::{j_minus, j_plus, strangeness};
    use crate::corpus;

    fn invariants(c: &PLCurve) -> (i64, i64, i64) {
        (
            strangeness(c).unwrap(),
            j_plus(c).unwrap(),
            j_minus(c).unwrap(),
        )
    }

    #[test]
    fn direct_tangency_axiom() {
        let base = corpus::standard_divide(1).unwrap().closure().unwrap();
        let sites = find_tangency_sites(&base, Some(MoveKind::DirectTangency));
        assert!(!sites.is_empty());
        let r = apply_tangency(&base, &sites[0]).unwrap();
        assert!(r.is_positive_tangency());
        let (st0, jp0, jm0) = invariants(&r.before);
        let (st1, jp1, jm1) = invariants(&r.after);
        assert_eq!(st1, st0);
        assert_eq!(jp1, jp0 + 2);
        assert_eq!(jm1, jm0);
    }

    #[test]
    fn inverse_tangency_axiom() {
        let base = corpus::standard_divide(1).unwrap().closure().unwrap();
        let sites = find_tangency_sites(&base, Some(MoveKind::InverseTangency));
        assert!(!sites.is_empty());
        let r = apply_tangency(&base, &sites[0]).unwrap();
        let (st0, jp0, jm0) = invariants(&r.before);
        let (st1, jp1, jm1) = invariants(&r.after);
        assert_eq!(st1, st0);
        assert_eq!(jp1, jp0);
        assert_eq!(jm1, jm0 - 2);
    }

    #[test]
    fn triple_move_axiom() {
        let base = corpus::standard_divide(1).unwrap().closure().unwrap();
        let mut checked = 0;
        'outer: for seg in 0..base.seg_count() {
            for dp in base.double_points().unwrap() {
                let Ok(poked) = poke_triangle(&base, seg, dp.id) else { continue };
                for site in find_triple_sites(&poked).unwrap() {
                    let Ok(r) = apply_triple(&poked, &site) else { continue };
                    let (s_before, s_after) = r.triangle_signs.unwrap();
                    assert_eq!(s_after, -s_before);
                    let (st0, jp0, jm0) = invariants(&r.before);
                    let (st1, jp1, jm1) = invariants(&r.after);
                    // St moves by the sign of the newborn triangle, J± stay fixed
                    assert_eq!(st1 - st0, s_after as i64);
                    assert_eq!(jp1, jp0);
                    assert_eq!(jm1, jm0);
                    checked += 1;
                    if checked >= 3 {
                        break 'outer;
                    }
                }
            }
        }
        assert!(checked >= 1, "no executable triple move found");
    }

    #[test]
    fn negative_moves_negate_the_deltas() {
        let base = corpus::standard_divide(1).unwrap().closure().unwrap();
        let sites = find_tangency_sites(&base, Some(MoveKind::DirectTangency));
        let r = apply_tangency(&base, &sites[0]).unwrap();
        // read the same receipt backwards: a negative direct tangency
        let (st0, jp0, jm0) = invariants(&r.after);
        let (st1, jp1, jm1) = invariants(&r.before);
        assert_eq!(st1 - st0, 0);
        assert_eq!(jp1 - jp0, -2);
        assert_eq!(jm1 - jm0, 0);
    }

    #[test]
    fn chmutov_deltas_match_casson_difference() {
        let d = corpus::standard_divide(1).unwrap();
        for kind in [MoveKind::InverseTangency, MoveKind::DirectTangency] {
            let sites = find_tangency_sites(d.curve(), Some(kind));
            assert!(!sites.is_empty(), "{kind:?} sites on D1");
            let r = apply_tangency(d.curve(), &sites[0]).unwrap();
            let before = Divide::new(r.before.clone()).unwrap();
            let after = Divide::new(r.after.clone()).unwrap();
            let delta = after.casson_formula().unwrap() - before.casson_formula().unwrap();
            let rep = match kind {
                MoveKind::InverseTangency => chmutov_delta_inverse(&before, &after).unwrap(),
                _ => chmutov_delta_direct(&before, &after).unwrap(),
            };
            assert_eq!(rep.value, delta, "{kind:?} delta");
        }
    }

    #[test]
    fn triple_move_preserves_casson() {
        let d = corpus::standard_divide(1).unwrap();
        let dps = d.double_points().to_vec();
        let mut done = false;
        'outer: for seg in 0..d.curve().seg_count() {
            for dp in &dps {
                if let Ok(poked) = poke_triangle(d.curve(), seg, dp.id) {
                    if let Ok(before) = Divide::new(poked.clone()) {
                        let sites = find_triple_sites(&poked).unwrap();
                        if let Some(site) = sites.first() {
                            if let Ok(r) = apply_triple(&poked, site) {
                                let after = Divide::new(r.after).unwrap();
                                assert_eq!(
                                    before.casson_formula().unwrap(),
                                    after.casson_formula().unwrap()
                                );
                                done = true;
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        assert!(done, "no executable triple move found on a poked D1");
    }
}
