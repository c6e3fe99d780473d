//! Arnold invariants of generic closed plane curves: strangeness `St`,
//! `J⁺`, `J⁻`, and the derived quantity `J̃ = 1 − J⁻`, computed through the
//! oriented smoothing of the curve into a family of embedded circles.

use crate::curve::{int_to_i64, winding_of_loop, CurveKind, DoublePoint, PLCurve};
use crate::error::{Error, Result};
use crate::num::*;
use num_traits::{Signed, Zero};

/// One embedded circle of a smoothed family.
#[derive(Clone, Debug)]
pub struct SmoothedCircle {
    pub points: Vec<Point>,
    /// +1 counterclockwise, -1 clockwise.
    pub orientation: i8,
}

/// Disjoint embedded oriented circles with their containment forest.
#[derive(Clone, Debug)]
pub struct SmoothedFamily {
    pub circles: Vec<SmoothedCircle>,
    /// `parent[i]` is the index of the smallest circle strictly containing
    /// circle `i`, if any.
    pub parent: Vec<Option<usize>>,
}

/// Per-region data of a smoothed family: one record per bounded face (the
/// face just inside each circle) plus the unbounded face.
#[derive(Clone, Debug)]
pub struct RegionProfile {
    /// `(index, euler)` for the face just inside circle `i`.
    pub bounded: Vec<(i64, i64)>,
    /// The unbounded face always has index 0.
    pub unbounded_index: i64,
}

impl SmoothedFamily {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    /// Signed winding number of the whole family around `p`.
    pub fn winding_number(&self, p: &Point) -> Result<i64> {
        for c in &self.circles {
            let on = (0..c.points.len()).any(|i| {
                let a = &c.points[i];
                let b = &c.points[(i + 1) % c.points.len()];
                crate::num::on_segment(p, a, b)
            });
            if on {
                return Err(Error::PointOnCurve);
            }
        }
        Ok(self.circles.iter().map(|c| winding_of_loop(&c.points, p)).sum())
    }

    fn children(&self, i: usize) -> usize {
        self.parent.iter().filter(|p| **p == Some(i)).count()
    }
}

/// Split a curve at every double-point passage and reconnect respecting the
/// orientation. Returns, per passage (sorted by parameter), the cut points
/// before and after the passage, plus the passage bookkeeping.
pub(crate) struct Passages {
    /// (param, dp index in the sorted dp list, first visit?)
    pub order: Vec<(Rat, usize, bool)>,
    /// geometric cut point strictly before / after each passage (same order)
    pub before: Vec<Point>,
    pub after: Vec<Point>,
    /// polyline vertices strictly between passage k and passage k+1
    pub arc_points: Vec<Vec<Point>>,
}

pub(crate) fn cut_passages(curve: &PLCurve, dps: &[DoublePoint]) -> Result<Passages> {
    let m = curve.seg_count();
    let mut order: Vec<(Rat, usize, bool)> = Vec::new();
    for (k, dp) in dps.iter().enumerate() {
        order.push((dp.visits.0.clone(), k, true));
        order.push((dp.visits.1.clone(), k, false));
    }
    order.sort_by(|a, b| a.0.cmp(&b.0));

    // safe radius per double point
    let mut radius2: Vec<Rat> = Vec::with_capacity(dps.len());
    for dp in dps {
        let mut r2: Option<Rat> = None;
        for i in 0..m {
            if i == dp.segs.0 || i == dp.segs.1 {
                continue;
            }
            let (a, b) = curve.seg(i);
            let d2 = dist2_point_seg(&dp.position, a, b);
            r2 = Some(match r2 {
                None => d2,
                Some(c) => c.min(d2),
            });
        }
        for s in [dp.segs.0, dp.segs.1] {
            let (a, b) = curve.seg(s);
            r2 = Some(match r2 {
                None => dp.position.dist2(a).min(dp.position.dist2(b)),
                Some(c) => c.min(dp.position.dist2(a)).min(dp.position.dist2(b)),
            });
        }
        let r2 = r2.unwrap_or_else(|| rat(1));
        if r2.is_zero() {
            return Err(Error::internal("double point touches another feature"));
        }
        radius2.push(r2 / rat(4));
    }

    // parameter gaps between consecutive passages (cyclic for closed curves)
    let total = order.len();
    let mut before = vec![Point::origin(); total];
    let mut after = vec![Point::origin(); total];
    let m_rat = rat(m as i64);
    for k in 0..total {
        let (t, dpi, _) = &order[k];
        let dp = &dps[*dpi];
        let seg_dir_len2 = {
            // direction of the segment carrying this passage
            let seg = carrying_seg(curve, dp, t);
            curve.seg_dir(seg).norm2()
        };
        let lam_geom = below_sqrt(&(radius2[*dpi].clone() / seg_dir_len2));
        // parameter-space equivalent of the geometric offset
        let lam_param = &lam_geom / &m_rat;
        let prev_t = if k == 0 {
            if curve.kind == CurveKind::Closed {
                order[total - 1].0.clone() - rat(1)
            } else {
                Rat::zero()
            }
        } else {
            order[k - 1].0.clone()
        };
        let next_t = if k + 1 == total {
            if curve.kind == CurveKind::Closed {
                order[0].0.clone() + rat(1)
            } else {
                rat(1)
            }
        } else {
            order[k + 1].0.clone()
        };
        let off_before = lam_param.clone().min((t - &prev_t) / rat(3));
        let off_after = lam_param.min((&next_t - t) / rat(3));
        if !off_before.is_positive() || !off_after.is_positive() {
            return Err(Error::internal("cannot separate passages"));
        }
        before[k] = curve.point_at(&wrap_param(&(t - off_before), curve));
        after[k] = curve.point_at(&wrap_param(&(t + off_after), curve));
    }

    // polyline vertices strictly between passage k and k+1
    let mut arc_points: Vec<Vec<Point>> = vec![Vec::new(); total];
    for k in 0..total {
        let t0 = &order[k].0;
        let t1 = if k + 1 == total { order[0].0.clone() + rat(1) } else { order[k + 1].0.clone() };
        let mut pts = Vec::new();
        // vertices have params v/m for v = 0..n
        let n_pts = curve.points().len();
        for v in 0..n_pts {
            let tv = rat(v as i64) / &m_rat;
            let tv_shift = &tv + rat(1);
            if (&tv > t0 && tv < t1) || (&tv_shift > t0 && tv_shift < t1) {
                pts.push((if &tv > t0 { tv.clone() } else { &tv + rat(1) }, curve.points()[v].clone()));
            }
        }
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        arc_points[k] = pts.into_iter().map(|(_, p)| p).collect();
    }

    Ok(Passages { order, before, after, arc_points })
}

fn carrying_seg(curve: &PLCurve, dp: &DoublePoint, t: &Rat) -> usize {
    let s0 = curve.param(dp.segs.0, &Rat::zero());
    let s0e = curve.param(dp.segs.0, &rat(1));
    if t >= &s0 && t <= &s0e {
        dp.segs.0
    } else {
        dp.segs.1
    }
}

fn wrap_param(t: &Rat, curve: &PLCurve) -> Rat {
    if curve.kind == CurveKind::Open {
        return t.clone();
    }
    let one = rat(1);
    let mut t = t.clone();
    while t < Rat::zero() {
        t += &one;
    }
    while t >= one {
        t -= rat(1);
    }
    t
}

/// Oriented smoothing of a closed generic curve at every double point.
pub fn smooth_all(curve: &PLCurve) -> Result<SmoothedFamily> {
    if curve.kind != CurveKind::Closed {
        return Err(Error::ClosedRequired);
    }
    let dps = curve.double_points()?;
    if dps.is_empty() {
        let orientation = loop_orientation(curve.points())?;
        return Ok(SmoothedFamily {
            circles: vec![SmoothedCircle { points: curve.points().to_vec(), orientation }],
            parent: vec![None],
        });
    }
    let cuts = cut_passages(curve, &dps)?;
    let total = cuts.order.len();

    // partner passage of each passage (the other visit of the same crossing)
    let mut partner = vec![0usize; total];
    for k in 0..total {
        for l in 0..total {
            if l != k && cuts.order[l].1 == cuts.order[k].1 {
                partner[k] = l;
            }
        }
    }

    // trace circles: after arc k comes the arc following the partner of k+1
    let mut visited = vec![false; total];
    let mut circles = Vec::new();
    for start in 0..total {
        if visited[start] {
            continue;
        }
        let mut pts: Vec<Point> = Vec::new();
        let mut k = start;
        loop {
            visited[k] = true;
            // arc k runs from after[k] to before[k+1]
            pts.push(cuts.after[k].clone());
            pts.extend(cuts.arc_points[k].iter().cloned());
            let next_passage = (k + 1) % total;
            pts.push(cuts.before[next_passage].clone());
            // chord jumps to the other branch of that crossing
            k = partner[next_passage];
            if k == start {
                break;
            }
        }
        let orientation = loop_orientation(&pts)?;
        circles.push(SmoothedCircle { points: pts, orientation });
    }
    // each smoothing toggles the component count by one
    debug_assert_eq!(circles.len() % 2, (dps.len() + 1) % 2);

    let parent = containment_forest(&circles);
    Ok(SmoothedFamily { circles, parent })
}

fn loop_orientation(pts: &[Point]) -> Result<i8> {
    let n = pts.len();
    let mut area2 = Rat::zero();
    for i in 0..n {
        area2 += pts[i].cross(&pts[(i + 1) % n]);
    }
    let s = sign(&area2);
    if s == 0 {
        return Err(Error::internal("degenerate smoothed circle"));
    }
    Ok(s)
}

fn containment_forest(circles: &[SmoothedCircle]) -> Vec<Option<usize>> {
    let n = circles.len();
    let mut inside = vec![vec![false; n]; n];
    let mut depth = vec![0usize; n];
    for i in 0..n {
        let sample = &circles[i].points[0];
        for j in 0..n {
            if i == j {
                continue;
            }
            if winding_of_loop(&circles[j].points, sample) != 0 {
                inside[i][j] = true;
                depth[i] += 1;
            }
        }
    }
    (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| inside[i][j])
                .max_by_key(|&j| depth[j])
        })
        .collect()
}

/// Region data of a smoothed family: the face just inside circle `i` has
/// index = signed nesting depth and euler = 1 − (immediate children).
pub fn region_profile(family: &SmoothedFamily) -> RegionProfile {
    let n = family.circle_count();
    let mut index = vec![0i64; n];
    fn idx(family: &SmoothedFamily, memo: &mut [Option<i64>], i: usize) -> i64 {
        if let Some(v) = memo[i] {
            return v;
        }
        let v = match family.parent[i] {
            None => family.circles[i].orientation as i64,
            Some(p) => idx(family, memo, p) + family.circles[i].orientation as i64,
        };
        memo[i] = Some(v);
        v
    }
    let mut memo = vec![None; n];
    for (i, slot) in index.iter_mut().enumerate() {
        *slot = idx(family, &mut memo, i);
    }
    let bounded = (0..n)
        .map(|i| (index[i], 1 - family.children(i) as i64))
        .collect();
    RegionProfile { bounded, unbounded_index: 0 }
}

fn smoothed_sum(curve: &PLCurve) -> Result<i64> {
    let family = smooth_all(curve)?;
    let profile = region_profile(&family);
    Ok(profile.bounded.iter().map(|(ind, chi)| ind * ind * chi).sum())
}

/// `J⁻(C) = 1 − Σ ind²·χ` over regions of the oriented smoothing.
pub fn j_minus(curve: &PLCurve) -> Result<i64> {
    Ok(1 - smoothed_sum(curve)?)
}

/// `J⁺(C) = J⁻(C) + n`, `n` the number of double points.
pub fn j_plus(curve: &PLCurve) -> Result<i64> {
    let n = curve.double_points()?.len() as i64;
    Ok(j_minus(curve)? + n)
}

/// `J̃(C) = 1 − J⁻(C) = Σ ind²·χ`.
pub fn j_tilde(curve: &PLCurve) -> Result<i64> {
    smoothed_sum(curve)
}

/// Strangeness via the edge-word formula with an explicit basepoint given
/// as a curve parameter. The basepoint must not be a double point.
pub fn strangeness_at(curve: &PLCurve, basepoint: &Rat) -> Result<i64> {
    if curve.kind != CurveKind::Closed {
        return Err(Error::ClosedRequired);
    }
    let dps = curve.double_points()?;
    let mut passages: Vec<(Rat, usize)> = Vec::new();
    for (k, dp) in dps.iter().enumerate() {
        passages.push((dp.visits.0.clone(), k));
        passages.push((dp.visits.1.clone(), k));
    }
    passages.sort_by(|a, b| a.0.cmp(&b.0));
    if passages.iter().any(|(t, _)| t == basepoint) {
        return Err(Error::BasepointAtDoublePoint);
    }
    let total = passages.len();

    let f_point = curve.point_at(basepoint);
    let ind_f = curve.point_index(&f_point)?;

    let mut st = &ind_f * &ind_f - frac(1, 4);

    if total > 0 {
        // number of passages with parameter below the basepoint
        let shift = passages.iter().filter(|(t, _)| t < basepoint).count();
        // incoming edge number at passage k (1-based from the basepoint edge):
        // the edge ending at passage k is edge ((k - shift) mod total) + 1
        let edge_in = |k: usize| -> i64 { ((k + total - shift) % total) as i64 + 1 };
        for (dpi, dp) in dps.iter().enumerate() {
            let mut ks = passages
                .iter()
                .enumerate()
                .filter(|(_, (_, i))| *i == dpi)
                .map(|(k, _)| k);
            let ka = ks.next().unwrap();
            let kb = ks.next().unwrap();
            // tangents at the two visits, in visit order
            let d_first = curve.seg_dir(dp.segs.0);
            let d_second = curve.seg_dir(dp.segs.1);
            let (i_num, j_num) = if sign(&d_first.cross(&d_second)) > 0 {
                (edge_in(ka), edge_in(kb))
            } else {
                (edge_in(kb), edge_in(ka))
            };
            let s_v = if i_num > j_num { 1i64 } else { -1i64 };
            let ind_v = curve.vertex_index(dp)?;
            st += ind_v * rat(s_v);
        }
    }

    if !st.is_integer() {
        return Err(Error::internal(format!("strangeness {st} is not an integer")));
    }
    Ok(int_to_i64(&st))
}

/// Strangeness with an automatically chosen basepoint on an exterior edge.
pub fn strangeness(curve: &PLCurve) -> Result<i64> {
    strangeness_at(curve, &exterior_basepoint(curve)?)
}

/// A parameter whose curve point lies on an edge bounding the unbounded
/// region (and is not a double point).
pub fn exterior_basepoint(curve: &PLCurve) -> Result<Rat> {
    // the segment containing the bottom-most curve point is exterior
    let m = curve.seg_count();
    let mut best: Option<(Rat, Rat, usize)> = None; // (y, x, vertex)
    for (v, p) in curve.points().iter().enumerate().take(match curve.kind {
        CurveKind::Closed => curve.points().len(),
        CurveKind::Open => curve.points().len(),
    }) {
        let key = (p.y.clone(), p.x.clone(), v);
        best = Some(match best {
            None => key,
            Some(cur) => {
                if (key.0.clone(), key.1.clone()) < (cur.0.clone(), cur.1.clone()) {
                    key
                } else {
                    cur
                }
            }
        });
    }
    let v = best.unwrap().2;
    // candidate points along the two segments incident to the bottom vertex
    let dps = curve.double_points()?;
    let passage_params: Vec<Rat> = dps
        .iter()
        .flat_map(|d| [d.visits.0.clone(), d.visits.1.clone()])
        .collect();
    for seg in [v % m, (v + curve.points().len() - 1) % curve.points().len()] {
        if seg >= m {
            continue;
        }
        for num in 1..8i64 {
            let t = curve.param(seg, &frac(num, 8));
            if !passage_params.contains(&t) {
                return Ok(t);
            }
        }
    }
    Err(Error::internal("no exterior basepoint found"))
}

/// Midpoints of all `2n` edges, for basepoint-independence sweeps.
pub fn edge_midpoints(curve: &PLCurve) -> Result<Vec<Rat>> {
    let dps = curve.double_points()?;
    if dps.is_empty() {
        return Ok(vec![frac(1, 2)]);
    }
    let mut params: Vec<Rat> = dps
        .iter()
        .flat_map(|d| [d.visits.0.clone(), d.visits.1.clone()])
        .collect();
    params.sort();
    let total = params.len();
    let mut mids = Vec::with_capacity(total);
    for k in 0..total {
        let a = &params[k];
        let b = if k + 1 == total { params[0].clone() + rat(1) } else { params[k + 1].clone() };
        let mut mid = (a + &b) / rat(2);
        if mid >= rat(1) {
            mid -= rat(1);
        }
        mids.push(mid);
    }
    Ok(mids)
}

/// Classification of the vertices of a curve in diagonal position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    /// local minimum of the x-projection, strand moving up/down
    Min { up: bool },
    /// local maximum of the x-projection
    Max { up: bool },
}

/// Check diagonal position and classify the x-extrema of a curve whose
/// segments all have slope ±1. Returns `(vertex index, kind)` per extremum.
pub fn diagonal_extrema(curve: &PLCurve) -> Result<Vec<(usize, Extremum)>> {
    let c = curve.simplify_collinear();
    let n = c.points().len();
    let m = c.seg_count();
    for i in 0..m {
        let d = c.seg_dir(i);
        if d.x.abs() != d.y.abs() || d.x.is_zero() {
            return Err(Error::NotDiagonal(format!("segment {i} has slope other than ±1")));
        }
    }
    let mut out = Vec::new();
    let (vs, ve) = match c.kind {
        CurveKind::Closed => (0, n),
        CurveKind::Open => (1, n - 1),
    };
    for v in vs..ve {
        let din = c.points()[v].sub(&c.points()[(v + n - 1) % n]);
        let dout = c.points()[(v + 1) % n].sub(&c.points()[v]);
        let sx_in = sign(&din.x);
        let sx_out = sign(&dout.x);
        if sx_in == sx_out {
            continue;
        }
        let up_in = din.y.is_positive();
        let up_out = dout.y.is_positive();
        if up_in != up_out {
            return Err(Error::NotDiagonal(format!("vertex {v} reverses both axes")));
        }
        let kind = if sx_in > 0 {
            Extremum::Max { up: up_in }
        } else {
            Extremum::Min { up: up_in }
        };
        out.push((v, kind));
    }
    Ok(out)
}

/// `J̃` of a closed curve in diagonal position evaluated via the min/max
/// formula: up-up and down-down double points each count 1, extrema
/// contribute their point index signed by type.
pub fn j_tilde_minmax(curve: &PLCurve) -> Result<i64> {
    if curve.kind != CurveKind::Closed {
        return Err(Error::ClosedRequired);
    }
    let c = curve.simplify_collinear();
    let extrema = diagonal_extrema(&c)?;
    let dps = c.double_points()?;
    let mut total = Rat::zero();
    for dp in &dps {
        let u1 = c.seg_dir(dp.segs.0).y.is_positive();
        let u2 = c.seg_dir(dp.segs.1).y.is_positive();
        if u1 == u2 {
            total += rat(1);
        }
    }
    for (v, kind) in &extrema {
        let ind = c.point_index(&c.points()[*v])?;
        match kind {
            Extremum::Min { up: false } | Extremum::Max { up: true } => total += ind,
            Extremum::Min { up: true } | Extremum::Max { up: false } => total -= ind,
        }
    }
    if !total.is_integer() {
        return Err(Error::internal(format!("min/max J̃ value {total} not an integer")));
    }
    Ok(int_to_i64(&total))
}
