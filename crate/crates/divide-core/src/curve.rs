//! Piecewise-linear immersed curves: genericity validation, double points,
//! turning and winding numbers, and region indices at points of the curve.

use crate::error::{Error, Result};
use crate::num::*;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    Closed,
    Open,
}

/// An oriented PL curve. For closed curves the point list is cyclic (the
/// last point connects back to the first); open curves run from the first
/// point to the last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLCurve {
    pub kind: CurveKind,
    points: Vec<Point>,
}

/// A transversal self-intersection. `visits` are the two curve parameters
/// (in `[0,1)`, ordered) at which the curve passes through `position`;
/// `frame` is the orientation sign of (tangent at first visit, tangent at
/// second visit).
#[derive(Clone, Debug)]
pub struct DoublePoint {
    pub id: usize,
    pub position: Point,
    pub visits: (Rat, Rat),
    pub frame: i8,
    /// Segment indices carrying the first and second visit.
    pub segs: (usize, usize),
}

#[derive(Clone, Debug)]
pub enum Violation {
    DegenerateSegment(usize),
    BacktrackAtVertex(usize),
    VertexContact { seg_a: usize, seg_b: usize, at: Point },
    CollinearOverlap(usize, usize),
    TriplePoint(Point),
    EndpointOffCircle { start: bool, at: Point },
    InteriorVertexNotInside(usize),
    TooFewPoints,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::DegenerateSegment(i) => write!(f, "degenerate segment {i}"),
            Violation::BacktrackAtVertex(i) => write!(f, "curve backtracks at vertex {i}"),
            Violation::VertexContact { seg_a, seg_b, at } => {
                write!(f, "non-transversal contact of segments {seg_a} and {seg_b} at {at:?}")
            }
            Violation::CollinearOverlap(i, j) => {
                write!(f, "segments {i} and {j} overlap along a line")
            }
            Violation::TriplePoint(p) => write!(f, "three or more branches through {p:?}"),
            Violation::EndpointOffCircle { start, at } => {
                let which = if *start { "start" } else { "end" };
                write!(f, "{which} point {at:?} is not on the unit circle")
            }
            Violation::InteriorVertexNotInside(i) => {
                write!(f, "vertex {i} of an open divide is not strictly inside the disc")
            }
            Violation::TooFewPoints => write!(f, "too few points"),
        }
    }
}

/// Outcome of genericity validation. `valid` iff `violations` is empty.
#[derive(Clone, Debug)]
pub struct GenericityReport {
    pub valid: bool,
    pub double_points: Vec<DoublePoint>,
    pub violations: Vec<Violation>,
}

/// Where a query point sits relative to a curve.
#[derive(Clone, Debug)]
pub enum OnCurve {
    Off,
    Interior { seg: usize },
    Vertex { vertex: usize },
}

impl PLCurve {
    pub fn new(kind: CurveKind, points: Vec<Point>) -> Result<Self> {
        let min = match kind {
            CurveKind::Closed => 3,
            CurveKind::Open => 2,
        };
        if points.len() < min {
            return Err(Error::Degenerate(format!(
                "need at least {min} points, got {}",
                points.len()
            )));
        }
        Ok(PLCurve { kind, points })
    }

    pub fn closed(points: Vec<Point>) -> Result<Self> {
        PLCurve::new(CurveKind::Closed, points)
    }

    pub fn open(points: Vec<Point>) -> Result<Self> {
        PLCurve::new(CurveKind::Open, points)
    }

    pub fn is_closed(&self) -> bool {
        self.kind == CurveKind::Closed
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn seg_count(&self) -> usize {
        match self.kind {
            CurveKind::Closed => self.points.len(),
            CurveKind::Open => self.points.len() - 1,
        }
    }

    pub fn seg(&self, i: usize) -> (&Point, &Point) {
        let n = self.points.len();
        (&self.points[i], &self.points[(i + 1) % n])
    }

    pub fn seg_dir(&self, i: usize) -> Point {
        let (a, b) = self.seg(i);
        b.sub(a)
    }

    /// Curve parameter in `[0,1)` of the point at fraction `f` along segment `i`.
    pub fn param(&self, i: usize, f: &Rat) -> Rat {
        (rat(i as i64) + f) / rat(self.seg_count() as i64)
    }

    /// The point at curve parameter `t` (in `[0,1]`).
    pub fn point_at(&self, t: &Rat) -> Point {
        use num_traits::ToPrimitive;
        let m = rat(self.seg_count() as i64);
        let scaled = t * &m;
        let mut iu = scaled.floor().to_integer().to_i64().expect("parameter in range") as usize;
        if iu >= self.seg_count() {
            iu = self.seg_count() - 1;
        }
        let f = scaled - rat(iu as i64);
        let (a, b) = self.seg(iu);
        a.add(&b.sub(a).scale(&f))
    }

    pub fn reverse(&self) -> PLCurve {
        let mut pts = self.points.clone();
        match self.kind {
            CurveKind::Open => pts.reverse(),
            CurveKind::Closed => {
                // keep the first point first so tests can anchor on it
                pts[1..].reverse();
            }
        }
        PLCurve { kind: self.kind, points: pts }
    }

    /// Drop vertices where the two incident segments are collinear and
    /// equally oriented.
    pub fn simplify_collinear(&self) -> PLCurve {
        let n = self.points.len();
        let mut keep = Vec::with_capacity(n);
        for i in 0..n {
            if self.kind == CurveKind::Open && (i == 0 || i == n - 1) {
                keep.push(self.points[i].clone());
                continue;
            }
            let prev = &self.points[(i + n - 1) % n];
            let here = &self.points[i];
            let next = &self.points[(i + 1) % n];
            let din = here.sub(prev);
            let dout = next.sub(here);
            let straight = din.cross(&dout).is_zero() && din.dot(&dout).is_positive();
            if !straight {
                keep.push(here.clone());
            }
        }
        if keep.len() >= 2 {
            PLCurve { kind: self.kind, points: keep }
        } else {
            self.clone()
        }
    }

    fn segs_adjacent(&self, i: usize, j: usize) -> bool {
        let m = self.seg_count();
        let (i, j) = (i.min(j), i.max(j));
        if j == i + 1 {
            return true;
        }
        self.kind == CurveKind::Closed && i == 0 && j == m - 1
    }

    /// Full genericity check, including the unit-disc boundary conditions
    /// for open divides. Diagnostics are data: every defect found is
    /// reported rather than failing fast.
    pub fn validate(&self) -> GenericityReport {
        self.validate_with(true)
    }

    /// Genericity check for a curve of the plane: open curves are not
    /// required to touch the unit circle. Used for diagonal redraws and
    /// other derived curves that leave the disc.
    pub fn validate_plane(&self) -> GenericityReport {
        self.validate_with(false)
    }

    fn validate_with(&self, require_disc: bool) -> GenericityReport {
        let mut violations = Vec::new();
        let m = self.seg_count();
        let n = self.points.len();

        for i in 0..m {
            let (a, b) = self.seg(i);
            if a == b {
                violations.push(Violation::DegenerateSegment(i));
            }
        }
        if violations.iter().any(|v| matches!(v, Violation::DegenerateSegment(_))) {
            return GenericityReport { valid: false, double_points: vec![], violations };
        }

        // cusps: consecutive segments folding back
        let vstart = if self.kind == CurveKind::Closed { 0 } else { 1 };
        let vend = if self.kind == CurveKind::Closed { n } else { n - 1 };
        for v in vstart..vend {
            let din = self.points[v].sub(&self.points[(v + n - 1) % n]);
            let dout = self.points[(v + 1) % n].sub(&self.points[v]);
            if din.cross(&dout).is_zero() && din.dot(&dout).is_negative() {
                violations.push(Violation::BacktrackAtVertex(v));
            }
        }

        // pairwise segment intersections, pruned by an interval sweep over
        // bounding boxes so long diagonal redraws stay near-linear
        let mut crossings: Vec<(usize, usize, Point, Rat, Rat)> = Vec::new();
        let bbox = |i: usize| -> (Rat, Rat, Rat, Rat) {
            let (a, b) = self.seg(i);
            (
                a.x.clone().min(b.x.clone()),
                a.x.clone().max(b.x.clone()),
                a.y.clone().min(b.y.clone()),
                a.y.clone().max(b.y.clone()),
            )
        };
        let boxes: Vec<(Rat, Rat, Rat, Rat)> = (0..m).map(bbox).collect();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| boxes[a].0.cmp(&boxes[b].0));
        let mut active: Vec<usize> = Vec::new();
        for &iseg in &order {
            let (ref xmin, _, ref ymin, ref ymax) = boxes[iseg];
            active.retain(|&jseg| boxes[jseg].1 >= *xmin);
            for &jseg in &active {
                if boxes[jseg].3 < *ymin || boxes[jseg].2 > *ymax {
                    continue;
                }
                let (i, j) = (iseg.min(jseg), iseg.max(jseg));
                let (a, b) = self.seg(i);
                let (c, d) = self.seg(j);
                match seg_seg(a, b, c, d) {
                    SegSeg::Disjoint => {}
                    SegSeg::Cross { at, s, t } => crossings.push((i, j, at, s, t)),
                    SegSeg::Overlap => {
                        if !self.segs_adjacent(i, j) {
                            violations.push(Violation::CollinearOverlap(i, j));
                        }
                        // adjacent overlap is already caught as a backtrack
                    }
                    SegSeg::Touch { at } => {
                        let allowed = if i + 1 == j {
                            at == self.points[j]
                        } else if self.kind == CurveKind::Closed && i == 0 && j == m - 1 {
                            at == self.points[0]
                        } else {
                            false
                        };
                        if !allowed {
                            violations.push(Violation::VertexContact { seg_a: i, seg_b: j, at });
                        }
                    }
                }
            }
            active.push(iseg);
        }

        // triple points: same position from different segment pairs
        let mut by_pos: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
        for (k, c) in crossings.iter().enumerate() {
            by_pos.entry(c.2.clone()).or_default().push(k);
        }
        for (pos, ks) in &by_pos {
            if ks.len() > 1 {
                violations.push(Violation::TriplePoint(pos.clone()));
            }
        }

        // boundary conditions for open divides
        if self.kind == CurveKind::Open && require_disc {
            let one = Rat::one();
            let first = &self.points[0];
            let last = &self.points[n - 1];
            if first.norm2() != one {
                violations.push(Violation::EndpointOffCircle { start: true, at: first.clone() });
            }
            if last.norm2() != one {
                violations.push(Violation::EndpointOffCircle { start: false, at: last.clone() });
            }
            for (i, p) in self.points.iter().enumerate().take(n - 1).skip(1) {
                if p.norm2() >= one {
                    violations.push(Violation::InteriorVertexNotInside(i));
                }
            }
        }

        // assemble double points sorted by first visit
        let mut dps: Vec<DoublePoint> = Vec::new();
        if violations.is_empty() {
            let mut raw: Vec<(Rat, Rat, Point, usize, usize)> = crossings
                .into_iter()
                .map(|(i, j, at, s, t)| {
                    let ti = self.param(i, &s);
                    let tj = self.param(j, &t);
                    if ti <= tj {
                        (ti, tj, at, i, j)
                    } else {
                        (tj, ti, at, j, i)
                    }
                })
                .collect();
            raw.sort_by(|a, b| a.0.cmp(&b.0));
            for (id, (t1, t2, at, si, sj)) in raw.into_iter().enumerate() {
                let d1 = self.seg_dir(si);
                let d2 = self.seg_dir(sj);
                let frame = sign(&d1.cross(&d2));
                debug_assert!(frame != 0);
                dps.push(DoublePoint {
                    id,
                    position: at,
                    visits: (t1, t2),
                    frame,
                    segs: (si, sj),
                });
            }
        }

        GenericityReport { valid: violations.is_empty(), double_points: dps, violations }
    }

    /// Double points of a curve known (or required) to be generic. Boundary
    /// conditions are not enforced here; only the immersion must be generic.
    pub fn double_points(&self) -> Result<Vec<DoublePoint>> {
        let report = self.validate_plane();
        if !report.valid {
            return Err(Error::not_generic(&report));
        }
        Ok(report.double_points)
    }

    /// Whitney index: total turning of the tangent vector, exact.
    pub fn turning_number(&self) -> Result<i64> {
        if self.kind != CurveKind::Closed {
            return Err(Error::ClosedRequired);
        }
        let m = self.seg_count();
        let mut total = Rat::zero();
        for i in 0..m {
            let d0 = self.seg_dir(i);
            let d1 = self.seg_dir((i + 1) % m);
            if d0.is_zero() || d1.is_zero() {
                return Err(Error::Degenerate("zero-length segment".into()));
            }
            let delta = pseudo_angle_delta(&d0, &d1);
            if delta == rat(4) {
                return Err(Error::Degenerate("cusp: tangent reverses at a vertex".into()));
            }
            total += delta;
        }
        let eight = rat(8);
        let q = &total / &eight;
        if !q.is_integer() {
            return Err(Error::internal(format!("turning number {total}/8 not an integer")));
        }
        Ok(int_to_i64(&q))
    }

    /// Signed winding number of a closed curve around `p`.
    pub fn winding_number(&self, p: &Point) -> Result<i64> {
        if self.kind != CurveKind::Closed {
            return Err(Error::ClosedRequired);
        }
        if !matches!(self.locate(p), OnCurve::Off) {
            return Err(Error::PointOnCurve);
        }
        Ok(winding_of_loop(&self.points, p))
    }

    /// Where `p` sits on this curve.
    pub fn locate(&self, p: &Point) -> OnCurve {
        for (i, v) in self.points.iter().enumerate() {
            if v == p {
                return OnCurve::Vertex { vertex: i };
            }
        }
        for i in 0..self.seg_count() {
            let (a, b) = self.seg(i);
            if on_segment(p, a, b) {
                return OnCurve::Interior { seg: i };
            }
        }
        OnCurve::Off
    }

    /// Squared clearance from `p` to every segment except those listed.
    fn clearance2_excluding(&self, p: &Point, exclude: &[usize]) -> Rat {
        let mut best: Option<Rat> = None;
        for i in 0..self.seg_count() {
            if exclude.contains(&i) {
                continue;
            }
            let (a, b) = self.seg(i);
            let d2 = dist2_point_seg(p, a, b);
            best = Some(match best {
                None => d2,
                Some(cur) => cur.min(d2),
            });
        }
        best.unwrap_or_else(|| rat(1))
    }

    /// Index of an arbitrary point of the plane with respect to a closed
    /// curve: winding number off the curve, half-integer average across an
    /// edge, quarter-sum average at a double point.
    pub fn point_index(&self, p: &Point) -> Result<Rat> {
        if self.kind != CurveKind::Closed {
            return Err(Error::ClosedRequired);
        }
        match self.locate(p) {
            OnCurve::Off => Ok(Rat::from_integer(winding_of_loop(&self.points, p).into())),
            OnCurve::Interior { seg } => {
                // p interior to exactly one segment, or a double point
                let through: Vec<usize> = (0..self.seg_count())
                    .filter(|&i| {
                        let (a, b) = self.seg(i);
                        on_segment(p, a, b)
                    })
                    .collect();
                if through.len() == 1 {
                    let d = self.seg_dir(seg);
                    let n = d.rot90();
                    let clear2 = {
                        let c = self.clearance2_excluding(p, &through);
                        let (a, b) = self.seg(seg);
                        c.min(p.dist2(a)).min(p.dist2(b))
                    };
                    let lam = below_sqrt(&(clear2 / n.norm2())) / rat(2);
                    let left = p.add(&n.scale(&lam));
                    let right = p.sub(&n.scale(&lam));
                    let wl = winding_of_loop(&self.points, &left);
                    let wr = winding_of_loop(&self.points, &right);
                    Ok(frac(wl + wr, 2))
                } else if through.len() == 2 {
                    self.double_point_index(p, through[0], through[1])
                } else {
                    Err(Error::Degenerate("three or more segments through point".into()))
                }
            }
            OnCurve::Vertex { vertex } => {
                let n = self.points.len();
                let din = self.points[vertex].sub(&self.points[(vertex + n - 1) % n]);
                let dout = self.points[(vertex + 1) % n].sub(&self.points[vertex]);
                let seg_in = (vertex + n - 1) % n;
                let seg_out = vertex;
                let u_left = left_cone_dir(&din, &dout)
                    .ok_or_else(|| Error::Degenerate("cusp vertex".into()))?;
                let u_right = left_cone_dir(&dout.neg(), &din.neg())
                    .ok_or_else(|| Error::Degenerate("cusp vertex".into()))?;
                let clear2 = {
                    let c = self.clearance2_excluding(p, &[seg_in, seg_out]);
                    let prev = &self.points[(vertex + n - 1) % n];
                    let next = &self.points[(vertex + 1) % n];
                    c.min(p.dist2(prev)).min(p.dist2(next))
                };
                let mut vals = Vec::new();
                for u in [u_left, u_right] {
                    let lam = below_sqrt(&(clear2.clone() / u.norm2())) / rat(2);
                    let q = p.add(&u.scale(&lam));
                    vals.push(winding_of_loop(&self.points, &q));
                }
                Ok(frac(vals[0] + vals[1], 2))
            }
        }
    }

    fn double_point_index(&self, p: &Point, s1: usize, s2: usize) -> Result<Rat> {
        let d1 = self.seg_dir(s1);
        let d2 = self.seg_dir(s2);
        let clear2 = {
            let c = self.clearance2_excluding(p, &[s1, s2]);
            let mut c = c;
            for s in [s1, s2] {
                let (a, b) = self.seg(s);
                c = c.min(p.dist2(a)).min(p.dist2(b));
            }
            c
        };
        let mut total = Rat::zero();
        for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let u = d1.scale(&rat(e1)).add(&d2.scale(&rat(e2)));
            let lam = below_sqrt(&(clear2.clone() / u.norm2())) / rat(2);
            let q = p.add(&u.scale(&lam));
            total += rat(winding_of_loop(&self.points, &q));
        }
        Ok(total / rat(4))
    }

    /// Index of a double point: quarter-sum of the four adjacent region
    /// indices. Always an integer for closed curves.
    pub fn vertex_index(&self, v: &DoublePoint) -> Result<Rat> {
        let through: Vec<usize> = (0..self.seg_count())
            .filter(|&i| {
                let (a, b) = self.seg(i);
                on_segment(&v.position, a, b)
            })
            .collect();
        if through.len() != 2 {
            return Err(Error::NoSuchVertex(v.id));
        }
        self.double_point_index(&v.position, through[0], through[1])
    }

    /// Exact squared minimum feature separation: the smallest squared
    /// distance between a double point or vertex and a segment not incident
    /// to it. Used to size local surgeries.
    pub fn min_feature_dist2(&self) -> Rat {
        let n = self.points.len();
        let m = self.seg_count();
        let mut best = rat(1);
        for v in 0..n {
            let p = &self.points[v];
            for i in 0..m {
                let incident = if self.kind == CurveKind::Closed {
                    i == v || i == (v + n - 1) % n
                } else {
                    i == v || (v > 0 && i == v - 1)
                };
                if incident {
                    continue;
                }
                let (a, b) = self.seg(i);
                let d2 = dist2_point_seg(p, a, b);
                if !d2.is_zero() {
                    best = best.min(d2);
                }
            }
        }
        if let Ok(dps) = self.double_points() {
            for dp in &dps {
                for i in 0..m {
                    if i == dp.segs.0 || i == dp.segs.1 {
                        continue;
                    }
                    let (a, b) = self.seg(i);
                    let d2 = dist2_point_seg(&dp.position, a, b);
                    if !d2.is_zero() {
                        best = best.min(d2);
                    }
                }
            }
        }
        best
    }
}

/// Winding number of an arbitrary closed polyline around `p` (caller must
/// ensure `p` is off the polyline).
pub fn winding_of_loop(points: &[Point], p: &Point) -> i64 {
    let n = points.len();
    let mut wn = 0i64;
    for i in 0..n {
        let a = &points[i];
        let b = &points[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0 {
                wn += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0 {
            wn -= 1;
        }
    }
    wn
}

/// A direction `u` with `cross(din, u) > 0` and `cross(dout, u) > 0`, i.e.
/// pointing into the left cone at a vertex with incoming direction `din`
/// and outgoing direction `dout`. `None` when the vertex is a cusp.
pub fn left_cone_dir(din: &Point, dout: &Point) -> Option<Point> {
    let dotv = din.dot(dout);
    if !dotv.is_negative() {
        let u = din.rot90().add(&dout.rot90());
        if sign(&din.cross(&u)) > 0 && sign(&dout.cross(&u)) > 0 {
            return Some(u);
        }
    }
    // din, dout nearly opposite: balance the combination
    let n1 = din.norm2();
    let n2 = dout.norm2();
    let neg = -dotv.clone();
    if &neg * &neg >= &n1 * &n2 {
        return None; // antiparallel (cusp) or worse
    }
    let lo = &neg / &n1;
    let hi = &n2 / &neg;
    debug_assert!(lo < hi);
    let a = (lo + hi) / rat(2);
    let u = din.rot90().scale(&a).add(&dout.rot90());
    if sign(&din.cross(&u)) > 0 && sign(&dout.cross(&u)) > 0 {
        Some(u)
    } else {
        None
    }
}

pub(crate) fn int_to_i64(q: &Rat) -> i64 {
    use num_traits::ToPrimitive;
    debug_assert!(q.is_integer());
    q.to_integer().to_i64().expect("integer out of i64 range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn diamond() -> PLCurve {
        PLCurve::closed(vec![
            Point::ints(1, 0),
            Point::ints(0, 1),
            Point::ints(-1, 0),
            Point::ints(0, -1),
        ])
        .unwrap()
    }

    #[test]
    fn diameter_divide_is_valid_and_embedded() {
        let c = PLCurve::open(vec![Point::ints(-1, 0), Point::ints(1, 0)]).unwrap();
        let r = c.validate();
        assert!(r.valid, "{:?}", r.violations);
        assert!(r.double_points.is_empty());
    }

    #[test]
    fn one_loop_divide_has_one_double_point() {
        let d = corpus::standard_divide(1).unwrap();
        let r = d.curve().validate();
        assert!(r.valid, "{:?}", r.violations);
        assert_eq!(r.double_points.len(), 1);
    }

    #[test]
    fn endpoint_off_circle_is_flagged() {
        let c = PLCurve::open(vec![Point::ints(-1, 0), Point::new(frac(1, 2), rat(0))]).unwrap();
        let r = c.validate();
        assert!(!r.valid);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::EndpointOffCircle { start: false, .. })));
    }

    #[test]
    fn turning_numbers() {
        let d = diamond();
        assert_eq!(d.turning_number().unwrap(), 1);
        assert_eq!(d.reverse().turning_number().unwrap(), -1);
        let f8 = corpus::figure_eight();
        assert_eq!(f8.turning_number().unwrap(), 0);
        let k2 = corpus::standard_curve(1).unwrap();
        assert_eq!(k2.turning_number().unwrap(), 2);
        let open = PLCurve::open(vec![Point::ints(-1, 0), Point::ints(1, 0)]).unwrap();
        assert!(matches!(open.turning_number(), Err(Error::ClosedRequired)));
    }

    #[test]
    fn turning_number_invariant_under_subdivision() {
        let d = diamond();
        let mut pts = Vec::new();
        for i in 0..4 {
            let (a, b) = d.seg(i);
            pts.push(a.clone());
            pts.push(a.mid(b));
        }
        let sub = PLCurve::closed(pts).unwrap();
        assert_eq!(sub.turning_number().unwrap(), 1);
    }

    #[test]
    fn winding_numbers() {
        let d = diamond();
        assert_eq!(d.winding_number(&Point::ints(5, 5)).unwrap(), 0);
        assert_eq!(d.winding_number(&Point::origin()).unwrap(), 1);
        assert_eq!(d.reverse().winding_number(&Point::origin()).unwrap(), -1);
        assert!(matches!(d.winding_number(&Point::ints(1, 0)), Err(Error::PointOnCurve)));
        // inner loop of a K2-shaped curve has index 2
        let k2 = corpus::standard_curve(1).unwrap();
        let inner = corpus::standard_curve_loop_probe(1);
        assert_eq!(k2.winding_number(&inner).unwrap(), 2);
    }

    #[test]
    fn vertex_indices() {
        let k2 = corpus::standard_curve(1).unwrap();
        let dps = k2.double_points().unwrap();
        assert_eq!(dps.len(), 1);
        assert_eq!(k2.vertex_index(&dps[0]).unwrap(), rat(1));

        let f8 = corpus::figure_eight();
        let dps = f8.double_points().unwrap();
        assert_eq!(dps.len(), 1);
        assert_eq!(f8.vertex_index(&dps[0]).unwrap(), rat(0));
    }

    #[test]
    fn reversal_keeps_double_point_positions() {
        let d = corpus::standard_divide(2).unwrap();
        let fwd = d.curve().validate();
        let rev = d.curve().reverse().validate();
        assert!(fwd.valid && rev.valid);
        let mut a: Vec<Point> = fwd.double_points.iter().map(|p| p.position.clone()).collect();
        let mut b: Vec<Point> = rev.double_points.iter().map(|p| p.position.clone()).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn point_index_is_half_integer_on_edges() {
        let d = diamond();
        let p = Point::new(frac(1, 2), frac(1, 2));
        assert_eq!(d.point_index(&p).unwrap(), frac(1, 2));
        // at a vertex of the polyline
        assert_eq!(d.point_index(&Point::ints(0, 1)).unwrap(), frac(1, 2));
        // off the curve
        assert_eq!(d.point_index(&Point::origin()).unwrap(), rat(1));
    }
}
