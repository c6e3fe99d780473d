//! Diagonal position: redraw a generic curve so that every segment has
//! slope +1 or -1, double points sit at crossings of opposite slopes, and
//! vertical tangencies are isolated x-extrema.
//!
//! The construction sweeps the (sheared) input left to right into a Morse
//! event sequence — caps, crossings, endpoints — cancels trivially paired
//! caps, and re-draws the sequence on an integer grid with sawtooth wires.
//! The result is verified against the input by Gauss code equality.

use crate::arnold::{diagonal_extrema, Extremum};
use crate::curve::{CurveKind, PLCurve};
use crate::error::{Error, Result};
use crate::gauss::gauss_code;
use crate::num::*;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// A curve redrawn with ±1 slopes, together with its classified x-extrema.
#[derive(Clone, Debug)]
pub struct DiagonalPosition {
    pub curve: PLCurve,
    /// `(vertex index, extremum kind)` per vertical tangency.
    pub extrema: Vec<(usize, Extremum)>,
}

impl DiagonalPosition {
    /// Wrap a curve that is already in diagonal position.
    pub fn from_diagonal_curve(curve: PLCurve) -> Result<Self> {
        let curve = curve.simplify_collinear();
        let extrema = diagonal_extrema(&curve)?;
        let report = curve.validate_plane();
        if !report.valid {
            return Err(Error::not_generic(&report));
        }
        Ok(DiagonalPosition { curve, extrema })
    }
}

/// Redraw `curve` in diagonal position, preserving its Gauss code exactly.
pub fn diagonalize(curve: &PLCurve) -> Result<DiagonalPosition> {
    let target = gauss_code(curve)?;
    let mut last_err = None;
    for eps_den in [16i64, 17, 19, 23, 29, 31, 37, 41] {
        match try_diagonalize(curve, eps_den) {
            Ok(diag) => {
                let got = gauss_code(&diag.curve)?;
                if got == target {
                    return Ok(diag);
                }
                last_err = Some(Error::construction(
                    "diagonalize",
                    format!("gauss code mismatch: wanted {target}, got {got}"),
                ));
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::construction("diagonalize", "all shears failed")))
}

/// Check that a rebuild reproduces the Gauss code of the original.
pub fn verify_same_code(a: &PLCurve, b: &PLCurve) -> Result<bool> {
    Ok(gauss_code(a)? == gauss_code(b)?)
}

fn try_diagonalize(curve: &PLCurve, eps_den: i64) -> Result<DiagonalPosition> {
    let rebuilt = rebuild_raw(curve, eps_den)?;
    DiagonalPosition::from_diagonal_curve(rebuilt)
}

/// The re-drawn curve before any invariant checks (exposed for debugging).
#[doc(hidden)]
pub fn rebuild_raw(curve: &PLCurve, eps_den: i64) -> Result<PLCurve> {
    let sheared = shear_generic(curve, eps_den)?;
    let mut events = sweep(&sheared)?;
    cancel_cap_pairs(&mut events)?;
    rebuild(&events, events.kind)
}

/// Shear `x -> x + eps*y` with the first eps = 1/eps_den (or a nearby value)
/// that makes all vertices and double points have distinct x and no segment
/// vertical.
fn shear_generic(curve: &PLCurve, eps_den: i64) -> Result<PLCurve> {
    let report = curve.validate_plane();
    if !report.valid {
        return Err(Error::not_generic(&report));
    }
    let mut features: Vec<Point> = curve.points().to_vec();
    features.extend(report.double_points.iter().map(|d| d.position.clone()));

    'eps: for k in 0..64i64 {
        let eps = frac(1, eps_den + k);
        // vertical segments
        for i in 0..curve.seg_count() {
            let d = curve.seg_dir(i);
            if (&d.x + &eps * &d.y).is_zero() {
                continue 'eps;
            }
        }
        // distinct feature x
        let mut xs: Vec<Rat> = features.iter().map(|p| &p.x + &eps * &p.y).collect();
        xs.sort();
        for w in xs.windows(2) {
            if w[0] == w[1] {
                continue 'eps;
            }
        }
        let pts = curve
            .points()
            .iter()
            .map(|p| Point::new(&p.x + &eps * &p.y, p.y.clone()))
            .collect();
        return PLCurve::new(curve.kind, pts);
    }
    Err(Error::construction("diagonalize", "no usable shear found"))
}

// ---------------------------------------------------------------------------
// sweep

#[derive(Clone, Debug)]
struct Piece {
    /// geometry sorted left to right (for y lookups)
    pts_lr: Vec<Point>,
    /// travels in +x direction
    dir_right: bool,
}

impl Piece {
    fn y_at(&self, x: &Rat) -> Rat {
        let pts = &self.pts_lr;
        for w in pts.windows(2) {
            if &w[0].x <= x && x <= &w[1].x {
                let t = (x - &w[0].x) / (&w[1].x - &w[0].x);
                return &w[0].y + (&w[1].y - &w[0].y) * t;
            }
        }
        // clamp to the nearest end
        if x < &pts[0].x {
            pts[0].y.clone()
        } else {
            pts.last().unwrap().y.clone()
        }
    }
}

#[derive(Clone, Debug)]
enum Ev {
    /// x-minimum cap: two pieces begin; `upper` is the one on top just
    /// right of the apex; the curve arrives along one and departs along the
    /// other.
    Birth { x: Rat, upper: usize, lower: usize, below: Vec<usize> },
    /// x-maximum cap: two adjacent pieces end.
    Death { x: Rat, a: usize, b: usize },
    /// transversal crossing of two adjacent pieces.
    Cross { x: Rat, a: usize, b: usize },
    /// open-curve endpoint at the left end of its piece
    Ins { x: Rat, piece: usize, below: Vec<usize> },
    /// open-curve endpoint at the right end of its piece
    Del { x: Rat, piece: usize },
}

impl Ev {
    fn refs(&self) -> Vec<usize> {
        match self {
            Ev::Birth { upper, lower, .. } => vec![*upper, *lower],
            Ev::Death { a, b, .. } | Ev::Cross { a, b, .. } => vec![*a, *b],
            Ev::Ins { piece, .. } | Ev::Del { piece, .. } => vec![*piece],
        }
    }
}

#[derive(Clone, Debug)]
struct EventList {
    events: Vec<Ev>,
    dirs: BTreeMap<usize, bool>,
    /// curve-order successor data: for each cap/endpoint junction, handled
    /// during assembly straight from the events
    kind: CurveKind,
}

fn sweep(curve: &PLCurve) -> Result<EventList> {
    let report = curve.validate_plane();
    if !report.valid {
        return Err(Error::not_generic(&report));
    }
    let dps = report.double_points;
    let n = curve.points().len();
    let m = curve.seg_count();
    let m_rat = rat(m as i64);

    // break parameters: reversal vertices (+ endpoints for open curves)
    let mut breaks: Vec<Rat> = Vec::new();
    let (vs, ve) = match curve.kind {
        CurveKind::Closed => (0usize, n),
        CurveKind::Open => (1, n - 1),
    };
    for v in vs..ve {
        let din = curve.points()[v].sub(&curve.points()[(v + n - 1) % n]);
        let dout = curve.points()[(v + 1) % n].sub(&curve.points()[v]);
        if sign(&din.x) != sign(&dout.x) {
            breaks.push(rat(v as i64) / &m_rat);
        }
    }
    breaks.sort();

    // piece parameter ranges in travel order
    let mut ranges: Vec<(Rat, Rat)> = Vec::new();
    match curve.kind {
        CurveKind::Open => {
            let mut prev = rat(0);
            for b in &breaks {
                ranges.push((prev.clone(), b.clone()));
                prev = b.clone();
            }
            ranges.push((prev, rat(1)));
        }
        CurveKind::Closed => {
            if breaks.is_empty() {
                return Err(Error::internal("closed curve without x-reversals"));
            }
            for i in 0..breaks.len() {
                let s = breaks[i].clone();
                let e = if i + 1 == breaks.len() {
                    breaks[0].clone() + rat(1)
                } else {
                    breaks[i + 1].clone()
                };
                ranges.push((s, e));
            }
        }
    }

    // geometry of each piece
    let pat = |t: &Rat| -> Point {
        match curve.kind {
            CurveKind::Closed => curve.point_at(&wrap01(t)),
            CurveKind::Open => curve.point_at(t),
        }
    };
    let mut pieces: Vec<Piece> = Vec::new();
    for (s, e) in &ranges {
        let mut ordered: Vec<(Rat, Point)> = vec![(s.clone(), pat(s))];
        for v in 0..n {
            for shift in [rat(0), rat(1)] {
                let tv = rat(v as i64) / &m_rat + &shift;
                if &tv > s && &tv < e {
                    ordered.push((tv, curve.points()[v].clone()));
                    break;
                }
            }
        }
        ordered.sort_by(|a, b| a.0.cmp(&b.0));
        ordered.push((e.clone(), pat(e)));
        let mut geo: Vec<Point> = ordered.into_iter().map(|(_, p)| p).collect();
        geo.dedup();
        let dir_right = geo.last().unwrap().x > geo[0].x;
        if !dir_right {
            geo.reverse();
        }
        debug_assert!(geo.windows(2).all(|w| w[0].x < w[1].x));
        pieces.push(Piece { pts_lr: geo, dir_right });
    }

    let piece_of = |t: &Rat| -> usize {
        for (i, (s, e)) in ranges.iter().enumerate() {
            if (t >= s && t <= e) || (&(t + rat(1)) >= s && &(t + rat(1)) <= e) {
                // interior match only; passages never sit on breaks
                let tt = if t >= s && t <= e { t.clone() } else { t + rat(1) };
                if &tt > s && &tt < e {
                    return i;
                }
            }
        }
        unreachable!("passage parameter outside every piece")
    };

    // raw events
    struct Raw {
        x: Rat,
        kind: RawKind,
    }
    enum RawKind {
        Cap { arriving: usize, departing: usize },
        Cross { a: usize, b: usize },
        StartPt { piece: usize },
        EndPt { piece: usize },
    }
    let mut raws: Vec<Raw> = Vec::new();
    for (i, (s, e)) in ranges.iter().enumerate() {
        // the junction at the END of piece i (travel order) connects to the
        // start of the next piece
        let next = (i + 1) % ranges.len();
        let end_is_junction = match curve.kind {
            CurveKind::Closed => true,
            CurveKind::Open => i + 1 < ranges.len(),
        };
        if end_is_junction {
            let apex = pat(e);
            raws.push(Raw {
                x: apex.x.clone(),
                kind: RawKind::Cap { arriving: i, departing: next },
            });
        }
        let _ = s;
    }
    for dp in &dps {
        let a = piece_of(&dp.visits.0);
        let b = piece_of(&dp.visits.1);
        raws.push(Raw { x: dp.position.x.clone(), kind: RawKind::Cross { a, b } });
    }
    if curve.kind == CurveKind::Open {
        raws.push(Raw {
            x: curve.points()[0].x.clone(),
            kind: RawKind::StartPt { piece: 0 },
        });
        raws.push(Raw {
            x: curve.points()[n - 1].x.clone(),
            kind: RawKind::EndPt { piece: ranges.len() - 1 },
        });
    }
    raws.sort_by(|p, q| p.x.cmp(&q.x));

    // simulate, recording insertion data
    let mut status: Vec<usize> = Vec::new();
    let mut events: Vec<Ev> = Vec::new();
    for raw in raws {
        let x = raw.x;
        match raw.kind {
            RawKind::Cap { arriving, departing } => {
                let arr_right = pieces[arriving].dir_right;
                if arr_right {
                    // max cap: both end here; must be adjacent
                    let pa = pos_of(&status, arriving)?;
                    let pb = pos_of(&status, departing)?;
                    if pa.abs_diff(pb) != 1 {
                        return Err(Error::internal("max cap pieces not adjacent"));
                    }
                    status.remove(pa.max(pb));
                    status.remove(pa.min(pb));
                    events.push(Ev::Death { x, a: arriving, b: departing });
                } else {
                    // min cap: both begin here
                    let apex_y = {
                        let p = &pieces[arriving].pts_lr[0];
                        debug_assert_eq!(p.x, x);
                        p.y.clone()
                    };
                    let slot = insertion_slot(&status, &pieces, &x, &apex_y);
                    let below = status[..slot].to_vec();
                    // which branch is on top just right of the apex
                    let u_arr = second_point(&pieces[arriving]);
                    let u_dep = second_point(&pieces[departing]);
                    let arr_on_top = slope_above(&u_arr, &u_dep, &x, &apex_y);
                    let (upper, lower) = if arr_on_top {
                        (arriving, departing)
                    } else {
                        (departing, arriving)
                    };
                    status.insert(slot, lower);
                    status.insert(slot + 1, upper);
                    events.push(Ev::Birth { x, upper, lower, below });
                }
            }
            RawKind::Cross { a, b } => {
                let pa = pos_of(&status, a)?;
                let pb = pos_of(&status, b)?;
                if pa.abs_diff(pb) != 1 {
                    return Err(Error::internal(format!(
                        "crossing pieces not adjacent (slots {pa} and {pb})"
                    )));
                }
                status.swap(pa, pb);
                events.push(Ev::Cross { x, a, b });
            }
            RawKind::StartPt { piece } | RawKind::EndPt { piece }
                if piece_left_end(&pieces[piece], &x) =>
            {
                let y = pieces[piece].pts_lr[0].y.clone();
                let slot = insertion_slot(&status, &pieces, &x, &y);
                let below = status[..slot].to_vec();
                status.insert(slot, piece);
                events.push(Ev::Ins { x, piece, below });
            }
            RawKind::StartPt { piece } | RawKind::EndPt { piece } => {
                let p = pos_of(&status, piece)?;
                status.remove(p);
                events.push(Ev::Del { x, piece });
            }
        }
    }
    if !status.is_empty() {
        return Err(Error::internal("sweep finished with active pieces"));
    }

    let dirs = pieces.iter().enumerate().map(|(i, p)| (i, p.dir_right)).collect();
    Ok(EventList { events, dirs, kind: curve.kind })
}

fn wrap01(t: &Rat) -> Rat {
    let one = rat(1);
    let mut t = t.clone();
    while t >= one {
        t -= rat(1);
    }
    while t.is_negative() {
        t += rat(1);
    }
    t
}

fn pos_of(status: &[usize], id: usize) -> Result<usize> {
    status
        .iter()
        .position(|&s| s == id)
        .ok_or_else(|| Error::internal(format!("piece {id} not active")))
}

fn insertion_slot(status: &[usize], pieces: &[Piece], x: &Rat, y: &Rat) -> usize {
    status
        .iter()
        .filter(|id| pieces[**id].y_at(x) < *y)
        .count()
}

fn second_point(piece: &Piece) -> Point {
    piece.pts_lr[1].clone()
}

/// Is the ray from the apex through `pa` above the ray through `pb` just
/// right of the apex?
fn slope_above(pa: &Point, pb: &Point, apex_x: &Rat, apex_y: &Rat) -> bool {
    let apex = Point::new(apex_x.clone(), apex_y.clone());
    let da = pa.sub(&apex);
    let db = pb.sub(&apex);
    sign(&db.cross(&da)) > 0
}

fn piece_left_end(piece: &Piece, x: &Rat) -> bool {
    piece.pts_lr[0].x == *x
}

// ---------------------------------------------------------------------------
// cap-pair cancellation

/// Retract fingers: a Birth and the Death of one of its pieces cancel when
/// the born pair and the dying pair overlap in exactly one piece and the
/// three pieces involved stay vertically consecutive in between.
fn cancel_cap_pairs(list: &mut EventList) -> Result<()> {
    loop {
        let snapshots = simulate(list)?;
        let mut action: Option<(usize, usize, usize, usize, usize)> = None;
        'search: for (bi, ev) in list.events.iter().enumerate() {
            let (p1, p2) = match ev {
                Ev::Birth { upper, lower, .. } => (*upper, *lower),
                _ => continue,
            };
            for m in [p1, p2] {
                let other_born = if m == p1 { p2 } else { p1 };
                // find the death of m
                let di = list.events.iter().enumerate().skip(bi + 1).find_map(|(k, e)| {
                    match e {
                        Ev::Death { a, b, .. } if *a == m || *b == m => Some(k),
                        _ => None,
                    }
                });
                let Some(di) = di else { continue };
                let (da, db) = match &list.events[di] {
                    Ev::Death { a, b, .. } => (*a, *b),
                    _ => unreachable!(),
                };
                let other_died = if da == m { db } else { da };
                if other_died == other_born {
                    continue; // a bare oval; keep it
                }
                // no event in between may reference m
                if list.events[bi + 1..di].iter().any(|e| e.refs().contains(&m)) {
                    continue;
                }
                // P, M, R must be consecutive in every snapshot in [bi, di)
                let trio = [other_born, m, other_died];
                let ok = (bi..di).all(|k| consecutive(&snapshots[k], &trio));
                if ok {
                    action = Some((bi, di, other_born, m, other_died));
                    break 'search;
                }
            }
        }
        let Some((bi, di, p, m, r)) = action else { return Ok(()) };
        // merge P, M, R into one piece; keep the smaller of the outer ids so
        // bookkeeping anchored on piece 0 stays valid
        debug_assert_eq!(list.dirs[&p], list.dirs[&r]);
        let survivor = p.min(r);
        let renamed = p.max(r);
        let mut events = Vec::with_capacity(list.events.len() - 2);
        for (k, ev) in list.events.iter().enumerate() {
            if k == bi || k == di {
                continue;
            }
            events.push(rename(ev, renamed, survivor, m));
        }
        list.events = events;
        list.dirs.remove(&m);
        list.dirs.remove(&renamed);
    }
}

fn consecutive(status: &[usize], trio: &[usize; 3]) -> bool {
    let pos: Vec<Option<usize>> =
        trio.iter().map(|id| status.iter().position(|s| s == id)).collect();
    match (pos[0], pos[1], pos[2]) {
        (Some(p), Some(m), Some(r)) => {
            (m == p + 1 && r == m + 1) || (m + 1 == p && r + 1 == m)
        }
        _ => false,
    }
}

fn rename(ev: &Ev, from: usize, to: usize, drop_piece: usize) -> Ev {
    let f = |id: usize| if id == from { to } else { id };
    let fix_below = |below: &Vec<usize>| -> Vec<usize> {
        let mut out: Vec<usize> = below
            .iter()
            .filter(|&&b| b != drop_piece)
            .map(|&b| f(b))
            .collect();
        out.sort();
        out.dedup();
        out
    };
    match ev {
        Ev::Birth { x, upper, lower, below } => Ev::Birth {
            x: x.clone(),
            upper: f(*upper),
            lower: f(*lower),
            below: fix_below(below),
        },
        Ev::Death { x, a, b } => Ev::Death { x: x.clone(), a: f(*a), b: f(*b) },
        Ev::Cross { x, a, b } => Ev::Cross { x: x.clone(), a: f(*a), b: f(*b) },
        Ev::Ins { x, piece, below } => {
            Ev::Ins { x: x.clone(), piece: f(*piece), below: fix_below(below) }
        }
        Ev::Del { x, piece } => Ev::Del { x: x.clone(), piece: f(*piece) },
    }
}

/// Replay an event list, returning the status after each event.
fn simulate(list: &EventList) -> Result<Vec<Vec<usize>>> {
    let mut status: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(list.events.len());
    for ev in &list.events {
        apply_event(&mut status, ev)?;
        out.push(status.clone());
    }
    if !status.is_empty() {
        return Err(Error::internal("replay finished with active pieces"));
    }
    Ok(out)
}

fn apply_event(status: &mut Vec<usize>, ev: &Ev) -> Result<()> {
    match ev {
        Ev::Birth { upper, lower, below, .. } => {
            let slot = status.iter().filter(|id| below.contains(id)).count();
            status.insert(slot, *lower);
            status.insert(slot + 1, *upper);
        }
        Ev::Death { a, b, .. } => {
            let pa = pos_of(status, *a)?;
            let pb = pos_of(status, *b)?;
            if pa.abs_diff(pb) != 1 {
                return Err(Error::internal("death pieces not adjacent"));
            }
            status.remove(pa.max(pb));
            status.remove(pa.min(pb));
        }
        Ev::Cross { a, b, .. } => {
            let pa = pos_of(status, *a)?;
            let pb = pos_of(status, *b)?;
            if pa.abs_diff(pb) != 1 {
                return Err(Error::internal("cross pieces not adjacent"));
            }
            status.swap(pa, pb);
        }
        Ev::Ins { piece, below, .. } => {
            let slot = status.iter().filter(|id| below.contains(id)).count();
            status.insert(slot, *piece);
        }
        Ev::Del { piece, .. } => {
            let p = pos_of(status, *piece)?;
            status.remove(p);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// rebuild

const G: i64 = 12; // level pitch
const AMP: i64 = 4; // sawtooth amplitude

struct Draw {
    status: Vec<usize>,
    pts: BTreeMap<usize, Vec<Point>>,
    x: i64,
}

impl Draw {
    fn y(&self, slot: usize) -> i64 {
        slot as i64 * G
    }
}

/// Append a ±1-slope sawtooth from `(x0, y)` to `(x1, y)`; assumes the last
/// point already sits at `(x0, y)`.
fn sawtooth(pts: &mut Vec<Point>, x0: i64, x1: i64, y: i64) {
    let mut x = x0;
    while x1 - x >= 2 * AMP {
        pts.push(Point::ints(x + AMP, y + AMP));
        pts.push(Point::ints(x + 2 * AMP, y));
        x += 2 * AMP;
    }
    let rest = x1 - x;
    if rest > 0 {
        // rest is even because all spans are multiples of 2
        pts.push(Point::ints(x + rest / 2, y + rest / 2));
        pts.push(Point::ints(x1, y));
    }
}

fn rebuild(list: &EventList, kind: CurveKind) -> Result<PLCurve> {
    let mut draw = Draw { status: Vec::new(), pts: BTreeMap::new(), x: 0 };
    // junction apexes, reconstructed in event order
    let mut junctions: Vec<(usize, usize, Point)> = Vec::new(); // (arriving, departing, apex)

    for ev in &list.events {
        // spacer column between consecutive events
        if !draw.status.is_empty() {
            let x_to = draw.x + G;
            let ids: Vec<(usize, usize)> =
                draw.status.iter().enumerate().map(|(s, id)| (s, *id)).collect();
            for (slot, id) in ids {
                let pts = draw.pts.get_mut(&id).unwrap();
                sawtooth(pts, draw.x, x_to, slot as i64 * G);
            }
            draw.x = x_to;
        }
        match ev {
            Ev::Birth { upper, lower, below, .. } => {
                let slot = draw.status.iter().filter(|id| below.contains(id)).count();
                // renumber: everything at or above `slot` climbs +2 levels
                let climb: BTreeMap<usize, (i64, i64)> = draw
                    .status
                    .iter()
                    .enumerate()
                    .filter(|(s, _)| *s >= slot)
                    .map(|(s, id)| (*id, (s as i64 * G, (s as i64 + 2) * G)))
                    .collect();
                if !climb.is_empty() {
                    let span = 2 * G;
                    let x_to = draw.x + span;
                    climb_advance(&mut draw, x_to, &climb)?;
                }
                // cap window; pieces above the slot already climbed two levels
                let x0 = draw.x;
                let apex = Point::ints(x0 + G / 2, draw.y(slot) + G / 2);
                let up_pt = Point::ints(x0 + G, draw.y(slot) + G);
                let lo_pt = Point::ints(x0 + G, draw.y(slot));
                draw.pts.insert(*upper, vec![up_pt]);
                draw.pts.insert(*lower, vec![lo_pt]);
                // other pieces cross the window at their shifted levels
                let others: Vec<usize> = draw.status.clone();
                for (s, id) in others.iter().enumerate() {
                    let level = if s >= slot { (s as i64 + 2) * G } else { s as i64 * G };
                    let pts = draw.pts.get_mut(id).unwrap();
                    sawtooth(pts, x0, x0 + G, level);
                }
                draw.x = x0 + G;
                draw.status.insert(slot, *lower);
                draw.status.insert(slot + 1, *upper);
                let arriving = if list.dirs[upper] { *lower } else { *upper };
                let departing = if arriving == *upper { *lower } else { *upper };
                // at a min cap the arriving piece travels leftward
                debug_assert!(!list.dirs[&arriving]);
                junctions.push((arriving, departing, apex));
            }
            Ev::Death { a, b, .. } => {
                let pa = pos_of(&draw.status, *a)?;
                let pb = pos_of(&draw.status, *b)?;
                let lo = pa.min(pb);
                debug_assert_eq!(pa.abs_diff(pb), 1);
                let x0 = draw.x;
                let apex = Point::ints(x0 + G / 2, draw.y(lo) + G / 2);
                // other pieces cross the window first
                let others: Vec<(usize, usize)> = draw
                    .status
                    .iter()
                    .enumerate()
                    .filter(|(s, _)| *s != lo && *s != lo + 1)
                    .map(|(s, id)| (s, *id))
                    .collect();
                for (s, id) in others {
                    let pts = draw.pts.get_mut(&id).unwrap();
                    sawtooth(pts, x0, x0 + G, s as i64 * G);
                }
                draw.x = x0 + G;
                draw.status.remove(lo + 1);
                draw.status.remove(lo);
                // arriving piece travels rightward into a max cap
                let arriving = if list.dirs[a] { *a } else { *b };
                let departing = if arriving == *a { *b } else { *a };
                debug_assert!(list.dirs[&arriving]);
                junctions.push((arriving, departing, apex));
                // renumber: everything above shifts down 2
                let climb: BTreeMap<usize, (i64, i64)> = draw
                    .status
                    .iter()
                    .enumerate()
                    .filter(|(s, _)| *s >= lo)
                    .map(|(s, id)| (*id, ((s as i64 + 2) * G, s as i64 * G)))
                    .collect();
                if !climb.is_empty() {
                    let x_to = draw.x + 2 * G;
                    climb_advance(&mut draw, x_to, &climb)?;
                }
            }
            Ev::Cross { a, b, .. } => {
                let pa = pos_of(&draw.status, *a)?;
                let pb = pos_of(&draw.status, *b)?;
                if pa.abs_diff(pb) != 1 {
                    return Err(Error::internal("cross not adjacent at rebuild"));
                }
                let lo = pa.min(pb);
                let x0 = draw.x;
                let lower_id = draw.status[lo];
                let upper_id = draw.status[lo + 1];
                draw.pts
                    .get_mut(&lower_id)
                    .unwrap()
                    .push(Point::ints(x0 + G, (lo as i64 + 1) * G));
                draw.pts
                    .get_mut(&upper_id)
                    .unwrap()
                    .push(Point::ints(x0 + G, lo as i64 * G));
                let others: Vec<(usize, usize)> = draw
                    .status
                    .iter()
                    .enumerate()
                    .filter(|(s, _)| *s != lo && *s != lo + 1)
                    .map(|(s, id)| (s, *id))
                    .collect();
                for (s, id) in others {
                    let pts = draw.pts.get_mut(&id).unwrap();
                    sawtooth(pts, x0, x0 + G, s as i64 * G);
                }
                draw.x = x0 + G;
                draw.status.swap(lo, lo + 1);
            }
            Ev::Ins { piece, below, .. } => {
                let slot = draw.status.iter().filter(|id| below.contains(id)).count();
                let climb: BTreeMap<usize, (i64, i64)> = draw
                    .status
                    .iter()
                    .enumerate()
                    .filter(|(s, _)| *s >= slot)
                    .map(|(s, id)| (*id, (s as i64 * G, (s as i64 + 1) * G)))
                    .collect();
                if !climb.is_empty() {
                    let x_to = draw.x + G;
                    climb_advance(&mut draw, x_to, &climb)?;
                }
                let start = Point::ints(draw.x, draw.y(slot));
                draw.pts.insert(*piece, vec![start]);
                draw.status.insert(slot, *piece);
            }
            Ev::Del { piece, .. } => {
                let p = pos_of(&draw.status, *piece)?;
                let end = Point::ints(draw.x, draw.y(p));
                // ensure the piece's polyline actually ends here
                let pts = draw.pts.get_mut(piece).unwrap();
                if pts.last() != Some(&end) {
                    return Err(Error::internal("endpoint misaligned at rebuild"));
                }
                draw.status.remove(p);
                let climb: BTreeMap<usize, (i64, i64)> = draw
                    .status
                    .iter()
                    .enumerate()
                    .filter(|(s, _)| *s >= p)
                    .map(|(s, id)| (*id, ((s as i64 + 1) * G, s as i64 * G)))
                    .collect();
                if !climb.is_empty() {
                    let x_to = draw.x + G;
                    climb_advance(&mut draw, x_to, &climb)?;
                }
            }
        }
        // every active piece must sit exactly at its level
        for (slot, id) in draw.status.iter().enumerate() {
            let want = Point::ints(draw.x, slot as i64 * G);
            if draw.pts.get(id).and_then(|p| p.last()) != Some(&want) {
                return Err(Error::internal(format!(
                    "piece {id} misaligned after {ev:?}: at {:?}, want {want:?}",
                    draw.pts.get(id).and_then(|p| p.last())
                )));
            }
        }
    }
    if !draw.status.is_empty() {
        return Err(Error::internal("rebuild finished with active pieces"));
    }

    assemble(list, kind, &draw.pts, &junctions)
}

/// Move the top block of pieces to fresh levels over a straight span while
/// the rest sawtooth along.
fn climb_advance(
    draw: &mut Draw,
    x_to: i64,
    climb: &BTreeMap<usize, (i64, i64)>,
) -> Result<()> {
    let x_from = draw.x;
    let ids: Vec<(usize, usize)> = draw.status.iter().enumerate().map(|(s, id)| (s, *id)).collect();
    for (slot, id) in ids {
        let pts = draw.pts.get_mut(&id).ok_or_else(|| Error::internal("missing piece"))?;
        match climb.get(&id) {
            Some((y0, y1)) => {
                debug_assert_eq!(pts.last().map(|p| p.y.clone()), Some(rat(*y0)));
                let dy = (y1 - y0).abs();
                let dx = x_to - x_from;
                if dy > 0 {
                    pts.push(Point::ints(x_from + dy, *y1));
                }
                if dx > dy {
                    sawtooth(pts, x_from + dy, x_to, *y1);
                }
            }
            None => {
                sawtooth(pts, x_from, x_to, slot as i64 * G);
            }
        }
    }
    draw.x = x_to;
    Ok(())
}

fn assemble(
    list: &EventList,
    kind: CurveKind,
    pts: &BTreeMap<usize, Vec<Point>>,
    junctions: &[(usize, usize, Point)],
) -> Result<PLCurve> {
    // successor along the curve: arriving piece -> (apex, departing piece)
    let mut succ: BTreeMap<usize, (Point, usize)> = BTreeMap::new();
    for (arr, dep, apex) in junctions {
        succ.insert(*arr, (apex.clone(), *dep));
    }

    let piece_points = |id: usize| -> Vec<Point> {
        let mut p = pts[&id].clone();
        if !list.dirs[&id] {
            p.reverse();
        }
        p
    };

    let start_piece = match kind {
        CurveKind::Open => {
            // the piece holding the curve start is the one with an endpoint
            // that is not a junction target: piece 0 by construction
            0
        }
        CurveKind::Closed => *list.dirs.keys().next().ok_or_else(|| {
            Error::internal("empty event list")
        })?,
    };

    let mut out: Vec<Point> = Vec::new();
    let mut cur = start_piece;
    loop {
        out.extend(piece_points(cur));
        match succ.get(&cur) {
            Some((apex, next)) => {
                out.push(apex.clone());
                cur = *next;
                if kind == CurveKind::Closed && cur == start_piece {
                    break;
                }
            }
            None => break, // open curve end
        }
        if out.len() > 1_000_000 {
            return Err(Error::internal("assembly does not terminate"));
        }
    }

    let mut dedup: Vec<Point> = Vec::new();
    for p in out {
        if dedup.last() != Some(&p) {
            dedup.push(p);
        }
    }
    if kind == CurveKind::Closed && dedup.len() > 1 && dedup.first() == dedup.last() {
        dedup.pop();
    }
    PLCurve::new(kind, dedup).map(|c| c.simplify_collinear())
}
