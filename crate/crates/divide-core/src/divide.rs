//! I-divides and the constructions specific to them: the closure through
//! the boundary circle, the smoothing at a double point into a closed and
//! an open piece, and the Casson-invariant formula built from both.

use crate::arnold::{self, cut_passages};
use crate::curve::{int_to_i64, CurveKind, DoublePoint, PLCurve};
use crate::error::{Error, Result};
use crate::exec;
use crate::gauss::ChordDiagram;
use crate::num::*;
use num_traits::{One, Zero};

/// A divide with exactly one component, which is non-closed. Carries its
/// validated double points.
#[derive(Clone, Debug)]
pub struct Divide {
    curve: PLCurve,
    dps: Vec<DoublePoint>,
}

/// Result of smoothing a divide at one double point: one closed curve, one
/// open curve, and the number of transversal intersections between them.
#[derive(Clone, Debug)]
pub struct SmoothingAtVertex {
    pub closed_part: PLCurve,
    pub open_part: PLCurve,
    pub vertex: DoublePoint,
    pub crossings: usize,
}

/// Per-vertex and closure terms of the Casson formula, for reporting.
#[derive(Clone, Debug)]
pub struct CassonReport {
    /// `(vertex id, J̃(O_v), #(O_v ∩ I_v))`
    pub vertex_terms: Vec<(usize, i64, usize)>,
    pub closure_j_plus: i64,
    pub closure_strangeness: i64,
    pub total: i64,
}

impl Divide {
    pub fn new(curve: PLCurve) -> Result<Self> {
        if curve.kind != CurveKind::Open {
            return Err(Error::OpenRequired);
        }
        let report = curve.validate();
        if !report.valid {
            return Err(Error::not_generic(&report));
        }
        Ok(Divide { curve, dps: report.double_points })
    }

    pub fn curve(&self) -> &PLCurve {
        &self.curve
    }

    pub fn double_points(&self) -> &[DoublePoint] {
        &self.dps
    }

    pub fn reverse(&self) -> Divide {
        Divide::new(self.curve.reverse()).expect("reversal preserves genericity")
    }

    pub fn chord_diagram(&self) -> ChordDiagram {
        ChordDiagram::from_double_points(&self.dps)
    }

    pub fn is_tree_like(&self) -> bool {
        self.chord_diagram().is_tree_like()
    }

    /// Half the number of interleaving chord pairs, as an exact rational.
    pub fn chord_intersection_total(&self) -> Rat {
        rat(self.chord_diagram().interleaving_pairs().len() as i64) / rat(2)
    }

    /// Complete the divide with the boundary arc on which the divide's
    /// orientation induces a counterclockwise run, yielding a closed generic
    /// curve with the same double points. The arc is realized as a rational
    /// polyline just outside the unit circle.
    pub fn closure(&self) -> Result<PLCurve> {
        let start = self.curve.points().first().unwrap().clone();
        let end = self.curve.points().last().unwrap().clone();
        let a_end = pseudo_angle(&end);
        let a_start = pseudo_angle(&start);

        // seed fan of rational directions around the circle
        let mut ts: Vec<Option<Rat>> = vec![
            Some(rat(0)),
            Some(frac(1, 4)),
            Some(frac(1, 2)),
            Some(frac(3, 4)),
            Some(rat(1)),
            Some(frac(3, 2)),
            Some(rat(3)),
            None, // the point (-1, 0)
            Some(rat(-3)),
            Some(frac(-3, 2)),
            Some(rat(-1)),
            Some(frac(-3, 4)),
            Some(frac(-1, 2)),
            Some(frac(-1, 4)),
        ];
        let mut bulge = frac(1, 8);

        for _round in 0..10 {
            let arc = self.build_arc(&ts, &bulge, &a_end, &a_start);
            let mut pts = self.curve.points().to_vec();
            pts.extend(arc);
            if let Ok(closed) = PLCurve::closed(pts) {
                let report = closed.validate();
                if report.valid && report.double_points.len() == self.dps.len() {
                    return Ok(closed);
                }
            }
            // refine: halve the bulge and double the direction fan
            bulge /= rat(2);
            let mut finer: Vec<Option<Rat>> = Vec::with_capacity(ts.len() * 2);
            let n = ts.len();
            for i in 0..n {
                finer.push(ts[i].clone());
                let a = &ts[i];
                let b = &ts[(i + 1) % n];
                match (a, b) {
                    (Some(x), Some(y)) => finer.push(Some((x + y) / rat(2))),
                    (Some(x), None) => finer.push(Some(x * rat(2) + rat(2))),
                    (None, Some(y)) => finer.push(Some(y * rat(2) - rat(2))),
                    (None, None) => unreachable!(),
                }
            }
            ts = finer;
        }
        Err(Error::construction("closure", "boundary arc keeps colliding with the divide"))
    }

    fn build_arc(&self, ts: &[Option<Rat>], bulge: &Rat, a_end: &Rat, a_start: &Rat) -> Vec<Point> {
        // directions strictly ccw-between the end and start angles
        let scale = Rat::one() + bulge;
        let mut dirs: Vec<(Rat, Point)> = Vec::new();
        for t in ts {
            let p = match t {
                Some(t) => circle_point(t),
                None => Point::ints(-1, 0),
            };
            let mut a = pseudo_angle(&p);
            let span = {
                let mut s = a_start - a_end;
                while s <= Rat::zero() {
                    s += rat(8);
                }
                s
            };
            a -= a_end;
            while a <= Rat::zero() {
                a += rat(8);
            }
            if a < span {
                dirs.push((a, p.scale(&scale)));
            }
        }
        dirs.sort_by(|x, y| x.0.cmp(&y.0));
        dirs.into_iter().map(|(_, p)| p).collect()
    }

    /// Oriented smoothing at double point `id`: always one closed and one
    /// open piece for an I-divide.
    pub fn smooth_at(&self, id: usize) -> Result<SmoothingAtVertex> {
        let dp = self
            .dps
            .iter()
            .find(|d| d.id == id)
            .cloned()
            .ok_or(Error::NoSuchVertex(id))?;
        let cuts = cut_passages(&self.curve, &self.dps)?;
        // passage indices of this vertex
        let mut ks = cuts
            .order
            .iter()
            .enumerate()
            .filter(|(_, (_, dpi, _))| self.dps[*dpi].id == id)
            .map(|(k, _)| k);
        let k1 = ks.next().unwrap();
        let k2 = ks.next().unwrap();
        debug_assert!(k1 < k2);

        // closed piece: from after[k1] along the curve to before[k2], closed
        // by the chord across the vertex
        let mut closed_pts = Vec::new();
        closed_pts.push(cuts.after[k1].clone());
        for k in k1..k2 {
            closed_pts.extend(cuts.arc_points[k].iter().cloned());
            if k + 1 < k2 {
                closed_pts.push(cuts.before[k + 1].clone());
                closed_pts.push(cuts.after[k + 1].clone());
            }
        }
        closed_pts.push(cuts.before[k2].clone());
        let closed_part = PLCurve::closed(dedup_consecutive(closed_pts))?;

        // open piece: start of curve to before[k1], chord, after[k2] to end
        let mut open_pts = Vec::new();
        let first_param = &cuts.order[k1].0;
        let last_param = &cuts.order[k2].0;
        let m = rat(self.curve.seg_count() as i64);
        for (v, p) in self.curve.points().iter().enumerate() {
            let tv = rat(v as i64) / &m;
            if &tv < first_param {
                open_pts.push(p.clone());
            }
        }
        open_pts.push(cuts.before[k1].clone());
        open_pts.push(cuts.after[k2].clone());
        for (v, p) in self.curve.points().iter().enumerate() {
            let tv = rat(v as i64) / &m;
            if &tv > last_param {
                open_pts.push(p.clone());
            }
        }
        let open_part = PLCurve::open(dedup_consecutive(open_pts))?;

        // exact count of transversal intersections between the two pieces
        let mut crossings = 0usize;
        for i in 0..closed_part.seg_count() {
            let (a, b) = closed_part.seg(i);
            for j in 0..open_part.seg_count() {
                let (c, d) = open_part.seg(j);
                match seg_seg(a, b, c, d) {
                    SegSeg::Cross { .. } => crossings += 1,
                    SegSeg::Disjoint => {}
                    other => {
                        return Err(Error::internal(format!(
                            "smoothing pieces touch non-transversally: {other:?}"
                        )))
                    }
                }
            }
        }

        Ok(SmoothingAtVertex { closed_part, open_part, vertex: dp, crossings })
    }

    /// The Casson invariant of the knot of this divide, via the formula
    /// `Σ_v (J̃(O_v) + ¼ #(O_v∩I_v)) + (J⁺(P̄) + 2 St(P̄))/4`.
    pub fn casson_formula(&self) -> Result<i64> {
        Ok(self.casson_report()?.total)
    }

    /// Same computation, keeping the per-vertex and closure terms.
    pub fn casson_report(&self) -> Result<CassonReport> {
        let ids: Vec<usize> = self.dps.iter().map(|d| d.id).collect();
        let terms: Vec<Result<(usize, i64, usize)>> = exec::map_collect(&ids, |id| {
            let s = self.smooth_at(*id)?;
            let jt = arnold::j_tilde(&s.closed_part)?;
            Ok((*id, jt, s.crossings))
        });
        let mut vertex_terms = Vec::with_capacity(terms.len());
        for t in terms {
            vertex_terms.push(t?);
        }

        let closure = self.closure()?;
        let jp = arnold::j_plus(&closure)?;
        let st = arnold::strangeness(&closure)?;

        let mut total = Rat::zero();
        for (_, jt, cr) in &vertex_terms {
            total += rat(*jt) + frac(*cr as i64, 4);
        }
        total += frac(jp + 2 * st, 4);
        if !total.is_integer() {
            return Err(Error::internal(format!(
                "casson formula evaluated to non-integer {total}"
            )));
        }
        Ok(CassonReport {
            vertex_terms,
            closure_j_plus: jp,
            closure_strangeness: st,
            total: int_to_i64(&total),
        })
    }

    /// `Σ_v J̃(O_v)`, valid for tree-like divides only.
    pub fn tree_like_casson(&self) -> Result<i64> {
        if !self.is_tree_like() {
            return Err(Error::NotTreeLike);
        }
        let mut sum = 0i64;
        for dp in &self.dps {
            let s = self.smooth_at(dp.id)?;
            debug_assert_eq!(s.crossings, 0);
            sum += arnold::j_tilde(&s.closed_part)?;
        }
        Ok(sum)
    }

    /// `Σ_v (1 + n(O_v))`: the slalom-divide value. The caller asserts
    /// slalom-ness; tree-likeness is checked.
    pub fn slalom_value(&self) -> Result<i64> {
        if !self.is_tree_like() {
            return Err(Error::NotTreeLike);
        }
        let mut sum = 0i64;
        for dp in &self.dps {
            let s = self.smooth_at(dp.id)?;
            sum += 1 + s.closed_part.double_points()?.len() as i64;
        }
        Ok(sum)
    }
}

fn dedup_consecutive(pts: Vec<Point>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arnold::{j_minus, j_plus, strangeness};
    use crate::corpus;

    #[test]
    fn closure_of_diameter_is_embedded() {
        let d = corpus::diameter_divide();
        let c = d.closure().unwrap();
        assert!(c.validate().valid);
        assert_eq!(c.double_points().unwrap().len(), 0);
        assert_eq!(c.turning_number().unwrap().abs(), 1);
    }

    #[test]
    fn closure_of_one_loop_matches_k2_values() {
        let d = corpus::standard_divide(1).unwrap();
        let c = d.closure().unwrap();
        assert!(c.validate().valid);
        assert_eq!(strangeness(&c).unwrap(), 1);
        assert_eq!(j_plus(&c).unwrap(), -2);
        assert_eq!(j_minus(&c).unwrap(), -3);
    }

    #[test]
    fn closure_orientation_combination_invariant() {
        for d in [corpus::standard_divide(1).unwrap(), corpus::interleaved_divide()] {
            let c1 = d.closure().unwrap();
            let c2 = d.reverse().closure().unwrap();
            let v1 = j_plus(&c1).unwrap() + 2 * strangeness(&c1).unwrap();
            let v2 = j_plus(&c2).unwrap() + 2 * strangeness(&c2).unwrap();
            assert_eq!(v1, v2);
        }
    }

    #[test]
    fn smoothing_one_loop() {
        let d = corpus::standard_divide(1).unwrap();
        let s = d.smooth_at(0).unwrap();
        assert!(s.closed_part.validate().valid);
        assert!(s.open_part.validate().valid);
        assert_eq!(s.crossings, 0);
        assert_eq!(s.closed_part.double_points().unwrap().len(), 0);
        assert_eq!(arnold::j_tilde(&s.closed_part).unwrap(), 1);
    }

    #[test]
    fn tree_like_detection() {
        assert!(corpus::diameter_divide().is_tree_like());
        assert!(corpus::standard_divide(3).unwrap().is_tree_like());
        assert!(!corpus::interleaved_divide().is_tree_like());
    }

    #[test]
    fn interleaved_divide_chords() {
        let d = corpus::interleaved_divide();
        assert_eq!(d.double_points().len(), 3);
        assert_eq!(d.chord_diagram().interleaving_pairs().len(), 3);
        assert_eq!(d.chord_intersection_total(), frac(3, 2));
        for dp in d.double_points() {
            let s = d.smooth_at(dp.id).unwrap();
            assert_eq!(s.crossings, 2, "vertex {}", dp.id);
            assert_eq!(s.crossings, d.chord_diagram().interleave_count(dp.id));
        }
    }

    #[test]
    fn casson_on_standard_divides() {
        for n in 0..4 {
            let d = corpus::standard_divide(n).unwrap();
            assert_eq!(d.casson_formula().unwrap(), n as i64, "D_{n}");
            if n > 0 {
                assert_eq!(d.tree_like_casson().unwrap(), n as i64);
                assert_eq!(d.slalom_value().unwrap(), n as i64);
            }
        }
    }

    #[test]
    fn casson_orientation_invariant() {
        for d in [
            corpus::standard_divide(2).unwrap(),
            corpus::interleaved_divide(),
            corpus::nested_divide(),
        ] {
            assert_eq!(d.casson_formula().unwrap(), d.reverse().casson_formula().unwrap());
        }
    }

    #[test]
    fn nested_divide_slalom_value() {
        let d = corpus::nested_divide();
        assert!(d.is_tree_like());
        let v = d.casson_formula().unwrap();
        assert_eq!(d.tree_like_casson().unwrap(), v);
        assert_eq!(d.slalom_value().unwrap(), v);
        assert_eq!(v, 3);
    }

    #[test]
    fn casson_invariant_under_subdivision_and_perturbation() {
        let d = corpus::standard_divide(2).unwrap();
        let value = d.casson_formula().unwrap();
        let code = crate::gauss::gauss_code(d.curve()).unwrap();

        // subdivide every segment off-center (midpoints can hit crossings)
        let mut pts = Vec::new();
        for i in 0..d.curve().seg_count() {
            let (a, b) = d.curve().seg(i);
            pts.push(a.clone());
            pts.push(a.add(&b.sub(a).scale(&frac(3, 7))));
        }
        pts.push(d.curve().points().last().unwrap().clone());
        let subdivided = Divide::new(PLCurve::open(pts.clone()).unwrap()).unwrap();
        assert_eq!(subdivided.casson_formula().unwrap(), value);

        // nudge one interior vertex; the Gauss code must survive the move
        let mut moved = pts;
        let k = moved.len() / 2;
        moved[k] = moved[k].add(&Point::new(frac(1, 997), frac(1, 1009)));
        let perturbed = PLCurve::open(moved).unwrap();
        assert_eq!(crate::gauss::gauss_code(&perturbed).unwrap(), code);
        let perturbed = Divide::new(perturbed).unwrap();
        assert_eq!(perturbed.casson_formula().unwrap(), value);
    }

    #[test]
    fn chord_total_equals_quarter_sum() {
        for d in [corpus::interleaved_divide(), corpus::standard_divide(2).unwrap()] {
            let mut quarter = Rat::zero();
            for dp in d.double_points() {
                let s = d.smooth_at(dp.id).unwrap();
                quarter += frac(s.crossings as i64, 4);
            }
            assert_eq!(quarter, d.chord_intersection_total());
        }
    }
}
