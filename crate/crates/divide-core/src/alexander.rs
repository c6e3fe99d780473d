//! Alexander polynomial of a knot diagram over exact integer Laurent
//! arithmetic, the Casson invariant `½Δ″(1)` derived from it, and linking
//! numbers of two-component diagrams.

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Integer Laurent polynomial in one variable; zero coefficients are never
/// stored, so equality is coefficient-wise.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: i64, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in iter {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Value at t = 1.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Value of the second derivative at t = 1: `Σ c_e · e · (e−1)`.
    pub fn second_derivative_one(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| c * BigInt::from(*e) * BigInt::from(e - 1))
            .sum()
    }

    /// Substitute t -> 1/t.
    pub fn invert_var(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_var()
    }

    /// Exact division, panicking territory avoided: returns an error if the
    /// division leaves a remainder (which would signal a bug in Bareiss
    /// elimination).
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::internal("division by zero polynomial"));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let d_max = divisor.max_exp().unwrap();
        let d_lead = divisor.terms[&d_max].clone();
        while !rem.is_zero() {
            let r_max = rem.max_exp().unwrap();
            let r_lead = rem.terms[&r_max].clone();
            let (q, r) = num_integer::Integer::div_rem(&r_lead, &d_lead);
            if !r.is_zero() {
                return Err(Error::internal("non-exact polynomial division"));
            }
            let mono = LaurentPoly::monomial(r_max - d_max, q);
            rem = rem.sub(&mono.mul(divisor));
            quot = quot.add(&mono);
            if rem.max_exp().map(|e| e >= r_max).unwrap_or(false) {
                return Err(Error::internal("polynomial division does not terminate"));
            }
        }
        Ok(quot)
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "t")?,
                1 => write!(f, "{a}*t")?,
                _ if a.is_one() => write!(f, "t^{e}")?,
                _ => write!(f, "{a}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Determinant of a square Laurent-polynomial matrix by fraction-free
/// Bareiss elimination.
fn det_bareiss(mut m: Vec<Vec<LaurentPoly>>) -> Result<LaurentPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut sign_flip = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Ok(LaurentPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        for row in m.iter_mut().skip(k + 1) {
            row[k] = LaurentPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign_flip { det.neg() } else { det })
}

/// Alexander polynomial of a knot diagram, normalized so that
/// `Δ(t) = Δ(1/t)` and `Δ(1) = 1`. Trivially reducible crossings are
/// removed first to keep the determinant small.
pub fn alexander(diagram: &Diagram) -> Result<LaurentPoly> {
    alexander_raw(&diagram.reduce())
}

/// The Wirtinger-matrix route on the diagram exactly as given.
pub(crate) fn alexander_raw(reduced: &Diagram) -> Result<LaurentPoly> {
    if reduced.component_count() != 1 {
        return Err(Error::ComponentCount { expected: 1, got: reduced.component_count() });
    }
    let strand = &reduced.strands[0];
    let n = reduced.crossing_count();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }

    // arcs: split the strand at under-passages
    let m = strand.len();
    let mut incoming_arc = vec![0usize; m];
    let mut outgoing_arc = vec![0usize; m];
    let mut arc = 0usize;
    for i in 0..m {
        incoming_arc[i] = arc;
        if !strand[i].over {
            arc += 1;
        }
        outgoing_arc[i] = arc;
    }
    debug_assert_eq!(arc, n);
    // wrap: last arc is the same as arc 0
    for i in 0..m {
        if incoming_arc[i] == n {
            incoming_arc[i] = 0;
        }
        if outgoing_arc[i] == n {
            outgoing_arc[i] = 0;
        }
    }

    // crossing -> (under in arc, under out arc, over arc)
    let mut under_in = vec![usize::MAX; n];
    let mut under_out = vec![usize::MAX; n];
    let mut over_arc = vec![usize::MAX; n];
    for i in 0..m {
        let p = strand[i];
        if p.over {
            over_arc[p.crossing] = incoming_arc[i];
            debug_assert_eq!(incoming_arc[i], outgoing_arc[i]);
        } else {
            under_in[p.crossing] = incoming_arc[i];
            under_out[p.crossing] = outgoing_arc[i];
        }
    }

    // Wirtinger rows: positive: t·x_in + (1−t)·x_over − x_out
    //                 negative:   x_in + (t−1)·x_over − t·x_out
    let t = LaurentPoly::monomial(1, BigInt::one());
    let one = LaurentPoly::one();
    let mut mat = vec![vec![LaurentPoly::zero(); n]; n];
    for x in 0..n {
        let row = &mut mat[x];
        if reduced.sign[x] > 0 {
            row[under_in[x]] = row[under_in[x]].add(&t);
            row[over_arc[x]] = row[over_arc[x]].add(&one.sub(&t));
            row[under_out[x]] = row[under_out[x]].sub(&one);
        } else {
            row[under_in[x]] = row[under_in[x]].add(&one);
            row[over_arc[x]] = row[over_arc[x]].add(&t.sub(&one));
            row[under_out[x]] = row[under_out[x]].sub(&t);
        }
    }

    // delete last row and column, take the determinant
    let minor: Vec<Vec<LaurentPoly>> = mat[..n - 1]
        .iter()
        .map(|row| row[..n - 1].to_vec())
        .collect();
    let det = det_bareiss(minor)?;
    normalize(det)
}

/// Normalize a raw Alexander determinant: symmetric exponent range and
/// value +1 at t = 1.
fn normalize(det: LaurentPoly) -> Result<LaurentPoly> {
    if det.is_zero() {
        return Err(Error::internal("Alexander determinant vanished"));
    }
    let lo = det.min_exp().unwrap();
    let hi = det.max_exp().unwrap();
    let span = hi - lo;
    if span % 2 != 0 {
        return Err(Error::internal(format!(
            "Alexander polynomial has odd exponent span {span}"
        )));
    }
    let centered = det.shift(-(lo + span / 2));
    let at_one = centered.eval_one();
    let result = if at_one == BigInt::one() {
        centered
    } else if at_one == -BigInt::one() {
        centered.neg()
    } else {
        return Err(Error::internal(format!(
            "Alexander value at 1 is {at_one}, expected ±1"
        )));
    };
    if !result.is_symmetric() {
        return Err(Error::internal(format!(
            "normalized Alexander polynomial {result} is not symmetric"
        )));
    }
    Ok(result)
}

/// The Casson invariant `v₂ = ½ Δ″(1)` of a normalized Alexander
/// polynomial.
pub fn casson_from_alexander(poly: &LaurentPoly) -> Result<i64> {
    if !poly.is_symmetric() {
        return Err(Error::Unnormalized(format!("{poly} is not symmetric")));
    }
    if poly.eval_one() != BigInt::one() {
        return Err(Error::Unnormalized(format!("{poly} does not evaluate to 1 at t=1")));
    }
    let dd = poly.second_derivative_one();
    let (half, rem) = num_integer::Integer::div_rem(&dd, &BigInt::from(2));
    if !rem.is_zero() {
        return Err(Error::internal("Δ''(1) is odd"));
    }
    half.to_i64().ok_or_else(|| Error::internal("casson invariant out of range"))
}

/// Casson invariant straight from a knot diagram.
pub fn casson_of_diagram(diagram: &Diagram) -> Result<i64> {
    casson_from_alexander(&alexander(diagram)?)
}

/// Linking number of a two-component diagram: half the signed count of
/// crossings between the components.
pub fn linking_number(diagram: &Diagram) -> Result<i64> {
    if diagram.component_count() != 2 {
        return Err(Error::ComponentCount { expected: 2, got: diagram.component_count() });
    }
    let mut comp_of = vec![usize::MAX; diagram.crossing_count().max(1)];
    let mut mixed = vec![false; diagram.crossing_count()];
    for (c, strand) in diagram.strands.iter().enumerate() {
        for p in strand {
            if comp_of[p.crossing] == usize::MAX {
                comp_of[p.crossing] = c;
            } else if comp_of[p.crossing] != c {
                mixed[p.crossing] = true;
            }
        }
    }
    let total: i64 = (0..diagram.crossing_count())
        .filter(|x| mixed[*x])
        .map(|x| diagram.sign[x] as i64)
        .sum();
    if total % 2 != 0 {
        return Err(Error::internal("odd signed inter-component crossing count"));
    }
    Ok(total / 2)
}

/// Degree-2 Gauss-diagram count: an independent evaluation of the Casson
/// invariant from the signed Gauss sequence. Counts interleaved passage
/// pairs matching a fixed over/under pattern, weighted by sign products.
/// Used as a redundant cross-check on the Alexander route.
pub fn casson_gauss_count(diagram: &Diagram) -> Result<i64> {
    if diagram.component_count() != 1 {
        return Err(Error::ComponentCount { expected: 1, got: diagram.component_count() });
    }
    let strand = &diagram.strands[0];
    let m = strand.len();
    let mut best: Option<i64> = None;
    // the count is basepoint-independent; verify while computing
    for base in 0..m.max(1) {
        let mut total = 0i64;
        let seq: Vec<_> = (0..m).map(|i| strand[(base + i) % m]).collect();
        let first = |x: usize| seq.iter().position(|p| p.crossing == x).unwrap();
        let second =
            |x: usize| m - 1 - seq.iter().rev().position(|p| p.crossing == x).unwrap();
        for x in 0..diagram.crossing_count() {
            for y in 0..diagram.crossing_count() {
                if x == y {
                    continue;
                }
                let (x1, x2) = (first(x), second(x));
                let (y1, y2) = (first(y), second(y));
                // interleaved as x .. y .. x .. y with the pattern
                // over(x1), under(y1), under(x2), over(y2)
                if x1 < y1
                    && y1 < x2
                    && x2 < y2
                    && seq[x1].over
                    && !seq[y1].over
                    && !seq[x2].over
                    && seq[y2].over
                {
                    total += (diagram.sign[x] * diagram.sign[y]) as i64;
                }
            }
        }
        match best {
            None => best = Some(total),
            Some(b) => {
                if b != total {
                    return Err(Error::internal(format!(
                        "gauss count depends on basepoint: {b} vs {total}"
                    )));
                }
            }
        }
    }
    Ok(best.unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn unknot_polynomial() {
        let d = Diagram::unknot();
        assert_eq!(alexander(&d).unwrap(), LaurentPoly::one());
        assert_eq!(casson_of_diagram(&d).unwrap(), 0);
    }

    #[test]
    fn trefoil_polynomial() {
        let p = alexander(&fixtures::trefoil()).unwrap();
        assert_eq!(p, poly(&[(-1, 1), (0, -1), (1, 1)]));
        assert_eq!(casson_from_alexander(&p).unwrap(), 1);
    }

    #[test]
    fn figure_eight_polynomial() {
        let p = alexander(&fixtures::figure_eight_knot()).unwrap();
        assert_eq!(p, poly(&[(-1, -1), (0, 3), (1, -1)]));
        assert_eq!(casson_from_alexander(&p).unwrap(), -1);
    }

    #[test]
    fn cinquefoil_polynomial() {
        let p = alexander(&fixtures::cinquefoil()).unwrap();
        assert_eq!(p, poly(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]));
        assert_eq!(casson_from_alexander(&p).unwrap(), 3);
        let p52 = alexander(&fixtures::five_two()).unwrap();
        assert_eq!(casson_from_alexander(&p52).unwrap(), 2);
    }

    #[test]
    fn switched_trefoil_unknots() {
        let t = fixtures::trefoil();
        let s = t.switch_crossing(0).unwrap();
        assert_eq!(casson_of_diagram(&s).unwrap(), 0);
        assert_eq!(alexander(&s).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn hopf_linking_numbers() {
        assert_eq!(linking_number(&fixtures::hopf_link(true)).unwrap(), 1);
        assert_eq!(linking_number(&fixtures::hopf_link(false)).unwrap(), -1);
    }

    #[test]
    fn trefoil_smoothing_gives_hopf() {
        let t = fixtures::trefoil();
        for x in 0..3 {
            let s = t.smooth_crossing(x).unwrap();
            assert_eq!(s.component_count(), 2);
            assert_eq!(linking_number(&s).unwrap().abs(), 1);
        }
    }

    #[test]
    fn casson_additive_under_multiplication() {
        let tre = alexander(&fixtures::trefoil()).unwrap();
        let square = tre.mul(&tre);
        assert_eq!(casson_from_alexander(&square).unwrap(), 2);
        let cube = square.mul(&tre);
        assert_eq!(casson_from_alexander(&cube).unwrap(), 3);
    }

    /// Insert a kink (first Reidemeister move) on edge `edge` of a knot
    /// diagram: a new crossing passed twice in a row.
    fn add_kink(d: &Diagram, edge: usize, sign: i8) -> Diagram {
        let mut out = d.clone();
        let x = out.crossing_count();
        out.sign.push(sign);
        let at = edge % out.strands[0].len().max(1);
        out.strands[0].insert(at, crate::diagram::Passage { crossing: x, over: false });
        out.strands[0].insert(at, crate::diagram::Passage { crossing: x, over: true });
        out
    }

    #[test]
    fn matrix_route_invariant_under_reidemeister_one() {
        let base = alexander_raw(&fixtures::trefoil()).unwrap();
        for edge in [0, 2, 4] {
            for sign in [1i8, -1] {
                let kinked = add_kink(&fixtures::trefoil(), edge, sign);
                kinked.validate().unwrap();
                assert_eq!(
                    alexander_raw(&kinked).unwrap(),
                    base,
                    "kink on edge {edge} with sign {sign}"
                );
                let double = add_kink(&kinked, edge + 1, -sign);
                assert_eq!(alexander_raw(&double).unwrap(), base);
            }
        }
    }

    #[test]
    fn reduction_preserves_alexander() {
        let kinked = add_kink(&add_kink(&fixtures::figure_eight_knot(), 1, 1), 3, -1);
        assert_eq!(
            alexander_raw(&kinked).unwrap(),
            alexander_raw(&kinked.reduce()).unwrap()
        );
    }

    #[test]
    fn gauss_count_matches_alexander() {
        for d in [
            fixtures::trefoil(),
            fixtures::figure_eight_knot(),
            fixtures::cinquefoil(),
            fixtures::five_two(),
        ] {
            assert_eq!(
                casson_gauss_count(&d).unwrap(),
                casson_of_diagram(&d).unwrap()
            );
        }
    }

    #[test]
    fn unnormalized_input_rejected() {
        let bad = poly(&[(0, 2)]);
        assert!(casson_from_alexander(&bad).is_err());
        let asym = poly(&[(0, 1), (1, 1), (-1, -1)]);
        assert!(casson_from_alexander(&asym).is_err());
    }
}
