//! Property-based checks on the exact kernel and the polynomial layer.

use divide_core::alexander::{casson_from_alexander, LaurentPoly};
use divide_core::formats;
use divide_core::num::*;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| frac(n, d))
}

fn point() -> impl Strategy<Value = Point> {
    (small_rat(), small_rat()).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #[test]
    fn pseudo_angle_antipodal(p in point()) {
        prop_assume!(!p.is_zero());
        let a = pseudo_angle(&p);
        let b = pseudo_angle(&p.neg());
        let mut d = b - a;
        if d < rat(0) { d += rat(8); }
        prop_assert_eq!(d, rat(4));
    }

    #[test]
    fn seg_seg_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
        prop_assume!(a != b && c != d);
        let r1 = seg_seg(&a, &b, &c, &d);
        let r2 = seg_seg(&c, &d, &a, &b);
        let cross1 = matches!(r1, SegSeg::Cross { .. });
        let cross2 = matches!(r2, SegSeg::Cross { .. });
        prop_assert_eq!(cross1, cross2);
        if let (SegSeg::Cross { at: p1, .. }, SegSeg::Cross { at: p2, .. }) = (r1, r2) {
            prop_assert_eq!(p1, p2);
        }
    }

    #[test]
    fn snap_lands_on_circle(p in point()) {
        let q = snap_to_unit_circle(&p);
        prop_assert_eq!(q.norm2(), rat(1));
    }

    #[test]
    fn rational_literals_round_trip(n in -10_000i64..10_000, d in 1i64..1000) {
        let r = frac(n, d);
        let text = format!("{}/{}", r.numer(), r.denom());
        prop_assert_eq!(formats::parse_rational(&text).unwrap(), r);
    }

    /// v2 is additive under multiplication of normalized Alexander
    /// polynomials (connected sums of knots).
    #[test]
    fn casson_additive_under_product(
        a in prop::collection::vec(-3i64..4, 1..4),
        b in prop::collection::vec(-3i64..4, 1..4),
    ) {
        let mk = |coeffs: &[i64]| {
            // symmetric polynomial c0 + Σ c_k (t^k + t^-k), adjusted to 1 at t=1
            use num_traits::ToPrimitive;
            let mut p = LaurentPoly::zero();
            for (k, c) in coeffs.iter().enumerate() {
                let k = (k + 1) as i64;
                p = p.add(&LaurentPoly::from_terms([(k, *c), (-k, *c)]));
            }
            let fix = 1 - p.eval_one().to_i64().unwrap();
            p.add(&LaurentPoly::from_terms([(0, fix)]))
        };
        let pa = mk(&a);
        let pb = mk(&b);
        let va = casson_from_alexander(&pa).unwrap();
        let vb = casson_from_alexander(&pb).unwrap();
        let vab = casson_from_alexander(&pa.mul(&pb)).unwrap();
        prop_assert_eq!(vab, va + vb);
    }
}
