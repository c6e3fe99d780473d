//! Exact rational arithmetic kernel: points, orientation tests, segment
//! intersection, and an octant pseudo-angle used for turning numbers and
//! circular sorting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// A point (or vector) of the rational plane.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point { x: rat(x), y: rat(y) }
    }

    pub fn origin() -> Self {
        Point { x: Rat::zero(), y: Rat::zero() }
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, s: &Rat) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    pub fn neg(&self) -> Point {
        Point::new(-self.x.clone(), -self.y.clone())
    }

    /// Counterclockwise quarter turn.
    pub fn rot90(&self) -> Point {
        Point::new(-self.y.clone(), self.x.clone())
    }

    pub fn cross(&self, o: &Point) -> Rat {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn dot(&self, o: &Point) -> Rat {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn norm2(&self) -> Rat {
        self.dot(self)
    }

    pub fn dist2(&self, o: &Point) -> Rat {
        self.sub(o).norm2()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Midpoint with `o`.
    pub fn mid(&self, o: &Point) -> Point {
        self.add(o).scale(&frac(1, 2))
    }
}

/// Sign of the signed area of the triangle `a b c`: positive when `c` lies
/// to the left of the directed line `a -> b`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    sign(&b.sub(a).cross(&c.sub(a)))
}

/// Octant pseudo-angle of a nonzero vector: a rational in `[0, 8)` that is
/// strictly monotone in the true angle, with `p(-v) = p(v) + 4 (mod 8)`.
pub fn pseudo_angle(v: &Point) -> Rat {
    assert!(!v.is_zero(), "pseudo_angle of zero vector");
    if v.y.is_negative() || (v.y.is_zero() && v.x.is_negative()) {
        return rat(4) + pseudo_angle(&v.neg());
    }
    // upper half plane (y > 0) or positive x-axis
    if v.y.is_zero() {
        return Rat::zero();
    }
    if v.x.is_positive() {
        if v.x >= v.y {
            &v.y / &v.x
        } else {
            rat(2) - &v.x / &v.y
        }
    } else {
        let nx = -v.x.clone();
        if v.y >= nx {
            rat(2) + &nx / &v.y
        } else {
            rat(4) - &v.y / &nx
        }
    }
}

/// Difference of pseudo-angles wrapped into `(-4, 4]`; `4` means exact
/// reversal, which callers treat as a degeneracy.
pub fn pseudo_angle_delta(from: &Point, to: &Point) -> Rat {
    let mut d = pseudo_angle(to) - pseudo_angle(from);
    let eight = rat(8);
    let four = rat(4);
    while d > four {
        d -= &eight;
    }
    while d <= -four.clone() {
        d += &eight;
    }
    d
}

/// A rational `r > 0` with `r*r < x`, for `x > 0`. Used to pick safe sample
/// radii without square roots.
pub fn below_sqrt(x: &Rat) -> Rat {
    assert!(x.is_positive());
    x / (x + Rat::one())
}

/// How two closed segments intersect. Segments are assumed non-degenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegSeg {
    Disjoint,
    /// Interiors cross transversally at the given point, with parameters
    /// strictly inside both segments.
    Cross { at: Point, s: Rat, t: Rat },
    /// Contact at a single point that is an endpoint of at least one segment.
    Touch { at: Point },
    /// Collinear segments sharing more than one point.
    Overlap,
}

/// Exact classification of the intersection of `[a,b]` and `[c,d]`.
pub fn seg_seg(a: &Point, b: &Point, c: &Point, d: &Point) -> SegSeg {
    let d1 = b.sub(a);
    let d2 = d.sub(c);
    let denom = d1.cross(&d2);
    if denom.is_zero() {
        // Parallel. Either disjoint or collinear.
        if orient(a, b, c) != 0 {
            return SegSeg::Disjoint;
        }
        // Collinear: project on the dominant axis of d1.
        let use_x = d1.x.abs() >= d1.y.abs();
        let key = |p: &Point| if use_x { p.x.clone() } else { p.y.clone() };
        let (mut a1, mut b1) = (key(a), key(b));
        if a1 > b1 {
            std::mem::swap(&mut a1, &mut b1);
        }
        let (mut c1, mut dd1) = (key(c), key(d));
        if c1 > dd1 {
            std::mem::swap(&mut c1, &mut dd1);
        }
        let lo = a1.max(c1);
        let hi = b1.min(dd1);
        if lo > hi {
            SegSeg::Disjoint
        } else if lo == hi {
            // single shared point, necessarily an endpoint of both
            let at = if key(a) == lo {
                a.clone()
            } else if key(b) == lo {
                b.clone()
            } else if key(c) == lo {
                c.clone()
            } else {
                d.clone()
            };
            SegSeg::Touch { at }
        } else {
            SegSeg::Overlap
        }
    } else {
        let s = c.sub(a).cross(&d2) / denom.clone();
        let t = c.sub(a).cross(&d1) / denom;
        let zero = Rat::zero();
        let one = Rat::one();
        if s < zero || s > one || t < zero || t > one {
            return SegSeg::Disjoint;
        }
        let at = a.add(&d1.scale(&s));
        if s > zero && s < one && t > zero && t < one {
            SegSeg::Cross { at, s, t }
        } else {
            SegSeg::Touch { at }
        }
    }
}

/// Squared distance from `p` to the closed segment `[a,b]`.
pub fn dist2_point_seg(p: &Point, a: &Point, b: &Point) -> Rat {
    let d = b.sub(a);
    let n2 = d.norm2();
    if n2.is_zero() {
        return p.dist2(a);
    }
    let t = p.sub(a).dot(&d) / n2;
    let t = t.max(Rat::zero()).min(Rat::one());
    p.dist2(&a.add(&d.scale(&t)))
}

/// True if `p` lies on the closed segment `[a,b]`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if orient(a, b, p) != 0 {
        return false;
    }
    let d = b.sub(a);
    let t = p.sub(a).dot(&d);
    !t.is_negative() && t <= d.norm2()
}

/// Nearest rational point on the unit circle, via the tangent-half-angle
/// parametrization `t -> ((1-t^2)/(1+t^2), 2t/(1+t^2))` with `t = y/(1+x)`.
/// `(-1, 0)` maps to itself; the origin maps to `(1, 0)`.
pub fn snap_to_unit_circle(p: &Point) -> Point {
    let one = Rat::one();
    let denom = &p.x + &one;
    if denom.is_zero() {
        return Point::new(-one.clone(), Rat::zero());
    }
    let t = &p.y / &denom;
    circle_point(&t)
}

/// The rational circle point with tangent-half-angle parameter `t`.
pub fn circle_point(t: &Rat) -> Point {
    let one = Rat::one();
    let t2 = t * t;
    let d = &one + &t2;
    Point::new((&one - &t2) / &d, (t + t) / &d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pseudo_angle_orders_directions() {
        let dirs = [
            Point::ints(1, 0),
            Point::ints(2, 1),
            Point::ints(1, 1),
            Point::ints(1, 2),
            Point::ints(0, 1),
            Point::ints(-1, 2),
            Point::ints(-1, 1),
            Point::ints(-2, 1),
            Point::ints(-1, 0),
            Point::ints(-1, -1),
            Point::ints(0, -1),
            Point::ints(1, -1),
        ];
        let angles: Vec<Rat> = dirs.iter().map(pseudo_angle).collect();
        for w in angles.windows(2) {
            assert!(w[0] < w[1], "{} !< {}", w[0], w[1]);
        }
        assert_eq!(pseudo_angle(&Point::ints(3, 0)), rat(0));
        assert_eq!(pseudo_angle(&Point::ints(0, 5)), rat(2));
        assert_eq!(
            pseudo_angle(&Point::ints(-2, -2)),
            pseudo_angle(&Point::ints(1, 1)) + rat(4)
        );
    }

    #[test]
    fn seg_seg_cases() {
        let o = Point::ints(0, 0);
        let e = Point::ints(4, 0);
        let n = Point::ints(2, 2);
        let s = Point::ints(2, -2);
        match seg_seg(&o, &e, &n, &s) {
            SegSeg::Cross { at, .. } => assert_eq!(at, Point::ints(2, 0)),
            other => panic!("expected cross, got {other:?}"),
        }
        // touching at an endpoint
        match seg_seg(&o, &e, &Point::ints(4, 0), &Point::ints(6, 3)) {
            SegSeg::Touch { at } => assert_eq!(at, Point::ints(4, 0)),
            other => panic!("expected touch, got {other:?}"),
        }
        // collinear overlap
        assert_eq!(
            seg_seg(&o, &e, &Point::ints(1, 0), &Point::ints(3, 0)),
            SegSeg::Overlap
        );
        // collinear disjoint
        assert_eq!(
            seg_seg(&o, &e, &Point::ints(5, 0), &Point::ints(7, 0)),
            SegSeg::Disjoint
        );
        assert_eq!(
            seg_seg(&o, &e, &Point::ints(0, 1), &Point::ints(4, 2)),
            SegSeg::Disjoint
        );
    }

    #[test]
    fn snapping_lands_on_circle() {
        let p = Point::new(frac(7, 10), frac(7, 10));
        let q = snap_to_unit_circle(&p);
        assert_eq!(q.norm2(), rat(1));
        let m = snap_to_unit_circle(&Point::ints(-1, 0));
        assert_eq!(m, Point::ints(-1, 0));
    }

    #[test]
    fn below_sqrt_is_below() {
        for x in [frac(1, 100), rat(1), rat(7), frac(3, 2)] {
            let r = below_sqrt(&x);
            assert!(r.is_positive());
            assert!(&r * &r < x);
        }
    }
}
