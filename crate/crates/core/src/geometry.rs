//! Exact planar predicates over any ordered field.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_traits::{Num, Signed};

/// Scalars the geometric layer can run on: exact, ordered, signed.
pub trait ExactScalar: Num + Signed + Ord + Clone + Debug {}

impl<T: Num + Signed + Ord + Clone + Debug> ExactScalar for T {}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: ExactScalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Point::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Point::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        Point::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    pub fn neg(&self) -> Self {
        Point::new(-self.x.clone(), -self.y.clone())
    }
}

pub fn cross<S: ExactScalar>(a: &Point<S>, b: &Point<S>) -> S {
    a.x.clone() * b.y.clone() - a.y.clone() * b.x.clone()
}

pub fn dot<S: ExactScalar>(a: &Point<S>, b: &Point<S>) -> S {
    a.x.clone() * b.x.clone() + a.y.clone() * b.y.clone()
}

/// Sign of the turn a -> b -> c; `Greater` is counterclockwise.
pub fn orient<S: ExactScalar>(a: &Point<S>, b: &Point<S>, c: &Point<S>) -> Ordering {
    cross(&b.sub(a), &c.sub(a)).cmp(&S::zero())
}

/// Orders nonzero direction vectors by angle in [0, 2pi).
pub fn angle_cmp<S: ExactScalar>(a: &Point<S>, b: &Point<S>) -> Ordering {
    let half = |p: &Point<S>| -> u8 {
        if p.y > S::zero() || (p.y.is_zero() && p.x > S::zero()) {
            0
        } else {
            1
        }
    };
    half(a)
        .cmp(&half(b))
        .then_with(|| S::zero().cmp(&cross(a, b)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentContact<S> {
    None,
    /// Proper crossing at parameters `t` on the first and `u` on the second.
    Cross { t: S, u: S, point: Point<S> },
    /// Touching at an endpoint of either segment, with the two parameters.
    Touch { t: S, u: S },
    /// Collinear segments sharing more than a point.
    Overlap,
}

/// Classifies how the closed segments `p0p1` and `q0q1` meet.
pub fn segment_contact<S: ExactScalar>(
    p0: &Point<S>,
    p1: &Point<S>,
    q0: &Point<S>,
    q1: &Point<S>,
) -> SegmentContact<S> {
    let r = p1.sub(p0);
    let s = q1.sub(q0);
    let d = cross(&r, &s);
    let w = q0.sub(p0);
    if d.is_zero() {
        if !cross(&w, &r).is_zero() {
            return SegmentContact::None;
        }
        let rr = dot(&r, &r);
        let a = dot(&w, &r);
        let b = dot(&q1.sub(p0), &r);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if hi < S::zero() || lo > rr {
            return SegmentContact::None;
        }
        if hi.is_zero() || lo == rr {
            let t = if hi.is_zero() { S::zero() } else { S::one() };
            let at = p0.add(&r.scale(&t));
            let u = if &at == q0 { S::zero() } else { S::one() };
            return SegmentContact::Touch { t, u };
        }
        return SegmentContact::Overlap;
    }
    let t = cross(&w, &s) / d.clone();
    let u = cross(&w, &r) / d;
    let zero = S::zero();
    let one = S::one();
    if t < zero || t > one || u < zero || u > one {
        return SegmentContact::None;
    }
    if t.is_zero() || t == one || u.is_zero() || u == one {
        return SegmentContact::Touch { t, u };
    }
    let point = p0.add(&r.scale(&t));
    SegmentContact::Cross { t, u, point }
}

/// Counterclockwise perimeter coordinate of a point on the unit square's
/// boundary, starting at the origin. `None` off the boundary.
pub fn perimeter_param<S: ExactScalar>(p: &Point<S>) -> Option<S> {
    let zero = S::zero();
    let one = S::one();
    let two = one.clone() + one.clone();
    let three = two.clone() + one.clone();
    if p.x < zero || p.x > one || p.y < zero || p.y > one {
        return None;
    }
    if p.y.is_zero() && p.x < one {
        Some(p.x.clone())
    } else if p.x == one && p.y < one {
        Some(one + p.y.clone())
    } else if p.y == one && p.x > zero {
        Some(two + (S::one() - p.x.clone()))
    } else if p.x.is_zero() && p.y > zero {
        Some(three + (S::one() - p.y.clone()))
    } else {
        None
    }
}

pub fn in_unit_square<S: ExactScalar>(p: &Point<S>) -> bool {
    p.x >= S::zero() && p.x <= S::one() && p.y >= S::zero() && p.y <= S::one()
}

pub fn on_unit_square_boundary<S: ExactScalar>(p: &Point<S>) -> bool {
    in_unit_square(p) && (p.x.is_zero() || p.y.is_zero() || p.x == S::one() || p.y == S::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn p(x: i64, y: i64) -> Point<Rational64> {
        Point::new(Rational64::from_integer(x), Rational64::from_integer(y))
    }

    #[test]
    fn diagonals_cross_at_center() {
        match segment_contact(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)) {
            SegmentContact::Cross { point, .. } => assert_eq!(point, p(1, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn contact_kinds() {
        assert_eq!(segment_contact(&p(0, 0), &p(1, 0), &p(0, 1), &p(1, 1)), SegmentContact::None);
        assert_eq!(segment_contact(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)), SegmentContact::Overlap);
        assert!(matches!(
            segment_contact(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, 3)),
            SegmentContact::Touch { .. }
        ));
        assert!(matches!(
            segment_contact(&p(0, 0), &p(1, 0), &p(1, 0), &p(2, 0)),
            SegmentContact::Touch { .. }
        ));
    }

    #[test]
    fn angles_sort_counterclockwise() {
        let mut v = vec![p(0, -1), p(-1, 0), p(1, 1), p(1, 0), p(0, 1)];
        v.sort_by(angle_cmp);
        assert_eq!(v, vec![p(1, 0), p(1, 1), p(0, 1), p(-1, 0), p(0, -1)]);
    }

    #[test]
    fn perimeter_runs_counterclockwise() {
        let corners = [p(0, 0), p(1, 0), p(1, 1), p(0, 1)];
        let params: Vec<_> = corners.iter().map(|c| perimeter_param(c).unwrap()).collect();
        assert!(params.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(perimeter_param(&Point::new(Rational64::new(1, 2), Rational64::new(1, 2))), None);
    }
}
