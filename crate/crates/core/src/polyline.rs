//! Geometric ingestion: exact polylines in the unit square to divides.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::divide::Divide;
use crate::error::{Error, Result};
use crate::geometry::{
    cross, in_unit_square, on_unit_square_boundary, perimeter_param, segment_contact,
    ExactScalar, Point, SegmentContact,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyline<S> {
    pub closed: bool,
    pub points: Vec<Point<S>>,
}

impl<S: ExactScalar> Polyline<S> {
    pub fn open(points: Vec<Point<S>>) -> Self {
        Polyline { closed: false, points }
    }

    pub fn closed(points: Vec<Point<S>>) -> Self {
        Polyline { closed: true, points }
    }

    fn segment_count(&self) -> usize {
        if self.closed {
            self.points.len()
        } else {
            self.points.len() - 1
        }
    }

    fn segment(&self, i: usize) -> (&Point<S>, &Point<S>) {
        (&self.points[i], &self.points[(i + 1) % self.points.len()])
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.segment_count();
        i.abs_diff(j) == 1 || (self.closed && i.abs_diff(j) == n - 1)
    }
}

pub fn parse_rational(token: &str) -> Result<BigRational> {
    let bad = || Error::MalformedDivide(format!("bad rational `{token}`"));
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Parses one `polyline open|closed x0 y0 x1 y1 ...` record.
pub fn parse_record(tokens: &[&str]) -> Result<Polyline<BigRational>> {
    let bad = |m: &str| Error::MalformedDivide(format!("polyline record: {m}"));
    if tokens.first() != Some(&"polyline") || tokens.len() < 2 {
        return Err(bad("expected `polyline open|closed ...`"));
    }
    let closed = match tokens[1] {
        "open" => false,
        "closed" => true,
        _ => return Err(bad("kind must be open or closed")),
    };
    let coords = tokens[2..].iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>>>()?;
    if coords.len() % 2 == 1 {
        return Err(bad("odd number of coordinates"));
    }
    let points = coords.chunks(2).map(|c| Point::new(c[0].clone(), c[1].clone())).collect();
    Ok(Polyline { closed, points })
}

pub fn format_record(p: &Polyline<BigRational>) -> String {
    let mut out = String::from(if p.closed { "polyline closed" } else { "polyline open" });
    for q in &p.points {
        out.push_str(&format!(" {} {}", q.x, q.y));
    }
    out
}

/// One passage of a strand through a crossing.
struct Event<S> {
    seg: usize,
    t: S,
    forward: usize,
    backward: usize,
}

/// Builds the combinatorial divide of polylines in the unit square.
pub fn from_polylines<S: ExactScalar>(polys: &[Polyline<S>]) -> Result<Divide> {
    for (k, p) in polys.iter().enumerate() {
        let min = if p.closed { 3 } else { 2 };
        if p.points.len() < min {
            return Err(Error::MalformedDivide(format!("polyline {k} is too short")));
        }
        if let Some(q) = p.points.iter().find(|q| !in_unit_square(q)) {
            return Err(Error::MalformedDivide(format!("polyline {k} leaves the square at {q:?}")));
        }
        for i in 0..p.segment_count() {
            let (a, b) = p.segment(i);
            if a == b {
                return Err(Error::MalformedDivide(format!("polyline {k} repeats a point")));
            }
        }
        if !p.closed {
            for q in [&p.points[0], &p.points[p.points.len() - 1]] {
                if !on_unit_square_boundary(q) {
                    return Err(Error::EndpointInInterior(format!("polyline {k} ends at {q:?}")));
                }
            }
        }
    }

    let segs: Vec<(usize, usize)> = polys
        .iter()
        .enumerate()
        .flat_map(|(k, p)| (0..p.segment_count()).map(move |i| (k, i)))
        .collect();
    let nongeneric = |m: String| Error::NonGenericIntersection(m);
    let mut crossings: Vec<(usize, usize, S, S, Point<S>)> = Vec::new();
    for x in 0..segs.len() {
        for y in x + 1..segs.len() {
            let (k1, i1) = segs[x];
            let (k2, i2) = segs[y];
            let (a0, a1) = polys[k1].segment(i1);
            let (b0, b1) = polys[k2].segment(i2);
            let contact = segment_contact(a0, a1, b0, b1);
            let neighbours = k1 == k2 && polys[k1].adjacent(i1, i2);
            match contact {
                SegmentContact::None => {}
                SegmentContact::Overlap => {
                    return Err(nongeneric(format!("segments {x} and {y} overlap")));
                }
                SegmentContact::Touch { .. } if neighbours => {}
                SegmentContact::Touch { .. } => {
                    return Err(nongeneric(format!(
                        "segments {x} and {y} meet at a polyline vertex"
                    )));
                }
                SegmentContact::Cross { t, u, point } => {
                    if neighbours {
                        return Err(nongeneric(format!("segments {x} and {y} fold")));
                    }
                    if on_unit_square_boundary(&point) {
                        return Err(nongeneric(format!("crossing on the boundary at {point:?}")));
                    }
                    crossings.push((x, y, t, u, point));
                }
            }
        }
    }
    let mut sorted: Vec<&Point<S>> = crossings.iter().map(|c| &c.4).collect();
    sorted.sort_by(|a, b| a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y)));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(nongeneric("three strands through one point".into()));
    }

    // Slots are assigned counterclockwise starting from the first segment's
    // forward direction.
    let delta = crossings.len();
    let mut events: Vec<Vec<Event<S>>> = polys.iter().map(|_| Vec::new()).collect();
    for (c, (x, y, t, u, _)) in crossings.iter().enumerate() {
        let (k1, i1) = segs[*x];
        let (k2, i2) = segs[*y];
        let d1 = {
            let (a, b) = polys[k1].segment(i1);
            b.sub(a)
        };
        let d2 = {
            let (a, b) = polys[k2].segment(i2);
            b.sub(a)
        };
        let ccw = cross(&d1, &d2) > S::zero();
        let (f2, b2) = if ccw { (1, 3) } else { (3, 1) };
        events[k1].push(Event { seg: i1, t: t.clone(), forward: 4 * c, backward: 4 * c + 2 });
        events[k2].push(Event { seg: i2, t: u.clone(), forward: 4 * c + f2, backward: 4 * c + b2 });
    }
    for ev in &mut events {
        ev.sort_by(|a, b| a.seg.cmp(&b.seg).then_with(|| a.t.cmp(&b.t)));
    }

    let open: Vec<usize> = (0..polys.len()).filter(|&k| !polys[k].closed).collect();
    let endpoints = 2 * open.len();
    let mut twin = vec![usize::MAX; 4 * delta + endpoints];
    let mut link = |a: usize, b: usize| {
        twin[a] = b;
        twin[b] = a;
    };
    let mut params: Vec<(S, usize)> = Vec::new();
    for (j, &k) in open.iter().enumerate() {
        let (e0, e1) = (2 * j, 2 * j + 1);
        let (h0, h1) = (4 * delta + e0, 4 * delta + e1);
        let p = &polys[k];
        params.push((perimeter_param(&p.points[0]).expect("checked on boundary"), e0));
        params.push((perimeter_param(&p.points[p.points.len() - 1]).expect("checked on boundary"), e1));
        let ev = &events[k];
        if ev.is_empty() {
            link(h0, h1);
            continue;
        }
        link(h0, ev[0].backward);
        for w in ev.windows(2) {
            link(w[0].forward, w[1].backward);
        }
        link(ev[ev.len() - 1].forward, h1);
    }
    for (k, p) in polys.iter().enumerate() {
        if !p.closed {
            continue;
        }
        let ev = &events[k];
        if ev.is_empty() {
            return Err(Error::MalformedDivide(format!("closed polyline {k} crosses nothing")));
        }
        for i in 0..ev.len() {
            link(ev[i].forward, ev[(i + 1) % ev.len()].backward);
        }
    }
    params.sort_by(|a, b| a.0.cmp(&b.0));
    if params.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(nongeneric("two endpoints coincide".into()));
    }
    let boundary: Vec<usize> = params.into_iter().map(|(_, e)| e).collect();
    Divide::new(delta, endpoints, twin, boundary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn pt(x: Rational64, y: Rational64) -> Point<Rational64> {
        Point::new(x, y)
    }

    #[test]
    fn two_diagonals() {
        let d = from_polylines(&[
            Polyline::open(vec![pt(r(0, 1), r(0, 1)), pt(r(1, 1), r(1, 1))]),
            Polyline::open(vec![pt(r(0, 1), r(1, 1)), pt(r(1, 1), r(0, 1))]),
        ])
        .unwrap();
        let c = d.census();
        assert_eq!((c.delta, c.r, c.b), (1, 0, 2));
    }

    #[test]
    fn endpoint_inside_is_rejected() {
        let err = from_polylines(&[Polyline::open(vec![pt(r(0, 1), r(0, 1)), pt(r(1, 2), r(1, 2))])])
            .unwrap_err();
        assert_eq!(err.code(), "EndpointInInterior");
    }

    #[test]
    fn triple_point_is_rejected() {
        let line = |a: (i64, i64), b: (i64, i64)| {
            Polyline::open(vec![pt(r(a.0, 2), r(a.1, 2)), pt(r(b.0, 2), r(b.1, 2))])
        };
        let err = from_polylines(&[line((0, 0), (2, 2)), line((0, 2), (2, 0)), line((0, 1), (2, 1))])
            .unwrap_err();
        assert_eq!(err.code(), "NonGenericIntersection");
    }

    #[test]
    fn touching_a_vertex_is_rejected() {
        let err = from_polylines(&[
            Polyline::open(vec![pt(r(0, 1), r(1, 2)), pt(r(1, 2), r(1, 2)), pt(r(1, 1), r(1, 2))]),
            Polyline::open(vec![pt(r(1, 2), r(0, 1)), pt(r(1, 2), r(1, 1))]),
        ])
        .unwrap_err();
        assert_eq!(err.code(), "NonGenericIntersection");
    }

    #[test]
    fn parses_records() {
        let p = parse_record(&["polyline", "open", "0", "1/2", "1", "1/2"]).unwrap();
        assert_eq!(p.points.len(), 2);
        assert_eq!(format_record(&p), "polyline open 0 1/2 1 1/2");
        assert!(parse_record(&["polyline", "open", "0", "1/0"]).is_err());
    }
}
