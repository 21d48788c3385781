//! Built-in divide families and small diagram fixtures.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::divide::Divide;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::polyline::{from_polylines, Polyline};
use crate::toggle::{self, Fixture, Graph};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Chebyshev(usize, usize),
    Lines(usize),
    Pencil(usize),
    An(usize),
    Dn(usize),
    Fixture(String),
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn pt(x: Rational, y: Rational) -> Point<Rational> {
    Point::new(x, y)
}

/// Bounce points of the billiard `p s -+ q t = const` in the unit square,
/// starting at `start` with direction `dir`, until a corner or the start is
/// reached again.
fn billiard(start: Point<Rational>, mut dir: (i64, i64)) -> (Vec<Point<Rational>>, bool) {
    let one = Rational::one();
    let mut pos = start.clone();
    let mut pts = vec![start.clone()];
    loop {
        let time = |c: &Rational, d: i64| -> Option<Rational> {
            match d.signum() {
                1 => Some((one.clone() - c) / rat(d, 1)),
                -1 => Some(c.clone() / rat(-d, 1)),
                _ => None,
            }
        };
        let ts = time(&pos.x, dir.0).expect("billiard moves in s");
        let tt = time(&pos.y, dir.1).expect("billiard moves in t");
        let step = if ts < tt { ts.clone() } else { tt.clone() };
        pos = pt(pos.x.clone() + step.clone() * rat(dir.0, 1), pos.y.clone() + step.clone() * rat(dir.1, 1));
        if ts == tt {
            pts.push(pos);
            return (pts, false);
        }
        if ts < tt {
            dir.0 = -dir.0;
        } else {
            dir.1 = -dir.1;
        }
        if pos == start && dir.0 > 0 && dir.1 > 0 {
            return (pts, true);
        }
        pts.push(pos.clone());
    }
}

/// Divide of `x^p - y^q` from the Chebyshev morsification: the zero set of
/// `cos(p pi s) - cos(q pi t)` in the unit square is the billiard pattern of
/// lines `p s -+ q t` in `2Z`.
pub fn chebyshev_divide(p: usize, q: usize) -> Result<Divide> {
    if p < 2 || q < 2 {
        return Err(Error::BadParams(format!("chebyshev needs p, q >= 2, got ({p}, {q})")));
    }
    from_polylines(&chebyshev_polylines(p, q))
}

pub fn chebyshev_polylines(p: usize, q: usize) -> Vec<Polyline<Rational>> {
    let (pi, qi) = (p as i64, q as i64);
    let zero = Rational::zero();
    let one = Rational::one();
    // Corners where a billiard line enters the square, with its direction.
    let corners = [
        (pt(zero.clone(), zero.clone()), (qi, pi), true),
        (pt(one.clone(), zero.clone()), (-qi, pi), p % 2 == 0),
        (pt(one.clone(), one.clone()), (-qi, -pi), (p + q) % 2 == 0),
        (pt(zero.clone(), one.clone()), (qi, -pi), q % 2 == 0),
    ];
    let mut polys = Vec::new();
    let mut used_corners: Vec<Point<Rational>> = Vec::new();
    for (c, dir, live) in corners {
        if !live || used_corners.contains(&c) {
            continue;
        }
        let (pts, _) = billiard(c.clone(), dir);
        used_corners.push(c);
        used_corners.push(pts[pts.len() - 1].clone());
        polys.push(Polyline::open(pts));
    }
    // Circles: every periodic trajectory bounces off the bottom side.
    let mut seen: Vec<Point<Rational>> = polys
        .iter()
        .flat_map(|l| l.points.iter().filter(|x| x.y.is_zero()).cloned())
        .collect();
    for k in 1..=(pi - 1) / 2 {
        let start = pt(rat(2 * k, pi), zero.clone());
        if seen.contains(&start) {
            continue;
        }
        let (mut pts, closed) = billiard(start.clone(), (qi, pi));
        debug_assert!(closed);
        if pts.len() > 1 && pts[pts.len() - 1] == start {
            pts.pop();
        }
        seen.extend(pts.iter().filter(|x| x.y.is_zero()).cloned());
        polys.push(Polyline::closed(pts));
    }
    polys
}

/// Clips the line through `p` with direction `d` to the box `[x0,x1]x[y0,y1]`.
fn clip_line(
    p: &Point<Rational>,
    d: &Point<Rational>,
    bx: (&Rational, &Rational, &Rational, &Rational),
) -> (Point<Rational>, Point<Rational>) {
    let (x0, x1, y0, y1) = bx;
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let mut clamp = |a: Rational, b: Rational| {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        if lo.as_ref().map_or(true, |l| &a > l) {
            lo = Some(a);
        }
        if hi.as_ref().map_or(true, |h| &b < h) {
            hi = Some(b);
        }
    };
    if !d.x.is_zero() {
        clamp((x0 - &p.x) / &d.x, (x1 - &p.x) / &d.x);
    }
    if !d.y.is_zero() {
        clamp((y0 - &p.y) / &d.y, (y1 - &p.y) / &d.y);
    }
    let (lo, hi) = (lo.expect("direction is nonzero"), hi.expect("direction is nonzero"));
    (p.add(&d.scale(&lo)), p.add(&d.scale(&hi)))
}

/// Maps a box onto the unit square by a positive diagonal affine map.
fn normalize(p: &Point<Rational>, bx: (&Rational, &Rational, &Rational, &Rational)) -> Point<Rational> {
    let (x0, x1, y0, y1) = bx;
    pt((&p.x - x0) / (x1 - x0), (&p.y - y0) / (y1 - y0))
}

/// `m` tangent lines of a parabola, clipped to a box and rescaled. Any two
/// meet once and no three are concurrent.
pub fn generic_lines(m: usize) -> Result<Divide> {
    if m < 2 {
        return Err(Error::BadParams(format!("lines needs m >= 2, got {m}")));
    }
    from_polylines(&generic_line_polylines(m))
}

pub fn generic_line_polylines(m: usize) -> Vec<Polyline<Rational>> {
    let mi = m as i64;
    let x0 = rat(-1, 3);
    let x1 = rat(3 * mi - 2, 3);
    let y0 = rat(-1, 7);
    let y1 = rat(5 * (mi - 1) * (mi - 2) + 1, 5);
    let bx = (&x0, &x1, &y0, &y1);
    (0..mi)
        .map(|i| {
            let p = pt(Rational::zero(), rat(-i * i, 1));
            let d = pt(Rational::one(), rat(2 * i, 1));
            let (a, b) = clip_line(&p, &d, bx);
            Polyline::open(vec![normalize(&a, bx), normalize(&b, bx)])
        })
        .collect()
}

/// Perpendicular offsets (in hundredths) of the five lines perturbed near
/// the pencil point.
const PENCIL_OFFSETS: [i64; 5] = [0, 1, -1, 1, -2];

/// Direction of the `i`-th of `m` lines through a point, at angle `i pi / m`,
/// rounded to thousandths.
fn pencil_direction(i: usize, m: usize) -> Point<Rational> {
    let theta = std::f64::consts::PI * i as f64 / m as f64;
    pt(rat((theta.cos() * 1000.0).round() as i64, 1000), rat((theta.sin() * 1000.0).round() as i64, 1000))
}

/// Deformation of the pencil of `m` lines: lines six and up are moved a unit
/// along the first line and spread apart, the first five are perturbed near
/// the pencil point.
pub fn deformed_pencil(m: usize) -> Result<Divide> {
    if m < 5 {
        return Err(Error::BadParams(format!("pencil needs m >= 5, got {m}")));
    }
    from_polylines(&pencil_polylines(m, &PENCIL_OFFSETS))
}

pub fn pencil_polylines(m: usize, offsets: &[i64; 5]) -> Vec<Polyline<Rational>> {
    let (lo, hi) = (rat(-4, 1), rat(4, 1));
    let bx = (&lo, &hi, &lo, &hi);
    (0..m)
        .map(|i| {
            let d = pencil_direction(i, m);
            let normal = pt(-d.y.clone(), d.x.clone());
            let (base, shift) = if i < 5 { (pt(rat(0, 1), rat(0, 1)), rat(offsets[i], 100)) } else { (pt(rat(-1, 1), rat(0, 1)), rat(i as i64 - 4, 100)) };
            let (a, b) = clip_line(&base.add(&normal.scale(&shift)), &d, bx);
            Polyline::open(vec![normalize(&a, bx), normalize(&b, bx)])
        })
        .collect()
}

/// Chain diagram of the A_n singularity.
pub fn an_diagram(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("chain edges are in range")
}

/// Diagram of the D_n singularity: a tripod with arms 1, 1 and n - 3.
pub fn dn_diagram(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::BadParams(format!("D_n needs n >= 4, got {n}")));
    }
    let mut edges = vec![(0, 1), (0, 2)];
    let mut prev = 0;
    for v in 3..n {
        edges.push((prev, v));
        prev = v;
    }
    Graph::from_edges(n, &edges)
}

/// The A_n diagram, and the D_n diagram when n >= 4.
pub fn ad_fixtures(n: usize) -> Vec<(String, Graph)> {
    let mut out = vec![(format!("A{n}"), an_diagram(n))];
    if let Ok(d) = dn_diagram(n) {
        out.push((format!("D{n}"), d));
    }
    out
}

fn polyline(points: &[(i64, i64)]) -> Polyline<Rational> {
    Polyline::open(points.iter().map(|&(x, y)| pt(rat(x, 10), rat(y, 10))).collect())
}

/// One strand with two separate kinks: the divide is connected, its
/// diagram has two components.
pub fn counterexample_left() -> Vec<Polyline<Rational>> {
    vec![polyline(&[(0, 5), (4, 5), (3, 7), (2, 3), (5, 3), (9, 3), (8, 5), (7, 1), (10, 1)])]
}

/// Two parallel strands joined by a crossing pair: the diagram is
/// connected but the parallel branches never meet.
pub fn counterexample_right() -> Vec<Polyline<Rational>> {
    vec![
        polyline(&[(0, 3), (10, 3)]),
        polyline(&[(0, 7), (10, 7)]),
        polyline(&[(2, 0), (8, 10)]),
        polyline(&[(8, 0), (2, 10)]),
    ]
}

/// Output of a family generator.
#[derive(Debug, Clone)]
pub enum Generated {
    Divide(Divide),
    Diagram(Graph),
    Fixture(Fixture),
}

impl std::str::FromStr for FamilySpec {
    type Err = Error;

    /// Parses `chebyshev 3 7`, `lines 5`, `pencil 6`, `an 9`, `dn 9` or
    /// `fixture case2`.
    fn from_str(s: &str) -> Result<Self> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let num = |i: usize| -> Result<usize> {
            let w = words.get(i).ok_or_else(|| Error::BadParams(format!("'{s}' needs more parameters")))?;
            w.parse().map_err(|_| Error::BadParams(format!("'{w}' is not a count")))
        };
        let spec = match words.first().copied() {
            Some("chebyshev") => FamilySpec::Chebyshev(num(1)?, num(2)?),
            Some("lines") => FamilySpec::Lines(num(1)?),
            Some("pencil") => FamilySpec::Pencil(num(1)?),
            Some("an") => FamilySpec::An(num(1)?),
            Some("dn") => FamilySpec::Dn(num(1)?),
            Some("fixture") => FamilySpec::Fixture(
                words.get(1).ok_or_else(|| Error::BadParams("fixture needs an id".into()))?.to_string(),
            ),
            _ => return Err(Error::BadParams(format!("unknown family '{s}'"))),
        };
        Ok(spec)
    }
}

/// Ids accepted by `FamilySpec::Fixture`.
pub fn fixture_ids() -> Vec<&'static str> {
    let mut ids = vec!["counterexample-left", "counterexample-right"];
    ids.extend(toggle::fixture_ids());
    ids
}

pub fn generate(spec: &FamilySpec) -> Result<Generated> {
    Ok(match spec {
        FamilySpec::Chebyshev(p, q) => Generated::Divide(chebyshev_divide(*p, *q)?),
        FamilySpec::Lines(m) => Generated::Divide(generic_lines(*m)?),
        FamilySpec::Pencil(m) => Generated::Divide(deformed_pencil(*m)?),
        FamilySpec::An(n) if *n >= 1 => Generated::Diagram(an_diagram(*n)),
        FamilySpec::An(_) => return Err(Error::BadParams("A_n needs n >= 1".into())),
        FamilySpec::Dn(n) => Generated::Diagram(dn_diagram(*n)?),
        FamilySpec::Fixture(id) => match id.as_str() {
            "counterexample-left" => Generated::Divide(from_polylines(&counterexample_left())?),
            "counterexample-right" => Generated::Divide(from_polylines(&counterexample_right())?),
            _ => Generated::Fixture(toggle::fixture(id)?),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census(d: &Divide) -> (usize, usize, usize) {
        let c = d.census();
        (c.delta, c.r, c.b)
    }

    #[test]
    fn chebyshev_small_cases() {
        assert_eq!(census(&chebyshev_divide(2, 3).unwrap()), (1, 1, 1));
        assert_eq!(census(&chebyshev_divide(2, 5).unwrap()), (2, 2, 1));
        assert_eq!(census(&chebyshev_divide(3, 4).unwrap()), (3, 3, 1));
        assert_eq!(census(&chebyshev_divide(3, 7).unwrap()), (6, 6, 1));
        assert_eq!(census(&chebyshev_divide(2, 2).unwrap()), (1, 0, 2));
    }

    #[test]
    fn chebyshev_grid_sizes() {
        for p in 2..=4 {
            for q in 2..=12 {
                let d = chebyshev_divide(p, q).unwrap();
                let c = d.census();
                assert_eq!(c.r + c.delta, (p - 1) * (q - 1), "({p},{q}) {c:?}");
            }
        }
    }

    #[test]
    fn lines_census() {
        for m in 2..=7 {
            let c = generic_lines(m).unwrap().census();
            assert_eq!((c.delta, c.r, c.b), (m * (m - 1) / 2, (m - 1) * (m - 2) / 2, m));
        }
    }

    #[test]
    fn bad_params() {
        assert_eq!(chebyshev_divide(1, 3).unwrap_err().code(), "BadParams");
        assert_eq!(generic_lines(1).unwrap_err().code(), "BadParams");
    }

    #[test]
    fn pencil_core_is_local() {
        use crate::assemblage::detect_core;
        use crate::fiber::FiberComplex;
        for m in 5..=7 {
            let d = deformed_pencil(m).unwrap();
            assert_eq!(d.census().delta, m * (m - 1) / 2);
            assert!(d.validate().is_valid());
            let f = FiberComplex::build(&d).unwrap();
            let core = detect_core(f.graph(), Some(&f)).unwrap();
            assert_eq!(core.kind.to_string(), "(1,2,6)");
            // Every line pair crosses, numbered in pair order; the core and
            // the crossings around its regions involve only the first five.
            let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
            let delta = d.crossing_count();
            for v in core.vertices() {
                let around: Vec<usize> =
                    if v < delta { vec![v] } else { f.graph().adjacency()[v].iter().copied().filter(|&w| w < delta).collect() };
                assert!(around.iter().all(|&c| pairs[c].1 < 5), "m={m} vertex {v}");
            }
        }
        assert_eq!(deformed_pencil(4).unwrap_err().code(), "BadParams");
    }

    #[test]
    fn pencil_matches_lines() {
        for m in [5, 6] {
            assert_eq!(census(&deformed_pencil(m).unwrap()), census(&generic_lines(m).unwrap()));
        }
    }

    #[test]
    fn ad_diagrams() {
        use crate::assemblage::detect_core_in;
        for n in 1..=30 {
            for (name, g) in ad_fixtures(n) {
                assert_eq!(g.len(), n, "{name}");
                assert!(g.is_connected());
                assert!(detect_core_in(&g.adjacency()).is_none(), "{name}");
            }
        }
        assert_eq!(dn_diagram(4).unwrap().tripod_type().unwrap().to_string(), "(1,1,1)");
        assert_eq!(dn_diagram(9).unwrap().degree(0), 3);
        let a2 = crate::intersection_graph::AugmentedIntersectionGraph::build(&chebyshev_divide(2, 3).unwrap()).unwrap();
        assert_eq!(a2.bounded_adjacency(), an_diagram(2).adjacency());
        let a9 = crate::intersection_graph::AugmentedIntersectionGraph::build(&chebyshev_divide(2, 10).unwrap()).unwrap();
        let g = Graph::from_edges(9, &edges_of(&a9.bounded_adjacency())).unwrap();
        assert!(g.is_connected());
        assert_eq!(g.edges().len(), 8);
        assert!((0..9).all(|v| g.degree(v) <= 2));
    }

    fn edges_of(adj: &[Vec<usize>]) -> Vec<(usize, usize)> {
        adj.iter().enumerate().flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b))).collect()
    }

    #[test]
    fn counterexamples_fail_validation() {
        let left = from_polylines(&counterexample_left()).unwrap();
        let codes: Vec<&str> = left.validate().violations.iter().map(|v| v.code()).collect();
        assert_eq!(codes, vec!["DisconnectedDiagram"]);
        let right = from_polylines(&counterexample_right()).unwrap();
        let codes: Vec<&str> = right.validate().violations.iter().map(|v| v.code()).collect();
        assert_eq!(codes, vec!["DisjointBranches"]);
    }

    #[test]
    fn family_specs() {
        assert_eq!("chebyshev 3 7".parse::<FamilySpec>().unwrap(), FamilySpec::Chebyshev(3, 7));
        assert_eq!("fixture case2".parse::<FamilySpec>().unwrap(), FamilySpec::Fixture("case2".into()));
        assert!("lines".parse::<FamilySpec>().is_err());
        assert!("torus 2".parse::<FamilySpec>().is_err());
        for id in fixture_ids() {
            generate(&FamilySpec::Fixture(id.into())).unwrap();
        }
        assert!(generate(&FamilySpec::Fixture("case9".into())).is_err());
    }
}
