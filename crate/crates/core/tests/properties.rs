use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use dividekit::divide::Divide;
use dividekit::fiber::{abstract_tree_surface, FiberComplex};
use dividekit::framing::{CurveExpr, Framing};
use dividekit::generators::{chebyshev_divide, chebyshev_polylines, generic_lines};
use dividekit::geometry::Point;
use dividekit::intersection_graph::AugmentedIntersectionGraph;
use dividekit::invariants::record_from_divide;
use dividekit::planar_map::{dual, PlanarMap};
use dividekit::polyline::{from_polylines, Polyline};
use dividekit::toggle::{coherent_orientation, Graph, OrientedIntersectionGraph};
use dividekit::Rational;

fn config() -> Config {
    let seed = std::env::var("DIVIDEKIT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed);
    Config { cases: 48, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

/// A corpus divide followed by up to three triangle moves.
fn divides() -> impl Strategy<Value = Divide> {
    let base = prop_oneof![
        (2usize..=4, 2usize..=9).prop_map(|(p, q)| chebyshev_divide(p, q).unwrap()),
        (2usize..=6).prop_map(|m| generic_lines(m).unwrap()),
    ];
    (base, prop::collection::vec(any::<u16>(), 0..=3)).prop_map(|(mut d, picks)| {
        for pick in picks {
            let moves = d.triangle_moves();
            if moves.is_empty() {
                break;
            }
            let (h, c) = moves[pick as usize % moves.len()];
            d = d.admissible_move(h, c).unwrap();
        }
        d
    })
}

fn degrees(m: &PlanarMap) -> Vec<usize> {
    let mut d: Vec<usize> = (0..m.vertex_count()).map(|v| m.degree(v)).collect();
    d.sort_unstable();
    d
}

fn face_sizes(m: &PlanarMap) -> Vec<usize> {
    let mut s: Vec<usize> = m.faces().iter().map(|f| f.cycle.len()).collect();
    s.sort_unstable();
    s
}

fn random_tree(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn fiber_euler_characteristic(d in divides()) {
        let f = FiberComplex::build(&d).unwrap();
        let r = record_from_divide(&d).unwrap();
        prop_assert_eq!(f.chi(), 1 - f.mu() as i64);
        prop_assert_eq!(f.chi(), 2 - 2 * f.genus() as i64 - f.boundary_count() as i64);
        prop_assert_eq!((f.genus(), f.boundary_count()), (r.genus, r.b));
    }

    #[test]
    fn moves_keep_invariants(d in divides()) {
        let r = record_from_divide(&d).unwrap();
        for (h, c) in d.triangle_moves().into_iter().take(3) {
            let e = d.admissible_move(h, c).unwrap();
            let s = record_from_divide(&e).unwrap();
            prop_assert_eq!((s.mu, s.b, s.genus), (r.mu, r.b, r.genus));
        }
    }

    #[test]
    fn dual_of_dual(d in divides()) {
        let g = AugmentedIntersectionGraph::build(&d).unwrap();
        let m = g.map();
        let (once, _) = dual(m).unwrap();
        let (twice, _) = dual(&once).unwrap();
        prop_assert_eq!(once.vertex_count(), m.faces().len());
        prop_assert_eq!(twice.edge_count(), m.edge_count());
        prop_assert_eq!(degrees(&twice), degrees(m));
        prop_assert_eq!(face_sizes(&twice), face_sizes(m));
    }

    #[test]
    fn square_symmetries(p in 2usize..=4, q in 2usize..=9, sym in 0usize..8) {
        let one = Rational::from_integer(1.into());
        let act = |pt: &Point<Rational>| {
            let (mut x, mut y) = (pt.x.clone(), pt.y.clone());
            if sym & 1 == 1 { x = &one - x; }
            if sym & 2 == 2 { y = &one - y; }
            if sym & 4 == 4 { std::mem::swap(&mut x, &mut y); }
            Point::new(x, y)
        };
        let polys: Vec<Polyline<Rational>> = chebyshev_polylines(p, q)
            .into_iter()
            .map(|l| Polyline { points: l.points.iter().map(act).collect(), closed: l.closed })
            .collect();
        let d = chebyshev_divide(p, q).unwrap();
        let e = from_polylines(&polys).unwrap();
        prop_assert_eq!(record_from_divide(&e).unwrap(), record_from_divide(&d).unwrap());
        let fd = FiberComplex::build(&d).unwrap();
        let fe = FiberComplex::build(&e).unwrap();
        prop_assert_eq!(fd.polygon_sides(), fe.polygon_sides());
    }

    #[test]
    fn tree_surface_ignores_labels(seq in prop::collection::vec(0usize..10, 8), perm in Just((0..10).collect::<Vec<usize>>()).prop_shuffle()) {
        let edges = random_tree(&seq);
        let relabeled: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (perm[b], perm[a])).collect();
        let (g, b) = abstract_tree_surface(10, &edges).unwrap();
        prop_assert_eq!(abstract_tree_surface(10, &relabeled).unwrap(), (g, b));
        prop_assert_eq!(2 - 2 * g as i64 - b as i64, -9);
    }

    #[test]
    fn unoriented_toggle_is_an_involution(edges in prop::collection::btree_set((0usize..8, 0usize..8), 1..20), pick in any::<u16>()) {
        let edges: Vec<(usize, usize)> = edges
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        prop_assume!(!edges.is_empty());
        let g = Graph::from_edges(8, &edges).unwrap();
        let es = g.edges();
        let (a, b) = es[pick as usize % es.len()];
        prop_assert_eq!(g.toggle(a, b).unwrap().toggle(a, b).unwrap(), g);
    }

    #[test]
    fn oriented_toggle_keeps_span(d in divides(), pick in any::<u16>()) {
        let f = FiberComplex::build(&d).unwrap();
        prop_assume!(f.mu() >= 3);
        let all: Vec<usize> = (0..f.mu()).collect();
        let g = OrientedIntersectionGraph::from_fiber(&f, &all).unwrap();
        let arrows = g.arrows();
        let (a, b) = arrows[pick as usize % arrows.len()];
        if let Ok(h) = g.toggle(a, b) {
            prop_assert_eq!(h.span_data(), g.span_data());
            prop_assert_eq!(h.form_from_vectors(), h.form().to_vec());
        }
        let coherent = coherent_orientation(&g.graph(), pick as u64).unwrap();
        prop_assert_eq!(coherent.len(), g.graph().edges().len());
    }

    #[test]
    fn twists_are_linear(d in divides(), u in any::<u16>(), w in any::<u16>(), k in -3i64..=3) {
        let f = FiberComplex::build(&d).unwrap();
        let (u, w) = (u as usize % f.mu(), w as usize % f.mu());
        let fr = Framing::new(&f);
        let twisted = fr
            .evaluate(&CurveExpr::Twist { about: Box::new(CurveExpr::Cycle(u)), power: k, target: Box::new(CurveExpr::Cycle(w)) })
            .unwrap();
        let a = fr.evaluate(&CurveExpr::Cycle(u)).unwrap();
        let b = fr.evaluate(&CurveExpr::Cycle(w)).unwrap();
        let pair = f.pairing(&a.coords, &b.coords);
        let expected: Vec<i64> = b.coords.iter().zip(&a.coords).map(|(y, x)| y + k * pair * x).collect();
        prop_assert_eq!(twisted.coords, expected);
        prop_assert_eq!(twisted.winding, b.winding + k * pair * a.winding);
    }
}
