//! Oriented intersection graphs and triangle toggles.
//!
//! An arrow `a -> b` records algebraic intersection `<a, b> = 1`. Toggling
//! `b` about `a` replaces `b` by `T_a^e(b)` with `e = <a, b>`, whose class is
//! `b + a` for either sign, so `<b', k> = <b, k> + <a, k>` for every other
//! curve `k`. Across a coherent triangle the edge `b - k` disappears.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::assemblage::TripodType;
use crate::divide::count_components;
use crate::error::{Error, Result};
use crate::fiber::FiberComplex;

/// Curves with their pairwise algebraic intersections, and their classes in
/// an ambient lattice with its own skew form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedIntersectionGraph {
    labels: Vec<String>,
    form: Vec<Vec<i64>>,
    vectors: Vec<Vec<i64>>,
    ambient: Vec<Vec<i64>>,
}

impl OrientedIntersectionGraph {
    /// Curves given directly by their arrows; the ambient lattice is the one
    /// they span.
    pub fn from_arrows(labels: Vec<String>, arrows: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut form = vec![vec![0; n]; n];
        for &(a, b) in arrows {
            if a >= n || b >= n || a == b || form[a][b] != 0 {
                return Err(Error::BadParams(format!("bad arrow {a} -> {b}")));
            }
            form[a][b] = 1;
            form[b][a] = -1;
        }
        let vectors = identity(n);
        Ok(OrientedIntersectionGraph { labels, ambient: form.clone(), form, vectors })
    }

    /// Distinguished cycles of `vertices` with intersections from the fiber.
    pub fn from_fiber(fiber: &FiberComplex, vertices: &[usize]) -> Result<Self> {
        let mu = fiber.mu();
        let gram = fiber.gram();
        let n = vertices.len();
        let mut form = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let x = gram[vertices[i]][vertices[j]];
                if x.abs() > 1 {
                    return Err(Error::NoCoherentOrientation(format!(
                        "cycles {} and {} meet {} times algebraically",
                        vertices[i], vertices[j], x
                    )));
                }
                form[i][j] = x;
            }
        }
        let vectors = vertices
            .iter()
            .map(|&v| (0..mu).map(|i| i64::from(i == v)).collect())
            .collect();
        let labels = vertices.iter().map(|&v| fiber.graph().label(v)).collect();
        Ok(OrientedIntersectionGraph { labels, form, vectors, ambient: gram.to_vec() })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn form(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.form[a][b] == 1).collect()
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.len());
        for (a, b) in self.arrows() {
            g.add(a, b);
        }
        g
    }

    pub fn is_coherent(&self, a: usize, b: usize, c: usize) -> bool {
        let f = &self.form;
        f[a][b] == f[b][c] && f[b][c] == f[c][a]
    }

    /// Triangles of the underlying graph that are not directed 3-cycles.
    pub fn incoherent_triangles(&self) -> Vec<[usize; 3]> {
        self.graph().triangles().into_iter().filter(|t| !self.is_coherent(t[0], t[1], t[2])).collect()
    }

    pub fn toggle(&self, a: usize, b: usize) -> Result<Self> {
        let n = self.len();
        if a >= n || b >= n || self.form[a][b] == 0 {
            return Err(Error::BadParams(format!("no edge {a} - {b}")));
        }
        for k in 0..n {
            if k != a && k != b && self.form[a][k] != 0 && self.form[b][k] != 0 && !self.is_coherent(a, b, k) {
                return Err(Error::IncoherentTriangle(format!(
                    "({}, {}, {}) is not a directed cycle",
                    self.labels[a], self.labels[b], self.labels[k]
                )));
            }
        }
        let mut out = self.clone();
        for k in 0..n {
            if k == a || k == b {
                continue;
            }
            let x = self.form[b][k] + self.form[a][k];
            if x.abs() > 1 {
                return Err(Error::IncoherentTriangle(format!(
                    "twisted curve meets {} twice",
                    self.labels[k]
                )));
            }
            out.form[b][k] = x;
            out.form[k][b] = -x;
        }
        for i in 0..out.vectors[b].len() {
            out.vectors[b][i] += self.vectors[a][i];
        }
        Ok(out)
    }

    /// Intersections recomputed from the classes and the ambient form.
    pub fn form_from_vectors(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let m = self.ambient.len();
        let mut out = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for p in 0..m {
                    if self.vectors[i][p] == 0 {
                        continue;
                    }
                    for q in 0..m {
                        s += self.vectors[i][p] * self.ambient[p][q] * self.vectors[j][q];
                    }
                }
                out[i][j] = s;
            }
        }
        out
    }

    /// Invariant factors of the spanned sublattice and of the skew form on it.
    pub fn span_data(&self) -> SpanData {
        SpanData {
            lattice: smith_normal_form(&self.vectors),
            form: smith_normal_form(&self.form_from_vectors()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanData {
    pub lattice: Vec<String>,
    pub form: Vec<String>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Orientation of the full bounded diagram from the fiber's intersection
/// form; every triangle must be a directed cycle.
pub fn orient(fiber: &FiberComplex) -> Result<OrientedIntersectionGraph> {
    let vertices: Vec<usize> = (0..fiber.mu()).collect();
    let g = OrientedIntersectionGraph::from_fiber(fiber, &vertices)?;
    let adj = fiber.graph().bounded_adjacency();
    for (v, row) in adj.iter().enumerate() {
        for w in 0..fiber.mu() {
            let adjacent = row.contains(&w);
            if adjacent != (g.form[v][w] != 0) {
                return Err(Error::NoCoherentOrientation(format!(
                    "adjacency of {v} and {w} disagrees with their intersection number"
                )));
            }
        }
    }
    if let Some(t) = g.incoherent_triangles().first() {
        return Err(Error::NoCoherentOrientation(format!("triangle {t:?} is not a directed cycle")));
    }
    Ok(g)
}

/// Simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![BTreeSet::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            if a >= n || b >= n || a == b || g.has(a, b) {
                return Err(Error::BadParams(format!("bad edge ({a}, {b})")));
            }
            g.add(a, b);
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn has(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn add(&mut self, a: usize, b: usize) {
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.adj[a].remove(&b);
        self.adj[b].remove(&a);
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        self.adj.iter().map(|s| s.iter().copied().collect()).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|a| self.adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b))).collect()
    }

    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for (a, b) in self.edges() {
            for &c in self.adj[b].range(b + 1..) {
                if self.has(a, c) {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let adj: Vec<Vec<usize>> = self.adj.iter().map(|s| s.iter().copied().collect()).collect();
        count_components(&adj) == 1
    }

    /// Toggle ignoring orientations: every other neighbour of `a` flips its
    /// adjacency with `b`.
    pub fn toggle(&self, a: usize, b: usize) -> Result<Self> {
        if !self.has(a, b) {
            return Err(Error::BadParams(format!("no edge {a} - {b}")));
        }
        let mut out = self.clone();
        for k in self.neighbors(a) {
            if k == b {
                continue;
            }
            if self.has(b, k) {
                out.remove(b, k);
            } else {
                out.add(b, k);
            }
        }
        Ok(out)
    }

    /// Arm lengths when the graph is a tree with one vertex of degree 3 and
    /// all others of degree at most 2.
    pub fn tripod_type(&self) -> Option<TripodType> {
        let n = self.len();
        if n == 0 || self.edges().len() + 1 != n || !self.is_connected() {
            return None;
        }
        let centers: Vec<usize> = (0..n).filter(|&v| self.degree(v) >= 3).collect();
        if centers.len() != 1 || self.degree(centers[0]) != 3 {
            return None;
        }
        let c = centers[0];
        let mut arms: Vec<usize> = self
            .neighbors(c)
            .map(|first| {
                let (mut prev, mut cur, mut len) = (c, first, 1);
                while let Some(next) = self.neighbors(cur).find(|&x| x != prev) {
                    prev = cur;
                    cur = next;
                    len += 1;
                }
                len
            })
            .collect();
        arms.sort_unstable();
        Some(TripodType(arms[0], arms[1], arms[2]))
    }
}

/// Orients every triangle as a directed cycle, if possible. Edge `(a, b)`
/// with `a < b` points `a -> b` unless flipped; unconstrained components keep
/// the default, or follow `choice` bit by bit.
pub fn coherent_orientation(g: &Graph, choice: u64) -> Result<Vec<(usize, usize)>> {
    let edges = g.edges();
    let index = |a: usize, b: usize| edges.binary_search(&(a.min(b), a.max(b))).expect("edge");
    // Union-find with parity to the root.
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    let mut parity = vec![0u8; edges.len()];
    fn find(parent: &mut [usize], parity: &mut [u8], x: usize) -> (usize, u8) {
        if parent[x] == x {
            return (x, 0);
        }
        let (r, p) = find(parent, parity, parent[x]);
        parent[x] = r;
        parity[x] ^= p;
        (r, parity[x])
    }
    for [a, b, c] in g.triangles() {
        // a < b < c: a->b->c->a flips (a, c) only.
        for (e, f, want) in [(index(a, b), index(b, c), 0u8), (index(a, b), index(a, c), 1u8)] {
            let (re, pe) = find(&mut parent, &mut parity, e);
            let (rf, pf) = find(&mut parent, &mut parity, f);
            if re == rf {
                if pe ^ pf != want {
                    return Err(Error::NoCoherentOrientation(format!(
                        "triangles around ({a}, {b}, {c}) cannot all be directed cycles"
                    )));
                }
            } else {
                parent[re] = rf;
                parity[re] = pe ^ pf ^ want;
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(edges.len());
    for (i, &(a, b)) in edges.iter().enumerate() {
        let (r, p) = find(&mut parent, &mut parity, i);
        let k = roots.iter().position(|&x| x == r).unwrap_or_else(|| {
            roots.push(r);
            roots.len() - 1
        });
        let bit = if k < 64 { (choice >> k) as u8 & 1 } else { 0 };
        out.push(if p ^ bit == 0 { (a, b) } else { (b, a) });
    }
    Ok(out)
}

/// Number of independent sign choices in coherent orientations.
pub fn orientation_freedom(g: &Graph) -> usize {
    let edges = g.edges();
    let mut adj = vec![Vec::new(); edges.len()];
    let index = |a: usize, b: usize| edges.binary_search(&(a.min(b), a.max(b))).expect("edge");
    for [a, b, c] in g.triangles() {
        let (x, y, z) = (index(a, b), index(b, c), index(a, c));
        adj[x].extend([y, z]);
        adj[y].push(x);
        adj[z].push(x);
    }
    count_components(&adj)
}

/// Invariant factors (nonzero diagonal of the Smith normal form), as
/// decimal strings.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Vec<String> {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut done = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
            }
            done &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..rows {
                    let s = &q * &a[i][t];
                    a[i][j] -= s;
                }
            }
            done &= a[t][j].is_zero();
        }
        if !done {
            continue;
        }
        // The pivot must divide the rest of the block.
        let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| {
            !a[i][j].is_multiple_of(&a[t][t])
        });
        if let Some((i, _)) = bad {
            for j in t..cols {
                let s = a[i][j].clone();
                a[t][j] += s;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag.into_iter().map(|d| d.to_string()).collect()
}

/// Ordered toggles `a -> b`, written `a->b; c->d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToggleScript(pub Vec<(String, String)>);

impl std::str::FromStr for ToggleScript {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part
                .split_once("->")
                .ok_or_else(|| Error::BadParams(format!("toggle '{part}' is not of the form a->b")))?;
            let (a, b) = (a.trim(), b.trim());
            if a.is_empty() || b.is_empty() {
                return Err(Error::BadParams(format!("toggle '{part}' is missing a vertex")));
            }
            steps.push((a.to_string(), b.to_string()));
        }
        Ok(ToggleScript(steps))
    }
}

impl fmt::Display for ToggleScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl ToggleScript {
    pub fn resolve(&self, labels: &[String]) -> Result<Vec<(usize, usize)>> {
        let find = |l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .or_else(|| l.parse::<usize>().ok().filter(|&i| i < labels.len()))
                .ok_or_else(|| Error::BadParams(format!("unknown vertex '{l}'")))
        };
        self.0.iter().map(|(a, b)| Ok((find(a)?, find(b)?))).collect()
    }
}

/// Diagram fixture at the level of intersection graphs, with the toggles
/// that turn it into a tripod.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub description: String,
    pub source: String,
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub script: String,
    pub target: String,
}

const FIXTURES: [(&str, &str); 10] = [
    ("dual37", include_str!("../fixtures/dual37.json")),
    ("dual38", include_str!("../fixtures/dual38.json")),
    ("case39", include_str!("../fixtures/case39.json")),
    ("mult32branches", include_str!("../fixtures/mult32branches.json")),
    ("mult3branch3cases", include_str!("../fixtures/mult3branch3cases.json")),
    ("case1", include_str!("../fixtures/case1.json")),
    ("case2", include_str!("../fixtures/case2.json")),
    ("case3", include_str!("../fixtures/case3.json")),
    ("case4", include_str!("../fixtures/case4.json")),
    ("case5", include_str!("../fixtures/case5.json")),
];

pub fn fixture_ids() -> Vec<&'static str> {
    FIXTURES.iter().map(|(id, _)| *id).collect()
}

pub fn fixture(id: &str) -> Result<Fixture> {
    let (_, text) = FIXTURES
        .iter()
        .find(|(k, _)| *k == id)
        .ok_or_else(|| Error::BadParams(format!("unknown fixture '{id}'")))?;
    serde_json::from_str(text).map_err(|e| Error::BadParams(format!("fixture {id}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayStep {
    pub toggle: String,
    pub edges: usize,
    pub triangles: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub id: String,
    pub steps: Vec<ReplayStep>,
    pub tripod: String,
    pub genus: usize,
    pub boundary: usize,
    pub span: SpanData,
}

pub fn replay_case(id: &str) -> Result<ReplayReport> {
    replay(&fixture(id)?)
}

/// Runs the script on the unoriented graph, then again with a coherent
/// orientation, checking both agree and that the spanned lattice and its
/// form keep their invariant factors.
pub fn replay(f: &Fixture) -> Result<ReplayReport> {
    let mismatch = |m: String| Error::ReplayMismatch(format!("{}: {m}", f.id));
    let n = f.labels.len();
    let start = Graph::from_edges(n, &f.edges)?;
    let script = f.script.parse::<ToggleScript>()?.resolve(&f.labels)?;
    let mut graphs = vec![start.clone()];
    let mut steps = Vec::new();
    for &(a, b) in &script {
        let g = graphs.last().expect("start graph").toggle(a, b)?;
        steps.push(ReplayStep {
            toggle: format!("{}->{}", f.labels[a], f.labels[b]),
            edges: g.edges().len(),
            triangles: g.triangles().len(),
        });
        graphs.push(g);
    }
    let last = graphs.last().expect("start graph");
    let tripod = last.tripod_type().ok_or_else(|| mismatch("result is not a tripod".into()))?;
    if tripod.to_string() != f.target {
        return Err(mismatch(format!("reached {tripod}, expected {}", f.target)));
    }
    let (genus, boundary) = crate::fiber::abstract_tree_surface(n, &last.edges())?;
    if (genus, boundary) != (5, 1) {
        return Err(mismatch(format!("tripod spans genus {genus} with {boundary} boundary components")));
    }

    let choices = 1u64 << orientation_freedom(&start).min(10);
    let mut last_error = None;
    let mut span = None;
    for choice in 0..choices {
        let arrows = coherent_orientation(&start, choice)?;
        let mut og = OrientedIntersectionGraph::from_arrows(f.labels.clone(), &arrows)?;
        let span0 = og.span_data();
        let run = script.iter().zip(&graphs[1..]).try_for_each(|(&(a, b), expected)| {
            og = og.toggle(a, b)?;
            if og.graph() != *expected {
                return Err(mismatch("oriented and unoriented toggles disagree".into()));
            }
            if og.form_from_vectors() != og.form || og.span_data() != span0 {
                return Err(mismatch("span data changed under a toggle".into()));
            }
            Ok(())
        });
        match run {
            Ok(()) => {
                span = Some(span0);
                break;
            }
            Err(e) => last_error = Some(e),
        }
    }
    let span = span.ok_or_else(|| {
        mismatch(format!("no coherent orientation replays the script ({})", last_error.expect("tried")))
    })?;
    Ok(ReplayReport { id: f.id.clone(), steps, tripod: tripod.to_string(), genus, boundary, span })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::chebyshev_divide;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("c{i}")).collect()
    }

    #[test]
    fn coherent_triangle_loses_an_edge() {
        let g = OrientedIntersectionGraph::from_arrows(labels(3), &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(g.is_coherent(0, 1, 2));
        let h = g.toggle(0, 1).unwrap();
        assert_eq!(h.graph().edges(), vec![(0, 1), (0, 2)]);
        assert_eq!(h.vectors()[1], vec![1, 1, 0]);
    }

    #[test]
    fn neighbor_of_a_gains_an_edge() {
        let g = OrientedIntersectionGraph::from_arrows(labels(3), &[(0, 1), (2, 0)]).unwrap();
        let h = g.toggle(0, 1).unwrap();
        assert_eq!(h.graph().edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(h.form()[1][2], g.form()[0][2]);
        assert!(matches!(h.toggle(0, 1), Err(Error::IncoherentTriangle(_))));
    }

    #[test]
    fn incoherent_triangle_is_rejected() {
        let g = OrientedIntersectionGraph::from_arrows(labels(3), &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.incoherent_triangles(), vec![[0, 1, 2]]);
        assert!(matches!(g.toggle(0, 1), Err(Error::IncoherentTriangle(_))));
    }

    #[test]
    fn unoriented_toggle_is_an_involution() {
        let f = fixture("case5").unwrap();
        let g = Graph::from_edges(10, &f.edges).unwrap();
        for (a, b) in g.edges() {
            assert_eq!(g.toggle(a, b).unwrap().toggle(a, b).unwrap(), g);
            assert_eq!(g.toggle(b, a).unwrap().toggle(b, a).unwrap(), g);
        }
    }

    #[test]
    fn smith_form() {
        assert_eq!(smith_normal_form(&[vec![0, 1], vec![-1, 0]]), vec!["1", "1"]);
        assert_eq!(smith_normal_form(&[vec![2, 4], vec![6, 8]]), vec!["2", "4"]);
        assert!(smith_normal_form(&[vec![0, 0], vec![0, 0]]).is_empty());
    }

    #[test]
    fn divides_orient_coherently() {
        for (p, q) in [(3, 4), (3, 7)] {
            let f = FiberComplex::build(&chebyshev_divide(p, q).unwrap()).unwrap();
            let g = orient(&f).unwrap();
            assert!(g.incoherent_triangles().is_empty());
            assert_eq!(g.len(), f.mu());
        }
    }

    #[test]
    fn script_syntax() {
        let s: ToggleScript = "a3->b7; a3 -> b9".parse().unwrap();
        assert_eq!(s.to_string(), "a3->b7; a3->b9");
        assert!("a3-b7".parse::<ToggleScript>().is_err());
        assert!("->b".parse::<ToggleScript>().is_err());
    }

    #[test]
    fn fixtures_replay() {
        for id in fixture_ids() {
            let r = replay_case(id).unwrap();
            assert_eq!(r.tripod, fixture(id).unwrap().target, "{id}");
            assert_eq!((r.genus, r.boundary), (5, 1));
        }
        assert_eq!(replay_case("case2").unwrap().tripod, "(1,4,4)");
        assert_eq!(replay_case("case4").unwrap().tripod, "(2,2,5)");
        assert!(matches!(fixture("nope"), Err(Error::BadParams(_))));
    }

    #[test]
    fn wrong_target_is_a_mismatch() {
        let mut f = fixture("case1").unwrap();
        f.target = "(1,2,6)".into();
        assert!(matches!(replay(&f), Err(Error::ReplayMismatch(_))));
        f.script = "c4->c3".into();
        assert!(matches!(replay(&f), Err(Error::ReplayMismatch(_))));
    }
}
