//! Legality of vertices relative to a colored set, tripod cores and
//! attaching sequences that color the whole diagram.

use std::fmt;

use serde::{Deserialize, Serialize};

use std::collections::{HashSet, VecDeque};

use crate::divide::{count_components, Divide};
use crate::error::{Error, Result};
use crate::fiber::{abstract_tree_surface, count_runs, FiberComplex};
use crate::intersection_graph::AugmentedIntersectionGraph;

/// Neighbours of a vertex in counterclockwise order; consecutive neighbours
/// share a face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentCycle {
    pub vertex: usize,
    pub neighbors: Vec<usize>,
}

impl TangentCycle {
    /// Number of maximal colored arcs; a fully colored cycle is one arc.
    pub fn colored_arcs(&self, colored: &[bool]) -> usize {
        let flags: Vec<bool> = self.neighbors.iter().map(|&w| colored[w]).collect();
        count_runs(&flags)
    }
}

pub fn tangent_space(g: &AugmentedIntersectionGraph, v: usize) -> TangentCycle {
    let map = g.map();
    let mut neighbors: Vec<usize> = Vec::new();
    for &h in g.rotation(v) {
        let w = map.dest(h);
        if neighbors.last() != Some(&w) {
            neighbors.push(w);
        }
    }
    while neighbors.len() > 1 && neighbors.first() == neighbors.last() {
        neighbors.pop();
    }
    TangentCycle { vertex: v, neighbors }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Legality {
    pub legal: bool,
    pub components: usize,
    /// The distinguished cycle already lies in the colored subsurface.
    pub u_empty: bool,
}

#[derive(Debug, Clone)]
pub struct ColoredState<'a> {
    graph: &'a AugmentedIntersectionGraph,
    colored: Vec<bool>,
}

impl<'a> ColoredState<'a> {
    /// A connected nonempty set of bounded vertices.
    pub fn new(graph: &'a AugmentedIntersectionGraph, core: &[usize]) -> Result<Self> {
        let mu = graph.mu();
        if core.is_empty() {
            return Err(Error::BadParams("empty colored set".into()));
        }
        let mut colored = vec![false; mu + 1];
        for &v in core {
            if v >= mu {
                return Err(Error::BadParams(format!("vertex {v} is not bounded")));
            }
            colored[v] = true;
        }
        let s = ColoredState { graph, colored };
        if !s.is_connected() {
            return Err(Error::BadParams("colored set is not connected".into()));
        }
        Ok(s)
    }

    pub fn colored(&self) -> Vec<usize> {
        (0..self.graph.mu()).filter(|&v| self.colored[v]).collect()
    }

    pub fn is_colored(&self, v: usize) -> bool {
        self.colored[v]
    }

    pub fn is_complete(&self) -> bool {
        self.colored[..self.graph.mu()].iter().all(|&c| c)
    }

    fn is_connected(&self) -> bool {
        let vs = self.colored();
        let mut index = vec![usize::MAX; self.graph.mu() + 1];
        for (i, &v) in vs.iter().enumerate() {
            index[v] = i;
        }
        let adj: Vec<Vec<usize>> = vs
            .iter()
            .map(|&v| {
                self.graph.adjacency()[v].iter().filter(|&&w| index[w] != usize::MAX).map(|&w| index[w]).collect()
            })
            .collect();
        count_components(&adj) == 1
    }

    pub fn is_legal(&self, v: usize) -> Legality {
        let t = tangent_space(self.graph, v);
        let components = t.colored_arcs(&self.colored);
        let u_empty = !t.neighbors.is_empty() && t.neighbors.iter().all(|&w| self.colored[w]);
        Legality { legal: components == 1, components, u_empty }
    }

    /// Smallest uncolored bounded vertex that is legal.
    pub fn find_legal(&self) -> Result<usize> {
        (0..self.graph.mu())
            .filter(|&v| !self.colored[v])
            .find(|&v| self.is_legal(v).legal)
            .ok_or_else(|| {
                Error::NoLegalVertex(format!("{} colored vertices, none legal", self.colored().len()))
            })
    }

    pub fn color(&mut self, v: usize) {
        self.colored[v] = true;
    }
}

/// Arm lengths of a tripod, shortest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripodType(pub usize, pub usize, pub usize);

impl fmt::Display for TripodType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0, self.1, self.2)
    }
}

/// The four trees on ten vertices with three arms whose curve
/// configurations span a genus-5 surface with one boundary component.
pub const GENUS5_TRIPODS: [TripodType; 4] =
    [TripodType(1, 2, 6), TripodType(1, 4, 4), TripodType(2, 3, 4), TripodType(2, 2, 5)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Core {
    pub kind: TripodType,
    pub center: usize,
    /// Arms listed outward from the center, in the order of `kind`.
    pub arms: [Vec<usize>; 3],
}

impl Core {
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs = vec![self.center];
        for arm in &self.arms {
            vs.extend_from_slice(arm);
        }
        vs
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut es = Vec::new();
        for arm in &self.arms {
            let mut prev = self.center;
            for &v in arm {
                es.push((prev, v));
                prev = v;
            }
        }
        es
    }

    /// Tree edges in local indices of `vertices()`.
    pub fn local_edges(&self) -> Vec<(usize, usize)> {
        let vs = self.vertices();
        let at = |v: usize| vs.iter().position(|&x| x == v).expect("core vertex");
        self.edges().into_iter().map(|(a, b)| (at(a), at(b))).collect()
    }
}

/// Searches the bounded diagram for an induced tripod of one of the genus-5
/// types; with a fiber, also requires the subsurface of its vertices to have
/// genus 5 and one boundary component.
pub fn detect_core(g: &AugmentedIntersectionGraph, fiber: Option<&FiberComplex>) -> Option<Core> {
    let mut accept = |core: &Core| match fiber {
        None => true,
        Some(f) => {
            let s = f.subsurface(&core.vertices());
            (s.genus, s.boundary_count) == (5, 1)
        }
    };
    find_tripod(&g.bounded_adjacency(), &mut accept)
}

/// Induced genus-5 tripod in an abstract graph given by adjacency lists.
pub fn detect_core_in(adj: &[Vec<usize>]) -> Option<Core> {
    find_tripod(adj, &mut |_| true)
}

fn find_tripod(adj: &[Vec<usize>], accept: &mut dyn FnMut(&Core) -> bool) -> Option<Core> {
    for kind in GENUS5_TRIPODS {
        for center in 0..adj.len() {
            if adj[center].len() < 3 {
                continue;
            }
            let lengths = [kind.0, kind.1, kind.2];
            let mut chosen = vec![center];
            let mut arms: [Vec<usize>; 3] = Default::default();
            if let Some(core) = grow_arms(adj, center, &lengths, 0, &mut chosen, &mut arms, kind, accept) {
                return Some(core);
            }
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn grow_arms(
    adj: &[Vec<usize>],
    center: usize,
    lengths: &[usize; 3],
    arm: usize,
    chosen: &mut Vec<usize>,
    arms: &mut [Vec<usize>; 3],
    kind: TripodType,
    accept: &mut dyn FnMut(&Core) -> bool,
) -> Option<Core> {
    if arm == 3 {
        let core = Core { kind, center, arms: arms.clone() };
        return accept(&core).then_some(core);
    }
    if arms[arm].len() == lengths[arm] {
        return grow_arms(adj, center, lengths, arm + 1, chosen, arms, kind, accept);
    }
    let tip = *arms[arm].last().unwrap_or(&center);
    for &w in &adj[tip] {
        if chosen.contains(&w) {
            continue;
        }
        // Induced: w touches nothing chosen except its predecessor.
        if adj[w].iter().any(|x| *x != tip && chosen.contains(x)) {
            continue;
        }
        chosen.push(w);
        arms[arm].push(w);
        if let Some(c) = grow_arms(adj, center, lengths, arm, chosen, arms, kind, accept) {
            return Some(c);
        }
        arms[arm].pop();
        chosen.pop();
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub vertex: usize,
    pub components: usize,
    pub absorbed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinalSurface {
    pub genus: usize,
    pub boundary: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssemblageCertificate {
    /// Triangle moves `(half-edge, crossing)` applied to the input divide
    /// before coloring; vertex ids refer to the moved divide.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub moves: Vec<(usize, usize)>,
    pub core: Vec<usize>,
    pub core_type: String,
    pub steps: Vec<Step>,
    #[serde(rename = "final")]
    pub final_surface: FinalSurface,
}

impl AssemblageCertificate {
    /// Vertices in the attaching sequence, absorbed ones left out.
    pub fn attaching_sequence(&self) -> Vec<usize> {
        self.steps.iter().filter(|s| !s.absorbed).map(|s| s.vertex).collect()
    }

    pub fn absorbed(&self) -> Vec<usize> {
        self.steps.iter().filter(|s| s.absorbed).map(|s| s.vertex).collect()
    }
}

/// Colors the diagram from `core` one legal vertex at a time.
pub fn assemble(fiber: &FiberComplex, core: &[usize], core_type: &str) -> Result<AssemblageCertificate> {
    let mut state = ColoredState::new(fiber.graph(), core)?;
    let mut steps = Vec::new();
    while !state.is_complete() {
        let v = state.find_legal()?;
        let l = state.is_legal(v);
        state.color(v);
        steps.push(Step { vertex: v, components: l.components, absorbed: l.u_empty });
    }
    let s = fiber.subsurface(&state.colored());
    Ok(AssemblageCertificate {
        moves: Vec::new(),
        core: core.to_vec(),
        core_type: core_type.to_string(),
        steps,
        final_surface: FinalSurface { genus: s.genus, boundary: s.boundary_count },
    })
}

/// Colors the diagram from a detected tripod core.
pub fn assemble_from_core(fiber: &FiberComplex) -> Result<AssemblageCertificate> {
    let core = detect_core(fiber.graph(), Some(fiber))
        .ok_or_else(|| Error::NoLegalVertex("no genus-5 tripod core in the diagram".into()))?;
    assemble(fiber, &core.vertices(), &core.kind.to_string())
}

/// Breadth-first search over triangle moves, up to `max_moves` deep, for a
/// divide whose diagram has a tripod core, then colors it from that core.
pub fn assemble_divide(d: &Divide, max_moves: usize) -> Result<AssemblageCertificate> {
    let mut seen = HashSet::from([d.canonical_code()]);
    let mut queue = VecDeque::from([(d.clone(), Vec::new())]);
    while let Some((e, moves)) = queue.pop_front() {
        let fiber = FiberComplex::build(&e)?;
        if let Some(core) = detect_core(fiber.graph(), Some(&fiber)) {
            let mut cert = assemble(&fiber, &core.vertices(), &core.kind.to_string())?;
            cert.moves = moves;
            return Ok(cert);
        }
        if moves.len() == max_moves {
            continue;
        }
        for (h, c) in e.triangle_moves() {
            let next = e.admissible_move(h, c)?;
            if seen.insert(next.canonical_code()) {
                let mut path = moves.clone();
                path.push((h, c));
                queue.push_back((next, path));
            }
        }
    }
    Err(Error::NoLegalVertex(format!("no tripod core within {max_moves} triangle moves")))
}

/// Applies the certificate's moves to `d`, then replays it on the result.
pub fn verify_divide_certificate(d: &Divide, cert: &AssemblageCertificate) -> Result<FiberComplex> {
    let mut e = d.clone();
    for &(h, c) in &cert.moves {
        e = e
            .admissible_move(h, c)
            .map_err(|err| Error::ReplayMismatch(format!("move ({h}, {c}): {err}")))?;
    }
    let fiber = FiberComplex::build(&e)?;
    verify_certificate(&fiber, cert)?;
    Ok(fiber)
}

/// Replays a certificate, re-checking legality, absorption flags, the
/// monotone genus of the colored subsurface and the final surface.
pub fn verify_certificate(fiber: &FiberComplex, cert: &AssemblageCertificate) -> Result<()> {
    let mismatch = |m: String| Err(Error::ReplayMismatch(m));
    let mut state = ColoredState::new(fiber.graph(), &cert.core)?;
    if let Some(t) = GENUS5_TRIPODS.iter().find(|t| t.to_string() == cert.core_type) {
        let vs = &cert.core;
        let edges: Vec<(usize, usize)> = (0..vs.len())
            .flat_map(|i| (i + 1..vs.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| fiber.graph().is_adjacent(vs[i], vs[j]))
            .collect();
        if vs.len() != 10 || abstract_tree_surface(10, &edges).ok() != Some((5, 1)) {
            return mismatch(format!("core is not a {t} tripod"));
        }
    }
    let mut genus = fiber.subsurface(&cert.core).genus;
    for (i, step) in cert.steps.iter().enumerate() {
        if step.vertex >= fiber.mu() || state.is_colored(step.vertex) {
            return mismatch(format!("step {i}: vertex {} is not an uncolored bounded vertex", step.vertex));
        }
        let l = state.is_legal(step.vertex);
        if !l.legal || l.components != step.components || l.u_empty != step.absorbed {
            return mismatch(format!("step {i}: vertex {} gives {l:?}", step.vertex));
        }
        state.color(step.vertex);
        let g = fiber.subsurface(&state.colored()).genus;
        if g < genus {
            return mismatch(format!("step {i}: genus drops from {genus} to {g}"));
        }
        genus = g;
    }
    if !state.is_complete() {
        return mismatch("certificate leaves vertices uncolored".into());
    }
    let expected = FinalSurface { genus: fiber.genus(), boundary: fiber.boundary_count() };
    if cert.final_surface != expected {
        return mismatch(format!("final surface {:?}, fiber is {expected:?}", cert.final_surface));
    }
    Ok(())
}
