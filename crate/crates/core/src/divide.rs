//! Divides: immersed intervals and circles in the disk, stored as a map
//! with 4-valent crossings and 1-valent boundary endpoints.
//!
//! Half-edge `4c + k` is slot `k` of crossing `c`, listed counterclockwise.
//! Slots `k` and `k + 2` continue the same strand. Half-edge `4δ + e` leaves
//! endpoint `e`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::planar_map::PlanarMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    /// Directed half-edges in traversal order.
    pub half_edges: Vec<usize>,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionCensus {
    pub r: usize,
    pub delta: usize,
    pub b: usize,
    pub intervals: usize,
    pub circles: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DisconnectedDiagram { components: usize },
    DisjointBranches(usize, usize),
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::DisconnectedDiagram { .. } => "DisconnectedDiagram",
            Violation::DisjointBranches(..) => "DisjointBranches",
        }
    }

    pub fn to_error(&self) -> Error {
        match self {
            Violation::DisconnectedDiagram { components } => Error::DisconnectedDiagram(format!(
                "intersection diagram has {components} components"
            )),
            Violation::DisjointBranches(i, j) => Error::DisjointBranches(*i, *j),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Immersed circles are legal but change the branch bookkeeping.
    pub circles: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(v.to_error()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Divide {
    crossings: usize,
    endpoints: usize,
    twin: Vec<usize>,
    boundary: Vec<usize>,
    map: PlanarMap,
    strands: Vec<Strand>,
    strand_of: Vec<usize>,
}

impl PartialEq for Divide {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings
            && self.endpoints == other.endpoints
            && self.twin == other.twin
            && self.boundary == other.boundary
    }
}

impl Eq for Divide {}

impl Divide {
    pub fn new(
        crossings: usize,
        endpoints: usize,
        twin: Vec<usize>,
        boundary: Vec<usize>,
    ) -> Result<Self> {
        let n = 4 * crossings + endpoints;
        if twin.len() != n {
            return Err(Error::MalformedDivide(format!(
                "expected {n} half-edges, found {}",
                twin.len()
            )));
        }
        for h in 0..n {
            let t = twin[h];
            if t >= n || t == h || twin[t] != h {
                return Err(Error::MalformedDivide(format!("edge pairing broken at {h}")));
            }
        }
        if endpoints == 0 || endpoints % 2 == 1 {
            return Err(Error::MalformedDivide("intervals need a positive even endpoint count".into()));
        }
        let mut seen = vec![false; endpoints];
        if boundary.len() != endpoints {
            return Err(Error::MalformedDivide("boundary must list every endpoint once".into()));
        }
        for &e in &boundary {
            if e >= endpoints || seen[e] {
                return Err(Error::MalformedDivide("boundary must list every endpoint once".into()));
            }
            seen[e] = true;
        }
        let map = closed_map(crossings, endpoints, &twin, &boundary)?;
        map.check_euler()
            .map_err(|e| Error::MalformedDivide(format!("not a planar divide ({e})")))?;
        if map.components().1 != 1 {
            return Err(Error::MalformedDivide("divide is not connected".into()));
        }
        let mut d = Divide {
            crossings,
            endpoints,
            twin,
            boundary,
            map,
            strands: Vec::new(),
            strand_of: Vec::new(),
        };
        d.trace_strands();
        Ok(d)
    }

    fn trace_strands(&mut self) {
        let n = self.half_edge_count();
        let mut strand_of = vec![usize::MAX; n];
        let mut strands = Vec::new();
        let mut starts: Vec<usize> = self.boundary.iter().map(|&e| self.endpoint_half_edge(e)).collect();
        starts.extend(0..4 * self.crossings);
        for s in starts {
            if strand_of[s] != usize::MAX {
                continue;
            }
            let id = strands.len();
            let mut seq = Vec::new();
            let mut h = s;
            let closed = loop {
                seq.push(h);
                strand_of[h] = id;
                strand_of[self.twin[h]] = id;
                let arrive = self.twin[h];
                if self.is_endpoint(arrive) {
                    break false;
                }
                h = self.opposite(arrive);
                if h == s {
                    break true;
                }
            };
            strands.push(Strand { half_edges: seq, closed });
        }
        self.strands = strands;
        self.strand_of = strand_of;
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings
    }

    pub fn endpoint_count(&self) -> usize {
        self.endpoints
    }

    pub fn half_edge_count(&self) -> usize {
        self.twin.len()
    }

    pub fn twin(&self, h: usize) -> usize {
        self.twin[h]
    }

    pub fn twins(&self) -> &[usize] {
        &self.twin
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn is_endpoint(&self, h: usize) -> bool {
        h >= 4 * self.crossings
    }

    pub fn endpoint_half_edge(&self, e: usize) -> usize {
        4 * self.crossings + e
    }

    /// Half-edge across the crossing on the same strand.
    pub fn opposite(&self, h: usize) -> usize {
        debug_assert!(!self.is_endpoint(h));
        4 * (h / 4) + (h % 4 + 2) % 4
    }

    /// Vertex of the closed map a half-edge leaves: crossings first, then
    /// endpoints.
    pub fn vertex_of(&self, h: usize) -> usize {
        if self.is_endpoint(h) {
            self.crossings + (h - 4 * self.crossings)
        } else {
            h / 4
        }
    }

    /// The map closed off by boundary edges between consecutive endpoints.
    /// Half-edges below `half_edge_count()` are the divide's own.
    pub fn closed_map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn strand_of(&self, h: usize) -> usize {
        self.strand_of[h]
    }

    pub fn census(&self) -> RegionCensus {
        let circles = self.strands.iter().filter(|s| s.closed).count();
        RegionCensus {
            r: self.bounded_regions().len(),
            delta: self.crossings,
            b: self.strands.len(),
            intervals: self.strands.len() - circles,
            circles,
        }
    }

    /// Faces of the closed map that are bounded regions of the complement:
    /// inside the disk and away from its boundary. Returned as face ids of
    /// `closed_map().face_labels()`.
    pub fn bounded_regions(&self) -> Vec<usize> {
        let (label, count) = self.map.face_labels();
        let mut touches = vec![false; count];
        for h in self.half_edge_count()..self.map.half_edge_count() {
            touches[label[h]] = true;
        }
        (0..count).filter(|&f| !touches[f]).collect()
    }

    /// Crossing counts between strands, self-crossings on the diagonal.
    pub fn nu(&self) -> Vec<Vec<usize>> {
        let b = self.strands.len();
        let mut nu = vec![vec![0; b]; b];
        for c in 0..self.crossings {
            let i = self.strand_of[4 * c];
            let j = self.strand_of[4 * c + 1];
            if i == j {
                nu[i][i] += 1;
            } else {
                nu[i][j] += 1;
                nu[j][i] += 1;
            }
        }
        nu
    }

    /// Adjacency of the bounded diagram read straight off the closed map:
    /// a crossing touches the regions at its corners, two regions touch
    /// across a divide edge. Vertices are crossings, then regions in
    /// `bounded_regions()` order.
    pub fn diagram_adjacency(&self) -> Vec<Vec<usize>> {
        let (label, _) = self.map.face_labels();
        let regions = self.bounded_regions();
        let index: HashMap<usize, usize> =
            regions.iter().enumerate().map(|(i, &f)| (f, self.crossings + i)).collect();
        let n = self.crossings + regions.len();
        let mut adj = vec![Vec::new(); n];
        let mut link = |a: usize, b: usize| {
            if a != b && !adj[a].contains(&b) {
                adj[a].push(b);
                adj[b].push(a);
            }
        };
        for h in 0..4 * self.crossings {
            if let Some(&r) = index.get(&label[h]) {
                link(h / 4, r);
            }
        }
        for h in 0..self.half_edge_count() {
            if let (Some(&a), Some(&b)) = (index.get(&label[h]), index.get(&label[self.twin[h]])) {
                link(a, b);
            }
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        adj
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let adj = self.diagram_adjacency();
        let components = count_components(&adj);
        if components > 1 {
            violations.push(Violation::DisconnectedDiagram { components });
        }
        let nu = self.nu();
        for i in 0..nu.len() {
            for j in i + 1..nu.len() {
                if nu[i][j] == 0 {
                    violations.push(Violation::DisjointBranches(i, j));
                }
            }
        }
        ValidationReport { violations, circles: self.census().circles }
    }

    /// Parses the `divide v1` text format, or a list of `polyline` records.
    pub fn parse(text: &str) -> Result<Self> {
        let records: Vec<Vec<&str>> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>())
            .filter(|r| !r.is_empty())
            .collect();
        if records.iter().any(|r| r[0] == "polyline") {
            let polys = records
                .iter()
                .filter(|r| r[0] != "divide")
                .map(|r| crate::polyline::parse_record(r))
                .collect::<Result<Vec<_>>>()?;
            return crate::polyline::from_polylines(&polys);
        }
        let mut crossing_ids = Vec::new();
        let mut endpoint_ids = Vec::new();
        let mut slots: Vec<(&str, usize)> = Vec::new();
        let mut edges = Vec::new();
        let mut boundary_ids: Option<Vec<&str>> = None;
        for r in &records {
            match r[0] {
                "divide" => {
                    if r.get(1) != Some(&"v1") {
                        return Err(Error::MalformedDivide("unsupported divide version".into()));
                    }
                }
                "crossing" if r.len() == 6 => {
                    crossing_ids.push(r[1]);
                    slots.extend(r[2..6].iter().map(|h| (*h, crossing_ids.len() - 1)));
                }
                "endpoint" if r.len() == 3 => endpoint_ids.push((r[1], r[2])),
                "edge" if r.len() == 3 => edges.push((r[1], r[2])),
                "boundary" => boundary_ids = Some(r[1..].to_vec()),
                _ => {
                    return Err(Error::MalformedDivide(format!("bad record `{}`", r.join(" "))))
                }
            }
        }
        let delta = crossing_ids.len();
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, (h, _)) in slots.iter().enumerate() {
            if index.insert(h, i).is_some() {
                return Err(Error::MalformedDivide(format!("half-edge {h} used twice")));
            }
        }
        for (e, (_, h)) in endpoint_ids.iter().enumerate() {
            if index.insert(h, 4 * delta + e).is_some() {
                return Err(Error::MalformedDivide(format!("half-edge {h} used twice")));
            }
        }
        let n = 4 * delta + endpoint_ids.len();
        let mut twin = vec![usize::MAX; n];
        for (a, b) in edges {
            let (Some(&x), Some(&y)) = (index.get(a), index.get(b)) else {
                return Err(Error::MalformedDivide(format!("edge {a} {b} names unknown half-edges")));
            };
            if twin[x] != usize::MAX || twin[y] != usize::MAX || x == y {
                return Err(Error::MalformedDivide(format!("half-edge in edge {a} {b} reused")));
            }
            twin[x] = y;
            twin[y] = x;
        }
        if twin.contains(&usize::MAX) {
            return Err(Error::MalformedDivide("some half-edge has no edge".into()));
        }
        let eindex: HashMap<&str, usize> =
            endpoint_ids.iter().enumerate().map(|(i, (id, _))| (*id, i)).collect();
        let boundary = boundary_ids
            .ok_or_else(|| Error::MalformedDivide("missing boundary record".into()))?
            .iter()
            .map(|id| {
                eindex
                    .get(id)
                    .copied()
                    .ok_or_else(|| Error::MalformedDivide(format!("unknown endpoint {id}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Divide::new(delta, endpoint_ids.len(), twin, boundary)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("divide v1\n");
        for c in 0..self.crossings {
            let _ = writeln!(out, "crossing {c} {} {} {} {}", 4 * c, 4 * c + 1, 4 * c + 2, 4 * c + 3);
        }
        for e in 0..self.endpoints {
            let _ = writeln!(out, "endpoint {e} {}", self.endpoint_half_edge(e));
        }
        for h in 0..self.half_edge_count() {
            if h < self.twin[h] {
                let _ = writeln!(out, "edge {h} {}", self.twin[h]);
            }
        }
        let ids: Vec<String> = self.boundary.iter().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "boundary {}", ids.join(" "));
        out
    }

    /// Triangle faces bounded by three divide edges between distinct
    /// crossings, as `(edge, opposite crossing)` with the edge's half-edge
    /// running counterclockwise around the face.
    pub fn triangle_moves(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for f in self.map.faces() {
            if let Some(t) = self.triangle_at(f.cycle[0]) {
                let h = *t.iter().min().expect("three sides");
                let c = self.map.origin(self.map.face_next(self.map.face_next(h)));
                out.push((h, c));
            }
        }
        out.sort_unstable();
        out
    }

    fn triangle_at(&self, h: usize) -> Option<[usize; 3]> {
        let m = &self.map;
        let t = [h, m.face_next(h), m.face_next(m.face_next(h))];
        if m.face_next(t[2]) != h {
            return None;
        }
        let base = self.half_edge_count();
        let vs = t.map(|x| m.origin(x));
        let sides_ok = t.iter().all(|&x| x < base && !self.is_endpoint(x) && !self.is_endpoint(self.twin[x]));
        let distinct = vs[0] != vs[1] && vs[1] != vs[2] && vs[0] != vs[2];
        (sides_ok && distinct).then_some(t)
    }

    /// Pushes the strand along edge `h` across crossing `c`, where `h` and
    /// `c` bound a triangular region. The three crossings keep their ids.
    pub fn admissible_move(&self, h: usize, c: usize) -> Result<Divide> {
        let not_applicable = || Error::MoveNotApplicable(format!("edge {h} and crossing {c} bound no triangle"));
        if h >= 4 * self.crossings || c >= self.crossings {
            return Err(not_applicable());
        }
        let t = [h, self.twin[h]]
            .into_iter()
            .filter_map(|x| self.triangle_at(x))
            .find(|t| self.map.origin(t[2]) == c)
            .ok_or_else(not_applicable)?;
        let v = t.map(|x| x / 4);
        let opp = |x: usize| self.opposite(x);
        // Outward legs counterclockwise around the triangle.
        let legs = [
            opp(t[0]),
            opp(self.twin[t[2]]),
            opp(t[1]),
            opp(self.twin[t[0]]),
            opp(t[2]),
            opp(self.twin[t[1]]),
        ];
        // Leg 2k+1 and 2k+2 meet at new crossing k, in slots 0 and 1.
        let new_id = |j: usize| {
            let k = (j + 5) % 6 / 2;
            4 * v[k] + (j + 1) % 2
        };
        let mut twin = self.twin.clone();
        for (j, &leg) in legs.iter().enumerate() {
            let outer = self.twin[leg];
            let target = legs.iter().position(|&l| l == outer).map_or(outer, new_id);
            twin[new_id(j)] = target;
            twin[target] = new_id(j);
        }
        for k in 0..3 {
            let a = 4 * v[k] + 2;
            let b = 4 * v[(k + 1) % 3] + 3;
            twin[a] = b;
            twin[b] = a;
        }
        Divide::new(self.crossings, self.endpoints, twin, self.boundary.clone())
    }

    /// Relabelling-invariant code of the closed map, minimized over the
    /// choice of starting endpoint.
    pub fn canonical_code(&self) -> Vec<usize> {
        (0..self.endpoints)
            .map(|e| self.code_from(self.endpoint_half_edge(e)))
            .min()
            .unwrap_or_default()
    }

    fn code_from(&self, start: usize) -> Vec<usize> {
        let m = &self.map;
        let mut label = vec![usize::MAX; m.half_edge_count()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([start]);
        label[start] = 0;
        while let Some(h) = queue.pop_front() {
            order.push(h);
            for x in [m.twin(h), m.next_at_vertex(h)] {
                if label[x] == usize::MAX {
                    label[x] = order.len() + queue.len();
                    queue.push_back(x);
                }
            }
        }
        let mut code = Vec::with_capacity(3 * order.len());
        for &h in &order {
            code.push(label[m.twin(h)]);
            code.push(label[m.next_at_vertex(h)]);
            code.push(usize::from(h >= self.half_edge_count()));
        }
        code
    }
}

fn closed_map(
    crossings: usize,
    endpoints: usize,
    twin: &[usize],
    boundary: &[usize],
) -> Result<PlanarMap> {
    let base = twin.len();
    let n = endpoints;
    let mut all_twin = twin.to_vec();
    for i in 0..n {
        all_twin.push(base + 2 * i + 1);
        all_twin.push(base + 2 * i);
    }
    let mut rotations: Vec<Vec<usize>> =
        (0..crossings).map(|c| (4 * c..4 * c + 4).collect()).collect();
    rotations.resize(crossings + n, Vec::new());
    for (i, &e) in boundary.iter().enumerate() {
        let back = base + 2 * ((i + n - 1) % n) + 1;
        rotations[crossings + e] = vec![base + 2 * i, 4 * crossings + e, back];
    }
    PlanarMap::from_rotations(&rotations, all_twin, Some(base + 1))
        .map_err(|e| Error::MalformedDivide(e.to_string()))
}

pub(crate) fn count_components(adj: &[Vec<usize>]) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut count = 0;
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{chebyshev_divide, generic_lines};

    fn census(d: &Divide) -> (usize, usize, usize) {
        let c = d.census();
        (c.delta, c.r, c.b)
    }

    #[test]
    fn text_round_trip() {
        let d = chebyshev_divide(3, 4).unwrap();
        let back = Divide::parse(&d.to_text()).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.canonical_code(), d.canonical_code());
    }

    #[test]
    fn triangle_move_preserves_census() {
        let d = generic_lines(5).unwrap();
        let moves = d.triangle_moves();
        assert!(!moves.is_empty());
        for &(h, c) in &moves {
            let e = d.admissible_move(h, c).unwrap();
            assert_eq!(census(&e), census(&d));
            assert!(e.validate().is_valid());
        }
    }

    #[test]
    fn triangle_move_is_an_involution() {
        for d in [generic_lines(4).unwrap(), chebyshev_divide(3, 7).unwrap()] {
            for (h, c) in d.triangle_moves() {
                let e = d.admissible_move(h, c).unwrap();
                assert_ne!(e.twins(), d.twins());
                let back = e
                    .triangle_moves()
                    .into_iter()
                    .map(|(h2, c2)| e.admissible_move(h2, c2).unwrap())
                    .find(|x| x.canonical_code() == d.canonical_code());
                assert!(back.is_some(), "no inverse for move ({h}, {c})");
            }
        }
    }

    #[test]
    fn move_needs_a_triangle() {
        let d = chebyshev_divide(2, 3).unwrap();
        assert!(d.triangle_moves().is_empty());
        assert_eq!(d.admissible_move(0, 0).unwrap_err().code(), "MoveNotApplicable");
    }
}
