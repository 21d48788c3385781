//! Polygonal model of the Milnor fiber.
//!
//! Each face of the augmented intersection graph becomes a polygon whose
//! sides alternate between vertical edges (the face's graph edges) and
//! horizontal edges (its corners). Corner `x` is the angle at `origin(x)`
//! from half-edge `x` counterclockwise to `next_at_vertex(x)`; it lies in
//! the face left of `x` and runs from its start on `edge(x)` to its end on
//! `edge(next_at_vertex(x))`. Polygons sharing a vertical edge are glued
//! with a half twist: the start of corner `x` meets the start of corner
//! `twin(x)`, and the end of corner `x` meets the end of corner
//! `prev(twin(next(x)))`.
//!
//! Homology is read off the dual cell structure: a curve is a cyclic list
//! of graph half-edges it crosses, each entering the face on its left.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::divide::{count_components, Divide};
use crate::error::{Error, Result};
use crate::intersection_graph::AugmentedIntersectionGraph;
use crate::invariants::record_from_divide;

/// Corner end: where a horizontal edge meets a vertical one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum End {
    Start,
    End,
}

/// Cyclic sequence of graph half-edges crossed by a curve. Crossing `g`
/// enters the face left of `g`; consecutive crossings share a face.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Curve {
    pub crossings: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subsurface {
    pub vertices: Vec<usize>,
    pub chi: i64,
    pub boundary_count: usize,
    pub genus: usize,
    pub components: usize,
    pub footprint: Footprint,
}

/// Cells making up a subsurface up to collapsing corner strips.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Footprint {
    /// Graph edges (canonical half-edges) whose vertical edge is included.
    pub vertical: Vec<usize>,
    /// Corners whose horizontal edge is included.
    pub horizontal: Vec<usize>,
    /// Faces whose whole polygon is included.
    pub filled: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct FiberComplex {
    graph: AugmentedIntersectionGraph,
    face_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
    face_pos: Vec<usize>,
    orientation: Vec<i8>,
    edge_index: Vec<usize>,
    canonical: Vec<usize>,
    nontree: Vec<usize>,
    coords_inverse: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    boundary: Vec<Curve>,
    chi: i64,
    genus: usize,
}

impl FiberComplex {
    pub fn build(d: &Divide) -> Result<Self> {
        let record = record_from_divide(d)?;
        let graph = AugmentedIntersectionGraph::build(d)?;
        let f = Self::from_graph(graph)?;
        if f.boundary_count() != record.b || f.genus != record.genus || f.chi != 1 - record.mu as i64 {
            return Err(Error::ModelMismatch(format!(
                "fiber has (g, b, chi) = ({}, {}, {}), invariants give ({}, {}, {})",
                f.genus,
                f.boundary_count(),
                f.chi,
                record.genus,
                record.b,
                1 - record.mu as i64
            )));
        }
        Ok(f)
    }

    pub fn from_graph(graph: AugmentedIntersectionGraph) -> Result<Self> {
        let map = graph.map();
        let n = map.half_edge_count();
        let (face_of, nfaces) = map.face_labels();
        let mut faces = vec![Vec::new(); nfaces];
        let mut face_pos = vec![0; n];
        for face in map.faces() {
            for (i, &h) in face.cycle.iter().enumerate() {
                face_pos[h] = i;
            }
            faces[face.id] = face.cycle;
        }
        if let Some(f) = faces.iter().position(|c| c.len() < 2 || c.len() > 3) {
            return Err(Error::FaceCensusViolation(format!("face {f} has {} sides", faces[f].len())));
        }

        // Polygon orientations alternate across every glued edge.
        let mut orientation = vec![0i8; nfaces];
        for s in 0..nfaces {
            if orientation[s] != 0 {
                continue;
            }
            orientation[s] = 1;
            let mut stack = vec![s];
            while let Some(a) = stack.pop() {
                for &h in &faces[a] {
                    let b = face_of[map.twin(h)];
                    if orientation[b] == 0 {
                        orientation[b] = -orientation[a];
                        stack.push(b);
                    } else if orientation[b] == orientation[a] {
                        return Err(Error::ModelMismatch("fiber polygons cannot be oriented".into()));
                    }
                }
            }
        }

        let mut edge_index = vec![usize::MAX; n];
        let mut canonical = Vec::new();
        for h in 0..n {
            if h < map.twin(h) {
                edge_index[h] = canonical.len();
                edge_index[map.twin(h)] = canonical.len();
                canonical.push(h);
            }
        }

        let mu = graph.mu();
        let mut f = FiberComplex {
            graph,
            face_of,
            faces,
            face_pos,
            orientation,
            edge_index,
            canonical,
            nontree: Vec::new(),
            coords_inverse: Vec::new(),
            gram: Vec::new(),
            boundary: Vec::new(),
            chi: nfaces as i64 - (n / 2) as i64,
            genus: 0,
        };
        if f.chi != 1 - mu as i64 {
            return Err(Error::ModelMismatch(format!("chi = {} but mu = {mu}", f.chi)));
        }
        f.boundary = f.trace_boundary();
        let b = f.boundary.len() as i64;
        let twice_genus = 2 - f.chi - b;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::ModelMismatch(format!("chi = {} with {b} boundary curves", f.chi)));
        }
        f.genus = (twice_genus / 2) as usize;
        f.prepare_homology()?;
        f.gram = f.intersection_form();
        let rank = rank(&f.gram);
        if rank != 2 * f.genus {
            return Err(Error::ModelMismatch(format!(
                "intersection form has rank {rank}, expected {}",
                2 * f.genus
            )));
        }
        Ok(f)
    }

    pub fn graph(&self) -> &AugmentedIntersectionGraph {
        &self.graph
    }

    pub fn mu(&self) -> usize {
        self.graph.mu()
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary.len()
    }

    /// Boundary curves pushed slightly inward, oriented with the surface on
    /// their left.
    pub fn boundary_curves(&self) -> &[Curve] {
        &self.boundary
    }

    pub fn polygon_count(&self) -> usize {
        self.faces.len()
    }

    /// Polygon side counts: squares come from bigons, hexagons from triangles.
    pub fn polygon_sides(&self) -> Vec<usize> {
        self.faces.iter().map(|c| 2 * c.len()).collect()
    }

    pub fn face_of(&self, h: usize) -> usize {
        self.face_of[h]
    }

    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Position of a half-edge within its face cycle.
    pub fn face_pos(&self, h: usize) -> usize {
        self.face_pos[h]
    }

    /// +1 where the surface orientation agrees with the plane, else -1.
    pub fn orientation(&self, f: usize) -> i8 {
        self.orientation[f]
    }

    pub fn edge_count(&self) -> usize {
        self.canonical.len()
    }

    pub fn edge_index(&self, h: usize) -> usize {
        self.edge_index[h]
    }

    /// Orientation sign of a crossing relative to its edge's canonical
    /// direction.
    pub fn crossing_sign(&self, h: usize) -> i64 {
        if self.canonical[self.edge_index[h]] == h {
            1
        } else {
            -1
        }
    }

    /// Algebraic intersection numbers of the distinguished cycles.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    fn map(&self) -> &crate::planar_map::PlanarMap {
        self.graph.map()
    }

    /// Partner of a corner end across its vertical edge.
    fn through(&self, x: usize, end: End) -> (usize, End) {
        let m = self.map();
        match end {
            End::Start => (m.twin(x), End::Start),
            End::End => (m.prev_at_vertex(m.twin(m.next_at_vertex(x))), End::End),
        }
    }

    fn trace_boundary(&self) -> Vec<Curve> {
        let m = self.map();
        let n = m.half_edge_count();
        let mut seen = vec![false; 2 * n];
        let node = |x: usize, e: End| 2 * x + usize::from(e == End::End);
        let mut curves = Vec::new();
        for start in 0..n {
            if seen[node(start, End::Start)] {
                continue;
            }
            // Walk corners; record (corner, traversed start -> end).
            let mut steps: Vec<(usize, bool)> = Vec::new();
            let (mut x, mut at) = (start, End::Start);
            loop {
                seen[node(x, at)] = true;
                let forward = at == End::Start;
                let other = if forward { End::End } else { End::Start };
                seen[node(x, other)] = true;
                steps.push((x, forward));
                let (y, e) = self.through(x, other);
                if seen[node(y, e)] {
                    break;
                }
                x = y;
                at = e;
            }
            // Keep the surface on the left: planar-counterclockwise means
            // end -> start, so flip where the polygon is reversed.
            let (x0, f0) = steps[0];
            let wants_forward = self.orientation[self.face_of[x0]] < 0;
            if f0 != wants_forward {
                steps.reverse();
                for s in &mut steps {
                    s.1 = !s.1;
                }
            }
            let crossings = steps
                .iter()
                .map(|&(x, forward)| if forward { m.next_at_vertex(x) } else { m.twin(x) })
                .collect();
            curves.push(Curve { crossings });
        }
        curves
    }

    /// The distinguished vanishing cycle of a bounded vertex.
    pub fn vanishing_cycle(&self, v: usize) -> Curve {
        Curve { crossings: self.graph.rotation(v).to_vec() }
    }

    /// Checks the crossing sequence is a closed path through the polygons.
    pub fn check_curve(&self, c: &Curve) -> Result<()> {
        let k = c.crossings.len();
        if k == 0 {
            return Err(Error::NotEmbedded("empty curve".into()));
        }
        for i in 0..k {
            let g = c.crossings[i];
            let h = c.crossings[(i + 1) % k];
            if g >= self.map().half_edge_count() || h >= self.map().half_edge_count() {
                return Err(Error::NotEmbedded(format!("unknown crossing {g} or {h}")));
            }
            if self.face_of[self.map().twin(h)] != self.face_of[g] {
                return Err(Error::NotEmbedded(format!("crossings {g} and {h} share no face")));
            }
        }
        Ok(())
    }

    /// Signed crossing count per graph edge.
    pub fn edge_vector(&self, c: &Curve) -> Vec<i64> {
        let mut v = vec![0; self.edge_count()];
        for &g in &c.crossings {
            v[self.edge_index[g]] += self.crossing_sign(g);
        }
        v
    }

    fn prepare_homology(&mut self) -> Result<()> {
        let m = self.graph.map();
        let nfaces = self.faces.len();
        let mut in_tree = vec![false; self.edge_count()];
        let mut reached = vec![false; nfaces];
        reached[0] = true;
        let mut stack = vec![0];
        while let Some(a) = stack.pop() {
            for &h in &self.faces[a] {
                let b = self.face_of[m.twin(h)];
                if !reached[b] {
                    reached[b] = true;
                    in_tree[self.edge_index[h]] = true;
                    stack.push(b);
                }
            }
        }
        self.nontree = (0..self.edge_count()).filter(|&e| !in_tree[e]).collect();
        let mu = self.mu();
        if self.nontree.len() != mu {
            return Err(Error::ModelMismatch(format!(
                "cycle rank {} differs from mu = {mu}",
                self.nontree.len()
            )));
        }
        // Column v: distinguished cycle v restricted to non-tree edges.
        let mut b = vec![vec![BigRational::zero(); mu]; mu];
        for v in 0..mu {
            let vec = self.edge_vector(&self.vanishing_cycle(v));
            for (row, &e) in self.nontree.iter().enumerate() {
                b[row][v] = BigRational::from_integer(vec[e].into());
            }
        }
        let inv = invert(b).ok_or_else(|| {
            Error::ModelMismatch("vanishing cycles do not span homology".into())
        })?;
        let mut out = vec![vec![0i64; mu]; mu];
        for i in 0..mu {
            for j in 0..mu {
                let x = &inv[i][j];
                if !x.is_integer() {
                    return Err(Error::ModelMismatch("vanishing cycles are not a Z-basis".into()));
                }
                out[i][j] = x.to_integer().to_i64().expect("small entries");
            }
        }
        self.coords_inverse = out;
        Ok(())
    }

    /// Coordinates of a cycle in the basis of distinguished cycles.
    pub fn coordinates(&self, c: &Curve) -> Vec<i64> {
        let x = self.edge_vector(c);
        let mu = self.mu();
        (0..mu)
            .map(|i| (0..mu).map(|j| self.coords_inverse[i][j] * x[self.nontree[j]]).sum())
            .collect()
    }

    /// Orientation-preserving sign convention: a crossing of `a_u` into the
    /// face entered from `u` towards `w` counts `-orientation` of the face it
    /// leaves.
    fn intersection_form(&self) -> Vec<Vec<i64>> {
        let mu = self.mu();
        let m = self.graph.map();
        let mut gram = vec![vec![0i64; mu]; mu];
        for g in 0..m.half_edge_count() {
            let (u, w) = (m.origin(g), m.dest(g));
            if u < mu && w < mu {
                gram[u][w] -= i64::from(self.orientation[self.face_of[m.twin(g)]]);
            }
        }
        gram
    }

    /// Algebraic intersection of two classes in distinguished coordinates.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let mu = self.mu();
        let mut s = 0;
        for i in 0..mu {
            if x[i] == 0 {
                continue;
            }
            for j in 0..mu {
                s += x[i] * self.gram[i][j] * y[j];
            }
        }
        s
    }

    fn is_filled(&self, face: usize, in_c: &[bool]) -> bool {
        let m = self.map();
        let mut seen = Vec::new();
        for &h in &self.faces[face] {
            let v = m.origin(h);
            if in_c[v] && !seen.contains(&v) {
                seen.push(v);
            }
        }
        seen.len() >= 2
    }

    /// Regular neighbourhood of the distinguished cycles of `c`, with every
    /// polygon holding two of their corners filled in.
    pub fn subsurface(&self, c: &[usize]) -> Subsurface {
        let m = self.map();
        let n = m.half_edge_count();
        let mu = self.mu();
        let mut in_c = vec![false; mu + 1];
        let mut vertices: Vec<usize> = c.iter().copied().filter(|&v| v < mu).collect();
        vertices.sort_unstable();
        vertices.dedup();
        for &v in &vertices {
            in_c[v] = true;
        }
        let filled: Vec<bool> = (0..self.faces.len()).map(|f| self.is_filled(f, &in_c)).collect();
        let vertical: Vec<bool> =
            (0..n).map(|h| in_c[m.origin(h)] || in_c[m.dest(h)]).collect();
        let horizontal: Vec<bool> =
            (0..n).map(|x| in_c[m.origin(x)] || filled[self.face_of[x]]).collect();
        let v_count = self.canonical.iter().filter(|&&h| vertical[h]).count() as i64;
        let h_count = horizontal.iter().filter(|&&b| b).count() as i64;
        let f_count = filled.iter().filter(|&&b| b).count() as i64;
        let chi = 2 * v_count - (v_count + h_count) + f_count;

        // Boundary: ends on included vertical edges, joined by corners or by
        // the inner arcs of corner strips.
        let node = |x: usize, e: End| 2 * x + usize::from(e == End::End);
        let present = |x: usize, e: End| match e {
            End::Start => vertical[x],
            End::End => vertical[m.next_at_vertex(x)],
        };
        let phi = |x: usize| m.face_next(x);
        let phi_inv = |x: usize| m.twin(m.next_at_vertex(x));
        let in_face = |x: usize, e: End| -> (usize, End) {
            if horizontal[x] {
                match e {
                    End::Start => (x, End::End),
                    End::End => (x, End::Start),
                }
            } else {
                match e {
                    End::Start => (phi(phi(x)), End::End),
                    End::End => (phi_inv(phi_inv(x)), End::Start),
                }
            }
        };
        let mut seen = vec![false; 2 * n];
        let mut boundary_count = 0;
        for x0 in 0..n {
            for e0 in [End::Start, End::End] {
                if !present(x0, e0) || seen[node(x0, e0)] {
                    continue;
                }
                boundary_count += 1;
                let (mut x, mut e) = (x0, e0);
                loop {
                    seen[node(x, e)] = true;
                    let (y, f) = in_face(x, e);
                    seen[node(y, f)] = true;
                    let (z, g) = self.through(y, f);
                    if seen[node(z, g)] {
                        break;
                    }
                    x = z;
                    e = g;
                }
            }
        }

        let adj = self.graph.bounded_adjacency();
        let index: Vec<Option<usize>> = {
            let mut idx = vec![None; mu];
            for (i, &v) in vertices.iter().enumerate() {
                idx[v] = Some(i);
            }
            idx
        };
        let sub_adj: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&v| adj[v].iter().filter_map(|&w| index[w]).collect())
            .collect();
        let components = count_components(&sub_adj);
        let twice_genus = 2 * components as i64 - chi - boundary_count as i64;
        let footprint = Footprint {
            vertical: self.canonical.iter().copied().filter(|&h| vertical[h]).collect(),
            horizontal: (0..n).filter(|&x| horizontal[x]).collect(),
            filled: (0..self.faces.len()).filter(|&f| filled[f]).collect(),
        };
        Subsurface {
            vertices,
            chi,
            boundary_count,
            genus: (twice_genus.max(0) / 2) as usize,
            components,
            footprint,
        }
    }

    /// Number of arcs of the distinguished cycle of `v` inside the
    /// subsurface of `c`, read cell by cell; 1 when the cycle lies inside.
    pub fn cycle_components_in(&self, v: usize, c: &[usize]) -> usize {
        let m = self.map();
        let mu = self.mu();
        let mut in_c = vec![false; mu + 1];
        for &u in c {
            in_c[u] = true;
        }
        let rot = self.graph.rotation(v);
        let mut pieces = Vec::with_capacity(2 * rot.len());
        for &h in rot {
            pieces.push(in_c[m.dest(h)]);
            pieces.push(self.is_filled(self.face_of[h], &in_c));
        }
        count_runs(&pieces)
    }
}

/// Runs of `true` in a cyclic sequence; an all-true sequence is one run.
pub fn count_runs(xs: &[bool]) -> usize {
    if xs.iter().all(|&b| b) {
        return usize::from(!xs.is_empty());
    }
    (0..xs.len()).filter(|&i| xs[i] && !xs[(i + xs.len() - 1) % xs.len()]).count()
}

/// Surface spanned by curves meeting once along the edges of a tree:
/// plumb annuli, with rotation (v+, w+, v-, w-) at each intersection.
pub fn abstract_tree_surface(n: usize, edges: &[(usize, usize)]) -> Result<(usize, usize)> {
    if n == 0 {
        return Err(Error::NotATree("empty graph".into()));
    }
    if edges.len() + 1 != n {
        return Err(Error::NotATree(format!("{n} vertices and {} edges", edges.len())));
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a >= n || b >= n || a == b {
            return Err(Error::NotATree(format!("bad edge ({a}, {b})")));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    if count_components(&adj) != 1 {
        return Err(Error::NotATree("graph is disconnected".into()));
    }
    // Each curve is a cycle through its intersection points. A ribbon
    // vertex per intersection; each curve contributes edges between
    // consecutive points, or a single loop when isolated.
    // Darts: for edge e=(a,b) the point has darts [a+, b+, a-, b-].
    let mut order: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        order[a].push((e, true));
        order[b].push((e, false));
    }
    let dart = |e: usize, k: usize| 4 * e + k;
    let total = 4 * edges.len();
    let mut twin = vec![usize::MAX; total];
    for pts in &order {
        let k = pts.len();
        for i in 0..k {
            let (e, first) = pts[i];
            let (f, first_f) = pts[(i + 1) % k];
            let out = dart(e, if first { 0 } else { 1 });
            let back = dart(f, if first_f { 2 } else { 3 });
            twin[out] = back;
            twin[back] = out;
        }
    }
    // Faces of the ribbon graph: next(d) = rotation successor of twin(d).
    let succ = |d: usize| 4 * (d / 4) + (d % 4 + 1) % 4;
    let mut seen = vec![false; total];
    let mut faces = 0;
    for d in 0..total {
        if seen[d] {
            continue;
        }
        faces += 1;
        let mut x = d;
        while !seen[x] {
            seen[x] = true;
            x = succ(twin[x]);
        }
    }
    let chi = -(edges.len() as i64);
    let b = if edges.is_empty() { 2 } else { faces };
    let twice_genus = 2 - chi - b as i64;
    Ok(((twice_genus / 2) as usize, b))
}

fn invert(mut a: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let k = a[r][col].clone();
                for j in 0..n {
                    let t = &k * &a[col][j];
                    a[r][j] = &a[r][j] - t;
                    let t = &k * &inv[col][j];
                    inv[r][j] = &inv[r][j] - t;
                }
            }
        }
    }
    Some(inv)
}

/// Rank over the rationals.
pub fn rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let k = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let t = &k * &a[r][j];
                    a[i][j] = &a[i][j] - t;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{chebyshev_divide, generic_lines};

    fn fiber(d: Divide) -> FiberComplex {
        FiberComplex::build(&d).unwrap()
    }

    #[test]
    fn a2_fiber() {
        let f = fiber(chebyshev_divide(2, 3).unwrap());
        assert_eq!((f.genus(), f.boundary_count(), f.chi()), (1, 1, -1));
        assert_eq!(f.gram()[0][1].abs(), 1);
        assert_eq!(f.gram()[0][1], -f.gram()[1][0]);
        let mut sides = f.polygon_sides();
        sides.sort_unstable();
        assert_eq!(sides, vec![4, 4, 6, 6]);
    }

    #[test]
    fn vanishing_cycles_are_a_basis() {
        let f = fiber(generic_lines(4).unwrap());
        for v in 0..f.mu() {
            let c = f.vanishing_cycle(v);
            f.check_curve(&c).unwrap();
            let x = f.coordinates(&c);
            assert_eq!(x.iter().sum::<i64>(), 1);
            assert_eq!(x[v], 1);
        }
    }

    #[test]
    fn boundary_is_radical() {
        for d in [chebyshev_divide(3, 3).unwrap(), chebyshev_divide(3, 5).unwrap(), generic_lines(5).unwrap()] {
            let f = fiber(d);
            let mut total = vec![0; f.mu()];
            for c in f.boundary_curves() {
                let x = f.coordinates(c);
                for v in 0..f.mu() {
                    total[v] += x[v];
                    let a = f.coordinates(&f.vanishing_cycle(v));
                    assert_eq!(f.pairing(&x, &a), 0);
                }
            }
            assert!(total.iter().all(|&t| t == 0));
        }
    }

    #[test]
    fn subsurfaces() {
        let f = fiber(chebyshev_divide(3, 7).unwrap());
        let s = f.subsurface(&[2]);
        assert_eq!((s.genus, s.boundary_count, s.chi), (0, 2, 0));
        let all: Vec<usize> = (0..f.mu()).collect();
        let s = f.subsurface(&all);
        assert_eq!((s.genus, s.boundary_count, s.chi), (f.genus(), f.boundary_count(), f.chi()));
        let adj = f.graph().bounded_adjacency();
        let w = adj[0][0];
        let s = f.subsurface(&[0, w]);
        assert_eq!((s.genus, s.boundary_count, s.chi), (1, 1, -1));
    }

    #[test]
    fn cell_oracle_matches_footprint() {
        let f = fiber(generic_lines(5).unwrap());
        let m = f.graph().map();
        let c: Vec<usize> = (0..f.mu()).filter(|v| v % 3 == 0).collect();
        let s = f.subsurface(&c);
        for v in (0..f.mu()).filter(|v| v % 3 != 0) {
            let mut cells = Vec::new();
            for &h in f.graph().rotation(v) {
                cells.push(s.footprint.vertical.contains(&h.min(m.twin(h))));
                cells.push(s.footprint.filled.contains(&f.face_of(h)));
            }
            assert_eq!(f.cycle_components_in(v, &c), count_runs(&cells));
        }
    }

    #[test]
    fn runs() {
        assert_eq!(count_runs(&[true, false, true]), 1);
        assert_eq!(count_runs(&[true, false, true, false]), 2);
        assert_eq!(count_runs(&[true, true]), 1);
        assert_eq!(count_runs(&[false]), 0);
    }

    #[test]
    fn tree_surfaces() {
        assert_eq!(abstract_tree_surface(1, &[]).unwrap(), (0, 2));
        assert_eq!(abstract_tree_surface(2, &[(0, 1)]).unwrap(), (1, 1));
        assert_eq!(abstract_tree_surface(3, &[(0, 1), (1, 2)]).unwrap(), (1, 2));
        let tripod = [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9)];
        assert_eq!(abstract_tree_surface(10, &tripod).unwrap(), (5, 1));
        assert_eq!(abstract_tree_surface(3, &[(0, 1), (1, 2), (2, 0)]).unwrap_err().code(), "NotATree");
        assert_eq!(abstract_tree_surface(4, &[(0, 1), (1, 0), (2, 3)]).unwrap_err().code(), "NotATree");
    }
}
