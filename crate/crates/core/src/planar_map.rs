//! Combinatorial planar maps stored as rotation systems on half-edges.
//!
//! A half-edge `h` leaves `origin(h)`. `next_at_vertex` walks the half-edges
//! around a vertex counterclockwise. Faces are traced with the face on the
//! left: `face_next(h) = prev_at_vertex(twin(h))`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarMap {
    twin: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    origin: Vec<usize>,
    vertex_count: usize,
    outer: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub cycle: Vec<usize>,
    pub bounded: bool,
}

/// Links between a map and its dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCorrespondence {
    /// Dual vertex `f` is primal face `f`.
    pub face_of_primal: Vec<usize>,
    /// Primal half-edge crossed by each dual half-edge.
    pub primal_of_dual: Vec<usize>,
    /// Dual half-edge for each primal half-edge, `None` when self-adjacent.
    pub dual_of_primal: Vec<Option<usize>>,
}

impl PlanarMap {
    /// Builds a map from counterclockwise rotation lists of half-edge ids.
    /// Vertices with an empty list are isolated.
    pub fn from_rotations(
        rotations: &[Vec<usize>],
        twin: Vec<usize>,
        outer: Option<usize>,
    ) -> Result<Self> {
        let n = twin.len();
        let mut next = vec![usize::MAX; n];
        let mut origin = vec![usize::MAX; n];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &h) in rot.iter().enumerate() {
                if h >= n {
                    return Err(Error::MalformedMap(format!("half-edge {h} out of range")));
                }
                if origin[h] != usize::MAX {
                    return Err(Error::MalformedMap(format!("half-edge {h} listed twice")));
                }
                origin[h] = v;
                next[h] = rot[(i + 1) % rot.len()];
            }
        }
        if let Some(h) = origin.iter().position(|&o| o == usize::MAX) {
            return Err(Error::MalformedMap(format!("half-edge {h} has no vertex")));
        }
        Self::new(twin, next, origin, rotations.len(), outer)
    }

    pub fn new(
        twin: Vec<usize>,
        next: Vec<usize>,
        origin: Vec<usize>,
        vertex_count: usize,
        outer: Option<usize>,
    ) -> Result<Self> {
        let n = twin.len();
        if next.len() != n || origin.len() != n {
            return Err(Error::MalformedMap("array lengths differ".into()));
        }
        for h in 0..n {
            let t = twin[h];
            if t >= n || t == h || twin[t] != h {
                return Err(Error::MalformedMap(format!("twin is not an involution at {h}")));
            }
            if origin[h] >= vertex_count {
                return Err(Error::MalformedMap(format!("half-edge {h} has bad origin")));
            }
        }
        let mut prev = vec![usize::MAX; n];
        for h in 0..n {
            let s = next[h];
            if s >= n || prev[s] != usize::MAX {
                return Err(Error::MalformedMap("rotation is not a permutation".into()));
            }
            if origin[s] != origin[h] {
                return Err(Error::MalformedMap(format!("rotation leaves vertex at {h}")));
            }
            prev[s] = h;
        }
        let mut seen_vertex = vec![false; vertex_count];
        let mut seen = vec![false; n];
        for h in 0..n {
            if seen[h] {
                continue;
            }
            let v = origin[h];
            if seen_vertex[v] {
                return Err(Error::MalformedMap(format!("vertex {v} has two rotation cycles")));
            }
            seen_vertex[v] = true;
            let mut x = h;
            while !seen[x] {
                seen[x] = true;
                x = next[x];
            }
        }
        if let Some(o) = outer {
            if o >= n {
                return Err(Error::MalformedMap("outer half-edge out of range".into()));
            }
        }
        Ok(PlanarMap { twin, next, prev, origin, vertex_count, outer })
    }

    pub fn half_edge_count(&self) -> usize {
        self.twin.len()
    }

    pub fn edge_count(&self) -> usize {
        self.twin.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn twin(&self, h: usize) -> usize {
        self.twin[h]
    }

    pub fn next_at_vertex(&self, h: usize) -> usize {
        self.next[h]
    }

    pub fn prev_at_vertex(&self, h: usize) -> usize {
        self.prev[h]
    }

    pub fn origin(&self, h: usize) -> usize {
        self.origin[h]
    }

    pub fn dest(&self, h: usize) -> usize {
        self.origin[self.twin[h]]
    }

    pub fn face_next(&self, h: usize) -> usize {
        self.prev[self.twin[h]]
    }

    pub fn outer_half_edge(&self) -> Option<usize> {
        self.outer
    }

    /// Counterclockwise half-edges leaving `v`.
    pub fn rotation(&self, v: usize) -> Vec<usize> {
        match self.origin.iter().position(|&o| o == v) {
            None => Vec::new(),
            Some(start) => self.orbit(start, |h| self.next[h]),
        }
    }

    pub fn rotations(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertex_count];
        let mut seen = vec![false; self.half_edge_count()];
        for h in 0..self.half_edge_count() {
            if !seen[h] {
                let orbit = self.orbit(h, |x| self.next[x]);
                for &x in &orbit {
                    seen[x] = true;
                }
                out[self.origin[h]] = orbit;
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.origin.iter().filter(|&&o| o == v).count()
    }

    fn orbit(&self, start: usize, step: impl Fn(usize) -> usize) -> Vec<usize> {
        let mut out = vec![start];
        let mut x = step(start);
        while x != start {
            out.push(x);
            x = step(x);
        }
        out
    }

    /// Face id of every half-edge, plus the number of faces.
    pub fn face_labels(&self) -> (Vec<usize>, usize) {
        let n = self.half_edge_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for h in 0..n {
            if label[h] == usize::MAX {
                let mut x = h;
                while label[x] == usize::MAX {
                    label[x] = count;
                    x = self.face_next(x);
                }
                count += 1;
            }
        }
        (label, count)
    }

    /// Connected component of every vertex.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.vertex_count];
        let mut adj = vec![Vec::new(); self.vertex_count];
        for h in 0..self.half_edge_count() {
            adj[self.origin[h]].push(self.dest(h));
        }
        let mut count = 0;
        for s in 0..self.vertex_count {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Faces as boundary cycles. The face holding the outer half-edge is
    /// unbounded; a component without it gets its longest face marked
    /// unbounded so each component has exactly one.
    pub fn faces(&self) -> Vec<Face> {
        let (label, count) = self.face_labels();
        let mut faces: Vec<Face> = (0..count)
            .map(|id| Face { id, cycle: Vec::new(), bounded: true })
            .collect();
        let mut done = vec![false; count];
        for h in 0..self.half_edge_count() {
            let f = label[h];
            if !done[f] {
                done[f] = true;
                faces[f].cycle = self.orbit(h, |x| self.face_next(x));
            }
        }
        let (comp, ncomp) = self.components();
        let mut chosen: Vec<Option<usize>> = vec![None; ncomp];
        if let Some(o) = self.outer {
            chosen[comp[self.origin[o]]] = Some(label[o]);
        }
        for f in &faces {
            let c = comp[self.origin[f.cycle[0]]];
            let better = match chosen[c] {
                None => true,
                Some(g) => {
                    Some(g) != self.outer.map(|o| label[o])
                        && faces[g].cycle.len() < f.cycle.len()
                }
            };
            if better {
                chosen[c] = Some(f.id);
            }
        }
        for f in chosen.into_iter().flatten() {
            faces[f].bounded = false;
        }
        faces
    }

    /// Checks V - E + F = 2 on every component, counting an isolated vertex
    /// as one vertex and one face.
    pub fn check_euler(&self) -> Result<()> {
        let (comp, ncomp) = self.components();
        let (label, nfaces) = self.face_labels();
        let mut v = vec![0i64; ncomp];
        let mut e2 = vec![0i64; ncomp];
        let mut f = vec![0i64; ncomp];
        for x in 0..self.vertex_count {
            v[comp[x]] += 1;
        }
        let mut face_comp = vec![usize::MAX; nfaces];
        for h in 0..self.half_edge_count() {
            let c = comp[self.origin[h]];
            e2[c] += 1;
            face_comp[label[h]] = c;
        }
        for c in face_comp {
            f[c] += 1;
        }
        for c in 0..ncomp {
            let faces = if e2[c] == 0 { 1 } else { f[c] };
            let chi = v[c] - e2[c] / 2 + faces;
            if chi != 2 {
                return Err(Error::MalformedMap(format!(
                    "component {c} has V - E + F = {chi}"
                )));
            }
        }
        Ok(())
    }

    /// Keeps the marked vertices and the edges between them. Returns the new
    /// map and the old-to-new vertex and half-edge indices.
    pub fn induced(
        &self,
        keep: &[bool],
    ) -> Result<(PlanarMap, Vec<Option<usize>>, Vec<Option<usize>>)> {
        let mut vmap = vec![None; self.vertex_count];
        let mut nv = 0;
        for v in 0..self.vertex_count {
            if keep[v] {
                vmap[v] = Some(nv);
                nv += 1;
            }
        }
        let mut hmap = vec![None; self.half_edge_count()];
        let mut nh = 0;
        for h in 0..self.half_edge_count() {
            if keep[self.origin[h]] && keep[self.dest(h)] {
                hmap[h] = Some(nh);
                nh += 1;
            }
        }
        let mut rotations = vec![Vec::new(); nv];
        for (v, rot) in self.rotations().into_iter().enumerate() {
            if let Some(nvx) = vmap[v] {
                rotations[nvx] = rot.iter().filter_map(|&h| hmap[h]).collect();
            }
        }
        let mut twin = vec![0; nh];
        for h in 0..self.half_edge_count() {
            if let Some(x) = hmap[h] {
                twin[x] = hmap[self.twin[h]].expect("twin kept with its edge");
            }
        }
        let outer = self.outer.and_then(|o| hmap[o]);
        let map = PlanarMap::from_rotations(&rotations, twin, outer)?;
        Ok((map, vmap, hmap))
    }
}

/// Planar dual: one vertex per face, one edge per primal edge separating two
/// distinct faces. The rotation at a dual vertex follows its face cycle.
pub fn dual(map: &PlanarMap) -> Result<(PlanarMap, DualCorrespondence)> {
    let (label, nfaces) = map.face_labels();
    let n = map.half_edge_count();
    let mut dual_of_primal = vec![None; n];
    let mut primal_of_dual = Vec::new();
    for h in 0..n {
        if label[h] != label[map.twin(h)] {
            dual_of_primal[h] = Some(primal_of_dual.len());
            primal_of_dual.push(h);
        }
    }
    let twin: Vec<usize> = primal_of_dual
        .iter()
        .map(|&h| dual_of_primal[map.twin(h)].expect("twin separates the same faces"))
        .collect();
    let mut rotations = vec![Vec::new(); nfaces];
    for face in map.faces() {
        rotations[face.id] = face.cycle.iter().filter_map(|&h| dual_of_primal[h]).collect();
    }
    let outer = map.outer_half_edge().and_then(|o| {
        let f = label[o];
        map.faces()[f].cycle.iter().find_map(|&h| dual_of_primal[map.twin(h)])
    });
    let d = PlanarMap::from_rotations(&rotations, twin, outer)?;
    Ok((
        d,
        DualCorrespondence { face_of_primal: (0..nfaces).collect(), primal_of_dual, dual_of_primal },
    ))
}

/// Dual with the vertex of the unbounded face removed. Vertices are the
/// bounded faces in increasing face id.
pub fn bounded_dual(map: &PlanarMap) -> Result<PlanarMap> {
    let faces = map.faces();
    let (d, _) = dual(map)?;
    let keep: Vec<bool> = faces.iter().map(|f| f.bounded).collect();
    let (mut b, _, hmap) = d.induced(&keep)?;
    // The faces around the removed vertex merge into the new outer face.
    if let Some(inf) = faces.iter().position(|f| !f.bounded) {
        let (label, _) = d.face_labels();
        let around: Vec<usize> = d.rotation(inf).iter().map(|&g| label[g]).collect();
        b.outer = (0..d.half_edge_count())
            .find(|&h| hmap[h].is_some() && around.contains(&label[h]))
            .and_then(|h| hmap[h]);
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle_map(k: usize) -> PlanarMap {
        // Vertex i has out-edges 2i (to i+1) and 2i+1 (to i-1).
        let mut twin = vec![0; 2 * k];
        for i in 0..k {
            let j = (i + 1) % k;
            twin[2 * i] = 2 * j + 1;
            twin[2 * j + 1] = 2 * i;
        }
        let rotations: Vec<Vec<usize>> = (0..k).map(|i| vec![2 * i, 2 * i + 1]).collect();
        PlanarMap::from_rotations(&rotations, twin, Some(1)).unwrap()
    }

    #[test]
    fn square_has_two_faces() {
        let m = cycle_map(4);
        let faces = m.faces();
        assert_eq!(faces.len(), 2);
        assert_eq!(faces.iter().filter(|f| !f.bounded).count(), 1);
        m.check_euler().unwrap();
    }

    #[test]
    fn square_dual_is_one_edge() {
        let (d, corr) = dual(&cycle_map(4)).unwrap();
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.edge_count(), 4);
        assert_eq!(corr.primal_of_dual.len(), 8);
        let b = bounded_dual(&cycle_map(4)).unwrap();
        assert_eq!(b.vertex_count(), 1);
        assert_eq!(b.edge_count(), 0);
        let t = bounded_dual(&cycle_map(3)).unwrap();
        assert_eq!(t.vertex_count(), 1);
    }

    #[test]
    fn rejects_broken_involution() {
        let err = PlanarMap::from_rotations(&[vec![0, 1]], vec![0, 1], None).unwrap_err();
        assert_eq!(err.code(), "MalformedMap");
        let err = PlanarMap::new(vec![1, 0], vec![0, 0], vec![0, 0], 1, None).unwrap_err();
        assert_eq!(err.code(), "MalformedMap");
    }

    #[test]
    fn single_vertex_with_loops() {
        // One vertex, two loops a and b interleaved: a, b, a', b'.
        let m = PlanarMap::from_rotations(&[vec![0, 1, 2, 3]], vec![2, 3, 0, 1], None).unwrap();
        assert!(m.check_euler().is_err());
        // Nested order a, a', b, b' is planar.
        let m = PlanarMap::from_rotations(&[vec![0, 1, 2, 3]], vec![1, 0, 3, 2], None).unwrap();
        m.check_euler().unwrap();
        assert_eq!(m.faces().len(), 3);
    }
}
