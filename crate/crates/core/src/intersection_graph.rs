//! Blowup of a divide and its planar dual, the augmented intersection graph.
//!
//! Vertex ids: saddles `0..delta` by crossing, extrema `delta..delta + r` in
//! region order, and the unbounded vertex last, so bounded ids are `0..mu`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::divide::Divide;
use crate::error::{Error, Result};
use crate::planar_map::{dual, PlanarMap};

/// The blowup map: every crossing becomes a 4-cycle. Blowup vertex `h` for
/// `h < half_edge_count()` is the point where divide half-edge `h` leaves its
/// crossing circle (or its endpoint). Arc `H + 8c + 2k` runs counterclockwise
/// from slot `k` to slot `k + 1` of crossing `c`.
pub fn blowup(d: &Divide) -> PlanarMap {
    let base = d.half_edge_count();
    let delta = d.crossing_count();
    let mut twin = d.twins().to_vec();
    twin.resize(base + 8 * delta, 0);
    for a in 0..4 * delta {
        twin[base + 2 * a] = base + 2 * a + 1;
        twin[base + 2 * a + 1] = base + 2 * a;
    }
    let mut rotations = Vec::with_capacity(base);
    for c in 0..delta {
        for k in 0..4 {
            let fwd = base + 8 * c + 2 * k;
            let back = base + 8 * c + 2 * ((k + 3) % 4) + 1;
            rotations.push(vec![4 * c + k, fwd, back]);
        }
    }
    for e in 0..d.endpoint_count() {
        rotations.push(vec![d.endpoint_half_edge(e)]);
    }
    let outer = d.endpoint_half_edge(d.boundary()[0]);
    PlanarMap::from_rotations(&rotations, twin, Some(outer)).expect("blowup of a valid divide")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VertexKind {
    Saddle { crossing: usize },
    Extremum { region: usize },
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct AugmentedIntersectionGraph {
    map: PlanarMap,
    kinds: Vec<VertexKind>,
    infinity: usize,
    adjacency: Vec<Vec<usize>>,
    merged: Vec<(usize, usize, usize)>,
    blowup_edge: Vec<usize>,
    rotations: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceCensus {
    pub bigons: usize,
    pub triangles: usize,
}

impl AugmentedIntersectionGraph {
    pub fn build(d: &Divide) -> Result<Self> {
        let b = blowup(d);
        let base = d.half_edge_count();
        let (label, nfaces) = b.face_labels();
        let (dmap, corr) = dual(&b)?;
        let outer_face = label[d.endpoint_half_edge(d.boundary()[0])];
        let (closed_label, _) = d.closed_map().face_labels();
        let regions = d.bounded_regions();
        let delta = d.crossing_count();
        let mu = delta + regions.len();

        let mut new_id = vec![usize::MAX; nfaces];
        let mut kinds = vec![VertexKind::Unbounded; mu + 1];
        new_id[outer_face] = mu;
        for c in 0..delta {
            let f = label[base + 8 * c];
            if new_id[f] != usize::MAX {
                return Err(Error::FaceCensusViolation(format!("crossing circle {c} is not a face")));
            }
            new_id[f] = c;
            kinds[c] = VertexKind::Saddle { crossing: c };
        }
        for h in 0..base {
            let f = label[h];
            if new_id[f] != usize::MAX {
                continue;
            }
            let region = regions.iter().position(|&g| g == closed_label[h]).ok_or_else(|| {
                Error::FaceCensusViolation(format!("blowup face of half-edge {h} is not a region"))
            })?;
            new_id[f] = delta + region;
            kinds[delta + region] = VertexKind::Extremum { region };
        }
        if new_id.contains(&usize::MAX) || kinds[delta..mu].contains(&VertexKind::Unbounded) {
            return Err(Error::FaceCensusViolation(format!(
                "blowup has {nfaces} faces, expected {}",
                mu + 1
            )));
        }

        let old_rot = dmap.rotations();
        let mut rotations = vec![Vec::new(); mu + 1];
        for (f, rot) in old_rot.into_iter().enumerate() {
            rotations[new_id[f]] = rot;
        }
        let twin: Vec<usize> = (0..dmap.half_edge_count()).map(|h| dmap.twin(h)).collect();
        let map = PlanarMap::from_rotations(&rotations, twin, None)?;

        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for h in 0..map.half_edge_count() {
            let (u, w) = (map.origin(h), map.dest(h));
            if u < w {
                *counts.entry((u, w)).or_default() += 1;
            }
        }
        let mut adjacency = vec![Vec::new(); mu + 1];
        let mut merged = Vec::new();
        for (&(u, w), &m) in &counts {
            adjacency[u].push(w);
            adjacency[w].push(u);
            if m > 1 {
                merged.push((u, w, m));
            }
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }
        let rotations = map.rotations();
        let g = AugmentedIntersectionGraph {
            map,
            kinds,
            infinity: mu,
            adjacency,
            merged,
            blowup_edge: corr.primal_of_dual,
            rotations,
        };
        g.face_census()?;
        Ok(g)
    }

    /// The embedded multigraph, parallel edges kept.
    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn infinity(&self) -> usize {
        self.infinity
    }

    /// Number of bounded vertices.
    pub fn mu(&self) -> usize {
        self.infinity
    }

    pub fn vertex_count(&self) -> usize {
        self.infinity + 1
    }

    /// Simple adjacency including the unbounded vertex.
    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    /// Simple adjacency of the bounded diagram.
    pub fn bounded_adjacency(&self) -> Vec<Vec<usize>> {
        self.adjacency[..self.infinity]
            .iter()
            .map(|row| row.iter().copied().filter(|&w| w != self.infinity).collect())
            .collect()
    }

    pub fn is_adjacent(&self, u: usize, w: usize) -> bool {
        self.adjacency[u].binary_search(&w).is_ok()
    }

    /// Vertex pairs joined by several embedded edges, with multiplicity.
    pub fn merged_edges(&self) -> &[(usize, usize, usize)] {
        &self.merged
    }

    /// Blowup half-edge crossed by each half-edge of the embedding.
    pub fn blowup_edge(&self, h: usize) -> usize {
        self.blowup_edge[h]
    }

    /// Counterclockwise half-edges leaving `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn label(&self, v: usize) -> String {
        match self.kinds[v] {
            VertexKind::Saddle { crossing } => format!("s{crossing}"),
            VertexKind::Extremum { region } => format!("e{region}"),
            VertexKind::Unbounded => "inf".into(),
        }
    }

    /// Counts the faces of the embedding; any face that is neither a bigon
    /// nor a triangle is an error.
    pub fn face_census(&self) -> Result<FaceCensus> {
        let mut census = FaceCensus { bigons: 0, triangles: 0 };
        for f in self.map.faces() {
            match f.cycle.len() {
                2 => census.bigons += 1,
                3 => census.triangles += 1,
                n => {
                    return Err(Error::FaceCensusViolation(format!("face {} has {n} sides", f.id)))
                }
            }
        }
        Ok(census)
    }

    pub fn edge_count(&self) -> usize {
        self.map.edge_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{chebyshev_divide, generic_lines};
    use crate::planar_map::bounded_dual;

    #[test]
    fn blowup_face_counts() {
        let d = chebyshev_divide(2, 3).unwrap();
        let b = blowup(&d);
        let faces = b.faces();
        assert_eq!(faces.iter().filter(|f| f.bounded).count(), 2);
        assert_eq!(faces.len(), 3);
        let lines = blowup(&generic_lines(4).unwrap());
        assert_eq!(lines.faces().iter().filter(|f| f.bounded).count(), 9);
        let bd = bounded_dual(&lines).unwrap();
        assert_eq!(bd.vertex_count(), 9);
        let a2 = bounded_dual(&b).unwrap();
        assert_eq!((a2.vertex_count(), a2.edge_count()), (2, 1));
    }

    #[test]
    fn a2_graph() {
        let g = AugmentedIntersectionGraph::build(&chebyshev_divide(2, 3).unwrap()).unwrap();
        assert_eq!(g.mu(), 2);
        assert_eq!(g.bounded_adjacency(), vec![vec![1], vec![0]]);
        assert_eq!(g.face_census().unwrap(), FaceCensus { bigons: 2, triangles: 2 });
    }

    #[test]
    fn lines_graph() {
        let g = AugmentedIntersectionGraph::build(&generic_lines(4).unwrap()).unwrap();
        let saddles = g.kinds().iter().filter(|k| matches!(k, VertexKind::Saddle { .. })).count();
        assert_eq!((g.mu(), saddles), (9, 6));
    }
}
