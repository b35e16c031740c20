use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use super::{Adjacent, Skeleton, Triangulation, EDGE_VERTICES};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    TorusBoundary,
    SphereBoundary,
    Closed,
    Other,
}

impl fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundaryKind::TorusBoundary => "torus boundary",
            BoundaryKind::SphereBoundary => "sphere boundary",
            BoundaryKind::Closed => "closed",
            BoundaryKind::Other => "other",
        };
        f.write_str(s)
    }
}

/// A connected component of the boundary surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub faces: Vec<(usize, usize)>,
    pub euler: i64,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Skeleton {
    /// Boundary faces grouped into surfaces by shared boundary edges.
    pub fn boundary_components(&self) -> Vec<BoundaryComponent> {
        let bfaces: Vec<(usize, usize)> = self
            .faces
            .iter()
            .filter(|c| c.is_boundary())
            .map(|c| c.embeddings[0])
            .collect();
        let mut parent: Vec<usize> = (0..bfaces.len()).collect();
        let mut owner = vec![usize::MAX; self.edges.len()];
        for (i, &(t, f)) in bfaces.iter().enumerate() {
            for (e, verts) in EDGE_VERTICES.iter().enumerate() {
                if verts.contains(&f) {
                    continue;
                }
                let class = self.edge_of[t][e];
                if owner[class] == usize::MAX {
                    owner[class] = i;
                } else {
                    let (a, b) = (find(&mut parent, owner[class]), find(&mut parent, i));
                    parent[a] = b;
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; bfaces.len()];
        for i in 0..bfaces.len() {
            let root = find(&mut parent, i);
            if slot[root] == usize::MAX {
                slot[root] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[root]].push(i);
        }
        groups
            .into_iter()
            .map(|members| {
                let mut verts = BTreeSet::new();
                let mut edges = BTreeSet::new();
                for &i in &members {
                    let (t, f) = bfaces[i];
                    for v in (0..4).filter(|&v| v != f) {
                        verts.insert(self.vertex_of[t][v]);
                    }
                    for (e, vs) in EDGE_VERTICES.iter().enumerate() {
                        if !vs.contains(&f) {
                            edges.insert(self.edge_of[t][e]);
                        }
                    }
                }
                let euler = verts.len() as i64 - edges.len() as i64 + members.len() as i64;
                BoundaryComponent { faces: members.iter().map(|&i| bfaces[i]).collect(), euler }
            })
            .collect()
    }

    /// Classifies a connected triangulation by its boundary.
    pub fn boundary_kind(&self) -> BoundaryKind {
        let comps = self.boundary_components();
        let chi = self.euler_characteristic();
        match comps.as_slice() {
            [] => BoundaryKind::Closed,
            [c] if c.euler == 0 && chi == 0 => BoundaryKind::TorusBoundary,
            [c] if c.euler == 2 && chi == 1 => BoundaryKind::SphereBoundary,
            _ => BoundaryKind::Other,
        }
    }
}

impl Triangulation {
    /// Classifies this triangulation, which should be connected, by its
    /// boundary. Disconnected input is reported as `Other`.
    pub fn boundary_kind(&self) -> Result<BoundaryKind> {
        if self.component_labels().1 > 1 {
            return Ok(BoundaryKind::Other);
        }
        Ok(self.skeleton()?.boundary_kind())
    }

    /// Component label per tetrahedron (numbered by first appearance) and
    /// the component count.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.size();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(t) = queue.pop_front() {
                for adj in self.gluings[t].iter().flatten() {
                    if label[adj.tet] == usize::MAX {
                        label[adj.tet] = count;
                        queue.push_back(adj.tet);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Connected components, each re-indexed from 0, together with the
    /// original index of every tetrahedron.
    pub fn components_with_origin(&self) -> Vec<(Triangulation, Vec<usize>)> {
        let (label, count) = self.component_labels();
        let mut origin: Vec<Vec<usize>> = vec![Vec::new(); count];
        let mut local = vec![0; self.size()];
        for (t, &c) in label.iter().enumerate() {
            local[t] = origin[c].len();
            origin[c].push(t);
        }
        origin
            .into_iter()
            .map(|members| {
                let gluings = members
                    .iter()
                    .map(|&t| {
                        self.gluings[t]
                            .map(|adj| adj.map(|a| Adjacent { tet: local[a.tet], perm: a.perm }))
                    })
                    .collect();
                (Triangulation { gluings }, members)
            })
            .collect()
    }

    pub fn connected_components(&self) -> Vec<Triangulation> {
        self.components_with_origin().into_iter().map(|(t, _)| t).collect()
    }
}
