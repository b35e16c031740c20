use std::collections::VecDeque;

use super::{edge_index, Triangulation, EDGE_VERTICES};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClass {
    /// `(tetrahedron, vertex)` pairs, sorted.
    pub embeddings: Vec<(usize, usize)>,
    pub boundary: bool,
}

/// One appearance of an edge class inside a tetrahedron. `start` is the
/// tetrahedron vertex identified with the class's first endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeEmbedding {
    pub tet: usize,
    pub edge: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    /// Sorted by `(tet, edge)`; the first entry is oriented low-to-high.
    pub embeddings: Vec<EdgeEmbedding>,
    pub boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceClass {
    /// One entry for a boundary face, two for an internal face; sorted.
    pub embeddings: Vec<(usize, usize)>,
}

impl FaceClass {
    pub fn is_boundary(&self) -> bool {
        self.embeddings.len() == 1
    }
}

/// Vertex, edge and face classes of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub size: usize,
    pub vertices: Vec<VertexClass>,
    pub edges: Vec<EdgeClass>,
    pub faces: Vec<FaceClass>,
    pub vertex_of: Vec<[usize; 4]>,
    pub edge_of: Vec<[usize; 6]>,
    pub face_of: Vec<[usize; 4]>,
}

const UNSET: usize = usize::MAX;

impl Skeleton {
    pub fn build(tri: &Triangulation) -> Result<Self> {
        let n = tri.size();
        let (vertices, vertex_of) = vertex_classes(tri);
        let (edges, edge_of) = edge_classes(tri)?;
        let (faces, face_of) = face_classes(tri);
        Ok(Skeleton { size: n, vertices, edges, faces, vertex_of, edge_of, face_of })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
            - self.size as i64
    }

    pub fn boundary_vertex_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.boundary).count()
    }
}

fn is_boundary_face(tri: &Triangulation, tet: usize, face: usize) -> bool {
    tri.adjacent(tet, face).is_none()
}

fn vertex_classes(tri: &Triangulation) -> (Vec<VertexClass>, Vec<[usize; 4]>) {
    let n = tri.size();
    let mut vertex_of = vec![[UNSET; 4]; n];
    let mut classes = Vec::new();
    let mut queue = VecDeque::new();
    for t in 0..n {
        for v in 0..4 {
            if vertex_of[t][v] != UNSET {
                continue;
            }
            let id = classes.len();
            let mut class = VertexClass { embeddings: Vec::new(), boundary: false };
            vertex_of[t][v] = id;
            queue.push_back((t, v));
            while let Some((t, v)) = queue.pop_front() {
                class.embeddings.push((t, v));
                for f in (0..4).filter(|&f| f != v) {
                    match tri.adjacent(t, f) {
                        None => class.boundary = true,
                        Some(adj) => {
                            let w = adj.perm.apply(v);
                            if vertex_of[adj.tet][w] == UNSET {
                                vertex_of[adj.tet][w] = id;
                                queue.push_back((adj.tet, w));
                            }
                        }
                    }
                }
            }
            class.embeddings.sort_unstable();
            classes.push(class);
        }
    }
    (classes, vertex_of)
}

fn edge_classes(tri: &Triangulation) -> Result<(Vec<EdgeClass>, Vec<[usize; 6]>)> {
    let n = tri.size();
    let mut edge_of = vec![[UNSET; 6]; n];
    // Which endpoint of the tetrahedron edge maps to the class's start.
    let mut start_of = vec![[UNSET; 6]; n];
    let mut classes = Vec::new();
    let mut queue = VecDeque::new();
    for t in 0..n {
        for e in 0..6 {
            if edge_of[t][e] != UNSET {
                continue;
            }
            let id = classes.len();
            let [a, b] = EDGE_VERTICES[e];
            let mut class = EdgeClass { embeddings: Vec::new(), boundary: false };
            edge_of[t][e] = id;
            start_of[t][e] = a;
            queue.push_back((t, a, b));
            while let Some((t, a, b)) = queue.pop_front() {
                class.embeddings.push(EdgeEmbedding { tet: t, edge: edge_index(a, b), start: a, end: b });
                for f in (0..4).filter(|&f| f != a && f != b) {
                    let Some(adj) = tri.adjacent(t, f) else {
                        class.boundary = true;
                        continue;
                    };
                    let (a2, b2) = (adj.perm.apply(a), adj.perm.apply(b));
                    let e2 = edge_index(a2, b2);
                    if edge_of[adj.tet][e2] == UNSET {
                        edge_of[adj.tet][e2] = id;
                        start_of[adj.tet][e2] = a2;
                        queue.push_back((adj.tet, a2, b2));
                    } else if start_of[adj.tet][e2] != a2 {
                        return Err(Error::InvalidEdge { tet: adj.tet, edge: e2 });
                    }
                }
            }
            class.embeddings.sort_unstable();
            classes.push(class);
        }
    }
    Ok((classes, edge_of))
}

fn face_classes(tri: &Triangulation) -> (Vec<FaceClass>, Vec<[usize; 4]>) {
    let n = tri.size();
    let mut face_of = vec![[UNSET; 4]; n];
    let mut classes = Vec::new();
    for t in 0..n {
        for f in 0..4 {
            if face_of[t][f] != UNSET {
                continue;
            }
            let id = classes.len();
            face_of[t][f] = id;
            let mut embeddings = vec![(t, f)];
            if !is_boundary_face(tri, t, f) {
                let adj = tri.adjacent(t, f).unwrap();
                let g = adj.perm.apply(f);
                face_of[adj.tet][g] = id;
                embeddings.push((adj.tet, g));
            }
            classes.push(FaceClass { embeddings });
        }
    }
    (classes, face_of)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tri::Perm4;

    fn closed_pair() -> Triangulation {
        // Two tetrahedra glued face-to-face by the identity on all four faces.
        let mut t = Triangulation::unglued(2);
        for f in 0..4 {
            t.glue(0, f, 1, Perm4::IDENTITY).unwrap();
        }
        t
    }

    #[test]
    fn solid_torus_skeleton() {
        let s = Triangulation::solid_torus().skeleton().unwrap();
        assert_eq!(s.vertices.len(), 1);
        assert_eq!(s.faces.iter().filter(|f| f.is_boundary()).count(), 2);
        assert_eq!(s.faces.len(), 3);
        assert_eq!(s.edges.len(), 3);
        assert_eq!(s.euler_characteristic(), 0);
        assert!(s.vertices[0].boundary);
    }

    #[test]
    fn single_tetrahedron_is_a_ball() {
        let s = Triangulation::unglued(1).skeleton().unwrap();
        assert_eq!((s.vertices.len(), s.edges.len(), s.faces.len()), (4, 6, 4));
        assert_eq!(s.euler_characteristic(), 1);
    }

    #[test]
    fn closed_pair_has_no_boundary() {
        let s = closed_pair().skeleton().unwrap();
        assert!(s.faces.iter().all(|f| !f.is_boundary()));
        assert_eq!(s.euler_characteristic(), 0);
        assert_eq!(s.vertices.len(), 4);
    }

    #[test]
    fn disjoint_union_doubles_counts() {
        let a = Triangulation::solid_torus();
        let s1 = a.skeleton().unwrap();
        let s2 = a.disjoint_union(&a).skeleton().unwrap();
        assert_eq!(s2.vertices.len(), 2 * s1.vertices.len());
        assert_eq!(s2.edges.len(), 2 * s1.edges.len());
        assert_eq!(s2.faces.len(), 2 * s1.faces.len());
    }

    #[test]
    fn reversed_edge_is_invalid() {
        // Glue face 3 (vertices 0,1,2) to face 2 (vertices 0,1,3) swapping 0
        // and 1: edge 01 is identified with itself backwards.
        let mut t = Triangulation::unglued(1);
        t.glue(0, 3, 0, Perm4::new([1, 0, 3, 2]).unwrap()).unwrap();
        assert!(matches!(t.skeleton(), Err(Error::InvalidEdge { .. })));
    }

    #[test]
    fn embeddings_partition_subcells() {
        let t = Triangulation::solid_torus().disjoint_union(&closed_pair());
        let s = t.skeleton().unwrap();
        let total: usize = s.edges.iter().map(|e| e.embeddings.len()).sum();
        assert_eq!(total, 6 * t.size());
        let total: usize = s.vertices.iter().map(|v| v.embeddings.len()).sum();
        assert_eq!(total, 4 * t.size());
        let total: usize = s.faces.iter().map(|f| f.embeddings.len()).sum();
        assert_eq!(total, 4 * t.size());
    }
}
