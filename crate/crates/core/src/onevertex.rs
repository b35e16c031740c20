//! Conversion to a one-vertex triangulation without adding tetrahedra.
//!
//! An edge between distinct vertices is grown into a subcomplex whose
//! frontier is normal; one component of that frontier is a disc that is not
//! a vertex link, and crushing it removes at least one tetrahedron.

use std::collections::VecDeque;

use num_traits::One;

use crate::crush::{crush, extract_complement, Extracted};
use crate::error::{Error, Result};
use crate::normal::{coord, quad_pairing, reconstruct_components, NormalVector};
use crate::tri::{edge_index, Skeleton, Triangulation, EDGE_VERTICES};
use crate::Rational;

/// Membership flags over the cells of a triangulation, by class index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    pub vertices: Vec<bool>,
    pub edges: Vec<bool>,
    pub faces: Vec<bool>,
    pub tets: Vec<bool>,
}

/// Local edge indices of face `f` of a tetrahedron.
fn face_edges(f: usize) -> [usize; 3] {
    let v: Vec<usize> = (0..4).filter(|&w| w != f).collect();
    [edge_index(v[0], v[1]), edge_index(v[0], v[2]), edge_index(v[1], v[2])]
}

/// An edge class joining two distinct vertex classes: inside the boundary
/// if at least two vertices are on the boundary, otherwise from the single
/// boundary vertex to an internal one. Lowest class index wins.
pub fn pick_seed_edge(skel: &Skeleton) -> Result<usize> {
    let ends = |e: usize| {
        let emb = skel.edges[e].embeddings[0];
        (skel.vertex_of[emb.tet][emb.start], skel.vertex_of[emb.tet][emb.end])
    };
    let boundary = |v: usize| skel.vertices[v].boundary;
    let wanted = |e: usize| {
        let (u, v) = ends(e);
        if u == v {
            return false;
        }
        if skel.boundary_vertex_count() >= 2 {
            skel.edges[e].boundary
        } else {
            boundary(u) != boundary(v)
        }
    };
    if skel.boundary_vertex_count() == 0 {
        return Err(Error::OneVertex("triangulation has no boundary vertex".into()));
    }
    (0..skel.edges.len())
        .find(|&e| wanted(e))
        .ok_or_else(|| Error::OneVertex("no edge joins two distinct vertices as required".into()))
}

/// Grows `{e}` until no face has two or more member edges outside the
/// subcomplex and no tetrahedron has all four faces in it without being in
/// it itself.
pub fn expand(skel: &Skeleton, e: usize) -> Subcomplex {
    let n = skel.size;
    let mut faces_of_edge: Vec<Vec<usize>> = vec![Vec::new(); skel.edges.len()];
    for (fc, class) in skel.faces.iter().enumerate() {
        let (t, f) = class.embeddings[0];
        for le in face_edges(f) {
            let ec = skel.edge_of[t][le];
            if !faces_of_edge[ec].contains(&fc) {
                faces_of_edge[ec].push(fc);
            }
        }
    }
    let mut sub = Subcomplex {
        vertices: vec![false; skel.vertices.len()],
        edges: vec![false; skel.edges.len()],
        faces: vec![false; skel.faces.len()],
        tets: vec![false; n],
    };
    enum Job {
        Face(usize),
        Tet(usize),
    }
    let mut queue = VecDeque::new();
    let add_edge = |sub: &mut Subcomplex, queue: &mut VecDeque<Job>, ec: usize| {
        if sub.edges[ec] {
            return;
        }
        sub.edges[ec] = true;
        let emb = skel.edges[ec].embeddings[0];
        for v in [emb.start, emb.end] {
            sub.vertices[skel.vertex_of[emb.tet][v]] = true;
        }
        queue.extend(faces_of_edge[ec].iter().map(|&f| Job::Face(f)));
    };
    add_edge(&mut sub, &mut queue, e);
    while let Some(job) = queue.pop_front() {
        match job {
            Job::Face(fc) => {
                if sub.faces[fc] {
                    continue;
                }
                let (t, f) = skel.faces[fc].embeddings[0];
                let edges = face_edges(f).map(|le| skel.edge_of[t][le]);
                if edges.iter().filter(|&&ec| sub.edges[ec]).count() < 2 {
                    continue;
                }
                sub.faces[fc] = true;
                for ec in edges {
                    add_edge(&mut sub, &mut queue, ec);
                }
                for &(t, _) in &skel.faces[fc].embeddings {
                    queue.push_back(Job::Tet(t));
                }
            }
            Job::Tet(t) => {
                if !sub.tets[t] && (0..4).all(|f| sub.faces[skel.face_of[t][f]]) {
                    sub.tets[t] = true;
                }
            }
        }
    }
    sub
}

/// The frontier of a regular neighbourhood of a saturated subcomplex, as a
/// normal surface.
pub fn link_surface(skel: &Skeleton, sub: &Subcomplex) -> Result<NormalVector> {
    let n = skel.size;
    let mut x = vec![0i64; 7 * n];
    for t in 0..n {
        if sub.tets[t] {
            continue;
        }
        let mut covered = [false; 4];
        let faces: Vec<usize> = (0..4).filter(|&f| sub.faces[skel.face_of[t][f]]).collect();
        match faces.as_slice() {
            [] => {
                let edges: Vec<usize> = (0..6).filter(|&le| sub.edges[skel.edge_of[t][le]]).collect();
                let opposite = |a: usize, b: usize| a + b == 5;
                match edges.as_slice() {
                    [] => {}
                    [e] => {
                        let [a, b] = EDGE_VERTICES[*e];
                        x[coord(t, 4 + quad_pairing(a, b))] += 1;
                        covered[a] = true;
                        covered[b] = true;
                    }
                    [e1, e2] if opposite(*e1, *e2) => {
                        let [a, b] = EDGE_VERTICES[*e1];
                        x[coord(t, 4 + quad_pairing(a, b))] += 2;
                        covered = [true; 4];
                    }
                    _ => {
                        return Err(Error::OneVertex(format!(
                            "subcomplex not saturated: tetrahedron {t} has adjacent member edges"
                        )))
                    }
                }
            }
            [f] => {
                x[coord(t, *f)] += 1;
                for v in (0..4).filter(|v| v != f) {
                    covered[v] = true;
                }
            }
            _ => {
                return Err(Error::OneVertex(format!(
                    "subcomplex not saturated: tetrahedron {t} has {} member faces",
                    faces.len()
                )))
            }
        }
        for v in 0..4 {
            if !covered[v] && sub.vertices[skel.vertex_of[t][v]] {
                x[coord(t, v)] += 1;
            }
        }
    }
    NormalVector::from_integers(&x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneVertexResult {
    pub triangulation: Triangulation,
    /// Crushing rounds performed.
    pub iterations: usize,
    /// A crush left no torus-boundary piece, so the knot is trivial and the
    /// result is the one-tetrahedron solid torus.
    pub knot_is_trivial: bool,
}

/// Repeatedly crushes non-vertex-linking discs taken from edge links until
/// one vertex remains. Never increases the size.
pub fn make_one_vertex(tri: &Triangulation) -> Result<OneVertexResult> {
    let mut cur = tri.clone();
    let mut iterations = 0;
    loop {
        let skel = cur.skeleton()?;
        if skel.vertices.len() == 1 {
            return Ok(OneVertexResult { triangulation: cur, iterations, knot_is_trivial: false });
        }
        if iterations > tri.size() {
            return Err(Error::OneVertex("too many crushing rounds".into()));
        }
        let e = pick_seed_edge(&skel)?;
        let sub = expand(&skel, e);
        let link = link_surface(&skel, &sub)?;
        let disc = reconstruct_components(&cur, &link)?
            .into_iter()
            .find(|c| {
                c.euler == 1 && c.vector.has_zero_triangle() && (0..cur.size()).any(|t| c.vector.quads_in(t).next().is_some())
            })
            .ok_or_else(|| Error::OneVertex("no component of the edge link is a non-vertex-linking disc".into()))?;
        iterations += 1;
        let before = cur.size();
        match extract_complement(&crush(&cur, &disc.vector)?)? {
            Extracted::Reduced { triangulation, .. } => {
                debug_assert!(triangulation.size() < before);
                cur = triangulation;
            }
            Extracted::KnotIsTrivial => {
                return Ok(OneVertexResult { triangulation: Triangulation::solid_torus(), iterations, knot_is_trivial: true });
            }
        }
    }
}

/// Whether `x` has coefficient one on every triangle of vertex class `v`
/// and nothing else: the link of that vertex.
pub fn is_vertex_link_of(skel: &Skeleton, x: &NormalVector, v: usize) -> bool {
    (0..skel.size).all(|t| {
        (0..7).all(|s| {
            let want = s < 4 && skel.vertex_of[t][s] == v;
            *x.get(t, s) == if want { Rational::one() } else { Rational::from_integer(0.into()) }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::matching_equations;

    #[test]
    fn one_vertex_input_is_unchanged() {
        let t = Triangulation::solid_torus();
        let r = make_one_vertex(&t).unwrap();
        assert_eq!(r.triangulation, t);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn single_vertex_subcomplex_gives_its_link() {
        let t = Triangulation::solid_torus();
        let skel = t.skeleton().unwrap();
        let sub = Subcomplex { vertices: vec![true], edges: vec![false; skel.edges.len()], faces: vec![false; skel.faces.len()], tets: vec![false] };
        let x = link_surface(&skel, &sub).unwrap();
        assert!(is_vertex_link_of(&skel, &x, 0));
        assert!(matching_equations(&t).unwrap().satisfied_by(&x));
    }

    #[test]
    fn face_edges_are_in_the_face() {
        for f in 0..4 {
            for e in face_edges(f) {
                assert!(!EDGE_VERTICES[e].contains(&f));
            }
        }
    }
}
