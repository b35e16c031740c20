//! Small one-vertex triangulations with torus boundary: all of them up to
//! isomorphism for one or two tetrahedra, random ones beyond that.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::normal::{reconstruct_components, vertex_link_vector};
use crate::tri::{Adjacent, BoundaryKind, Perm4, Triangulation};

/// One-vertex, connected, torus boundary, and a disc as vertex link.
pub fn is_census_member(tri: &Triangulation) -> bool {
    let Ok(skel) = tri.skeleton() else { return false };
    if skel.vertices.len() != 1 || tri.component_labels().1 != 1 || skel.boundary_kind() != BoundaryKind::TorusBoundary {
        return false;
    }
    let Ok(link) = vertex_link_vector(tri) else { return false };
    matches!(reconstruct_components(tri, &link).as_deref(), Ok([c]) if c.euler == 1)
}

type Code = Vec<Option<(usize, [u8; 4])>>;

/// The relabelling found by breadth-first search from tetrahedron `start`
/// with vertex labels permuted by `sigma`, as a comparable code.
fn bfs_code(tri: &Triangulation, start: usize, sigma: Perm4) -> Code {
    let n = tri.size();
    let mut new_index = vec![usize::MAX; n];
    let mut perms = vec![Perm4::IDENTITY; n];
    let mut order = vec![start];
    new_index[start] = 0;
    perms[start] = sigma;
    let mut code = Vec::with_capacity(4 * n);
    let mut i = 0;
    while i < order.len() {
        let t = order[i];
        let inv = perms[t].inverse();
        for g in 0..4 {
            let f = inv.apply(g);
            let entry = tri.adjacent(t, f).map(|adj| {
                if new_index[adj.tet] == usize::MAX {
                    new_index[adj.tet] = order.len();
                    order.push(adj.tet);
                    perms[adj.tet] = perms[t].compose(adj.perm.inverse());
                }
                let p = perms[adj.tet].compose(adj.perm).compose(inv);
                (new_index[adj.tet], p.images())
            });
            code.push(entry);
        }
        i += 1;
    }
    code
}

/// A canonical representative of the isomorphism class of a connected
/// triangulation.
pub fn canonical(tri: &Triangulation) -> Triangulation {
    let code = (0..tri.size())
        .flat_map(|t| Perm4::all().map(move |p| (t, p)))
        .map(|(t, p)| bfs_code(tri, t, p))
        .min()
        .expect("non-empty triangulation");
    let gluings = code
        .chunks(4)
        .map(|faces| {
            let mut out = [None; 4];
            for (slot, e) in out.iter_mut().zip(faces) {
                *slot = e.map(|(tet, images)| Adjacent { tet, perm: Perm4::new(images).expect("valid permutation") });
            }
            out
        })
        .collect();
    Triangulation::from_gluings(gluings).expect("relabelling preserves validity")
}

/// Census members on `n` tetrahedra up to isomorphism: every gluing with
/// exactly two boundary faces is generated and filtered.
pub fn census(n: usize) -> Vec<Triangulation> {
    struct Gen {
        tri: Triangulation,
        boundary: Vec<bool>,
        seen: BTreeSet<Code>,
        out: Vec<Triangulation>,
    }
    fn go(g: &mut Gen, boundary_left: usize) {
        let n = g.tri.size();
        let free = |g: &Gen, i: usize| g.tri.adjacent(i / 4, i % 4).is_none() && !g.boundary[i];
        let Some(i) = (0..4 * n).find(|&i| free(g, i)) else {
            if boundary_left == 0 && is_census_member(&g.tri) {
                let c = canonical(&g.tri);
                if g.seen.insert(bfs_code(&c, 0, Perm4::IDENTITY)) {
                    g.out.push(c);
                }
            }
            return;
        };
        let (t, f) = (i / 4, i % 4);
        if boundary_left > 0 {
            g.boundary[i] = true;
            go(g, boundary_left - 1);
            g.boundary[i] = false;
        }
        for j in i + 1..4 * n {
            if !free(g, j) {
                continue;
            }
            let (u, h) = (j / 4, j % 4);
            for p in Perm4::all().filter(|p| p.apply(f) == h) {
                g.tri.glue(t, f, u, p).expect("both faces are free");
                go(g, boundary_left);
                g.tri.unglue(t, f);
            }
        }
    }
    let mut g = Gen { tri: Triangulation::unglued(n), boundary: vec![false; 4 * n], seen: BTreeSet::new(), out: Vec::new() };
    go(&mut g, 2);
    g.out
}

/// A random census member on `n` tetrahedra, or `None` after `attempts`
/// random gluings fail the filter.
pub fn random_member(n: usize, rng: &mut impl Rng, attempts: usize) -> Option<Triangulation> {
    for _ in 0..attempts {
        let mut faces: Vec<usize> = (0..4 * n).collect();
        faces.shuffle(rng);
        let mut tri = Triangulation::unglued(n);
        for pair in faces[2..].chunks(2) {
            let (t, f, u, g) = (pair[0] / 4, pair[0] % 4, pair[1] / 4, pair[1] % 4);
            let choices: Vec<Perm4> = Perm4::all().filter(|p| p.apply(f) == g).collect();
            tri.glue(t, f, u, *choices.choose(rng).expect("six choices")).expect("faces are free");
        }
        if is_census_member(&tri) {
            return Some(tri);
        }
    }
    None
}
