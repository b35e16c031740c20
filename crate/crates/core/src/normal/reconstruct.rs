//! Explicit reconstruction of a normal surface from its coordinates, used to
//! check connectivity and Euler characteristic independently of the linear
//! functional.

use super::{coord, on_zero_side, quad_pairing, quads_crossing, NormalVector};
use crate::error::{Error, Result};
use crate::tri::{Triangulation, EDGE_VERTICES};

/// Refuse to materialise absurdly large surfaces.
const MAX_DISCS: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceComponent {
    pub vector: NormalVector,
    pub euler: i64,
    /// Arcs of this component on each boundary face corner: three entries
    /// per boundary face, faces in face-class order, corners ascending.
    pub boundary_arcs: Vec<u64>,
}

struct Discs<'a> {
    x: &'a [u64],
    base: Vec<usize>,
}

impl Discs<'_> {
    fn id(&self, tet: usize, slot: usize, copy: u64) -> usize {
        debug_assert!(copy < self.x[coord(tet, slot)]);
        self.base[coord(tet, slot)] + copy as usize
    }

    fn count(&self, tet: usize, slot: usize) -> u64 {
        self.x[coord(tet, slot)]
    }

    fn arcs_at(&self, tet: usize, face: usize, w: usize) -> u64 {
        self.count(tet, w) + self.count(tet, 4 + quad_pairing(w, face))
    }

    /// The disc owning the `p`-th arc (from the corner) at corner `w` of
    /// face `face`.
    fn at_corner(&self, tet: usize, face: usize, w: usize, p: u64) -> usize {
        let tw = self.count(tet, w);
        if p < tw {
            return self.id(tet, w, p);
        }
        let k = quad_pairing(w, face);
        let q = self.count(tet, 4 + k);
        let j = p - tw;
        let copy = if on_zero_side(k, w) { j } else { q - 1 - j };
        self.id(tet, 4 + k, copy)
    }

    fn crossing_quad(&self, tet: usize, a: usize, b: usize) -> Option<usize> {
        quads_crossing(a, b).into_iter().find(|&k| self.count(tet, 4 + k) > 0)
    }

    fn points_on(&self, tet: usize, a: usize, b: usize) -> u64 {
        let q = self.crossing_quad(tet, a, b).map_or(0, |k| self.count(tet, 4 + k));
        self.count(tet, a) + q + self.count(tet, b)
    }

    /// The disc through the `p`-th point (from `a`) on edge `ab`.
    fn at_point(&self, tet: usize, a: usize, b: usize, p: u64) -> usize {
        let ta = self.count(tet, a);
        if p < ta {
            return self.id(tet, a, p);
        }
        let mut j = p - ta;
        if let Some(k) = self.crossing_quad(tet, a, b) {
            let q = self.count(tet, 4 + k);
            if j < q {
                let copy = if on_zero_side(k, a) { j } else { q - 1 - j };
                return self.id(tet, 4 + k, copy);
            }
            j -= q;
        }
        let tb = self.count(tet, b);
        self.id(tet, b, tb - 1 - j)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Splits an admissible integer vector into its connected components,
/// computing each component's Euler characteristic as V − E + F of the
/// explicit cell structure. Components are ordered by their first disc
/// (tetrahedron, then slot, then copy).
pub fn reconstruct_components(tri: &Triangulation, x: &NormalVector) -> Result<Vec<SurfaceComponent>> {
    let n = tri.size();
    if x.len() != 7 * n {
        return Err(Error::Dimension { got: x.len(), expected: 7 * n });
    }
    let counts = x
        .to_counts()
        .ok_or_else(|| Error::InconsistentSurface("coordinates must be non-negative integers".into()))?;
    let total: u64 = counts.iter().sum();
    if total > MAX_DISCS {
        return Err(Error::InconsistentSurface(format!("{total} discs is too many to reconstruct")));
    }
    for t in 0..n {
        if x.quads_in(t).count() > 1 {
            return Err(Error::InconsistentSurface(format!("two quad types in tetrahedron {t}")));
        }
    }
    let skel = tri.skeleton()?;
    let mut base = Vec::with_capacity(counts.len());
    let mut acc = 0usize;
    for &c in &counts {
        base.push(acc);
        acc += c as usize;
    }
    let discs = Discs { x: &counts, base };
    let mut parent: Vec<usize> = (0..acc).collect();

    for class in &skel.faces {
        let &[(a, i), (b, j)] = class.embeddings.as_slice() else { continue };
        let perm = tri.adjacent(a, i).unwrap().perm;
        for w in (0..4).filter(|&w| w != i) {
            let w2 = perm.apply(w);
            let (ca, cb) = (discs.arcs_at(a, i, w), discs.arcs_at(b, j, w2));
            if ca != cb {
                return Err(Error::InconsistentSurface(format!(
                    "face ({a},{i}) corner {w}: {ca} arcs meet {cb}"
                )));
            }
            for p in 0..ca {
                union(&mut parent, discs.at_corner(a, i, w, p), discs.at_corner(b, j, w2, p));
            }
        }
    }

    // Component of every disc, numbered by first disc.
    let mut comp_of = vec![usize::MAX; acc];
    let mut ncomp = 0;
    let mut slot_of_root = vec![usize::MAX; acc];
    for d in 0..acc {
        let r = find(&mut parent, d);
        if slot_of_root[r] == usize::MAX {
            slot_of_root[r] = ncomp;
            ncomp += 1;
        }
        comp_of[d] = slot_of_root[r];
    }
    let nbfaces = skel.faces.iter().filter(|f| f.is_boundary()).count();
    let mut comps: Vec<(Vec<u64>, i64, Vec<u64>)> =
        (0..ncomp).map(|_| (vec![0; 7 * n], 0, vec![0; 3 * nbfaces])).collect();

    // Faces of the surface: discs.
    for t in 0..n {
        for s in 0..7 {
            for c in 0..counts[coord(t, s)] {
                let k = comp_of[discs.id(t, s, c)];
                comps[k].0[coord(t, s)] += 1;
                comps[k].1 += 1;
            }
        }
    }
    // Edges of the surface: arcs, once per face class.
    let mut bindex = 0;
    for class in &skel.faces {
        let (t, f) = class.embeddings[0];
        for (ci, w) in (0..4).filter(|&w| w != f).enumerate() {
            for p in 0..discs.arcs_at(t, f, w) {
                let k = comp_of[discs.at_corner(t, f, w, p)];
                comps[k].1 -= 1;
                if class.is_boundary() {
                    comps[k].2[3 * bindex + ci] += 1;
                }
            }
        }
        if class.is_boundary() {
            bindex += 1;
        }
    }
    // Vertices of the surface: points, once per edge class. Every other
    // embedding of the edge must see the same points on the same components.
    for class in &skel.edges {
        let e0 = class.embeddings[0];
        let count = discs.points_on(e0.tet, e0.start, e0.end);
        for e in &class.embeddings[1..] {
            let c = discs.points_on(e.tet, e.start, e.end);
            if c != count {
                return Err(Error::InconsistentSurface(format!(
                    "edge {:?}: {count} points versus {c} in tetrahedron {}",
                    EDGE_VERTICES[e0.edge], e.tet
                )));
            }
        }
        for p in 0..count {
            let k = comp_of[discs.at_point(e0.tet, e0.start, e0.end, p)];
            for e in &class.embeddings[1..] {
                if comp_of[discs.at_point(e.tet, e.start, e.end, p)] != k {
                    return Err(Error::InconsistentSurface(format!(
                        "point {p} on an edge of tetrahedron {} joins different components",
                        e.tet
                    )));
                }
            }
            comps[k].1 += 1;
        }
    }

    comps
        .into_iter()
        .map(|(v, euler, boundary_arcs)| {
            Ok(SurfaceComponent { vector: NormalVector::from_integers(&v)?, euler, boundary_arcs })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::{euler_functional, vertex_link_vector};
    use crate::Rational;

    #[test]
    fn solid_torus_vertex_link_is_one_disc() {
        let t = Triangulation::solid_torus();
        let link = vertex_link_vector(&t).unwrap();
        let comps = reconstruct_components(&t, &link).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].euler, 1);
        assert_eq!(comps[0].vector, link);
        assert_eq!(comps[0].boundary_arcs, vec![1; 6]);
    }

    #[test]
    fn doubled_link_has_two_components() {
        let t = Triangulation::solid_torus();
        let link = vertex_link_vector(&t).unwrap();
        let two = link.add(&link);
        let comps = reconstruct_components(&t, &two).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.euler == 1 && c.vector == link));
    }

    #[test]
    fn unbalanced_vector_is_inconsistent() {
        let t = Triangulation::solid_torus();
        let x = NormalVector::from_integers(&[1, 0, 0, 0, 0, 0, 0]).unwrap();
        assert!(matches!(reconstruct_components(&t, &x), Err(Error::InconsistentSurface(_))));
    }

    #[test]
    fn meridian_disc_of_solid_torus() {
        // Euler functional and reconstruction agree on every small admissible
        // vector of the one-tetrahedron solid torus.
        let t = Triangulation::solid_torus();
        let a = crate::normal::matching_equations(&t).unwrap();
        let chi = euler_functional(&t).unwrap();
        let mut found_disc = false;
        for code in 0..4u32.pow(7) {
            let v: Vec<i64> = (0..7).map(|i| ((code >> (2 * i)) & 3) as i64).collect();
            let x = NormalVector::from_integers(&v).unwrap();
            if x.is_zero() || !crate::normal::is_admissible(&x, &a) {
                continue;
            }
            let comps = reconstruct_components(&t, &x).unwrap();
            let total: i64 = comps.iter().map(|c| c.euler).sum();
            assert_eq!(Rational::from_integer(total.into()), chi.eval(&x), "{x}");
            if comps.len() == 1 && comps[0].euler == 1 && x.has_zero_triangle() {
                found_disc = true;
                assert!(crate::normal::is_boundary_nontrivial(&x, &t).unwrap());
            }
        }
        assert!(found_disc);
    }

}
