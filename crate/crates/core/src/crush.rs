//! Crushing a normal sphere or disc, and picking out the piece of the result
//! that is still the knot complement.
//!
//! Tetrahedra free of quads survive. Each quad-carrying tetrahedron flattens
//! into two triangles: with quads separating `{a,b}|{c,d}`, the pillow on the
//! `ab` side identifies faces `c` and `d` (swapping `c` and `d`), and the one
//! on the `cd` side identifies faces `a` and `b`. A survivor's face is glued
//! by walking through these pillows until another survivor face or the
//! boundary is reached.

use crate::error::{Error, Result};
use crate::normal::{is_admissible, MatchingSystem, NormalVector};
use crate::tri::{Adjacent, BoundaryKind, Perm4, Triangulation, EDGE_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrushResult {
    /// The crushed triangulation (possibly empty or disconnected).
    pub triangulation: Triangulation,
    /// Original index of each surviving tetrahedron, ascending.
    pub origin: Vec<usize>,
    /// Walker steps over all traced paths: one per tetrahedron entered.
    pub steps: usize,
}

/// The quad type present in each tetrahedron, if any.
fn quad_types(tri: &Triangulation, s: &NormalVector) -> Result<Vec<Option<usize>>> {
    (0..tri.size())
        .map(|t| {
            let mut it = s.quads_in(t);
            let q = it.next().map(|slot| slot - 4);
            if it.next().is_some() {
                return Err(Error::CrushPrecondition(format!("two quad types in tetrahedron {t}")));
            }
            Ok(q)
        })
        .collect()
}

/// The face a path leaves by after entering a tetrahedron with quads of
/// type `k` through face `f`, with the induced relabelling.
pub fn pillow_exit(k: usize, f: usize) -> (usize, Perm4) {
    let [a, b] = EDGE_VERTICES[k];
    let [c, d] = EDGE_VERTICES[5 - k];
    let pair = if f == a || f == b { [a, b] } else { [c, d] };
    let exit = if f == pair[0] { pair[1] } else { pair[0] };
    (exit, Perm4::transposition(pair[0], pair[1]))
}

enum End {
    Face { tet: usize, face: usize, perm: Perm4 },
    Boundary,
}

/// Follows the path from face `face` of survivor `tet`. `perm` maps the
/// start tetrahedron's labels to the end's.
fn walk(tri: &Triangulation, quads: &[Option<usize>], tet: usize, face: usize, steps: &mut usize) -> Result<End> {
    let mut perm = Perm4::IDENTITY;
    let (mut t, mut f) = (tet, face);
    // A path cannot revisit a pillow, so it is at most 2n + 1 steps long.
    let limit = 2 * tri.size() + 1;
    for _ in 0..limit {
        let Some(adj) = tri.adjacent(t, f) else {
            return Ok(End::Boundary);
        };
        *steps += 1;
        perm = adj.perm.compose(perm);
        let g = adj.perm.apply(f);
        match quads[adj.tet] {
            None => return Ok(End::Face { tet: adj.tet, face: g, perm }),
            Some(k) => {
                let (exit, swap) = pillow_exit(k, g);
                perm = swap.compose(perm);
                t = adj.tet;
                f = exit;
            }
        }
    }
    Err(Error::Crush(format!("path from face {face} of tetrahedron {tet} does not terminate")))
}

/// Crushes the admissible integer surface `s`, which must contain a quad.
pub fn crush(tri: &Triangulation, s: &NormalVector) -> Result<CrushResult> {
    let n = tri.size();
    if s.len() != 7 * n {
        return Err(Error::Dimension { got: s.len(), expected: 7 * n });
    }
    if !s.is_integral() || !is_admissible(s, &MatchingSystem::build(tri, &tri.skeleton()?)) {
        return Err(Error::CrushPrecondition("surface is not an admissible integer vector".into()));
    }
    let quads = quad_types(tri, s)?;
    if quads.iter().all(Option::is_none) {
        return Err(Error::CrushPrecondition("surface has no quadrilaterals (a union of vertex links)".into()));
    }
    let origin: Vec<usize> = (0..n).filter(|&t| quads[t].is_none()).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &t) in origin.iter().enumerate() {
        index[t] = i;
    }
    let mut gluings: Vec<[Option<Adjacent>; 4]> = vec![[None; 4]; origin.len()];
    let mut done = vec![[false; 4]; origin.len()];
    let mut steps = 0;
    for (i, &t) in origin.iter().enumerate() {
        for f in 0..4 {
            if done[i][f] {
                continue;
            }
            done[i][f] = true;
            if let End::Face { tet, face, perm } = walk(tri, &quads, t, f, &mut steps)? {
                let j = index[tet];
                if (j, face) == (i, f) {
                    return Err(Error::Crush(format!("face {f} of tetrahedron {t} would be glued to itself")));
                }
                if done[j][face] {
                    return Err(Error::Crush(format!("face {face} of tetrahedron {tet} is reached twice")));
                }
                done[j][face] = true;
                gluings[i][f] = Some(Adjacent { tet: j, perm });
                gluings[j][face] = Some(Adjacent { tet: i, perm: perm.inverse() });
            }
        }
    }
    let triangulation = Triangulation::from_gluings(gluings)?;
    Ok(CrushResult { triangulation, origin, steps })
}

/// Traces every survivor face independently and checks that the path from
/// each end arrives at the other with the inverse relabelling.
pub fn paths_agree(tri: &Triangulation, s: &NormalVector, cr: &CrushResult) -> Result<bool> {
    let quads = quad_types(tri, s)?;
    let mut steps = 0;
    for (i, &t) in cr.origin.iter().enumerate() {
        for f in 0..4 {
            let expect = cr.triangulation.adjacent(i, f);
            let got = match walk(tri, &quads, t, f, &mut steps)? {
                End::Boundary => None,
                End::Face { tet, face, perm } => {
                    let j = cr.origin.binary_search(&tet).map_err(|_| Error::Crush("path ends off the survivors".into()))?;
                    debug_assert_eq!(perm.apply(f), face);
                    Some(Adjacent { tet: j, perm })
                }
            };
            if got != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extracted {
    /// The unique torus-boundary component, with original tetrahedron indices.
    Reduced { triangulation: Triangulation, origin: Vec<usize> },
    /// No component has torus boundary: the knot is trivial.
    KnotIsTrivial,
}

/// Picks the torus-boundary component of a crushed knot complement. Closed
/// and sphere-boundary pieces are discarded.
pub fn extract_complement(cr: &CrushResult) -> Result<Extracted> {
    let mut found = None;
    for (comp, local) in cr.triangulation.components_with_origin() {
        match comp.boundary_kind()? {
            BoundaryKind::TorusBoundary => {
                if found.is_some() {
                    return Err(Error::Crush("more than one torus-boundary component after crushing".into()));
                }
                let origin = local.iter().map(|&i| cr.origin[i]).collect();
                found = Some(Extracted::Reduced { triangulation: comp, origin });
            }
            BoundaryKind::SphereBoundary | BoundaryKind::Closed => {}
            BoundaryKind::Other => {
                return Err(Error::Crush("crushing produced a component that is neither a ball, a sphere nor a knot complement".into()))
            }
        }
    }
    Ok(found.unwrap_or(Extracted::KnotIsTrivial))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{find_surface, SearchOptions};

    #[test]
    fn pillow_table() {
        // Quads {0,1}|{2,3}: faces 2 and 3 pair up, as do 0 and 1.
        assert_eq!(pillow_exit(0, 2), (3, Perm4::transposition(2, 3)));
        assert_eq!(pillow_exit(0, 1), (0, Perm4::transposition(0, 1)));
        assert_eq!(pillow_exit(2, 1), (2, Perm4::transposition(1, 2)));
        for k in 0..3 {
            for f in 0..4 {
                let (g, p) = pillow_exit(k, f);
                assert_ne!(g, f);
                assert_eq!(pillow_exit(k, g).0, f);
                assert_eq!(p.apply(f), g);
            }
        }
    }

    #[test]
    fn solid_torus_disc_crushes_to_nothing() {
        let t = Triangulation::solid_torus();
        let s = find_surface(&t, &SearchOptions::default()).unwrap().surface.unwrap();
        let cr = crush(&t, &s).unwrap();
        assert!(cr.triangulation.is_empty());
        assert_eq!(cr.steps, 0);
        assert_eq!(extract_complement(&cr).unwrap(), Extracted::KnotIsTrivial);
    }

    #[test]
    fn vertex_link_is_rejected() {
        let t = Triangulation::solid_torus();
        let link = crate::normal::vertex_link_vector(&t).unwrap();
        assert!(matches!(crush(&t, &link), Err(Error::CrushPrecondition(_))));
    }
}
