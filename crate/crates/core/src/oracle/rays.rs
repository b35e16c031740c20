//! Admissible extreme rays of the normal-surface cone, by double
//! description, and the questions the search answers decided from them.
//!
//! The admissible part of `{x ≥ 0, A x = 0}` is the union of `3^n` faces,
//! one per choice of the single quad type allowed in each tetrahedron. Every
//! admissible vector is a non-negative combination of extreme rays of one
//! face, so a linear condition holds somewhere in the admissible region
//! exactly when it holds on some such ray.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::normal::{coord, matching_equations, reconstruct_components, EulerFunctional, NormalVector};
use crate::search::{find_surface, SearchOptions};
use crate::tri::Triangulation;
use crate::Rational;

/// Largest triangulation the enumeration accepts.
pub const MAX_RAY_TETS: usize = 4;

struct Ray {
    x: Vec<BigInt>,
    /// Bit `i` set when coordinate `i` is zero.
    zeros: u64,
}

impl Ray {
    fn new(mut x: Vec<BigInt>) -> Self {
        let g = x.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        if !g.is_zero() {
            for v in &mut x {
                *v /= &g;
            }
        }
        let zeros = x.iter().enumerate().filter(|(_, v)| v.is_zero()).fold(0, |m, (i, _)| m | 1 << i);
        Ray { x, zeros }
    }
}

/// Extreme rays of `{y ≥ 0 : rows · y = 0}` in `k ≤ 64` coordinates, as
/// primitive integer vectors.
pub fn cone_rays(k: usize, rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    assert!(k <= 64);
    let mut rays: Vec<Ray> = (0..k)
        .map(|i| Ray::new((0..k).map(|j| BigInt::from(i64::from(i == j))).collect()))
        .collect();
    for row in rows {
        if row.iter().all(|&c| c == 0) {
            continue;
        }
        let s: Vec<BigInt> =
            rays.iter().map(|r| r.x.iter().zip(row).map(|(x, &c)| x * c).sum::<BigInt>()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if s[i].is_zero() {
                next.push(Ray { x: r.x.clone(), zeros: r.zeros });
            }
        }
        for (p, rp) in rays.iter().enumerate().filter(|(i, _)| s[*i].is_positive()) {
            for (q, rq) in rays.iter().enumerate().filter(|(i, _)| s[*i].is_negative()) {
                // Adjacent iff no third ray is zero wherever both are.
                let common = rp.zeros & rq.zeros;
                let blocked =
                    rays.iter().enumerate().any(|(o, ro)| o != p && o != q && ro.zeros & common == common);
                if blocked {
                    continue;
                }
                let x = rp.x.iter().zip(&rq.x).map(|(a, b)| -&s[q] * a + &s[p] * b).collect();
                next.push(Ray::new(x));
            }
        }
        rays = next;
    }
    rays.into_iter().map(|r| r.x).collect()
}

/// All admissible extreme rays of the normal-surface cone of `tri`, as
/// primitive integer vectors in ascending order.
pub fn admissible_vertex_rays(tri: &Triangulation) -> Result<Vec<NormalVector>> {
    let n = tri.size();
    if n > MAX_RAY_TETS {
        return Err(Error::OracleTooLarge(7 * n));
    }
    let rows: Vec<_> = matching_equations(tri)?.rows.iter().map(|r| r.sparse()).collect();
    let mut found: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for choice in 0..3usize.pow(n as u32) {
        let free: Vec<usize> = (0..n)
            .flat_map(|t| {
                let q = choice / 3usize.pow(t as u32) % 3;
                (0..4).chain([4 + q]).map(move |s| coord(t, s))
            })
            .collect();
        let local: Vec<Vec<i64>> =
            rows.iter().map(|r| free.iter().map(|v| r.get(v).copied().unwrap_or(0)).collect()).collect();
        for y in cone_rays(free.len(), &local) {
            let mut x = vec![BigInt::zero(); 7 * n];
            for (v, val) in free.iter().zip(y) {
                x[*v] = val;
            }
            found.insert(x);
        }
    }
    found.into_iter().map(|x| NormalVector::new(x.into_iter().map(Rational::from_integer).collect())).collect()
}

/// An admissible extreme ray with `χ > 0` and some triangle coordinate
/// zero, if one exists: exactly when the search must succeed.
pub fn positive_non_link_ray(tri: &Triangulation) -> Result<Option<NormalVector>> {
    let chi = EulerFunctional::build(&tri.skeleton()?);
    Ok(admissible_vertex_rays(tri)?
        .into_iter()
        .find(|r| r.has_zero_triangle() && chi.eval(r).is_positive()))
}

/// The search and the ray enumeration side by side on one triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyCheck {
    pub search_found: bool,
    pub oracle_found: bool,
    /// Components of the surface the search returned.
    pub components: Option<usize>,
}

impl TopologyCheck {
    /// The two answers coincide, and any surface found is connected.
    pub fn agrees(&self) -> bool {
        self.search_found == self.oracle_found && self.components.is_none_or(|c| c == 1)
    }
}

/// Runs the search on the one-vertex triangulation `tri` and compares it
/// with the extreme-ray answer.
pub fn check_topology(tri: &Triangulation, opts: &SearchOptions) -> Result<TopologyCheck> {
    let found = find_surface(tri, opts)?;
    let components = match &found.surface {
        Some(s) => Some(reconstruct_components(tri, s)?.len()),
        None => None,
    };
    Ok(TopologyCheck {
        search_found: found.surface.is_some(),
        oracle_found: positive_non_link_ray(tri)?.is_some(),
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::{is_admissible, vertex_link_vector, MatchingSystem};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn square_pyramid_cone() {
        // y0 + y1 = y2 + y3 has the four rays e_i + e_j, i < 2 <= j.
        let mut rays = cone_rays(4, &[vec![1, 1, -1, -1]]);
        rays.sort();
        let mut want = vec![ints(&[0, 1, 0, 1]), ints(&[0, 1, 1, 0]), ints(&[1, 0, 0, 1]), ints(&[1, 0, 1, 0])];
        want.sort();
        assert_eq!(rays, want);
    }

    #[test]
    fn no_equations_gives_unit_vectors() {
        assert_eq!(cone_rays(3, &[]).len(), 3);
        assert!(cone_rays(2, &[vec![1, 1]]).is_empty());
    }

    #[test]
    fn solid_torus_rays() {
        let t = Triangulation::solid_torus();
        let rays = admissible_vertex_rays(&t).unwrap();
        let a = MatchingSystem::build(&t, &t.skeleton().unwrap());
        assert!(rays.iter().all(|r| is_admissible(r, &a)));
        assert!(rays.contains(&vertex_link_vector(&t).unwrap()));
        assert!(positive_non_link_ray(&t).unwrap().is_some());
        assert!(check_topology(&t, &SearchOptions::default()).unwrap().agrees());
    }
}
