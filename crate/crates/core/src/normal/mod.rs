//! Normal surfaces in standard triangle/quadrilateral coordinates.
//!
//! Each tetrahedron `t` owns seven coordinates at `7t + s`: slots 0..=3 are
//! the triangles linking vertices 0..=3, and slots 4, 5, 6 the quads
//! separating `{0,1}|{2,3}`, `{0,2}|{1,3}` and `{0,3}|{1,2}`.

mod reconstruct;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::tri::{Skeleton, Triangulation, EDGE_VERTICES};
use crate::Rational;

pub use reconstruct::{reconstruct_components, SurfaceComponent};

/// Index of coordinate `slot` of tetrahedron `tet`.
#[inline]
pub const fn coord(tet: usize, slot: usize) -> usize {
    7 * tet + slot
}

/// Variable index of the `i`-th triangle coordinate, counting only
/// triangle slots (`0..4n`).
#[inline]
pub const fn triangle_var(i: usize) -> usize {
    7 * (i / 4) + i % 4
}

/// Quad type (0..3) whose vertex partition puts `a` and `b` on the same side.
#[inline]
pub fn quad_pairing(a: usize, b: usize) -> usize {
    let e = crate::tri::edge_index(a, b);
    e.min(5 - e)
}

/// Whether vertex `v` lies on the same side as vertex 0 in quad type `k`.
#[inline]
pub fn on_zero_side(k: usize, v: usize) -> bool {
    v == 0 || v == k + 1
}

/// The vertex on the same side as `v` in quad type `k`.
#[inline]
pub fn quad_partner(k: usize, v: usize) -> usize {
    let [a, b] = EDGE_VERTICES[k];
    let [c, d] = EDGE_VERTICES[5 - k];
    match v {
        _ if v == a => b,
        _ if v == b => a,
        _ if v == c => d,
        _ => c,
    }
}

/// The two quad types that cross the edge joining `a` and `b`.
pub fn quads_crossing(a: usize, b: usize) -> [usize; 2] {
    let paired = quad_pairing(a, b);
    let mut out = [0; 2];
    let mut i = 0;
    for k in 0..3 {
        if k != paired {
            out[i] = k;
            i += 1;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalVector {
    coords: Vec<Rational>,
}

impl NormalVector {
    pub fn zero(n: usize) -> Self {
        NormalVector { coords: vec![Rational::zero(); 7 * n] }
    }

    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if !coords.len().is_multiple_of(7) {
            return Err(Error::Dimension { got: coords.len(), expected: 7 * (coords.len() / 7 + 1) });
        }
        Ok(NormalVector { coords })
    }

    pub fn from_integers<I: Into<BigInt> + Copy>(values: &[I]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn size(&self) -> usize {
        self.coords.len() / 7
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    #[inline]
    pub fn get(&self, tet: usize, slot: usize) -> &Rational {
        &self.coords[coord(tet, slot)]
    }

    pub fn set(&mut self, index: usize, value: Rational) {
        self.coords[index] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates as `u64`, if all are non-negative integers that fit.
    pub fn to_counts(&self) -> Option<Vec<u64>> {
        self.coords
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_u64() } else { None })
            .collect()
    }

    pub fn scaled(&self, k: &Rational) -> NormalVector {
        NormalVector { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn add(&self, other: &NormalVector) -> NormalVector {
        assert_eq!(self.len(), other.len());
        NormalVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    /// Nonzero quad slots (4..=6) of tetrahedron `tet`.
    pub fn quads_in(&self, tet: usize) -> impl Iterator<Item = usize> + '_ {
        (4..7).filter(move |&s| !self.get(tet, s).is_zero())
    }

    pub fn has_zero_triangle(&self) -> bool {
        (0..4 * self.size()).any(|i| self.coords[triangle_var(i)].is_zero())
    }

    /// The smallest positive multiple with integer coordinates.
    pub fn scale_to_primitive(&self) -> Result<NormalVector> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let denom_lcm = self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coords.iter().map(|c| (c * &denom_lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        Ok(NormalVector {
            coords: ints.into_iter().map(|v| Rational::from_integer(v / &g)).collect(),
        })
    }
}

impl fmt::Display for NormalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for NormalVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split_whitespace()
            .map(|tok| tok.parse::<Rational>().map_err(|_| Error::VectorFormat(format!("bad entry {tok:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if !coords.len().is_multiple_of(7) {
            return Err(Error::VectorFormat(format!("{} entries is not a multiple of 7", coords.len())));
        }
        Ok(NormalVector { coords })
    }
}

/// One matching equation `x[plus[0]] + x[plus[1]] - x[minus[0]] - x[minus[1]] = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchingRow {
    pub plus: [usize; 2],
    pub minus: [usize; 2],
}

impl MatchingRow {
    /// Coefficients with repeated variables merged; zeros dropped.
    pub fn sparse(&self) -> BTreeMap<usize, i64> {
        let mut m = BTreeMap::new();
        for &v in &self.plus {
            *m.entry(v).or_insert(0) += 1;
        }
        for &v in &self.minus {
            *m.entry(v).or_insert(0) -= 1;
        }
        m.retain(|_, c| *c != 0);
        m
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        &x[self.plus[0]] + &x[self.plus[1]] - &x[self.minus[0]] - &x[self.minus[1]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingSystem {
    pub vars: usize,
    pub rows: Vec<MatchingRow>,
}

impl MatchingSystem {
    pub fn build(tri: &Triangulation, skel: &Skeleton) -> Self {
        let mut rows = Vec::new();
        for class in &skel.faces {
            let &[(a, i), (b, j)] = class.embeddings.as_slice() else { continue };
            let perm = tri.adjacent(a, i).expect("internal face");
            debug_assert_eq!((perm.tet, perm.perm.apply(i)), (b, j));
            for w in (0..4).filter(|&w| w != i) {
                let w2 = perm.perm.apply(w);
                rows.push(MatchingRow {
                    plus: [coord(a, w), coord(a, 4 + quad_pairing(w, i))],
                    minus: [coord(b, w2), coord(b, 4 + quad_pairing(w2, j))],
                });
            }
        }
        MatchingSystem { vars: 7 * tri.size(), rows }
    }

    pub fn satisfied_by(&self, x: &NormalVector) -> bool {
        x.len() == self.vars && self.rows.iter().all(|r| r.eval(x.coords()).is_zero())
    }
}

pub fn matching_equations(tri: &Triangulation) -> Result<MatchingSystem> {
    Ok(MatchingSystem::build(tri, &tri.skeleton()?))
}

/// Integer coefficients `c` with `χ(x) = c · x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerFunctional {
    pub coeffs: Vec<i64>,
}

impl EulerFunctional {
    pub fn build(skel: &Skeleton) -> Self {
        let mut c = vec![1i64; 7 * skel.size];
        for face in &skel.faces {
            let (t, i) = face.embeddings[0];
            for w in (0..4).filter(|&w| w != i) {
                c[coord(t, w)] -= 1;
            }
            for k in 4..7 {
                c[coord(t, k)] -= 1;
            }
        }
        for edge in &skel.edges {
            let e = edge.embeddings[0];
            let [a, b] = EDGE_VERTICES[e.edge];
            c[coord(e.tet, a)] += 1;
            c[coord(e.tet, b)] += 1;
            for k in quads_crossing(a, b) {
                c[coord(e.tet, 4 + k)] += 1;
            }
        }
        EulerFunctional { coeffs: c }
    }

    pub fn eval(&self, x: &NormalVector) -> Rational {
        self.coeffs
            .iter()
            .zip(x.coords())
            .filter(|(c, _)| **c != 0)
            .map(|(&c, v)| v * Rational::from_integer(c.into()))
            .sum()
    }

    pub fn eval_counts(&self, x: &[u64]) -> i64 {
        self.coeffs.iter().zip(x).map(|(&c, &v)| c * v as i64).sum()
    }

    pub fn range(&self) -> Option<(i64, i64)> {
        Some((*self.coeffs.iter().min()?, *self.coeffs.iter().max()?))
    }
}

pub fn euler_functional(tri: &Triangulation) -> Result<EulerFunctional> {
    Ok(EulerFunctional::build(&tri.skeleton()?))
}

/// The link of the unique vertex: every triangle coordinate 1.
pub fn vertex_link_vector(tri: &Triangulation) -> Result<NormalVector> {
    let v = tri.count_vertices()?;
    if v != 1 {
        return Err(Error::NotOneVertex(v));
    }
    let mut x = NormalVector::zero(tri.size());
    for i in 0..4 * tri.size() {
        x.set(triangle_var(i), Rational::one());
    }
    Ok(x)
}

pub fn is_admissible(x: &NormalVector, a: &MatchingSystem) -> bool {
    x.len() == a.vars
        && x.coords().iter().all(|c| !c.is_negative())
        && (0..x.size()).all(|t| x.quads_in(t).count() <= 1)
        && a.satisfied_by(x)
}

/// The six boundary arc counts of a one-vertex torus boundary: for each of
/// the two boundary faces (in face-class order) and each corner.
pub fn boundary_arc_counts(x: &NormalVector, skel: &Skeleton) -> Result<Vec<Rational>> {
    let bfaces: Vec<(usize, usize)> =
        skel.faces.iter().filter(|f| f.is_boundary()).map(|f| f.embeddings[0]).collect();
    if bfaces.len() != 2 || skel.vertices.len() != 1 {
        return Err(Error::WrongBoundary(format!(
            "{} boundary faces and {} vertices",
            bfaces.len(),
            skel.vertices.len()
        )));
    }
    let mut counts = Vec::with_capacity(6);
    for (t, f) in bfaces {
        for w in (0..4).filter(|&w| w != f) {
            counts.push(x.get(t, w) + x.get(t, 4 + quad_pairing(w, f)));
        }
    }
    Ok(counts)
}

/// Whether the boundary of the disc `x` is an essential curve on the
/// two-triangle boundary torus, i.e. not a union of vertex-linking loops.
pub fn is_boundary_nontrivial(x: &NormalVector, tri: &Triangulation) -> Result<bool> {
    let skel = tri.skeleton()?;
    let counts = boundary_arc_counts(x, &skel)?;
    Ok(counts.iter().any(|c| c != &counts[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn quad_tables() {
        assert_eq!(quad_pairing(0, 1), 0);
        assert_eq!(quad_pairing(3, 2), 0);
        assert_eq!(quad_pairing(0, 2), 1);
        assert_eq!(quad_pairing(1, 3), 1);
        assert_eq!(quad_pairing(0, 3), 2);
        assert_eq!(quad_pairing(1, 2), 2);
        for k in 0..3 {
            for v in 0..4 {
                let p = quad_partner(k, v);
                assert_ne!(p, v);
                assert_eq!(quad_pairing(v, p), k);
                assert_eq!(on_zero_side(k, v), on_zero_side(k, p));
            }
        }
        assert_eq!(quads_crossing(0, 1), [1, 2]);
    }

    #[test]
    fn solid_torus_matching_and_euler() {
        let t = Triangulation::solid_torus();
        let a = matching_equations(&t).unwrap();
        assert_eq!(a.rows.len(), 3);
        let chi = euler_functional(&t).unwrap();
        let link = vertex_link_vector(&t).unwrap();
        assert_eq!(link.to_string(), "1 1 1 1 0 0 0");
        assert!(is_admissible(&link, &a));
        assert_eq!(chi.eval(&link), Rational::one());
        assert!(!is_boundary_nontrivial(&link, &t).unwrap());
        let (lo, hi) = chi.range().unwrap();
        assert!(lo >= -3 && hi <= 5);
    }

    #[test]
    fn unglued_tetrahedron_has_no_equations() {
        assert!(matching_equations(&Triangulation::unglued(1)).unwrap().rows.is_empty());
        assert!(matches!(vertex_link_vector(&Triangulation::unglued(1)), Err(Error::NotOneVertex(4))));
    }

    #[test]
    fn primitive_scaling() {
        let mut x = NormalVector::zero(1);
        x.set(0, r(1, 2));
        x.set(1, r(1, 3));
        assert_eq!(x.scale_to_primitive().unwrap().to_string(), "3 2 0 0 0 0 0");
        let y = NormalVector::from_integers(&[4, 6, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(y.scale_to_primitive().unwrap().to_string(), "2 3 0 0 0 0 0");
        let z = NormalVector::from_integers(&[2, 3, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(z.scale_to_primitive().unwrap(), z);
        assert_eq!(NormalVector::zero(1).scale_to_primitive(), Err(Error::ZeroVector));
    }

    #[test]
    fn admissibility_rejections() {
        let t = Triangulation::solid_torus();
        let a = matching_equations(&t).unwrap();
        let two_quads = NormalVector::from_integers(&[0, 0, 0, 0, 1, 1, 0]).unwrap();
        assert!(!is_admissible(&two_quads, &a));
        let negative = NormalVector::from_integers(&[-1, -1, -1, -1, 0, 0, 0]).unwrap();
        assert!(!is_admissible(&negative, &a));
    }

    #[test]
    fn vector_text_round_trip() {
        let text = "1/2 3 0 0 0 0 -2/7";
        let x: NormalVector = text.parse().unwrap();
        assert_eq!(x.to_string(), text);
        assert!("1 2 3".parse::<NormalVector>().is_err());
        assert!("1 2 3 4 5 6 x".parse::<NormalVector>().is_err());
    }
}
