//! Generalised 3-manifold triangulations.
//!
//! Face `f` of a tetrahedron is the face opposite vertex `f`. A gluing
//! `(t, f) -> (t', π)` identifies face `f` of `t` with face `π(f)` of `t'`,
//! sending vertex `v` of `t` to vertex `π(v)` of `t'`.

mod components;
mod moves;
mod perm;
mod skeleton;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use components::BoundaryKind;
pub use perm::Perm4;
pub use skeleton::{EdgeClass, EdgeEmbedding, FaceClass, Skeleton, VertexClass};

/// Vertex pairs of the six edges of a tetrahedron.
pub const EDGE_VERTICES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Index of the edge joining vertices `a` and `b` (`a != b`).
pub fn edge_index(a: usize, b: usize) -> usize {
    debug_assert!(a != b && a < 4 && b < 4);
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        _ => 5,
    }
}

/// The far side of a glued face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Adjacent {
    pub tet: usize,
    pub perm: Perm4,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Triangulation {
    gluings: Vec<[Option<Adjacent>; 4]>,
}

impl Triangulation {
    /// `n` tetrahedra with every face on the boundary.
    pub fn unglued(n: usize) -> Self {
        Triangulation { gluings: vec![[None; 4]; n] }
    }

    /// Builds and validates a triangulation from raw gluing data.
    pub fn from_gluings(gluings: Vec<[Option<Adjacent>; 4]>) -> Result<Self> {
        let tri = Triangulation { gluings };
        tri.validate()?;
        Ok(tri)
    }

    /// The standard one-tetrahedron, one-vertex solid torus.
    pub fn solid_torus() -> Self {
        let mut t = Triangulation::unglued(1);
        t.glue(0, 0, 0, Perm4::new([1, 2, 3, 0]).unwrap()).expect("valid gluing");
        t
    }

    pub fn size(&self) -> usize {
        self.gluings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gluings.is_empty()
    }

    #[inline]
    pub fn adjacent(&self, tet: usize, face: usize) -> Option<Adjacent> {
        self.gluings[tet][face]
    }

    pub fn gluings(&self) -> &[[Option<Adjacent>; 4]] {
        &self.gluings
    }

    pub fn add_tetrahedron(&mut self) -> usize {
        self.gluings.push([None; 4]);
        self.gluings.len() - 1
    }

    /// Glues face `face` of `tet` to face `perm(face)` of `target`, setting
    /// both directions. Both faces must currently be boundary.
    pub fn glue(&mut self, tet: usize, face: usize, target: usize, perm: Perm4) -> Result<()> {
        let n = self.size();
        if target >= n {
            return Err(Error::IndexOutOfRange { tet, face, target, n });
        }
        let other = perm.apply(face);
        if target == tet && other == face {
            return Err(Error::SelfGluedFace { tet, face });
        }
        if self.gluings[tet][face].is_some() || self.gluings[target][other].is_some() {
            return Err(Error::Involution { tet, face });
        }
        self.gluings[tet][face] = Some(Adjacent { tet: target, perm });
        self.gluings[target][other] = Some(Adjacent { tet, perm: perm.inverse() });
        Ok(())
    }

    /// Makes face `face` of `tet` (and its partner) boundary again.
    pub fn unglue(&mut self, tet: usize, face: usize) {
        if let Some(adj) = self.gluings[tet][face].take() {
            self.gluings[adj.tet][adj.perm.apply(face)] = None;
        }
    }

    /// Checks index ranges, the gluing involution and self-glued faces.
    pub fn validate(&self) -> Result<()> {
        let n = self.size();
        for (tet, faces) in self.gluings.iter().enumerate() {
            for (face, adj) in faces.iter().enumerate() {
                let Some(adj) = adj else { continue };
                if adj.tet >= n {
                    return Err(Error::IndexOutOfRange { tet, face, target: adj.tet, n });
                }
                let other = adj.perm.apply(face);
                if adj.tet == tet && other == face {
                    return Err(Error::SelfGluedFace { tet, face });
                }
                match self.gluings[adj.tet][other] {
                    Some(back) if back.tet == tet && back.perm == adj.perm.inverse() => {}
                    _ => return Err(Error::Involution { tet, face }),
                }
            }
        }
        Ok(())
    }

    pub fn boundary_face_count(&self) -> usize {
        self.gluings.iter().flatten().filter(|g| g.is_none()).count()
    }

    pub fn has_boundary(&self) -> bool {
        self.boundary_face_count() > 0
    }

    pub fn skeleton(&self) -> Result<Skeleton> {
        Skeleton::build(self)
    }

    /// V − E + F − n over skeleton classes.
    pub fn euler_characteristic(&self) -> Result<i64> {
        Ok(self.skeleton()?.euler_characteristic())
    }

    pub fn count_vertices(&self) -> Result<usize> {
        Ok(self.skeleton()?.vertices.len())
    }

    pub fn is_one_vertex(&self) -> Result<bool> {
        Ok(self.count_vertices()? == 1)
    }

    /// Places `other` after `self`, with no gluings between them.
    pub fn disjoint_union(&self, other: &Triangulation) -> Triangulation {
        let shift = self.size();
        let mut gluings = self.gluings.clone();
        gluings.extend(other.gluings.iter().map(|faces| {
            faces.map(|adj| adj.map(|a| Adjacent { tet: a.tet + shift, perm: a.perm }))
        }));
        Triangulation { gluings }
    }

    /// Renumbers tetrahedra: old tetrahedron `t` becomes `order[t]`.
    pub fn relabel(&self, order: &[usize]) -> Triangulation {
        assert_eq!(order.len(), self.size());
        let mut gluings = vec![[None; 4]; self.size()];
        for (t, faces) in self.gluings.iter().enumerate() {
            gluings[order[t]] =
                faces.map(|adj| adj.map(|a| Adjacent { tet: order[a.tet], perm: a.perm }));
        }
        Triangulation { gluings }
    }

    /// Parses the gluing-table text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, header) = lines.next().ok_or_else(|| Error::Syntax {
            line: text.lines().count().max(1),
            msg: "missing tetrahedron count".into(),
        })?;
        let n: usize = header.parse().map_err(|_| Error::Syntax {
            line: line_no,
            msg: format!("expected tetrahedron count, found {header:?}"),
        })?;

        let mut gluings = vec![[None; 4]; n];
        let mut seen = vec![false; n];
        for (line, body) in lines {
            let syntax = |msg: String| Error::Syntax { line, msg };
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(syntax(format!("expected 5 fields, found {}", fields.len())));
            }
            let tet: usize =
                fields[0].parse().map_err(|_| syntax(format!("bad index {:?}", fields[0])))?;
            if tet >= n {
                return Err(syntax(format!("tetrahedron {tet} out of range (n = {n})")));
            }
            if std::mem::replace(&mut seen[tet], true) {
                return Err(syntax(format!("tetrahedron {tet} listed twice")));
            }
            for (face, entry) in fields[1..].iter().enumerate() {
                if *entry == "-" {
                    continue;
                }
                let (target, perm) = entry
                    .split_once(':')
                    .ok_or_else(|| syntax(format!("bad face entry {entry:?}")))?;
                let target: usize =
                    target.parse().map_err(|_| syntax(format!("bad face entry {entry:?}")))?;
                let perm = Perm4::parse(perm)
                    .ok_or_else(|| syntax(format!("bad permutation in {entry:?}")))?;
                if target >= n {
                    return Err(Error::IndexOutOfRange { tet, face, target, n });
                }
                gluings[tet][face] = Some(Adjacent { tet: target, perm });
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Syntax {
                line: text.lines().count(),
                msg: format!("no line for tetrahedron {missing}"),
            });
        }
        Triangulation::from_gluings(gluings)
    }

    /// Serialises to the gluing-table text format (no comments).
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.size())?;
        for (t, faces) in self.gluings.iter().enumerate() {
            write!(f, "{t}")?;
            for adj in faces {
                match adj {
                    None => write!(f, " -")?,
                    Some(a) => write!(f, " {}:{}", a.tet, a.perm)?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Triangulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Triangulation::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SOLID_TORUS: &str = "1\n0 0:1230 0:3012 - -\n";

    #[test]
    fn solid_torus_round_trips() {
        let t = Triangulation::parse(SOLID_TORUS).unwrap();
        assert_eq!(t, Triangulation::solid_torus());
        assert_eq!(t.to_text(), SOLID_TORUS);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let t = Triangulation::parse("# hi\n\n1\n# mid\n0 0:1230 0:3012 - -\n").unwrap();
        assert_eq!(t.size(), 1);
    }

    #[test]
    fn empty_file_is_a_syntax_error() {
        assert!(matches!(Triangulation::parse(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn mismatched_inverse_is_rejected() {
        let err = Triangulation::parse("1\n0 0:1230 0:1230 - -\n").unwrap_err();
        assert!(matches!(err, Error::Involution { .. }), "{err}");
    }

    #[test]
    fn self_glued_face_is_rejected() {
        let err = Triangulation::parse("1\n0 0:0132 - - -\n").unwrap_err();
        assert_eq!(err, Error::SelfGluedFace { tet: 0, face: 0 });
    }

    #[test]
    fn out_of_range_target() {
        let err = Triangulation::parse("1\n0 3:0123 - - -\n").unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { target: 3, .. }));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = Triangulation::parse("2\n0 - - - -\n1 - - x:0123 -\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err}");
        let err = Triangulation::parse("2\n0 - - - -\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));
    }

    #[test]
    fn zero_tetrahedra_is_legal() {
        let t = Triangulation::parse("0\n").unwrap();
        assert!(t.is_empty());
        assert_eq!(t.to_text(), "0\n");
    }

    #[test]
    fn edge_indices() {
        for (i, [a, b]) in EDGE_VERTICES.iter().enumerate() {
            assert_eq!(edge_index(*a, *b), i);
            assert_eq!(edge_index(*b, *a), i);
        }
    }

    #[test]
    fn unglue_restores_boundary() {
        let mut t = Triangulation::solid_torus();
        t.unglue(0, 1);
        assert_eq!(t, Triangulation::unglued(1));
    }
}
