//! A small set of local moves: 2-3 and 3-2 Pachner moves and the 2-0 edge
//! move. Each returns a new triangulation, or `None` when the move does not
//! apply; results are validated before being returned.

use std::collections::HashMap;

use super::{Adjacent, Perm4, Triangulation, EDGE_VERTICES};

type Key = [usize; 3];

fn face_key(labels: &[usize; 4], face: usize) -> Key {
    let mut key = [0; 3];
    let mut i = 0;
    for (v, &l) in labels.iter().enumerate() {
        if v != face {
            key[i] = l;
            i += 1;
        }
    }
    key.sort_unstable();
    key
}

fn vertex_with_label(labels: &[usize; 4], label: usize) -> Option<usize> {
    labels.iter().position(|&l| l == label)
}

impl Triangulation {
    /// Replaces the tetrahedra of `old` (each with a vertex labelling) by new
    /// tetrahedra given as label quadruples with the same outer boundary.
    /// Untouched tetrahedra keep their relative order; new ones are appended.
    fn retriangulate(&self, old: &[(usize, [usize; 4])], new: &[[usize; 4]]) -> Option<Triangulation> {
        let mut region = vec![None; self.size()];
        for (i, (t, _)) in old.iter().enumerate() {
            if region[*t].replace(i).is_some() {
                return None;
            }
        }
        let mut old_faces: HashMap<Key, Vec<(usize, usize)>> = HashMap::new();
        for (i, (_, labels)) in old.iter().enumerate() {
            for g in 0..4 {
                old_faces.entry(face_key(labels, g)).or_default().push((i, g));
            }
        }
        let mut new_faces: HashMap<Key, Vec<(usize, usize)>> = HashMap::new();
        for (k, labels) in new.iter().enumerate() {
            for h in 0..4 {
                new_faces.entry(face_key(labels, h)).or_default().push((k, h));
            }
        }
        let outer = |m: &HashMap<Key, Vec<(usize, usize)>>| {
            let mut keys: Vec<Key> = m.iter().filter(|(_, v)| v.len() == 1).map(|(k, _)| *k).collect();
            keys.sort_unstable();
            keys
        };
        if outer(&old_faces) != outer(&new_faces) {
            return None;
        }

        let mut new_index = vec![usize::MAX; self.size()];
        let mut kept = 0;
        for t in 0..self.size() {
            if region[t].is_none() {
                new_index[t] = kept;
                kept += 1;
            }
        }
        let mut gluings: Vec<[Option<Adjacent>; 4]> = Vec::with_capacity(kept + new.len());
        for t in 0..self.size() {
            if region[t].is_none() {
                gluings.push(self.gluings[t].map(|adj| {
                    adj.filter(|a| region[a.tet].is_none())
                        .map(|a| Adjacent { tet: new_index[a.tet], perm: a.perm })
                }));
            }
        }
        gluings.extend(std::iter::repeat_n([None; 4], new.len()));

        // Maps vertices of new tetrahedron `k` to vertices of old tetrahedron
        // `i`, matching labels, with face `h` sent to face `g`.
        let sigma = |k: usize, h: usize, i: usize, g: usize| -> Option<Perm4> {
            let mut images = [0u8; 4];
            for x in 0..4 {
                images[x] = if x == h {
                    g as u8
                } else {
                    vertex_with_label(&old[i].1, new[k][x])? as u8
                };
            }
            Perm4::new(images)
        };

        for (key, slots) in &new_faces {
            match slots.as_slice() {
                &[(k, h)] => {
                    let (i, g) = old_faces[key][0];
                    let t = old[i].0;
                    let s = sigma(k, h, i, g)?;
                    match self.adjacent(t, g) {
                        None => {}
                        Some(adj) => match region[adj.tet] {
                            None => {
                                let perm = adj.perm.compose(s);
                                gluings[kept + k][h] = Some(Adjacent { tet: new_index[adj.tet], perm });
                                gluings[new_index[adj.tet]][perm.apply(h)] =
                                    Some(Adjacent { tet: kept + k, perm: perm.inverse() });
                            }
                            Some(j) => {
                                let g2 = adj.perm.apply(g);
                                let key2 = face_key(&old[j].1, g2);
                                let &[(k2, h2)] = new_faces.get(&key2)?.as_slice() else {
                                    return None;
                                };
                                let s2 = sigma(k2, h2, j, g2)?;
                                let perm = s2.inverse().compose(adj.perm).compose(s);
                                gluings[kept + k][h] = Some(Adjacent { tet: kept + k2, perm });
                            }
                        },
                    }
                }
                &[(k, h), (k2, h2)] => {
                    let mut images = [0u8; 4];
                    for x in 0..4 {
                        images[x] = if x == h {
                            h2 as u8
                        } else {
                            vertex_with_label(&new[k2], new[k][x])? as u8
                        };
                    }
                    let perm = Perm4::new(images)?;
                    gluings[kept + k][h] = Some(Adjacent { tet: kept + k2, perm });
                    gluings[kept + k2][h2] = Some(Adjacent { tet: kept + k, perm: perm.inverse() });
                }
                _ => return None,
            }
        }
        let result = Triangulation::from_gluings(gluings).ok()?;
        result.skeleton().ok()?;
        Some(result)
    }

    /// 2-3 move across face `face` of `tet`, which must join two distinct
    /// tetrahedra.
    pub fn two_three(&self, tet: usize, face: usize) -> Option<Triangulation> {
        let adj = self.adjacent(tet, face)?;
        if adj.tet == tet {
            return None;
        }
        let a_labels = [0, 1, 2, 3];
        let mut b_labels = [0; 4];
        for v in 0..4 {
            b_labels[adj.perm.apply(v)] = if v == face { 4 } else { v };
        }
        let tri: Vec<usize> = (0..4).filter(|&v| v != face).collect();
        let new = [
            [face, 4, tri[1], tri[2]],
            [face, 4, tri[0], tri[2]],
            [face, 4, tri[0], tri[1]],
        ];
        self.retriangulate(&[(tet, a_labels), (adj.tet, b_labels)], &new)
    }

    /// 3-2 move about an internal edge of degree three lying in three
    /// distinct tetrahedra, given by one of its embeddings.
    pub fn three_two(&self, tet: usize, edge: usize) -> Option<Triangulation> {
        let [a, b] = EDGE_VERTICES[edge];
        let [c, d] = other_two(a, b);
        // Labels: edge endpoints 0, 1; link vertices 2, 3, 4.
        let mut l0 = [0; 4];
        l0[a] = 0;
        l0[b] = 1;
        l0[c] = 2;
        l0[d] = 3;
        let adj0 = self.adjacent(tet, c)?;
        let t1 = adj0.tet;
        let mut l1 = [0; 4];
        for v in 0..4 {
            l1[adj0.perm.apply(v)] = if v == c { 4 } else { l0[v] };
        }
        let q1 = vertex_with_label(&l1, 3)?;
        let adj1 = self.adjacent(t1, q1)?;
        let t2 = adj1.tet;
        let mut l2 = [0; 4];
        for v in 0..4 {
            l2[adj1.perm.apply(v)] = if v == q1 { 2 } else { l1[v] };
        }
        if tet == t1 || t1 == t2 || t2 == tet {
            return None;
        }
        // The walk around the edge must close up after three steps.
        let r2 = vertex_with_label(&l2, 4)?;
        let adj2 = self.adjacent(t2, r2)?;
        if adj2.tet != tet || (0..4).any(|v| l0[adj2.perm.apply(v)] != if v == r2 { 3 } else { l2[v] }) {
            return None;
        }
        self.retriangulate(&[(tet, l0), (t1, l1), (t2, l2)], &[[0, 2, 3, 4], [1, 2, 3, 4]])
    }

    /// 2-0 move flattening the pillow around an internal edge of degree two,
    /// given by one of its embeddings. Conservative: every outer face of the
    /// pillow must be glued to a tetrahedron outside it, and the two edges
    /// opposite the flattened edge must be distinct and not both boundary.
    pub fn two_zero_edge(&self, tet: usize, edge: usize) -> Option<Triangulation> {
        let skel = self.skeleton().ok()?;
        let class = &skel.edges[skel.edge_of[tet][edge]];
        if class.boundary || class.embeddings.len() != 2 {
            return None;
        }
        let [a, b] = EDGE_VERTICES[edge];
        let [c, d] = other_two(a, b);
        let rho = self.adjacent(tet, d)?;
        let t2 = rho.tet;
        if t2 == tet || self.adjacent(tet, c)? != (Adjacent { tet: t2, perm: rho.perm }) {
            return None;
        }
        let pillow = [tet, t2];
        let outer = [(tet, a), (tet, b), (t2, rho.perm.apply(a)), (t2, rho.perm.apply(b))];
        for &(t, f) in &outer {
            let adj = self.adjacent(t, f)?;
            if pillow.contains(&adj.tet) {
                return None;
            }
        }
        let opposite = |t: usize, x: usize, y: usize| skel.edge_of[t][super::edge_index(x, y)];
        let e1 = opposite(tet, c, d);
        let e2 = opposite(t2, rho.perm.apply(c), rho.perm.apply(d));
        if e1 == e2 || (skel.edges[e1].boundary && skel.edges[e2].boundary) {
            return None;
        }

        let mut out = self.clone();
        let mut joins = Vec::new();
        for side in [a, b] {
            let n1 = self.adjacent(tet, side).unwrap();
            let n2 = self.adjacent(t2, rho.perm.apply(side)).unwrap();
            // Neighbour n1 -> tet -> t2 -> neighbour n2.
            let perm = n2.perm.compose(rho.perm).compose(n1.perm.inverse());
            joins.push((n1.tet, n1.perm.apply(side), n2.tet, perm));
        }
        for &t in &pillow {
            for f in 0..4 {
                out.unglue(t, f);
            }
        }
        for (t, f, t2n, perm) in joins {
            out.glue(t, f, t2n, perm).ok()?;
        }
        let keep: Vec<usize> = (0..self.size()).filter(|t| !pillow.contains(t)).collect();
        let mut index = vec![usize::MAX; self.size()];
        for (i, &t) in keep.iter().enumerate() {
            index[t] = i;
        }
        let gluings = keep
            .iter()
            .map(|&t| out.gluings[t].map(|adj| adj.map(|x| Adjacent { tet: index[x.tet], perm: x.perm })))
            .collect();
        let result = Triangulation::from_gluings(gluings).ok()?;
        result.skeleton().ok()?;
        Some(result)
    }
}

fn other_two(a: usize, b: usize) -> [usize; 2] {
    let mut rest = (0..4).filter(|&v| v != a && v != b);
    [rest.next().unwrap(), rest.next().unwrap()]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invariants(t: &Triangulation) -> (i64, usize, Vec<i64>) {
        let s = t.skeleton().unwrap();
        let mut b: Vec<i64> = s.boundary_components().iter().map(|c| c.euler).collect();
        b.sort_unstable();
        (s.euler_characteristic(), s.vertices.len(), b)
    }

    fn two_tet_ball() -> Triangulation {
        let mut t = Triangulation::unglued(2);
        t.glue(0, 0, 1, Perm4::IDENTITY).unwrap();
        t
    }

    #[test]
    fn two_three_then_three_two_round_trip() {
        let t = two_tet_ball();
        let up = t.two_three(0, 0).unwrap();
        assert_eq!(up.size(), 3);
        assert_eq!(invariants(&up), invariants(&t));
        let s = up.skeleton().unwrap();
        let (tet, edge) = s
            .edges
            .iter()
            .find(|e| e.embeddings.len() == 3 && !e.boundary)
            .map(|e| (e.embeddings[0].tet, e.embeddings[0].edge))
            .unwrap();
        let down = up.three_two(tet, edge).unwrap();
        assert_eq!(down.size(), 2);
        assert_eq!(invariants(&down), invariants(&t));
    }

    #[test]
    fn two_three_on_solid_torus_face_needs_distinct_tets() {
        assert!(Triangulation::solid_torus().two_three(0, 0).is_none());
    }

    #[test]
    fn two_three_preserves_invariants_on_lst() {
        let lst = Triangulation::parse(include_str!("../../data/corpus/lst-2-3.tri")).unwrap();
        for t in 0..lst.size() {
            for f in 0..4 {
                if let Some(up) = lst.two_three(t, f) {
                    assert_eq!(invariants(&up), invariants(&lst));
                    assert_eq!(up.size(), lst.size() + 1);
                }
            }
        }
    }
}
