use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::VPolytope;
use crate::error::{Error, Result};
use crate::exactlin::RatVec;

pub const DEFAULT_FACE_CAP: usize = 1_000_000;

/// The face-count guard, overridable through `ALCOVE_FACE_CAP`.
pub fn face_cap_from_env() -> usize {
    std::env::var("ALCOVE_FACE_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_FACE_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    /// Sorted vertex indices; the canonical representation.
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Half-spaces whose boundary contains the whole face.
    pub facets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceLattice {
    /// Sorted by dimension, then by vertex set.
    pub faces: Vec<Face>,
}

impl FaceLattice {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// f-vector: number of faces per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces.iter().map(|f| f.dim).max().unwrap_or(0);
        let mut out = vec![0; top + 1];
        for f in &self.faces {
            out[f.dim] += 1;
        }
        out
    }
}

type Bits = Vec<u64>;

fn bits_of(len: usize, members: impl Iterator<Item = usize>) -> Bits {
    let mut b = vec![0u64; len.div_ceil(64)];
    for m in members {
        b[m / 64] |= 1 << (m % 64);
    }
    b
}

fn members(b: &Bits) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in b.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            let t = x.trailing_zeros() as usize;
            out.push(w * 64 + t);
            x &= x - 1;
        }
    }
    out
}

fn make_face(p: &VPolytope, vertices: Vec<usize>) -> Face {
    let facets = (0..p.halfspaces.len())
        .filter(|&h| vertices.iter().all(|&v| p.incidence[v][h]))
        .collect();
    let dim = p.affine_dim(&vertices).max(0) as usize;
    Face {
        vertices,
        dim,
        facets,
    }
}

/// All nonempty faces, each the intersection of the polytope with a set of
/// boundary hyperplanes, deduplicated by vertex set.
pub fn face_lattice(p: &VPolytope, cap: usize) -> Result<FaceLattice> {
    let nv = p.len();
    if nv == 0 {
        return Ok(FaceLattice { faces: Vec::new() });
    }
    let tight: Vec<Bits> = (0..p.halfspaces.len())
        .map(|h| bits_of(nv, p.tight_set(h).into_iter()))
        .collect();
    let top = bits_of(nv, 0..nv);
    let mut seen: HashSet<Bits> = HashSet::new();
    seen.insert(top.clone());
    let mut queue = vec![top];
    let mut k = 0;
    while k < queue.len() {
        let f = queue[k].clone();
        k += 1;
        for t in &tight {
            let g: Bits = f.iter().zip(t).map(|(a, b)| a & b).collect();
            if g.iter().all(|&w| w == 0) || g == f {
                continue;
            }
            if seen.insert(g.clone()) {
                if seen.len() > cap {
                    return Err(Error::FaceCapExceeded { cap });
                }
                queue.push(g);
            }
        }
    }
    let mut faces: Vec<Face> = queue.iter().map(|b| make_face(p, members(b))).collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));
    Ok(FaceLattice { faces })
}

/// Smallest face containing `x`: the vertices tight on every half-space
/// that is tight at `x`.
pub fn regular_face(p: &VPolytope, x: &RatVec) -> Result<Face> {
    let rows: Vec<_> = p.halfspaces.iter().map(|h| h.row(&p.gram)).collect();
    if rows.iter().any(|(a, b)| a.dot(x) < *b) {
        return Err(Error::NotInside(format!("point {x:?} is outside the polytope")));
    }
    let tight: Vec<usize> = (0..rows.len()).filter(|&h| rows[h].0.dot(x) == rows[h].1).collect();
    let vertices = (0..p.len())
        .filter(|&v| tight.iter().all(|&h| p.incidence[v][h]))
        .collect();
    Ok(make_face(p, vertices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{alcove, enumerate_vertices, komrakov_premet};
    use crate::rootsys::RootSystem;

    #[test]
    fn simplex_face_count() {
        for n in 1..=5 {
            let rs = RootSystem::from_name(&format!("A{n}")).unwrap();
            let v = enumerate_vertices(&alcove(&rs)).unwrap();
            let lattice = face_lattice(&v, DEFAULT_FACE_CAP).unwrap();
            assert_eq!(lattice.len(), (1 << (n + 1)) - 1);
        }
    }

    #[test]
    fn kp_a2_is_a_quadrilateral() {
        let rs = RootSystem::from_name("A2").unwrap();
        let v = enumerate_vertices(&komrakov_premet(&rs)).unwrap();
        let lattice = face_lattice(&v, DEFAULT_FACE_CAP).unwrap();
        assert_eq!(lattice.f_vector(), vec![4, 4, 1]);
    }

    #[test]
    fn regular_face_of_vertex_and_cap() {
        let rs = RootSystem::from_name("A3").unwrap();
        let v = enumerate_vertices(&komrakov_premet(&rs)).unwrap();
        for (i, x) in v.vertices.iter().enumerate() {
            let f = regular_face(&v, x).unwrap();
            assert_eq!(f.vertices, vec![i]);
            assert_eq!(f.dim, 0);
        }
        assert_eq!(face_lattice(&v, 5), Err(Error::FaceCapExceeded { cap: 5 }));
    }
}
