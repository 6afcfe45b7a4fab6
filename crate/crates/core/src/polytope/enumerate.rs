use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{HPolytope, HalfSpace};
use crate::error::{Error, Result};
use crate::exactlin::{affine_dimension, lp_feasible, solve_linear, Constraint, LinearSolution, RatMat, RatVec, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPolytope {
    pub dim: usize,
    pub gram: RatMat,
    pub halfspaces: Vec<HalfSpace>,
    /// Sorted lexicographically in α-coordinates.
    pub vertices: Vec<RatVec>,
    /// `incidence[v][h]`: vertex v lies on the boundary of half-space h.
    pub incidence: Vec<Vec<bool>>,
}

impl VPolytope {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_index(&self, x: &RatVec) -> Option<usize> {
        self.vertices.binary_search(x).ok()
    }

    pub fn contains_vertex(&self, x: &RatVec) -> bool {
        self.vertex_index(x).is_some()
    }

    /// Vertices on the boundary hyperplane of half-space `h`.
    pub fn tight_set(&self, h: usize) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.incidence[v][h]).collect()
    }

    pub fn affine_dim(&self, vertex_set: &[usize]) -> isize {
        let pts: Vec<RatVec> = vertex_set.iter().map(|&v| self.vertices[v].clone()).collect();
        affine_dimension(&pts)
    }

    pub fn is_full_dimensional(&self) -> bool {
        let all: Vec<usize> = (0..self.len()).collect();
        self.affine_dim(&all) == self.dim as isize
    }

    /// Half-spaces whose boundary meets the polytope in a facet.
    pub fn facet_indices(&self) -> Vec<usize> {
        (0..self.halfspaces.len())
            .filter(|&h| self.affine_dim(&self.tight_set(h)) == self.dim as isize - 1)
            .collect()
    }

    pub fn h_polytope(&self) -> HPolytope {
        HPolytope {
            dim: self.dim,
            gram: self.gram.clone(),
            halfspaces: self.halfspaces.clone(),
        }
    }
}

/// True when the recession cone {d : a·d ≥ 0} is trivial.
pub fn is_bounded(p: &HPolytope) -> bool {
    let n = p.dim;
    let cone: Vec<Constraint> = p
        .rows()
        .into_iter()
        .map(|(a, _)| Constraint::ge(a, Rational::zero()))
        .collect();
    (0..n).all(|i| {
        [1i64, -1].iter().all(|&s| {
            let mut cs = cone.clone();
            cs.push(Constraint::ge(
                RatVec::unit(n, i).scale(&Rational::from_int(s)),
                Rational::one(),
            ));
            !lp_feasible(n, &cs).is_feasible()
        })
    })
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + m - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Vertices by solving every square subsystem of boundary hyperplanes and
/// keeping the feasible solutions.
pub fn enumerate_vertices(p: &HPolytope) -> Result<VPolytope> {
    if !is_bounded(p) {
        return Err(Error::Unbounded);
    }
    let n = p.dim;
    let rows = p.rows();
    let mut vertices: Vec<RatVec> = combinations(rows.len(), n)
        .into_par_iter()
        .filter_map(|subset| {
            let a = RatMat::from_rows(subset.iter().map(|&k| rows[k].0 .0.clone()).collect());
            let b: RatVec = subset.iter().map(|&k| rows[k].1.clone()).collect();
            match solve_linear(&a, &b) {
                LinearSolution::Unique(x) if rows.iter().all(|(a, b)| a.dot(&x) >= *b) => Some(x),
                _ => None,
            }
        })
        .collect();
    vertices.sort();
    vertices.dedup();
    let incidence = vertices
        .iter()
        .map(|x| rows.iter().map(|(a, b)| a.dot(x) == *b).collect())
        .collect();
    Ok(VPolytope {
        dim: n,
        gram: p.gram.clone(),
        halfspaces: p.halfspaces.clone(),
        vertices,
        incidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Label;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn half_plane_is_unbounded() {
        let p = HPolytope::new(RatMat::identity(2)).with(HalfSpace::ge(
            RatVec::from_ints(&[1, 0]),
            Rational::zero(),
            Label::Custom("x>=0".into()),
        ));
        assert!(!is_bounded(&p));
        assert_eq!(enumerate_vertices(&p), Err(Error::Unbounded));
    }

    #[test]
    fn unit_square() {
        let c = |v: &[i64], b: i64, ge: bool| {
            let f = if ge { HalfSpace::ge } else { HalfSpace::le };
            f(RatVec::from_ints(v), Rational::from_int(b), Label::Custom(String::new()))
        };
        let p = HPolytope::new(RatMat::identity(2))
            .with(c(&[1, 0], 0, true))
            .with(c(&[0, 1], 0, true))
            .with(c(&[1, 0], 1, false))
            .with(c(&[0, 1], 1, false))
            .with(c(&[1, 1], 2, false));
        let v = enumerate_vertices(&p).unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(v.facet_indices(), vec![0, 1, 2, 3]);
        assert!(v.is_full_dimensional());
    }
}
