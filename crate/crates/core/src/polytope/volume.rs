//! Exact volume in α-coordinates (Lebesgue measure of the coordinate
//! space; ratios of volumes are basis independent).

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::VPolytope;
use crate::error::{Error, Result};
use crate::exactlin::{RatMat, RatVec, Rational};

/// |det(p₁ − p₀, …, p_n − p₀)| / n!
pub fn simplex_volume(points: &[RatVec]) -> Rational {
    let n = points.len() - 1;
    let cols: Vec<RatVec> = points[1..].iter().map(|p| p.sub(&points[0])).collect();
    let det = RatMat::from_columns(&cols).determinant().abs();
    let fact: i64 = (1..=n as i64).product();
    det / Rational::from_int(fact)
}

type Simplices = Arc<Vec<Vec<usize>>>;

struct Triangulator<'a> {
    p: &'a VPolytope,
    tight: Vec<Vec<usize>>,
    memo: HashMap<Vec<usize>, Simplices>,
}

impl Triangulator<'_> {
    /// Cone from the smallest vertex over the facets of the face that miss
    /// it, recursively.
    fn run(&mut self, face: &[usize], d: usize) -> Simplices {
        if let Some(s) = self.memo.get(face) {
            return s.clone();
        }
        let out = if d == 0 {
            vec![vec![face[0]]]
        } else {
            let apex = face[0];
            let mut facets: Vec<Vec<usize>> = Vec::new();
            for t in &self.tight {
                let sub: Vec<usize> = face.iter().copied().filter(|v| t.binary_search(v).is_ok()).collect();
                if sub.is_empty() || sub.len() == face.len() || sub.contains(&apex) || facets.contains(&sub) {
                    continue;
                }
                if self.p.affine_dim(&sub) == d as isize - 1 {
                    facets.push(sub);
                }
            }
            let mut simplices = Vec::new();
            for f in facets {
                for s in self.run(&f, d - 1).iter() {
                    let mut full = Vec::with_capacity(d + 1);
                    full.push(apex);
                    full.extend_from_slice(s);
                    simplices.push(full);
                }
            }
            simplices
        };
        let out = Arc::new(out);
        self.memo.insert(face.to_vec(), out.clone());
        out
    }
}

/// Exact volume by recursive cone decomposition over facets.
pub fn volume(p: &VPolytope) -> Result<Rational> {
    if !p.is_full_dimensional() {
        return Err(Error::Degenerate("volume of a lower-dimensional polytope".into()));
    }
    let mut t = Triangulator {
        p,
        tight: (0..p.halfspaces.len()).map(|h| p.tight_set(h)).collect(),
        memo: HashMap::new(),
    };
    let all: Vec<usize> = (0..p.len()).collect();
    let simplices = t.run(&all, p.dim);
    Ok(simplices
        .par_iter()
        .map(|s| {
            let pts: Vec<RatVec> = s.iter().map(|&v| p.vertices[v].clone()).collect();
            simplex_volume(&pts)
        })
        .reduce(Rational::zero, |a, b| a + b))
}
