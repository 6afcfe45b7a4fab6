//! Weyl group elements, affine isometries and the fundamental group Ω.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{affine_solution_space, RatMat, RatVec, Rational};
use crate::group::{CayleyTable, GroupKind};
use crate::polytope::{alcove, HPolytope, HalfSpace, Label};
use crate::rootsys::RootSystem;

/// Linear map on α-coordinates together with a word in the simple
/// reflections (`word = [i₁, …, i_k]` means s_{i₁} ⋯ s_{i_k}).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeylElement {
    pub matrix: RatMat,
    pub word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl WeylElement {
    pub fn identity(n: usize) -> WeylElement {
        WeylElement {
            matrix: RatMat::identity(n),
            word: Vec::new(),
        }
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            matrix: self.matrix.mul(&other.matrix),
            word: self.word.iter().chain(&other.word).copied().collect(),
        }
    }

    pub fn apply(&self, x: &RatVec) -> RatVec {
        self.matrix.mul_vec(x)
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            matrix: self.matrix.inverse().expect("Weyl elements are invertible"),
            word: self.word.iter().rev().copied().collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn preserves_gram(&self, rs: &RootSystem) -> bool {
        preserves_gram(&self.matrix, &rs.gram)
    }

    pub fn to_affine(&self) -> AffineIsometry {
        AffineIsometry::linear(self.matrix.clone())
    }
}

pub fn preserves_gram(m: &RatMat, gram: &RatMat) -> bool {
    m.transpose().mul(gram).mul(m) == *gram
}

/// s_i(x) = x − ⟨α_i^∨, x⟩ α_i, one-based.
pub fn simple_reflection(rs: &RootSystem, i: usize) -> WeylElement {
    let n = rs.rank();
    let mut m = RatMat::identity(n);
    for k in 0..n {
        m[(i - 1, k)] -= &rs.cartan[(i - 1, k)];
    }
    WeylElement {
        matrix: m,
        word: vec![i],
    }
}

/// Longest element of the parabolic subgroup generated by `subset`, found by
/// descending from ρ = Σ_{i∈subset} ϖ_i^∨ until it is antidominant for the
/// subset. Never enumerates W.
pub fn longest_element(rs: &RootSystem, subset: &[usize]) -> WeylElement {
    let n = rs.rank();
    let reflections: Vec<WeylElement> = (1..=n).map(|i| simple_reflection(rs, i)).collect();
    let mut x = rs.coweight_sum(subset);
    let mut w = WeylElement::identity(n);
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    // (α_i, x) is the i-th coweight coordinate of x
    while let Some(&i) = sorted
        .iter()
        .find(|&&i| rs.covector(&rs.simple_root(i)).dot(&x).is_positive())
    {
        x = reflections[i - 1].apply(&x);
        w = reflections[i - 1].compose(&w);
    }
    w
}

/// v_j = w_j⁻ w⁻ for minuscule j.
pub fn v_element(rs: &RootSystem, j: usize) -> Result<WeylElement> {
    if !rs.is_minuscule(j) {
        return Err(Error::NotMinuscule(j));
    }
    let all: Vec<usize> = (1..=rs.rank()).collect();
    let rest: Vec<usize> = all.iter().copied().filter(|&i| i != j).collect();
    Ok(longest_element(rs, &rest).compose(&longest_element(rs, &all)))
}

/// x ↦ linear · x + translation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineIsometry {
    pub linear: RatMat,
    pub translation: RatVec,
}

impl AffineIsometry {
    pub fn identity(n: usize) -> AffineIsometry {
        AffineIsometry::linear(RatMat::identity(n))
    }

    pub fn linear(m: RatMat) -> AffineIsometry {
        let n = m.rows();
        AffineIsometry {
            linear: m,
            translation: RatVec::zeros(n),
        }
    }

    pub fn translation(t: RatVec) -> AffineIsometry {
        AffineIsometry {
            linear: RatMat::identity(t.dim()),
            translation: t,
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.dim()
    }

    pub fn apply(&self, x: &RatVec) -> RatVec {
        self.linear.mul_vec(x).add(&self.translation)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineIsometry) -> AffineIsometry {
        AffineIsometry {
            linear: self.linear.mul(&other.linear),
            translation: self.linear.mul_vec(&other.translation).add(&self.translation),
        }
    }

    pub fn inverse(&self) -> AffineIsometry {
        let inv = self.linear.inverse().expect("isometries are invertible");
        let t = inv.mul_vec(&self.translation).neg();
        AffineIsometry {
            linear: inv,
            translation: t,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.is_zero()
    }

    pub fn is_linear(&self) -> bool {
        self.translation.is_zero()
    }

    pub fn fixes(&self, x: &RatVec) -> bool {
        self.apply(x) == *x
    }

    /// Fix(g) as `particular + span(kernel)`, solving (L − I)x = −t.
    pub fn fixed_space(&self) -> Option<(RatVec, Vec<RatVec>)> {
        let a = self.linear.sub(&RatMat::identity(self.dim()));
        affine_solution_space(&a, &self.translation.neg())
    }

    /// Whether the image of `points` is `points` as a set.
    pub fn permutes(&self, points: &[RatVec]) -> bool {
        self.permutation_of(points).is_some()
    }

    /// `perm[k] = l` when `self(points[k]) = points[l]`.
    pub fn permutation_of(&self, points: &[RatVec]) -> Option<Vec<usize>> {
        points
            .iter()
            .map(|p| {
                let img = self.apply(p);
                points.iter().position(|q| *q == img)
            })
            .collect()
    }

    pub fn order(&self) -> usize {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = self.compose(&x);
            k += 1;
            assert!(k <= 1000, "element of infinite order");
        }
        k
    }

    /// π: the linear part.
    pub fn linear_part(&self) -> &RatMat {
        &self.linear
    }
}

/// Ω ⊂ W_ext: the identity and ω_j = t_{ϖ_j^∨} v_j for j ∈ J.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalGroup {
    /// `labels[k] = 0` for the identity, `j` for ω_j.
    pub labels: Vec<usize>,
    pub elements: Vec<AffineIsometry>,
    pub table: CayleyTable,
    pub kind: GroupKind,
}

impl FundamentalGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, label: usize) -> Option<&AffineIsometry> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .map(|k| &self.elements[k])
    }

    pub fn index_of(&self, g: &AffineIsometry) -> Option<usize> {
        self.elements.iter().position(|e| e == g)
    }
}

pub fn omega_element(rs: &RootSystem, j: usize) -> Result<AffineIsometry> {
    let v = v_element(rs, j)?;
    Ok(AffineIsometry {
        linear: v.matrix,
        translation: rs.coweight(j).clone(),
    })
}

pub fn fundamental_group(rs: &RootSystem) -> FundamentalGroup {
    let mut labels = vec![0];
    let mut elements = vec![AffineIsometry::identity(rs.rank())];
    for &j in &rs.minuscule {
        labels.push(j);
        elements.push(omega_element(rs, j).expect("j is minuscule"));
    }
    let table = CayleyTable::build(&elements, AffineIsometry::compose, AffineIsometry::is_identity)
        .expect("Ω is closed under composition");
    let kind = table.classify();
    FundamentalGroup {
        labels,
        elements,
        table,
        kind,
    }
}

/// 𝒟(Ω): points of 𝒜 at least as close to 0 as to every minuscule ϖ_j^∨,
/// i.e. (ϖ_j^∨, x) ≤ ‖ϖ_j^∨‖²/2.
pub fn dirichlet_domain(rs: &RootSystem) -> HPolytope {
    let mut p = alcove(rs);
    for &j in &rs.minuscule {
        let w = rs.coweight(j);
        let half_norm = rs.inner(w, w) / Rational::from_int(2);
        p.push(HalfSpace::le(w.clone(), half_norm, Label::Dirichlet(j)));
    }
    p
}
