//! Exact polytopes inside the alcove: H- and V-representations, the
//! Komrakov–Premet polytope and its sliced fundamental polytope.

mod balanced;
mod enumerate;
mod face;
mod volume;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactlin::{Constraint, RatMat, RatVec, Rational};
use crate::rootsys::RootSystem;
use crate::weyl::AffineIsometry;

pub use balanced::{
    balanced_root, fundamental_polytope, fundamental_polytope_with, inner_product_formula_holds,
    slicing_roots, vertex_count_formula_a, BalancedRoot, Support,
};
pub use enumerate::{enumerate_vertices, is_bounded, VPolytope};
pub use face::{face_cap_from_env, face_lattice, regular_face, Face, FaceLattice, DEFAULT_FACE_CAP};
pub use volume::{simplex_volume, volume};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

/// Provenance of a half-space, used for naming facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    /// H_i: (α_i, x) ≥ 0.
    Wall(usize),
    /// H_0: (α₀, x) ≤ 1.
    Top,
    /// H_j⁰: (α₀ + α_j, x) ≤ 1.
    Kp(usize),
    /// (v_k, x) ≥ 0 for the k-th balanced root.
    Slice(usize),
    /// (ϖ_j^∨, x) ≤ ‖ϖ_j^∨‖²/2.
    Dirichlet(usize),
    /// Image of another half-space under a group element.
    Image(Box<Label>),
    Custom(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Wall(i) => write!(f, "H{i}"),
            Label::Top => write!(f, "H0"),
            Label::Kp(j) => write!(f, "H{j}^0"),
            Label::Slice(0) => write!(f, "H0^0"),
            Label::Slice(k) => write!(f, "slice{k}"),
            Label::Dirichlet(j) => write!(f, "D{j}"),
            Label::Image(l) => write!(f, "g({l})"),
            Label::Custom(s) => write!(f, "{s}"),
        }
    }
}

/// `(normal, x) sense offset`, pairing through the Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: RatVec,
    pub offset: Rational,
    pub sense: Sense,
    pub label: Label,
}

impl HalfSpace {
    pub fn le(normal: RatVec, offset: Rational, label: Label) -> HalfSpace {
        assert!(!normal.is_zero(), "half-space normal must be nonzero");
        HalfSpace {
            normal,
            offset,
            sense: Sense::Le,
            label,
        }
    }

    pub fn ge(normal: RatVec, offset: Rational, label: Label) -> HalfSpace {
        assert!(!normal.is_zero(), "half-space normal must be nonzero");
        HalfSpace {
            normal,
            offset,
            sense: Sense::Ge,
            label,
        }
    }

    /// `(a, b)` with the half-space equal to `{x : a · x ≥ b}`.
    pub fn row(&self, gram: &RatMat) -> (RatVec, Rational) {
        let a = gram.mul_vec(&self.normal);
        match self.sense {
            Sense::Ge => (a, self.offset.clone()),
            Sense::Le => (a.neg(), -&self.offset),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolytope {
    pub dim: usize,
    pub gram: RatMat,
    pub halfspaces: Vec<HalfSpace>,
}

impl HPolytope {
    pub fn new(gram: RatMat) -> HPolytope {
        HPolytope {
            dim: gram.rows(),
            gram,
            halfspaces: Vec::new(),
        }
    }

    pub fn push(&mut self, h: HalfSpace) {
        assert_eq!(h.normal.dim(), self.dim);
        self.halfspaces.push(h);
    }

    pub fn with(mut self, h: HalfSpace) -> HPolytope {
        self.push(h);
        self
    }

    /// Rows `(a, b)` with the polytope equal to `{x : a · x ≥ b for all}`.
    pub fn rows(&self) -> Vec<(RatVec, Rational)> {
        self.halfspaces.iter().map(|h| h.row(&self.gram)).collect()
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        self.rows().iter().all(|(a, b)| a.dot(x) >= *b)
    }

    pub fn closed_constraints(&self) -> Vec<Constraint> {
        self.rows()
            .into_iter()
            .map(|(a, b)| Constraint::ge(a, b))
            .collect()
    }

    pub fn strict_constraints(&self) -> Vec<Constraint> {
        self.rows()
            .into_iter()
            .map(|(a, b)| Constraint::gt(a, b))
            .collect()
    }

    /// gP = {g x : x ∈ P}. For (n, x) ≥ b and orthogonal linear part L this
    /// is (L n, y) ≥ b + (L n, t).
    pub fn image(&self, g: &AffineIsometry) -> HPolytope {
        let halfspaces = self
            .halfspaces
            .iter()
            .map(|h| {
                let n = g.linear.mul_vec(&h.normal);
                let shift = self.gram.mul_vec(&n).dot(&g.translation);
                HalfSpace {
                    offset: &h.offset + shift,
                    normal: n,
                    sense: h.sense,
                    label: Label::Image(Box::new(h.label.clone())),
                }
            })
            .collect();
        HPolytope {
            dim: self.dim,
            gram: self.gram.clone(),
            halfspaces,
        }
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.halfspaces.iter().position(|h| h.label == *label)
    }
}

/// 𝒜: (α_i, x) ≥ 0 for i ∈ I and (α₀, x) ≤ 1.
pub fn alcove(rs: &RootSystem) -> HPolytope {
    let mut p = HPolytope::new(rs.gram.clone());
    for i in 1..=rs.rank() {
        p.push(HalfSpace::ge(rs.simple_root(i), Rational::zero(), Label::Wall(i)));
    }
    p.push(HalfSpace::le(rs.highest_root.clone(), Rational::one(), Label::Top));
    p
}

/// 𝒦: the alcove cut by (α₀ + α_j, x) ≤ 1 for every minuscule j.
pub fn komrakov_premet(rs: &RootSystem) -> HPolytope {
    let mut p = alcove(rs);
    for &j in &rs.minuscule {
        p.push(HalfSpace::le(
            rs.highest_root.add(&rs.simple_root(j)),
            Rational::one(),
            Label::Kp(j),
        ));
    }
    p
}

/// {ϖ_i^∨/m_i}_{i∉J} ∪ {(Σ_{j∈L} ϖ_j^∨)/(|L|+1)}_{L⊆J}, sorted.
pub fn kp_vertices_closed_form(rs: &RootSystem) -> Vec<RatVec> {
    let mut out: Vec<RatVec> = (1..=rs.rank())
        .filter(|&i| !rs.is_minuscule(i))
        .map(|i| rs.coweight(i).scale(&Rational::new(1, rs.mark(i))))
        .collect();
    let j = &rs.minuscule;
    for mask in 0u32..(1 << j.len()) {
        let subset: Vec<usize> = (0..j.len())
            .filter(|&k| mask & (1 << k) != 0)
            .map(|k| j[k])
            .collect();
        let size = subset.len() as i64 + 1;
        out.push(rs.coweight_sum(&subset).scale(&Rational::new(1, size)));
    }
    out.sort();
    out
}

/// Labels of the half-spaces of `v` that are facets.
pub fn bounding_hyperplanes(v: &VPolytope) -> Vec<Label> {
    v.facet_indices()
        .into_iter()
        .map(|k| v.halfspaces[k].label.clone())
        .collect()
}
