use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{komrakov_premet, HPolytope, HalfSpace, Label};
use crate::diagram::{linear_realization, DiagramAut};
use crate::error::{Error, Result};
use crate::exactlin::{lp_feasible, RatVec, Rational};
use crate::rootsys::{Family, RootSystem};

/// Which simple roots a balanced root may be supported on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Support {
    /// Support inside the minuscule set J.
    Minuscule,
    /// Any φ₀-swapped support (used for the counterexamples).
    Any,
}

/// v₀ = Σ_{plus} α_i − Σ_{minus} α_i with φ₀(v₀) = −v₀.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedRoot {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub vector: RatVec,
    pub involution: DiagramAut,
}

impl BalancedRoot {
    /// |L ∩ plus| − |L ∩ minus|, which equals (v₀, Σ_{j∈L} ϖ_j^∨).
    pub fn signed_count(&self, l: &[usize]) -> i64 {
        let count = |s: &[usize]| l.iter().filter(|i| s.contains(i)).count() as i64;
        count(&self.plus) - count(&self.minus)
    }
}

pub fn balanced_root(
    rs: &RootSystem,
    phi0: &DiagramAut,
    plus: &[usize],
    minus: &[usize],
    support: Support,
) -> Result<BalancedRoot> {
    let bad = |msg: &str| Err(Error::InvalidBalancedRoot(msg.to_string()));
    let n = rs.rank();
    if !phi0.fixes_affine_node() {
        return bad("the involution must be an automorphism of the finite diagram");
    }
    let m = linear_realization(rs, phi0)?;
    let p: BTreeSet<usize> = plus.iter().copied().collect();
    let q: BTreeSet<usize> = minus.iter().copied().collect();
    if p.is_empty() {
        return bad("empty support");
    }
    if p.len() != plus.len() || q.len() != minus.len() {
        return bad("repeated index in support");
    }
    if p.iter().chain(&q).any(|&i| i == 0 || i > n) {
        return bad("support index out of range");
    }
    if !p.is_disjoint(&q) {
        return bad("plus and minus parts overlap");
    }
    let image: BTreeSet<usize> = p.iter().map(|&i| phi0.image(i)).collect();
    if image != q {
        return bad("the involution does not swap the plus and minus parts");
    }
    if support == Support::Minuscule && !p.iter().chain(&q).all(|&i| rs.is_minuscule(i)) {
        return bad("support is not contained in the minuscule set");
    }
    let sum = |s: &BTreeSet<usize>| {
        s.iter()
            .fold(RatVec::zeros(n), |acc, &i| acc.add(&rs.simple_root(i)))
    };
    let vector = sum(&p).sub(&sum(&q));
    if m.mul_vec(&vector) != vector.neg() {
        return bad("φ₀(v₀) ≠ −v₀");
    }
    Ok(BalancedRoot {
        plus: p.into_iter().collect(),
        minus: q.into_iter().collect(),
        vector,
        involution: phi0.clone(),
    })
}

/// The balanced roots slicing 𝒦 into a fundamental polytope for Aut(𝒜):
/// none when Aut(D) = 1, two for D₄, one otherwise.
pub fn slicing_roots(rs: &RootSystem) -> Vec<BalancedRoot> {
    let n = rs.rank();
    let swap = |a: usize, b: usize| DiagramAut::from_cycles(n, &[&[a, b]]);
    let specs: Vec<(DiagramAut, Vec<usize>, Vec<usize>)> = match (rs.id.family, n) {
        (Family::A, 1) => Vec::new(),
        (Family::A, _) => {
            let flip = DiagramAut {
                perm: std::iter::once(0).chain((1..=n).map(|i| n + 1 - i)).collect(),
            };
            let plus: Vec<usize> = (1..=n / 2).collect();
            let minus = plus.iter().map(|&i| n + 1 - i).collect();
            vec![(flip, plus, minus)]
        }
        (Family::D, 4) => vec![(swap(3, 4), vec![3], vec![4]), (swap(1, 3), vec![1], vec![3])],
        (Family::D, _) => vec![(swap(n - 1, n), vec![n - 1], vec![n])],
        (Family::E, 6) => vec![(
            DiagramAut::from_cycles(6, &[&[1, 6], &[3, 5]]),
            vec![1],
            vec![6],
        )],
        _ => Vec::new(),
    };
    specs
        .into_iter()
        .map(|(phi, p, m)| {
            balanced_root(rs, &phi, &p, &m, Support::Minuscule).expect("standard slices are balanced")
        })
        .collect()
}

/// ℒ = {x ∈ 𝒦 : (v_k, x) ≥ 0} for the standard slicing roots.
pub fn fundamental_polytope(rs: &RootSystem) -> Result<HPolytope> {
    fundamental_polytope_with(rs, &slicing_roots(rs))
}

/// 𝒦 cut by (v, x) ≥ 0 for each given balanced root. Fails when the
/// result has empty interior.
pub fn fundamental_polytope_with(rs: &RootSystem, roots: &[BalancedRoot]) -> Result<HPolytope> {
    let mut p = komrakov_premet(rs);
    for (k, b) in roots.iter().enumerate() {
        p.push(HalfSpace::ge(b.vector.clone(), Rational::zero(), Label::Slice(k)));
    }
    if !lp_feasible(p.dim, &p.strict_constraints()).is_feasible() {
        return Err(Error::Degenerate("slice misses the interior of 𝒦".into()));
    }
    Ok(p)
}

/// 2^{n−1} + ((3 − (−1)^n)/4)·C(2⌊n/2⌋, ⌊n/2⌋).
pub fn vertex_count_formula_a(n: u32) -> u64 {
    assert!(n >= 2, "defined for n ≥ 2");
    let k = u64::from(n / 2);
    let central: u64 = (1..=k).fold(1u64, |acc, i| acc * (k + i) / i);
    let extra = if n.is_multiple_of(2) { central / 2 } else { central };
    (1u64 << (n - 1)) + extra
}

/// Checks (v₀, Σ_{j∈L} ϖ_j^∨) = |L ∩ plus| − |L ∩ minus| for every L ⊆ I.
pub fn inner_product_formula_holds(rs: &RootSystem, b: &BalancedRoot) -> bool {
    let n = rs.rank();
    (0u32..(1 << n)).all(|mask| {
        let l: Vec<usize> = (1..=n).filter(|&i| mask & (1 << (i - 1)) != 0).collect();
        rs.inner(&b.vector, &rs.coweight_sum(&l)) == b.signed_count(&l)
    })
}
