//! Dynkin diagrams, their automorphisms, and the alcove isometry group
//! Aut(𝒜) = Ω ⋊ Aut(D).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{RatMat, RatVec, Rational};
use crate::group::{cycle_notation, CayleyTable, GroupKind};
use crate::rootsys::{Family, RootSystem};
use crate::weyl::{fundamental_group, preserves_gram, AffineIsometry};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinDiagram {
    pub affine: bool,
    /// Node labels: `0..=n` when affine (node 0 is −α₀), else `1..=n`.
    pub nodes: Vec<usize>,
    /// α-coordinates of the root attached to each node, in `nodes` order.
    pub roots: Vec<RatVec>,
    /// `cartan[a][b] = ⟨β_a^∨, β_b⟩` over positions in `nodes`.
    pub cartan: Vec<Vec<i64>>,
}

impl DynkinDiagram {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Cartan integer between two node labels.
    pub fn cartan_integer(&self, i: usize, j: usize) -> i64 {
        self.cartan[self.position(i)][self.position(j)]
    }

    fn position(&self, label: usize) -> usize {
        self.nodes
            .iter()
            .position(|&l| l == label)
            .expect("node label in diagram")
    }

    /// Subdiagram with one node deleted.
    pub fn without_node(&self, label: usize) -> DynkinDiagram {
        let keep: Vec<usize> = (0..self.len()).filter(|&a| self.nodes[a] != label).collect();
        DynkinDiagram {
            affine: false,
            nodes: keep.iter().map(|&a| self.nodes[a]).collect(),
            roots: keep.iter().map(|&a| self.roots[a].clone()).collect(),
            cartan: keep
                .iter()
                .map(|&a| keep.iter().map(|&b| self.cartan[a][b]).collect())
                .collect(),
        }
    }

    pub fn is_isomorphic_to(&self, other: &DynkinDiagram) -> bool {
        find_isomorphism(&self.cartan, &other.cartan).is_some()
    }
}

pub fn build_diagram(rs: &RootSystem, affine: bool) -> DynkinDiagram {
    let n = rs.rank();
    let mut nodes = Vec::new();
    let mut roots = Vec::new();
    if affine {
        nodes.push(0);
        roots.push(rs.highest_root.neg());
    }
    for i in 1..=n {
        nodes.push(i);
        roots.push(rs.simple_root(i));
    }
    let cartan = roots
        .iter()
        .map(|a| {
            let aa = rs.inner(a, a);
            roots
                .iter()
                .map(|b| {
                    (Rational::from_int(2) * rs.inner(a, b) / &aa)
                        .to_i64()
                        .expect("Cartan integers are integral")
                })
                .collect()
        })
        .collect();
    DynkinDiagram {
        affine,
        nodes,
        roots,
        cartan,
    }
}

/// A node permutation; `perm[label]` is the image label. Always indexed
/// over `0..=n`, with `perm[0] = 0` for automorphisms of the finite diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagramAut {
    pub perm: Vec<usize>,
}

impl DiagramAut {
    pub fn identity(n: usize) -> DiagramAut {
        DiagramAut {
            perm: (0..=n).collect(),
        }
    }

    /// Built from disjoint cycles over node labels.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> DiagramAut {
        let mut perm: Vec<usize> = (0..=n).collect();
        for c in cycles {
            for k in 0..c.len() {
                perm[c[k]] = c[(k + 1) % c.len()];
            }
        }
        DiagramAut { perm }
    }

    pub fn image(&self, label: usize) -> usize {
        self.perm[label]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn fixes_affine_node(&self) -> bool {
        self.perm[0] == 0
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiagramAut) -> DiagramAut {
        DiagramAut {
            perm: other.perm.iter().map(|&k| self.perm[k]).collect(),
        }
    }

    pub fn inverse(&self) -> DiagramAut {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        DiagramAut { perm: inv }
    }

    pub fn cycles(&self) -> String {
        cycle_notation(&self.perm)
    }

    pub fn preserves(&self, dd: &DynkinDiagram) -> bool {
        dd.nodes.iter().all(|&i| {
            dd.nodes.contains(&self.perm[i])
                && dd
                    .nodes
                    .iter()
                    .all(|&j| dd.cartan_integer(self.perm[i], self.perm[j]) == dd.cartan_integer(i, j))
        })
    }
}

/// Backtracking search for bijections `σ` with `b[σa][σc] = a[a][c]`,
/// pruned by row multisets. Returns every one when `all`, else the first.
fn matrix_isomorphisms(a: &[Vec<i64>], b: &[Vec<i64>], all: bool) -> Vec<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return Vec::new();
    }
    let signature = |m: &[Vec<i64>], i: usize| {
        let mut row: Vec<(i64, i64)> = (0..n).map(|j| (m[i][j], m[j][i])).collect();
        row.sort_unstable();
        row
    };
    let sig_a: Vec<_> = (0..n).map(|i| signature(a, i)).collect();
    let sig_b: Vec<_> = (0..n).map(|i| signature(b, i)).collect();
    let mut out = Vec::new();
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn go(
        pos: usize,
        a: &[Vec<i64>],
        b: &[Vec<i64>],
        sig_a: &[Vec<(i64, i64)>],
        sig_b: &[Vec<(i64, i64)>],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        all: bool,
    ) {
        let n = a.len();
        if pos == n {
            out.push(assign.clone());
            return;
        }
        for t in 0..n {
            if used[t] || sig_a[pos] != sig_b[t] {
                continue;
            }
            let ok = (0..pos).all(|q| a[pos][q] == b[t][assign[q]] && a[q][pos] == b[assign[q]][t]);
            if !ok {
                continue;
            }
            assign[pos] = t;
            used[t] = true;
            go(pos + 1, a, b, sig_a, sig_b, assign, used, out, all);
            used[t] = false;
            assign[pos] = usize::MAX;
            if !all && !out.is_empty() {
                return;
            }
        }
    }

    go(0, a, b, &sig_a, &sig_b, &mut assign, &mut used, &mut out, all);
    out
}

/// A position map `σ` with `b[σi][σj] = a[i][j]`, if one exists.
pub fn find_isomorphism(a: &[Vec<i64>], b: &[Vec<i64>]) -> Option<Vec<usize>> {
    matrix_isomorphisms(a, b, false).into_iter().next()
}

/// All Cartan-integer-preserving node permutations, identity first, then
/// lexicographic.
pub fn diagram_automorphisms(dd: &DynkinDiagram) -> Vec<DiagramAut> {
    let n = dd.nodes.iter().copied().max().unwrap_or(0);
    let mut auts: Vec<DiagramAut> = matrix_isomorphisms(&dd.cartan, &dd.cartan, true)
        .into_iter()
        .map(|sigma| {
            let mut perm: Vec<usize> = (0..=n).collect();
            for (a, &t) in sigma.iter().enumerate() {
                perm[dd.nodes[a]] = dd.nodes[t];
            }
            DiagramAut { perm }
        })
        .collect();
    auts.sort();
    auts
}

/// The unique linear map sending the root of node `i` to the root of node
/// `perm[i]` for all nodes, checked to be Gram-orthogonal.
pub fn linear_realization(rs: &RootSystem, phi: &DiagramAut) -> Result<RatMat> {
    let n = rs.rank();
    if phi.perm.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: phi.perm.len(),
        });
    }
    let node_root = |label: usize| {
        if label == 0 {
            rs.highest_root.neg()
        } else {
            rs.simple_root(label)
        }
    };
    let cols: Vec<RatVec> = (1..=n).map(|i| node_root(phi.perm[i])).collect();
    let m = RatMat::from_columns(&cols);
    if m.mul_vec(&node_root(0)) != node_root(phi.perm[0]) || !preserves_gram(&m, &rs.gram) {
        return Err(Error::NotDiagramAutomorphism);
    }
    Ok(m)
}

/// θ(φ) = t_{ϖ_j^∨} φ where φ(−α₀) = α_j (no translation when j = 0).
pub fn theta(rs: &RootSystem, phi: &DiagramAut) -> Result<AffineIsometry> {
    let linear = linear_realization(rs, phi)?;
    let j = phi.perm[0];
    let translation = if j == 0 {
        RatVec::zeros(rs.rank())
    } else {
        rs.coweight(j).clone()
    };
    Ok(AffineIsometry { linear, translation })
}

/// π restricted to Aut(𝒜): the diagram automorphism induced by the linear
/// part on the affine node roots.
pub fn pi(rs: &RootSystem, g: &AffineIsometry) -> Option<DiagramAut> {
    let dd = build_diagram(rs, true);
    let perm: Option<Vec<usize>> = dd
        .roots
        .iter()
        .map(|r| {
            let img = g.linear.mul_vec(r);
            dd.roots.iter().position(|s| *s == img)
        })
        .collect();
    perm.map(|perm| DiagramAut { perm })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub element: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Label of the Ω factor (0 for the identity, j for ω_j).
    pub omega: usize,
    /// The Aut(D) factor.
    pub phi: DiagramAut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlcoveAutGroup {
    pub elements: Vec<AffineIsometry>,
    /// `diagram_auts[k]` is π(elements[k]).
    pub diagram_auts: Vec<DiagramAut>,
    /// elements[k] = ω ∘ φ.
    pub decomposition: Vec<Decomposition>,
    pub generators: Vec<Generator>,
    pub table: CayleyTable,
    pub kind: GroupKind,
}

impl AlcoveAutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generator(&self, name: &str) -> Option<&AffineIsometry> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .map(|g| &self.elements[g.element])
    }

    pub fn index_of_perm(&self, perm: &DiagramAut) -> Option<usize> {
        self.diagram_auts.iter().position(|p| p == perm)
    }
}

/// One factor of a generator recipe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// ω_j (j = 0 for the identity).
    Omega(usize),
    /// θ of an automorphism of D.
    Phi(DiagramAut),
}

/// Coxeter generators of Aut(𝒜), each as a product of factors read as a
/// composition (leftmost applied last).
pub fn coxeter_generator_recipe(rs: &RootSystem) -> Vec<(String, Vec<Factor>)> {
    use Factor::{Omega, Phi};
    let n = rs.rank();
    let flip_a = || {
        Phi(DiagramAut {
            perm: std::iter::once(0).chain((1..=n).map(|i| n + 1 - i)).collect(),
        })
    };
    let swap = |a: usize, b: usize| Phi(DiagramAut::from_cycles(n, &[&[a, b]]));
    let gens: Vec<(&str, Vec<Factor>)> = match (rs.id.family, n) {
        (Family::A, 1) => vec![("tau1", vec![Omega(1)])],
        (Family::A, _) => vec![("tau0", vec![flip_a()]), ("tau1", vec![Omega(1), flip_a()])],
        (Family::B, _) => vec![("tau1", vec![Omega(1)])],
        (Family::C, _) => vec![("tau1", vec![Omega(n)])],
        // the transposition (01) of the affine nodes is ω1 (34)
        (Family::D, 4) => vec![
            ("tau0", vec![swap(3, 4)]),
            ("tau1", vec![swap(1, 3)]),
            ("tau2", vec![Omega(1), swap(3, 4)]),
        ],
        (Family::D, _) if n.is_multiple_of(2) => {
            vec![("tau0", vec![swap(n - 1, n)]), ("tau1", vec![Omega(n - 1)])]
        }
        (Family::D, _) => vec![
            ("tau0", vec![swap(n - 1, n)]),
            ("tau1", vec![swap(n - 1, n), Omega(n)]),
        ],
        (Family::E, 6) => {
            let phi0 = || Phi(DiagramAut::from_cycles(6, &[&[1, 6], &[3, 5]]));
            vec![("tau0", vec![phi0()]), ("tau1", vec![phi0(), Omega(6)])]
        }
        (Family::E, 7) => vec![("tau1", vec![Omega(7)])],
        _ => Vec::new(),
    };
    gens.into_iter()
        .map(|(name, word)| (name.to_string(), word))
        .collect()
}

/// Evaluate a product of factors as an affine isometry.
pub fn evaluate_factors(rs: &RootSystem, factors: &[Factor]) -> Result<AffineIsometry> {
    let omega = fundamental_group(rs);
    let mut acc = AffineIsometry::identity(rs.rank());
    for f in factors {
        let g = match f {
            Factor::Omega(j) => omega
                .element(*j)
                .cloned()
                .ok_or(Error::NotMinuscule(*j))?,
            Factor::Phi(phi) => {
                if !phi.fixes_affine_node() {
                    return Err(Error::NotDiagramAutomorphism);
                }
                theta(rs, phi)?
            }
        };
        acc = acc.compose(&g);
    }
    Ok(acc)
}

pub fn alcove_automorphism_group(rs: &RootSystem) -> AlcoveAutGroup {
    let omega = fundamental_group(rs);
    let dd = build_diagram(rs, true);
    let diagram_auts = diagram_automorphisms(&dd);
    let elements: Vec<AffineIsometry> = diagram_auts
        .iter()
        .map(|phi| theta(rs, phi).expect("automorphisms of the affine diagram are realizable"))
        .collect();
    let decomposition = elements
        .iter()
        .zip(&diagram_auts)
        .map(|(g, phi)| {
            let j = phi.perm[0];
            let w = omega.element(j).expect("φ(−α₀) is minuscule");
            let rest = w.inverse().compose(g);
            let psi = pi(rs, &rest).expect("linear part permutes the affine nodes");
            debug_assert!(rest.is_linear() && psi.fixes_affine_node());
            Decomposition { omega: j, phi: psi }
        })
        .collect::<Vec<_>>();
    let table = CayleyTable::build(&elements, AffineIsometry::compose, AffineIsometry::is_identity)
        .expect("Aut(𝒜) is closed under composition");
    let kind = table.classify();

    let generators = coxeter_generator_recipe(rs)
        .into_iter()
        .map(|(name, word)| {
            let g = evaluate_factors(rs, &word).expect("recipe factors are valid");
            let element = elements
                .iter()
                .position(|e| *e == g)
                .expect("generator lies in Aut(𝒜)");
            Generator { name, element }
        })
        .collect();

    AlcoveAutGroup {
        elements,
        diagram_auts,
        decomposition,
        generators,
        table,
        kind,
    }
}

/// A linear isometry of V permuting the unit-normalized simple roots,
/// stored as `sqrt(scale_sq) · matrix` so that it stays rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberAutomorphism {
    /// One-based image labels, `perm[0] = 0`.
    pub perm: Vec<usize>,
    pub scale_sq: Rational,
    pub matrix: RatMat,
}

impl ChamberAutomorphism {
    /// scale_sq · Mᵀ G M = G.
    pub fn is_isometry(&self, rs: &RootSystem) -> bool {
        self.matrix.transpose().mul(&rs.gram).mul(&self.matrix).scale(&self.scale_sq) == rs.gram
    }
}

fn coxeter_label(a: i64, b: i64) -> i64 {
    match a * b {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        p => panic!("not a finite-type Cartan product: {p}"),
    }
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let (p, q) = (x.numer(), x.denom());
    let (sp, sq) = (p.sqrt(), q.sqrt());
    (&sp * &sp == *p && &sq * &sq == *q).then(|| Rational::from_bigs(sp, sq))
}

/// Aut(𝒞): automorphisms of the Coxeter diagram, realized linearly.
pub fn chamber_automorphisms(rs: &RootSystem) -> Vec<ChamberAutomorphism> {
    let n = rs.rank();
    let labels: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        1
                    } else {
                        let a = rs.cartan[(i, j)].to_i64().expect("integral");
                        let b = rs.cartan[(j, i)].to_i64().expect("integral");
                        coxeter_label(a, b)
                    }
                })
                .collect()
        })
        .collect();
    let mut perms = matrix_isomorphisms(&labels, &labels, true);
    perms.sort();
    perms
        .into_iter()
        .map(|sigma| {
            // M α_i = r_i α_σ(i) with r_i² = |α_i|²/|α_σ(i)|²
            let ratio_sq =
                |i: usize| &rs.gram[(i, i)] / &rs.gram[(sigma[i], sigma[i])];
            let scale_sq = ratio_sq(0);
            let cols: Vec<RatVec> = (0..n)
                .map(|i| {
                    let c = rational_sqrt(&(ratio_sq(i) / &scale_sq))
                        .expect("length ratios are compatible");
                    RatVec::unit(n, sigma[i]).scale(&c)
                })
                .collect();
            ChamberAutomorphism {
                perm: std::iter::once(0).chain(sigma.iter().map(|&s| s + 1)).collect(),
                scale_sq,
                matrix: RatMat::from_columns(&cols),
            }
        })
        .collect()
}

/// Node labels j for which some automorphism of the affine diagram sends
/// node 0 to node j.
pub fn affine_orbit_of_zero(rs: &RootSystem) -> BTreeSet<usize> {
    diagram_automorphisms(&build_diagram(rs, true))
        .iter()
        .map(|phi| phi.perm[0])
        .filter(|&j| j != 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_name(s).unwrap()
    }

    #[test]
    fn affine_a1_double_bond() {
        let dd = build_diagram(&rs("A1"), true);
        assert_eq!(dd.cartan_integer(0, 1), -2);
        assert_eq!(dd.cartan_integer(1, 0), -2);
    }

    #[test]
    fn affine_d4_is_a_star() {
        let dd = build_diagram(&rs("D4"), true);
        for leaf in [0, 1, 3, 4] {
            assert_eq!(dd.cartan_integer(2, leaf), -1);
            for other in [0, 1, 3, 4] {
                if other != leaf {
                    assert_eq!(dd.cartan_integer(leaf, other), 0);
                }
            }
        }
        assert_eq!(diagram_automorphisms(&dd).len(), 24);
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(diagram_automorphisms(&build_diagram(&rs("A4"), false)).len(), 2);
        assert_eq!(diagram_automorphisms(&build_diagram(&rs("A4"), true)).len(), 10);
        for name in ["E8", "F4", "G2"] {
            let auts = diagram_automorphisms(&build_diagram(&rs(name), true));
            assert_eq!(auts.len(), 1, "{name}");
        }
        assert_eq!(diagram_automorphisms(&build_diagram(&rs("B2"), false)).len(), 1);
    }

    #[test]
    fn theta_of_rotation_is_omega() {
        let a2 = rs("A2");
        let rot = DiagramAut::from_cycles(2, &[&[0, 1, 2]]);
        let omega = fundamental_group(&a2);
        assert_eq!(theta(&a2, &rot).unwrap(), *omega.element(1).unwrap());
        assert_eq!(pi(&a2, omega.element(1).unwrap()), Some(rot));
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let b3 = rs("B3");
        let bad = DiagramAut::from_cycles(3, &[&[1, 3]]);
        assert_eq!(theta(&b3, &bad), Err(Error::NotDiagramAutomorphism));
    }

    #[test]
    fn chamber_automorphisms_are_isometries() {
        for (name, order) in [("A3", 2), ("B2", 2), ("B3", 1), ("F4", 2), ("G2", 2), ("D4", 6)] {
            let r = rs(name);
            let auts = chamber_automorphisms(&r);
            assert_eq!(auts.len(), order, "{name}");
            assert!(auts.iter().all(|a| a.is_isometry(&r)), "{name}");
        }
    }
}
