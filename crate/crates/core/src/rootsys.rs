//! Irreducible reduced root systems in Bourbaki numbering.
//!
//! Vectors are in the simple-root basis. The Gram matrix is normalized so
//! that long roots have squared length 2.
//!
//! Node order (Bourbaki):
//!
//! | type | diagram                              | short roots        |
//! |------|--------------------------------------|--------------------|
//! | A_n  | 1 - 2 - … - n                        | none               |
//! | B_n  | 1 - 2 - … - (n-1) => n               | α_n                |
//! | C_n  | 1 - 2 - … - (n-1) <= n               | α_1 … α_{n-1}      |
//! | D_n  | 1 - … - (n-2) - (n-1), (n-2) - n     | none               |
//! | E_n  | 1 - 3 - 4 - 5 - … - n, 2 - 4         | none               |
//! | F_4  | 1 - 2 => 3 - 4                       | α_3, α_4           |
//! | G_2  | 1 <= 2 (triple)                      | α_1                |

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{solve_linear, LinearSolution, RatMat, RatVec, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn is_valid_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystemId {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemId {
    pub fn new(family: Family, rank: usize) -> Result<RootSystemId> {
        if family.is_valid_rank(rank) {
            Ok(RootSystemId { family, rank })
        } else {
            Err(Error::InvalidRank {
                family: family.letter(),
                rank,
            })
        }
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemId {
    type Err = Error;

    /// Accepts `"E6"`, `"e6"` or `"E 6"`.
    fn from_str(s: &str) -> Result<RootSystemId> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::Parse("empty root system".into()))?;
        let family: Family = letter.to_string().parse()?;
        let rank: usize = chars
            .as_str()
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        RootSystemId::new(family, rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystem {
    pub id: RootSystemId,
    /// `cartan[(i, j)] = ⟨α_i^∨, α_j⟩`, zero-based.
    pub cartan: RatMat,
    pub gram: RatMat,
    /// Ordered by height, then lexicographically; simple roots first.
    pub positive_roots: Vec<RatVec>,
    pub highest_root: RatVec,
    pub marks: Vec<i64>,
    /// `coweights[i - 1]` is ϖ_i^∨.
    pub coweights: Vec<RatVec>,
    /// One-based indices j with m_j = 1.
    pub minuscule: Vec<usize>,
}

/// Squared lengths and edges (one-based) of the Dynkin diagram.
fn diagram_data(id: RootSystemId) -> (Vec<Rational>, Vec<(usize, usize)>) {
    let n = id.rank;
    let two = Rational::from_int(2);
    let one = Rational::one();
    let chain: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
    match id.family {
        Family::A => (vec![two; n], chain),
        Family::B => {
            let mut len = vec![two; n];
            len[n - 1] = one;
            (len, chain)
        }
        Family::C => {
            let mut len = vec![one; n];
            len[n - 1] = two;
            (len, chain)
        }
        Family::D => {
            let mut edges: Vec<(usize, usize)> = (1..n - 1).map(|i| (i, i + 1)).collect();
            edges.push((n - 2, n));
            (vec![two; n], edges)
        }
        Family::E => {
            let mut edges = vec![(1, 3), (2, 4)];
            edges.extend((3..n).map(|i| (i, i + 1)));
            (vec![two; n], edges)
        }
        Family::F => (vec![two.clone(), two, one.clone(), one], chain),
        Family::G => (vec![Rational::new(2, 3), two], chain),
    }
}

fn gram_matrix(id: RootSystemId) -> RatMat {
    let (len, edges) = diagram_data(id);
    let n = id.rank;
    let mut g = RatMat::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = len[i].clone();
    }
    for (a, b) in edges {
        let (a, b) = (a - 1, b - 1);
        let bond = -(std::cmp::max(&len[a], &len[b]) / Rational::from_int(2));
        g[(a, b)] = bond.clone();
        g[(b, a)] = bond;
    }
    g
}

impl RootSystem {
    pub fn build(id: RootSystemId) -> RootSystem {
        RootSystem::from_gram(id, gram_matrix(id))
    }

    /// Same system with the Gram matrix multiplied by `factor`. Every
    /// combinatorial output is invariant under this rescaling.
    pub fn build_scaled(id: RootSystemId, factor: &Rational) -> RootSystem {
        assert!(factor.is_positive(), "scale factor must be positive");
        RootSystem::from_gram(id, gram_matrix(id).scale(factor))
    }

    pub fn from_name(name: &str) -> Result<RootSystem> {
        Ok(RootSystem::build(name.parse()?))
    }

    fn from_gram(id: RootSystemId, gram: RatMat) -> RootSystem {
        let n = id.rank;
        let mut cartan = RatMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                cartan[(i, j)] = Rational::from_int(2) * &gram[(i, j)] / &gram[(i, i)];
            }
        }
        let int_cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| cartan[(i, j)].to_i64().expect("integral Cartan matrix")).collect())
            .collect();
        let roots = positive_roots(&int_cartan);
        let highest = roots
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .expect("nonempty root system")
            .clone();
        let coweights = (0..n)
            .map(|i| match solve_linear(&gram, &RatVec::unit(n, i)) {
                LinearSolution::Unique(c) => c,
                _ => unreachable!("Gram matrix is positive definite"),
            })
            .collect();
        let minuscule = (1..=n).filter(|&j| highest[j - 1] == 1).collect();
        RootSystem {
            id,
            cartan,
            gram,
            positive_roots: roots.iter().map(|r| RatVec::from_ints(r)).collect(),
            highest_root: RatVec::from_ints(&highest),
            marks: highest,
            coweights,
            minuscule,
        }
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    pub fn inner(&self, x: &RatVec, y: &RatVec) -> Rational {
        self.gram.mul_vec(y).dot(x)
    }

    /// Checked variant of [`RootSystem::inner`].
    pub fn try_inner(&self, x: &RatVec, y: &RatVec) -> Result<Rational> {
        for v in [x, y] {
            if v.dim() != self.rank() {
                return Err(Error::DimensionMismatch {
                    expected: self.rank(),
                    found: v.dim(),
                });
            }
        }
        Ok(self.inner(x, y))
    }

    /// Coefficients `c` with `(v, x) = c · x` for coordinates `x`.
    pub fn covector(&self, v: &RatVec) -> RatVec {
        self.gram.mul_vec(v)
    }

    /// α_i, one-based.
    pub fn simple_root(&self, i: usize) -> RatVec {
        RatVec::unit(self.rank(), i - 1)
    }

    /// ϖ_i^∨, one-based.
    pub fn coweight(&self, i: usize) -> &RatVec {
        &self.coweights[i - 1]
    }

    pub fn mark(&self, i: usize) -> i64 {
        self.marks[i - 1]
    }

    pub fn is_minuscule(&self, j: usize) -> bool {
        self.minuscule.contains(&j)
    }

    /// ⟨α_i^∨, x⟩ = 2(α_i, x)/(α_i, α_i), one-based.
    pub fn coroot_pairing(&self, i: usize, x: &RatVec) -> Rational {
        let i = i - 1;
        let ax: Rational = (0..self.rank()).map(|k| &self.gram[(i, k)] * &x[k]).sum();
        Rational::from_int(2) * ax / &self.gram[(i, i)]
    }

    /// Sum of the coweights indexed by `subset` (one-based).
    pub fn coweight_sum(&self, subset: &[usize]) -> RatVec {
        subset
            .iter()
            .fold(RatVec::zeros(self.rank()), |acc, &i| acc.add(self.coweight(i)))
    }

    pub fn all_roots(&self) -> Vec<RatVec> {
        self.positive_roots
            .iter()
            .cloned()
            .chain(self.positive_roots.iter().map(RatVec::neg))
            .collect()
    }

    pub fn is_root(&self, v: &RatVec) -> bool {
        self.positive_roots.iter().any(|r| r == v || r.neg() == *v)
    }

    /// Whether Π_j = {−α₀} ∪ {α_i : i ≠ j} is a simple system, decided by
    /// expressing every root in that basis.
    pub fn is_simple_system(&self, j: usize) -> bool {
        let n = self.rank();
        let mut basis = vec![self.highest_root.neg()];
        basis.extend((1..=n).filter(|&i| i != j).map(|i| self.simple_root(i)));
        let b = RatMat::from_columns(&basis);
        self.positive_roots.iter().all(|r| match solve_linear(&b, r) {
            LinearSolution::Unique(c) => {
                c.iter().all(Rational::is_integer)
                    && (c.iter().all(|x| !x.is_negative()) || c.iter().all(|x| !x.is_positive()))
            }
            _ => false,
        })
    }

    /// {0} ∪ {ϖ_i^∨/m_i}, index 0 first.
    pub fn alcove_vertices(&self) -> Vec<RatVec> {
        let mut out = vec![RatVec::zeros(self.rank())];
        out.extend(
            (1..=self.rank())
                .map(|i| self.coweight(i).scale(&Rational::new(1, self.mark(i)))),
        );
        out
    }

    /// Coordinates of x in the coweight basis, i.e. b_i = (α_i, x).
    pub fn coweight_coordinates(&self, x: &RatVec) -> RatVec {
        self.gram.mul_vec(x)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("root system serializes")
    }
}

/// Positive roots as integer α-coordinates, generated upward by root
/// strings: β + α_i is a root iff q = p − ⟨α_i^∨, β⟩ > 0, where p is the
/// largest k with β − kα_i a root.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect();
    let mut all = Vec::new();
    while !layer.is_empty() {
        layer.sort_by(|a, b| b.cmp(a));
        for r in &layer {
            known.insert(r.clone());
        }
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|k| cartan[i][k] * beta[k]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        all.append(&mut layer);
        layer = next;
    }
    all
}

/// Every type exercised by the test suite, in a fixed order.
pub fn standard_types(max_rank: usize) -> Vec<RootSystemId> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for rank in 1..=max_rank {
            if let Ok(id) = RootSystemId::new(family, rank) {
                out.push(id);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_name(s).unwrap()
    }

    #[test]
    fn a2_inner_products() {
        let a2 = rs("A2");
        assert_eq!(a2.inner(&a2.simple_root(1), &a2.simple_root(1)), 2);
        assert_eq!(a2.inner(&a2.simple_root(1), &a2.simple_root(2)), -1);
        assert!(a2.try_inner(&RatVec::zeros(3), &RatVec::zeros(2)).is_err());
    }

    #[test]
    fn classical_cartan_entries() {
        let b3 = rs("B3");
        assert_eq!(b3.cartan[(2, 1)], -2);
        assert_eq!(b3.cartan[(1, 2)], -1);
        let g2 = rs("G2");
        assert_eq!(g2.cartan[(0, 1)], -3);
        assert_eq!(g2.cartan[(1, 0)], -1);
    }

    #[test]
    fn id_parsing() {
        assert_eq!("e 6".parse::<RootSystemId>().unwrap().to_string(), "E6");
        assert!("D3".parse::<RootSystemId>().is_err());
        assert!("X3".parse::<RootSystemId>().is_err());
        assert!(matches!(
            RootSystemId::new(Family::F, 5),
            Err(Error::InvalidRank { family: 'F', rank: 5 })
        ));
    }

    #[test]
    fn marks_of_exceptional_types() {
        assert_eq!(rs("E6").marks, vec![1, 2, 2, 3, 2, 1]);
        assert_eq!(rs("E8").marks, vec![2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(rs("F4").marks, vec![2, 3, 4, 2]);
        assert_eq!(rs("G2").marks, vec![3, 2]);
    }

    #[test]
    fn coweights_are_dual_to_simple_roots() {
        for id in standard_types(5) {
            let r = RootSystem::build(id);
            for i in 1..=r.rank() {
                for j in 1..=r.rank() {
                    let v = r.inner(r.coweight(i), &r.simple_root(j));
                    assert_eq!(v, i64::from(i == j), "{id} ϖ{i} α{j}");
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let d4 = rs("D4");
        let text = serde_json::to_string(&d4).unwrap();
        assert!(text.contains("\"1/2\""));
        let back: RootSystem = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d4);
    }
}
