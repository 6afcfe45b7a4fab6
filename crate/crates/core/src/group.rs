//! Finite groups given by an explicit element list and exact composition.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Isomorphism type, detected from the multiplication table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Trivial,
    Cyclic(usize),
    KleinFour,
    /// Dihedral group I₂(k) of order 2k, k ≥ 3.
    Dihedral(usize),
    Symmetric4,
    Other { order: usize, abelian: bool },
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Trivial => write!(f, "1"),
            GroupKind::Cyclic(k) => write!(f, "Z{k}"),
            GroupKind::KleinFour => write!(f, "Z2xZ2"),
            GroupKind::Dihedral(3) => write!(f, "I2(3)=S3"),
            GroupKind::Dihedral(k) => write!(f, "I2({k})"),
            GroupKind::Symmetric4 => write!(f, "S4"),
            GroupKind::Other { order, abelian } => {
                write!(f, "order {order} ({})", if *abelian { "abelian" } else { "nonabelian" })
            }
        }
    }
}

/// Multiplication table over element indices: `table[a][b]` is the index of
/// `a ∘ b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyTable {
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

impl CayleyTable {
    /// Builds the table, or `None` if some product is not in the list.
    pub fn build<T: PartialEq>(
        elements: &[T],
        compose: impl Fn(&T, &T) -> T,
        is_identity: impl Fn(&T) -> bool,
    ) -> Option<CayleyTable> {
        let identity = elements.iter().position(is_identity)?;
        let mut table = Vec::with_capacity(elements.len());
        for a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in elements {
                let c = compose(a, b);
                row.push(elements.iter().position(|e| *e == c)?);
            }
            table.push(row);
        }
        Some(CayleyTable { identity, table })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul(a, b) == self.identity)
            .expect("group element has an inverse")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
        })
    }

    /// Number of elements of each order.
    pub fn order_spectrum(&self) -> BTreeMap<usize, usize> {
        let mut spec = BTreeMap::new();
        for a in 0..self.order() {
            *spec.entry(self.element_order(a)).or_insert(0) += 1;
        }
        spec
    }

    pub fn classify(&self) -> GroupKind {
        let n = self.order();
        let abelian = self.is_abelian();
        let spec = self.order_spectrum();
        if n == 1 {
            return GroupKind::Trivial;
        }
        if spec.contains_key(&n) {
            return GroupKind::Cyclic(n);
        }
        if n == 4 && abelian {
            return GroupKind::KleinFour;
        }
        if !abelian && n.is_multiple_of(2) {
            let k = n / 2;
            if let Some(r) = (0..n).find(|&a| self.element_order(a) == k) {
                let rotations: Vec<usize> = (0..k).map(|i| self.power(r, i)).collect();
                let rest_involutions = (0..n)
                    .filter(|a| !rotations.contains(a))
                    .all(|a| self.element_order(a) == 2);
                if rest_involutions {
                    return GroupKind::Dihedral(k);
                }
            }
        }
        let s4: BTreeMap<usize, usize> = [(1, 1), (2, 9), (3, 8), (4, 6)].into_iter().collect();
        if n == 24 && spec == s4 {
            return GroupKind::Symmetric4;
        }
        GroupKind::Other { order: n, abelian }
    }
}

/// Cycle notation over labels `0..perm.len()`, e.g. `(02)(13)`; `()` for the
/// identity. Labels above 9 are comma-separated.
pub fn cycle_notation(perm: &[usize]) -> String {
    let wide = perm.len() > 10;
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x.to_string());
            x = perm[x];
        }
        out.push('(');
        out.push_str(&cycle.join(if wide { "," } else { "" }));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_group(gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let n = gens[0].len();
        let mut elems = vec![(0..n).collect::<Vec<_>>()];
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p: Vec<usize> = (0..n).map(|k| g[elems[i][k]]).collect();
                if !elems.contains(&p) {
                    elems.push(p);
                }
            }
            i += 1;
        }
        elems
    }

    fn table(gens: &[Vec<usize>]) -> CayleyTable {
        let elems = perm_group(gens);
        CayleyTable::build(
            &elems,
            |a, b| b.iter().map(|&k| a[k]).collect::<Vec<_>>(),
            |a| a.iter().enumerate().all(|(i, &x)| i == x),
        )
        .unwrap()
    }

    #[test]
    fn classifies_small_groups() {
        assert_eq!(table(&[vec![1, 2, 0]]).classify(), GroupKind::Cyclic(3));
        assert_eq!(table(&[vec![1, 0, 2, 3], vec![0, 1, 3, 2]]).classify(), GroupKind::KleinFour);
        assert_eq!(table(&[vec![1, 0, 2], vec![0, 2, 1]]).classify(), GroupKind::Dihedral(3));
        assert_eq!(table(&[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]).classify(), GroupKind::Dihedral(4));
        let s4 = table(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]);
        assert_eq!(s4.classify(), GroupKind::Symmetric4);
        assert!(s4.is_associative());
        let q = table(&[vec![0]]);
        assert_eq!(q.classify(), GroupKind::Trivial);
    }

    #[test]
    fn cycles() {
        assert_eq!(cycle_notation(&[2, 3, 0, 1]), "(02)(13)");
        assert_eq!(cycle_notation(&[0, 1]), "()");
        assert_eq!(cycle_notation(&[1, 2, 0]), "(012)");
    }
}
