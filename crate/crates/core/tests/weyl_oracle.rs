use std::collections::BTreeSet;

use alcove::fundcheck::{kac_coordinates, vertex_permutation};
use alcove::rootsys::{Family, RootSystem, RootSystemId};
use alcove::weyl::{fundamental_group, longest_element, simple_reflection, v_element};
use alcove::{RatVec, Rational};
use proptest::prelude::*;

fn rs(name: &str) -> RootSystem {
    RootSystem::from_name(name).unwrap()
}

/// |W| as the size of the orbit of a regular point under simple reflections.
fn weyl_order_by_orbit(rs: &RootSystem) -> usize {
    let n = rs.rank();
    let rho = (1..=n).fold(RatVec::zeros(n), |acc, i| acc.add(rs.coweight(i)));
    let gens: Vec<_> = (1..=n).map(|i| simple_reflection(rs, i)).collect();
    let mut seen: BTreeSet<RatVec> = [rho.clone()].into_iter().collect();
    let mut stack = vec![rho];
    while let Some(x) = stack.pop() {
        for s in &gens {
            let y = s.apply(&x);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

#[test]
fn weyl_group_orders() {
    let known = [
        ("A2", 6),
        ("A4", 120),
        ("B3", 48),
        ("C4", 384),
        ("D4", 192),
        ("D5", 1920),
        ("G2", 12),
        ("F4", 1152),
        ("E6", 51840),
    ];
    for (name, order) in known {
        let r = rs(name);
        assert_eq!(weyl_order_by_orbit(&r), order, "{name}");
        // |W| = n! · Π m_i · |Ω|
        let fact: usize = (1..=r.rank()).product();
        let marks: usize = r.marks.iter().map(|&m| m as usize).product();
        assert_eq!(fact * marks * (r.minuscule.len() + 1), order, "{name}");
    }
}

#[test]
fn positive_roots_by_reflection_closure() {
    // all roots = W-orbit of the simple roots
    for name in ["A3", "B4", "C3", "D5", "E6", "F4", "G2"] {
        let r = rs(name);
        let n = r.rank();
        let gens: Vec<_> = (1..=n).map(|i| simple_reflection(&r, i)).collect();
        let mut seen: BTreeSet<RatVec> = (1..=n).map(|i| r.simple_root(i)).collect();
        let mut stack: Vec<RatVec> = seen.iter().cloned().collect();
        while let Some(x) = stack.pop() {
            for s in &gens {
                let y = s.apply(&x);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        let ours: BTreeSet<RatVec> = r.all_roots().into_iter().collect();
        assert_eq!(seen, ours, "{name}");
    }
}

#[test]
fn longest_element_sends_positive_to_negative() {
    for name in ["A4", "B3", "D4", "E6", "G2"] {
        let r = rs(name);
        let all: Vec<usize> = (1..=r.rank()).collect();
        let w0 = longest_element(&r, &all);
        let npos = r.positive_roots.len();
        assert_eq!(w0.word.len(), npos, "{name}: ℓ(w₀) = |Φ⁺|");
        for a in &r.positive_roots {
            assert!(r.positive_roots.contains(&w0.apply(a).neg()), "{name}");
        }
        assert!(w0.compose(&w0).is_identity());
        assert!(w0.preserves_gram(&r));
    }
}

#[test]
fn v_elements_permute_the_extended_simple_system() {
    for name in ["A5", "B4", "C3", "D5", "D6", "E6", "E7"] {
        let r = rs(name);
        let mut ext: Vec<RatVec> = vec![r.highest_root.neg()];
        ext.extend((1..=r.rank()).map(|i| r.simple_root(i)));
        let ext_set: BTreeSet<RatVec> = ext.iter().cloned().collect();
        for &j in &r.minuscule {
            let v = v_element(&r, j).unwrap();
            let image: BTreeSet<RatVec> = ext.iter().map(|a| v.apply(a)).collect();
            assert_eq!(image, ext_set, "{name} v_{j}");
        }
        for j in (1..=r.rank()).filter(|j| !r.minuscule.contains(j)) {
            assert!(v_element(&r, j).is_err(), "{name} j={j}");
        }
    }
    let e8 = rs("E8");
    assert!(e8.minuscule.is_empty());
    assert!(v_element(&e8, 1).is_err());
}

fn a_n(n: usize) -> RootSystem {
    RootSystem::build(RootSystemId::new(Family::A, n).unwrap())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn kac_point(n: usize, weights: &[u32]) -> (RootSystem, RatVec) {
    let r = a_n(n);
    let total: u32 = weights.iter().sum::<u32>().max(1);
    let b: Vec<Rational> = weights.iter().map(|&w| Rational::new(w as i64, total as i64)).collect();
    let x = alcove::fundcheck::from_kac_coordinates(&r, &b);
    (r, x)
}

proptest! {
    #[test]
    fn omega_one_is_the_right_kac_shift(
        (n, weights) in (2usize..=6).prop_flat_map(|n| (Just(n), prop::collection::vec(0u32..5, n + 1)))
    ) {
        prop_assume!(weights.iter().any(|&w| w > 0));
        let (r, x) = kac_point(n, &weights);
        let b = kac_coordinates(&r, &x);
        let g = fundamental_group(&r);
        let right: Vec<Rational> = std::iter::once(b[n].clone()).chain(b[..n].iter().cloned()).collect();
        let left: Vec<Rational> = b[1..].iter().cloned().chain(std::iter::once(b[0].clone())).collect();
        prop_assert_eq!(kac_coordinates(&r, &g.element(1).unwrap().apply(&x)), right);
        prop_assert_eq!(kac_coordinates(&r, &g.element(n).unwrap().apply(&x)), left);
    }

    #[test]
    fn fixed_space_of_rotation_powers(n in 2usize..=7, k in 1usize..8) {
        let r = a_n(n);
        let g = fundamental_group(&r);
        let k = k % (n + 1);
        let idx = g.table.power(g.index_of(g.element(1).unwrap()).unwrap(), k);
        let w = &g.elements[idx];
        let (_, dirs) = w.fixed_space().expect("ω fixes the barycentre");
        let codim = n - dirs.len();
        let cycles = gcd(k, n + 1);
        prop_assert_eq!(codim, n + 1 - cycles);
        if k > 0 {
            prop_assert!(codim >= n + 1 - k);
        }
        // its vertex permutation is the k-th power of the (n+1)-cycle
        let perm = vertex_permutation(&r, w).unwrap();
        prop_assert!((0..=n).all(|i| perm[i] == (i + k) % (n + 1)));
    }
}
