use std::collections::BTreeSet;

use alcove::diagram::{alcove_automorphism_group, evaluate_factors, DiagramAut, Factor};
use alcove::fundcheck::{is_fundamental_domain, vertex_permutation, GroupAction};
use alcove::group::cycle_notation;
use alcove::polytope::{
    alcove, balanced_root, enumerate_vertices, face_lattice, fundamental_polytope,
    fundamental_polytope_with, inner_product_formula_holds, komrakov_premet, regular_face,
    simplex_volume, slicing_roots, volume, Support, DEFAULT_FACE_CAP,
};
use alcove::rootsys::RootSystem;
use alcove::weyl::fundamental_group;
use alcove::{RatVec, Rational};
use proptest::prelude::*;

fn rs(name: &str) -> RootSystem {
    RootSystem::from_name(name).unwrap()
}

#[test]
fn alcove_volume_closed_form_type_a() {
    // coweights of A_n have determinant 1/(n+1)
    for n in 2..=6usize {
        let r = rs(&format!("A{n}"));
        let v = volume(&enumerate_vertices(&alcove(&r)).unwrap()).unwrap();
        let fact: i64 = (1..=n as i64).product();
        assert_eq!(v, Rational::new(1, (n as i64 + 1) * fact), "A{n}");
        assert_eq!(v, simplex_volume(&r.alcove_vertices()));
    }
}

#[test]
fn kp_is_a_fundamental_domain_for_omega() {
    for name in ["A3", "A5", "B3", "C4", "D4", "D5", "E6", "E7"] {
        let r = rs(name);
        let report = is_fundamental_domain(&komrakov_premet(&r), &GroupAction::omega(&r)).unwrap();
        assert!(report.verdict, "{name}: {report:?}");
    }
}

#[test]
fn euler_relation_on_face_lattices() {
    for name in ["A3", "A4", "B3", "D4", "D5", "E6", "G2"] {
        let r = rs(name);
        for p in [alcove(&r), komrakov_premet(&r)] {
            let f = face_lattice(&enumerate_vertices(&p).unwrap(), DEFAULT_FACE_CAP).unwrap().f_vector();
            let alt: i64 = f
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
                .sum();
            assert_eq!(alt, 1, "{name}: f = {f:?}");
        }
    }
    // the alcove is a simplex: f_i = C(n+1, i+1)
    let f = face_lattice(&enumerate_vertices(&alcove(&rs("A4"))).unwrap(), DEFAULT_FACE_CAP)
        .unwrap()
        .f_vector();
    assert_eq!(f, vec![5, 10, 10, 5, 1]);
}

#[test]
fn face_cap_is_enforced() {
    let r = rs("A4");
    let p = enumerate_vertices(&komrakov_premet(&r)).unwrap();
    assert!(face_lattice(&p, 3).is_err());
}

#[test]
fn regular_face_of_barycentre_is_everything() {
    let r = rs("D5");
    let p = enumerate_vertices(&komrakov_premet(&r)).unwrap();
    let n = p.len() as i64;
    let bary = p
        .vertices
        .iter()
        .fold(RatVec::zeros(5), |acc, v| acc.add(v))
        .scale(&Rational::new(1, n));
    let f = regular_face(&p, &bary).unwrap();
    assert_eq!(f.dim, 5);
    assert_eq!(f.vertices.len(), p.len());
    let v = regular_face(&p, &p.vertices[0]).unwrap();
    assert_eq!((v.dim, v.vertices.clone()), (0, vec![0]));
}

#[test]
fn image_of_polytope_has_image_vertices() {
    let r = rs("E6");
    let kp = komrakov_premet(&r);
    let kv = enumerate_vertices(&kp).unwrap();
    for g in &fundamental_group(&r).elements {
        let img = enumerate_vertices(&kp.image(g)).unwrap();
        let want: BTreeSet<RatVec> = kv.vertices.iter().map(|v| g.apply(v)).collect();
        assert_eq!(img.vertices.iter().cloned().collect::<BTreeSet<_>>(), want);
    }
}

#[test]
fn d4_generator_variants() {
    let r = rs("D4");
    let aut = alcove_automorphism_group(&r);
    let t = &aut.table;
    let idx = |factors: Vec<Factor>| {
        let g = evaluate_factors(&r, &factors).unwrap();
        aut.elements.iter().position(|e| *e == g).unwrap()
    };
    let tau0 = idx(vec![Factor::Phi(DiagramAut::from_cycles(4, &[&[3, 4]]))]);
    let tau1 = idx(vec![Factor::Phi(DiagramAut::from_cycles(4, &[&[1, 3]]))]);
    let orders = |a: usize, b: usize, c: usize| {
        let o = |x: usize, y: usize| t.element_order(t.mul(x, y));
        (o(a, b), o(b, c), o(a, c))
    };
    let bare = idx(vec![Factor::Omega(1)]);
    assert_eq!(orders(tau0, tau1, bare), (3, 4, 2));
    let composite = idx(vec![Factor::Omega(1), Factor::Phi(DiagramAut::from_cycles(4, &[&[3, 4]]))]);
    assert_eq!(orders(tau0, tau1, composite), (3, 3, 2));
    assert_eq!(t.element_order(composite), 2);
    let perm = vertex_permutation(&r, &aut.elements[composite]).unwrap();
    assert_eq!(cycle_notation(&perm), "(01)");
}

#[test]
fn mirrored_a3_slice_is_also_fundamental() {
    let r = rs("A3");
    let flip = DiagramAut::from_cycles(3, &[&[1, 3]]);
    let b = balanced_root(&r, &flip, &[3], &[1], Support::Minuscule).unwrap();
    let l = fundamental_polytope_with(&r, &[b]).unwrap();
    let report = is_fundamental_domain(&l, &GroupAction::alcove_automorphisms(&r)).unwrap();
    assert!(report.verdict);
    assert_eq!(enumerate_vertices(&l).unwrap().len(), 6);
}

#[test]
fn opposite_slices_miss_nothing() {
    // (v, x) ≥ 0 and (v, x) ≤ 0 together recover vert 𝒦 as a union
    let r = rs("A4");
    let roots = slicing_roots(&r);
    let kv: BTreeSet<RatVec> = enumerate_vertices(&komrakov_premet(&r)).unwrap().vertices.into_iter().collect();
    let pos: BTreeSet<RatVec> =
        enumerate_vertices(&fundamental_polytope(&r).unwrap()).unwrap().vertices.into_iter().collect();
    let neg_root = balanced_root(&r, &roots[0].involution, &roots[0].minus, &roots[0].plus, Support::Minuscule).unwrap();
    let neg: BTreeSet<RatVec> = enumerate_vertices(&fundamental_polytope_with(&r, &[neg_root]).unwrap())
        .unwrap()
        .vertices
        .into_iter()
        .collect();
    assert!(kv.is_subset(&pos.union(&neg).cloned().collect()));
}

fn slicing_case() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A2", "A3", "A4", "A5", "A6", "D4", "D5", "D6", "E6"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn vertices_are_inherited_by_sign(name in slicing_case()) {
        let r = rs(name);
        let roots = slicing_roots(&r);
        let kv = enumerate_vertices(&komrakov_premet(&r)).unwrap();
        let lv = enumerate_vertices(&fundamental_polytope(&r).unwrap()).unwrap();
        let filtered: Vec<RatVec> = kv
            .vertices
            .iter()
            .filter(|x| roots.iter().all(|b| !r.inner(&b.vector, x).is_negative()))
            .cloned()
            .collect();
        prop_assert_eq!(lv.vertices, filtered);
    }

    #[test]
    fn balanced_inner_product_formula(
        (n, choice) in (2usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(0u8..3, n / 2)))
    ) {
        // each mirror pair {i, n+1−i} contributes nothing, i to plus, or n+1−i to plus
        prop_assume!(choice.iter().any(|&c| c > 0));
        let r = rs(&format!("A{n}"));
        let flip = DiagramAut { perm: std::iter::once(0).chain((1..=n).map(|i| n + 1 - i)).collect() };
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for (k, &c) in choice.iter().enumerate() {
            let i = k + 1;
            match c {
                1 => { plus.push(i); minus.push(n + 1 - i); }
                2 => { plus.push(n + 1 - i); minus.push(i); }
                _ => {}
            }
        }
        let b = balanced_root(&r, &flip, &plus, &minus, Support::Minuscule).unwrap();
        prop_assert!(inner_product_formula_holds(&r, &b));
    }
}
