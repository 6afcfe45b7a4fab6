use alcove::exactlin::{
    affine_dimension, affine_solution_space, lp_feasible, q, solve_linear, Constraint, LinearSolution,
    LpOutcome, RatMat, RatVec, Rational,
};
use proptest::prelude::*;

/// Leibniz expansion, independent of the elimination code.
fn leibniz(m: &RatMat) -> Rational {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Rational::zero();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = if inversions % 2 == 0 { Rational::one() } else { -Rational::one() };
        for (i, &j) in p.iter().enumerate() {
            term = term * m[(i, j)].clone();
        }
        total = total.clone() + term;
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn small_matrix(n: usize) -> impl Strategy<Value = RatMat> {
    prop::collection::vec(prop::collection::vec((-6i64..=6, 1i64..=4), n), n).prop_map(|rows| {
        RatMat::from_rows(rows.into_iter().map(|r| r.into_iter().map(|(a, b)| q(a, b)).collect()).collect())
    })
}

proptest! {
    #[test]
    fn determinant_matches_leibniz(m in (1usize..=5).prop_flat_map(small_matrix)) {
        prop_assert_eq!(m.determinant(), leibniz(&m));
    }

    #[test]
    fn rank_deficient_products(a in small_matrix(4), k in 0usize..4) {
        // zeroing k columns of a factor caps the rank
        let mut b = RatMat::identity(4);
        for i in 0..k {
            b[(i, i)] = Rational::zero();
        }
        let ab = a.mul(&b);
        prop_assert!(ab.rank() <= 4 - k);
        prop_assert_eq!(ab.determinant().is_zero(), ab.rank() < 4);
    }

    #[test]
    fn unique_solutions_round_trip(a in small_matrix(4), x in prop::collection::vec(-9i64..=9, 4)) {
        let x = RatVec::from_ints(&x);
        let b = a.mul_vec(&x);
        match solve_linear(&a, &b) {
            LinearSolution::Unique(y) => {
                prop_assert!(!a.determinant().is_zero());
                prop_assert_eq!(y, x);
            }
            LinearSolution::Underdetermined => prop_assert!(a.determinant().is_zero()),
            LinearSolution::NoSolution => prop_assert!(false, "consistent system reported empty"),
        }
    }

    #[test]
    fn solution_space_contains_every_preimage(a in small_matrix(3), x in prop::collection::vec(-5i64..=5, 3)) {
        let x = RatVec::from_ints(&x);
        let b = a.mul_vec(&x);
        let (p, kernel) = affine_solution_space(&a, &b).expect("consistent");
        prop_assert_eq!(a.mul_vec(&p), b.clone());
        prop_assert_eq!(kernel.len(), 3 - a.rank());
        for k in &kernel {
            prop_assert!(a.mul_vec(k).is_zero());
        }
        let mut pts = vec![p.clone()];
        pts.extend(kernel.iter().map(|k| p.add(k)));
        prop_assert_eq!(affine_dimension(&pts), kernel.len() as isize);
    }

    #[test]
    fn boxes_are_feasible_iff_nonempty(lo in -5i64..5, width in -3i64..4, strict in any::<bool>()) {
        // lo ≤ x ≤ lo + width in each of two coordinates
        let hi = lo + width;
        let mut cs = Vec::new();
        for i in 0..2 {
            let e = RatVec::unit(2, i);
            if strict {
                cs.push(Constraint::gt(e.clone(), Rational::from_int(lo)));
                cs.push(Constraint::lt(e, Rational::from_int(hi)));
            } else {
                cs.push(Constraint::ge(e.clone(), Rational::from_int(lo)));
                cs.push(Constraint::le(e, Rational::from_int(hi)));
            }
        }
        let expect = if strict { width > 0 } else { width >= 0 };
        let out = lp_feasible(2, &cs);
        prop_assert_eq!(out.is_feasible(), expect);
        if let LpOutcome::Feasible(x) = out {
            prop_assert!(cs.iter().all(|c| c.is_satisfied_by(&x)));
        }
    }
}

#[test]
fn inverse_of_hilbert_matrix() {
    let n = 5;
    let h = RatMat::from_rows(
        (0..n)
            .map(|i| (0..n).map(|j| q(1, (i + j + 1) as i64)).collect())
            .collect(),
    );
    let inv = h.inverse().unwrap();
    assert!(h.mul(&inv).is_identity());
    // known integer inverse entry (H₅⁻¹)₀₀ = 25
    assert_eq!(inv[(0, 0)], Rational::from_int(25));
    assert_eq!(h.determinant(), leibniz(&h));
}

#[test]
fn triangle_with_equality() {
    // x + y = 1, x ≥ 0, y ≥ 0, x > y
    let cs = vec![
        Constraint::eq(RatVec::from_ints(&[1, 1]), Rational::one()),
        Constraint::ge(RatVec::from_ints(&[1, 0]), Rational::zero()),
        Constraint::ge(RatVec::from_ints(&[0, 1]), Rational::zero()),
        Constraint::gt(RatVec::from_ints(&[1, -1]), Rational::zero()),
    ];
    let x = lp_feasible(2, &cs).witness().cloned().unwrap();
    assert!(cs.iter().all(|c| c.is_satisfied_by(&x)));
    // adding x < 1/2 empties it
    let mut cs2 = cs.clone();
    cs2.push(Constraint::lt(RatVec::from_ints(&[1, 0]), q(1, 2)));
    assert_eq!(lp_feasible(2, &cs2), LpOutcome::Infeasible);
}
