mod common;

use common::{nonzero, scalar, vector};
use proptest::prelude::*;
use sbdo_core::exactalg::{MultiPoly, RatMatrix, Scalar};
use sbdo_core::jordan::{rank2_csoi, Frame};
use sbdo_core::jrep::{build_rep, RepSpec};
use sbdo_core::pluriharm::{
    chom_check, delta_apply, derived_closed_form, derived_coeffs, derived_recurrence, is_pluriharmonic,
    paper_closed_form, paper_recurrence, pluriharmonic_solve, pullback_to_module, rank2_symbol,
    rank2_symbol_basis, y_prime_rotation, Delta,
};
use sbdo_core::sample;

fn swap12(n: usize) -> RatMatrix {
    let mut m = RatMatrix::identity(n);
    m.set(0, 0, Scalar::zero());
    m.set(1, 1, Scalar::zero());
    m.set(0, 1, Scalar::one());
    m.set(1, 0, Scalar::one());
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_forms_match_recurrences(n in 4usize..=9, m2 in 1i64..=9, p in 0usize..=5) {
        let m = Scalar::ratio(m2, 2);
        prop_assert_eq!(paper_closed_form(n, &m, p), paper_recurrence(n, &m, p));
        prop_assert_eq!(derived_closed_form(n, &m, p), derived_recurrence(n, &m, p));
    }

    #[test]
    fn rank2_symbols_are_homogeneous_and_invariant(
        n in 4usize..=6,
        coeffs in prop::collection::vec(scalar(), 1..=3),
        y in vector(6),
        t in nonzero(),
        seed in any::<u64>(),
    ) {
        let p = coeffs.len() - 1;
        let q = rank2_symbol(n, &coeffs).unwrap();
        let y = &y[..n];
        prop_assert!(q.is_homogeneous_of(2 * p as u32) || q.is_zero());
        let csoi = rank2_csoi(n, Frame::FBasis).unwrap();
        prop_assert!(chom_check(&q, &csoi, &[p, p]).unwrap());
        let rot = y_prime_rotation(n, &sample::rotation(&mut sample::rng(seed), n - 2));
        prop_assert_eq!(q.eval(&rot.mul_vec(y)).unwrap(), q.eval(y).unwrap());
        prop_assert_eq!(q.eval(&swap12(n).mul_vec(y)).unwrap(), q.eval(y).unwrap());
        let ty: Vec<Scalar> = y.iter().map(|v| &t * v).collect();
        prop_assert_eq!(q.eval(&ty).unwrap(), &t.pow(2 * p as i64).unwrap() * &q.eval(y).unwrap());
    }

    #[test]
    fn derived_coefficients_solve_the_delta_equations(n in 4usize..=8, m in 1i64..=4, p in 0usize..=3) {
        let c = derived_recurrence(n, &Scalar::from_int(m), p);
        let q = rank2_symbol(n, &c).unwrap();
        let nb = 2 * m as usize;
        prop_assert!(delta_apply(Delta::One, n, nb, &q).unwrap().is_zero());
        prop_assert!(delta_apply(Delta::Two, n, nb, &q).unwrap().is_zero());
    }

    #[test]
    fn perturbed_coefficients_break_pluriharmonicity(p in 1usize..=2, j in 0usize..=2, d in nonzero()) {
        let j = j.min(p);
        let rep = build_rep(RepSpec::Clifford { n: 4, copies: 2 }).unwrap();
        let csoi = rank2_csoi(4, Frame::Original).unwrap();
        let mut c = derived_recurrence(4, &Scalar::from_int(2), p);
        let solution = rank2_symbol(4, &c).unwrap();
        c[j] = &c[j] + &d;
        let perturbed = rank2_symbol(4, &c).unwrap();
        let pulled = |q: &MultiPoly| pullback_to_module(&rep, q, Frame::FBasis).unwrap();
        prop_assert!(is_pluriharmonic(&rep, &csoi, &pulled(&solution)).unwrap());
        prop_assert!(!is_pluriharmonic(&rep, &csoi, &pulled(&perturbed)).unwrap());
    }
}

#[test]
fn nullspace_oracle_agrees_with_derived_recurrence() {
    for (n, copies) in [(4, 2), (5, 1), (6, 1)] {
        let rep = build_rep(RepSpec::Clifford { n, copies }).unwrap();
        let csoi = rank2_csoi(n, Frame::Original).unwrap();
        let m = Scalar::ratio(rep.dim_e as i64, 4);
        for p in 0..=2 {
            let space = rank2_symbol_basis(n, p, p).unwrap();
            let sols = pluriharmonic_solve(&rep, &csoi, &space).unwrap();
            assert_eq!(sols.len(), 1, "n = {n}, copies = {copies}, p = {p}");
            assert_eq!(sols[0].coeffs, derived_coeffs(n, &m, p).unwrap().coeffs, "n = {n}, p = {p}");
        }
    }
}

#[test]
fn constants_are_pluriharmonic() {
    let rep = build_rep(RepSpec::Clifford { n: 4, copies: 2 }).unwrap();
    let csoi = rank2_csoi(4, Frame::Original).unwrap();
    assert!(is_pluriharmonic(&rep, &csoi, &MultiPoly::one(rep.dim_e)).unwrap());
    let y1 = pullback_to_module(&rep, &MultiPoly::var(4, 0), Frame::FBasis).unwrap();
    assert!(!is_pluriharmonic(&rep, &csoi, &y1).unwrap());
}
