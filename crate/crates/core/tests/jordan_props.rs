mod common;

use common::{algebras, element, positive, vector};
use proptest::prelude::*;
use sbdo_core::exactalg::{MultiPoly, Scalar};
use sbdo_core::jordan::frame::{poly_f_to_original, poly_original_to_f};
use sbdo_core::jordan::{
    cone_test, diagonal_csoi, jdet_inv, jmul, pmap, rank2_csoi, AlgebraDescriptor, ConeStatus, Csoi, Frame,
    JordanElement,
};

fn with_algebra(k: usize) -> impl Strategy<Value = (AlgebraDescriptor, Vec<JordanElement>)> {
    (0..algebras().len()).prop_flat_map(move |i| {
        let alg = algebras()[i].clone();
        (Just(alg.clone()), prop::collection::vec(element(&alg), k))
    })
}

fn p_apply(x: &JordanElement, y: &JordanElement) -> JordanElement {
    y.algebra.element(pmap(x).mul_vec(&y.coords)).unwrap()
}

fn csoi_of(alg: &AlgebraDescriptor) -> Csoi {
    match alg {
        AlgebraDescriptor::Spin { n, frame } => rank2_csoi(*n, *frame).unwrap(),
        AlgebraDescriptor::Symm { r } => diagonal_csoi(*r).unwrap(),
        _ => unreachable!("test algebras are simple"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn jordan_identity((_alg, xs) in with_algebra(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        let x2 = x.square();
        let lhs = jmul(&jmul(x, y).unwrap(), &x2).unwrap();
        let rhs = jmul(x, &jmul(y, &x2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(jmul(x, y).unwrap(), jmul(y, x).unwrap());
    }

    #[test]
    fn unit_and_trace_form((alg, xs) in with_algebra(3)) {
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(jmul(&alg.unit(), x).unwrap(), x.clone());
        // associativity of the trace form
        let lhs = jmul(x, y).unwrap().pair(z).unwrap();
        let rhs = x.pair(&jmul(y, z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fundamental_formula((_alg, xs) in with_algebra(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        let pxy = p_apply(x, y);
        prop_assert_eq!(pmap(&pxy), &(&pmap(x) * &pmap(y)) * &pmap(x));
        prop_assert_eq!(pxy.det(), &(&x.det() * &x.det()) * &y.det());
    }

    #[test]
    fn inverse_and_quadratic_map((_alg, xs) in with_algebra(1)) {
        let x = &xs[0];
        let (det, inv) = jdet_inv(x);
        prop_assert_eq!(det.is_zero(), inv.is_none());
        if let Some(inv) = inv {
            prop_assert_eq!(p_apply(x, &inv), x.clone());
            prop_assert_eq!(pmap(&inv), pmap(x).inverse().unwrap());
        }
    }

    #[test]
    fn peirce_projectors((alg, xs) in with_algebra(1)) {
        let x = &xs[0];
        let csoi = csoi_of(&alg);
        for c in &csoi.idempotents {
            let split = sbdo_core::jordan::peirce_split(c).unwrap();
            let parts = split.parts(x).unwrap();
            let sum = parts[0].add(&parts[1]).unwrap().add(&parts[2]).unwrap();
            prop_assert_eq!(&sum, x);
            for (part, lambda) in parts.iter().zip([Scalar::one(), Scalar::ratio(1, 2), Scalar::zero()]) {
                prop_assert_eq!(jmul(c, part).unwrap(), part.scale(&lambda));
                prop_assert_eq!(split.parts(part).unwrap().iter().filter(|p| !p.is_zero()).count() <= 1, true);
            }
            prop_assert_eq!(split.dims().iter().sum::<usize>(), alg.dim());
        }
        let mut total = alg.zero();
        for c in &csoi.idempotents {
            total = total.add(c).unwrap();
        }
        prop_assert_eq!(total, alg.unit());
    }

    #[test]
    fn combinations_of_the_csoi_are_interior((alg, a) in (0..algebras().len()).prop_flat_map(|i| {
        let alg = algebras()[i].clone();
        let k = csoi_of(&alg).len();
        (Just(alg), prop::collection::vec(positive(), k))
    })) {
        let csoi = csoi_of(&alg);
        let x = csoi.combination(&a);
        prop_assert_eq!(cone_test(&x, None).unwrap(), ConeStatus::Interior);
        let neg = x.scale(&Scalar::from_int(-1));
        prop_assert!(cone_test(&neg, None).unwrap() != ConeStatus::Interior);
    }

    #[test]
    fn frame_transport_round_trip(coeffs in vector(6), x in vector(4)) {
        let alg = AlgebraDescriptor::spin(4, Frame::Original).unwrap();
        let mut q = MultiPoly::zero(4);
        let monos = [[2, 0, 0, 0], [1, 1, 0, 0], [0, 0, 2, 0], [0, 0, 1, 1], [0, 0, 0, 2], [1, 0, 1, 1]];
        for (e, c) in monos.iter().zip(coeffs) {
            q.add_term(e.to_vec(), c);
        }
        let f = poly_original_to_f(&q).unwrap();
        prop_assert_eq!(poly_f_to_original(&f).unwrap(), q.clone());
        prop_assert_eq!(alg.det_poly().eval(&x).unwrap(), alg.det_coords(&x));
    }
}
