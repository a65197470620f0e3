#![allow(dead_code)]

use proptest::prelude::*;
use sbdo_core::exactalg::{MultiPoly, RatMatrix, Scalar};
use sbdo_core::jordan::{AlgebraDescriptor, Frame, JordanElement};

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(a, b)| Scalar::ratio(a, b))
}

pub fn gaussian() -> impl Strategy<Value = Scalar> {
    (scalar(), scalar()).prop_map(|(a, b)| &a + &(&b * &Scalar::i()))
}

pub fn nonzero() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

pub fn positive() -> impl Strategy<Value = Scalar> {
    (1i64..=9, 1i64..=5).prop_map(|(a, b)| Scalar::ratio(a, b))
}

pub fn vector(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(scalar(), n)
}

pub fn matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(vector(n), n).prop_map(RatMatrix::from_rows)
}

/// `B B^t + I`.
pub fn pd_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    matrix(n).prop_map(move |b| &(&b * &b.transpose()) + &RatMatrix::identity(n))
}

/// Up to `terms` monomials of degree at most `deg` in `n` variables.
pub fn poly(n: usize, deg: u32, terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=deg, n), scalar()), 0..=terms).prop_map(move |ts| {
        let mut p = MultiPoly::zero(n);
        for (e, c) in ts {
            if e.iter().sum::<u32>() <= deg {
                p.add_term(e, c);
            }
        }
        p
    })
}

pub fn algebras() -> Vec<AlgebraDescriptor> {
    vec![
        AlgebraDescriptor::spin(4, Frame::Original).unwrap(),
        AlgebraDescriptor::spin(5, Frame::FBasis).unwrap(),
        AlgebraDescriptor::symm(2).unwrap(),
        AlgebraDescriptor::symm(3).unwrap(),
    ]
}

pub fn element(alg: &AlgebraDescriptor) -> impl Strategy<Value = JordanElement> {
    let alg = alg.clone();
    vector(alg.dim()).prop_map(move |v| alg.element(v).unwrap())
}
