//! Seeded generators of random exact data.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{RatMatrix, Scalar};
use crate::jordan::{matrix_to_symm, AlgebraDescriptor, Frame, JordanElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational `a/b` with `|a| <= max_num`, `1 <= b <= max_den`.
pub fn rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Scalar {
    Scalar::ratio(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

/// Rational in `(0, max]` with denominators up to `max_den`.
pub fn positive_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Scalar {
    Scalar::ratio(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}

pub fn rational_vec<R: Rng>(rng: &mut R, len: usize, max_num: i64, max_den: i64) -> Vec<Scalar> {
    (0..len).map(|_| rational(rng, max_num, max_den)).collect()
}

pub fn rational_matrix<R: Rng>(rng: &mut R, n: usize, max_num: i64, max_den: i64) -> RatMatrix {
    RatMatrix::from_rows((0..n).map(|_| rational_vec(rng, n, max_num, max_den)).collect())
}

/// Rational orthogonal matrix by the Cayley transform `(I - S)(I + S)^{-1}`
/// of a random skew-symmetric `S`.
pub fn rotation<R: Rng>(rng: &mut R, n: usize) -> RatMatrix {
    let mut s = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rational(rng, 3, 3);
            s.set(i, j, v.clone());
            s.set(j, i, -v);
        }
    }
    let id = RatMatrix::identity(n);
    let inv = (&id + &s).inverse().expect("I + S is invertible for skew S");
    &(&id - &s) * &inv
}

/// Rational point in the interior of the symmetric cone.
pub fn cone_point<R: Rng>(rng: &mut R, alg: &AlgebraDescriptor) -> JordanElement {
    let coords = match alg {
        AlgebraDescriptor::Spin { n, frame: Frame::Original } => {
            let x = rational_vec(rng, n - 1, 5, 3);
            let norm1: Scalar =
                x.iter().map(|v| if v.real_sign() == Some(-1) { -v } else { v.clone() }).sum();
            let mut c = vec![&norm1 + &positive_rational(rng, 3, 2)];
            c.extend(x);
            c
        }
        AlgebraDescriptor::Spin { n, frame: Frame::FBasis } => {
            let yp = rational_vec(rng, n - 2, 5, 3);
            let half_sq: Scalar = yp.iter().map(|v| &(v * v) * &Scalar::ratio(1, 2)).sum();
            let y0 = positive_rational(rng, 5, 3);
            let y1 = &(&half_sq / &y0) + &positive_rational(rng, 3, 2);
            let mut c = vec![y0, y1];
            c.extend(yp);
            c
        }
        AlgebraDescriptor::Symm { r } => {
            let b = rational_matrix(rng, *r, 3, 2);
            matrix_to_symm(&(&(&b * &b.transpose()) + &RatMatrix::identity(*r)))
        }
        AlgebraDescriptor::Product { factors } => {
            factors.iter().flat_map(|f| cone_point(rng, f).coords).collect()
        }
    };
    JordanElement::new(alg.clone(), coords).expect("coordinates match the algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cone_points_are_interior() {
        let mut r = rng(11);
        for alg in [
            AlgebraDescriptor::spin(5, Frame::Original).unwrap(),
            AlgebraDescriptor::spin(5, Frame::FBasis).unwrap(),
            AlgebraDescriptor::symm(3).unwrap(),
        ] {
            for _ in 0..20 {
                let x = cone_point(&mut r, &alg);
                assert_eq!(crate::jordan::cone_test(&x, None).unwrap(), crate::jordan::ConeStatus::Interior);
            }
        }
    }

    #[test]
    fn rotations_are_orthogonal() {
        let mut r = rng(7);
        for n in 1..5 {
            let q = rotation(&mut r, n);
            assert_eq!(&q.transpose() * &q, RatMatrix::identity(n));
        }
    }
}
