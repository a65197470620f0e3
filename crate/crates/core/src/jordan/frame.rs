//! Change of frame for spin factors.
//!
//! The base change between `(s, x)` and `(y_1, .., y_n)` involves `sqrt(2)`.
//! Polynomials are transported through a formal variable `t` with `t^2 = 2`;
//! a result still containing an odd power of `t` is irrational and rejected.
//! Points are transported in `Q(i)(sqrt 2)`.

use std::ops::{Add, Mul, Neg, Sub};

use super::JordanError;
use crate::exactalg::{MultiPoly, Scalar};

/// `a + b sqrt(2)` with Gaussian-rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Sqrt2 {
    pub a: Scalar,
    pub b: Scalar,
}

impl Sqrt2 {
    pub fn rational(a: Scalar) -> Self {
        Sqrt2 { a, b: Scalar::zero() }
    }

    pub fn root2() -> Self {
        Sqrt2 { a: Scalar::zero(), b: Scalar::one() }
    }

    pub fn as_rational(&self) -> Option<&Scalar> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Sqrt2 { a: &self.a * s, b: &self.b * s }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Sqrt2::rational(Scalar::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Sqrt2 {
    type Output = Sqrt2;
    fn add(self, o: &Sqrt2) -> Sqrt2 {
        Sqrt2 { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &Sqrt2 {
    type Output = Sqrt2;
    fn sub(self, o: &Sqrt2) -> Sqrt2 {
        Sqrt2 { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &Sqrt2 {
    type Output = Sqrt2;
    fn mul(self, o: &Sqrt2) -> Sqrt2 {
        let two = Scalar::from_int(2);
        Sqrt2 { a: &(&self.a * &o.a) + &(&two * &(&self.b * &o.b)), b: &(&self.a * &o.b) + &(&self.b * &o.a) }
    }
}

impl Neg for &Sqrt2 {
    type Output = Sqrt2;
    fn neg(self) -> Sqrt2 {
        Sqrt2 { a: -&self.a, b: -&self.b }
    }
}

pub fn eval_sqrt2(p: &MultiPoly, point: &[Sqrt2]) -> Result<Sqrt2, JordanError> {
    if point.len() != p.nvars() {
        return Err(JordanError::Dimension("evaluation point length".into()));
    }
    let mut total = Sqrt2::default();
    for (e, c) in p.terms() {
        let mut t = Sqrt2::rational(c.clone());
        for (x, &k) in point.iter().zip(e) {
            if k > 0 {
                t = &t * &x.pow(k);
            }
        }
        total = &total + &t;
    }
    Ok(total)
}

/// f-basis coordinates of an original-frame point.
pub fn point_original_to_f(x: &[Scalar]) -> Vec<Sqrt2> {
    let mut y = vec![Sqrt2::rational(&x[0] + &x[1]), Sqrt2::rational(&x[0] - &x[1])];
    y.extend(x[2..].iter().map(|v| Sqrt2 { a: Scalar::zero(), b: v.clone() }));
    y
}

/// Replaces `t^2 -> 2` in a polynomial whose last variable is `t`.
pub fn reduce_root2(p: &MultiPoly) -> Result<MultiPoly, JordanError> {
    let n = p.nvars() - 1;
    let mut out = MultiPoly::zero(n);
    for (e, c) in p.terms() {
        let k = e[n];
        if k % 2 == 1 {
            return Err(JordanError::IrrationalFrame);
        }
        let f = Scalar::from_int(2).pow(i64::from(k / 2)).expect("power");
        out.add_term(e[..n].to_vec(), c * &f);
    }
    Ok(out)
}

fn with_t(n: usize, lin: &[(usize, Scalar)], t_power: u32) -> MultiPoly {
    let mut p = MultiPoly::zero(n + 1);
    for (i, c) in lin {
        let mut e = vec![0; n + 1];
        e[*i] = 1;
        e[n] = t_power;
        p.add_term(e, c.clone());
    }
    p
}

/// `q_orig(s, x) = q_f(s + x_1, s - x_1, sqrt2 x_2, ..)`.
pub fn poly_f_to_original(q: &MultiPoly) -> Result<MultiPoly, JordanError> {
    let n = q.nvars();
    let one = Scalar::one();
    let mut images = vec![
        with_t(n, &[(0, one.clone()), (1, one.clone())], 0),
        with_t(n, &[(0, one.clone()), (1, -&one)], 0),
    ];
    images.extend((2..n).map(|i| with_t(n, &[(i, one.clone())], 1)));
    reduce_root2(&q.compose(&images)?)
}

/// `q_f(y) = q_orig((y_1 + y_2)/2, (y_1 - y_2)/2, y_3/sqrt2, ..)`.
pub fn poly_original_to_f(q: &MultiPoly) -> Result<MultiPoly, JordanError> {
    let n = q.nvars();
    let h = Scalar::ratio(1, 2);
    let mut images =
        vec![with_t(n, &[(0, h.clone()), (1, h.clone())], 0), with_t(n, &[(0, h.clone()), (1, -&h)], 0)];
    // 1/sqrt2 = t/2
    images.extend((2..n).map(|i| with_t(n, &[(i, h.clone())], 1)));
    reduce_root2(&q.compose(&images)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{AlgebraDescriptor, Frame};

    #[test]
    fn determinant_transports() {
        let o = AlgebraDescriptor::spin(5, Frame::Original).unwrap();
        let f = AlgebraDescriptor::spin(5, Frame::FBasis).unwrap();
        assert_eq!(poly_f_to_original(&f.det_poly()).unwrap(), o.det_poly());
        assert_eq!(poly_original_to_f(&o.det_poly()).unwrap(), f.det_poly());
    }

    #[test]
    fn odd_powers_rejected() {
        let q = MultiPoly::var(4, 2);
        assert_eq!(poly_f_to_original(&q), Err(JordanError::IrrationalFrame));
    }

    #[test]
    fn point_transport_preserves_det() {
        let o = AlgebraDescriptor::spin(4, Frame::Original).unwrap();
        let f = AlgebraDescriptor::spin(4, Frame::FBasis).unwrap();
        let x: Vec<Scalar> = [3, 1, -2, 5].iter().map(|&v| Scalar::from_int(v)).collect();
        let y = point_original_to_f(&x);
        let d = eval_sqrt2(&f.det_poly(), &y).unwrap();
        assert_eq!(d.as_rational(), Some(&o.det_coords(&x)));
    }
}
