//! Exact Gaussian-Fourier integrals of polynomials.
//!
//! For `A` positive definite and `B = A^{-1}`,
//! `int e^{i<xi,eta>} e^{-xi^t A xi / 2} p(xi) dxi
//!   = (2 pi)^{N/2} det(A)^{-1/2} value(eta) e^{-eta^t B eta / 2}`,
//! where `value = p(D) 1` with `D_k f = -i (d_k f - (B eta)_k f)`.

use std::collections::BTreeMap;

use super::VerifyError;
use crate::exactalg::{MultiPoly, RatMatrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianIntegral {
    pub a: RatMatrix,
    pub a_inv: RatMatrix,
    pub p: MultiPoly,
    /// Polynomial part in `eta`.
    pub value: MultiPoly,
}

struct Moments<'a> {
    lin: Vec<MultiPoly>,
    minus_i: Scalar,
    b: &'a RatMatrix,
}

impl Moments<'_> {
    fn step(&self, f: &MultiPoly, k: usize) -> MultiPoly {
        let d = f.partial(k, 1).expect("variable in range");
        (&d - &(&self.lin[k] * f)).scale(&self.minus_i)
    }

    /// `sum_e D_k^e g_e` by Horner's rule, with `g_e = r_e(D_{k+1}, ..) 1`.
    fn horner(&self, p: &MultiPoly, k: usize) -> MultiPoly {
        let n = self.lin.len();
        if k == n || p.is_zero() {
            let c = p.coeff(&vec![0; p.nvars()]);
            return MultiPoly::constant(n, c);
        }
        let mut groups: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in p.terms() {
            let mut rest = e.clone();
            rest[k] = 0;
            groups.entry(e[k]).or_insert_with(|| MultiPoly::zero(p.nvars())).add_term(rest, c.clone());
        }
        let top = *groups.keys().next_back().expect("nonempty");
        let mut acc = MultiPoly::zero(n);
        for e in (0..=top).rev() {
            if e < top {
                acc = self.step(&acc, k);
            }
            if let Some(g) = groups.get(&e) {
                acc.absorb(self.horner(g, k + 1));
            }
        }
        acc
    }

    fn is_diagonal(&self) -> bool {
        let n = self.b.rows();
        (0..n).all(|i| (0..n).all(|j| i == j || self.b.get(i, j).is_zero()))
    }

    /// With `B` diagonal the `D_k` act on separate variables, so
    /// `D^alpha 1 = prod_k (D_k^{alpha_k} 1)`.
    fn diagonal(&self, p: &MultiPoly) -> MultiPoly {
        let n = self.lin.len();
        let mut cache: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one(n)]; n];
        let mut out = MultiPoly::zero(n);
        for (e, c) in p.terms() {
            let mut t = MultiPoly::constant(n, c.clone());
            for (k, &a) in e.iter().enumerate() {
                while cache[k].len() <= a as usize {
                    let next = self.step(cache[k].last().expect("seeded"), k);
                    cache[k].push(next);
                }
                if a > 0 {
                    t = &t * &cache[k][a as usize];
                }
            }
            out.absorb(t);
        }
        out
    }
}

pub fn gaussian_fourier(a: &RatMatrix, p: &MultiPoly) -> Result<GaussianIntegral, VerifyError> {
    if !a.is_square() || a.rows() != p.nvars() {
        return Err(VerifyError::Dimension(format!(
            "{}x{} matrix for a polynomial in {} variables",
            a.rows(),
            a.cols(),
            p.nvars()
        )));
    }
    if !a.is_symmetric() || !a.is_positive_definite() {
        return Err(VerifyError::NotPositiveDefinite);
    }
    let b = a.inverse().ok_or(VerifyError::NotPositiveDefinite)?;
    let n = a.rows();
    let lin = (0..n).map(|k| MultiPoly::linear(b.row(k))).collect();
    let m = Moments { lin, minus_i: -&Scalar::i(), b: &b };
    let value = if m.is_diagonal() { m.diagonal(p) } else { m.horner(p, 0) };
    Ok(GaussianIntegral { a: a.clone(), a_inv: b, p: p.clone(), value })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `(exp(grad^t B grad / 2) p)(i B eta)`.
    fn wick(a: &RatMatrix, p: &MultiPoly) -> MultiPoly {
        let b = a.inverse().unwrap();
        let n = a.rows();
        let half = Scalar::ratio(1, 2);
        let op = |f: &MultiPoly| {
            let mut out = MultiPoly::zero(n);
            for i in 0..n {
                for j in 0..n {
                    if !b.get(i, j).is_zero() {
                        let d = f.partial(i, 1).unwrap().partial(j, 1).unwrap();
                        out.absorb(d.scale(&(&half * b.get(i, j))));
                    }
                }
            }
            out
        };
        let mut term = p.clone();
        let mut total = p.clone();
        let mut k = 1i64;
        while !term.is_zero() {
            term = op(&term).scale(&Scalar::ratio(1, k));
            total.absorb(term.clone());
            k += 1;
        }
        total.subst_linear(&b.scale(&Scalar::i())).unwrap()
    }

    #[test]
    fn one_dimensional_examples() {
        let a = RatMatrix::identity(1);
        let xi = MultiPoly::var(1, 0);
        assert_eq!(gaussian_fourier(&a, &MultiPoly::one(1)).unwrap().value, MultiPoly::one(1));
        assert_eq!(gaussian_fourier(&a, &xi).unwrap().value, xi.scale(&Scalar::i()));
        let mut expected = MultiPoly::one(1);
        expected.add_term(vec![2], Scalar::from_int(-1));
        assert_eq!(gaussian_fourier(&a, &(&xi * &xi)).unwrap().value, expected);
    }

    #[test]
    fn matches_wick_formula() {
        let a = RatMatrix::from_rows(vec![
            vec![Scalar::from_int(2), Scalar::ratio(1, 2)],
            vec![Scalar::ratio(1, 2), Scalar::from_int(1)],
        ]);
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = &(&(&x * &x) * &y) + &(&(&y * &y) * &(&y * &x)).scale(&Scalar::ratio(3, 2));
        assert_eq!(gaussian_fourier(&a, &p).unwrap().value, wick(&a, &p));
        let d = RatMatrix::diagonal(&[Scalar::from_int(3), Scalar::ratio(1, 5)]);
        assert_eq!(gaussian_fourier(&d, &p).unwrap().value, wick(&d, &p));
    }

    #[test]
    fn rejects_indefinite() {
        let a = RatMatrix::diagonal(&[Scalar::one(), Scalar::from_int(-1)]);
        assert_eq!(gaussian_fourier(&a, &MultiPoly::one(2)).unwrap_err(), VerifyError::NotPositiveDefinite);
    }
}
