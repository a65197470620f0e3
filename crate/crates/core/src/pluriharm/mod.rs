//! c-homogeneous symbols, the rank-2 operators `delta_1`, `delta_2`, the
//! coefficient recurrences and the exact pluri-harmonicity solver.

mod chom;
mod coeffs;
mod solve;

pub use chom::{chom_check, chom_check_with, structure_scaling, y_prime_rotation};
pub use coeffs::{
    derived_closed_form, derived_coeffs, derived_recurrence, paper_closed_form, paper_coeffs,
    paper_recurrence, CoeffParams, CoeffVector, Convention, Provenance,
};
pub use solve::{
    block_laplacians, is_pluriharmonic, pluriharmonic_defect, pluriharmonic_solve, pullback_to_module,
    RowEchelon,
};

use serde::{Deserialize, Serialize};

use crate::exactalg::{ExactError, MultiPoly, Scalar};
use crate::jordan::{AlgebraDescriptor, Frame, JordanError};
use crate::jrep::RepError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PluriError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Jordan(#[from] JordanError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// A candidate space of symbols: `q = sum_j a_j basis[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolSpace {
    pub algebra: AlgebraDescriptor,
    pub degrees: Vec<usize>,
    pub basis: Vec<MultiPoly>,
}

impl SymbolSpace {
    pub fn assemble(&self, coeffs: &[Scalar]) -> Result<MultiPoly, PluriError> {
        if coeffs.len() != self.basis.len() {
            return Err(PluriError::InvariantViolation(format!(
                "{} coefficients for a space of dimension {}",
                coeffs.len(),
                self.basis.len()
            )));
        }
        let mut q = MultiPoly::zero(self.algebra.dim());
        for (a, b) in coeffs.iter().zip(&self.basis) {
            q.absorb(b.scale(a));
        }
        Ok(q)
    }
}

/// `|y'|^2 = y_3^2 + .. + y_n^2` in `n` variables.
pub fn y_prime_norm(n: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(n);
    for i in 2..n {
        let mut e = vec![0; n];
        e[i] = 2;
        p.add_term(e, Scalar::one());
    }
    p
}

/// `{ y_1^{p1-j} y_2^{p2-j} |y'|^{2j} : 0 <= j <= min(p1, p2) }` in the f-basis.
pub fn rank2_symbol_basis(n: usize, p1: usize, p2: usize) -> Result<SymbolSpace, PluriError> {
    let algebra = AlgebraDescriptor::spin(n, Frame::FBasis)?;
    let r = y_prime_norm(n);
    let basis = (0..=p1.min(p2))
        .map(|j| {
            let mut e = vec![0; n];
            e[0] = (p1 - j) as u32;
            e[1] = (p2 - j) as u32;
            &MultiPoly::monomial(e, Scalar::one()) * &r.pow(j as u32)
        })
        .collect();
    Ok(SymbolSpace { algebra, degrees: vec![p1, p2], basis })
}

/// The rank-2 symbol `sum_j a_j y_1^{p-j} y_2^{p-j} |y'|^{2j}`.
pub fn rank2_symbol(n: usize, coeffs: &[Scalar]) -> Result<MultiPoly, PluriError> {
    let p = coeffs
        .len()
        .checked_sub(1)
        .ok_or_else(|| PluriError::InvariantViolation("empty coefficient vector".into()))?;
    rank2_symbol_basis(n, p, p)?.assemble(coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Delta {
    #[serde(rename = "delta1")]
    One,
    #[serde(rename = "delta2")]
    Two,
}

/// `delta_1 = 2 N_1 d_1 + 4 y_1 d_1^2 + 4 sum_j y_j d_1 d_j + 2 y_2 sum_j d_j^2`
/// (sums over `j >= 3`), and `delta_2` with the indices 1 and 2 exchanged,
/// applied by direct differentiation. `n_block` is `N_1` or `N_2`.
pub fn delta_apply(which: Delta, n: usize, n_block: usize, q: &MultiPoly) -> Result<MultiPoly, PluriError> {
    if q.nvars() != n {
        return Err(ExactError::Arity(format!(
            "symbol in {} variables for a spin factor of dimension {n}",
            q.nvars()
        ))
        .into());
    }
    let (a, b) = match which {
        Delta::One => (0, 1),
        Delta::Two => (1, 0),
    };
    let ya = MultiPoly::var(n, a);
    let yb = MultiPoly::var(n, b);
    let da = q.partial(a, 1)?;
    let mut out = da.scale(&Scalar::from_int(2 * n_block as i64));
    out.absorb((&ya * &q.partial(a, 2)?).scale(&Scalar::from_int(4)));
    for j in 2..n {
        let yj = MultiPoly::var(n, j);
        out.absorb((&yj * &da.partial(j, 1)?).scale(&Scalar::from_int(4)));
    }
    let lap = q.laplacian(&(2..n).collect::<Vec<_>>())?;
    out.absorb((&yb * &lap).scale(&Scalar::from_int(2)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn basis_examples() {
        let s = rank2_symbol_basis(4, 1, 1).unwrap();
        assert_eq!(s.basis, vec![&y(4, 0) * &y(4, 1), y_prime_norm(4)]);
        let s = rank2_symbol_basis(4, 2, 1).unwrap();
        assert_eq!(s.basis, vec![&(&y(4, 0) * &y(4, 0)) * &y(4, 1), &y(4, 0) * &y_prime_norm(4)]);
        assert_eq!(rank2_symbol_basis(4, 0, 0).unwrap().basis, vec![MultiPoly::one(4)]);
    }

    #[test]
    fn delta_examples() {
        let n1 = 4;
        let q = &y(4, 0) * &y(4, 1);
        assert_eq!(
            delta_apply(Delta::One, 4, n1, &q).unwrap(),
            y(4, 1).scale(&Scalar::from_int(2 * n1 as i64))
        );
        assert_eq!(
            delta_apply(Delta::One, 4, n1, &y(4, 0)).unwrap(),
            MultiPoly::constant(4, Scalar::from_int(2 * n1 as i64))
        );
        for n in 4..8 {
            assert_eq!(
                delta_apply(Delta::One, n, n1, &y_prime_norm(n)).unwrap(),
                y(n, 1).scale(&Scalar::from_int(4 * (n as i64 - 2)))
            );
        }
        assert!(delta_apply(Delta::One, 5, 4, &q).is_err());
    }

    #[test]
    fn delta_on_monomials_matches_derived_formula() {
        // delta_1(y1^a y2^b R^k) = a(2 N1 + 4(a-1) + 8k) y1^{a-1} y2^b R^k
        //                        + 4k(2k+n-4) y1^a y2^{b+1} R^{k-1}
        for n in 4..7usize {
            for (a, b, k) in [(2u32, 1u32, 1u32), (1, 3, 2), (3, 0, 2)] {
                let n1 = 6i64;
                let r = y_prime_norm(n);
                let mono = |a: u32, b: u32, k: u32| {
                    let mut e = vec![0; n];
                    e[0] = a;
                    e[1] = b;
                    &MultiPoly::monomial(e, Scalar::one()) * &r.pow(k)
                };
                let lhs = delta_apply(Delta::One, n, n1 as usize, &mono(a, b, k)).unwrap();
                let (ai, ki) = (a as i64, k as i64);
                let c1 = Scalar::from_int(ai * (2 * n1 + 4 * (ai - 1) + 8 * ki));
                let c2 = Scalar::from_int(4 * ki * (2 * ki + n as i64 - 4));
                let mut rhs = MultiPoly::zero(n);
                if a > 0 {
                    rhs.absorb(mono(a - 1, b, k).scale(&c1));
                }
                if k > 0 {
                    rhs.absorb(mono(a, b + 1, k - 1).scale(&c2));
                }
                assert_eq!(lhs, rhs, "n={n} a={a} b={b} k={k}");
            }
        }
    }
}
