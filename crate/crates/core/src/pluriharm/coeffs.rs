//! Coefficient vectors `a_0, .., a_p` of rank-2 pluri-harmonic symbols.
//!
//! Two conventions are kept side by side. `Paper` is the printed recurrence
//! `(j+1)(j+(n-1)/2) a_{j+1} + (p-j)(j+m+p-1) a_j = 0` with its closed form.
//! `Derived` comes from applying `delta_1` to the monomials directly:
//! `(j+1)(2j+n-2) a_{j+1} + (p-j)(j+m+p-1) a_j = 0`. The solver decides
//! which one describes pluri-harmonic symbols.

use serde::{Deserialize, Serialize};

use super::PluriError;
use crate::exactalg::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    Recurrence,
    Nullspace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    Paper,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffParams {
    pub n: usize,
    /// `N_1 = dim E_1` when known from a module split.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n1: Option<usize>,
    /// `m = N_1 / 2`.
    pub m: Scalar,
    pub p: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffVector {
    pub coeffs: Vec<Scalar>,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub convention: Option<Convention>,
    pub params: CoeffParams,
}

impl CoeffVector {
    pub fn p(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn binom(p: usize, j: usize) -> Scalar {
    (0..j).fold(Scalar::one(), |acc, i| {
        &(&acc * &Scalar::from_int((p - i) as i64)) / &Scalar::from_int(i as i64 + 1)
    })
}

fn recurrence(p: usize, ratio: impl Fn(usize) -> Scalar) -> Vec<Scalar> {
    let mut a = vec![Scalar::one()];
    for j in 0..p {
        let next = &a[j] * &ratio(j);
        a.push(next);
    }
    a
}

fn sint(v: usize) -> Scalar {
    Scalar::from_int(v as i64)
}

/// `a_{j+1} / a_j = -(p-j)(j+m+p-1) / ((j+1)(j+(n-1)/2))`.
pub fn paper_recurrence(n: usize, m: &Scalar, p: usize) -> Vec<Scalar> {
    let half_n1 = Scalar::ratio(n as i64 - 1, 2);
    recurrence(p, |j| {
        let num = &sint(p - j) * &(&(m + &sint(j + p)) - &Scalar::one());
        let den = &sint(j + 1) * &(&sint(j) + &half_n1);
        -(&num / &den)
    })
}

/// `a_j = (-1)^j C(p,j) (m+p-1)_j / ((n-1)/2)_j` with rising factorials.
pub fn paper_closed_form(n: usize, m: &Scalar, p: usize) -> Vec<Scalar> {
    let half_n1 = Scalar::ratio(n as i64 - 1, 2);
    let base = &(m + &sint(p)) - &Scalar::one();
    (0..=p)
        .map(|j| {
            let mut num = Scalar::one();
            let mut den = Scalar::one();
            for i in 0..j {
                num = &num * &(&base + &sint(i));
                den = &den * &(&half_n1 + &sint(i));
            }
            let sign = if j % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
            &(&sign * &binom(p, j)) * &(&num / &den)
        })
        .collect()
}

/// `a_{j+1} / a_j = -(p-j)(j+m+p-1) / ((j+1)(2j+n-2))`.
pub fn derived_recurrence(n: usize, m: &Scalar, p: usize) -> Vec<Scalar> {
    recurrence(p, |j| {
        let num = &sint(p - j) * &(&(m + &sint(j + p)) - &Scalar::one());
        let den = sint((j + 1) * (2 * j + n - 2));
        -(&num / &den)
    })
}

/// `a_j = (-1)^j C(p,j) prod_{i<j} (m+p-1+i) / prod_{i<j} (2i+n-2)`.
pub fn derived_closed_form(n: usize, m: &Scalar, p: usize) -> Vec<Scalar> {
    let base = &(m + &sint(p)) - &Scalar::one();
    (0..=p)
        .map(|j| {
            let mut num = Scalar::one();
            let mut den = Scalar::one();
            for i in 0..j {
                num = &num * &(&base + &sint(i));
                den = &den * &sint(2 * i + n - 2);
            }
            let sign = if j % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
            &(&sign * &binom(p, j)) * &(&num / &den)
        })
        .collect()
}

fn build(
    n: usize,
    m: &Scalar,
    p: usize,
    convention: Convention,
    rec: Vec<Scalar>,
    closed: Vec<Scalar>,
) -> Result<CoeffVector, PluriError> {
    if rec != closed {
        return Err(PluriError::InvariantViolation(format!(
            "{convention:?} recurrence and closed form disagree for (n,m,p) = ({n},{m},{p})"
        )));
    }
    Ok(CoeffVector {
        coeffs: rec,
        provenance: Provenance::Recurrence,
        convention: Some(convention),
        params: CoeffParams { n, n1: None, m: m.clone(), p },
    })
}

/// Coefficients from the printed recurrence, checked against the printed closed form.
pub fn paper_coeffs(n: usize, m: &Scalar, p: usize) -> Result<CoeffVector, PluriError> {
    build(n, m, p, Convention::Paper, paper_recurrence(n, m, p), paper_closed_form(n, m, p))
}

/// Coefficients from the recurrence obtained by direct differentiation.
pub fn derived_coeffs(n: usize, m: &Scalar, p: usize) -> Result<CoeffVector, PluriError> {
    build(n, m, p, Convention::Derived, derived_recurrence(n, m, p), derived_closed_form(n, m, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Scalar {
        Scalar::ratio(a, b)
    }

    #[test]
    fn printed_examples() {
        let two = Scalar::from_int(2);
        assert_eq!(paper_coeffs(4, &two, 1).unwrap().coeffs, vec![q(1, 1), q(-4, 3)]);
        assert_eq!(paper_coeffs(4, &two, 2).unwrap().coeffs, vec![q(1, 1), q(-4, 1), q(16, 5)]);
        assert_eq!(paper_coeffs(7, &two, 0).unwrap().coeffs, vec![Scalar::one()]);
    }

    #[test]
    fn derived_examples() {
        let two = Scalar::from_int(2);
        assert_eq!(derived_coeffs(4, &two, 1).unwrap().coeffs, vec![q(1, 1), q(-1, 1)]);
        assert_eq!(derived_coeffs(4, &two, 2).unwrap().coeffs, vec![q(1, 1), q(-3, 1), q(3, 2)]);
        // n = 5, m = 2, p = 1: a_1 = -(1)(2)/(3)
        assert_eq!(derived_coeffs(5, &two, 1).unwrap().coeffs, vec![q(1, 1), q(-2, 3)]);
    }

    #[test]
    fn closed_forms_agree_on_grid() {
        for n in 4..=8 {
            for m in 1..=4 {
                for p in 0..=4 {
                    let m = Scalar::from_int(m);
                    assert!(paper_coeffs(n, &m, p).is_ok());
                    assert!(derived_coeffs(n, &m, p).is_ok());
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let c = paper_coeffs(4, &Scalar::from_int(2), 1).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"coeffs":["1","-4/3"],"provenance":"recurrence","convention":"paper","params":{"n":4,"m":"2","p":1}}"#
        );
    }
}
