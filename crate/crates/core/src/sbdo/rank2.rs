//! The rank-2 operator `sum_j a_j y_1^{p-j} y_2^{p-j} |y'|^{2j}` and its
//! display in the original frame.

use super::{apply_operator, symbol_to_operator, DiffOperator, ExpFunction, OpParams, SbdoError};
use crate::exactalg::{MultiPoly, Scalar};
use crate::jordan::frame::{eval_sqrt2, point_original_to_f, poly_f_to_original};
use crate::jordan::{AlgebraDescriptor, Frame};
use crate::pluriharm::{rank2_symbol, CoeffVector, PluriError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Operator {
    /// Identity Gram, symbol in `y_1, .., y_n`.
    pub f_basis: DiffOperator,
    /// Gram `2 Id`, symbol in `x_0, .., x_{n-1}`.
    pub original: DiffOperator,
    /// `b_j` with `D = sum_j b_j (d_0^2 - d_1^2)^{p-j} Delta_{n-2}^j` in the
    /// original coordinates.
    pub display: Vec<Scalar>,
}

fn square_sum(n: usize, vars: std::ops::Range<usize>, sign: &[i64]) -> MultiPoly {
    let mut p = MultiPoly::zero(n);
    for (k, i) in vars.enumerate() {
        let mut e = vec![0; n];
        e[i] = 2;
        p.add_term(e, Scalar::from_int(sign.get(k).copied().unwrap_or(1)));
    }
    p
}

/// Reads `b_j` off the coefficient of `d_0^{2(p-j)} d_2^{2j}` and checks that
/// `sum_j b_j (u_0^2 - u_1^2)^{p-j} |u'|^{2j}` reproduces the operator.
fn display_coeffs(op: &DiffOperator, n: usize, p: usize) -> Result<Vec<Scalar>, SbdoError> {
    let dp = op.derivative_poly();
    let wave = square_sum(n, 0..2, &[1, -1]);
    let lap = square_sum(n, 2..n, &[]);
    let mut b = Vec::with_capacity(p + 1);
    let mut rebuilt = MultiPoly::zero(n);
    for j in 0..=p {
        let mut e = vec![0; n];
        e[0] = 2 * (p - j) as u32;
        e[2] = 2 * j as u32;
        let c = dp.coeff(&e);
        rebuilt
            .absorb(&(&wave.pow((p - j) as u32) * &lap.pow(j as u32)) * &MultiPoly::constant(n, c.clone()));
        b.push(c);
    }
    if &rebuilt != dp {
        return Err(PluriError::InvariantViolation(
            "original-frame operator is not of the form sum_j b_j (d0^2 - d1^2)^{p-j} Delta^j".into(),
        )
        .into());
    }
    Ok(b)
}

pub fn rank2_operator(
    n: usize,
    m: &Scalar,
    p: usize,
    coeffs: &CoeffVector,
) -> Result<Rank2Operator, SbdoError> {
    if coeffs.coeffs.len() != p + 1 {
        return Err(PluriError::InvariantViolation(format!(
            "{} coefficients for p = {p}",
            coeffs.coeffs.len()
        ))
        .into());
    }
    let params = OpParams { n, m: m.clone(), p };
    let prov = Some(coeffs.provenance);
    let q_f = rank2_symbol(n, &coeffs.coeffs)?;
    let f_alg = AlgebraDescriptor::spin(n, Frame::FBasis)?;
    let o_alg = AlgebraDescriptor::spin(n, Frame::Original)?;
    let f_basis = symbol_to_operator(&q_f, &f_alg.gram(), Frame::FBasis)?.with_meta(params.clone(), prov);
    let q_o = poly_f_to_original(&q_f)?;
    let original = symbol_to_operator(&q_o, &o_alg.gram(), Frame::Original)?.with_meta(params, prov);
    let display = display_coeffs(&original, n, p)?;
    Ok(Rank2Operator { f_basis, original, display })
}

/// For each original-frame `v`: the eigenvalue of the original operator on
/// `e^{(z,v)}` equals the f-basis symbol at the transported point.
pub fn frame_consistency(op: &Rank2Operator, vs: &[Vec<Scalar>]) -> Result<bool, SbdoError> {
    let gram = op.original.gram.clone();
    for v in vs {
        let f = ExpFunction::exponential(v.clone(), gram.clone(), Frame::Original);
        let applied = apply_operator(&op.original, &f)?;
        let lhs = applied.prefactor.eval(&vec![Scalar::zero(); v.len()])?;
        let rhs = eval_sqrt2(&op.f_basis.symbol, &point_original_to_f(v))?;
        if rhs.as_rational() != Some(&lhs) || applied != f.scale(&lhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pluriharm::{delta_apply, paper_coeffs, Delta};
    use crate::sample;

    #[test]
    fn trivial_operator() {
        let c = paper_coeffs(5, &Scalar::from_int(2), 0).unwrap();
        let op = rank2_operator(5, &Scalar::from_int(2), 0, &c).unwrap();
        assert_eq!(op.f_basis.symbol, MultiPoly::one(5));
        assert_eq!(op.display, vec![Scalar::one()]);
    }

    #[test]
    fn assembled_symbol_and_display() {
        let two = Scalar::from_int(2);
        let c = paper_coeffs(4, &two, 1).unwrap();
        let op = rank2_operator(4, &two, 1, &c).unwrap();
        assert_eq!(op.f_basis.symbol.len(), 3);
        let y = |i| MultiPoly::var(4, i);
        let expected = &(&y(0) * &y(1)) - &crate::pluriharm::y_prime_norm(4).scale(&Scalar::ratio(4, 3));
        assert_eq!(op.f_basis.symbol, expected);
        // b_0 = 1/4, b_1 = a_1 * 2 / 4
        assert_eq!(op.display, vec![Scalar::ratio(1, 4), Scalar::ratio(-2, 3)]);
    }

    #[test]
    fn p2_symbol_is_delta_harmonic_for_derived_coeffs() {
        let two = Scalar::from_int(2);
        let c = crate::pluriharm::derived_coeffs(4, &two, 2).unwrap();
        let op = rank2_operator(4, &two, 2, &c).unwrap();
        assert_eq!(op.f_basis.symbol.total_degree(), Some(4));
        for which in [Delta::One, Delta::Two] {
            assert!(delta_apply(which, 4, 4, &op.f_basis.symbol).unwrap().is_zero());
        }
        let p = paper_coeffs(4, &two, 2).unwrap();
        let op = rank2_operator(4, &two, 2, &p).unwrap();
        assert!(!delta_apply(Delta::One, 4, 4, &op.f_basis.symbol).unwrap().is_zero());
    }

    #[test]
    fn frames_agree() {
        let two = Scalar::from_int(2);
        let c = crate::pluriharm::derived_coeffs(6, &two, 2).unwrap();
        let op = rank2_operator(6, &two, 2, &c).unwrap();
        let mut rng = sample::rng(3);
        let vs: Vec<_> = (0..10).map(|_| sample::rational_vec(&mut rng, 6, 5, 4)).collect();
        assert!(frame_consistency(&op, &vs).unwrap());
    }
}
