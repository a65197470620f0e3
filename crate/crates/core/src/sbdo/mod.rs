//! Constant-coefficient holomorphic differential operators `D_q` built from
//! symbols, acting on the class `P(z) e^{(z, v) + c}`.

mod emit;
mod rank2;

pub use emit::{coord_names, emit_operator, parse_operator, Format, OperatorDocument};
pub use rank2::{frame_consistency, rank2_operator, Rank2Operator};

use serde::{Deserialize, Serialize};

use crate::exactalg::{ExactError, MultiPoly, RatMatrix, Scalar};
use crate::jordan::{Frame, JordanError};
use crate::pluriharm::{PluriError, Provenance};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SbdoError {
    #[error("pairing error: {0}")]
    PairingError(String),
    #[error("invalid operator document: {0}")]
    Document(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Jordan(#[from] JordanError),
    #[error(transparent)]
    Pluri(#[from] PluriError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpParams {
    pub n: usize,
    pub m: Scalar,
    pub p: usize,
}

/// `D_q = q(G^{-1} grad_z)`, so that `D_q e^{(z,v)} = q(v) e^{(z,v)}` with
/// `(z, v) = z^t G v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    pub symbol: MultiPoly,
    pub gram: RatMatrix,
    pub frame: Frame,
    pub params: Option<OpParams>,
    pub coeff_provenance: Option<Provenance>,
    /// `q(G^{-1} u)`: the polynomial in `d/dz` actually applied.
    derivative_poly: MultiPoly,
}

pub fn symbol_to_operator(q: &MultiPoly, gram: &RatMatrix, frame: Frame) -> Result<DiffOperator, SbdoError> {
    if !gram.is_square() || gram.rows() != q.nvars() {
        return Err(SbdoError::PairingError(format!(
            "{}x{} Gram for a symbol in {} variables",
            gram.rows(),
            gram.cols(),
            q.nvars()
        )));
    }
    if !gram.is_symmetric() {
        return Err(SbdoError::PairingError("Gram matrix is not symmetric".into()));
    }
    let inv = gram.inverse().ok_or_else(|| SbdoError::PairingError("Gram matrix is singular".into()))?;
    if !gram.is_positive_definite() {
        return Err(SbdoError::PairingError("Gram matrix is not positive definite".into()));
    }
    Ok(DiffOperator {
        symbol: q.clone(),
        gram: gram.clone(),
        frame,
        params: None,
        coeff_provenance: None,
        derivative_poly: q.subst_linear(&inv)?,
    })
}

impl DiffOperator {
    pub fn with_meta(mut self, params: OpParams, provenance: Option<Provenance>) -> Self {
        self.params = Some(params);
        self.coeff_provenance = provenance;
        self
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// Coefficients of the operator as a polynomial in `d/dz_1, .., d/dz_n`.
    pub fn derivative_poly(&self) -> &MultiPoly {
        &self.derivative_poly
    }

    pub fn eigenvalue(&self, v: &[Scalar]) -> Result<Scalar, SbdoError> {
        Ok(self.symbol.eval(v)?)
    }
}

/// `z -> prefactor(z) exp((z, v) + exp_const)`; `exp_const` stays symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpFunction {
    pub prefactor: MultiPoly,
    pub direction: Vec<Scalar>,
    pub exp_const: Scalar,
    pub gram: RatMatrix,
    pub frame: Frame,
}

fn pair(gram: &RatMatrix, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(gram.mul_vec(b)).map(|(x, y)| x * &y).sum()
}

impl ExpFunction {
    /// `f_v(z) = e^{(z, v)}`.
    pub fn exponential(v: Vec<Scalar>, gram: RatMatrix, frame: Frame) -> Self {
        ExpFunction {
            prefactor: MultiPoly::one(v.len()),
            direction: v,
            exp_const: Scalar::zero(),
            gram,
            frame,
        }
    }

    pub fn with_prefactor(mut self, p: MultiPoly) -> Self {
        self.prefactor = p;
        self
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        ExpFunction { prefactor: self.prefactor.scale(s), ..self.clone() }
    }

    /// `z -> f(z - u)`.
    pub fn translate(&self, u: &[Scalar]) -> Result<Self, SbdoError> {
        Ok(ExpFunction {
            prefactor: self.prefactor.shift(u)?,
            exp_const: &self.exp_const - &pair(&self.gram, u, &self.direction),
            ..self.clone()
        })
    }

    /// `z -> f(L z)`; the new direction is the adjoint `G^{-1} L^t G v`.
    pub fn compose_linear(&self, l: &RatMatrix) -> Result<Self, SbdoError> {
        let ginv =
            self.gram.inverse().ok_or_else(|| SbdoError::PairingError("Gram matrix is singular".into()))?;
        let adj = &(&ginv * &l.transpose()) * &self.gram;
        Ok(ExpFunction {
            prefactor: self.prefactor.subst_linear(l)?,
            direction: adj.mul_vec(&self.direction),
            ..self.clone()
        })
    }

    /// Pulls back along `u -> sum_k u_k b_k`, returning the prefactor in `u`
    /// and the linear form `(b_k, v)` of the exponent.
    pub fn restrict(&self, basis: &[Vec<Scalar>]) -> Result<Restricted, SbdoError> {
        let images: Vec<MultiPoly> = (0..self.direction.len())
            .map(|i| {
                let row: Vec<Scalar> = basis.iter().map(|b| b[i].clone()).collect();
                MultiPoly::linear(&row)
            })
            .collect();
        Ok(Restricted {
            prefactor: self.prefactor.compose(&images)?,
            linear: basis.iter().map(|b| pair(&self.gram, b, &self.direction)).collect(),
            exp_const: self.exp_const.clone(),
        })
    }
}

/// An [`ExpFunction`] restricted to a subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restricted {
    pub prefactor: MultiPoly,
    pub linear: Vec<Scalar>,
    pub exp_const: Scalar,
}

/// `D (P e^{(z,v)+c}) = [q~(Gv + d/dz) P] e^{(z,v)+c}` with `q~(u) = q(G^{-1} u)`.
pub fn apply_operator(d: &DiffOperator, f: &ExpFunction) -> Result<ExpFunction, SbdoError> {
    if d.frame != f.frame || d.gram != f.gram {
        return Err(SbdoError::PairingError(format!(
            "operator in frame {} applied to a function in frame {}",
            d.frame.as_str(),
            f.frame.as_str()
        )));
    }
    let n = d.dim();
    if f.direction.len() != n || f.prefactor.nvars() != n {
        return Err(SbdoError::PairingError("function and operator dimensions differ".into()));
    }
    let w = d.gram.mul_vec(&f.direction);
    let neg_w: Vec<Scalar> = w.iter().map(|x| -x).collect();
    let taylor = d.derivative_poly.shift(&neg_w)?;
    let max_deg = f.prefactor.terms().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0);
    let mut out = MultiPoly::zero(n);
    for (e, c) in taylor.terms() {
        if e.iter().sum::<u32>() > max_deg {
            continue;
        }
        let mut t = f.prefactor.clone();
        for (i, &k) in e.iter().enumerate() {
            if k > 0 && !t.is_zero() {
                t = t.partial(i, k)?;
            }
        }
        out.absorb(t.scale(c));
    }
    Ok(ExpFunction { prefactor: out, ..f.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn symbol_examples() {
        let y1 = MultiPoly::var(2, 0);
        let d = symbol_to_operator(&y1, &RatMatrix::identity(2), Frame::FBasis).unwrap();
        assert_eq!(d.derivative_poly(), &y1);
        let d2 =
            symbol_to_operator(&y1, &RatMatrix::identity(2).scale(&Scalar::from_int(2)), Frame::Original)
                .unwrap();
        assert_eq!(d2.derivative_poly(), &y1.scale(&Scalar::ratio(1, 2)));
        assert!(matches!(
            symbol_to_operator(&y1, &RatMatrix::zeros(2, 2), Frame::FBasis),
            Err(SbdoError::PairingError(_))
        ));
    }

    #[test]
    fn wave_operator() {
        let alg = crate::jordan::AlgebraDescriptor::spin(4, Frame::Original).unwrap();
        let det = alg.det_poly();
        let d = symbol_to_operator(&det, &alg.gram(), Frame::Original).unwrap();
        let mut expected = MultiPoly::zero(4);
        for (i, s) in [(0usize, 1i64), (1, -1), (2, -1), (3, -1)] {
            let mut e = vec![0; 4];
            e[i] = 2;
            expected.add_term(e, Scalar::ratio(s, 4));
        }
        assert_eq!(d.derivative_poly(), &expected);
    }

    #[test]
    fn apply_examples() {
        let g = RatMatrix::identity(2);
        let d = symbol_to_operator(&MultiPoly::var(2, 0), &g, Frame::FBasis).unwrap();
        let v = vec![Scalar::ratio(3, 2), Scalar::from_int(-1)];
        let f = ExpFunction::exponential(v.clone(), g.clone(), Frame::FBasis);
        assert_eq!(apply_operator(&d, &f).unwrap(), f.scale(&v[0]));
        let zf = f.clone().with_prefactor(MultiPoly::var(2, 0));
        let mut expected = MultiPoly::one(2);
        expected.add_term(vec![1, 0], v[0].clone());
        assert_eq!(apply_operator(&d, &zf).unwrap().prefactor, expected);
        let other = ExpFunction::exponential(v, g.scale(&Scalar::from_int(2)), Frame::Original);
        assert!(matches!(apply_operator(&d, &other), Err(SbdoError::PairingError(_))));
    }

    #[test]
    fn translation_and_linear_maps() {
        let g = RatMatrix::identity(2);
        let f = ExpFunction::exponential(ints(&[1, 2]), g.clone(), Frame::FBasis)
            .with_prefactor(MultiPoly::var(2, 1));
        let t = f.translate(&ints(&[1, 1])).unwrap();
        assert_eq!(t.exp_const, Scalar::from_int(-3));
        assert_eq!(t.prefactor.eval(&ints(&[0, 1])).unwrap(), Scalar::zero());
        let swap = RatMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(f.compose_linear(&swap).unwrap().direction, ints(&[2, 1]));
        let r = f.restrict(&[ints(&[1, 0])]).unwrap();
        assert!(r.prefactor.is_zero());
        assert_eq!(r.linear, ints(&[1]));
    }
}
