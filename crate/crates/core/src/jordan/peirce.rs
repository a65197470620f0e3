//! Idempotents, Peirce decompositions, complete systems of orthogonal
//! idempotents and the cone test.

use serde::{Deserialize, Serialize};

use super::algebra::{jmul, lmap, symm_to_matrix, AlgebraDescriptor, Frame, JordanElement};
use super::JordanError;
use crate::exactalg::{RatMatrix, Scalar};

pub fn is_idempotent(c: &JordanElement) -> bool {
    c.square() == *c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeirceSplit {
    /// Projectors onto `J(c,1)`, `J(c,1/2)`, `J(c,0)` in that order.
    pub projectors: [RatMatrix; 3],
    pub bases: [Vec<Vec<Scalar>>; 3],
    algebra: AlgebraDescriptor,
}

impl PeirceSplit {
    /// Components of `x` in the three Peirce spaces.
    pub fn parts(&self, x: &JordanElement) -> Result<[JordanElement; 3], JordanError> {
        if x.algebra != self.algebra {
            return Err(JordanError::AlgebraMismatch);
        }
        let part = |k: usize| JordanElement {
            algebra: self.algebra.clone(),
            coords: self.projectors[k].mul_vec(&x.coords),
        };
        Ok([part(0), part(1), part(2)])
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.bases[0].len(), self.bases[1].len(), self.bases[2].len()]
    }
}

/// Peirce projectors as polynomials in `L(c)`.
pub fn peirce_split(c: &JordanElement) -> Result<PeirceSplit, JordanError> {
    if !is_idempotent(c) {
        return Err(JordanError::NotIdempotent(None));
    }
    let l = lmap(c);
    let l2 = &l * &l;
    let id = RatMatrix::identity(l.rows());
    let two = Scalar::from_int(2);
    let four = Scalar::from_int(4);
    let p1 = &l2.scale(&two) - &l;
    let phalf = &l.scale(&four) - &l2.scale(&four);
    let p0 = &(&l2.scale(&two) - &l.scale(&Scalar::from_int(3))) + &id;
    let bases = [p1.column_basis(), phalf.column_basis(), p0.column_basis()];
    Ok(PeirceSplit { projectors: [p1, phalf, p0], bases, algebra: c.algebra.clone() })
}

/// A validated complete system of orthogonal idempotents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Csoi {
    pub algebra: AlgebraDescriptor,
    pub idempotents: Vec<JordanElement>,
    pub ranks: Vec<usize>,
}

impl Csoi {
    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    /// Basis of `J(c) = J(c_1,1) + ... + J(c_k,1)`, grouped by block.
    pub fn subalgebra_bases(&self) -> Result<Vec<Vec<Vec<Scalar>>>, JordanError> {
        self.idempotents.iter().map(|c| Ok(peirce_split(c)?.bases[0].clone())).collect()
    }

    /// Projection of `x` onto `J(c)`, blockwise.
    pub fn components(&self, x: &JordanElement) -> Result<Vec<JordanElement>, JordanError> {
        self.idempotents.iter().map(|c| Ok(peirce_split(c)?.parts(x)?[0].clone())).collect()
    }

    /// `sum_j a_j c_j`.
    pub fn combination(&self, a: &[Scalar]) -> JordanElement {
        let mut acc = self.algebra.zero();
        for (c, s) in self.idempotents.iter().zip(a) {
            acc = acc.add(&c.scale(s)).expect("same algebra");
        }
        acc
    }
}

/// The CSOI `(c_1, c_2)` of a spin factor used throughout the rank-2 pipeline.
pub fn rank2_csoi(n: usize, frame: Frame) -> Result<Csoi, JordanError> {
    let a = AlgebraDescriptor::spin(n, frame)?;
    let (c1, c2) = match frame {
        Frame::Original => {
            let h = Scalar::ratio(1, 2);
            let mut c1 = vec![Scalar::zero(); n];
            let mut c2 = vec![Scalar::zero(); n];
            c1[0] = h.clone();
            c1[1] = h.clone();
            c2[0] = h.clone();
            c2[1] = -h;
            (c1, c2)
        }
        Frame::FBasis => {
            let mut c1 = vec![Scalar::zero(); n];
            let mut c2 = vec![Scalar::zero(); n];
            c1[0] = Scalar::one();
            c2[1] = Scalar::one();
            (c1, c2)
        }
    };
    validate_csoi(&[a.element(c1)?, a.element(c2)?])
}

/// Diagonal idempotents `E_11, .., E_rr` of Symm(r).
pub fn diagonal_csoi(r: usize) -> Result<Csoi, JordanError> {
    let a = AlgebraDescriptor::symm(r)?;
    let cands: Vec<JordanElement> = (0..r)
        .map(|i| {
            let k = super::algebra::symm_pos(r, i, i);
            a.basis(k)
        })
        .collect();
    validate_csoi(&cands)
}

/// Rank of an idempotent: its trace, which is rational.
pub fn idempotent_rank(c: &JordanElement) -> usize {
    use num_traits::ToPrimitive;
    let t = c.trace();
    t.to_real()
        .filter(|r| r.is_integer())
        .and_then(|r| r.numer().to_usize())
        .expect("trace of an idempotent is a non-negative integer")
}

pub fn validate_csoi(cands: &[JordanElement]) -> Result<Csoi, JordanError> {
    let Some(first) = cands.first() else {
        return Err(JordanError::SumNotUnit);
    };
    let algebra = first.algebra.clone();
    if cands.iter().any(|c| c.algebra != algebra) {
        return Err(JordanError::AlgebraMismatch);
    }
    for (i, c) in cands.iter().enumerate() {
        if !is_idempotent(c) || c.is_zero() {
            return Err(JordanError::NotIdempotent(Some(i)));
        }
    }
    for i in 0..cands.len() {
        for j in (i + 1)..cands.len() {
            if !jmul(&cands[i], &cands[j])?.is_zero() {
                return Err(JordanError::NotOrthogonal(i, j));
            }
        }
    }
    let mut sum = algebra.zero();
    for c in cands {
        sum = sum.add(c)?;
    }
    if sum != algebra.unit() {
        return Err(JordanError::SumNotUnit);
    }
    let ranks = cands.iter().map(idempotent_rank).collect();
    Ok(Csoi { algebra, idempotents: cands.to_vec(), ranks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeStatus {
    Interior,
    Boundary,
    Outside,
}

impl ConeStatus {
    fn combine(self, other: ConeStatus) -> ConeStatus {
        use ConeStatus::*;
        match (self, other) {
            (Outside, _) | (_, Outside) => Outside,
            (Boundary, _) | (_, Boundary) => Boundary,
            _ => Interior,
        }
    }
}

fn sign(s: &Scalar) -> i8 {
    s.real_sign().expect("cone test needs real coordinates")
}

fn cone_status_raw(a: &AlgebraDescriptor, x: &[Scalar]) -> ConeStatus {
    match a {
        AlgebraDescriptor::Spin { .. } => {
            let tmp = JordanElement { algebra: a.clone(), coords: x.to_vec() };
            let (d, t) = (sign(&tmp.det()), sign(&tmp.trace()));
            match (d, t) {
                (1, 1) => ConeStatus::Interior,
                (0, 0 | 1) => ConeStatus::Boundary,
                _ => ConeStatus::Outside,
            }
        }
        AlgebraDescriptor::Symm { r } => {
            let m = symm_to_matrix(*r, x);
            if m.leading_minors().iter().all(|d| sign(d) == 1) {
                return ConeStatus::Interior;
            }
            // positive semidefinite iff every principal minor is non-negative
            let psd = (1u32..(1 << r)).all(|mask| {
                let idx: Vec<usize> = (0..*r).filter(|i| mask & (1 << i) != 0).collect();
                sign(&m.submatrix(&idx).det().expect("square")) >= 0
            });
            if psd {
                ConeStatus::Boundary
            } else {
                ConeStatus::Outside
            }
        }
        AlgebraDescriptor::Product { factors } => {
            let mut off = 0;
            let mut st = ConeStatus::Interior;
            for f in factors {
                let d = f.dim();
                st = st.combine(cone_status_raw(f, &x[off..off + d]));
                off += d;
            }
            st
        }
    }
}

/// Classifies `x` against the symmetric cone, or against `Omega(c)` when a
/// CSOI is given (elements outside `J(c)` are reported as outside).
pub fn cone_test(x: &JordanElement, csoi: Option<&Csoi>) -> Result<ConeStatus, JordanError> {
    if !x.is_real() {
        return Err(JordanError::NotReal);
    }
    let Some(c) = csoi else {
        return Ok(cone_status_raw(&x.algebra, &x.coords));
    };
    if c.algebra != x.algebra {
        return Err(JordanError::AlgebraMismatch);
    }
    let comps = c.components(x)?;
    let mut total = x.algebra.zero();
    for comp in &comps {
        total = total.add(comp)?;
    }
    if total != *x {
        return Ok(ConeStatus::Outside);
    }
    let mut st = ConeStatus::Interior;
    for (j, xj) in comps.iter().enumerate() {
        // x_j lies in Omega_j iff x_j + sum of the other idempotents lies in Omega
        let mut y = xj.clone();
        for (i, ci) in c.idempotents.iter().enumerate() {
            if i != j {
                y = y.add(ci)?;
            }
        }
        st = st.combine(cone_status_raw(&x.algebra, &y.coords));
    }
    Ok(st)
}
