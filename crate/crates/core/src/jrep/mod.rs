//! Representations of Jordan algebras on Euclidean spaces: Clifford modules
//! for spin factors and matrix modules for Symm(r).

mod regular;

pub use regular::{regularity_witness, Regularity};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactalg::{MultiPoly, RatMatrix, Scalar};
use crate::jordan::{pmap, symm_index, AlgebraDescriptor, Csoi, Frame, JordanElement, JordanError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("element and representation belong to different algebras")]
    AlgebraMismatch,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("module vector of length {got}, expected {expected}")]
    Dimension { got: usize, expected: usize },
    #[error(transparent)]
    Jordan(#[from] JordanError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RepSpec {
    Clifford { n: usize, copies: usize },
    SymmModule { r: usize, q: usize },
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepSpec::Clifford { n, copies } => write!(f, "clifford(n={n},copies={copies})"),
            RepSpec::SymmModule { r, q } => write!(f, "symm_module(r={r},q={q})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub algebra: AlgebraDescriptor,
    pub dim_e: usize,
    /// `Phi(b_i)` for each basis element `b_i` of the algebra.
    pub phi_basis: Vec<RatMatrix>,
    /// Rank multiplier: `dim_e = rank * q`.
    pub q: usize,
    pub recipe: RepSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleVector {
    pub coords: Vec<Scalar>,
}

impl ModuleVector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        ModuleVector { coords }
    }

    pub fn basis(n: usize, k: usize) -> Self {
        let mut c = vec![Scalar::zero(); n];
        c[k] = Scalar::one();
        ModuleVector { coords: c }
    }
}

fn ints(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_int_rows(rows)
}

/// Real symmetric pairwise anticommuting involutions `gamma_1..gamma_k`.
pub fn clifford_generators(k: usize) -> Vec<RatMatrix> {
    let sz = ints(&[&[1, 0], &[0, -1]]);
    let sx = ints(&[&[0, 1], &[1, 0]]);
    let i2 = RatMatrix::identity(2);
    // sigma_y (x) sigma_y, which is real
    let yy = ints(&[&[0, 0, 0, -1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]]);
    match k {
        0 => vec![],
        1 => vec![sz],
        2 => vec![sz, sx],
        3 => vec![sz.kron(&i2), sx.kron(&i2), yy],
        4 => {
            let i4 = RatMatrix::identity(4);
            vec![sz.kron(&i4), sx.kron(&i4), yy.kron(&sz), yy.kron(&sx)]
        }
        _ => {
            let prev = clifford_generators(k - 1);
            let size = prev[0].rows();
            let mut out: Vec<RatMatrix> = prev.iter().map(|g| g.kron(&sz)).collect();
            out.push(RatMatrix::identity(size).kron(&sx));
            out
        }
    }
}

fn block_diag_copies(m: &RatMatrix, copies: usize) -> RatMatrix {
    RatMatrix::identity(copies).kron(m)
}

pub fn build_rep(spec: RepSpec) -> Result<Representation, RepError> {
    let rep = match spec {
        RepSpec::Clifford { n, copies } => {
            if n < 4 {
                return Err(RepError::Unsupported(format!("clifford modules need n >= 4, got {n}")));
            }
            if copies == 0 {
                return Err(RepError::Unsupported("copies must be at least 1".into()));
            }
            let gens = clifford_generators(n - 1);
            let size = gens[0].rows();
            let mut phi = vec![RatMatrix::identity(size * copies)];
            phi.extend(gens.iter().map(|g| block_diag_copies(g, copies)));
            let dim_e = size * copies;
            Representation {
                algebra: AlgebraDescriptor::spin(n, Frame::Original)?,
                dim_e,
                phi_basis: phi,
                q: dim_e / 2,
                recipe: spec,
            }
        }
        RepSpec::SymmModule { r, q } => {
            if q == 0 {
                return Err(RepError::Unsupported("q must be at least 1".into()));
            }
            let algebra = AlgebraDescriptor::symm(r)?;
            // column-major flattening of Mat(r, q): Phi(x) = Id_q (x) x
            let phi = symm_index(r)
                .into_iter()
                .map(|(i, j)| {
                    let mut m = RatMatrix::zeros(r, r);
                    m.set(i, j, Scalar::one());
                    m.set(j, i, Scalar::one());
                    block_diag_copies(&m, q)
                })
                .collect();
            Representation { algebra, dim_e: r * q, phi_basis: phi, q, recipe: spec }
        }
    };
    rep.check_axioms()?;
    Ok(rep)
}

impl Representation {
    /// Unit, symmetry and Jordan-morphism axioms on all basis pairs.
    pub fn check_axioms(&self) -> Result<(), RepError> {
        let a = &self.algebra;
        if self.dim_e != a.rank() * self.q {
            return Err(RepError::InvariantViolation(format!(
                "dim E = {} is not rank {} times q = {}",
                self.dim_e,
                a.rank(),
                self.q
            )));
        }
        if self.phi_of(&a.unit())? != RatMatrix::identity(self.dim_e) {
            return Err(RepError::InvariantViolation("Phi(e) != Id".into()));
        }
        for (i, m) in self.phi_basis.iter().enumerate() {
            if !m.is_symmetric() {
                return Err(RepError::InvariantViolation(format!("Phi(b_{i}) not symmetric")));
            }
        }
        let half = Scalar::ratio(1, 2);
        for i in 0..a.dim() {
            for j in i..a.dim() {
                let prod = a.mul_coords(&a.basis(i).coords, &a.basis(j).coords);
                let lhs = self.phi_coords(&prod);
                let (pi, pj) = (&self.phi_basis[i], &self.phi_basis[j]);
                let rhs = (&(pi * pj) + &(pj * pi)).scale(&half);
                if lhs != rhs {
                    return Err(RepError::InvariantViolation(format!(
                        "Jordan morphism law fails on (b_{i}, b_{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    fn phi_coords(&self, x: &[Scalar]) -> RatMatrix {
        let mut acc = RatMatrix::zeros(self.dim_e, self.dim_e);
        for (c, m) in x.iter().zip(&self.phi_basis) {
            if !c.is_zero() {
                acc = &acc + &m.scale(c);
            }
        }
        acc
    }

    pub fn phi_of(&self, x: &JordanElement) -> Result<RatMatrix, RepError> {
        if x.algebra != self.algebra {
            return Err(RepError::AlgebraMismatch);
        }
        Ok(self.phi_coords(&x.coords))
    }

    fn check_len(&self, v: &ModuleVector) -> Result<(), RepError> {
        if v.coords.len() != self.dim_e {
            return Err(RepError::Dimension { got: v.coords.len(), expected: self.dim_e });
        }
        Ok(())
    }

    /// The element `H` with `(H, b_i) = <Phi(b_i) xi, eta>`.
    pub fn polar(&self, xi: &ModuleVector, eta: &ModuleVector) -> Result<JordanElement, RepError> {
        self.check_len(xi)?;
        self.check_len(eta)?;
        let h: Vec<Scalar> = self
            .phi_basis
            .iter()
            .map(|m| m.mul_vec(&xi.coords).iter().zip(&eta.coords).map(|(a, b)| a * b).sum())
            .collect();
        let g = self.algebra.gram();
        let coords = gram_solve(&g, &h);
        Ok(self.algebra.element(coords)?)
    }

    /// Components of `Q(xi)` as quadratic polynomials in `dim_e` variables.
    pub fn qmap_poly(&self) -> Vec<MultiPoly> {
        let n = self.dim_e;
        let h: Vec<MultiPoly> = self
            .phi_basis
            .iter()
            .map(|m| {
                let mut p = MultiPoly::zero(n);
                for i in 0..n {
                    for j in 0..n {
                        let c = m.get(i, j);
                        if c.is_zero() {
                            continue;
                        }
                        let mut e = vec![0; n];
                        e[i] += 1;
                        e[j] += 1;
                        p.add_term(e, c.clone());
                    }
                }
                p
            })
            .collect();
        let ginv = self.algebra.gram().inverse().expect("Gram matrix is invertible");
        (0..h.len())
            .map(|i| {
                let mut p = MultiPoly::zero(n);
                for (k, hk) in h.iter().enumerate() {
                    let c = ginv.get(i, k);
                    if !c.is_zero() {
                        p.absorb(hk.scale(c));
                    }
                }
                p
            })
            .collect()
    }
}

fn gram_solve(g: &RatMatrix, h: &[Scalar]) -> Vec<Scalar> {
    g.solve(&RatMatrix::from_columns(&[h.to_vec()])).expect("Gram matrix is invertible").column(0)
}

/// `Q(xi) = H(xi, xi)`, or the polar form when `eta` is given.
pub fn qmap(
    rep: &Representation,
    xi: &ModuleVector,
    eta: Option<&ModuleVector>,
) -> Result<JordanElement, RepError> {
    rep.polar(xi, eta.unwrap_or(xi))
}

pub fn phi_of(rep: &Representation, x: &JordanElement) -> Result<RatMatrix, RepError> {
    rep.phi_of(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSplit {
    /// `Phi(c_j)` for each idempotent.
    pub projectors: Vec<RatMatrix>,
    pub dims: Vec<usize>,
    /// Coordinate indices spanning each `E_j` when the projectors are
    /// diagonal, which holds for every module built here.
    pub index_sets: Option<Vec<Vec<usize>>>,
    pub bases: Vec<Vec<Vec<Scalar>>>,
}

impl ModuleSplit {
    /// Block index of each coordinate.
    pub fn block_of(&self) -> Option<Vec<usize>> {
        let sets = self.index_sets.as_ref()?;
        let n = self.projectors.first()?.rows();
        let mut out = vec![usize::MAX; n];
        for (j, s) in sets.iter().enumerate() {
            for &k in s {
                out[k] = j;
            }
        }
        Some(out)
    }

    /// `xi_j = Phi(c_j) xi`.
    pub fn component(&self, j: usize, xi: &ModuleVector) -> ModuleVector {
        ModuleVector::new(self.projectors[j].mul_vec(&xi.coords))
    }
}

pub fn split_module(rep: &Representation, csoi: &Csoi) -> Result<ModuleSplit, RepError> {
    if csoi.algebra != rep.algebra {
        return Err(RepError::AlgebraMismatch);
    }
    let projectors: Vec<RatMatrix> =
        csoi.idempotents.iter().map(|c| rep.phi_of(c)).collect::<Result<_, _>>()?;
    let n = rep.dim_e;
    let mut sum = RatMatrix::zeros(n, n);
    for (i, p) in projectors.iter().enumerate() {
        if &(p * p) != p {
            return Err(RepError::InvariantViolation(format!("Phi(c_{i}) is not a projector")));
        }
        for (j, q) in projectors.iter().enumerate().skip(i + 1) {
            if !(p * q).is_zero() {
                return Err(RepError::InvariantViolation(format!("Phi(c_{i}) Phi(c_{j}) != 0")));
            }
        }
        sum = &sum + p;
    }
    if sum != RatMatrix::identity(n) {
        return Err(RepError::InvariantViolation("projectors do not sum to Id".into()));
    }
    let bases: Vec<Vec<Vec<Scalar>>> = projectors.iter().map(RatMatrix::column_basis).collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    for (j, (&d, &r)) in dims.iter().zip(&csoi.ranks).enumerate() {
        if d != r * rep.q {
            return Err(RepError::InvariantViolation(format!(
                "dim E_{} = {d} but r_{} q = {}",
                j + 1,
                j + 1,
                r * rep.q
            )));
        }
    }
    let diagonal = projectors.iter().all(|p| (0..n).all(|i| (0..n).all(|k| i == k || p.get(i, k).is_zero())));
    let index_sets = diagonal
        .then(|| projectors.iter().map(|p| (0..n).filter(|&i| p.get(i, i).is_one()).collect()).collect());
    Ok(ModuleSplit { projectors, dims, index_sets, bases })
}

/// `P(c_j) Q(xi) = Q(Phi(c_j) xi)` for every idempotent of the CSOI.
pub fn qmap_block_identity(rep: &Representation, csoi: &Csoi, xi: &ModuleVector) -> Result<bool, RepError> {
    let q = qmap(rep, xi, None)?;
    for c in &csoi.idempotents {
        let lhs = pmap(c).mul_vec(&q.coords);
        let xi_j = ModuleVector::new(rep.phi_of(c)?.mul_vec(&xi.coords));
        if lhs != qmap(rep, &xi_j, None)?.coords {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Serialize, Deserialize)]
struct RepDocument {
    recipe: RepSpec,
    algebra: AlgebraDescriptor,
    dim_e: usize,
    q: usize,
    phi_basis: Vec<Vec<Vec<i64>>>,
}

impl Serialize for Representation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let grids = self
            .phi_basis
            .iter()
            .map(|m| m.to_int_grid().ok_or_else(|| serde::ser::Error::custom("non-integer entry")))
            .collect::<Result<Vec<_>, _>>()?;
        RepDocument {
            recipe: self.recipe,
            algebra: self.algebra.clone(),
            dim_e: self.dim_e,
            q: self.q,
            phi_basis: grids,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Representation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = RepDocument::deserialize(d)?;
        let phi_basis = doc
            .phi_basis
            .iter()
            .map(|g| {
                let rows: Vec<&[i64]> = g.iter().map(Vec::as_slice).collect();
                RatMatrix::from_int_rows(&rows)
            })
            .collect();
        let rep = Representation {
            algebra: doc.algebra,
            dim_e: doc.dim_e,
            phi_basis,
            q: doc.q,
            recipe: doc.recipe,
        };
        rep.check_axioms().map_err(serde::de::Error::custom)?;
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{diagonal_csoi, rank2_csoi, validate_csoi};

    fn v(c: &[i64]) -> ModuleVector {
        ModuleVector::new(c.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    #[test]
    fn generators_anticommute() {
        for k in 1..=7 {
            let g = clifford_generators(k);
            assert_eq!(g.len(), k);
            let id = RatMatrix::identity(g[0].rows());
            for i in 0..k {
                assert!(g[i].is_symmetric());
                assert_eq!(&g[i] * &g[i], id);
                for j in (i + 1)..k {
                    assert!((&(&g[i] * &g[j]) + &(&g[j] * &g[i])).is_zero());
                }
            }
        }
    }

    #[test]
    fn build_examples() {
        let r = build_rep(RepSpec::Clifford { n: 4, copies: 1 }).unwrap();
        assert_eq!((r.dim_e, r.q), (4, 2));
        let r = build_rep(RepSpec::Clifford { n: 4, copies: 2 }).unwrap();
        assert_eq!((r.dim_e, r.q), (8, 4));
        let r = build_rep(RepSpec::SymmModule { r: 2, q: 3 }).unwrap();
        assert_eq!(r.dim_e, 6);
        assert_eq!(r.phi_of(&r.algebra.unit()).unwrap(), RatMatrix::identity(6));
        assert!(matches!(build_rep(RepSpec::Clifford { n: 3, copies: 1 }), Err(RepError::Unsupported(_))));
    }

    #[test]
    fn clifford_relation_and_projector() {
        let r = build_rep(RepSpec::Clifford { n: 4, copies: 1 }).unwrap();
        let x = JordanElement::from_ints(&r.algebra, &[0, 2, -1, 3]).unwrap();
        let m = r.phi_of(&x).unwrap();
        assert_eq!(&m * &m, RatMatrix::identity(4).scale(&Scalar::from_int(14)));
        let c = rank2_csoi(4, Frame::Original).unwrap();
        assert_eq!(r.phi_of(&c.idempotents[0]).unwrap().rank(), 2);
    }

    #[test]
    fn qmap_examples() {
        let r = build_rep(RepSpec::Clifford { n: 4, copies: 1 }).unwrap();
        let c = rank2_csoi(4, Frame::Original).unwrap();
        assert_eq!(qmap(&r, &v(&[1, 0, 0, 0]), None).unwrap(), c.idempotents[0]);
        assert!(qmap(&r, &v(&[0, 0, 0, 0]), None).unwrap().is_zero());
        let s = build_rep(RepSpec::SymmModule { r: 2, q: 2 }).unwrap();
        // flatten(I_2), column-major
        assert_eq!(qmap(&s, &v(&[1, 0, 0, 1]), None).unwrap(), s.algebra.unit());
    }

    #[test]
    fn qmap_poly_matches_pointwise() {
        let r = build_rep(RepSpec::Clifford { n: 5, copies: 1 }).unwrap();
        let polys = r.qmap_poly();
        let xi = v(&[1, -2, 0, 3, 1, 1, -1, 2]);
        let q = qmap(&r, &xi, None).unwrap();
        let at: Vec<Scalar> = polys.iter().map(|p| p.eval(&xi.coords).unwrap()).collect();
        assert_eq!(at, q.coords);
    }

    #[test]
    fn split_examples() {
        let r = build_rep(RepSpec::Clifford { n: 4, copies: 2 }).unwrap();
        let c = rank2_csoi(4, Frame::Original).unwrap();
        let s = split_module(&r, &c).unwrap();
        assert_eq!(s.dims, vec![4, 4]);
        assert!(s.index_sets.is_some());
        let m = build_rep(RepSpec::SymmModule { r: 2, q: 3 }).unwrap();
        assert_eq!(split_module(&m, &diagonal_csoi(2).unwrap()).unwrap().dims, vec![3, 3]);
        let e = validate_csoi(&[r.algebra.unit()]).unwrap();
        assert_eq!(split_module(&r, &e).unwrap().dims, vec![8]);
    }

    #[test]
    fn json_round_trip() {
        let r = build_rep(RepSpec::Clifford { n: 5, copies: 1 }).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: Representation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
