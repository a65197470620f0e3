//! The literal pluri-harmonicity system `Delta_E (p o Phi(x)) = 0`, `x in J(c)`.

use std::collections::BTreeMap;

use super::{CoeffParams, CoeffVector, PluriError, Provenance, SymbolSpace};
use crate::exactalg::{mat_nullspace, Exponents, MultiPoly, RatMatrix, Scalar};
use crate::jordan::frame::reduce_root2;
use crate::jordan::{AlgebraDescriptor, Csoi, Frame};
use crate::jrep::{split_module, Representation};

/// Incremental row echelon form over a fixed number of columns.
#[derive(Clone, Debug, Default)]
pub struct RowEchelon {
    cols: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl RowEchelon {
    pub fn new(cols: usize) -> Self {
        RowEchelon { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Reduces `row` against the stored rows and keeps the remainder if nonzero.
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        for (piv, r) in &self.rows {
            if row[*piv].is_zero() {
                continue;
            }
            let f = row[*piv].clone();
            for (x, y) in row.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        let Some(piv) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[piv].inv().expect("nonzero pivot");
        for x in row.iter_mut() {
            *x = &*x * &inv;
        }
        // keep stored rows reduced at the new pivot
        for (_, r) in self.rows.iter_mut() {
            if r[piv].is_zero() {
                continue;
            }
            let f = r[piv].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        self.rows.push((piv, row));
        true
    }

    pub fn matrix(&self) -> RatMatrix {
        if self.rows.is_empty() {
            return RatMatrix::zeros(0, self.cols);
        }
        RatMatrix::from_rows(self.rows.iter().map(|(_, r)| r.clone()).collect())
    }

    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        if self.rows.is_empty() {
            return (0..self.cols)
                .map(|k| {
                    let mut v = vec![Scalar::zero(); self.cols];
                    v[k] = Scalar::one();
                    v
                })
                .collect();
        }
        mat_nullspace(&self.matrix())
    }
}

/// `p = q o Q` on the module, for `q` given in `frame` coordinates.
///
/// A spin-factor symbol in the f-basis is transported through `t = sqrt 2`:
/// `y_0 = Q_0 + Q_1`, `y_1 = Q_0 - Q_1`, `y_j = t Q_j` for `j >= 2` (0-based).
pub fn pullback_to_module(
    rep: &Representation,
    q: &MultiPoly,
    frame: Frame,
) -> Result<MultiPoly, PluriError> {
    let qs = rep.qmap_poly();
    let n_e = rep.dim_e;
    match (&rep.algebra, frame) {
        (AlgebraDescriptor::Spin { n, frame: Frame::Original }, Frame::FBasis) => {
            let lift = |p: &MultiPoly, t: bool| -> MultiPoly {
                let mut out = MultiPoly::zero(n_e + 1);
                for (e, c) in p.terms() {
                    let mut ne = e.clone();
                    ne.push(u32::from(t));
                    out.add_term(ne, c.clone());
                }
                out
            };
            let mut images = vec![lift(&(&qs[0] + &qs[1]), false), lift(&(&qs[0] - &qs[1]), false)];
            images.extend((2..*n).map(|j| lift(&qs[j], true)));
            Ok(reduce_root2(&q.compose(&images)?)?)
        }
        (a, f) if a.frame() == f => Ok(q.compose(&qs)?),
        _ => Err(PluriError::Unsupported(format!(
            "symbols in frame {} over a representation of {:?}",
            frame.as_str(),
            rep.algebra
        ))),
    }
}

/// `p(Phi(x) xi)` for `x = sum_k u_k x_k`, in the ring `(xi, u)`.
fn compose_with_phi(p: &MultiPoly, phis: &[RatMatrix]) -> Result<MultiPoly, PluriError> {
    let n_e = p.nvars();
    let d = phis.len();
    let total = n_e + d;
    // fast path: the image of every xi_i is a single monomial c_i u_{k_i} xi_i
    let mono: Option<Vec<(Scalar, usize)>> = (0..n_e)
        .map(|i| {
            let mut hit = None;
            for (k, m) in phis.iter().enumerate() {
                if (0..n_e).any(|l| l != i && !m.get(i, l).is_zero()) {
                    return None;
                }
                let c = m.get(i, i);
                if !c.is_zero() {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some((c.clone(), k));
                }
            }
            hit
        })
        .collect();
    if let Some(mono) = mono {
        let mut out = MultiPoly::zero(total);
        for (e, c) in p.terms() {
            let mut ne: Exponents = e.clone();
            ne.resize(total, 0);
            let mut coeff = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    ne[n_e + mono[i].1] += k;
                    if !mono[i].0.is_one() {
                        coeff = &coeff * &mono[i].0.pow(i64::from(k)).expect("power");
                    }
                }
            }
            out.add_term(ne, coeff);
        }
        return Ok(out);
    }
    let images: Vec<MultiPoly> = (0..n_e)
        .map(|i| {
            let mut img = MultiPoly::zero(total);
            for (k, m) in phis.iter().enumerate() {
                for l in 0..n_e {
                    let c = m.get(i, l);
                    if !c.is_zero() {
                        let mut e = vec![0; total];
                        e[l] = 1;
                        e[n_e + k] = 1;
                        img.add_term(e, c.clone());
                    }
                }
            }
            img
        })
        .collect();
    Ok(p.compose(&images)?)
}

fn jc_phis(rep: &Representation, csoi: &Csoi) -> Result<Vec<RatMatrix>, PluriError> {
    csoi.subalgebra_bases()?
        .into_iter()
        .flatten()
        .map(|x| rep.phi_of(&rep.algebra.element(x)?).map_err(PluriError::from))
        .collect()
}

/// `Delta_E (p o Phi(x))` for symbolic `x in J(c)`, in the ring `(xi, u)`.
pub fn pluriharmonic_defect(
    rep: &Representation,
    csoi: &Csoi,
    p: &MultiPoly,
) -> Result<MultiPoly, PluriError> {
    if p.nvars() != rep.dim_e {
        return Err(PluriError::InvariantViolation(format!(
            "polynomial in {} variables on a module of dimension {}",
            p.nvars(),
            rep.dim_e
        )));
    }
    let phis = jc_phis(rep, csoi)?;
    let xi_vars: Vec<usize> = (0..rep.dim_e).collect();
    Ok(compose_with_phi(p, &phis)?.laplacian(&xi_vars)?)
}

pub fn is_pluriharmonic(rep: &Representation, csoi: &Csoi, p: &MultiPoly) -> Result<bool, PluriError> {
    Ok(pluriharmonic_defect(rep, csoi, p)?.is_zero())
}

/// `Delta_{E_j} p` for each block of the module split.
pub fn block_laplacians(
    rep: &Representation,
    csoi: &Csoi,
    p: &MultiPoly,
) -> Result<Vec<MultiPoly>, PluriError> {
    let split = split_module(rep, csoi)?;
    let sets = split
        .index_sets
        .ok_or_else(|| PluriError::Unsupported("block Laplacians need coordinate-aligned blocks".into()))?;
    sets.iter().map(|s| Ok(p.laplacian(s)?)).collect()
}

/// Exact nullspace of the linear system in the coefficients of `space`
/// expressing `Delta_E (q o Q o Phi(x)) = 0` for all `x` in `J(c)`.
pub fn pluriharmonic_solve(
    rep: &Representation,
    csoi: &Csoi,
    space: &SymbolSpace,
) -> Result<Vec<CoeffVector>, PluriError> {
    let split = split_module(rep, csoi)?;
    let n_e = rep.dim_e;
    let phis = jc_phis(rep, csoi)?;
    let xi_vars: Vec<usize> = (0..n_e).collect();
    let b = space.basis.len();
    let frame = space.algebra.frame();

    let mut rows: BTreeMap<Exponents, Vec<Scalar>> = BTreeMap::new();
    for (j, basis) in space.basis.iter().enumerate() {
        let p = pullback_to_module(rep, basis, frame)?;
        let lap = compose_with_phi(&p, &phis)?.laplacian(&xi_vars)?;
        for (e, c) in lap.terms() {
            rows.entry(e.clone()).or_insert_with(|| vec![Scalar::zero(); b])[j] = c.clone();
        }
    }
    let mut ech = RowEchelon::new(b);
    for (_, row) in rows {
        ech.insert(row);
        if ech.is_full() {
            break;
        }
    }
    let n = space.algebra.dim();
    let n1 = split.dims.first().copied();
    let m = Scalar::ratio(n1.unwrap_or(0) as i64, 2);
    let p = space.degrees.first().copied().unwrap_or(0);
    Ok(ech
        .nullspace()
        .into_iter()
        .map(|v| {
            let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("nonzero nullspace vector");
            let inv = lead.inv().expect("nonzero");
            CoeffVector {
                coeffs: v.iter().map(|x| x * &inv).collect(),
                provenance: Provenance::Nullspace,
                convention: None,
                params: CoeffParams { n, n1, m: m.clone(), p },
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::rank2_csoi;
    use crate::jrep::{build_rep, RepSpec};
    use crate::pluriharm::{derived_coeffs, rank2_symbol_basis};

    #[test]
    fn echelon_tracks_rank() {
        let mut e = RowEchelon::new(3);
        let r = |v: &[i64]| v.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>();
        assert!(e.insert(r(&[1, 2, 3])));
        assert!(!e.insert(r(&[2, 4, 6])));
        assert!(e.insert(r(&[0, 1, 1])));
        assert_eq!(e.rank(), 2);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], r(&[-1, -1, 1]));
    }

    #[test]
    fn pullback_of_y1_is_first_block_norm() {
        let rep = build_rep(RepSpec::Clifford { n: 4, copies: 2 }).unwrap();
        let y1 = MultiPoly::var(4, 0);
        let p = pullback_to_module(&rep, &y1, Frame::FBasis).unwrap();
        let csoi = rank2_csoi(4, Frame::Original).unwrap();
        let split = split_module(&rep, &csoi).unwrap();
        let mut expected = MultiPoly::zero(8);
        for &k in &split.index_sets.unwrap()[0] {
            let mut e = vec![0; 8];
            e[k] = 2;
            expected.add_term(e, Scalar::one());
        }
        assert_eq!(p, expected);
    }

    #[test]
    fn solver_examples() {
        let rep = build_rep(RepSpec::Clifford { n: 4, copies: 2 }).unwrap();
        let csoi = rank2_csoi(4, Frame::Original).unwrap();
        let sols = pluriharmonic_solve(&rep, &csoi, &rank2_symbol_basis(4, 1, 1).unwrap()).unwrap();
        assert_eq!(sols.len(), 1);
        let derived = derived_coeffs(4, &Scalar::from_int(2), 1).unwrap();
        assert_eq!(sols[0].coeffs, derived.coeffs);
        assert!(pluriharmonic_solve(&rep, &csoi, &rank2_symbol_basis(4, 2, 1).unwrap()).unwrap().is_empty());
        let c = pluriharmonic_solve(&rep, &csoi, &rank2_symbol_basis(4, 0, 0).unwrap()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].coeffs, vec![Scalar::one()]);
    }
}
