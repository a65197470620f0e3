//! Exact search for `xi` with `Q(xi) = e`.

use serde::{Deserialize, Serialize};

use super::{qmap, split_module, ModuleVector, RepError, Representation};
use crate::exactalg::{RatMatrix, Scalar};
use crate::jordan::{rank2_csoi, AlgebraDescriptor, Frame};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Regularity {
    Regular {
        witness: ModuleVector,
    },
    NotRegular {
        reason: String,
    },
    /// The solver could neither produce a rational witness nor prove that
    /// none exists.
    Undecided {
        reason: String,
    },
}

impl Regularity {
    pub fn witness(&self) -> Option<&ModuleVector> {
        match self {
            Regularity::Regular { witness } => Some(witness),
            _ => None,
        }
    }
}

const SPARSE_LIMIT: u64 = 200_000;

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Signed sums of `r` distinct basis vectors; `|xi|^2 = tr e = r` forces the size.
fn sparse_search(rep: &Representation, target: &[Scalar]) -> Option<ModuleVector> {
    let n = rep.dim_e;
    let r = rep.algebra.rank();
    if r > n || binomial(n as u64, r as u64).saturating_mul(1 << (r - 1)) > SPARSE_LIMIT {
        return None;
    }
    let mut subset: Vec<usize> = (0..r).collect();
    loop {
        for signs in 0u32..(1 << (r - 1)) {
            let s: Vec<i64> =
                (0..r).map(|i| if i > 0 && signs & (1 << (i - 1)) != 0 { -1 } else { 1 }).collect();
            let ok = rep.phi_basis.iter().zip(target).all(|(m, t)| {
                let mut h = Scalar::zero();
                for a in 0..r {
                    for b in 0..r {
                        let c = m.get(subset[a], subset[b]);
                        if !c.is_zero() {
                            h += c * &Scalar::from_int(s[a] * s[b]);
                        }
                    }
                }
                &h == t
            });
            if ok {
                let mut coords = vec![Scalar::zero(); n];
                for (a, &i) in subset.iter().enumerate() {
                    coords[i] = Scalar::from_int(s[a]);
                }
                return Some(ModuleVector::new(coords));
            }
        }
        // next r-subset in lexicographic order
        let mut i = r;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if subset[i] < n - r + i {
                break;
            }
        }
        subset[i] += 1;
        for j in (i + 1)..r {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Rank-2 spin factor: `Q(xi_1 + xi_2) = e` iff `|xi_1| = |xi_2| = 1` and
/// `xi_2` is orthogonal to every `gamma_j xi_1`, `j >= 2`.
fn spin_blockwise(rep: &Representation, n: usize) -> Result<Regularity, RepError> {
    let csoi = rank2_csoi(n, Frame::Original)?;
    let split = split_module(rep, &csoi)?;
    let (b1, b2) = (&split.bases[0], &split.bases[1]);
    let n2 = b2.len();
    let e2 = RatMatrix::from_columns(b2);
    let mut all_fill = true;
    for xi1 in b1 {
        let norm1: Scalar = xi1.iter().map(|c| c * c).sum();
        let Some(len1) = norm1.sqrt_exact() else {
            all_fill = false;
            continue;
        };
        let images: Vec<Vec<Scalar>> = rep.phi_basis[2..].iter().map(|g| g.mul_vec(xi1)).collect();
        // <gamma_j xi_1, E_2 w> = 0 for all j, w in E_2 coordinates
        let rows: Vec<Vec<Scalar>> = images
            .iter()
            .map(|im| (0..n2).map(|k| im.iter().zip(&b2[k]).map(|(a, b)| a * b).sum()).collect())
            .collect();
        let constraint = RatMatrix::from_rows(rows);
        let complement = constraint.nullspace();
        if complement.is_empty() {
            continue;
        }
        all_fill = false;
        for w in complement {
            let w_full = e2.mul_vec(&w);
            let norm2: Scalar = w_full.iter().map(|c| c * c).sum();
            let Some(len2) = norm2.sqrt_exact() else {
                continue;
            };
            let coords: Vec<Scalar> =
                xi1.iter().zip(&w_full).map(|(a, b)| &(a / &len1) + &(b / &len2)).collect();
            let xi = ModuleVector::new(coords);
            if qmap(rep, &xi, None)? == rep.algebra.unit() {
                return Ok(Regularity::Regular { witness: xi });
            }
        }
    }
    if all_fill {
        return Ok(Regularity::NotRegular {
            reason: format!(
                "for every basis vector xi_1 of E_1 the vectors gamma_j xi_1 (j >= 2) span E_2 (dim {n2}), forcing xi_2 = 0"
            ),
        });
    }
    Ok(Regularity::Undecided {
        reason: "orthogonal complement found but no rational unit vector in it".into(),
    })
}

pub fn regularity_witness(rep: &Representation) -> Result<Regularity, RepError> {
    let target = rep.algebra.gram().mul_vec(&rep.algebra.unit().coords);
    if let Some(w) = sparse_search(rep, &target) {
        debug_assert_eq!(qmap(rep, &w, None)?, rep.algebra.unit());
        return Ok(Regularity::Regular { witness: w });
    }
    match rep.algebra {
        AlgebraDescriptor::Spin { n, frame: Frame::Original } => spin_blockwise(rep, n),
        AlgebraDescriptor::Symm { r } if rep.q < r => Ok(Regularity::NotRegular {
            reason: format!("Q(xi) = xi xi^t has rank at most q = {} < r = {r}", rep.q),
        }),
        _ => Ok(Regularity::Undecided { reason: "no sparse witness".into() }),
    }
}
