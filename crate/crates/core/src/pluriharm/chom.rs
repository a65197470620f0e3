//! c-homogeneity: `q(l y) = prod_j chi_j(l_j)^{p_j} q(y)` on the generators
//! `l = P(sum a_j c_j)` and on rotations of the `y'` block.

use super::PluriError;
use crate::exactalg::{MultiPoly, RatMatrix, Scalar};
use crate::jordan::{lmap, AlgebraDescriptor, Csoi};
use crate::sample;

/// Entries of `P(sum_j a_j c_j)` as polynomials in `a_1..a_k`.
///
/// Since the `c_j` are orthogonal idempotents, `x^2 = sum_j a_j^2 c_j`, so
/// `P(x) = 2 sum_{i,j} a_i a_j L(c_i) L(c_j) - sum_j a_j^2 L(c_j)`.
#[allow(clippy::needless_range_loop)]
pub fn structure_scaling(csoi: &Csoi) -> Vec<Vec<MultiPoly>> {
    let k = csoi.len();
    let d = csoi.algebra.dim();
    let ls: Vec<RatMatrix> = csoi.idempotents.iter().map(lmap).collect();
    let mut out = vec![vec![MultiPoly::zero(k); d]; d];
    let mono = |i: usize, j: usize| {
        let mut e = vec![0; k];
        e[i] += 1;
        e[j] += 1;
        e
    };
    for i in 0..k {
        for j in 0..k {
            let prod = &ls[i] * &ls[j];
            for r in 0..d {
                for s in 0..d {
                    let c = prod.get(r, s);
                    if !c.is_zero() {
                        out[r][s].add_term(mono(i, j), c * &Scalar::from_int(2));
                    }
                }
            }
        }
        for r in 0..d {
            for s in 0..d {
                let c = ls[i].get(r, s);
                if !c.is_zero() {
                    out[r][s].add_term(mono(i, i), -c);
                }
            }
        }
    }
    out
}

/// Block-diagonal `Id_2 + R` acting on the `y'` coordinates of a spin factor.
pub fn y_prime_rotation(n: usize, r: &RatMatrix) -> RatMatrix {
    assert_eq!(r.rows() + 2, n, "rotation block size");
    RatMatrix::identity(2).direct_sum(r)
}

/// Checks c-homogeneity of multidegree `degrees` with a fixed set of
/// rotation samples.
pub fn chom_check(q: &MultiPoly, csoi: &Csoi, degrees: &[usize]) -> Result<bool, PluriError> {
    let rotations = match csoi.algebra {
        AlgebraDescriptor::Spin { n, .. } => {
            let mut rng = sample::rng(0x5eed);
            (0..4).map(|_| y_prime_rotation(n, &sample::rotation(&mut rng, n - 2))).collect()
        }
        _ => Vec::new(),
    };
    chom_check_with(q, csoi, degrees, &rotations)
}

pub fn chom_check_with(
    q: &MultiPoly,
    csoi: &Csoi,
    degrees: &[usize],
    rotations: &[RatMatrix],
) -> Result<bool, PluriError> {
    let d = csoi.algebra.dim();
    let k = csoi.len();
    if q.nvars() != d || degrees.len() != k {
        return Err(PluriError::InvariantViolation(format!(
            "symbol in {} variables with {} degrees for a CSOI of length {k} in dimension {d}",
            q.nvars(),
            degrees.len()
        )));
    }
    let total = d + k;
    let scaling = structure_scaling(csoi);
    let a_map: Vec<usize> = (d..total).collect();
    let images: Vec<MultiPoly> = (0..d)
        .map(|r| {
            let mut img = MultiPoly::zero(total);
            for (s, entry) in scaling[r].iter().enumerate() {
                let y = MultiPoly::var(total, s);
                img.absorb(&entry.embed(total, &a_map).expect("embedding") * &y);
            }
            img
        })
        .collect();
    let lhs = q.compose(&images)?;
    let mut factor = vec![0u32; total];
    for j in 0..k {
        factor[d + j] = (2 * csoi.ranks[j] * degrees[j]) as u32;
    }
    let y_map: Vec<usize> = (0..d).collect();
    let rhs = &q.embed(total, &y_map)? * &MultiPoly::monomial(factor, Scalar::one());
    if lhs != rhs {
        return Ok(false);
    }
    for r in rotations {
        if &q.subst_linear(r)? != q {
            return Ok(false);
        }
    }
    Ok(true)
}
