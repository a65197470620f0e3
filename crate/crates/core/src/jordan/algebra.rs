//! Algebra descriptors, elements and the basic Jordan operations.

use serde::{Deserialize, Serialize};

use super::JordanError;
use crate::exactalg::{MultiPoly, RatMatrix, Scalar};

/// Coordinate frame of a spin factor.
///
/// `Original` uses `(s, x_1, .., x_{n-1})` with pairing `2(st + x.y)`;
/// `FBasis` uses `y_1 = s + x_1`, `y_2 = s - x_1`, `y_j = sqrt(2) x_{j-1}`,
/// which is orthonormal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Frame {
    #[serde(rename = "original")]
    Original,
    #[serde(rename = "f")]
    FBasis,
}

impl Frame {
    pub fn as_str(self) -> &'static str {
        match self {
            Frame::Original => "original",
            Frame::FBasis => "f",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlgebraDescriptor {
    Spin { n: usize, frame: Frame },
    Symm { r: usize },
    Product { factors: Vec<AlgebraDescriptor> },
}

impl AlgebraDescriptor {
    pub fn spin(n: usize, frame: Frame) -> Result<Self, JordanError> {
        if n < 4 {
            return Err(JordanError::Unsupported(format!("spin factor needs n >= 4, got {n}")));
        }
        Ok(AlgebraDescriptor::Spin { n, frame })
    }

    pub fn symm(r: usize) -> Result<Self, JordanError> {
        if r == 0 {
            return Err(JordanError::Unsupported("Symm(0)".into()));
        }
        Ok(AlgebraDescriptor::Symm { r })
    }

    pub fn dim(&self) -> usize {
        match self {
            AlgebraDescriptor::Spin { n, .. } => *n,
            AlgebraDescriptor::Symm { r } => r * (r + 1) / 2,
            AlgebraDescriptor::Product { factors } => factors.iter().map(Self::dim).sum(),
        }
    }

    /// Rank `r` (number of elements of a Jordan frame).
    pub fn rank(&self) -> usize {
        match self {
            AlgebraDescriptor::Spin { .. } => 2,
            AlgebraDescriptor::Symm { r } => *r,
            AlgebraDescriptor::Product { factors } => factors.iter().map(Self::rank).sum(),
        }
    }

    pub fn frame(&self) -> Frame {
        match self {
            AlgebraDescriptor::Spin { frame, .. } => *frame,
            _ => Frame::Original,
        }
    }

    /// Gram matrix of the trace pairing in this basis.
    pub fn gram(&self) -> RatMatrix {
        match self {
            AlgebraDescriptor::Spin { n, frame: Frame::Original } => {
                RatMatrix::identity(*n).scale(&Scalar::from_int(2))
            }
            AlgebraDescriptor::Spin { n, frame: Frame::FBasis } => RatMatrix::identity(*n),
            AlgebraDescriptor::Symm { r } => RatMatrix::diagonal(
                &symm_index(*r)
                    .into_iter()
                    .map(|(i, j)| Scalar::from_int(if i == j { 1 } else { 2 }))
                    .collect::<Vec<_>>(),
            ),
            AlgebraDescriptor::Product { factors } => factors
                .iter()
                .map(Self::gram)
                .reduce(|a, b| a.direct_sum(&b))
                .unwrap_or_else(|| RatMatrix::zeros(0, 0)),
        }
    }

    pub fn unit(&self) -> JordanElement {
        let coords = match self {
            AlgebraDescriptor::Spin { n, frame } => {
                let mut c = vec![Scalar::zero(); *n];
                c[0] = Scalar::one();
                if *frame == Frame::FBasis {
                    c[1] = Scalar::one();
                }
                c
            }
            AlgebraDescriptor::Symm { r } => symm_index(*r)
                .into_iter()
                .map(|(i, j)| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect(),
            AlgebraDescriptor::Product { factors } => factors.iter().flat_map(|f| f.unit().coords).collect(),
        };
        JordanElement { algebra: self.clone(), coords }
    }

    pub fn zero(&self) -> JordanElement {
        JordanElement { algebra: self.clone(), coords: vec![Scalar::zero(); self.dim()] }
    }

    pub fn basis(&self, k: usize) -> JordanElement {
        let mut z = self.zero();
        z.coords[k] = Scalar::one();
        z
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<JordanElement, JordanError> {
        JordanElement::new(self.clone(), coords)
    }

    /// Exact Jordan product on raw coordinate vectors.
    pub fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        match self {
            AlgebraDescriptor::Spin { n, frame: Frame::Original } => {
                let dot: Scalar = (1..*n).map(|i| &x[i] * &y[i]).sum();
                let mut out = Vec::with_capacity(*n);
                out.push(&(&x[0] * &y[0]) + &dot);
                for i in 1..*n {
                    out.push(&(&x[0] * &y[i]) + &(&y[0] * &x[i]));
                }
                out
            }
            AlgebraDescriptor::Spin { n, frame: Frame::FBasis } => {
                let half = Scalar::ratio(1, 2);
                let dot: Scalar = (2..*n).map(|i| &x[i] * &y[i]).sum();
                let hd = &half * &dot;
                let sx = &half * &(&x[0] + &x[1]);
                let sy = &half * &(&y[0] + &y[1]);
                let mut out = Vec::with_capacity(*n);
                out.push(&(&x[0] * &y[0]) + &hd);
                out.push(&(&x[1] * &y[1]) + &hd);
                for i in 2..*n {
                    out.push(&(&sx * &y[i]) + &(&sy * &x[i]));
                }
                out
            }
            AlgebraDescriptor::Symm { r } => {
                let a = symm_to_matrix(*r, x);
                let b = symm_to_matrix(*r, y);
                let ab = &a * &b;
                let sym = (&ab + &ab.transpose()).scale(&Scalar::ratio(1, 2));
                matrix_to_symm(&sym)
            }
            AlgebraDescriptor::Product { factors } => {
                let mut out = Vec::with_capacity(x.len());
                let mut off = 0;
                for f in factors {
                    let d = f.dim();
                    out.extend(f.mul_coords(&x[off..off + d], &y[off..off + d]));
                    off += d;
                }
                out
            }
        }
    }

    pub fn det_coords(&self, x: &[Scalar]) -> Scalar {
        match self {
            AlgebraDescriptor::Spin { n, frame: Frame::Original } => {
                let v: Scalar = (1..*n).map(|i| &x[i] * &x[i]).sum();
                &(&x[0] * &x[0]) - &v
            }
            AlgebraDescriptor::Spin { n, frame: Frame::FBasis } => {
                let v: Scalar = (2..*n).map(|i| &x[i] * &x[i]).sum();
                &(&x[0] * &x[1]) - &(&Scalar::ratio(1, 2) * &v)
            }
            AlgebraDescriptor::Symm { r } => symm_to_matrix(*r, x).det().expect("square"),
            AlgebraDescriptor::Product { factors } => {
                let mut off = 0;
                let mut acc = Scalar::one();
                for f in factors {
                    let d = f.dim();
                    acc = &acc * &f.det_coords(&x[off..off + d]);
                    off += d;
                }
                acc
            }
        }
    }

    /// The determinant as a polynomial in the coordinates.
    pub fn det_poly(&self) -> MultiPoly {
        let d = self.dim();
        match self {
            AlgebraDescriptor::Spin { n, frame } => {
                let mut p = MultiPoly::zero(d);
                let mut e = vec![0; d];
                match frame {
                    Frame::Original => {
                        e[0] = 2;
                        p.add_term(e, Scalar::one());
                        for i in 1..*n {
                            let mut e = vec![0; d];
                            e[i] = 2;
                            p.add_term(e, Scalar::from_int(-1));
                        }
                    }
                    Frame::FBasis => {
                        e[0] = 1;
                        e[1] = 1;
                        p.add_term(e, Scalar::one());
                        for i in 2..*n {
                            let mut e = vec![0; d];
                            e[i] = 2;
                            p.add_term(e, Scalar::ratio(-1, 2));
                        }
                    }
                }
                p
            }
            AlgebraDescriptor::Symm { r } => {
                let entries: Vec<Vec<MultiPoly>> = (0..*r)
                    .map(|i| (0..*r).map(|j| MultiPoly::var(d, symm_pos(*r, i.min(j), i.max(j)))).collect())
                    .collect();
                det_poly_matrix(&entries, d)
            }
            AlgebraDescriptor::Product { factors } => {
                let mut acc = MultiPoly::one(d);
                let mut off = 0;
                for f in factors {
                    let fd = f.dim();
                    let map: Vec<usize> = (off..off + fd).collect();
                    acc = &acc * &f.det_poly().embed(d, &map).expect("valid embedding");
                    off += fd;
                }
                acc
            }
        }
    }
}

/// Determinant of a small matrix of polynomials by Laplace expansion.
fn det_poly_matrix(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let k = m.len();
    if k == 0 {
        return MultiPoly::one(nvars);
    }
    if k == 1 {
        return m[0][0].clone();
    }
    let mut out = MultiPoly::zero(nvars);
    for col in 0..k {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][col] * &det_poly_matrix(&minor, nvars);
        if col % 2 == 0 {
            out.absorb(term);
        } else {
            out.absorb(-&term);
        }
    }
    out
}

/// Basis ordering for Symm(r): row-major upper triangle `(i, j)`, `i <= j`.
pub fn symm_index(r: usize) -> Vec<(usize, usize)> {
    (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect()
}

pub fn symm_pos(r: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < r);
    i * r - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Symmetric matrix with `X_ii = x_(i,i)` and `X_ij = X_ji = x_(i,j)`.
pub fn symm_to_matrix(r: usize, x: &[Scalar]) -> RatMatrix {
    let mut m = RatMatrix::zeros(r, r);
    for (k, (i, j)) in symm_index(r).into_iter().enumerate() {
        m.set(i, j, x[k].clone());
        m.set(j, i, x[k].clone());
    }
    m
}

pub fn matrix_to_symm(m: &RatMatrix) -> Vec<Scalar> {
    symm_index(m.rows()).into_iter().map(|(i, j)| m.get(i, j).clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JordanElement {
    pub algebra: AlgebraDescriptor,
    pub coords: Vec<Scalar>,
}

impl JordanElement {
    pub fn new(algebra: AlgebraDescriptor, coords: Vec<Scalar>) -> Result<Self, JordanError> {
        if coords.len() != algebra.dim() {
            return Err(JordanError::Dimension(format!(
                "{} coordinates for an algebra of dimension {}",
                coords.len(),
                algebra.dim()
            )));
        }
        Ok(JordanElement { algebra, coords })
    }

    pub fn from_ints(algebra: &AlgebraDescriptor, coords: &[i64]) -> Result<Self, JordanError> {
        JordanElement::new(algebra.clone(), coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn is_real(&self) -> bool {
        self.coords.iter().all(Scalar::is_real)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    fn same(&self, other: &JordanElement) -> Result<(), JordanError> {
        if self.algebra != other.algebra {
            return Err(JordanError::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &JordanElement) -> Result<JordanElement, JordanError> {
        self.same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(JordanElement { algebra: self.algebra.clone(), coords })
    }

    pub fn sub(&self, other: &JordanElement) -> Result<JordanElement, JordanError> {
        self.same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(JordanElement { algebra: self.algebra.clone(), coords })
    }

    pub fn scale(&self, s: &Scalar) -> JordanElement {
        JordanElement { algebra: self.algebra.clone(), coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub fn square(&self) -> JordanElement {
        JordanElement {
            algebra: self.algebra.clone(),
            coords: self.algebra.mul_coords(&self.coords, &self.coords),
        }
    }

    /// Trace pairing `(x, y)` through the descriptor's Gram matrix.
    pub fn pair(&self, other: &JordanElement) -> Result<Scalar, JordanError> {
        self.same(other)?;
        let g = self.algebra.gram();
        Ok(self.coords.iter().zip(g.mul_vec(&other.coords)).map(|(a, b)| a * &b).sum())
    }

    /// `tr x = (x, e)`.
    pub fn trace(&self) -> Scalar {
        self.pair(&self.algebra.unit()).expect("same algebra")
    }

    pub fn det(&self) -> Scalar {
        self.algebra.det_coords(&self.coords)
    }
}

pub fn jmul(x: &JordanElement, y: &JordanElement) -> Result<JordanElement, JordanError> {
    x.same(y)?;
    Ok(JordanElement { algebra: x.algebra.clone(), coords: x.algebra.mul_coords(&x.coords, &y.coords) })
}

/// Matrix of `L(x): y -> x y` in the element's basis.
pub fn lmap(x: &JordanElement) -> RatMatrix {
    let d = x.algebra.dim();
    let cols: Vec<Vec<Scalar>> =
        (0..d).map(|k| x.algebra.mul_coords(&x.coords, &x.algebra.basis(k).coords)).collect();
    RatMatrix::from_columns(&cols)
}

/// Quadratic representation `P(x) = 2 L(x)^2 - L(x^2)`.
pub fn pmap(x: &JordanElement) -> RatMatrix {
    let l = lmap(x);
    let l2 = lmap(&x.square());
    &(&l * &l).scale(&Scalar::from_int(2)) - &l2
}

/// Determinant and, when it exists, the inverse.
///
/// The inverse solves `P(x) w = x`, which characterises `x^{-1}`.
pub fn jdet_inv(x: &JordanElement) -> (Scalar, Option<JordanElement>) {
    let det = x.det();
    if det.is_zero() {
        return (det, None);
    }
    let inv = match &x.algebra {
        AlgebraDescriptor::Spin { n, frame: Frame::Original } => {
            let mut c = vec![&x.coords[0] / &det];
            c.extend((1..*n).map(|i| -(&x.coords[i] / &det)));
            Some(c)
        }
        _ => {
            let p = pmap(x);
            p.solve(&RatMatrix::from_columns(std::slice::from_ref(&x.coords))).map(|w| w.column(0))
        }
    };
    (det, inv.map(|coords| JordanElement { algebra: x.algebra.clone(), coords }))
}
