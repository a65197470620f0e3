//! Sparse multivariate polynomials over Gaussian rationals.

use std::collections::BTreeMap;
use std::fmt;

use super::{ExactError, RatMatrix, Scalar};

/// Exponent vector of a monomial; its length is the ring's variable count.
pub type Exponents = Vec<u32>;

/// A polynomial in `nvars` variables, stored as exponent vector -> coefficient.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

/// The binary operations of [`poly_combine`].
#[derive(Clone, Debug)]
pub enum PolyOp {
    Add,
    Mul,
    Scale(Scalar),
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Scalar::one())
    }

    /// The coordinate function `y_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable {var} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[var] = 1;
        MultiPoly::monomial(e, Scalar::one())
    }

    pub fn monomial(exps: Exponents, coeff: Scalar) -> Self {
        let mut p = MultiPoly::zero(exps.len());
        p.add_term(exps, coeff);
        p
    }

    /// Linear form `sum_i c_i y_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = MultiPoly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Adds `c * y^exps` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, exps: Exponents, c: Scalar) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &MultiPoly) -> Result<(), ExactError> {
        if self.nvars != other.nvars {
            return Err(ExactError::Arity(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, ExactError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, ExactError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, ExactError> {
        self.check_arity(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        for (ea, ca) in &small.terms {
            for (eb, cb) in &big.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True when every term has total degree `d` (the zero polynomial qualifies).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    /// Iterated partial derivative `d^order / dy_var^order`.
    pub fn partial(&self, var: usize, order: u32) -> Result<MultiPoly, ExactError> {
        if var >= self.nvars {
            return Err(ExactError::Arity(format!(
                "variable {var} out of range for {} variables",
                self.nvars
            )));
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[var];
            if k < order {
                continue;
            }
            let falling: i64 = (0..order).map(|t| (k - t) as i64).product();
            let mut ne = e.clone();
            ne[var] = k - order;
            out.add_term(ne, c * &Scalar::from_int(falling));
        }
        Ok(out)
    }

    /// Sum of second derivatives over the listed variables.
    pub fn laplacian(&self, vars: &[usize]) -> Result<MultiPoly, ExactError> {
        let mut out = MultiPoly::zero(self.nvars);
        for &v in vars {
            let d = self.partial(v, 2)?;
            for (e, c) in d.terms {
                out.add_term(e, c);
            }
        }
        Ok(out)
    }

    /// Substitutes `y_i -> images[i]`; all images share one variable count.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly, ExactError> {
        if images.len() != self.nvars {
            return Err(ExactError::Arity(format!(
                "{} images for a polynomial in {} variables",
                images.len(),
                self.nvars
            )));
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => 0,
        };
        if images.iter().any(|p| p.nvars != target) {
            return Err(ExactError::Arity("images live in different rings".into()));
        }
        let mut max_exp = vec![0u32; self.nvars];
        for e in self.terms.keys() {
            for (m, &k) in max_exp.iter_mut().zip(e) {
                *m = (*m).max(k);
            }
        }
        let powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .zip(&max_exp)
            .map(|(img, &m)| {
                let mut v = Vec::with_capacity(m as usize + 1);
                v.push(MultiPoly::one(target));
                for k in 1..=m as usize {
                    let next = &v[k - 1] * img;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut acc = MultiPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    acc = &acc * &powers[i][k as usize];
                }
            }
            out.absorb(acc);
        }
        Ok(out)
    }

    /// Adds another polynomial of the same arity in place.
    pub fn absorb(&mut self, other: MultiPoly) {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.terms.is_empty() {
            self.terms = other.terms;
            return;
        }
        for (e, c) in other.terms {
            self.add_term(e, c);
        }
    }

    /// `y -> p(M y)` for a square matrix of size `nvars`.
    pub fn subst_linear(&self, m: &RatMatrix) -> Result<MultiPoly, ExactError> {
        if m.rows() != self.nvars || m.cols() != self.nvars {
            return Err(ExactError::Arity(format!(
                "{}x{} substitution for a polynomial in {} variables",
                m.rows(),
                m.cols(),
                self.nvars
            )));
        }
        let images: Vec<MultiPoly> = (0..m.rows()).map(|i| MultiPoly::linear(m.row(i))).collect();
        self.compose(&images)
    }

    /// `y -> p(y - u)`.
    pub fn shift(&self, u: &[Scalar]) -> Result<MultiPoly, ExactError> {
        if u.len() != self.nvars {
            return Err(ExactError::Arity("shift vector length".into()));
        }
        let images: Vec<MultiPoly> = (0..self.nvars)
            .map(|i| {
                let mut p = MultiPoly::var(self.nvars, i);
                p.add_term(vec![0; self.nvars], -&u[i]);
                p
            })
            .collect();
        self.compose(&images)
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, ExactError> {
        if point.len() != self.nvars {
            return Err(ExactError::Arity(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut total = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k as i64).expect("non-negative power");
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Re-indexes variables into a ring of `nvars` variables: `y_i -> y_{map[i]}`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Result<MultiPoly, ExactError> {
        if map.len() != self.nvars || map.iter().any(|&j| j >= nvars) {
            return Err(ExactError::Arity("invalid variable embedding".into()));
        }
        let mut out = MultiPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Groups terms by their exponents on `split_vars`, returning for each
    /// such exponent the coefficient polynomial in the remaining variables
    /// (still expressed in the full ring, with zero exponents on `split_vars`).
    pub fn collect_by(&self, split_vars: &[usize]) -> BTreeMap<Exponents, MultiPoly> {
        let mut out: BTreeMap<Exponents, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Exponents = split_vars.iter().map(|&v| e[v]).collect();
            let mut rest = e.clone();
            for &v in split_vars {
                rest[v] = 0;
            }
            out.entry(key).or_insert_with(|| MultiPoly::zero(self.nvars)).add_term(rest, c.clone());
        }
        out
    }

    /// Formats with the given variable names (`x^2*y`); constants print as coefficients.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }

    /// Monomial key such as `y1^2*y3` (empty for the constant monomial).
    pub fn monomial_key(exps: &[u32], names: &[String]) -> String {
        exps.iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Inverse of [`MultiPoly::monomial_key`].
    pub fn parse_monomial_key(key: &str, names: &[String]) -> Result<Exponents, ExactError> {
        let mut e = vec![0; names.len()];
        if key.is_empty() {
            return Ok(e);
        }
        for factor in key.split('*') {
            let (name, k) = match factor.split_once('^') {
                Some((n, k)) => (n, k.parse::<u32>().map_err(|_| ExactError::Parse(key.into()))?),
                None => (factor, 1),
            };
            let idx = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| ExactError::Parse(format!("unknown variable {name} in {key}")))?;
            e[idx] += k;
        }
        Ok(e)
    }
}

/// Variable names `prefix{offset}`, `prefix{offset+1}`, ...
pub fn var_names(prefix: &str, offset: usize, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{}", i + offset)).collect()
}

struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.poly.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let key = MultiPoly::monomial_key(e, self.names);
            match (key.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{key}")?,
                (false, false) => write!(f, "({c})*{key}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = var_names("y", 1, self.nvars);
        let shown = PolyDisplay { poly: self, names: &names };
        write!(f, "{shown}")
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("arity mismatch in polynomial addition")
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("arity mismatch in polynomial subtraction")
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("arity mismatch in polynomial product")
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

/// Exact `a + b`, `a * b`, or `s * a`.
pub fn poly_combine(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> Result<MultiPoly, ExactError> {
    match op {
        PolyOp::Add => a.try_add(b),
        PolyOp::Mul => a.try_mul(b),
        PolyOp::Scale(s) => Ok(a.scale(&s)),
    }
}

pub fn poly_partial(p: &MultiPoly, var: usize, order: u32) -> Result<MultiPoly, ExactError> {
    p.partial(var, order)
}

pub fn poly_subst_linear(p: &MultiPoly, m: &RatMatrix) -> Result<MultiPoly, ExactError> {
    p.subst_linear(m)
}
