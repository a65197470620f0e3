//! Generator checks: translations, the structure elements `P(x)`, the
//! rotations in `M(c)`, the Hecke formula and the inversion.

use num_traits::ToPrimitive;
use rand::Rng;

use super::{gaussian_fourier, CheckResult, VerifyError};
use crate::exactalg::{MultiPoly, RatMatrix, Scalar};
use crate::jordan::{cone_test, jdet_inv, pmap, AlgebraDescriptor, ConeStatus, Csoi, Frame, JordanElement};
use crate::jrep::{regularity_witness, split_module, Regularity, Representation};
use crate::pluriharm::{is_pluriharmonic, pullback_to_module, y_prime_rotation};
use crate::sample;
use crate::sbdo::{apply_operator, DiffOperator, ExpFunction};

fn show(v: &[Scalar]) -> String {
    format!("[{}]", v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(", "))
}

fn int_weight(m: &Scalar) -> Option<i64> {
    let r = m.to_real()?;
    r.is_integer().then(|| r.to_integer().to_i64()).flatten()
}

fn positive_vec<R: Rng>(rng: &mut R, k: usize) -> Vec<Scalar> {
    (0..k).map(|_| sample::positive_rational(rng, 7, 4)).collect()
}

fn jc_basis(csoi: &Csoi) -> Result<Vec<Vec<Scalar>>, VerifyError> {
    Ok(csoi.subalgebra_bases()?.into_iter().flatten().collect())
}

fn check_operator_frame(d: &DiffOperator, alg: &AlgebraDescriptor) -> Result<(), VerifyError> {
    if alg.gram() != d.gram || alg.frame() != d.frame {
        return Err(VerifyError::Dimension("operator and CSOI use different coordinates".into()));
    }
    Ok(())
}

/// `D (f o t_u) = (D f) o t_u` for `u in J(c)` and polynomial prefactors.
pub fn check_translation_equivariance(
    d: &DiffOperator,
    csoi: &Csoi,
    samples: usize,
    seed: u64,
) -> Result<CheckResult, VerifyError> {
    const ID: &str = "translation_equivariance";
    check_operator_frame(d, &csoi.algebra)?;
    let mut rng = sample::rng(seed);
    let n = d.dim();
    let basis = jc_basis(csoi)?;
    for _ in 0..samples {
        let b = sample::rational_vec(&mut rng, basis.len(), 5, 3);
        let mut u = vec![Scalar::zero(); n];
        for (c, e) in b.iter().zip(&basis) {
            for (x, y) in u.iter_mut().zip(e) {
                *x = &*x + &(c * y);
            }
        }
        let v = sample::rational_vec(&mut rng, n, 5, 3);
        let mut pre = MultiPoly::constant(n, sample::rational(&mut rng, 3, 2));
        for _ in 0..3 {
            let mut e = vec![0u32; n];
            e[rng.gen_range(0..n)] += 1;
            e[rng.gen_range(0..n)] += 1;
            pre.add_term(e, sample::rational(&mut rng, 3, 2));
        }
        let f = ExpFunction::exponential(v.clone(), d.gram.clone(), d.frame).with_prefactor(pre);
        let lhs = apply_operator(d, &f.translate(&u)?)?;
        let rhs = apply_operator(d, &f)?.translate(&u)?;
        if lhs != rhs {
            return Ok(CheckResult::fail(ID, format!("u = {}, v = {}", show(&u), show(&v))));
        }
    }
    Ok(CheckResult::pass(ID).with_detail(format!("{samples} shifts u in J(c)")))
}

/// For `l = P(sum_j a_j c_j)` and `f = f_v`:
/// `psi(l)^{-m} D(f o l^{-1}) = prod_j psi_j(l_j)^{-m_j} (D f) o l^{-1}` on `J(c)`,
/// with `psi(l) = prod_j a_j^{r_j}` and `m_j = m + 2 p_j`.
pub fn check_structure_equivariance(
    d: &DiffOperator,
    csoi: &Csoi,
    degrees: &[usize],
    samples: usize,
    seed: u64,
) -> Result<CheckResult, VerifyError> {
    const ID: &str = "structure_equivariance";
    check_operator_frame(d, &csoi.algebra)?;
    if degrees.len() != csoi.len() {
        return Err(VerifyError::Dimension(format!(
            "{} degrees for a CSOI of length {}",
            degrees.len(),
            csoi.len()
        )));
    }
    let m_scalar = d.params.as_ref().map(|p| p.m.clone()).unwrap_or_else(Scalar::zero);
    let m = int_weight(&m_scalar).ok_or_else(|| VerifyError::NonIntegralWeight(m_scalar.to_string()))?;
    let mut rng = sample::rng(seed);
    let n = d.dim();
    let basis = jc_basis(csoi)?;
    for _ in 0..samples {
        let a = positive_vec(&mut rng, csoi.len());
        let a_inv: Vec<Scalar> = a.iter().map(|x| x.inv().expect("positive")).collect();
        let l_inv = pmap(&csoi.combination(&a_inv));
        let v = sample::rational_vec(&mut rng, n, 5, 3);
        let f = ExpFunction::exponential(v.clone(), d.gram.clone(), d.frame);
        let mut psi = Scalar::one();
        let mut rhs_factor = Scalar::one();
        for ((aj, &rj), &pj) in a.iter().zip(&csoi.ranks).zip(degrees) {
            let psi_j = aj.pow(rj as i64).expect("power");
            psi = &psi * &psi_j;
            rhs_factor = &rhs_factor * &psi_j.pow(-(m + 2 * pj as i64)).expect("nonzero");
        }
        let lhs = apply_operator(d, &f.compose_linear(&l_inv)?)?
            .scale(&psi.pow(-m).expect("nonzero"))
            .restrict(&basis)?;
        let rhs = apply_operator(d, &f)?.compose_linear(&l_inv)?.scale(&rhs_factor).restrict(&basis)?;
        if lhs != rhs {
            return Ok(CheckResult::fail(
                ID,
                format!("l = P(sum a_j c_j) with a = {}, v = {}", show(&a), show(&v)),
            ));
        }
    }
    let weights: Vec<String> = degrees.iter().map(|p| (m + 2 * *p as i64).to_string()).collect();
    Ok(CheckResult::pass(ID)
        .with_detail(format!("{samples} elements P(a_1 c_1 + ..), weights m_j = [{}]", weights.join(", "))))
}

/// Elements of `M(c)` acting trivially on `J(c)`: rotations of the `y'`
/// block for spin factors, diagonal sign conjugations for `Symm(r)`.
fn mc_generators<R: Rng>(alg: &AlgebraDescriptor, rng: &mut R, samples: usize) -> Vec<RatMatrix> {
    match alg {
        AlgebraDescriptor::Spin { n, .. } => {
            (0..samples).map(|_| y_prime_rotation(*n, &sample::rotation(rng, n - 2))).collect()
        }
        AlgebraDescriptor::Symm { r } => {
            (0..*r)
                .map(|flip| {
                    // X -> D X D with D = diag(.., -1 at flip, ..)
                    let idx = crate::jordan::symm_index(*r);
                    let diag: Vec<Scalar> =
                        idx.iter()
                            .map(|&(i, j)| {
                                if (i == flip) != (j == flip) {
                                    Scalar::from_int(-1)
                                } else {
                                    Scalar::one()
                                }
                            })
                            .collect();
                    RatMatrix::diagonal(&diag)
                })
                .collect()
        }
        AlgebraDescriptor::Product { .. } => Vec::new(),
    }
}

/// `D (f o k) = (D f) o k` for `k in M(c)`.
pub fn check_rotation_invariance(
    d: &DiffOperator,
    csoi: &Csoi,
    samples: usize,
    seed: u64,
) -> Result<CheckResult, VerifyError> {
    const ID: &str = "rotation_invariance";
    check_operator_frame(d, &csoi.algebra)?;
    let mut rng = sample::rng(seed);
    let gens = mc_generators(&csoi.algebra, &mut rng, samples);
    for k in &gens {
        let v = sample::rational_vec(&mut rng, d.dim(), 5, 3);
        let f = ExpFunction::exponential(v.clone(), d.gram.clone(), d.frame);
        let lhs = apply_operator(d, &f.compose_linear(k)?)?;
        let rhs = apply_operator(d, &f)?.compose_linear(k)?;
        if lhs != rhs {
            return Ok(CheckResult::fail(ID, format!("k = {k:?}, v = {}", show(&v))));
        }
    }
    Ok(CheckResult::pass(ID).with_detail(format!("{} elements of M(c)", gens.len())))
}

fn quad_form(m: &RatMatrix) -> MultiPoly {
    let n = m.rows();
    let mut p = MultiPoly::zero(n);
    for i in 0..n {
        for j in 0..n {
            if !m.get(i, j).is_zero() {
                let mut e = vec![0; n];
                e[i] += 1;
                e[j] += 1;
                p.add_term(e, m.get(i, j).clone());
            }
        }
    }
    p
}

fn scaled_identity(n: usize, s: Scalar) -> RatMatrix {
    RatMatrix::identity(n).scale(&s)
}

/// Hecke formula at `z = i x`: compares the Gaussian-Fourier transform of
/// `e^{-(x, Q(xi))/2} p(xi)` with `det(x)^{-N/2r} e^{-(x^{-1}, Q(eta))/2} p(i Phi(x^{-1}) eta)`.
pub fn check_hecke_points(
    rep: &Representation,
    csoi: &Csoi,
    q: &MultiPoly,
    frame: Frame,
    xs: &[JordanElement],
) -> Result<Vec<CheckResult>, VerifyError> {
    let n_e = rep.dim_e;
    let r = rep.algebra.rank();
    if !n_e.is_multiple_of(2 * r) {
        return Err(VerifyError::NonIntegralExponent(format!("{n_e}/{}", 2 * r)));
    }
    let k = (n_e / (2 * r)) as i64;
    let p = pullback_to_module(rep, q, frame)?;
    if !is_pluriharmonic(rep, csoi, &p)? {
        return Err(VerifyError::NotPluriharmonic(
            "Delta_E (q o Q o Phi(x)) != 0 for symbolic x in J(c)".into(),
        ));
    }
    xs.iter().map(|x| hecke_at(rep, &p, k, x)).collect()
}

/// `check_hecke` at one point `x`.
pub fn check_hecke(
    rep: &Representation,
    csoi: &Csoi,
    q: &MultiPoly,
    frame: Frame,
    x: &JordanElement,
) -> Result<CheckResult, VerifyError> {
    Ok(check_hecke_points(rep, csoi, q, frame, std::slice::from_ref(x))?.remove(0))
}

fn hecke_at(
    rep: &Representation,
    p: &MultiPoly,
    k: i64,
    x: &JordanElement,
) -> Result<CheckResult, VerifyError> {
    const ID: &str = "hecke";
    if cone_test(x, None)? != ConeStatus::Interior {
        return Err(VerifyError::NotInCone(show(&x.coords)));
    }
    let a = rep.phi_of(x)?;
    let lhs = gaussian_fourier(&a, p)?;
    let (det, inv) = jdet_inv(x);
    let inv = inv.ok_or_else(|| VerifyError::NotInCone(show(&x.coords)))?;
    let phi_inv = rep.phi_of(&inv)?;
    let witness = |what: &str| format!("{what} at x = {}", show(&x.coords));
    // det Phi(x)^{-1/2} = det(x)^{-N/2r}, compared after squaring
    if a.det()? != det.pow(2 * k).expect("power") {
        return Ok(CheckResult::fail(ID, witness("determinant power")));
    }
    if lhs.a_inv != phi_inv {
        return Ok(CheckResult::fail(ID, witness("exponent")));
    }
    let rhs = p.subst_linear(&phi_inv.scale(&Scalar::i()))?;
    if lhs.value != rhs {
        return Ok(CheckResult::fail(ID, witness("polynomial part")));
    }
    Ok(CheckResult::pass(ID))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionOutcome {
    pub result: CheckResult,
    pub weights: Vec<i64>,
    /// Ratio between the computed right side and the printed display
    /// `prod_j det(z_j/i)^{-m_j} 2^{-r.p} (q o Q)(xi)`, when they differ.
    pub display_ratio: Option<Scalar>,
}

/// Inversion check at `z = i t`, `t = sum_j a_j c_j`, with `F_xi(z) = e^{(i/2)(z, Q(xi))}`.
///
/// Left: `pi_m(iota) F_xi = c * int e^{i<xi,eta>} F_eta d eta` with the
/// constant `c` fixed by the Hecke formula for `p = 1`; `D` passes under the
/// integral as `q((i/2) Q(eta))`. Right: `D F_xi` restricted to `J(c)`,
/// followed by the blockwise inversions with weights `m_j = m + 2 p_j`.
pub fn check_inversion(
    rep: &Representation,
    csoi: &Csoi,
    q: &MultiPoly,
    frame: Frame,
    degrees: &[usize],
    samples: usize,
    seed: u64,
) -> Result<InversionOutcome, VerifyError> {
    const ID: &str = "inversion";
    let n_e = rep.dim_e;
    let r = rep.algebra.rank();
    if !n_e.is_multiple_of(2 * r) {
        return Err(VerifyError::NonIntegralWeight(format!("{n_e}/{}", 2 * r)));
    }
    let m = (n_e / (2 * r)) as i64;
    let weights: Vec<i64> = degrees.iter().map(|&p| m + 2 * p as i64).collect();
    if degrees.len() != csoi.len() || csoi.ranks.iter().any(|&rj| rj != 1) {
        return Err(VerifyError::Dimension(
            "inversion check needs one degree per rank-one idempotent".into(),
        ));
    }
    let fail = |w: String| InversionOutcome {
        result: CheckResult::fail(ID, w),
        weights: weights.clone(),
        display_ratio: None,
    };
    match regularity_witness(rep)? {
        Regularity::Regular { .. } => {}
        Regularity::NotRegular { reason } | Regularity::Undecided { reason } => {
            return Ok(fail(format!("NotRegular: {reason}")));
        }
    }
    let split = split_module(rep, csoi)?;
    let alg = &rep.algebra;
    let d = alg.dim();
    let half_i = &Scalar::i() * &Scalar::ratio(1, 2);
    let p_tilde = pullback_to_module(rep, &q.subst_linear(&scaled_identity(d, half_i))?, frame)?;
    let p_plain = pullback_to_module(rep, q, frame)?;
    let qs = rep.qmap_poly();
    let gram = alg.gram();
    let total_p: usize = degrees.iter().sum();

    let mut rng = sample::rng(seed);
    let mut constant: Option<Scalar> = None;
    let mut display_ratio = None;
    for s in 0..samples.max(1) {
        let a = positive_vec(&mut rng, csoi.len());
        let t = csoi.combination(&a);
        let w = |what: &str| format!("{what} at t = sum a_j c_j, a = {}", show(&a));
        let phi_t = rep.phi_of(&t)?;
        let det_phi = phi_t.det()?;
        let Some(root) = det_phi.sqrt_exact() else {
            return Ok(fail(w("irrational det Phi(t)^{1/2}")));
        };
        let it = t.scale(&Scalar::i());
        let det_it = alg.det_coords(&it.coords);
        // c = det(it)^{-m} / ((2 pi)^{-N/2} det Phi(t)^{-1/2}), up to the (2 pi) factor
        let c = &det_it.pow(-m).expect("nonzero") * &root;
        match &constant {
            None => constant = Some(c.clone()),
            Some(c0) if c0 != &c => return Ok(fail(w("Hecke normalization depends on t"))),
            Some(_) => {}
        }
        let g = gaussian_fourier(&phi_t, &p_tilde)?;
        let lhs_poly = g.value.scale(&(&c * &root.inv().expect("nonzero")));
        let lhs_exp = quad_form(&g.a_inv).scale(&Scalar::ratio(-1, 2));

        let mut rhs_const = Scalar::one();
        let mut printed_const = Scalar::from_int(2).pow(-(total_p as i64)).expect("nonzero");
        let mut rhs_exp = MultiPoly::zero(n_e);
        for (j, (aj, &wj)) in a.iter().zip(&weights).enumerate() {
            let det_j = &Scalar::i() * aj;
            rhs_const = &rhs_const * &det_j.pow(-wj).expect("nonzero");
            printed_const = &printed_const * &aj.pow(-wj).expect("nonzero");
            let tj_inv = csoi.idempotents[j].scale(&aj.inv().expect("positive"));
            let pairing = gram.mul_vec(&tj_inv.coords);
            let mut form = MultiPoly::zero(n_e);
            for (coef, qk) in pairing.iter().zip(&qs) {
                form.absorb(qk.scale(coef));
            }
            rhs_exp.absorb(form.subst_linear(&split.projectors[j])?.scale(&Scalar::ratio(-1, 2)));
        }
        let rhs_poly = p_tilde.scale(&rhs_const);
        if lhs_exp != rhs_exp {
            return Ok(fail(w("exponent")));
        }
        if lhs_poly != rhs_poly {
            return Ok(fail(w("polynomial part")));
        }
        if s == 0 {
            let printed = p_plain.scale(&printed_const);
            display_ratio = proportionality(&rhs_poly, &printed).filter(|x| !x.is_one());
        }
    }
    let ws: Vec<String> = weights.iter().map(i64::to_string).collect();
    Ok(InversionOutcome {
        result: CheckResult::pass(ID).with_detail(format!(
            "{} points t in Omega(c), weights m_j = [{}]",
            samples.max(1),
            ws.join(", ")
        )),
        weights,
        display_ratio,
    })
}

/// `s` with `a = s b`, if it exists.
fn proportionality(a: &MultiPoly, b: &MultiPoly) -> Option<Scalar> {
    let (e, c) = b.terms().next()?;
    let s = a.coeff(e).checked_div(c).ok()?;
    (&b.scale(&s) == a).then_some(s)
}
