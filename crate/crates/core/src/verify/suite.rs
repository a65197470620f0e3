//! The verification suite: configuration, ordered checks and the report.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{
    check_hecke_points, check_inversion, check_rotation_invariance, check_structure_equivariance,
    check_translation_equivariance, CheckResult, VerifyError,
};
use crate::exactalg::{MultiPoly, Scalar};
use crate::jordan::{
    diagonal_csoi, jmul, pmap, rank2_csoi, validate_csoi, AlgebraDescriptor, Csoi, Frame, JordanElement,
};
use crate::jrep::{
    build_rep, qmap, qmap_block_identity, regularity_witness, split_module, ModuleVector, Regularity,
    RepSpec, Representation,
};
use crate::pluriharm::{
    block_laplacians, delta_apply, derived_coeffs, paper_coeffs, pluriharmonic_solve, pullback_to_module,
    rank2_symbol, rank2_symbol_basis, Delta, SymbolSpace,
};
use crate::sample;
use crate::sbdo::{frame_consistency, rank2_operator, symbol_to_operator, DiffOperator, OpParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlgebraChoice {
    Spin { n: usize },
    Symm { r: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stages {
    #[default]
    All,
    Hecke,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub algebra: AlgebraChoice,
    pub rep: RepSpec,
    pub p: usize,
    pub samples: usize,
    pub seed: u64,
    /// Replaces the solved coefficient vector.
    pub coeffs: Option<Vec<Scalar>>,
    /// Replaces the symbol altogether (f-basis coordinates for spin factors).
    pub symbol: Option<MultiPoly>,
    pub stages: Stages,
}

impl SuiteConfig {
    pub fn new(algebra: AlgebraChoice, rep: RepSpec, p: usize) -> Self {
        SuiteConfig { algebra, rep, p, samples: 20, seed: 0, coeffs: None, symbol: None, stages: Stages::All }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub algebra: AlgebraChoice,
    pub rep: RepSpec,
    pub dim_e: usize,
    pub rank: usize,
    /// `m = N / (2r)` when integral.
    pub m: Option<usize>,
    pub p: usize,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub nullspace: Option<Vec<Scalar>>,
    pub derived: Vec<Scalar>,
    pub paper: Vec<Scalar>,
    pub used: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: ReportParams,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coefficients: Option<CoeffTable>,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Pretty JSON; timings are never serialized.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let p = &self.params;
        let _ = writeln!(
            s,
            "suite {}  rep {}  dim E {}  rank {}  p {}  seed {}",
            self.suite, p.rep, p.dim_e, p.rank, p.p, p.seed
        );
        if let Some(c) = &self.coefficients {
            let row = |v: &[Scalar]| v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(", ");
            let _ = writeln!(s, "coefficients");
            if let Some(ns) = &c.nullspace {
                let _ = writeln!(s, "  nullspace  [{}]", row(ns));
            }
            let _ = writeln!(s, "  derived    [{}]", row(&c.derived));
            let _ = writeln!(s, "  printed    [{}]", row(&c.paper));
            let _ = writeln!(s, "  used       [{}]", row(&c.used));
        }
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let t = self
                .timings
                .iter()
                .find(|(id, _)| id == &c.id)
                .map(|(_, d)| format!("{:>8.3}s", d.as_secs_f64()))
                .unwrap_or_default();
            let _ = write!(s, "{status}  {:<26}{t}", c.id);
            if let Some(d) = &c.detail {
                let _ = write!(s, "  {d}");
            }
            if let Some(w) = &c.witness {
                let _ = write!(s, "  witness: {w}");
            }
            s.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        let _ = writeln!(s, "{}", if self.passed() { "ALL CHECKS PASSED" } else { "SOME CHECKS FAILED" });
        s
    }
}

struct Context {
    rep: Representation,
    /// CSOI in the representation's coordinates.
    csoi_rep: Csoi,
    /// CSOI in the operator's coordinates.
    csoi_op: Csoi,
    op_algebra: AlgebraDescriptor,
    symbol_frame: Frame,
}

fn setup(config: &SuiteConfig) -> Result<Context, VerifyError> {
    let rep_spec = match (config.algebra, config.rep) {
        (AlgebraChoice::Spin { n }, RepSpec::Clifford { copies, .. }) => RepSpec::Clifford { n, copies },
        (AlgebraChoice::Symm { r }, RepSpec::SymmModule { r: r2, q }) if r == r2 => {
            RepSpec::SymmModule { r, q }
        }
        (a, r) => return Err(VerifyError::Config(format!("representation {r} does not fit algebra {a:?}"))),
    };
    let rep = build_rep(rep_spec).map_err(|e| VerifyError::Config(e.to_string()))?;
    Ok(match config.algebra {
        AlgebraChoice::Spin { n } => Context {
            rep,
            csoi_rep: rank2_csoi(n, Frame::Original)?,
            csoi_op: rank2_csoi(n, Frame::FBasis)?,
            op_algebra: AlgebraDescriptor::spin(n, Frame::FBasis)?,
            symbol_frame: Frame::FBasis,
        },
        AlgebraChoice::Symm { r } => {
            if config.p > 0 && config.symbol.is_none() {
                return Err(VerifyError::Config(
                    "symbol spaces for Symm(r) are only built in for p = 0; pass --symbol".into(),
                ));
            }
            let c = diagonal_csoi(r)?;
            Context {
                op_algebra: rep.algebra.clone(),
                rep,
                csoi_rep: c.clone(),
                csoi_op: c,
                symbol_frame: Frame::Original,
            }
        }
    })
}

struct Runner {
    report: VerificationReport,
}

impl Runner {
    fn run(&mut self, id: &str, f: impl FnOnce() -> Result<CheckResult, VerifyError>) -> bool {
        let start = Instant::now();
        let mut res = f().unwrap_or_else(|e| CheckResult::fail(id, e.to_string()));
        res.id = id.to_string();
        self.report.timings.push((id.to_string(), start.elapsed()));
        let ok = res.passed();
        self.report.checks.push(res);
        ok
    }
}

fn algebra_axioms(
    algs: &[AlgebraDescriptor],
    csois: &[&Csoi],
    samples: usize,
    seed: u64,
) -> Result<CheckResult, VerifyError> {
    let mut rng = sample::rng(seed);
    for alg in algs {
        for _ in 0..samples {
            let x = alg.element(sample::rational_vec(&mut rng, alg.dim(), 4, 3))?;
            let y = alg.element(sample::rational_vec(&mut rng, alg.dim(), 4, 3))?;
            let x2 = x.square();
            if jmul(&x, &jmul(&x2, &y)?)? != jmul(&x2, &jmul(&x, &y)?)? {
                return Ok(CheckResult::fail("", format!("Jordan identity at x = {:?}", x.coords)));
            }
            let px = pmap(&x);
            let pxy = alg.element(px.mul_vec(&y.coords))?;
            if pmap(&pxy) != &(&px * &pmap(&y)) * &px {
                return Ok(CheckResult::fail("", format!("fundamental formula at x = {:?}", x.coords)));
            }
        }
    }
    for c in csois {
        validate_csoi(&c.idempotents)?;
    }
    Ok(CheckResult::pass("").with_detail(format!("{samples} samples per frame")))
}

fn rep_axioms(
    rep: &Representation,
    csoi: &Csoi,
    samples: usize,
    seed: u64,
) -> Result<CheckResult, VerifyError> {
    rep.check_axioms()?;
    let alg = &rep.algebra;
    let mut rng = sample::rng(seed);
    for _ in 0..samples {
        let x = alg.element(sample::rational_vec(&mut rng, alg.dim(), 4, 3))?;
        let y = alg.element(sample::rational_vec(&mut rng, alg.dim(), 4, 3))?;
        let px = pmap(&x);
        let phi_x = rep.phi_of(&x)?;
        let pxy = alg.element(px.mul_vec(&y.coords))?;
        if rep.phi_of(&pxy)? != &(&phi_x * &rep.phi_of(&y)?) * &phi_x {
            return Ok(CheckResult::fail("", format!("Phi(P(x)y) at x = {:?}", x.coords)));
        }
        let xi = ModuleVector::new(sample::rational_vec(&mut rng, rep.dim_e, 4, 3));
        let lhs = qmap(rep, &ModuleVector::new(phi_x.mul_vec(&xi.coords)), None)?;
        let rhs = px.mul_vec(&qmap(rep, &xi, None)?.coords);
        if lhs.coords != rhs {
            return Ok(CheckResult::fail("", format!("Q(Phi(x) xi) at x = {:?}", x.coords)));
        }
        if !qmap_block_identity(rep, csoi, &xi)? {
            return Ok(CheckResult::fail("", format!("c-components of Q at xi = {:?}", xi.coords)));
        }
    }
    split_module(rep, csoi)?;
    Ok(CheckResult::pass("").with_detail(format!("dim E = {}, {samples} samples", rep.dim_e)))
}

pub fn run_suite(config: &SuiteConfig) -> Result<VerificationReport, VerifyError> {
    let ctx = setup(config)?;
    let rep = &ctx.rep;
    let n_e = rep.dim_e;
    let rank = rep.algebra.rank();
    let m = (n_e % (2 * rank) == 0).then_some(n_e / (2 * rank));
    let k = ctx.csoi_rep.len();
    let degrees = vec![config.p; k];
    let samples = config.samples.max(1);
    let seed = config.seed;
    let mut runner = Runner {
        report: VerificationReport {
            suite: match config.stages {
                Stages::All => "verify".into(),
                Stages::Hecke => "hecke".into(),
            },
            params: ReportParams {
                algebra: config.algebra,
                rep: rep.recipe,
                dim_e: n_e,
                rank,
                m,
                p: config.p,
                samples,
                seed,
            },
            coefficients: None,
            checks: Vec::new(),
            notes: Vec::new(),
            timings: Vec::new(),
        },
    };

    // symbol: solve, or take the override
    let split = split_module(rep, &ctx.csoi_rep)?;
    let n1 = split.dims[0];
    let m_sol = Scalar::ratio(n1 as i64, 2);
    let mut solved: Option<Vec<Scalar>> = None;
    let space = match config.algebra {
        AlgebraChoice::Spin { n } => rank2_symbol_basis(n, config.p, config.p)?,
        AlgebraChoice::Symm { .. } => SymbolSpace {
            algebra: rep.algebra.clone(),
            degrees: degrees.clone(),
            basis: vec![MultiPoly::one(rep.algebra.dim())],
        },
    };

    if config.stages == Stages::All {
        let algs: Vec<AlgebraDescriptor> = match config.algebra {
            AlgebraChoice::Spin { .. } => vec![rep.algebra.clone(), ctx.op_algebra.clone()],
            AlgebraChoice::Symm { .. } => vec![rep.algebra.clone()],
        };
        runner.run("algebra_axioms", || {
            algebra_axioms(&algs, &[&ctx.csoi_rep, &ctx.csoi_op], samples, seed ^ 0xa1)
        });
        runner.run("representation_axioms", || rep_axioms(rep, &ctx.csoi_rep, samples, seed ^ 0xa2));
        runner.run("regularity", || {
            Ok(match regularity_witness(rep)? {
                Regularity::Regular { witness } => {
                    CheckResult::pass("").with_detail(format!("Q(xi) = e at xi = {}", show(&witness.coords)))
                }
                Regularity::NotRegular { reason } => CheckResult::fail("", format!("NotRegular: {reason}")),
                Regularity::Undecided { reason } => CheckResult::fail("", format!("Undecided: {reason}")),
            })
        });
        runner.run("symbol_solve", || {
            let sols = pluriharmonic_solve(rep, &ctx.csoi_rep, &space)?;
            if sols.len() != 1 {
                return Ok(CheckResult::fail("", format!("{} independent solutions", sols.len())));
            }
            solved = Some(sols[0].coeffs.clone());
            if let AlgebraChoice::Spin { n } = config.algebra {
                let derived = derived_coeffs(n, &m_sol, config.p)?;
                if derived.coeffs != sols[0].coeffs {
                    return Ok(CheckResult::fail(
                        "",
                        format!(
                            "nullspace {} vs derived recurrence {}",
                            show(&sols[0].coeffs),
                            show(&derived.coeffs)
                        ),
                    ));
                }
                return Ok(CheckResult::pass("").with_detail(format!(
                    "one solution {}, equal to the derived recurrence",
                    show(&sols[0].coeffs)
                )));
            }
            Ok(CheckResult::pass("").with_detail(format!("one solution {}", show(&sols[0].coeffs))))
        });
    }

    let coeffs: Option<Vec<Scalar>> = match (&config.symbol, config.algebra) {
        (Some(_), _) => None,
        (None, AlgebraChoice::Spin { n }) => Some(match (&config.coeffs, &solved) {
            (Some(c), _) => c.clone(),
            (None, Some(s)) => s.clone(),
            (None, None) => derived_coeffs(n, &m_sol, config.p)?.coeffs,
        }),
        (None, AlgebraChoice::Symm { .. }) => Some(vec![Scalar::one()]),
    };
    if let Some(c) = &coeffs {
        if c.len() != config.p + 1 {
            return Err(VerifyError::Config(format!("{} coefficients for p = {}", c.len(), config.p)));
        }
    }
    let q: MultiPoly = match (&config.symbol, config.algebra, &coeffs) {
        (Some(s), _, _) => s.clone(),
        (None, AlgebraChoice::Spin { n }, Some(c)) => rank2_symbol(n, c)?,
        _ => MultiPoly::one(rep.algebra.dim()),
    };
    if q.nvars() != ctx.op_algebra.dim() {
        return Err(VerifyError::Config(format!(
            "symbol in {} variables for an algebra of dimension {}",
            q.nvars(),
            ctx.op_algebra.dim()
        )));
    }
    if let AlgebraChoice::Spin { n } = config.algebra {
        let derived = derived_coeffs(n, &m_sol, config.p)?.coeffs;
        let paper = paper_coeffs(n, &m_sol, config.p)?.coeffs;
        if paper != derived {
            runner.report.notes.push(format!(
                "reference recurrence (j+1)(j+(n-1)/2) a_(j+1) + (p-j)(j+m+p-1) a_j = 0 gives {} for (n, m, p) = ({n}, {m_sol}, {}); the nullspace and the derived recurrence (j+1)(2j+n-2) a_(j+1) + (p-j)(j+m+p-1) a_j = 0 give {}",
                show(&paper),
                config.p,
                show(&derived)
            ));
        }
        runner.report.coefficients = Some(CoeffTable {
            nullspace: solved.clone(),
            derived,
            paper,
            used: coeffs.clone().unwrap_or_default(),
        });
    }

    let op_params =
        OpParams { n: ctx.op_algebra.dim(), m: Scalar::from_int(m.unwrap_or(0) as i64), p: config.p };
    let op: DiffOperator = match (config.algebra, &coeffs, &config.symbol) {
        (AlgebraChoice::Spin { n }, Some(c), None) => {
            let cv = crate::pluriharm::CoeffVector {
                coeffs: c.clone(),
                provenance: if config.coeffs.is_some() || solved.is_none() {
                    crate::pluriharm::Provenance::Recurrence
                } else {
                    crate::pluriharm::Provenance::Nullspace
                },
                convention: None,
                params: crate::pluriharm::CoeffParams { n, n1: Some(n1), m: m_sol.clone(), p: config.p },
            };
            let r2 = rank2_operator(n, &op_params.m, config.p, &cv)?;
            if config.stages == Stages::All {
                runner.run("frame_consistency", || {
                    let mut rng = sample::rng(seed ^ 0xa3);
                    let vs: Vec<Vec<Scalar>> =
                        (0..samples).map(|_| sample::rational_vec(&mut rng, n, 5, 3)).collect();
                    Ok(if frame_consistency(&r2, &vs)? {
                        CheckResult::pass("").with_detail(format!("{samples} directions v"))
                    } else {
                        CheckResult::fail("", "eigenvalues differ between frames")
                    })
                });
            }
            r2.f_basis
        }
        _ => {
            symbol_to_operator(&q, &ctx.op_algebra.gram(), ctx.op_algebra.frame())?.with_meta(op_params, None)
        }
    };

    let p_mod = pullback_to_module(rep, &q, ctx.symbol_frame)?;
    if config.stages == Stages::All {
        if let AlgebraChoice::Spin { n } = config.algebra {
            runner.run("delta_equations", || {
                for (which, nb) in [(Delta::One, split.dims[0]), (Delta::Two, split.dims[1])] {
                    if !delta_apply(which, n, nb, &q)?.is_zero() {
                        return Ok(CheckResult::fail("", format!("{which:?} q != 0")));
                    }
                }
                Ok(CheckResult::pass("")
                    .with_detail(format!("N_1 = {}, N_2 = {}", split.dims[0], split.dims[1])))
            });
        }
        runner.run("pluriharmonicity", || {
            for (j, l) in block_laplacians(rep, &ctx.csoi_rep, &p_mod)?.iter().enumerate() {
                if !l.is_zero() {
                    return Ok(CheckResult::fail(
                        "",
                        format!("Delta_E{} (q o Q) has {} nonzero terms", j + 1, l.len()),
                    ));
                }
            }
            Ok(CheckResult::pass("").with_detail(format!("{k} block Laplacians vanish")))
        });
        runner.run("translation_equivariance", || {
            check_translation_equivariance(&op, &ctx.csoi_op, samples, seed ^ 0xb1)
        });
        runner.run("structure_equivariance", || {
            check_structure_equivariance(&op, &ctx.csoi_op, &degrees, samples, seed ^ 0xb2)
        });
        runner.run("rotation_invariance", || {
            check_rotation_invariance(&op, &ctx.csoi_op, samples.min(4), seed ^ 0xb3)
        });
    }

    let hecke_samples = samples.min(10);
    runner.run("hecke_constant", || {
        let mut rng = sample::rng(seed ^ 0xc1);
        let one = MultiPoly::one(ctx.op_algebra.dim());
        let xs: Vec<JordanElement> =
            (0..hecke_samples).map(|_| sample::cone_point(&mut rng, &rep.algebra)).collect();
        let rs = check_hecke_points(rep, &ctx.csoi_rep, &one, ctx.symbol_frame, &xs)?;
        if let Some(r) = rs.into_iter().find(|r| !r.passed()) {
            return Ok(r);
        }
        Ok(CheckResult::pass("").with_detail(format!("p = 1 at {hecke_samples} points x in Omega")))
    });
    runner.run("hecke_symbol", || {
        let mut rng = sample::rng(seed ^ 0xc2);
        let xs: Vec<JordanElement> = (0..hecke_samples)
            .map(|_| {
                let a: Vec<Scalar> = (0..k).map(|_| sample::positive_rational(&mut rng, 7, 4)).collect();
                ctx.csoi_rep.combination(&a)
            })
            .collect();
        match check_hecke_points(rep, &ctx.csoi_rep, &q, ctx.symbol_frame, &xs) {
            Ok(rs) => {
                if let Some(r) = rs.into_iter().find(|r| !r.passed()) {
                    return Ok(r);
                }
            }
            Err(VerifyError::NotPluriharmonic(w)) => {
                return Ok(CheckResult::fail("", format!("NotPluriharmonic: {w}")))
            }
            Err(e) => return Err(e),
        }
        Ok(CheckResult::pass("").with_detail(format!("q at {hecke_samples} points x in Omega(c)")))
    });

    if config.stages == Stages::All {
        let mut ratio = None;
        runner.run("inversion", || {
            let out = check_inversion(
                rep,
                &ctx.csoi_rep,
                &q,
                ctx.symbol_frame,
                &degrees,
                samples.min(5),
                seed ^ 0xd1,
            )?;
            ratio = out.display_ratio;
            Ok(out.result)
        });
        if let Some(r) = ratio {
            runner.report.notes.push(format!(
                "inversion: the computed right side equals {r} times the printed display prod_j det(z_j/i)^(-m_j) 2^(-r.p) (q o Q)(xi) at z = i t"
            ));
        }
    }
    Ok(runner.report)
}

fn show(v: &[Scalar]) -> String {
    format!("[{}]", v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(", "))
}
