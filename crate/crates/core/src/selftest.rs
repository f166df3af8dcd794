//! The acceptance suite: every criterion as a measured, pass/fail report.

use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chars::{eta, eta_spread, CharacterPoint, Pair};
use crate::components::{local_dimension, sample_seeded, sample_x3, solve_sextic, x3_point, ComponentId};
use crate::error::Error;
use crate::mat2::{lemma_det_residuals, trace_commutator, Mat2, C64};
use crate::reconstruct::{character_of, representation_from_point, AlphaBeta, Representation};
use crate::tap::{compare, tap_closed_form};
use crate::tol::Tolerance;

/// Run parameters for the suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Samples per component for the certification criteria.
    pub count: u64,
    pub tol: Tolerance,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            count: 100,
            tol: Tolerance::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed value of the criterion's main measurement.
    pub measured: f64,
    pub threshold: f64,
    pub seconds: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelftestReport {
    pub config: SelftestConfig,
    pub criteria: Vec<CriterionReport>,
    pub passed: bool,
}

/// `√-7`
fn sqrt_m7() -> C64 {
    C64::new(0.0, 7f64.sqrt())
}

/// Character of the lifted holonomy at `t = (2, 2, 2)`.
pub fn hyperbolic_reference() -> CharacterPoint {
    let r = (1.0 - sqrt_m7()) / 2.0;
    let two = C64::new(2.0, 0.0);
    CharacterPoint::new(two, two, two, r, r, r, (-1.0 - sqrt_m7()) / 2.0)
}

/// The `X3` point over `t = (2, 2, 2)` with the negative-imaginary admissible root.
pub fn hyperbolic_point(tol: &Tolerance) -> crate::Result<CharacterPoint> {
    let two = C64::new(2.0, 0.0);
    let roots = solve_sextic(two, two, two);
    let index = roots
        .iter()
        .enumerate()
        .filter(|(_, b)| b.im < 0.0)
        .map(|(i, _)| i)
        .find(|&i| sample_x3(two, two, two, i, tol).is_ok())
        .ok_or(Error::ExcludedRoot {
            what: "no admissible root with negative imaginary part",
            margin: 0.0,
        })?;
    sample_x3(two, two, two, index, tol)
}

/// A certified sample and its reconstruction.
struct Sample {
    component: ComponentId,
    index: u64,
    point: CharacterPoint,
    rep: Option<(Representation, [f64; 2])>,
    error: Option<String>,
}

fn draw_samples(cfg: &SelftestConfig) -> Vec<Sample> {
    let mut out = Vec::new();
    for c in ComponentId::ALL {
        for index in 0..cfg.count {
            match sample_seeded(c, cfg.seed, index, &cfg.tol) {
                Ok(point) => {
                    let (rep, error) = match representation_from_point(&point, &cfg.tol) {
                        Ok(r) => (Some(r), None),
                        Err(e) => (None, Some(e.to_string())),
                    };
                    out.push(Sample {
                        component: c,
                        index,
                        point,
                        rep,
                        error,
                    });
                }
                Err(e) => out.push(Sample {
                    component: c,
                    index,
                    point: hyperbolic_reference(),
                    rep: None,
                    error: Some(format!("sampling failed: {e}")),
                }),
            }
        }
    }
    out
}

struct Worst {
    value: f64,
    at: String,
    failures: usize,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: 0.0,
            at: String::new(),
            failures: 0,
        }
    }

    fn see(&mut self, value: f64, at: impl FnOnce() -> String) {
        if !(value <= self.value) {
            self.value = value;
            self.at = at();
        }
    }

    fn fail(&mut self, at: impl FnOnce() -> String) {
        self.failures += 1;
        self.value = f64::INFINITY;
        self.at = at();
    }
}

fn report(
    id: u8,
    name: &'static str,
    passed: bool,
    measured: f64,
    threshold: f64,
    started: Instant,
    detail: String,
) -> CriterionReport {
    CriterionReport {
        id,
        name,
        passed,
        measured,
        threshold,
        seconds: started.elapsed().as_secs_f64(),
        detail,
    }
}

/// 1. The hyperbolic point from the sextic at `t = (2, 2, 2)`.
pub fn criterion_hyperbolic(cfg: &SelftestConfig) -> CriterionReport {
    let started = Instant::now();
    let expected = hyperbolic_reference();
    let (passed, err, detail) = match hyperbolic_point(&cfg.tol) {
        Ok(p) => {
            let err = p
                .max_distance(&expected)
                .max((p.t123() - (9.0 + sqrt_m7())).norm());
            let fast = started.elapsed().as_secs_f64() < 1.0;
            (
                err < 1e-9 && fast,
                err,
                format!("beta = {}, r12 = {}, t123 = {}", p.beta, p.r12, p.t123()),
            )
        }
        Err(e) => (false, f64::INFINITY, e.to_string()),
    };
    report(1, "hyperbolic point reproduction", passed, err, 1e-9, started, detail)
}

/// 2. Root multiset of the sextic at `t = (2, 2, 2)` and the exclusions of `beta = 2, 3`.
pub fn criterion_sextic(cfg: &SelftestConfig) -> CriterionReport {
    let started = Instant::now();
    let two = C64::new(2.0, 0.0);
    let roots = solve_sextic(two, two, two);
    let mut expected = vec![
        two,
        two,
        two,
        C64::new(3.0, 0.0),
        (-1.0 + sqrt_m7()) / 2.0,
        (-1.0 - sqrt_m7()) / 2.0,
    ];
    // greedy matching of the multisets
    let mut err: f64 = 0.0;
    for r in &roots {
        let (pos, d) = expected
            .iter()
            .enumerate()
            .map(|(i, e)| (i, (r - e).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        err = err.max(d);
        expected.remove(pos);
    }
    let triple: Vec<&C64> = roots.iter().filter(|r| (*r - two).norm() < 1e-7).collect();
    let clustered = triple.len() == 3 && triple.iter().all(|r| **r == *triple[0]);
    let excluded = [2.0, 3.0]
        .iter()
        .all(|&b| matches!(x3_point(two, two, two, C64::new(b, 0.0), &cfg.tol), Err(Error::ExcludedRoot { .. })));
    report(
        2,
        "sextic factorization at t = (2,2,2)",
        roots.len() == 6 && err < 1e-7 && clustered && excluded,
        err,
        1e-7,
        started,
        format!("triple root clustered: {clustered}; beta = 2, 3 excluded: {excluded}"),
    )
}

/// 3. Relator residuals and character round trip for every sample.
fn criterion_relators(samples: &[Sample], started: Instant) -> CriterionReport {
    let mut worst = Worst::new();
    for s in samples {
        let at = || format!("{} #{}", s.component, s.index);
        match &s.rep {
            Some((rep, res)) => {
                let round_trip = character_of(rep).max_distance(&s.point);
                worst.see(res[0].max(res[1]).max(round_trip), at);
            }
            None => worst.fail(|| format!("{}: {}", at(), s.error.as_deref().unwrap_or(""))),
        }
    }
    let fast = started.elapsed().as_secs_f64() < 30.0;
    report(
        3,
        "relator certification on all nine components",
        worst.failures == 0 && worst.value < 1e-8 && fast,
        worst.value,
        1e-8,
        started,
        format!("{} samples, worst at {}", samples.len(), worst.at),
    )
}

/// Absolute residuals of the trace equations at a point and its reconstruction.
pub fn trace_equation_residuals(p: &CharacterPoint, rep: &Representation) -> [(&'static str, f64); 6] {
    let AlphaBeta { alpha, beta } = AlphaBeta::of_point(p);
    let (t1, t2, t3, r12) = (p.t1, p.t2, p.t3, p.r12);
    [
        ("(r12^2 - 1) alpha = (t1 - t2 r12) beta", ((r12 * r12 - 1.0) * alpha - (t1 - t2 * r12) * beta).norm()),
        ("(t1 r12 - t2) alpha + r12 beta = t3", ((t1 * r12 - t2) * alpha + r12 * beta - t3).norm()),
        ("alpha^2 + t1 alpha beta + beta^2 = 1", AlphaBeta::of_point(p).det_residual(t1).norm()),
        ("r13 = r12 alpha + t2 beta", (p.r13 - (r12 * alpha + t2 * beta)).norm()),
        ("tr(x2^-1 x3) = -alpha", ((rep.x2.adjugate() * rep.x3).trace() + alpha).norm()),
        ("tr(x1 x2 x3) = t1 t2 t3 - 2 beta", ((rep.x1 * rep.x2 * rep.x3).trace() - p.t123()).norm()),
    ]
}

/// 4. Trace-equation closure.
fn criterion_trace_equations(samples: &[Sample], started: Instant) -> CriterionReport {
    let mut worst = Worst::new();
    for s in samples {
        match &s.rep {
            Some((rep, _)) => {
                for (label, v) in trace_equation_residuals(&s.point, rep) {
                    worst.see(v, || format!("{} #{}: {label}", s.component, s.index));
                }
            }
            None => worst.fail(|| format!("{} #{}: no representation", s.component, s.index)),
        }
    }
    report(
        4,
        "trace-equation closure",
        worst.failures == 0 && worst.value < 1e-8,
        worst.value,
        1e-8,
        started,
        format!("worst at {}", worst.at),
    )
}

/// 5. eta consistency and irreducibility margin.
fn criterion_eta(samples: &[Sample], started: Instant) -> CriterionReport {
    let mut worst = Worst::new();
    let mut min_margin = f64::INFINITY;
    for s in samples {
        if s.error.as_deref().is_some_and(|e| e.starts_with("sampling failed")) {
            worst.fail(|| format!("{} #{}", s.component, s.index));
            continue;
        }
        worst.see(eta_spread(&s.point), || format!("{} #{}", s.component, s.index));
        min_margin = min_margin.min((eta(&s.point, Pair::P23) - 5.0).norm());
    }
    report(
        5,
        "eta consistency and irreducibility",
        worst.failures == 0 && worst.value < 1e-9 && min_margin > 1e-6,
        worst.value,
        1e-9,
        started,
        format!("worst spread at {}; smallest |eta - 5| = {min_margin:e}", worst.at),
    )
}

/// 6. Three-way agreement of the twisted Alexander polynomial.
fn criterion_tap(samples: &[Sample], cfg: &SelftestConfig, started: Instant) -> CriterionReport {
    let mut worst = Worst::new();
    let mut sign_only = 0;
    for s in samples {
        let at = || format!("{} #{}", s.component, s.index);
        let Some((rep, _)) = &s.rep else {
            worst.fail(at);
            continue;
        };
        match compare(rep, cfg.tol.eq_tol) {
            Ok(cmp) if cmp.agree => worst.see(cmp.divisibility_residual, at),
            Ok(cmp) => {
                if cmp.uvw_signed.equal && cmp.fox_signed.equal {
                    sign_only += 1;
                }
                worst.fail(at)
            }
            Err(e) => worst.fail(|| format!("{}: {e}", at())),
        }
    }
    let fast = started.elapsed().as_secs_f64() < 120.0;
    report(
        6,
        "three-way twisted Alexander polynomial agreement",
        worst.failures == 0 && worst.value < 1e-7 && fast,
        worst.value,
        1e-7,
        started,
        format!(
            "{} points, {} failures ({} agree only up to sign), worst at {}",
            samples.len(),
            worst.failures,
            sign_only,
            worst.at
        ),
    )
}

/// 7. Closed form at the hyperbolic point evaluated at `s = (1, 1, 1)`.
pub fn criterion_tap_value(cfg: &SelftestConfig) -> CriterionReport {
    let started = Instant::now();
    let want = -2.0 - 2.0 * sqrt_m7();
    let (err, detail) = match hyperbolic_point(&cfg.tol) {
        Ok(p) => {
            let v = tap_closed_form(&p).eval([C64::new(1.0, 0.0); 3]);
            ((v - want).norm(), format!("value = {v}"))
        }
        Err(e) => (f64::INFINITY, e.to_string()),
    };
    report(7, "closed-form spot value", err < 1e-9, err, 1e-9, started, detail)
}

/// 8. Local dimension 3 on `X3` and 2 elsewhere.
pub fn criterion_dimension(cfg: &SelftestConfig) -> CriterionReport {
    let started = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0;
    for c in ComponentId::ALL {
        for k in 0..10 {
            let seed = cfg.seed.wrapping_add(k);
            let outcome = sample_seeded(c, seed, 0, &cfg.tol).and_then(|p| local_dimension(&p, c, 1e-6));
            checked += 1;
            match outcome {
                Ok(d) if d == c.dimension() => {}
                Ok(d) => bad.push(format!("{c} seed {seed}: dimension {d}")),
                Err(e) => bad.push(format!("{c} seed {seed}: {e}")),
            }
        }
    }
    report(
        8,
        "local dimension probe",
        bad.is_empty(),
        bad.len() as f64,
        0.0,
        started,
        if bad.is_empty() {
            format!("{checked} points")
        } else {
            bad.join("; ")
        },
    )
}

/// 9. Determinant identities and the commutator-trace formula on random matrices.
pub fn criterion_identities(cfg: &SelftestConfig) -> CriterionReport {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let disk = |rng: &mut ChaCha8Rng| {
        C64::from_polar(rng.random::<f64>().sqrt(), std::f64::consts::TAU * rng.random::<f64>())
    };
    let mut lemma: f64 = 0.0;
    let mut formula: f64 = 0.0;
    for _ in 0..1000 {
        let m = Mat2::new(disk(&mut rng), disk(&mut rng), disk(&mut rng), disk(&mut rng));
        let n = Mat2::new(disk(&mut rng), disk(&mut rng), disk(&mut rng), disk(&mut rng));
        lemma = lemma_det_residuals(&m, &n).into_iter().fold(lemma, f64::max);
        // SL(2,C) pair: normalize by a square root of the determinant
        let (dm, dn) = (m.det(), n.det());
        if dm.norm() < 0.1 || dn.norm() < 0.1 {
            continue;
        }
        let (a, b) = (m.scale(dm.sqrt().inv()), n.scale(dn.sqrt().inv()));
        let direct = (a * b * a.adjugate() * b.adjugate()).trace();
        let f = trace_commutator(a.trace(), b.trace(), (a * b).trace());
        formula = formula.max((direct - f).norm());
    }
    report(
        9,
        "matrix identity suite",
        lemma < 1e-12 && formula < 1e-10,
        lemma.max(formula),
        1e-12,
        started,
        format!("lemma residual {lemma:e}, commutator formula {formula:e}"),
    )
}

/// Runs every criterion.
pub fn run(cfg: &SelftestConfig) -> SelftestReport {
    let mut criteria = vec![criterion_hyperbolic(cfg), criterion_sextic(cfg)];
    let started = Instant::now();
    let samples = draw_samples(cfg);
    criteria.push(criterion_relators(&samples, started));
    criteria.push(criterion_trace_equations(&samples, Instant::now()));
    criteria.push(criterion_eta(&samples, Instant::now()));
    criteria.push(criterion_tap(&samples, cfg, Instant::now()));
    criteria.push(criterion_tap_value(cfg));
    criteria.push(criterion_dimension(cfg));
    criteria.push(criterion_identities(cfg));
    SelftestReport {
        config: *cfg,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

impl CriterionReport {
    /// One-line human summary.
    pub fn line(&self) -> String {
        format!(
            "[{}] {}. {} (measured {:.3e}, threshold {:.1e}, {:.2}s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.measured,
            self.threshold,
            self.seconds,
            self.detail
        )
    }
}
