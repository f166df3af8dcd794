//! The nine irreducible components of the character variety: samplers,
//! membership reports and local dimension probes.
//!
//! Components:
//! - `X1.i±` (`i = 1, 2, 3`): `t_{i+1} = ±t_{i-1}`, `beta = ±t_i`, `r_{i-1,i+1} = ±1`,
//!   `r_{i-1,i} = t_{i-1} t_i ∓ r_{i,i+1}`, `r_{i,i+1}^2 - t_i t_{i+1} r_{i,i+1} + t_i^2 = 1`.
//! - `X2±`: `beta = ±√2`, `sigma1 - 2 = t1 t2 t3 beta`, `eta` a root of
//!   `eta^2 - (sigma1 + 2) eta + sigma2 + 4`, and each `r_ij` a rational function of `eta`.
//! - `X3`: `beta` a root of a sextic in the traces, `r_ij` rational in `beta`.
//!
//! Indices are cyclic mod 3 and written 1-based.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chars::{eta, eta_spread, CharacterPoint, Pair, SigmaTriple};
use crate::error::{Error, Result};
use crate::mat2::C64;
use crate::roots::{monic_roots, quadratic_roots};
use crate::tol::Tolerance;

/// Radius of the disk trace parameters are drawn from.
pub const SAMPLE_RADIUS: f64 = 3.0;

/// Draws per sample before giving up.
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Label of one of the nine components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ComponentId {
    X1 { index: u8, sign: Sign },
    X2 { sign: Sign },
    X3,
}

impl ComponentId {
    pub const ALL: [ComponentId; 9] = [
        ComponentId::X1 { index: 1, sign: Sign::Plus },
        ComponentId::X1 { index: 1, sign: Sign::Minus },
        ComponentId::X1 { index: 2, sign: Sign::Plus },
        ComponentId::X1 { index: 2, sign: Sign::Minus },
        ComponentId::X1 { index: 3, sign: Sign::Plus },
        ComponentId::X1 { index: 3, sign: Sign::Minus },
        ComponentId::X2 { sign: Sign::Plus },
        ComponentId::X2 { sign: Sign::Minus },
        ComponentId::X3,
    ];

    /// Position in [`ComponentId::ALL`].
    pub fn ordinal(self) -> usize {
        ComponentId::ALL.iter().position(|&c| c == self).unwrap()
    }

    /// Expected dimension of the component.
    pub fn dimension(self) -> usize {
        match self {
            ComponentId::X3 => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentId::X1 { index, sign } => write!(f, "X1.{index}{}", sign.symbol()),
            ComponentId::X2 { sign } => write!(f, "X2{}", sign.symbol()),
            ComponentId::X3 => f.write_str("X3"),
        }
    }
}

impl FromStr for ComponentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ComponentId::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::InvalidComponent(s.to_string()))
    }
}

impl From<ComponentId> for String {
    fn from(c: ComponentId) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for ComponentId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A labelled nonnegative number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Labelled {
    pub label: String,
    pub value: f64,
}

/// Outcome of testing a point against one component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub component: ComponentId,
    /// Scaled residuals of the defining equations.
    pub equation_residuals: Vec<Labelled>,
    /// Absolute values of the excluded expressions.
    pub inequation_margins: Vec<Labelled>,
    pub verdict: bool,
}

impl MembershipReport {
    /// Labels of equations at or above `eq_tol` and margins at or below `margin_tol`.
    pub fn failures(&self, tol: &Tolerance) -> Vec<&str> {
        let eqs = self
            .equation_residuals
            .iter()
            .filter(|r| !(r.value < tol.eq_tol))
            .map(|r| r.label.as_str());
        let ineqs = self
            .inequation_margins
            .iter()
            .filter(|m| !(m.value > tol.margin_tol))
            .map(|m| m.label.as_str());
        eqs.chain(ineqs).collect()
    }
}

fn next(i: usize) -> usize {
    i % 3 + 1
}

fn prev(i: usize) -> usize {
    (i + 1) % 3 + 1
}

/// Residual of `sum(terms) = 0`, scaled by `max(1, sum |term|)` so that it is
/// comparable across points of very different magnitude.
fn scaled(terms: &[C64]) -> f64 {
    let sum: C64 = terms.iter().sum();
    let scale: f64 = terms.iter().map(|t| t.norm()).sum();
    sum.norm() / scale.max(1.0)
}

fn checked_branch(index: usize, count: usize) -> Result<()> {
    if index >= count {
        return Err(Error::BranchOutOfRange { index, count });
    }
    Ok(())
}

/// A point on `X1.i±` from `t_i`, `t_{i+1}` and a root choice for `r_{i,i+1}`.
pub fn sample_x1(
    i: usize,
    sign: Sign,
    ti: C64,
    t_next: C64,
    branch: usize,
    tol: &Tolerance,
) -> Result<CharacterPoint> {
    assert!((1..=3).contains(&i), "component index {i} out of range");
    checked_branch(branch, 2)?;
    let k = sign.value();
    let margin = (t_next * t_next - 3.0).norm();
    if margin <= tol.margin_tol {
        return Err(Error::ExcludedTrace { margin });
    }
    let (j, h) = (next(i), prev(i));
    let t_prev = t_next * k;
    let r_ij = quadratic_roots(-ti * t_next, ti * ti - 1.0)[branch];

    let zero = C64::new(0.0, 0.0);
    let mut p = CharacterPoint::new(zero, zero, zero, zero, zero, zero, ti * k);
    p.set_t(i, ti);
    p.set_t(j, t_next);
    p.set_t(h, t_prev);
    p.set_r(h, j, C64::new(k, 0.0));
    p.set_r(i, j, r_ij);
    p.set_r(h, i, t_prev * ti - r_ij * k);
    Ok(p)
}

/// Denominators `t_k beta - t_i t_j` of the X2 formulas, labelled by the pair `ij`.
fn x2_denominators(p: &CharacterPoint) -> [(Pair, C64); 3] {
    let b = p.beta;
    [
        (Pair::P12, p.t3 * b - p.t1 * p.t2),
        (Pair::P13, p.t2 * b - p.t1 * p.t3),
        (Pair::P23, p.t1 * b - p.t2 * p.t3),
    ]
}

/// A point on `X2±` from `t1`, `t2` and root choices for `t3` and `eta`.
pub fn sample_x2(
    sign: Sign,
    t1: C64,
    t2: C64,
    t3_branch: usize,
    eta_branch: usize,
    tol: &Tolerance,
) -> Result<CharacterPoint> {
    checked_branch(t3_branch, 2)?;
    checked_branch(eta_branch, 2)?;
    let beta = C64::new(sign.value() * SQRT_2, 0.0);
    let t3 = quadratic_roots(-t1 * t2 * beta, t1 * t1 + t2 * t2 - 2.0)[t3_branch];
    let s = SigmaTriple::from_traces(t1, t2, t3);
    let eta = quadratic_roots(-(s.sigma1 + 2.0), s.sigma2 + 4.0)[eta_branch];

    let zero = C64::new(0.0, 0.0);
    let mut p = CharacterPoint::new(t1, t2, t3, zero, zero, zero, beta);
    for (pair, den) in x2_denominators(&p) {
        let margin = den.norm();
        if margin <= tol.margin_tol {
            return Err(Error::DegenerateInput {
                what: "X2 denominator",
                margin,
            });
        }
        let (a, b) = match pair {
            Pair::P12 => (t1, t2),
            Pair::P13 => (t1, t3),
            Pair::P23 => (t2, t3),
        };
        let r = (eta - a * a - b * b) / den;
        match pair {
            Pair::P12 => p.r12 = r,
            Pair::P13 => p.r13 = r,
            Pair::P23 => p.r23 = r,
        }
    }
    let margin = (eta - 5.0).norm();
    if margin <= tol.margin_tol {
        return Err(Error::DegenerateInput {
            what: "eta - 5",
            margin,
        });
    }
    Ok(p)
}

/// Ascending coefficients of the sextic in `beta` cutting out `X3`.
pub fn sextic_coefficients(t1: C64, t2: C64, t3: C64) -> [C64; 7] {
    let SigmaTriple {
        sigma1: s1,
        sigma2: s2,
        sigma3: s3,
    } = SigmaTriple::from_traces(t1, t2, t3);
    let t = t1 * t2 * t3;
    [
        4.0 * s2 - s1 * s1,
        -8.0 * t,
        s1 * s1 + s3 - 4.0 * s2 + 2.0 * s1,
        (8.0 - s1) * t,
        s2 - 2.0 * s1 - 1.0,
        -t,
        C64::new(1.0, 0.0),
    ]
}

/// The six roots in `beta` (with multiplicity, sorted lexicographically).
pub fn solve_sextic(t1: C64, t2: C64, t3: C64) -> Vec<C64> {
    monic_roots(&sextic_coefficients(t1, t2, t3))
}

/// Numerator of `r_ij` on `X3`, where `k` is the remaining index.
fn x3_numerator(ti: C64, tj: C64, tk: C64, beta: C64, sigma1: C64) -> [C64; 4] {
    let b2 = beta * beta;
    [
        ti * tj * b2 * beta,
        (1.0 - ti * ti - tj * tj) * tk * b2,
        (tk * tk - 2.0) * ti * tj * beta,
        (sigma1 - 2.0 * tk * tk) * tk,
    ]
}

/// `(beta^2 - 2, beta^3 - sigma1 beta + 2 t1 t2 t3, 2 beta^2 - t1 t2 t3 beta + sigma1 - 6)`.
fn x3_exclusions(t1: C64, t2: C64, t3: C64, beta: C64) -> [(&'static str, C64); 3] {
    let s1 = SigmaTriple::from_traces(t1, t2, t3).sigma1;
    let t = t1 * t2 * t3;
    [
        ("beta^2 - 2", beta * beta - 2.0),
        ("beta^3 - sigma1 beta + 2 t1 t2 t3", beta * beta * beta - s1 * beta + 2.0 * t),
        ("2 beta^2 - t1 t2 t3 beta + sigma1 - 6", 2.0 * beta * beta - t * beta + s1 - 6.0),
    ]
}

/// A point on `X3` over the traces `(t1, t2, t3)`, using sextic root `root_index`.
pub fn sample_x3(
    t1: C64,
    t2: C64,
    t3: C64,
    root_index: usize,
    tol: &Tolerance,
) -> Result<CharacterPoint> {
    let roots = solve_sextic(t1, t2, t3);
    checked_branch(root_index, roots.len())?;
    x3_point(t1, t2, t3, roots[root_index], tol)
}

/// The `X3` point over `(t1, t2, t3)` with the given sextic root `beta`.
pub fn x3_point(t1: C64, t2: C64, t3: C64, beta: C64, tol: &Tolerance) -> Result<CharacterPoint> {
    for (what, value) in x3_exclusions(t1, t2, t3, beta) {
        let margin = value.norm();
        if margin <= tol.margin_tol {
            return Err(Error::ExcludedRoot { what, margin });
        }
    }
    let s1 = SigmaTriple::from_traces(t1, t2, t3).sigma1;
    let den = x3_exclusions(t1, t2, t3, beta)[1].1;
    let r = |ti, tj, tk| x3_numerator(ti, tj, tk, beta, s1).iter().sum::<C64>() / den;
    Ok(CharacterPoint::new(
        t1,
        t2,
        t3,
        r(t1, t2, t3),
        r(t1, t3, t2),
        r(t2, t3, t1),
        beta,
    ))
}

fn labelled(label: impl Into<String>, value: f64) -> Labelled {
    Labelled {
        label: label.into(),
        value,
    }
}

/// Evaluates every defining equation and exclusion of `c` at `p`.
///
/// Equation residuals are scaled by the size of their terms (see the crate
/// README); margins are plain absolute values.
pub fn membership(p: &CharacterPoint, c: ComponentId, tol: &Tolerance) -> MembershipReport {
    let mut eqs = Vec::new();
    let mut ineqs = Vec::new();
    let eta_scale = eta(p, Pair::P23).norm().max(1.0);
    eqs.push(labelled("eta consistency", eta_spread(p) / eta_scale));

    match c {
        ComponentId::X1 { index, sign } => {
            let i = index as usize;
            let (j, h) = (next(i), prev(i));
            let k = sign.value();
            let (ti, tj, th) = (p.t(i), p.t(j), p.t(h));
            let (r_ij, r_hj, r_hi) = (p.r(i, j), p.r(h, j), p.r(h, i));
            eqs.push(labelled(format!("t{j} = ±t{h}"), scaled(&[tj, -th * k])));
            eqs.push(labelled(format!("beta = ±t{i}"), scaled(&[p.beta, -ti * k])));
            eqs.push(labelled(
                format!("r{}{} = ±1", h.min(j), h.max(j)),
                scaled(&[r_hj, C64::new(-k, 0.0)]),
            ));
            eqs.push(labelled(
                format!("r{}{} = t{h} t{i} ∓ r{}{}", h.min(i), h.max(i), i.min(j), i.max(j)),
                scaled(&[r_hi, -th * ti, r_ij * k]),
            ));
            eqs.push(labelled(
                format!("r{}{} quadratic", i.min(j), i.max(j)),
                scaled(&[r_ij * r_ij, -ti * tj * r_ij, ti * ti, C64::new(-1.0, 0.0)]),
            ));
            ineqs.push(labelled(format!("t{j}^2 - 3"), (tj * tj - 3.0).norm()));
        }
        ComponentId::X2 { sign } => {
            let beta0 = C64::new(sign.value() * SQRT_2, 0.0);
            let e = eta(p, Pair::P23);
            let (t1, t2, t3, b) = (p.t1, p.t2, p.t3, p.beta);
            let s = p.sigma();
            eqs.push(labelled("beta = ±√2", scaled(&[b, -beta0])));
            eqs.push(labelled(
                "sigma1 - 2 = t1 t2 t3 beta",
                scaled(&[t1 * t1, t2 * t2, t3 * t3, C64::new(-2.0, 0.0), -t1 * t2 * t3 * b]),
            ));
            eqs.push(labelled(
                "eta quadratic",
                scaled(&[e * e, -(s.sigma1 + 2.0) * e, s.sigma2, C64::new(4.0, 0.0)]),
            ));
            for (pair, den) in x2_denominators(p) {
                let (name, r, a, bb) = match pair {
                    Pair::P12 => ("r12 formula", p.r12, t1, t2),
                    Pair::P13 => ("r13 formula", p.r13, t1, t3),
                    Pair::P23 => ("r23 formula", p.r23, t2, t3),
                };
                eqs.push(labelled(name, scaled(&[r * den, -e, a * a, bb * bb])));
            }
            for (pair, den) in x2_denominators(p) {
                let name = match pair {
                    Pair::P12 => "t3 beta - t1 t2",
                    Pair::P13 => "t2 beta - t1 t3",
                    Pair::P23 => "t1 beta - t2 t3",
                };
                ineqs.push(labelled(name, den.norm()));
            }
            ineqs.push(labelled("eta - 5", (e - 5.0).norm()));
        }
        ComponentId::X3 => {
            let (t1, t2, t3, b) = (p.t1, p.t2, p.t3, p.beta);
            let coeffs = sextic_coefficients(t1, t2, t3);
            let mut power = C64::new(1.0, 0.0);
            let mut terms = Vec::with_capacity(7);
            for c in coeffs {
                terms.push(c * power);
                power *= b;
            }
            eqs.push(labelled("sextic", scaled(&terms)));
            let s1 = p.sigma().sigma1;
            let den = x3_exclusions(t1, t2, t3, b)[1].1;
            for (name, r, ti, tj, tk) in [
                ("r12 formula", p.r12, t1, t2, t3),
                ("r13 formula", p.r13, t1, t3, t2),
                ("r23 formula", p.r23, t2, t3, t1),
            ] {
                let mut terms = vec![r * den];
                terms.extend(x3_numerator(ti, tj, tk, b, s1).map(|x| -x));
                eqs.push(labelled(name, scaled(&terms)));
            }
            for (what, value) in x3_exclusions(t1, t2, t3, b) {
                ineqs.push(labelled(what, value.norm()));
            }
        }
    }

    let verdict = eqs.iter().all(|r| r.value < tol.eq_tol)
        && ineqs.iter().all(|m| m.value > tol.margin_tol);
    MembershipReport {
        component: c,
        equation_residuals: eqs,
        inequation_margins: ineqs,
        verdict,
    }
}

/// All components whose membership verdict is true.
pub fn classify(p: &CharacterPoint, tol: &Tolerance) -> Vec<ComponentId> {
    ComponentId::ALL
        .into_iter()
        .filter(|&c| membership(p, c, tol).verdict)
        .collect()
}

type System = Box<dyn Fn(&[C64]) -> Vec<C64>>;

/// Natural chart of a component: coordinates and the defining system in them.
struct Chart {
    coords: Vec<C64>,
    system: System,
}

fn chart(p: &CharacterPoint, c: ComponentId) -> Chart {
    match c {
        ComponentId::X3 => Chart {
            coords: vec![p.t1, p.t2, p.t3, p.beta],
            system: Box::new(|z: &[C64]| {
                let coeffs = sextic_coefficients(z[0], z[1], z[2]);
                vec![crate::roots::eval(&coeffs, z[3])]
            }),
        },
        ComponentId::X2 { sign } => {
            let beta = sign.value() * SQRT_2;
            Chart {
                coords: vec![p.t1, p.t2, p.t3, eta(p, Pair::P23)],
                system: Box::new(move |z: &[C64]| {
                    let s = SigmaTriple::from_traces(z[0], z[1], z[2]);
                    let e = z[3];
                    vec![
                        s.sigma1 - 2.0 - z[0] * z[1] * z[2] * beta,
                        e * e - (s.sigma1 + 2.0) * e + s.sigma2 + 4.0,
                    ]
                }),
            }
        }
        ComponentId::X1 { index, .. } => {
            let i = index as usize;
            let j = next(i);
            Chart {
                coords: vec![p.t(i), p.t(j), p.r(i, j)],
                system: Box::new(|z: &[C64]| {
                    vec![z[2] * z[2] - z[0] * z[1] * z[2] + z[0] * z[0] - 1.0]
                }),
            }
        }
    }
}

/// Complex Jacobian of `f` at `z` by central differences.
fn jacobian(f: &dyn Fn(&[C64]) -> Vec<C64>, z: &[C64], h: f64) -> DMatrix<C64> {
    let m = f(z).len();
    let n = z.len();
    let mut jac = DMatrix::zeros(m, n);
    let mut zp = z.to_vec();
    let mut zm = z.to_vec();
    for col in 0..n {
        zp[col] = z[col] + h;
        zm[col] = z[col] - h;
        let (fp, fm) = (f(&zp), f(&zm));
        for row in 0..m {
            jac[(row, col)] = (fp[row] - fm[row]) / (2.0 * h);
        }
        zp[col] = z[col];
        zm[col] = z[col];
    }
    jac
}

/// Relative singular-value threshold for numerical rank.
pub const RANK_RTOL: f64 = 1e-4;

/// Local dimension of component `c` at `p`: chart dimension minus the
/// numerical rank of the defining system's Jacobian.
///
/// `p` is expected to lie on `c`; this is not rechecked.
pub fn local_dimension(p: &CharacterPoint, c: ComponentId, h: f64) -> Result<usize> {
    let Chart { coords, system } = chart(p, c);
    let jac = jacobian(system.as_ref(), &coords, h);
    let sv = jac.svd(false, false).singular_values;
    let largest = sv.iter().copied().fold(0.0, f64::max);
    let threshold = RANK_RTOL * largest;
    let mut rank = 0;
    for &s in sv.iter() {
        if s > threshold / 10.0 && s < threshold * 10.0 {
            return Err(Error::RankAmbiguous { value: s, threshold });
        }
        if s > threshold && largest > 0.0 {
            rank += 1;
        }
    }
    Ok(coords.len() - rank)
}

/// Uniform draw from the disk `|z| < SAMPLE_RADIUS`.
fn draw_trace<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let radius = SAMPLE_RADIUS * rng.random::<f64>().sqrt();
    C64::from_polar(radius, 2.0 * PI * rng.random::<f64>())
}

/// Draws a random point on `c`, rejecting draws that violate a sampler precondition.
pub fn sample_random<R: Rng + ?Sized>(
    c: ComponentId,
    rng: &mut R,
    tol: &Tolerance,
) -> Result<CharacterPoint> {
    for _ in 0..MAX_ATTEMPTS {
        let attempt = match c {
            ComponentId::X1 { index, sign } => {
                let (ti, tn) = (draw_trace(rng), draw_trace(rng));
                sample_x1(index as usize, sign, ti, tn, rng.random_range(0..2), tol)
            }
            ComponentId::X2 { sign } => {
                let (t1, t2) = (draw_trace(rng), draw_trace(rng));
                let (b3, be) = (rng.random_range(0..2), rng.random_range(0..2));
                sample_x2(sign, t1, t2, b3, be, tol)
            }
            ComponentId::X3 => {
                let (t1, t2, t3) = (draw_trace(rng), draw_trace(rng), draw_trace(rng));
                sample_x3(t1, t2, t3, rng.random_range(0..6), tol)
            }
        };
        match attempt {
            Ok(p) => return Ok(p),
            Err(Error::ExcludedTrace { .. })
            | Err(Error::DegenerateInput { .. })
            | Err(Error::ExcludedRoot { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingExhausted {
        component: c.to_string(),
        attempts: MAX_ATTEMPTS,
    })
}

/// The generator behind sample `index` of run `seed`: ChaCha8 seeded with
/// `seed` (via `seed_from_u64`) on stream `index`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Sample `index` of run `seed` on component `c`.
pub fn sample_seeded(c: ComponentId, seed: u64, index: u64, tol: &Tolerance) -> Result<CharacterPoint> {
    sample_random(c, &mut sample_rng(seed, index), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::rotate;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn real(x: f64) -> C64 {
        c(x, 0.0)
    }

    fn hyperbolic() -> CharacterPoint {
        let s7 = c(0.0, 7f64.sqrt());
        let r = (1.0 - s7) / 2.0;
        CharacterPoint::new(real(2.0), real(2.0), real(2.0), r, r, r, (-1.0 - s7) / 2.0)
    }

    #[test]
    fn id_strings_round_trip() {
        let names: Vec<String> = ComponentId::ALL.iter().map(|c| c.to_string()).collect();
        assert_eq!(
            names,
            ["X1.1+", "X1.1-", "X1.2+", "X1.2-", "X1.3+", "X1.3-", "X2+", "X2-", "X3"]
        );
        for c in ComponentId::ALL {
            assert_eq!(c.to_string().parse::<ComponentId>(), Ok(c));
            let json = serde_json::to_string(&c).unwrap();
            assert_eq!(serde_json::from_str::<ComponentId>(&json).unwrap(), c);
        }
        assert!("X4".parse::<ComponentId>().is_err());
        assert!("X1.4+".parse::<ComponentId>().is_err());
    }

    #[test]
    fn x1_example() {
        let tol = Tolerance::default();
        let p = sample_x1(1, Sign::Plus, real(1.0), real(0.0), 0, &tol).unwrap();
        let want = CharacterPoint::new(
            real(1.0),
            real(0.0),
            real(0.0),
            real(0.0),
            real(0.0),
            real(1.0),
            real(1.0),
        );
        assert!(p.max_distance(&want) < 1e-15, "{p:?}");
        // alpha = -r23 = -1, beta = 1 in the trace equations
        let (alpha, beta) = (-p.r23, p.beta);
        assert!(((p.r12 * p.r12 - 1.0) * alpha - (p.t1 - p.t2 * p.r12) * beta).norm() < 1e-15);
        assert!(((p.t1 * p.r12 - p.t2) * alpha + p.r12 * beta - p.t3).norm() < 1e-15);
        assert!((alpha * alpha + p.t1 * alpha * beta + beta * beta - 1.0).norm() < 1e-15);
        let report = membership(&p, ComponentId::X1 { index: 1, sign: Sign::Plus }, &tol);
        assert!(report.verdict, "{report:?}");
    }

    #[test]
    fn x1_quadratic_branch() {
        let tol = Tolerance::default();
        let p = sample_x1(1, Sign::Plus, real(0.0), real(0.0), 0, &tol).unwrap();
        // r12^2 = 1, lexicographically first root is -1, second is 1
        assert_eq!(p.r12, real(-1.0));
        let q = sample_x1(1, Sign::Plus, real(0.0), real(0.0), 1, &tol).unwrap();
        assert_eq!(q.r12, real(1.0));
    }

    #[test]
    fn x1_excluded_trace() {
        let tol = Tolerance::default();
        let err = sample_x1(1, Sign::Plus, real(1.0), real(3f64.sqrt()), 0, &tol);
        assert!(matches!(err, Err(Error::ExcludedTrace { .. })));
        let err = sample_x1(2, Sign::Minus, real(1.0), real(-3f64.sqrt()), 1, &tol);
        assert!(matches!(err, Err(Error::ExcludedTrace { .. })));
    }

    #[test]
    fn x2_example() {
        let tol = Tolerance::default();
        let p = sample_x2(Sign::Plus, real(1.0), real(0.0), 1, 1, &tol).unwrap();
        let s2 = SQRT_2;
        let w = c(1.0 / s2, 1.0 / s2);
        let want = CharacterPoint::new(real(1.0), real(0.0), real(1.0), w, c(0.0, -1.0), w, real(s2));
        assert!(p.max_distance(&want) < 1e-14, "{p:?}");
        assert!((eta(&p, Pair::P23) - c(2.0, 1.0)).norm() < 1e-14);
        let report = membership(&p, ComponentId::X2 { sign: Sign::Plus }, &tol);
        assert!(report.verdict, "{report:?}");
    }

    #[test]
    fn x2_degenerate_denominator() {
        let tol = Tolerance::default();
        for t3b in 0..2 {
            let err = sample_x2(Sign::Plus, real(0.0), real(0.0), t3b, 0, &tol);
            assert!(matches!(err, Err(Error::DegenerateInput { .. })), "{err:?}");
        }
    }

    #[test]
    fn sextic_at_hyperbolic_traces() {
        let two = real(2.0);
        let roots = solve_sextic(two, two, two);
        let s7 = 7f64.sqrt();
        let want = [c(-0.5, -s7 / 2.0), c(-0.5, s7 / 2.0), two, two, two, real(3.0)];
        assert_eq!(roots.len(), 6);
        for (r, w) in roots.iter().zip(want.iter()) {
            assert!((r - w).norm() < 1e-7, "{r} vs {w}");
        }
        assert_eq!(roots[2], roots[3]);
        assert_eq!(roots[3], roots[4]);
    }

    #[test]
    fn sextic_mirror() {
        let m = real(-2.0);
        let roots = solve_sextic(m, m, m);
        let s7 = 7f64.sqrt();
        let want = [real(-3.0), m, m, m, c(0.5, -s7 / 2.0), c(0.5, s7 / 2.0)];
        for (r, w) in roots.iter().zip(want.iter()) {
            assert!((r - w).norm() < 1e-7, "{r} vs {w}");
        }
    }

    #[test]
    fn sextic_at_zero() {
        let z = real(0.0);
        let roots = solve_sextic(z, z, z);
        assert!((roots[0] + 1.0).norm() < 1e-12);
        assert!(roots[1..5].iter().all(|r| r.norm() < 1e-12));
        assert!((roots[5] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn x3_hyperbolic() {
        let tol = Tolerance::default();
        let two = real(2.0);
        let p = sample_x3(two, two, two, 0, &tol).unwrap();
        assert!(p.max_distance(&hyperbolic()) < 1e-9, "{p:?}");
        assert!((p.t123() - c(9.0, 7f64.sqrt())).norm() < 1e-9);
    }

    #[test]
    fn x3_excluded_roots() {
        let tol = Tolerance::default();
        let two = real(2.0);
        for (beta, what) in [
            (2.0, "beta^3 - sigma1 beta + 2 t1 t2 t3"),
            (3.0, "2 beta^2 - t1 t2 t3 beta + sigma1 - 6"),
        ] {
            match x3_point(two, two, two, real(beta), &tol) {
                Err(Error::ExcludedRoot { what: w, .. }) => assert_eq!(w, what),
                other => panic!("expected exclusion, got {other:?}"),
            }
        }
        for index in 2..6 {
            assert!(matches!(
                sample_x3(two, two, two, index, &tol),
                Err(Error::ExcludedRoot { .. })
            ));
        }
        assert!(matches!(
            sample_x3(two, two, two, 6, &tol),
            Err(Error::BranchOutOfRange { .. })
        ));
    }

    #[test]
    fn membership_examples() {
        let tol = Tolerance::default();
        let h = hyperbolic();
        let r = membership(&h, ComponentId::X3, &tol);
        assert!(r.verdict, "{r:?}");
        assert!(r.equation_residuals.iter().all(|e| e.value < 1e-9));
        let r = membership(&h, ComponentId::X2 { sign: Sign::Plus }, &tol);
        assert!(!r.verdict);
        assert!(r.failures(&tol).contains(&"beta = ±√2"));
        assert_eq!(classify(&h, &tol), vec![ComponentId::X3]);
    }

    #[test]
    fn dimensions_of_examples() {
        let tol = Tolerance::default();
        assert_eq!(local_dimension(&hyperbolic(), ComponentId::X3, 1e-6), Ok(3));
        let x2 = sample_x2(Sign::Plus, real(1.0), real(0.0), 1, 1, &tol).unwrap();
        assert_eq!(local_dimension(&x2, ComponentId::X2 { sign: Sign::Plus }, 1e-6), Ok(2));
        let x1 = sample_x1(1, Sign::Plus, real(1.0), real(0.0), 0, &tol).unwrap();
        let id = ComponentId::X1 { index: 1, sign: Sign::Plus };
        assert_eq!(local_dimension(&x1, id, 1e-6), Ok(2));
    }

    #[test]
    fn samplers_round_trip_through_membership() {
        let tol = Tolerance::default();
        for c in ComponentId::ALL {
            for index in 0..100 {
                let p = sample_seeded(c, 1, index, &tol).unwrap();
                let report = membership(&p, c, &tol);
                assert!(report.verdict, "{c} #{index}: {:?}", report.failures(&tol));
                assert!((eta(&p, Pair::P23) - 5.0).norm() > tol.margin_tol);
            }
        }
    }

    #[test]
    fn seeded_sampling_is_deterministic() {
        let tol = Tolerance::default();
        let a = sample_seeded(ComponentId::X3, 7, 3, &tol).unwrap();
        let b = sample_seeded(ComponentId::X3, 7, 3, &tol).unwrap();
        assert_eq!(a, b);
        let other = sample_seeded(ComponentId::X3, 7, 4, &tol).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn rotation_equivariance() {
        let tol = Tolerance::default();
        for index in 0..50 {
            let p = sample_seeded(ComponentId::X3, 3, index, &tol).unwrap();
            assert!(membership(&rotate(&p), ComponentId::X3, &tol).verdict);
        }
        // rotation sends x_i to x_{i+1}, so t'_m = t_{m+1}: an X1.i point lands on X1.(i-1)
        for c in ComponentId::ALL {
            if let ComponentId::X1 { index, sign } = c {
                let target = ComponentId::X1 { index: (index + 1) % 3 + 1, sign };
                for n in 0..20 {
                    let p = sample_seeded(c, 5, n, &tol).unwrap();
                    let r = membership(&rotate(&p), target, &tol);
                    assert!(r.verdict, "{c} -> {target}: {:?}", r.failures(&tol));
                }
            }
        }
    }

    #[test]
    fn sextic_root_is_not_perturbed() {
        let tol = Tolerance::default();
        for index in 0..100 {
            let p = sample_seeded(ComponentId::X3, 9, index, &tol).unwrap();
            let coeffs = sextic_coefficients(p.t1, p.t2, p.t3);
            let v = crate::roots::eval(&coeffs, p.beta);
            let scale = crate::roots::eval_scale(&coeffs, p.beta);
            assert!(v.norm() < 1e-8 * scale.max(1.0), "#{index}: {v}");
        }
    }
}
