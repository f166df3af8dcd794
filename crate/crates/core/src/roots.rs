//! Univariate complex root finding: stable quadratics and companion-matrix
//! eigenvalues with Newton polishing and multiple-root clustering.

use std::cmp::Ordering;

use nalgebra::{DMatrix, Schur};

use crate::mat2::C64;

/// Distance below which two reported roots are considered the same root.
pub const CLUSTER_RADIUS: f64 = 1e-6;

/// Eigenvalues of a multiple root scatter by roughly `(eps * scale)^(1/m)`;
/// candidates within this relative radius are tested as one multiple root.
const CANDIDATE_RADIUS: f64 = 1e-3;

/// Orders complex numbers lexicographically by `(re, im)`.
pub fn lex_cmp(a: &C64, b: &C64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Roots of `x^2 + b x + c`, sorted lexicographically.
pub fn quadratic_roots(b: C64, c: C64) -> [C64; 2] {
    let disc = (b * b - 4.0 * c).sqrt();
    // pick the sign that avoids cancellation
    let q = if (b.conj() * disc).re >= 0.0 {
        -(b + disc) / 2.0
    } else {
        -(b - disc) / 2.0
    };
    let mut roots = if q.norm() == 0.0 {
        [q, q]
    } else {
        [q, c / q]
    };
    roots.sort_by(lex_cmp);
    roots
}

/// Evaluates a polynomial given by ascending coefficients.
pub fn eval(coeffs: &[C64], x: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// Sum of absolute values of the monomials at `x`; a scale for residuals.
pub fn eval_scale(coeffs: &[C64], x: C64) -> f64 {
    let r = x.norm();
    coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * r + c.norm())
}

/// Ascending coefficients of the derivative.
pub fn derivative(coeffs: &[C64]) -> Vec<C64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

fn newton_step(coeffs: &[C64], deriv: &[C64], x: C64) -> Option<C64> {
    let d = eval(deriv, x);
    if d.norm() == 0.0 {
        return None;
    }
    let next = x - eval(coeffs, x) / d;
    next.is_finite().then_some(next)
}

/// Applies one Newton step, keeping it only when the residual does not grow.
pub fn polish(coeffs: &[C64], x: C64) -> C64 {
    let deriv = derivative(coeffs);
    match newton_step(coeffs, &deriv, x) {
        Some(next) if eval(coeffs, next).norm() <= eval(coeffs, x).norm() => next,
        _ => x,
    }
}

/// All roots of the monic polynomial with ascending coefficients
/// `coeffs[0] + coeffs[1] x + ... + x^n`, listed with multiplicity and sorted
/// lexicographically.
///
/// Roots come from the eigenvalues of the companion matrix. Groups of nearby
/// eigenvalues are tested as a single multiple root: the group mean is refined
/// by Newton on the appropriate derivative, and accepted when all lower
/// derivatives vanish there. Every remaining root gets one Newton polish.
pub fn monic_roots(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    assert!(
        (coeffs[n] - 1.0).norm() == 0.0,
        "polynomial must be monic"
    );
    if n == 0 {
        return Vec::new();
    }
    let companion = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -coeffs[i]
        } else if i == j + 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let eig: Vec<C64> = Schur::new(companion)
        .eigenvalues()
        .expect("complex Schur form is triangular")
        .iter()
        .copied()
        .collect();

    let mut out = Vec::with_capacity(n);
    for group in candidate_groups(&eig) {
        if group.len() > 1 {
            if let Some(center) = refine_multiple(coeffs, &group) {
                out.extend(std::iter::repeat_n(center, group.len()));
                continue;
            }
        }
        out.extend(group.iter().map(|&x| polish(coeffs, x)));
    }
    snap_clusters(&mut out);
    out.sort_by(lex_cmp);
    out
}

/// Single-linkage groups of values closer than `CANDIDATE_RADIUS` (relative).
fn candidate_groups(values: &[C64]) -> Vec<Vec<C64>> {
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = 1.0 + values[i].norm().max(values[j].norm());
            if (values[i] - values[j]).norm() < CANDIDATE_RADIUS * scale {
                let (from, to) = (label[j], label[i]);
                for l in label.iter_mut() {
                    if *l == from {
                        *l = to;
                    }
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<C64>)> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match groups.iter_mut().find(|(l, _)| *l == label[i]) {
            Some((_, g)) => g.push(v),
            None => groups.push((label[i], vec![v])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

fn refine_multiple(coeffs: &[C64], group: &[C64]) -> Option<C64> {
    let m = group.len();
    let mut derivs = vec![coeffs.to_vec()];
    for _ in 1..m {
        let next = derivative(derivs.last().unwrap());
        derivs.push(next);
    }
    let target = &derivs[m - 1];
    let target_deriv = derivative(target);
    let mut x = group.iter().sum::<C64>() / m as f64;
    for _ in 0..8 {
        match newton_step(target, &target_deriv, x) {
            Some(next) => x = next,
            None => break,
        }
    }
    // a genuine multiple root annihilates every lower derivative as well
    let vanishes = derivs[..m - 1]
        .iter()
        .all(|d| eval(d, x).norm() <= 1e-9 * eval_scale(d, x).max(1.0));
    let close = group.iter().all(|g| (g - x).norm() < CANDIDATE_RADIUS * (1.0 + x.norm()));
    (vanishes && close).then_some(x)
}

/// Replaces members of a cluster (pairwise within `CLUSTER_RADIUS`) by their mean
/// so that repeated roots compare equal.
fn snap_clusters(roots: &mut [C64]) {
    let n = roots.len();
    let mut done = vec![false; n];
    for i in 0..n {
        if done[i] {
            continue;
        }
        let members: Vec<usize> = (i..n)
            .filter(|&j| !done[j] && (roots[j] - roots[i]).norm() < CLUSTER_RADIUS)
            .collect();
        let mean = members.iter().map(|&j| roots[j]).sum::<C64>() / members.len() as f64;
        for &j in &members {
            roots[j] = mean;
            done[j] = true;
        }
    }
}
