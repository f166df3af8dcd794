//! Explicit SL(2,C) representations of the link group
//! `<x1, x2, x3 | [x1, x3 x1^-1 x2] = 1, [x2, x1 x2^-1 x3] = 1>`
//! built from character coordinates, and the reverse map.

use serde::{Deserialize, Serialize};

use crate::chars::{is_irreducible, CharacterPoint};
use crate::error::{Error, Result};
use crate::mat2::{trace_commutator, Mat2, C64};
use crate::tol::Tolerance;

/// Images of the three meridian generators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Representation {
    pub x1: Mat2,
    pub x2: Mat2,
    pub x3: Mat2,
}

impl Representation {
    pub fn new(x1: Mat2, x2: Mat2, x3: Mat2) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn identity() -> Self {
        let e = Mat2::identity();
        Self::new(e, e, e)
    }

    pub fn generator(&self, j: usize) -> Mat2 {
        match j {
            1 => self.x1,
            2 => self.x2,
            3 => self.x3,
            _ => panic!("generator index {j} out of range"),
        }
    }

    pub fn max_det_deviation(&self) -> f64 {
        [self.x1, self.x2, self.x3]
            .iter()
            .map(Mat2::det_deviation)
            .fold(0.0, f64::max)
    }
}

/// Coefficients with `x3 x1^-1 x2 = alpha x1 + beta e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaBeta {
    pub alpha: C64,
    pub beta: C64,
}

impl AlphaBeta {
    /// `alpha = -r23`, `beta` as stored.
    pub fn of_point(p: &CharacterPoint) -> Self {
        Self {
            alpha: -p.r23,
            beta: p.beta,
        }
    }

    /// `alpha^2 + t1 alpha beta + beta^2 - 1`, i.e. `det(alpha x1 + beta e) - 1`.
    pub fn det_residual(&self, t1: C64) -> C64 {
        self.alpha * self.alpha + t1 * self.alpha * self.beta + self.beta * self.beta - 1.0
    }
}

/// Root of `z^2 - t z + 1` with `|z| >= 1`, ties broken towards `Im z >= 0`.
fn eigen_branch(t: C64) -> C64 {
    let disc = (t * t - 4.0).sqrt();
    let (z1, z2) = ((t + disc) / 2.0, (t - disc) / 2.0);
    let (m1, m2) = (z1.norm(), z2.norm());
    if (m1 - m2).abs() <= 1e-12 * m1.max(m2).max(1.0) {
        if z1.im >= z2.im {
            z1
        } else {
            z2
        }
    } else if m1 > m2 {
        z1
    } else {
        z2
    }
}

/// Canonical pair with prescribed `tr x1`, `tr x2`, `tr x1 x2`:
/// `x1 = [[l, 1], [0, 1/l]]`, `x2 = [[m, 0], [c, 1/m]]`.
pub fn pair_from_traces(t1: C64, t2: C64, t12: C64, tol: &Tolerance) -> Result<(Mat2, Mat2)> {
    let margin = (trace_commutator(t1, t2, t12) - 2.0).norm();
    if margin <= tol.margin_tol {
        return Err(Error::ReduciblePair { margin });
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let l = eigen_branch(t1);
    let m = eigen_branch(t2);
    let c = t12 - l * m - (l * m).inv();
    Ok((Mat2::new(l, one, zero, l.inv()), Mat2::new(m, zero, c, m.inv())))
}

/// `x3 = (alpha r12 + beta t2) x1 - alpha x2 - beta x2 x1` with `alpha = -r23`.
pub fn x3_from_point(p: &CharacterPoint, x1: &Mat2, x2: &Mat2, tol: &Tolerance) -> Result<Mat2> {
    let AlphaBeta { alpha, beta } = AlphaBeta::of_point(p);
    let x3 = x1.scale(alpha * p.r12 + beta * p.t2) - x2.scale(alpha) - (*x2 * *x1).scale(beta);
    let deviation = x3.det_deviation();
    if deviation > tol.margin_tol {
        return Err(Error::NonUnimodularResult { deviation });
    }
    Ok(x3)
}

/// Reconstructs a representation with the given character, returning it with
/// its relator residuals.
pub fn representation_from_point(
    p: &CharacterPoint,
    tol: &Tolerance,
) -> Result<(Representation, [f64; 2])> {
    if !is_irreducible(p, tol)? {
        let margin = (crate::chars::eta(p, crate::chars::Pair::P12) - 5.0).norm();
        return Err(Error::ReduciblePair { margin });
    }
    let (x1, x2) = pair_from_traces(p.t1, p.t2, p.t_pair(1, 2), tol)?;
    let x3 = x3_from_point(p, &x1, &x2, tol)?;
    let rep = Representation::new(x1, x2, x3);
    let res = relator_residuals(&rep);
    Ok((rep, res))
}

/// Max-entry norms of `[x1, x3 x1^-1 x2] - e` and `[x2, x1 x2^-1 x3] - e`.
pub fn relator_residuals(rep: &Representation) -> [f64; 2] {
    let Representation { x1, x2, x3 } = *rep;
    let (i1, i2) = (x1.adjugate(), x2.adjugate());
    let comm = |a: Mat2, b: Mat2| a * b * a.adjugate() * b.adjugate();
    let e = Mat2::identity();
    [
        (comm(x1, x3 * i1 * x2) - e).max_norm(),
        (comm(x2, x1 * i2 * x3) - e).max_norm(),
    ]
}

/// Reads the character coordinates off a representation.
pub fn character_of(rep: &Representation) -> CharacterPoint {
    let Representation { x1, x2, x3 } = *rep;
    let (t1, t2, t3) = (x1.trace(), x2.trace(), x3.trace());
    let r = |a: Mat2, b: Mat2| (a * b.adjugate()).trace();
    let t123 = (x1 * x2 * x3).trace();
    CharacterPoint::new(
        t1,
        t2,
        t3,
        r(x1, x2),
        r(x1, x3),
        r(x2, x3),
        (t1 * t2 * t3 - t123) / 2.0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::fricke_pair;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn hyperbolic() -> CharacterPoint {
        let s7 = c(0.0, 7f64.sqrt());
        let r = (1.0 - s7) / 2.0;
        let two = c(2.0, 0.0);
        CharacterPoint::new(two, two, two, r, r, r, (-1.0 - s7) / 2.0)
    }

    #[test]
    fn parabolic_pair() {
        let tol = Tolerance::default();
        let two = c(2.0, 0.0);
        let (x1, x2) = pair_from_traces(two, two, c(1.0, 0.0), &tol).unwrap();
        assert_eq!(x1, Mat2::real(1.0, 1.0, 0.0, 1.0));
        assert_eq!(x2, Mat2::real(1.0, 0.0, -1.0, 1.0));
        assert_eq!((x1 * x2).trace(), c(1.0, 0.0));
    }

    #[test]
    fn zero_trace_pair_uses_tie_rule() {
        let tol = Tolerance::default();
        let z = c(0.0, 0.0);
        let (x1, x2) = pair_from_traces(z, z, z, &tol).unwrap();
        assert!((x1 - Mat2::new(c(0.0, 1.0), c(1.0, 0.0), z, c(0.0, -1.0))).max_norm() < 1e-15);
        assert!((x2 - Mat2::new(c(0.0, 1.0), z, c(2.0, 0.0), c(0.0, -1.0))).max_norm() < 1e-15);
    }

    #[test]
    fn commuting_traces_are_reducible() {
        let two = c(2.0, 0.0);
        assert!(matches!(
            pair_from_traces(two, two, two, &Tolerance::default()),
            Err(Error::ReduciblePair { .. })
        ));
    }

    #[test]
    fn eigen_branch_prefers_large_modulus() {
        let l = eigen_branch(c(3.0, 0.0));
        assert!((l - c((3.0 + 5f64.sqrt()) / 2.0, 0.0)).norm() < 1e-14);
        assert_eq!(eigen_branch(c(-2.0, 0.0)), c(-1.0, 0.0));
        assert!(eigen_branch(c(1.0, 0.0)).im > 0.0);
    }

    #[test]
    fn hyperbolic_reconstruction() {
        let tol = Tolerance::default();
        let p = hyperbolic();
        let (rep, res) = representation_from_point(&p, &tol).unwrap();
        assert!(res[0] < 1e-8 && res[1] < 1e-8, "{res:?}");
        assert!((rep.x3.trace() - 2.0).norm() < 1e-8);
        let t13 = 4.0 - p.r13;
        assert!(((rep.x1 * rep.x3).trace() - t13).norm() < 1e-8);
        let back = character_of(&rep);
        assert!(back.max_distance(&p) < 1e-8);
        assert!((back.t123() - (9.0 + c(0.0, 7f64.sqrt()))).norm() < 1e-8);

        let (nu1, nu0) = fricke_pair(&rep, 1e-9).unwrap();
        let t = 9.0 + c(0.0, 7f64.sqrt());
        assert!((t * t - nu1 * t + nu0).norm() < 1e-8);
    }

    #[test]
    fn x1_sample_reconstruction() {
        let tol = Tolerance::default();
        let p = CharacterPoint::new(
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 0.0),
        );
        let (x1, x2) = pair_from_traces(p.t1, p.t2, p.t_pair(1, 2), &tol).unwrap();
        let x3 = x3_from_point(&p, &x1, &x2, &tol).unwrap();
        assert!((x3 - (x2 - x2 * x1)).max_norm() < 1e-15);
        assert!(x3.det_deviation() < 1e-10);
        let rep = Representation::new(x1, x2, x3);
        let res = relator_residuals(&rep);
        assert!(res[0] < 1e-12 && res[1] < 1e-12);
    }

    #[test]
    fn perturbed_beta_breaks_unimodularity() {
        let tol = Tolerance::default();
        let mut p = hyperbolic();
        p.beta += 0.1;
        assert!(matches!(
            representation_from_point(&p, &tol),
            Err(Error::NonUnimodularResult { .. })
        ));
        // det(alpha x1 + beta e) = alpha^2 + t1 alpha beta + beta^2
        assert!(AlphaBeta::of_point(&p).det_residual(p.t1).norm() > 1e-3);
        assert!(AlphaBeta::of_point(&hyperbolic()).det_residual(p.t1).norm() < 1e-12);
    }

    #[test]
    fn reducible_point_is_rejected() {
        let two = c(2.0, 0.0);
        let p = CharacterPoint::new(two, two, two, two, two, two, c(0.0, 0.0));
        assert!(matches!(
            representation_from_point(&p, &Tolerance::default()),
            Err(Error::ReduciblePair { .. })
        ));
    }

    #[test]
    fn identity_representation() {
        let rep = Representation::identity();
        assert_eq!(relator_residuals(&rep), [0.0, 0.0]);
        let two = c(2.0, 0.0);
        assert_eq!(
            character_of(&rep),
            CharacterPoint::new(two, two, two, two, two, two, c(3.0, 0.0))
        );
    }

    #[test]
    fn random_triples_violate_relators() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut m = || {
            let mut z = || c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let a = Mat2::new(z(), z(), z(), z());
            a.scale(a.det().sqrt().inv())
        };
        for _ in 0..20 {
            let rep = Representation::new(m(), m(), m());
            let res = relator_residuals(&rep);
            assert!(res[0] > 1e-3 && res[1] > 1e-3, "{res:?}");
        }
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(Representation::identity()).unwrap();
        assert_eq!(v["x1"], serde_json::json!([[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]));
        assert!(v["x2"].is_array() && v["x3"].is_array());
    }
}
