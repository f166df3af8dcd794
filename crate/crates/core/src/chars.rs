//! Character coordinates `(t1, t2, t3, r12, r13, r23, beta)`.
//!
//! `t_i = tr x_i`, `r_ij = tr(x_i x_j^-1)` and `beta = (t1 t2 t3 - t123) / 2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat2::C64;
use crate::reconstruct::Representation;
use crate::tol::Tolerance;

/// An irreducible character of the link group in trace coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacterPoint {
    pub t1: C64,
    pub t2: C64,
    pub t3: C64,
    pub r12: C64,
    pub r13: C64,
    pub r23: C64,
    pub beta: C64,
}

/// One of the three unordered generator pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pair {
    P12,
    P13,
    P23,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::P12, Pair::P13, Pair::P23];
}

/// Elementary symmetric functions of `t1^2, t2^2, t3^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaTriple {
    pub sigma1: C64,
    pub sigma2: C64,
    pub sigma3: C64,
}

impl SigmaTriple {
    pub fn from_traces(t1: C64, t2: C64, t3: C64) -> Self {
        let (a, b, c) = (t1 * t1, t2 * t2, t3 * t3);
        Self {
            sigma1: a + b + c,
            sigma2: a * b + a * c + b * c,
            sigma3: a * b * c,
        }
    }
}

impl CharacterPoint {
    #[allow(clippy::too_many_arguments)]
    pub fn new(t1: C64, t2: C64, t3: C64, r12: C64, r13: C64, r23: C64, beta: C64) -> Self {
        Self {
            t1,
            t2,
            t3,
            r12,
            r13,
            r23,
            beta,
        }
    }

    /// Generator trace `t_i` for `i` in `1..=3`.
    pub fn t(&self, i: usize) -> C64 {
        match i {
            1 => self.t1,
            2 => self.t2,
            3 => self.t3,
            _ => panic!("generator index {i} out of range"),
        }
    }

    /// Mixed trace `r_ij`; symmetric in `i`, `j`.
    pub fn r(&self, i: usize, j: usize) -> C64 {
        match (i.min(j), i.max(j)) {
            (1, 2) => self.r12,
            (1, 3) => self.r13,
            (2, 3) => self.r23,
            _ => panic!("invalid pair ({i}, {j})"),
        }
    }

    pub fn set_t(&mut self, i: usize, v: C64) {
        match i {
            1 => self.t1 = v,
            2 => self.t2 = v,
            3 => self.t3 = v,
            _ => panic!("generator index {i} out of range"),
        }
    }

    pub fn set_r(&mut self, i: usize, j: usize, v: C64) {
        match (i.min(j), i.max(j)) {
            (1, 2) => self.r12 = v,
            (1, 3) => self.r13 = v,
            (2, 3) => self.r23 = v,
            _ => panic!("invalid pair ({i}, {j})"),
        }
    }

    /// `tr(x1 x2 x3) = t1 t2 t3 - 2 beta`.
    pub fn t123(&self) -> C64 {
        self.t1 * self.t2 * self.t3 - 2.0 * self.beta
    }

    /// `tr(x_i x_j) = t_i t_j - r_ij`.
    pub fn t_pair(&self, i: usize, j: usize) -> C64 {
        self.t(i) * self.t(j) - self.r(i, j)
    }

    pub fn sigma(&self) -> SigmaTriple {
        SigmaTriple::from_traces(self.t1, self.t2, self.t3)
    }

    pub fn coords(&self) -> [C64; 7] {
        [
            self.t1, self.t2, self.t3, self.r12, self.r13, self.r23, self.beta,
        ]
    }

    /// Largest coordinatewise distance to `other`.
    pub fn max_distance(&self, other: &Self) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `eta = r_ij^2 - t_i t_j r_ij + t_i^2 + t_j^2 + 1`, i.e. the trace of the
/// common commutator plus 3, computed from the chosen pair.
pub fn eta(p: &CharacterPoint, pair: Pair) -> C64 {
    let (ti, tj, r) = match pair {
        Pair::P12 => (p.t1, p.t2, p.r12),
        Pair::P13 => (p.t1, p.t3, p.r13),
        Pair::P23 => (p.t2, p.t3, p.r23),
    };
    r * r - ti * tj * r + ti * ti + tj * tj + 1.0
}

/// Largest pairwise distance between the three eta values.
pub fn eta_spread(p: &CharacterPoint) -> f64 {
    let [a, b, c] = Pair::ALL.map(|pair| eta(p, pair));
    (a - b).norm().max((a - c).norm()).max((b - c).norm())
}

/// `true` iff `|eta - 5| > margin_tol`, after checking the three eta values agree.
pub fn is_irreducible(p: &CharacterPoint, tol: &Tolerance) -> Result<bool> {
    let spread = eta_spread(p);
    if spread > tol.eq_tol {
        return Err(Error::EtaInconsistent { spread });
    }
    Ok((eta(p, Pair::P23) - 5.0).norm() > tol.margin_tol)
}

/// The order-3 symmetry `x1 -> x2 -> x3 -> x1` of the link, acting on coordinates.
pub fn rotate(p: &CharacterPoint) -> CharacterPoint {
    CharacterPoint {
        t1: p.t2,
        t2: p.t3,
        t3: p.t1,
        r12: p.r23,
        r13: p.r12,
        r23: p.r13,
        beta: p.beta,
    }
}

/// Coefficients `(nu1, nu0)` of the quadratic `t123^2 - nu1 t123 + nu0 = 0`
/// satisfied by every triple, computed from the two orderings' traces.
pub fn fricke_pair(rep: &Representation, eq_tol: f64) -> Result<(C64, C64)> {
    for x in [&rep.x1, &rep.x2, &rep.x3] {
        let deviation = x.det_deviation();
        if deviation > eq_tol {
            return Err(Error::NonUnimodular { deviation });
        }
    }
    let forward = (rep.x1 * rep.x2 * rep.x3).trace();
    let backward = (rep.x1 * rep.x3 * rep.x2).trace();
    Ok((forward + backward, forward * backward))
}
