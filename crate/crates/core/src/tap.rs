//! Twisted Alexander polynomial of the 3-chain link for an SL(2,C)
//! representation, by three routes:
//!
//! - the closed 19-term formula in the character coordinates,
//! - the Fox-calculus quotient `det Φ(M₂) / det Φ(1 - x₂)`, where `M₂` is the
//!   Alexander matrix with the `x₂` column deleted,
//! - the expansion `det(u) det(v) + det(w) + tr(u v w*)` of `det(uv + w)`.
//!
//! Each generator `x_j` is a meridian of component `j`, so it abelianizes to `s_j`.

use serde::{Deserialize, Serialize};

use crate::chars::CharacterPoint;
use crate::error::{Error, Result};
use crate::laurent::{eq_up_to_monomial, eq_up_to_signed_monomial, Exponent, LaurentMat, LaurentPoly3, MonomialMatch};
use crate::mat2::{Mat2, C64};
use crate::reconstruct::{character_of, relator_residuals, Representation};

/// Relative coefficient tolerance used when comparing the three routes.
pub const AGREEMENT_RTOL: f64 = 1e-7;

/// A generator `x_gen` raised to `exp = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub gen: u8,
    pub exp: i8,
}

/// A word in the free group on `x1, x2, x3`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Parses words like `"1 3 -1 2"`: each entry is `±j` for `x_j^{±1}`.
    pub fn parse(spec: &str) -> Self {
        Self(
            spec.split_whitespace()
                .map(|tok| {
                    let v: i8 = tok.parse().expect("letter must be ±1, ±2 or ±3");
                    assert!((1..=3).contains(&v.unsigned_abs()), "bad letter {tok}");
                    Letter {
                        gen: v.unsigned_abs(),
                        exp: v.signum(),
                    }
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    /// Image under abelianization: exponent sum per generator.
    pub fn abelianization(&self) -> Exponent {
        let mut k = [0; 3];
        for l in &self.0 {
            k[l.gen as usize - 1] += l.exp as i32;
        }
        k
    }
}

/// Integer combination of group words, an element of `Z[π]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordSum(pub Vec<(i64, GroupWord)>);

impl WordSum {
    pub fn from_words(terms: &[(i64, &str)]) -> Self {
        Self(terms.iter().map(|&(c, w)| (c, GroupWord::parse(w))).collect())
    }
}

/// The 2x2 Fox matrix `M₂` (rows: relators `r1, r2`; columns: `∂/∂x1`, `∂/∂x3`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoxMatrix(pub [[WordSum; 2]; 2]);

impl FoxMatrix {
    /// Fox derivatives of `r1 = x1 x3 x1⁻¹ x2 (x3 x1⁻¹ x2 x1)⁻¹` and
    /// `r2 = x2 x1 x2⁻¹ x3 (x1 x2⁻¹ x3 x2)⁻¹`, mapped to the group ring.
    pub fn m2() -> Self {
        FoxMatrix([
            [
                // ∂r1/∂x1 = 1 - x1 x3 x1⁻¹ + x3 x1⁻¹ - x3 x1⁻¹ x2
                WordSum::from_words(&[(1, ""), (-1, "1 3 -1"), (1, "3 -1"), (-1, "3 -1 2")]),
                // ∂r1/∂x3 = x1 - 1
                WordSum::from_words(&[(1, "1"), (-1, "")]),
            ],
            [
                // ∂r2/∂x1 = x2 - 1
                WordSum::from_words(&[(1, "2"), (-1, "")]),
                // ∂r2/∂x3 = x2 x1 x2⁻¹ - x1 x2⁻¹
                WordSum::from_words(&[(1, "2 1 -2"), (-1, "1 -2")]),
            ],
        ])
    }
}

/// Image of a single word: product of `s_j^{±1} ρ(x_j)^{±1}` over its letters.
pub fn phi_word(rep: &Representation, w: &GroupWord) -> LaurentMat {
    let m = w.0.iter().fold(Mat2::identity(), |acc, l| {
        let x = rep.generator(l.gen as usize);
        acc * if l.exp > 0 { x } else { x.adjugate() }
    });
    LaurentMat::from_mat2(&m, w.abelianization())
}

/// Image of an integer combination of words.
pub fn phi(rep: &Representation, sum: &WordSum) -> LaurentMat {
    sum.0.iter().fold(LaurentMat::zero(2), |acc, (c, w)| {
        let term = phi_word(rep, w).scale(&LaurentPoly3::constant(C64::new(*c as f64, 0.0)));
        &acc + &term
    })
}

/// The closed 19-term formula in the character coordinates.
pub fn tap_closed_form(p: &CharacterPoint) -> LaurentPoly3 {
    let one = C64::new(1.0, 0.0);
    let terms: [(Exponent, C64); 19] = [
        ([0, 0, 0], p.t123() - p.t1 * p.t2 * p.t3),
        ([1, 0, 0], p.r23),
        ([-1, 0, 0], p.r23),
        ([0, 1, 0], p.r13),
        ([0, -1, 0], p.r13),
        ([0, 0, 1], p.r12),
        ([0, 0, -1], p.r12),
        ([0, 1, -1], -p.t1),
        ([0, -1, 1], -p.t1),
        ([1, 0, -1], -p.t2),
        ([-1, 0, 1], -p.t2),
        ([1, -1, 0], -p.t3),
        ([-1, 1, 0], -p.t3),
        ([-1, 1, 1], one),
        ([1, -1, 1], one),
        ([1, 1, -1], one),
        ([1, -1, -1], one),
        ([-1, 1, -1], one),
        ([-1, -1, 1], one),
    ];
    LaurentPoly3::from_terms(terms)
}

fn require_representation(rep: &Representation, eq_tol: f64) -> Result<()> {
    let [a, b] = relator_residuals(rep);
    if !(a < eq_tol && b < eq_tol) {
        return Err(Error::NotARepresentation(a, b));
    }
    Ok(())
}

/// Output of the Fox-calculus route.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoxTap {
    /// `det Φ(M₂)`, a 4x4 determinant.
    pub numerator: LaurentPoly3,
    /// `det Φ(1 - x₂) = 1 - s₂ t₂ + s₂²`.
    pub denominator: LaurentPoly3,
    /// How the numerator relates to `closed form × denominator`.
    pub quotient: MonomialMatch,
    pub quotient_check: bool,
}

/// `det Φ(M₂) / det Φ(1 - x₂)`, checked against the closed form by cross-multiplication.
pub fn tap_fox(rep: &Representation, eq_tol: f64) -> Result<FoxTap> {
    require_representation(rep, eq_tol)?;
    let FoxMatrix(m) = FoxMatrix::m2();
    let blocks: Vec<Vec<LaurentMat>> = m
        .iter()
        .map(|row| row.iter().map(|entry| phi(rep, entry)).collect())
        .collect();
    let numerator = LaurentMat::from_blocks(&blocks).det()?;
    let denominator = phi(rep, &WordSum::from_words(&[(1, ""), (-1, "2")])).det()?;
    let expected = &tap_closed_form(&character_of(rep)) * &denominator;
    let quotient = eq_up_to_monomial(&expected, &numerator, AGREEMENT_RTOL);
    Ok(FoxTap {
        numerator,
        denominator,
        quotient,
        quotient_check: quotient.equal,
    })
}

/// Pieces of the `u, v, w` expansion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UvwTap {
    pub det_u: LaurentPoly3,
    pub det_v: LaurentPoly3,
    pub det_w: LaurentPoly3,
    pub trace_uvw: LaurentPoly3,
    /// `det(u) det(v) + det(w) + tr(u v w*)`.
    pub total: LaurentPoly3,
}

/// `det(uv + w)` expanded with
/// `u = e - s1 x1`, `v = (s2/s1)(e + (s3/s2) x3 x2⁻¹) x2 x1⁻¹`,
/// `w = e - (s2 s3/s1) x3 x1⁻¹ x2`.
pub fn tap_uvw(rep: &Representation, eq_tol: f64) -> Result<UvwTap> {
    require_representation(rep, eq_tol)?;
    let Representation { x1, x2, x3 } = *rep;
    let e = LaurentMat::identity(2);
    let u = &e - &LaurentMat::from_mat2(&x1, [1, 0, 0]);
    let v = &(&e + &LaurentMat::from_mat2(&(x3 * x2.adjugate()), [0, -1, 1]))
        * &LaurentMat::from_mat2(&(x2 * x1.adjugate()), [-1, 1, 0]);
    let w = &e - &LaurentMat::from_mat2(&(x3 * x1.adjugate() * x2), [-1, 1, 1]);

    let det_u = u.det()?;
    let det_v = v.det()?;
    let det_w = w.det()?;
    let trace_uvw = (&(&u * &v) * &w.adjugate2()).trace();
    let total = &(&(&det_u * &det_v) + &det_w) + &trace_uvw;
    Ok(UvwTap {
        det_u,
        det_v,
        det_w,
        trace_uvw,
        total,
    })
}

/// All three routes for one representation and how they relate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TapComparison {
    pub closed_form: LaurentPoly3,
    pub uvw: LaurentPoly3,
    pub fox_numerator: LaurentPoly3,
    pub fox_denominator: LaurentPoly3,
    /// `closed_form = s^shift uvw` when equal.
    pub uvw_vs_closed: MonomialMatch,
    /// `fox_numerator = s^shift (closed_form × fox_denominator)` when equal.
    pub fox_vs_closed: MonomialMatch,
    /// Largest coefficient of `numerator - s^shift closed_form × denominator`,
    /// relative to the numerator's largest coefficient.
    pub divisibility_residual: f64,
    /// Sign-tolerant comparisons; informative only.
    pub uvw_signed: MonomialMatch,
    pub fox_signed: MonomialMatch,
    pub agree: bool,
}

/// Computes all three routes and compares them in strict monomial mode.
pub fn compare(rep: &Representation, eq_tol: f64) -> Result<TapComparison> {
    let closed_form = tap_closed_form(&character_of(rep));
    let uvw = tap_uvw(rep, eq_tol)?.total;
    let fox = tap_fox(rep, eq_tol)?;
    let uvw_vs_closed = eq_up_to_monomial(&uvw, &closed_form, AGREEMENT_RTOL);
    let product = &closed_form * &fox.denominator;
    let fox_vs_closed = fox.quotient;
    let divisibility_residual = if fox_vs_closed.equal {
        let diff = &fox.numerator - &product.shift(fox_vs_closed.shift);
        diff.max_coeff() / fox.numerator.max_coeff().max(f64::MIN_POSITIVE)
    } else {
        f64::INFINITY
    };
    let uvw_signed = eq_up_to_signed_monomial(&uvw, &closed_form, AGREEMENT_RTOL);
    let fox_signed = eq_up_to_signed_monomial(&product, &fox.numerator, AGREEMENT_RTOL);
    Ok(TapComparison {
        agree: uvw_vs_closed.equal && fox_vs_closed.equal && divisibility_residual < AGREEMENT_RTOL,
        closed_form,
        uvw,
        fox_numerator: fox.numerator,
        fox_denominator: fox.denominator,
        uvw_vs_closed,
        fox_vs_closed,
        divisibility_residual,
        uvw_signed,
        fox_signed,
    })
}
