//! Sparse Laurent polynomials in `s1, s2, s3` with complex coefficients, and
//! small square matrices over them.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat2::{Mat2, C64};

/// Exponent triple `(k1, k2, k3)` of the monomial `s1^k1 s2^k2 s3^k3`.
pub type Exponent = [i32; 3];

/// Coefficients below this fraction of the largest one are dropped after arithmetic.
pub const PRUNE_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Term>", into = "Vec<Term>")]
pub struct LaurentPoly3 {
    terms: BTreeMap<Exponent, C64>,
}

/// Wire form of a single term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub k: Exponent,
    pub c: C64,
}

impl From<Vec<Term>> for LaurentPoly3 {
    fn from(terms: Vec<Term>) -> Self {
        let mut p = LaurentPoly3::zero();
        for t in terms {
            *p.terms.entry(t.k).or_default() += t.c;
        }
        p.pruned()
    }
}

impl From<LaurentPoly3> for Vec<Term> {
    fn from(p: LaurentPoly3) -> Self {
        p.terms.into_iter().map(|(k, c)| Term { k, c }).collect()
    }
}

impl LaurentPoly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(k: Exponent, c: C64) -> Self {
        let mut terms = BTreeMap::new();
        if c.norm() != 0.0 {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// The variable `s_i`, `i` in `1..=3`.
    pub fn var(i: usize) -> Self {
        let mut k = [0; 3];
        k[i - 1] = 1;
        Self::monomial(k, C64::new(1.0, 0.0))
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, C64)>) -> Self {
        terms
            .into_iter()
            .map(|(k, c)| Term { k, c })
            .collect::<Vec<_>>()
            .into()
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

    pub fn coeff(&self, k: Exponent) -> C64 {
        self.terms.get(&k).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C64)> {
        self.terms.iter()
    }

    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn pruned(mut self) -> Self {
        let cutoff = PRUNE_RTOL * self.max_coeff();
        self.terms.retain(|_, c| c.norm() > cutoff);
        self
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, &c)| (k, c * s)).collect(),
        }
        .pruned()
    }

    /// Multiplies by the monomial `s^k`.
    pub fn shift(&self, k: Exponent) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| ([e[0] + k[0], e[1] + k[1], e[2] + k[2]], c))
                .collect(),
        }
    }

    /// Substitutes numeric values for `s1, s2, s3`.
    pub fn eval(&self, s: [C64; 3]) -> C64 {
        self.terms
            .iter()
            .map(|(k, &c)| c * s[0].powi(k[0]) * s[1].powi(k[1]) * s[2].powi(k[2]))
            .sum()
    }

    /// Permutes variables: `s_i` is replaced by `s_{perm[i]}` (0-based).
    pub fn permute_vars(&self, perm: [usize; 3]) -> Self {
        let mut out = BTreeMap::new();
        for (k, &c) in &self.terms {
            let mut e = [0; 3];
            for i in 0..3 {
                e[perm[i]] += k[i];
            }
            out.insert(e, c);
        }
        Self { terms: out }
    }

    /// Drops terms below `rtol` times the largest coefficient.
    pub fn significant(&self, rtol: f64) -> Self {
        let cutoff = rtol * self.max_coeff();
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() >= cutoff)
                .map(|(&k, &c)| (k, c))
                .collect(),
        }
    }

    /// Componentwise minimum exponent, or `None` for the zero polynomial.
    pub fn min_exponent(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |m, k| [m[0].min(k[0]), m[1].min(k[1]), m[2].min(k[2])]))
    }
}

impl Add for &LaurentPoly3 {
    type Output = LaurentPoly3;
    fn add(self, o: &LaurentPoly3) -> LaurentPoly3 {
        let mut terms = self.terms.clone();
        for (&k, &c) in &o.terms {
            *terms.entry(k).or_default() += c;
        }
        LaurentPoly3 { terms }.pruned()
    }
}

impl Sub for &LaurentPoly3 {
    type Output = LaurentPoly3;
    fn sub(self, o: &LaurentPoly3) -> LaurentPoly3 {
        self + &(-o)
    }
}

impl Neg for &LaurentPoly3 {
    type Output = LaurentPoly3;
    fn neg(self) -> LaurentPoly3 {
        LaurentPoly3 {
            terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly3 {
    type Output = LaurentPoly3;
    fn mul(self, o: &LaurentPoly3) -> LaurentPoly3 {
        let mut terms: BTreeMap<Exponent, C64> = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &o.terms {
                *terms.entry([a[0] + b[0], a[1] + b[1], a[2] + b[2]]).or_default() += ca * cb;
            }
        }
        LaurentPoly3 { terms }.pruned()
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for LaurentPoly3 {
            type Output = LaurentPoly3;
            fn $f(self, o: LaurentPoly3) -> LaurentPoly3 {
                (&self).$f(&o)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for LaurentPoly3 {
    type Output = LaurentPoly3;
    fn neg(self) -> LaurentPoly3 {
        -&self
    }
}

/// Result of comparing two polynomials up to a monomial factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialMatch {
    pub equal: bool,
    /// `q = ± s^shift p` when `equal`.
    pub shift: Exponent,
    /// Whether the match needed a sign flip (only in sign-tolerant mode).
    pub negated: bool,
}

/// Whether `q = s^k p` for some exponent `k`.
///
/// Both sides drop terms below `tol` times their largest coefficient, are
/// shifted so every variable's minimum exponent is 0, and are then compared
/// coefficientwise relative to the largest coefficient.
pub fn eq_up_to_monomial(p: &LaurentPoly3, q: &LaurentPoly3, tol: f64) -> MonomialMatch {
    let p = p.significant(tol);
    let q = q.significant(tol);
    let no = MonomialMatch {
        equal: false,
        shift: [0; 3],
        negated: false,
    };
    let (Some(mp), Some(mq)) = (p.min_exponent(), q.min_exponent()) else {
        return MonomialMatch {
            equal: p.is_zero() && q.is_zero(),
            ..no
        };
    };
    let pn = p.shift([-mp[0], -mp[1], -mp[2]]);
    let qn = q.shift([-mq[0], -mq[1], -mq[2]]);
    let scale = pn.max_coeff().max(qn.max_coeff());
    let keys: std::collections::BTreeSet<&Exponent> = pn.terms.keys().chain(qn.terms.keys()).collect();
    let equal = keys
        .into_iter()
        .all(|&k| (pn.coeff(k) - qn.coeff(k)).norm() < tol * scale);
    MonomialMatch {
        equal,
        shift: if equal {
            [mq[0] - mp[0], mq[1] - mp[1], mq[2] - mp[2]]
        } else {
            [0; 3]
        },
        negated: false,
    }
}

/// Like [`eq_up_to_monomial`] but also accepts `q = -s^k p`. Diagnostic only.
pub fn eq_up_to_signed_monomial(p: &LaurentPoly3, q: &LaurentPoly3, tol: f64) -> MonomialMatch {
    let strict = eq_up_to_monomial(p, q, tol);
    if strict.equal {
        return strict;
    }
    let flipped = eq_up_to_monomial(p, &-q, tol);
    MonomialMatch {
        negated: flipped.equal,
        ..flipped
    }
}

/// Square matrix of Laurent polynomials, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentMat {
    n: usize,
    entries: Vec<LaurentPoly3>,
}

impl LaurentMat {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly3) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_, _| LaurentPoly3::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                LaurentPoly3::one()
            } else {
                LaurentPoly3::zero()
            }
        })
    }

    /// `s^k * m` for a numeric 2x2 matrix `m`.
    pub fn from_mat2(m: &Mat2, k: Exponent) -> Self {
        let e = m.entries();
        Self::from_fn(2, |i, j| LaurentPoly3::monomial(k, e[2 * i + j]))
    }

    /// Assembles a matrix from a square grid of equally sized square blocks.
    pub fn from_blocks(blocks: &[Vec<LaurentMat>]) -> Self {
        let nb = blocks.len();
        let bs = blocks[0][0].n;
        Self::from_fn(nb * bs, |i, j| blocks[i / bs][j / bs].get(i % bs, j % bs).clone())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly3 {
        &self.entries[i * self.n + j]
    }

    pub fn trace(&self) -> LaurentPoly3 {
        (0..self.n).fold(LaurentPoly3::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn scale(&self, c: &LaurentPoly3) -> Self {
        Self::from_fn(self.n, |i, j| c * self.get(i, j))
    }

    /// `tr(m) e - m` for a 2x2 matrix.
    pub fn adjugate2(&self) -> Self {
        assert_eq!(self.n, 2, "adjugate2 needs a 2x2 matrix");
        let g = |i, j| self.get(i, j).clone();
        Self {
            n: 2,
            entries: vec![g(1, 1), -g(0, 1), -g(1, 0), g(0, 0)],
        }
    }

    /// Cofactor-expansion determinant of a 2x2 or 4x4 matrix.
    pub fn det(&self) -> Result<LaurentPoly3> {
        match self.n {
            2 | 4 => Ok(self.cofactor_det(&(0..self.n).collect::<Vec<_>>(), 0)),
            n => Err(Error::UnsupportedSize(n)),
        }
    }

    /// Determinant of the minor on rows `row..` and the given columns.
    fn cofactor_det(&self, cols: &[usize], row: usize) -> LaurentPoly3 {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = LaurentPoly3::zero();
        for (pos, &col) in cols.iter().enumerate() {
            let entry = self.get(row, col);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != col).collect();
            let term = entry * &self.cofactor_det(&rest, row + 1);
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Evaluates every entry at numeric `s`.
    pub fn eval(&self, s: [C64; 3]) -> Vec<C64> {
        self.entries.iter().map(|p| p.eval(s)).collect()
    }
}

impl Add for &LaurentMat {
    type Output = LaurentMat;
    fn add(self, o: &LaurentMat) -> LaurentMat {
        assert_eq!(self.n, o.n);
        LaurentMat::from_fn(self.n, |i, j| self.get(i, j) + o.get(i, j))
    }
}

impl Sub for &LaurentMat {
    type Output = LaurentMat;
    fn sub(self, o: &LaurentMat) -> LaurentMat {
        assert_eq!(self.n, o.n);
        LaurentMat::from_fn(self.n, |i, j| self.get(i, j) - o.get(i, j))
    }
}

impl Mul for &LaurentMat {
    type Output = LaurentMat;
    fn mul(self, o: &LaurentMat) -> LaurentMat {
        assert_eq!(self.n, o.n);
        LaurentMat::from_fn(self.n, |i, j| {
            (0..self.n).fold(LaurentPoly3::zero(), |acc, k| &acc + &(self.get(i, k) * o.get(k, j)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn one() -> LaurentPoly3 {
        LaurentPoly3::one()
    }

    fn s(i: usize) -> LaurentPoly3 {
        LaurentPoly3::var(i)
    }

    fn mono(k: Exponent, re: f64) -> LaurentPoly3 {
        LaurentPoly3::monomial(k, c(re, 0.0))
    }

    #[test]
    fn ring_examples() {
        // (1 - s1)(1 + s1) = 1 - s1^2
        let p = &(&one() - &s(1)) * &(&one() + &s(1));
        assert_eq!(p, LaurentPoly3::from_terms([([0, 0, 0], c(1.0, 0.0)), ([2, 0, 0], c(-1.0, 0.0))]));
        assert!((&p + &(-&p)).is_zero());
        // (s1^-1 + s2) s1 = 1 + s1 s2
        let q = &(&mono([-1, 0, 0], 1.0) + &s(2)) * &s(1);
        assert_eq!(q, &one() + &mono([1, 1, 0], 1.0));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(LaurentMat::identity(4).det().unwrap(), one());
        let diag = [&one() - &s(1), &one() - &s(2), &one() - &s(3), one()];
        let m = LaurentMat::from_fn(4, |i, j| if i == j { diag[i].clone() } else { LaurentPoly3::zero() });
        let want = &(&diag[0] * &diag[1]) * &diag[2];
        assert_eq!(m.det().unwrap(), want);
        let two = LaurentMat::from_fn(2, |i, j| match (i, j) {
            (0, 1) => s(1),
            (1, 0) => s(2),
            _ => one(),
        });
        assert_eq!(two.det().unwrap(), &one() - &mono([1, 1, 0], 1.0));
        assert_eq!(LaurentMat::identity(3).det(), Err(Error::UnsupportedSize(3)));
    }

    #[test]
    fn monomial_comparison_examples() {
        let p = &one() - &s(1);
        let q = &s(1) - &mono([2, 0, 0], 1.0);
        let m = eq_up_to_monomial(&p, &q, 1e-9);
        assert!(m.equal);
        assert_eq!(m.shift, [1, 0, 0]);

        // s1^-1 - 1 = s1^-1 (1 - s1)
        let r = &mono([-1, 0, 0], 1.0) - &one();
        let m = eq_up_to_monomial(&p, &r, 1e-9);
        assert!(m.equal);
        assert_eq!(m.shift, [-1, 0, 0]);

        // s1^2 - s1 = -s1 (1 - s1): a sign is not a monomial
        let flipped = &mono([2, 0, 0], 1.0) - &s(1);
        assert!(!eq_up_to_monomial(&p, &flipped, 1e-9).equal);
        assert!(!eq_up_to_monomial(&p, &-&p, 1e-9).equal);
        let signed = eq_up_to_signed_monomial(&p, &flipped, 1e-9);
        assert!(signed.equal && signed.negated);
        assert_eq!(signed.shift, [1, 0, 0]);

        let z = LaurentPoly3::zero();
        let zz = eq_up_to_monomial(&z, &z, 1e-9);
        assert!(zz.equal);
        assert_eq!(zz.shift, [0, 0, 0]);
        assert!(!eq_up_to_monomial(&z, &p, 1e-9).equal);
    }

    #[test]
    fn pruning_drops_roundoff() {
        let p = LaurentPoly3::from_terms([([0, 0, 0], c(1.0, 0.0)), ([1, 0, 0], c(1e-14, 0.0))]);
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn json_is_sorted_term_list() {
        let p = &mono([1, 0, -1], 2.0) + &mono([-1, 0, 0], 1.0);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(
            v,
            serde_json::json!([
                {"k": [-1, 0, 0], "c": [1.0, 0.0]},
                {"k": [1, 0, -1], "c": [2.0, 0.0]}
            ])
        );
        let back: LaurentPoly3 = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
    }

    fn coeff() -> impl Strategy<Value = C64> {
        (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| C64::new(a, b))
    }

    fn poly() -> impl Strategy<Value = LaurentPoly3> {
        proptest::collection::vec(((-5..=5i32, -5..=5i32, -5..=5i32), coeff()), 0..=20)
            .prop_map(|ts| LaurentPoly3::from_terms(ts.into_iter().map(|((a, b, c), x)| ([a, b, c], x))))
    }

    fn point() -> impl Strategy<Value = [C64; 3]> {
        let one = || (0.5..2.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t));
        (one(), one(), one()).prop_map(|(a, b, c)| [a, b, c])
    }

    fn abs_eval(p: &LaurentPoly3, s: [C64; 3]) -> f64 {
        p.terms()
            .map(|(k, c)| c.norm() * (0..3).map(|i| s[i].norm().powi(k[i])).product::<f64>())
            .sum()
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly3> {
        proptest::collection::vec(((-1..=1i32, -1..=1i32, -1..=1i32), coeff()), 0..=3)
            .prop_map(|ts| LaurentPoly3::from_terms(ts.into_iter().map(|((a, b, c), x)| ([a, b, c], x))))
    }

    proptest! {
        #[test]
        fn distributive(p in poly(), q in poly(), r in poly()) {
            let lhs = &(&p + &q) * &r;
            let rhs = &(&p * &r) + &(&q * &r);
            let diff = &lhs - &rhs;
            let scale = lhs.max_coeff().max(rhs.max_coeff()).max(1.0);
            prop_assert!(diff.max_coeff() < 1e-12 * scale * 10.0);
        }

        #[test]
        fn evaluation_is_multiplicative(p in poly(), q in poly(), s in point()) {
            let lhs = (&p * &q).eval(s);
            let rhs = p.eval(s) * q.eval(s);
            // monomials reach |s|^10 per variable, so compare against the term magnitudes
            let scale = abs_eval(&p, s) * abs_eval(&q, s);
            prop_assert!((lhs - rhs).norm() <= 1e-9 * scale.max(1.0), "{} vs {}", lhs, rhs);
        }

        #[test]
        fn det_commutes_with_evaluation(
            entries in proptest::collection::vec(small_poly(), 16),
            s in point(),
        ) {
            let m = LaurentMat::from_fn(4, |i, j| entries[4 * i + j].clone());
            let symbolic = m.det().unwrap().eval(s);
            let v = m.eval(s);
            let numeric = nalgebra::Matrix4::from_row_slice(&v).determinant();
            prop_assert!((symbolic - numeric).norm() < 1e-8, "{} vs {}", symbolic, numeric);
        }
    }
}
