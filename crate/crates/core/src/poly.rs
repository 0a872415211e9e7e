//! Dense univariate polynomials over 𝔽_p.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// Degree of a polynomial, or of a (shifted) row or column of a matrix.
///
/// The zero polynomial has degree [`Degree::NEG_INF`], which compares below
/// every finite degree so that maxima over entries are well defined.
/// Shifting the sentinel leaves it unchanged; turning it into an integer is
/// an error.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(Option<i64>);

impl Degree {
    pub const NEG_INF: Degree = Degree(None);

    pub const fn finite(d: i64) -> Self {
        Degree(Some(d))
    }

    pub fn value(self) -> Option<i64> {
        self.0
    }

    pub fn is_neg_inf(self) -> bool {
        self.0.is_none()
    }

    /// The finite value, or [`Error::UndefinedDegree`] for the sentinel.
    pub fn get(self) -> Result<i64> {
        self.0.ok_or(Error::UndefinedDegree)
    }

    pub fn shifted(self, s: i64) -> Degree {
        Degree(self.0.map(|d| d + s))
    }

    /// `max(0, d)`, with the sentinel counting as 0.
    pub fn nonneg(self) -> u64 {
        self.0.map_or(0, |d| d.max(0) as u64)
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(d) => write!(f, "{d}"),
            None => f.write_str("-inf"),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<i64> for Degree {
    fn from(d: i64) -> Self {
        Degree::finite(d)
    }
}

/// Polynomial stored as its coefficient vector, lowest degree first.
///
/// Always normalized: the zero polynomial is the empty vector and otherwise
/// the last coefficient is nonzero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: FieldElem, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![FieldElem::ZERO; k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Builds a polynomial, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Reduces raw integers into the field; convenient in tests.
    pub fn from_u64s(ctx: &FieldCtx, vals: &[u64]) -> Self {
        Self::from_coeffs(vals.iter().map(|&v| ctx.elem(v)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NEG_INF
        } else {
            Degree::finite(self.coeffs.len() as i64 - 1)
        }
    }

    /// Number of stored coefficients (`deg + 1`, or 0 for the zero poly).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> FieldElem {
        self.coeffs.get(k).copied().unwrap_or(FieldElem::ZERO)
    }

    /// Coefficient of `x^k` for a possibly negative `k`.
    pub fn coeff_i(&self, k: i64) -> FieldElem {
        if k < 0 {
            FieldElem::ZERO
        } else {
            self.coeff(k as usize)
        }
    }

    /// `self rem x^len`.
    pub fn truncated(&self, len: usize) -> Poly {
        if self.coeffs.len() <= len {
            return self.clone();
        }
        Self::from_coeffs(self.coeffs[..len].to_vec())
    }

    pub fn add(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let (long, short) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.coeffs.clone();
        for (o, &c) in out.iter_mut().zip(&short.coeffs) {
            *o = ctx.add(*o, c);
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let n = self.len().max(other.len());
        let out = (0..n)
            .map(|k| match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(&a), Some(&b)) => ctx.sub(a, b),
                (Some(&a), None) => a,
                (None, Some(&b)) => ctx.neg(b),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: FieldElem, ctx: &FieldCtx) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    /// `x^k · self`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FieldElem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        self.mul_trunc(other, usize::MAX, ctx)
    }

    /// `(self · other) rem x^len`, only computing the kept coefficients.
    pub fn mul_trunc(&self, other: &Poly, len: usize, ctx: &FieldCtx) -> Poly {
        let mut acc = Vec::new();
        self.mul_acc_trunc(other, len, &mut acc, ctx);
        Self::from_coeffs(acc)
    }

    /// `acc += (self · other) rem x^len`, where `acc` is an unnormalized
    /// coefficient buffer that grows as needed.
    pub fn mul_acc_trunc(&self, other: &Poly, len: usize, acc: &mut Vec<FieldElem>, ctx: &FieldCtx) {
        if self.is_zero() || other.is_zero() || len == 0 {
            return;
        }
        let full = self.len() + other.len() - 1;
        let out_len = full.min(len);
        if acc.len() < out_len {
            acc.resize(out_len, FieldElem::ZERO);
        }
        for (i, &a) in self.coeffs.iter().enumerate().take(out_len) {
            let jmax = other.len().min(out_len - i);
            for (j, &b) in other.coeffs[..jmax].iter().enumerate() {
                acc[i + j] = ctx.add(acc[i + j], ctx.mul(a, b));
            }
        }
    }

    /// Horner evaluation: `2·deg` operations.
    pub fn evaluate(&self, alpha: FieldElem, ctx: &FieldCtx) -> FieldElem {
        let mut it = self.coeffs.iter().rev();
        let Some(&lead) = it.next() else {
            return FieldElem::ZERO;
        };
        it.fold(lead, |acc, &c| ctx.add(ctx.mul(acc, alpha), c))
    }

    /// Value at 1: `deg` additions.
    pub fn sum_coeffs(&self, ctx: &FieldCtx) -> FieldElem {
        let mut it = self.coeffs.iter();
        let Some(&first) = it.next() else {
            return FieldElem::ZERO;
        };
        it.fold(first, |acc, &c| ctx.add(acc, c))
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<(Poly, Poly)> {
        let lead = *divisor.coeffs.last().ok_or(Error::ZeroInversion)?;
        let lead_inv = ctx.inv(lead)?;
        if self.len() < divisor.len() {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let dl = divisor.len();
        let mut quot = vec![FieldElem::ZERO; rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dl - 1];
            if c.is_zero() {
                continue;
            }
            let q = ctx.mul(c, lead_inv);
            quot[k] = q;
            for (t, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + t] = ctx.sub(rem[k + t], ctx.mul(q, d));
            }
        }
        rem.truncate(dl - 1);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// `Some(c, k)` if the polynomial is the nonzero monomial `c·x^k`.
    pub fn as_monomial(&self) -> Option<(FieldElem, usize)> {
        let k = self.coeffs.len().checked_sub(1)?;
        self.coeffs[..k]
            .iter()
            .all(|c| c.is_zero())
            .then(|| (self.coeffs[k], k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k7() -> FieldCtx {
        FieldCtx::new(7).unwrap()
    }

    #[test]
    fn normalization_and_degree() {
        let k = k7();
        let p = Poly::from_u64s(&k, &[1, 2, 0, 0]);
        assert_eq!(p.coeffs().len(), 2);
        assert_eq!(p.degree(), Degree::finite(1));
        assert!(Poly::from_u64s(&k, &[0, 0]).is_zero());
        assert_eq!(Poly::zero().degree(), Degree::NEG_INF);
        assert!(Degree::NEG_INF < Degree::finite(-1000));
        assert_eq!(Degree::NEG_INF.shifted(5), Degree::NEG_INF);
        assert_eq!(Degree::NEG_INF.get(), Err(Error::UndefinedDegree));
        assert_eq!(Degree::NEG_INF.nonneg(), 0);
        assert_eq!(Poly::monomial(FieldElem::ZERO, 3), Poly::zero());
    }

    #[test]
    fn arithmetic_normalizes() {
        let k = k7();
        let a = Poly::from_u64s(&k, &[1, 1, 3]);
        let b = Poly::from_u64s(&k, &[0, 0, 4]);
        assert_eq!(a.add(&b, &k), Poly::from_u64s(&k, &[1, 1]));
        assert_eq!(a.sub(&a, &k), Poly::zero());
        assert_eq!(Poly::zero().sub(&b, &k), Poly::from_u64s(&k, &[0, 0, 3]));
        // (1+x)(1+x) = 1 + 2x + x^2
        let c = Poly::from_u64s(&k, &[1, 1]);
        assert_eq!(c.mul(&c, &k), Poly::from_u64s(&k, &[1, 2, 1]));
        assert_eq!(c.mul_trunc(&c, 2, &k), Poly::from_u64s(&k, &[1, 2]));
        assert_eq!(c.mul_trunc(&c, 0, &k), Poly::zero());
        assert_eq!(c.shift_up(2), Poly::from_u64s(&k, &[0, 0, 1, 1]));
        assert_eq!(c.scale(FieldElem::ZERO, &k), Poly::zero());
    }

    #[test]
    fn evaluation() {
        let k = k7();
        let p = Poly::from_u64s(&k, &[1, 1]);
        assert_eq!(p.evaluate(k.elem(3), &k), k.elem(4));
        assert_eq!(Poly::zero().evaluate(k.elem(3), &k), FieldElem::ZERO);
        let q = Poly::from_u64s(&k, &[3, 5, 6]);
        assert_eq!(q.sum_coeffs(&k), q.evaluate(FieldElem::ONE, &k));
        let (_, ops) = k.measure(|| q.evaluate(k.elem(2), &k));
        assert_eq!(ops.total(), 4);
        let (_, ops) = k.measure(|| q.sum_coeffs(&k));
        assert_eq!(ops.total(), 2);
    }

    #[test]
    fn division() {
        let k = k7();
        let a = Poly::from_u64s(&k, &[1, 2, 1]);
        let b = Poly::from_u64s(&k, &[1, 1]);
        let (q, r) = a.div_rem(&b, &k).unwrap();
        assert_eq!(q, b);
        assert!(r.is_zero());
        let (q, r) = b.div_rem(&a, &k).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, b);
        let c = Poly::from_u64s(&k, &[3, 0, 2, 5]);
        let (q, r) = c.div_rem(&a, &k).unwrap();
        assert_eq!(q.mul(&a, &k).add(&r, &k), c);
        assert!(r.degree() < a.degree());
        assert!(a.div_rem(&Poly::zero(), &k).is_err());
    }

    #[test]
    fn monomial_detection() {
        let k = k7();
        assert_eq!(Poly::monomial(k.elem(3), 4).as_monomial(), Some((k.elem(3), 4)));
        assert_eq!(Poly::from_u64s(&k, &[1, 1]).as_monomial(), None);
        assert_eq!(Poly::zero().as_monomial(), None);
    }
}
