//! Monte-Carlo verification of truncated matrix products `P·F ≡ G mod X^d`.
//!
//! The check left-multiplies by a random row vector `u` (Freivalds) and
//! compares `(u·P·F rem X^d)(α)` with `(u·G)(α)` column by column. The left
//! side is obtained without forming the product: with `v = u·P` and
//! `h_k = Σ_{i<=k} v_{k-i} α^{-i}` (Horner on the reversal of `v` at
//! `α^{-1}`), column `f` of order `d_j` evaluates to
//! `α^{d_j-1} Σ_k h_{d_j-1-k} · f_k`.
//!
//! A `false` answer is always correct. If the congruence fails, a `true`
//! answer has probability below `d_max / (#S - 1)` over the challenge.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{dim_err, Error, Result};
use crate::field::{FieldCtx, FieldElem, SampleSet};
use crate::matrix::{ConstMatrix, Order, PolyMatrix, TruncOrder};
use crate::poly::{Degree, Poly};
use crate::rng::SeededRng;

/// How the Freivalds vector `u` is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChallengeMode {
    /// `m` independent uniform entries.
    #[default]
    Independent,
    /// `u = [1, ζ, ζ², …, ζ^{m-1}]` for a single random `ζ`.
    PowersOfZeta,
}

/// Random challenge: a nonzero evaluation point and the vector `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Challenge {
    alpha: FieldElem,
    u: Vec<FieldElem>,
    zeta: Option<FieldElem>,
}

impl Challenge {
    pub fn new(alpha: FieldElem, u: Vec<FieldElem>) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        Ok(Challenge { alpha, u, zeta: None })
    }

    pub fn powers_of_zeta(alpha: FieldElem, zeta: FieldElem, m: usize, ctx: &FieldCtx) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        let mut u = Vec::with_capacity(m);
        let mut cur = FieldElem::ONE;
        for i in 0..m {
            if i > 0 {
                cur = ctx.mul(cur, zeta);
            }
            u.push(cur);
        }
        Ok(Challenge {
            alpha,
            u,
            zeta: Some(zeta),
        })
    }

    /// Draws `α` from `S \ {0}`, then either `u_1, …, u_m` or `ζ` from `S`.
    pub fn draw(m: usize, set: SampleSet, mode: ChallengeMode, rng: &mut SeededRng, ctx: &FieldCtx) -> Self {
        let alpha = set.sample(rng, true);
        match mode {
            ChallengeMode::Independent => {
                let u = (0..m).map(|_| set.sample(rng, false)).collect();
                Challenge { alpha, u, zeta: None }
            }
            ChallengeMode::PowersOfZeta => {
                let zeta = set.sample(rng, false);
                Self::powers_of_zeta(alpha, zeta, m, ctx).expect("alpha drawn nonzero")
            }
        }
    }

    pub fn alpha(&self) -> FieldElem {
        self.alpha
    }

    pub fn u(&self) -> &[FieldElem] {
        &self.u
    }

    pub fn zeta(&self) -> Option<FieldElem> {
        self.zeta
    }

    pub fn mode(&self) -> ChallengeMode {
        if self.zeta.is_some() {
            ChallengeMode::PowersOfZeta
        } else {
            ChallengeMode::Independent
        }
    }
}

/// Right-hand side of the congruence.
#[derive(Clone, Copy, Debug)]
pub enum RhsSpec<'a> {
    /// An explicit matrix `G` with `cdeg(G) < d`.
    Explicit(&'a PolyMatrix),
    /// `G = C·X^σ`, to be used with `d = σ + 1`. Each column of `u·G` is a
    /// monomial, evaluated by repeated squaring.
    Monomial { c: &'a ConstMatrix, order: &'a Order },
}

/// Outcome of one truncated-product check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncReport {
    pub accepted: bool,
    /// `e_j = (u·G)_j(α)`.
    pub rhs_evals: Vec<FieldElem>,
    /// `e'_j = (u·P·F rem X^d)_j(α)`.
    pub lhs_evals: Vec<FieldElem>,
    pub first_mismatch: Option<usize>,
}

/// `h_0, …, h_{d_max-1}` for the row vector `v` (a `1 × m` matrix).
///
/// `h_0 = v_0` and `h_k = v_k + α^{-1} h_{k-1}`, so
/// `h_k = Σ_{i<=k} v_{k-i} α^{-i}`. Costs `1 + 2m(d_max - 1)` operations.
pub fn horner_truncated_evals(
    v: &PolyMatrix,
    alpha: FieldElem,
    d_max: usize,
    ctx: &FieldCtx,
) -> Result<Vec<Vec<FieldElem>>> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    if v.rows() != 1 {
        return Err(dim_err("horner_truncated_evals", format!("expected a row vector, got {} rows", v.rows())));
    }
    if d_max == 0 {
        return Ok(Vec::new());
    }
    if v.degree() >= Degree::finite(d_max as i64) {
        return Err(Error::DegreeTooLarge {
            op: "horner_truncated_evals",
            detail: format!("deg(v) = {} but d_max = {d_max}", v.degree()),
        });
    }
    let m = v.cols();
    let beta = ctx.inv(alpha)?;
    let mut h = Vec::with_capacity(d_max);
    h.push((0..m).map(|i| v.get(0, i).coeff(0)).collect::<Vec<_>>());
    for k in 1..d_max {
        let prev = &h[k - 1];
        let next = (0..m)
            .map(|i| ctx.add(v.get(0, i).coeff(k), ctx.mul(beta, prev[i])))
            .collect();
        h.push(next);
    }
    Ok(h)
}

/// `(u·P·f rem x^{d})(α)` from the precomputed `h` vectors, where `f` is a
/// column given by its `m` entries.
pub fn eval_truncated_column(
    h: &[Vec<FieldElem>],
    f: &[&Poly],
    d: usize,
    alpha: FieldElem,
    ctx: &FieldCtx,
) -> Result<FieldElem> {
    if d == 0 || d > h.len() {
        return Err(dim_err("eval_truncated_column", format!("order {d} with {} h vectors", h.len())));
    }
    if h[0].len() != f.len() {
        return Err(dim_err(
            "eval_truncated_column",
            format!("column of length {} against h of length {}", f.len(), h[0].len()),
        ));
    }
    let len = f.iter().map(|p| p.len()).max().unwrap_or(0);
    if len > d {
        return Err(Error::DegreeTooLarge {
            op: "eval_truncated_column",
            detail: format!("column degree {} with order {d}", len - 1),
        });
    }
    let mut total: Option<FieldElem> = None;
    for k in 0..len {
        let hk = &h[d - 1 - k];
        let mut lambda: Option<FieldElem> = None;
        for (i, fi) in f.iter().enumerate() {
            if k >= fi.len() {
                continue;
            }
            let t = ctx.mul(hk[i], fi.coeffs()[k]);
            lambda = Some(match lambda {
                None => t,
                Some(acc) => ctx.add(acc, t),
            });
        }
        if let Some(l) = lambda {
            total = Some(match total {
                None => l,
                Some(acc) => ctx.add(acc, l),
            });
        }
    }
    Ok(match total {
        None => FieldElem::ZERO,
        Some(t) => ctx.mul(ctx.pow(alpha, (d - 1) as u64), t),
    })
}

/// `e_j = g_j(α)` by Horner, for a `1 × n` row `g`.
pub fn rhs_eval_general(g: &PolyMatrix, alpha: FieldElem, ctx: &FieldCtx) -> Vec<FieldElem> {
    (0..g.cols()).map(|j| g.get(0, j).evaluate(alpha, ctx)).collect()
}

/// `e_j = (u·C_{*,j}) · α^{σ_j}`.
pub fn rhs_eval_monomial(
    c: &ConstMatrix,
    u: &[FieldElem],
    order: &Order,
    alpha: FieldElem,
    ctx: &FieldCtx,
) -> Result<Vec<FieldElem>> {
    if u.len() != c.rows() || order.len() != c.cols() {
        return Err(dim_err(
            "rhs_eval_monomial",
            format!("u of length {}, C {}x{}, order of length {}", u.len(), c.rows(), c.cols(), order.len()),
        ));
    }
    let urow = ConstMatrix::from_vec(1, u.len(), u.to_vec())?;
    let uc = urow.mul(c, ctx)?;
    Ok(order
        .as_slice()
        .iter()
        .enumerate()
        .map(|(j, &s)| {
            let w = uc.get(0, j);
            if w.is_zero() {
                FieldElem::ZERO
            } else {
                ctx.mul(w, ctx.pow(alpha, s as u64))
            }
        })
        .collect())
}

/// Checks `P·F ≡ G mod X^d` with the given challenge.
///
/// Coefficients of `P` of degree `>= d_max` cannot affect the truncated
/// product and are ignored. `F` (and an explicit `G`) must satisfy
/// `cdeg < d`.
pub fn verify_truncated_product(
    d: &TruncOrder,
    p: &PolyMatrix,
    f: &PolyMatrix,
    g: RhsSpec<'_>,
    ch: &Challenge,
    ctx: &FieldCtx,
) -> Result<TruncReport> {
    let n = f.cols();
    if p.cols() != f.rows() || ch.u.len() != p.rows() || d.len() != n {
        return Err(dim_err(
            "verify_truncated_product",
            format!(
                "P {}x{}, F {}x{}, u of length {}, d of length {}",
                p.rows(),
                p.cols(),
                f.rows(),
                f.cols(),
                ch.u.len(),
                d.len()
            ),
        ));
    }
    check_column_degrees(f, d, "F")?;
    match g {
        RhsSpec::Explicit(gm) => {
            if gm.rows() != p.rows() || gm.cols() != n {
                return Err(dim_err(
                    "verify_truncated_product",
                    format!("G is {}x{}, expected {}x{n}", gm.rows(), gm.cols(), p.rows()),
                ));
            }
            check_column_degrees(gm, d, "G")?;
        }
        RhsSpec::Monomial { c, order } => {
            if c.rows() != p.rows() || c.cols() != n || order.len() != n {
                return Err(dim_err(
                    "verify_truncated_product",
                    format!("C is {}x{}, expected {}x{n}", c.rows(), c.cols(), p.rows()),
                ));
            }
            if order.as_slice().iter().zip(d.as_slice()).any(|(s, dj)| s + 1 != *dj) {
                return Err(Error::InvalidParameter("monomial right-hand side needs d = σ + 1".into()));
            }
        }
    }
    if n == 0 {
        return Ok(TruncReport {
            accepted: true,
            rhs_evals: Vec::new(),
            lhs_evals: Vec::new(),
            first_mismatch: None,
        });
    }
    let alpha = ch.alpha;
    let d_max = d.max();

    // u·P and u·G; row dimension becomes 1
    let v = p.left_vec_mul_trunc(&ch.u, d_max, ctx)?;
    let rhs_evals = match g {
        RhsSpec::Explicit(gm) => {
            let gv = gm.left_vec_mul(&ch.u, ctx)?;
            rhs_eval_general(&gv, alpha, ctx)
        }
        RhsSpec::Monomial { c, order } => rhs_eval_monomial(c, &ch.u, order, alpha, ctx)?,
    };

    let h = horner_truncated_evals(&v, alpha, d_max, ctx)?;

    let mut lhs_evals = Vec::with_capacity(n);
    let mut col: Vec<&Poly> = vec![];
    for (j, &dj) in d.as_slice().iter().enumerate() {
        col.clear();
        col.extend((0..f.rows()).map(|i| f.get(i, j)));
        lhs_evals.push(eval_truncated_column(&h, &col, dj, alpha, ctx)?);
    }

    let first_mismatch = (0..n).find(|&j| lhs_evals[j] != rhs_evals[j]);
    Ok(TruncReport {
        accepted: first_mismatch.is_none(),
        rhs_evals,
        lhs_evals,
        first_mismatch,
    })
}

fn check_column_degrees(a: &PolyMatrix, d: &TruncOrder, what: &str) -> Result<()> {
    for (j, (cd, &dj)) in a.column_degrees().iter().zip(d.as_slice()).enumerate() {
        if *cd >= Degree::finite(dj as i64) {
            return Err(Error::DegreeTooLarge {
                op: "verify_truncated_product",
                detail: format!("column {j} of {what} has degree {cd}, order is {dj}"),
            });
        }
    }
    Ok(())
}

/// Cost bound `2|P| + (6m+1)|d| + 2n·log2(d_max)` for one check, with `m`
/// the column dimension of `P`.
pub fn op_bound(p: &PolyMatrix, d: &TruncOrder) -> f64 {
    let m = p.cols() as f64;
    let n = d.len() as f64;
    let lg = if d.max() > 1 { libm::log2(d.max() as f64) } else { 0.0 };
    2.0 * p.size_measure() as f64 + (6.0 * m + 1.0) * d.total() as f64 + 2.0 * n * lg
}
