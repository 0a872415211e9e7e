//! The constant certificate `C`: column `j` is the coefficient of degree
//! `σ_j` in column `j` of `P·F`.
//!
//! Three computations are provided. The naive one follows the explicit
//! formula `C_ij = Σ_{k=1}^{min(r_i, σ_j)} P_{i,*,k} · F_{*,j,σ_j-k}`. The
//! row-degree and column-degree variants loop over `k = 1..max(σ)` and only
//! touch the rows (resp. columns) of `P` whose degree reaches `k` and the
//! columns of `F` with `σ_j >= k`, which is cheap whenever the degrees of `P`
//! are concentrated in a few rows or columns.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{dim_err, Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::matrix::{ConstMatrix, Order, PolyMatrix};
use crate::poly::Degree;

/// Certificate matrix `C ∈ 𝔽_p^{m×n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate(ConstMatrix);

impl Certificate {
    pub fn new(c: ConstMatrix) -> Self {
        Certificate(c)
    }

    pub fn matrix(&self) -> &ConstMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ConstMatrix {
        self.0
    }
}

impl From<ConstMatrix> for Certificate {
    fn from(c: ConstMatrix) -> Self {
        Certificate(c)
    }
}

/// Which loop [`compute_certificate`] picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    RowDegree,
    ColumnDegree,
}

/// One iteration of the `k` loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub k: usize,
    /// `#R_k` (row variant) or `#C_k` (column variant).
    pub active: usize,
    /// `#O_k`, the number of columns of `F` with `σ_j >= k`.
    pub columns: usize,
}

/// Loop trace for diagnostics.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertTrace {
    pub steps: Vec<TraceStep>,
    /// `⌈Σ max(0, rdeg P) / D⌉`, at least 1 (column sums for the column variant).
    pub gamma: u64,
}

fn nonneg_sum(d: &[Degree]) -> u64 {
    d.iter().map(|x| x.nonneg()).sum()
}

fn validate(order: &Order, f: &PolyMatrix, p: &PolyMatrix, op: &'static str) -> Result<()> {
    if p.rows() != p.cols() {
        return Err(Error::NotSquare {
            rows: p.rows(),
            cols: p.cols(),
        });
    }
    if p.cols() != f.rows() || order.len() != f.cols() {
        return Err(dim_err(
            op,
            format!(
                "P {}x{}, F {}x{}, order of length {}",
                p.rows(),
                p.cols(),
                f.rows(),
                f.cols(),
                order.len()
            ),
        ));
    }
    for (j, (cd, &s)) in f.column_degrees().iter().zip(order.as_slice()).enumerate() {
        if *cd >= Degree::finite(s as i64) {
            return Err(Error::DegreeTooLarge {
                op,
                detail: format!("column {j} of F has degree {cd}, order is {s}"),
            });
        }
    }
    Ok(())
}

fn check_truncated(order: &Order, p: &PolyMatrix, op: &'static str) -> Result<()> {
    if p.degree() > Degree::finite(order.max() as i64) {
        return Err(Error::DegreeTooLarge {
            op,
            detail: format!("deg(P) = {} exceeds max(σ) = {}", p.degree(), order.max()),
        });
    }
    Ok(())
}

/// Explicit formula, `O(m²D)` operations. Any degree of `P` is accepted.
pub fn compute_certificate_naive(order: &Order, f: &PolyMatrix, p: &PolyMatrix, ctx: &FieldCtx) -> Result<Certificate> {
    validate(order, f, p, "compute_certificate_naive")?;
    let (m, n) = (p.rows(), f.cols());
    let rdeg = p.row_degrees();
    let sigma = order.as_slice();
    let mut c = ConstMatrix::zeros(m, n);
    for i in 0..m {
        let Some(ri) = rdeg[i].value() else { continue };
        for j in 0..n {
            let mut acc = FieldElem::ZERO;
            for k in 1..=(ri as usize).min(sigma[j]) {
                for l in 0..m {
                    let a = p.get(i, l).coeff(k);
                    let b = f.get(l, j).coeff(sigma[j] - k);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = ctx.add(acc, ctx.mul(a, b));
                }
            }
            c.set(i, j, acc);
        }
    }
    Ok(Certificate(c))
}

/// Row-degree loop. Requires `deg(P) <= max(σ)`.
pub fn compute_certificate_rowdeg(order: &Order, f: &PolyMatrix, p: &PolyMatrix, ctx: &FieldCtx) -> Result<Certificate> {
    compute_certificate_rowdeg_traced(order, f, p, ctx).map(|(c, _)| c)
}

pub fn compute_certificate_rowdeg_traced(
    order: &Order,
    f: &PolyMatrix,
    p: &PolyMatrix,
    ctx: &FieldCtx,
) -> Result<(Certificate, CertTrace)> {
    const OP: &str = "compute_certificate_rowdeg";
    validate(order, f, p, OP)?;
    check_truncated(order, p, OP)?;
    let (m, n) = (p.rows(), f.cols());
    let rdeg = p.row_degrees();
    let sigma = order.as_slice();
    let mut c = ConstMatrix::zeros(m, n);
    let mut trace = CertTrace {
        steps: Vec::new(),
        gamma: gamma(nonneg_sum(&rdeg), order.total()),
    };
    for k in 1..=order.max() {
        let rows: Vec<usize> = (0..m).filter(|&i| rdeg[i] >= Degree::finite(k as i64)).collect();
        let cols: Vec<usize> = (0..n).filter(|&j| sigma[j] >= k).collect();
        trace.steps.push(TraceStep {
            k,
            active: rows.len(),
            columns: cols.len(),
        });
        if rows.is_empty() || cols.is_empty() {
            continue;
        }
        let a = ConstMatrix::from_fn(rows.len(), m, |r, l| p.get(rows[r], l).coeff(k));
        let b = ConstMatrix::from_fn(m, cols.len(), |l, t| f.get(l, cols[t]).coeff(sigma[cols[t]] - k));
        let ab = a.mul(&b, ctx)?;
        for (r, &i) in rows.iter().enumerate() {
            for (t, &j) in cols.iter().enumerate() {
                c.set(i, j, ctx.add(c.get(i, j), ab.get(r, t)));
            }
        }
    }
    Ok((Certificate(c), trace))
}

/// Column-degree loop. Requires `deg(P) <= max(σ)`.
pub fn compute_certificate_coldeg(order: &Order, f: &PolyMatrix, p: &PolyMatrix, ctx: &FieldCtx) -> Result<Certificate> {
    compute_certificate_coldeg_traced(order, f, p, ctx).map(|(c, _)| c)
}

pub fn compute_certificate_coldeg_traced(
    order: &Order,
    f: &PolyMatrix,
    p: &PolyMatrix,
    ctx: &FieldCtx,
) -> Result<(Certificate, CertTrace)> {
    const OP: &str = "compute_certificate_coldeg";
    validate(order, f, p, OP)?;
    check_truncated(order, p, OP)?;
    let (m, n) = (p.rows(), f.cols());
    let cdeg = p.column_degrees();
    let sigma = order.as_slice();
    let mut c = ConstMatrix::zeros(m, n);
    let mut trace = CertTrace {
        steps: Vec::new(),
        gamma: gamma(nonneg_sum(&cdeg), order.total()),
    };
    for k in 1..=order.max() {
        let inner: Vec<usize> = (0..m).filter(|&l| cdeg[l] >= Degree::finite(k as i64)).collect();
        let cols: Vec<usize> = (0..n).filter(|&j| sigma[j] >= k).collect();
        trace.steps.push(TraceStep {
            k,
            active: inner.len(),
            columns: cols.len(),
        });
        if inner.is_empty() || cols.is_empty() {
            continue;
        }
        let a = ConstMatrix::from_fn(m, inner.len(), |i, t| p.get(i, inner[t]).coeff(k));
        let b = ConstMatrix::from_fn(inner.len(), cols.len(), |t, s| {
            f.get(inner[t], cols[s]).coeff(sigma[cols[s]] - k)
        });
        let ab = a.mul(&b, ctx)?;
        for i in 0..m {
            for (s, &j) in cols.iter().enumerate() {
                c.set(i, j, ctx.add(c.get(i, j), ab.get(i, s)));
            }
        }
    }
    Ok((Certificate(c), trace))
}

fn gamma(total_deg: u64, d: usize) -> u64 {
    if d == 0 {
        return 1;
    }
    total_deg.div_ceil(d as u64).max(1)
}

/// Row variant when `Σ max(0, rdeg P) <= Σ max(0, cdeg P)`, column variant
/// otherwise.
pub fn choose_variant(p: &PolyMatrix) -> Variant {
    if nonneg_sum(&p.row_degrees()) <= nonneg_sum(&p.column_degrees()) {
        Variant::RowDegree
    } else {
        Variant::ColumnDegree
    }
}

/// Truncates `P` to degree `max(σ)` (higher coefficients cannot reach `C`)
/// and runs the cheaper loop.
pub fn compute_certificate(order: &Order, f: &PolyMatrix, p: &PolyMatrix, ctx: &FieldCtx) -> Result<Certificate> {
    compute_certificate_with_variant(order, f, p, ctx).map(|(c, _)| c)
}

pub fn compute_certificate_with_variant(
    order: &Order,
    f: &PolyMatrix,
    p: &PolyMatrix,
    ctx: &FieldCtx,
) -> Result<(Certificate, Variant)> {
    validate(order, f, p, "compute_certificate")?;
    let p = if p.degree() > Degree::finite(order.max() as i64) {
        p.truncate_degree(order.max())
    } else {
        p.clone()
    };
    let v = choose_variant(&p);
    let c = match v {
        Variant::RowDegree => compute_certificate_rowdeg(order, f, &p, ctx)?,
        Variant::ColumnDegree => compute_certificate_coldeg(order, f, &p, ctx)?,
    };
    Ok((c, v))
}
