//! Producing honest instances, bases and certificates, and corrupting them.
//!
//! [`iterative_appbas`] is the classical order-by-order approximant basis
//! algorithm: quadratic in the order, but simple and deterministic.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::certificate::{compute_certificate, Certificate};
use crate::certify::{check_rank_p0_c, exact_conditions, Condition, ExactConditions};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::instance::Instance;
use crate::matrix::{Order, PolyMatrix, Shift};
use crate::poly::Poly;
use crate::rng::SeededRng;

/// An `s`-minimal basis of the approximants of `inst`, along with the final
/// working degrees `t = rdeg_s(P)`.
///
/// Starting from `P = I` and `t = s`, columns are processed in order and, for
/// each column `j`, orders `k = 0, …, σ_j − 1`. The residual is the
/// coefficient of degree `k` of `P·F_{*,j}`, kept up to date alongside `P`.
/// If it is nonzero, the pivot is the row with smallest `t_i` among rows with
/// a nonzero residual (smallest index on ties); the other such rows are
/// cleared against it, and the pivot row is multiplied by `x`.
pub fn iterative_appbas_with_degrees(inst: &Instance) -> (PolyMatrix, Vec<i64>) {
    let ctx = inst.ctx();
    let m = inst.m();
    let f = inst.f();
    let sigma = inst.order().as_slice();
    let mut t: Vec<i64> = inst.shift().as_slice().to_vec();
    // p[i][l]: dense coefficients of entry (i, l)
    let mut p: Vec<Vec<Vec<FieldElem>>> = (0..m)
        .map(|i| (0..m).map(|l| if i == l { vec![FieldElem::ONE] } else { Vec::new() }).collect())
        .collect();

    for (j, &sj) in sigma.iter().enumerate() {
        // residuals r_i = (P·F_{*,j}) rem x^{σ_j}
        let mut res: Vec<Vec<FieldElem>> = (0..m)
            .map(|i| {
                let mut acc = Vec::new();
                for l in 0..m {
                    let pil = Poly::from_coeffs(p[i][l].clone());
                    pil.mul_acc_trunc(f.get(l, j), sj, &mut acc, ctx);
                }
                acc.resize(sj, FieldElem::ZERO);
                acc
            })
            .collect();

        for k in 0..sj {
            let active: Vec<usize> = (0..m).filter(|&i| !res[i][k].is_zero()).collect();
            let Some(&pi) = active.iter().min_by_key(|&&i| (t[i], i)) else {
                continue;
            };
            let inv = ctx.inv(res[pi][k]).expect("residual is nonzero");
            for &i in &active {
                if i == pi {
                    continue;
                }
                let c = ctx.mul(res[i][k], inv);
                let (row_i, row_pi) = pair_mut(&mut res, i, pi);
                axpy_neg(&mut row_i[k..], &row_pi[k..], c, ctx);
                let (pi_row, pp_row) = pair_mut(&mut p, i, pi);
                for l in 0..m {
                    let src = &pp_row[l];
                    let dst = &mut pi_row[l];
                    if dst.len() < src.len() {
                        dst.resize(src.len(), FieldElem::ZERO);
                    }
                    axpy_neg(&mut dst[..src.len()], src, c, ctx);
                }
            }
            for l in 0..m {
                let e = &mut p[pi][l];
                if !e.is_empty() {
                    e.insert(0, FieldElem::ZERO);
                }
            }
            let r = &mut res[pi];
            r.insert(0, FieldElem::ZERO);
            r.truncate(sj);
            t[pi] += 1;
        }
    }
    let out = PolyMatrix::from_fn(m, m, |i, l| Poly::from_coeffs(core::mem::take(&mut p[i][l])));
    (out, t)
}

pub fn iterative_appbas(inst: &Instance) -> PolyMatrix {
    iterative_appbas_with_degrees(inst).0
}

/// The basis from [`iterative_appbas`] with its certificate.
pub fn prove(inst: &Instance) -> Result<(PolyMatrix, Certificate)> {
    let p = iterative_appbas(inst);
    let c = compute_certificate(inst.order(), inst.f(), &p, inst.ctx())?;
    Ok((p, c))
}

fn pair_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &T) {
    debug_assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &lo[b])
    }
}

/// `dst -= c·src`, elementwise over the common length.
fn axpy_neg(dst: &mut [FieldElem], src: &[FieldElem], c: FieldElem, ctx: &FieldCtx) {
    for (d, &s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = ctx.sub(*d, ctx.mul(c, s));
        }
    }
}

/// How the order `σ` of a random instance is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaProfile {
    /// Every `σ_j` equal to the given value.
    Uniform(usize),
    /// Each `σ_j` uniform in `1..=max`.
    RandomMax(usize),
    /// `σ = (D − n + 1, 1, …, 1)` for the given total `D >= n`.
    Skewed(usize),
}

/// How the shift `s` of a random instance is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftProfile {
    Zero,
    /// Each `s_i` uniform in `lo..=hi`.
    UniformRange(i64, i64),
    /// `s = (0, h, 2h, …)`.
    Staircase(i64),
}

/// A reproducible random instance. Draw order: `σ` (for
/// [`SigmaProfile::RandomMax`]), then `s` (for
/// [`ShiftProfile::UniformRange`]), then the coefficients of `F` in
/// row-major entry order, `σ_j` coefficients per entry of column `j`.
pub fn gen_random_instance(
    ctx: &FieldCtx,
    m: usize,
    n: usize,
    sigma: SigmaProfile,
    shift: ShiftProfile,
    seed: u64,
) -> Result<Instance> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let mut rng = SeededRng::new(seed);
    let order = match sigma {
        SigmaProfile::Uniform(s) => Order::uniform(n, s)?,
        SigmaProfile::RandomMax(mx) => {
            if mx == 0 {
                return Err(Error::InvalidOrder);
            }
            Order::new((0..n).map(|_| 1 + rng.below(mx as u64) as usize).collect())?
        }
        SigmaProfile::Skewed(total) => {
            if n == 0 || total < n {
                return Err(Error::InvalidParameter(format!("skewed order needs D >= n, got D = {total}, n = {n}")));
            }
            let mut s = vec![1; n];
            s[0] = total - (n - 1);
            Order::new(s)?
        }
    };
    let shift = match shift {
        ShiftProfile::Zero => Shift::zero(m),
        ShiftProfile::UniformRange(lo, hi) => {
            if lo > hi {
                return Err(Error::InvalidParameter(format!("empty shift range {lo}..={hi}")));
            }
            let width = (hi - lo) as u64 + 1;
            Shift::new((0..m).map(|_| lo + rng.below(width) as i64).collect())
        }
        ShiftProfile::Staircase(h) => Shift::new((0..m as i64).map(|i| i * h).collect()),
    };
    let sig = order.as_slice();
    let f = PolyMatrix::from_fn(m, n, |_, j| {
        Poly::from_coeffs((0..sig[j]).map(|_| ctx.sample_uniform(&mut rng, false)).collect())
    });
    Instance::new(ctx.clone(), order, f, shift)
}

/// What to corrupt. `None` locations are chosen at random.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TamperTarget {
    /// Add a random nonzero value to the coefficient `(row, col, degree)` of `P`.
    BasisCoeff(Option<(usize, usize, usize)>),
    /// Add a random nonzero value to `C[row, col]`.
    CertificateEntry(Option<(usize, usize)>),
    /// Exchange two rows of `P`, leaving `C` as is.
    SwapRows(Option<(usize, usize)>),
    /// Multiply a row of `P` by `factor`, leaving `C` as is.
    ScaleRow { row: Option<usize>, factor: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TamperSpec {
    pub target: TamperTarget,
    /// Only pick mutations after which the `s`-leading matrix stays
    /// invertible and `[P(0) C]` keeps full rank, so that the cheap
    /// deterministic checks still pass.
    pub preserve_cheap_checks: bool,
}

/// A corrupted `(P, C)` and the ground truth about it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tampered {
    pub basis: PolyMatrix,
    pub certificate: Certificate,
    /// First violated check according to [`exact_conditions`].
    pub violated: Option<Condition>,
    pub exact: ExactConditions,
    pub description: String,
}

const TAMPER_ATTEMPTS: usize = 64;

/// Applies `spec` to copies of `(P, C)`. The result always differs from the
/// input.
pub fn tamper(
    inst: &Instance,
    p: &PolyMatrix,
    c: &Certificate,
    spec: &TamperSpec,
    rng: &mut SeededRng,
) -> Result<Tampered> {
    let ctx = inst.ctx();
    let m = p.rows();
    let shift = inst.shift();
    let keep = spec.preserve_cheap_checks;
    let cheap_ok = |q: &PolyMatrix, cm: &Certificate| -> Result<bool> {
        let l = q.s_leading_matrix(shift)?;
        Ok(crate::linalg::rank(&l, ctx) == m && check_rank_p0_c(q, cm.matrix(), ctx)?)
    };
    let nonzero = |rng: &mut SeededRng| ctx.sample_uniform(rng, true);

    let (basis, certificate, description) = match spec.target {
        TamperTarget::BasisCoeff(at) => {
            let rdeg = p.shifted_row_degree(shift)?;
            let pick = |rng: &mut SeededRng| -> Option<(usize, usize, usize)> {
                if let Some(loc) = at {
                    return Some(loc);
                }
                if keep {
                    // strictly between the constant term and the leading position
                    let slots: Vec<(usize, usize, i64)> = (0..m)
                        .flat_map(|i| (0..m).map(move |l| (i, l)))
                        .filter_map(|(i, l)| {
                            let top = rdeg[i].value()? - shift.as_slice()[l];
                            (top >= 2).then_some((i, l, top))
                        })
                        .collect();
                    if slots.is_empty() {
                        return None;
                    }
                    let (i, l, top) = slots[rng.below(slots.len() as u64) as usize];
                    Some((i, l, 1 + rng.below((top - 1) as u64) as usize))
                } else {
                    let deg = p.degree().value().unwrap_or(0).max(0) as u64;
                    Some((rng.below(m as u64) as usize, rng.below(m as u64) as usize, rng.below(deg + 1) as usize))
                }
            };
            let mut found = None;
            for _ in 0..TAMPER_ATTEMPTS {
                let Some((i, l, k)) = pick(rng) else { break };
                if i >= m || l >= m {
                    return Err(Error::InvalidParameter(format!("basis entry ({i}, {l}) out of range")));
                }
                let mut q = p.clone();
                let mut coeffs = q.get(i, l).coeffs().to_vec();
                if coeffs.len() <= k {
                    coeffs.resize(k + 1, FieldElem::ZERO);
                }
                coeffs[k] = ctx.add(coeffs[k], nonzero(rng));
                q.set(i, l, Poly::from_coeffs(coeffs));
                if !keep || cheap_ok(&q, c)? {
                    found = Some((q, c.clone(), format!("basis-coeff {i} {l} {k}")));
                    break;
                }
                if at.is_some() {
                    break;
                }
            }
            found.ok_or(Error::NoValidLocation("basis-coeff"))?
        }
        TamperTarget::CertificateEntry(at) => {
            let cm = c.matrix();
            if cm.cols() == 0 {
                return Err(Error::NoValidLocation("certificate-entry"));
            }
            let mut found = None;
            for _ in 0..TAMPER_ATTEMPTS {
                let (i, j) = at.unwrap_or_else(|| (rng.below(m as u64) as usize, rng.below(cm.cols() as u64) as usize));
                if i >= m || j >= cm.cols() {
                    return Err(Error::InvalidParameter(format!("certificate entry ({i}, {j}) out of range")));
                }
                let mut d = cm.clone();
                d.set(i, j, ctx.add(d.get(i, j), nonzero(rng)));
                let d = Certificate::new(d);
                if !keep || cheap_ok(p, &d)? {
                    found = Some((p.clone(), d, format!("certificate-entry {i} {j}")));
                    break;
                }
                if at.is_some() {
                    break;
                }
            }
            found.ok_or(Error::NoValidLocation("certificate-entry"))?
        }
        TamperTarget::SwapRows(at) => {
            let mut found = None;
            if m >= 2 {
                for _ in 0..TAMPER_ATTEMPTS {
                    let (a, b) = at.unwrap_or_else(|| {
                        let a = rng.below(m as u64) as usize;
                        let b = (a + 1 + rng.below(m as u64 - 1) as usize) % m;
                        (a, b)
                    });
                    if a >= m || b >= m {
                        return Err(Error::InvalidParameter(format!("rows ({a}, {b}) out of range")));
                    }
                    let mut q = p.clone();
                    q.swap_rows(a, b);
                    if q != *p && (!keep || cheap_ok(&q, c)?) {
                        found = Some((q, c.clone(), format!("swap-rows {a} {b}")));
                        break;
                    }
                    if at.is_some() {
                        break;
                    }
                }
            }
            found.ok_or(Error::NoValidLocation("swap-rows"))?
        }
        TamperTarget::ScaleRow { row, factor } => {
            let factor = ctx.elem(factor);
            if factor == FieldElem::ONE {
                return Err(Error::InvalidParameter("scaling by 1 changes nothing".into()));
            }
            let mut found = None;
            for _ in 0..TAMPER_ATTEMPTS {
                let i = row.unwrap_or_else(|| rng.below(m as u64) as usize);
                if i >= m {
                    return Err(Error::InvalidParameter(format!("row {i} out of range")));
                }
                let mut q = p.clone();
                for l in 0..m {
                    let e = q.get(i, l).scale(factor, ctx);
                    q.set(i, l, e);
                }
                if q != *p && (!keep || cheap_ok(&q, c)?) {
                    found = Some((q, c.clone(), format!("scale-row {i} {}", factor.value())));
                    break;
                }
                if row.is_some() {
                    break;
                }
            }
            found.ok_or(Error::NoValidLocation("scale-row"))?
        }
    };
    let exact = exact_conditions(inst, &basis, &certificate)?;
    Ok(Tampered {
        violated: exact.first_violated(),
        exact,
        basis,
        certificate,
        description,
    })
}
