//! Certification of a claimed `s`-minimal approximant basis `P` together
//! with its certificate `C`.
//!
//! `P` is accepted when four checks pass, in this order:
//!
//! 1. the `s`-leading matrix of `P` is invertible (`P` is `s`-reduced);
//! 2. the constant matrix `[P(0) C]` has rank `m`;
//! 3. `det P(α) = det P(1) · α^Δ` with `Δ = Σ rdeg_s(P) − Σ s`, a randomized
//!    test that `det P` is a nonzero monomial;
//! 4. `P·F ≡ C·X^σ mod X^{σ+1}`, checked with [`verify_truncated_product`].
//!
//! A rejection is always correct. An incorrect `(P, C)` is accepted with
//! probability below `(D+1)/(#S−1)`, where `D = Σ σ_j`.

use alloc::format;
use alloc::vec::Vec;

use crate::certificate::{compute_certificate_naive, Certificate};
use crate::error::{dim_err, Error, Result};
use crate::field::{FieldCtx, FieldElem, OpCounts, SampleSet};
use crate::instance::Instance;
use crate::linalg::{determinant, elimination_op_bound, rank};
use crate::matrix::{ConstMatrix, PolyMatrix, Shift, TruncOrder};
use crate::rng::SeededRng;
use crate::truncprod::{verify_truncated_product, Challenge, ChallengeMode, RhsSpec, TruncReport};

/// The check that rejected a candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    NotReduced,
    RankDeficient,
    DetNotMonomial,
    ProductMismatch,
}

impl Condition {
    pub const ALL: [Condition; 4] = [
        Condition::NotReduced,
        Condition::RankDeficient,
        Condition::DetNotMonomial,
        Condition::ProductMismatch,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Condition::NotReduced => "not-reduced",
            Condition::RankDeficient => "rank-deficient",
            Condition::DetNotMonomial => "det-not-monomial",
            Condition::ProductMismatch => "product-mismatch",
        }
    }

    pub fn parse(s: &str) -> Option<Condition> {
        Condition::ALL.into_iter().find(|c| c.as_str() == s)
    }

    /// 1-based position in the check sequence.
    pub fn step(self) -> usize {
        self as usize + 1
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Sample from `{0, …, size−1}` instead of the whole field.
    pub sample_size: Option<u64>,
    pub mode: ChallengeMode,
}

/// Random values used by one [`certify`] call, in draw order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub seed: u64,
    pub stream: u64,
    pub sample_size: u64,
    pub alpha_det: FieldElem,
    pub alpha_prod: FieldElem,
    pub u: Vec<FieldElem>,
    pub zeta: Option<FieldElem>,
    /// Field elements drawn during the call.
    pub field_draws: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub accepted: bool,
    pub failed_condition: Option<Condition>,
    /// `Σ rdeg_s(P) − Σ s`, known once the first check passed.
    pub delta: Option<i64>,
    pub transcript: Transcript,
    /// Field operations spent in the four checks.
    pub ops: OpCounts,
    pub product: Option<TruncReport>,
}

/// Check 1: returns whether the `s`-leading matrix `L` is invertible, and `L`.
pub fn check_s_reduced(p: &PolyMatrix, s: &Shift, ctx: &FieldCtx) -> Result<(bool, ConstMatrix)> {
    let l = p.s_leading_matrix(s)?;
    Ok((rank(&l, ctx) == p.rows(), l))
}

/// Check 2: `rank [P(0) C] = m`.
pub fn check_rank_p0_c(p: &PolyMatrix, c: &ConstMatrix, ctx: &FieldCtx) -> Result<bool> {
    if p.rows() != p.cols() {
        return Err(Error::NotSquare {
            rows: p.rows(),
            cols: p.cols(),
        });
    }
    if c.rows() != p.rows() {
        return Err(dim_err("check_rank_p0_c", format!("C has {} rows, P has {}", c.rows(), p.rows())));
    }
    let stacked = p.coefficient(0).hconcat(c)?;
    Ok(rank(&stacked, ctx) == p.rows())
}

/// `Σ rdeg_s(P) − Σ s`; zero rows make it undefined.
pub fn delta(p: &PolyMatrix, s: &Shift) -> Result<i64> {
    let mut total = 0i64;
    for d in p.shifted_row_degree(s)? {
        total += d.get()?;
    }
    Ok(total - s.sum())
}

/// Check 3: `det P(α) = det P(1)·α^Δ`. Assumes check 1 passed, so that
/// `Δ = deg det P`. `α = 0` is allowed.
pub fn check_det_monomial(p: &PolyMatrix, s: &Shift, alpha: FieldElem, ctx: &FieldCtx) -> Result<(bool, i64)> {
    let delta = delta(p, s)?;
    if delta < 0 {
        return Err(Error::NegativeDelta(delta));
    }
    let lhs = determinant(&p.evaluate(alpha, ctx), ctx)?;
    let at_one = determinant(&p.sum_coefficients(ctx), ctx)?;
    let rhs = ctx.mul(at_one, ctx.pow(alpha, delta as u64));
    Ok((lhs == rhs, delta))
}

fn sample_set(inst: &Instance, opts: &CertifyOptions) -> Result<SampleSet> {
    let ctx = inst.ctx();
    let needed = 2 * (inst.total_order() as u64 + 1);
    if ctx.modulus() < needed + 1 {
        return Err(Error::FieldTooSmall {
            required: needed + 1,
            available: ctx.modulus(),
        });
    }
    match opts.sample_size {
        None => Ok(SampleSet::full(ctx)),
        Some(size) => {
            if size < needed {
                return Err(Error::FieldTooSmall {
                    required: needed,
                    available: size,
                });
            }
            SampleSet::prefix(ctx, size)
        }
    }
}

/// Runs the four checks on `(P, C)` for the given instance.
///
/// Exactly `m + 2` field elements are drawn before any check runs (three
/// with [`ChallengeMode::PowersOfZeta`]): `α_det` from `S`, `α_prod` from
/// `S \ {0}`, then `u`. Errors are reserved for malformed input and fields
/// that are too small; a wrong candidate yields a rejecting [`Verdict`].
pub fn certify(
    inst: &Instance,
    p: &PolyMatrix,
    c: &Certificate,
    rng: &mut SeededRng,
    opts: &CertifyOptions,
) -> Result<Verdict> {
    let ctx = inst.ctx();
    let (m, n) = (inst.m(), inst.n());
    if p.rows() != m || p.cols() != m {
        return Err(dim_err("certify", format!("P is {}x{}, expected {m}x{m}", p.rows(), p.cols())));
    }
    let cm = c.matrix();
    if cm.rows() != m || cm.cols() != n {
        return Err(dim_err("certify", format!("C is {}x{}, expected {m}x{n}", cm.rows(), cm.cols())));
    }
    let set = sample_set(inst, opts)?;

    let draws_before = rng.field_draws();
    let alpha_det = set.sample(rng, false);
    let challenge = Challenge::draw(m, set, opts.mode, rng, ctx);
    let transcript = Transcript {
        seed: rng.seed(),
        stream: rng.stream(),
        sample_size: set.size(),
        alpha_det,
        alpha_prod: challenge.alpha(),
        u: challenge.u().to_vec(),
        zeta: challenge.zeta(),
        field_draws: rng.field_draws() - draws_before,
    };

    let (outcome, ops) = ctx.measure(|| run_checks(inst, p, cm, alpha_det, &challenge));
    let (failed_condition, delta, product) = outcome?;
    Ok(Verdict {
        accepted: failed_condition.is_none(),
        failed_condition,
        delta,
        transcript,
        ops,
        product,
    })
}

type CheckOutcome = (Option<Condition>, Option<i64>, Option<TruncReport>);

fn run_checks(
    inst: &Instance,
    p: &PolyMatrix,
    c: &ConstMatrix,
    alpha_det: FieldElem,
    challenge: &Challenge,
) -> Result<CheckOutcome> {
    let ctx = inst.ctx();
    let s = inst.shift();
    if !check_s_reduced(p, s, ctx)?.0 {
        return Ok((Some(Condition::NotReduced), None, None));
    }
    let delta = delta(p, s)?;
    if !check_rank_p0_c(p, c, ctx)? {
        return Ok((Some(Condition::RankDeficient), Some(delta), None));
    }
    if !check_det_monomial(p, s, alpha_det, ctx)?.0 {
        return Ok((Some(Condition::DetNotMonomial), Some(delta), None));
    }
    let order = inst.order();
    let d = TruncOrder::order_plus_one(order);
    // coefficients of degree > max(σ) do not reach P·F rem X^{σ+1}
    let truncated;
    let p_used = if p.degree().value().is_some_and(|deg| deg as usize > order.max()) {
        truncated = p.truncate_degree(order.max());
        &truncated
    } else {
        p
    };
    let report = verify_truncated_product(&d, p_used, inst.f(), RhsSpec::Monomial { c, order }, challenge, ctx)?;
    let failed = (!report.accepted).then_some(Condition::ProductMismatch);
    Ok((failed, Some(delta), Some(report)))
}

/// Explicit operation bound for one [`certify`] call:
/// `5|P| + 2m(D + max σ) + 3(E(m,m) + m) + E(m, m+n) + (4m+1)n + 4·log2(D·Π σ_j)`,
/// where `E` is [`elimination_op_bound`].
pub fn certify_op_bound(inst: &Instance, p: &PolyMatrix) -> f64 {
    let (m, n) = (inst.m(), inst.n());
    let order = inst.order();
    let d = order.total();
    let lg = libm::log2(d.max(1) as f64) + order.as_slice().iter().map(|&s| libm::log2(s as f64)).sum::<f64>();
    let elim = (3 * (elimination_op_bound(m, m) + m as u64) + elimination_op_bound(m, m + n)) as f64;
    5.0 * p.size_measure() as f64
        + 2.0 * (m * (d + order.max())) as f64
        + elim
        + ((4 * m + 1) * n) as f64
        + 4.0 * lg
}

/// Runs [`certify`] `k` times on the independent streams `root.split(i)`;
/// the candidate is accepted only if every run accepts.
pub fn certify_repeated(
    inst: &Instance,
    p: &PolyMatrix,
    c: &Certificate,
    seed: u64,
    k: usize,
    opts: &CertifyOptions,
) -> Result<Vec<Verdict>> {
    let root = SeededRng::new(seed);
    (0..k)
        .map(|i| certify(inst, p, c, &mut root.split(i as u64), opts))
        .collect()
}

/// Deterministic counterparts of the four checks, computed with full
/// polynomial arithmetic. Intended as a ground truth on small inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactConditions {
    pub reduced: bool,
    pub full_rank: bool,
    /// `det P` is a nonzero monomial.
    pub det_monomial: bool,
    /// `P·F ≡ C·X^σ mod X^{σ+1}`.
    pub product: bool,
}

impl ExactConditions {
    pub fn all(&self) -> bool {
        self.reduced && self.full_rank && self.det_monomial && self.product
    }

    /// The first failing check in certification order.
    pub fn first_violated(&self) -> Option<Condition> {
        if !self.reduced {
            Some(Condition::NotReduced)
        } else if !self.full_rank {
            Some(Condition::RankDeficient)
        } else if !self.det_monomial {
            Some(Condition::DetNotMonomial)
        } else if !self.product {
            Some(Condition::ProductMismatch)
        } else {
            None
        }
    }

    pub fn holds(&self, c: Condition) -> bool {
        match c {
            Condition::NotReduced => self.reduced,
            Condition::RankDeficient => self.full_rank,
            Condition::DetNotMonomial => self.det_monomial,
            Condition::ProductMismatch => self.product,
        }
    }
}

pub fn exact_conditions(inst: &Instance, p: &PolyMatrix, c: &Certificate) -> Result<ExactConditions> {
    let ctx = inst.ctx();
    let order = inst.order();
    let reduced = check_s_reduced(p, inst.shift(), ctx)?.0;
    let full_rank = check_rank_p0_c(p, c.matrix(), ctx)?;
    let det_monomial = p.determinant(ctx)?.as_monomial().is_some();
    let d: Vec<usize> = order.as_slice().iter().map(|s| s + 1).collect();
    let lhs = p.mul_rem_orders(inst.f(), &d, ctx)?;
    let rhs = c.matrix().times_x_pow(order.as_slice())?;
    let product = lhs == rhs;
    // the true certificate must agree with C when the product identity holds
    debug_assert!(!product || compute_certificate_naive(order, inst.f(), p, ctx)?.matrix() == c.matrix());
    Ok(ExactConditions {
        reduced,
        full_rank,
        det_monomial,
        product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::matrix::Order;
    use crate::poly::Poly;

    fn k7() -> FieldCtx {
        FieldCtx::new(7).unwrap()
    }

    #[test]
    fn reduced_examples() {
        let k = k7();
        assert!(check_s_reduced(&PolyMatrix::identity(3), &Shift::new(vec![4, -1, 2]), &k).unwrap().0);
        let dup = PolyMatrix::from_u64s(&k, &[&[&[1, 1], &[2]], &[&[1, 1], &[2]]]);
        assert!(!check_s_reduced(&dup, &Shift::zero(2), &k).unwrap().0);
        let p = PolyMatrix::from_u64s(&k, &[&[&[0, 1], &[1]], &[&[2], &[0, 1]]]);
        let (ok, l) = check_s_reduced(&p, &Shift::new(vec![0, 1]), &k).unwrap();
        assert!(ok);
        assert_eq!(l, ConstMatrix::from_u64s(&k, &[&[1, 1], &[0, 1]]));
    }

    #[test]
    fn rank_examples() {
        let k = k7();
        let p = PolyMatrix::from_u64s(&k, &[&[&[0, 1], &[]], &[&[], &[1]]]);
        assert!(check_rank_p0_c(&p, &ConstMatrix::from_u64s(&k, &[&[1], &[0]]), &k).unwrap());
        assert!(!check_rank_p0_c(&p, &ConstMatrix::zeros(2, 1), &k).unwrap());
        assert!(check_rank_p0_c(&PolyMatrix::identity(2), &ConstMatrix::zeros(2, 3), &k).unwrap());
    }

    #[test]
    fn det_examples() {
        let k = k7();
        let diag = |a: &[u64], b: &[u64]| PolyMatrix::from_u64s(&k, &[&[a, &[]], &[&[], b]]);
        let s = Shift::zero(2);
        for a in 0..7 {
            let alpha = k.elem(a);
            assert_eq!(check_det_monomial(&diag(&[0, 1], &[0, 1]), &s, alpha, &k).unwrap(), (true, 2));
            assert_eq!(check_det_monomial(&diag(&[1, 1], &[1]), &s, alpha, &k).unwrap(), (a == 1, 1));
            assert_eq!(check_det_monomial(&PolyMatrix::identity(2), &s, alpha, &k).unwrap(), (true, 0));
        }
    }

    fn inst(k: &FieldCtx, sigma: Vec<usize>, f: PolyMatrix) -> Instance {
        let m = f.rows();
        Instance::new(k.clone(), Order::new(sigma).unwrap(), f, Shift::zero(m)).unwrap()
    }

    #[test]
    fn trivial_instance_accepted_with_budget() {
        let k = FieldCtx::new(101).unwrap();
        let i = inst(&k, vec![2, 3], PolyMatrix::zeros(3, 2));
        let c = Certificate::new(ConstMatrix::zeros(3, 2));
        for seed in 0..20 {
            let mut rng = SeededRng::new(seed);
            let v = certify(&i, &PolyMatrix::identity(3), &c, &mut rng, &CertifyOptions::default()).unwrap();
            assert!(v.accepted);
            assert_eq!(v.transcript.field_draws, 5);
            assert_eq!(v.delta, Some(0));
            assert!(!v.transcript.alpha_prod.is_zero());
        }
    }

    #[test]
    fn x_power_identity_is_rejected_at_rank_check() {
        let k = FieldCtx::new(101).unwrap();
        let f = PolyMatrix::from_u64s(&k, &[&[&[1, 2]], &[&[3, 4]]]);
        let i = inst(&k, vec![2], f.clone());
        let p = PolyMatrix::from_fn(2, 2, |a, b| {
            if a == b {
                Poly::monomial(FieldElem::ONE, 2)
            } else {
                Poly::zero()
            }
        });
        let c = compute_certificate_naive(i.order(), &f, &p, &k).unwrap();
        let v = certify(&i, &p, &c, &mut SeededRng::new(1), &CertifyOptions::default()).unwrap();
        assert_eq!(v.failed_condition, Some(Condition::RankDeficient));
        let exact = exact_conditions(&i, &p, &c).unwrap();
        assert!(exact.reduced && exact.det_monomial && exact.product && !exact.full_rank);
    }

    #[test]
    fn field_guard() {
        let k = FieldCtx::new(11).unwrap();
        // D = 5 needs p >= 13
        let i = inst(&k, vec![5], PolyMatrix::zeros(1, 1));
        let c = Certificate::new(ConstMatrix::zeros(1, 1));
        let r = certify(&i, &PolyMatrix::identity(1), &c, &mut SeededRng::new(0), &CertifyOptions::default());
        assert_eq!(r, Err(Error::FieldTooSmall { required: 13, available: 11 }));
        let k = FieldCtx::new(101).unwrap();
        let i = inst(&k, vec![5], PolyMatrix::zeros(1, 1));
        let opts = CertifyOptions {
            sample_size: Some(11),
            ..Default::default()
        };
        let r = certify(&i, &PolyMatrix::identity(1), &c, &mut SeededRng::new(0), &opts);
        assert_eq!(r, Err(Error::FieldTooSmall { required: 12, available: 11 }));
    }

    #[test]
    fn empty_f_reduces_to_first_three_checks() {
        let k = FieldCtx::new(101).unwrap();
        let i = Instance::new(k.clone(), Order::new(vec![]).unwrap(), PolyMatrix::zeros(2, 0), Shift::zero(2)).unwrap();
        let c = Certificate::new(ConstMatrix::zeros(2, 0));
        let mut rng = SeededRng::new(3);
        assert!(certify(&i, &PolyMatrix::identity(2), &c, &mut rng, &CertifyOptions::default()).unwrap().accepted);
        let xp = PolyMatrix::from_u64s(&k, &[&[&[0, 1], &[]], &[&[], &[1]]]);
        let v = certify(&i, &xp, &c, &mut rng, &CertifyOptions::default()).unwrap();
        assert_eq!(v.failed_condition, Some(Condition::RankDeficient));
    }

    #[test]
    fn zero_row_is_not_reduced() {
        let k = FieldCtx::new(101).unwrap();
        let i = inst(&k, vec![1], PolyMatrix::from_u64s(&k, &[&[&[1]], &[&[0]]]));
        let p = PolyMatrix::from_u64s(&k, &[&[&[], &[]], &[&[], &[1]]]);
        let c = Certificate::new(ConstMatrix::zeros(2, 1));
        let v = certify(&i, &p, &c, &mut SeededRng::new(0), &CertifyOptions::default()).unwrap();
        assert_eq!(v.failed_condition, Some(Condition::NotReduced));
        assert_eq!(v.delta, None);
    }

    #[test]
    fn zeta_mode_draws_three() {
        let k = FieldCtx::new(101).unwrap();
        let i = inst(&k, vec![2], PolyMatrix::zeros(4, 1));
        let c = Certificate::new(ConstMatrix::zeros(4, 1));
        let opts = CertifyOptions {
            mode: ChallengeMode::PowersOfZeta,
            ..Default::default()
        };
        let v = certify(&i, &PolyMatrix::identity(4), &c, &mut SeededRng::new(9), &opts).unwrap();
        assert_eq!(v.transcript.field_draws, 3);
        assert_eq!(v.transcript.u[0], FieldElem::ONE);
        assert!(v.transcript.zeta.is_some());
    }

    #[test]
    fn condition_names_round_trip() {
        for c in Condition::ALL {
            assert_eq!(Condition::parse(c.as_str()), Some(c));
        }
        assert_eq!(Condition::ProductMismatch.step(), 4);
    }
}
