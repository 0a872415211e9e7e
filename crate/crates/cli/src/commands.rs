//! Subcommands as plain functions over document text, so they can be driven
//! from tests without spawning processes.

use std::fmt::Write as _;

use appbascert_core::certificate::{compute_certificate, compute_certificate_naive};
use appbascert_core::certify::{certify_repeated, Verdict};
use appbascert_core::prover::{
    gen_random_instance, iterative_appbas, tamper, ShiftProfile, SigmaProfile, TamperSpec, TamperTarget,
};
use appbascert_core::truncprod::ChallengeMode;
use appbascert_core::{CertifyOptions, FieldCtx, Instance, OpCounts, PolyMatrix, SeededRng};

use crate::error::{Error, Result};
use crate::format::{
    check_compatible, parse_basis, parse_certificate, parse_instance, write_basis, write_certificate,
    write_instance, BasisDoc, CertificateDoc, RunRecord, VerdictDoc,
};

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| usage(format!("invalid {what} `{s}`")))
}

/// `uniform:<σ>`, `random-max:<max>` or `skewed:<D>`.
pub fn parse_sigma_profile(s: &str) -> Result<SigmaProfile> {
    let (kind, arg) = s
        .split_once(':')
        .ok_or_else(|| usage(format!("order profile `{s}` needs a value, e.g. uniform:4")))?;
    let v = num(arg, "order profile value")?;
    match kind {
        "uniform" => Ok(SigmaProfile::Uniform(v)),
        "random-max" => Ok(SigmaProfile::RandomMax(v)),
        "skewed" => Ok(SigmaProfile::Skewed(v)),
        _ => Err(usage(format!("unknown order profile `{kind}`"))),
    }
}

/// `zero`, `range:<lo>:<hi>` or `staircase:<h>`.
pub fn parse_shift_profile(s: &str) -> Result<ShiftProfile> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["zero"] => Ok(ShiftProfile::Zero),
        ["range", lo, hi] => Ok(ShiftProfile::UniformRange(num(lo, "shift bound")?, num(hi, "shift bound")?)),
        ["staircase", h] => Ok(ShiftProfile::Staircase(num(h, "staircase step")?)),
        _ => Err(usage(format!("unknown shift profile `{s}`"))),
    }
}

/// `basis-coeff[:i:l:k]`, `cert-entry[:i:j]`, `swap-rows[:a:b]` or
/// `scale-row:<factor>[:row]`.
pub fn parse_tamper_target(s: &str) -> Result<TamperTarget> {
    let parts: Vec<&str> = s.split(':').collect();
    let idx = |t: &str| num::<usize>(t, "index");
    match parts.as_slice() {
        ["basis-coeff"] => Ok(TamperTarget::BasisCoeff(None)),
        ["basis-coeff", i, l, k] => Ok(TamperTarget::BasisCoeff(Some((idx(i)?, idx(l)?, idx(k)?)))),
        ["cert-entry"] => Ok(TamperTarget::CertificateEntry(None)),
        ["cert-entry", i, j] => Ok(TamperTarget::CertificateEntry(Some((idx(i)?, idx(j)?)))),
        ["swap-rows"] => Ok(TamperTarget::SwapRows(None)),
        ["swap-rows", a, b] => Ok(TamperTarget::SwapRows(Some((idx(a)?, idx(b)?)))),
        ["scale-row", f] => Ok(TamperTarget::ScaleRow {
            row: None,
            factor: num(f, "factor")?,
        }),
        ["scale-row", f, r] => Ok(TamperTarget::ScaleRow {
            row: Some(idx(r)?),
            factor: num(f, "factor")?,
        }),
        _ => Err(usage(format!("unknown tamper target `{s}`"))),
    }
}

/// The explicit flag, else `APPBASCERT_SEED`, else fresh entropy.
pub fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match env {
        Some(v) => num(v.trim(), "APPBASCERT_SEED value"),
        None => Ok(rand::random()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenOptions {
    pub p: u64,
    pub m: usize,
    pub n: usize,
    pub sigma: SigmaProfile,
    pub shift: ShiftProfile,
    pub seed: u64,
}

pub fn cmd_gen(opts: &GenOptions) -> Result<String> {
    let ctx = FieldCtx::new(opts.p)?;
    let inst = gen_random_instance(&ctx, opts.m, opts.n, opts.sigma, opts.shift, opts.seed)?;
    Ok(write_instance(&inst))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProveOutput {
    pub basis: String,
    pub certificate: String,
    pub basis_ops: OpCounts,
    pub certificate_ops: OpCounts,
}

pub fn cmd_prove(instance: &str) -> Result<ProveOutput> {
    let inst = parse_instance(instance)?;
    let ctx = inst.ctx();
    let (p, basis_ops) = ctx.measure(|| iterative_appbas(&inst));
    let (c, certificate_ops) = ctx.measure(|| compute_certificate(inst.order(), inst.f(), &p, ctx));
    let p_mod = ctx.modulus();
    Ok(ProveOutput {
        basis: write_basis(&BasisDoc { p: p_mod, basis: p }),
        certificate: write_certificate(&CertificateDoc {
            p: p_mod,
            certificate: c?,
        }),
        basis_ops,
        certificate_ops,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub sample_size: Option<u64>,
    pub zeta: bool,
    pub repeat: usize,
}

fn load_triple(instance: &str, basis: &str, certificate: &str) -> Result<(Instance, BasisDoc, CertificateDoc)> {
    let inst = parse_instance(instance)?;
    let b = parse_basis(basis)?;
    let c = parse_certificate(certificate)?;
    check_compatible(&inst, &b, &c)?;
    Ok((inst, b, c))
}

fn run_record(v: &Verdict) -> RunRecord {
    let t = &v.transcript;
    RunRecord {
        accepted: v.accepted,
        failed: v.failed_condition,
        delta: v.delta,
        stream: t.stream,
        sample_size: t.sample_size,
        draws: t.field_draws,
        alpha_det: t.alpha_det,
        alpha_prod: t.alpha_prod,
        zeta: t.zeta,
        u: t.u.clone(),
        ops: v.ops,
    }
}

/// Runs the certifier `repeat` times; the result accepts only if every run
/// does.
pub fn cmd_verify(instance: &str, basis: &str, certificate: &str, opts: &VerifyOptions) -> Result<VerdictDoc> {
    if opts.repeat == 0 {
        return Err(usage("--repeat must be at least 1"));
    }
    let (inst, b, c) = load_triple(instance, basis, certificate)?;
    let copts = CertifyOptions {
        sample_size: opts.sample_size,
        mode: if opts.zeta {
            ChallengeMode::PowersOfZeta
        } else {
            ChallengeMode::Independent
        },
    };
    let verdicts = certify_repeated(&inst, &b.basis, &c.certificate, opts.seed, opts.repeat, &copts)?;
    let runs: Vec<RunRecord> = verdicts.iter().map(run_record).collect();
    Ok(VerdictDoc {
        p: inst.ctx().modulus(),
        m: inst.m(),
        n: inst.n(),
        seed: opts.seed,
        accepted: runs.iter().all(|r| r.accepted),
        runs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TamperOutput {
    pub basis: String,
    pub certificate: String,
    pub description: String,
}

pub fn cmd_tamper(
    instance: &str,
    basis: &str,
    certificate: &str,
    spec: &TamperSpec,
    seed: u64,
) -> Result<TamperOutput> {
    let (inst, b, c) = load_triple(instance, basis, certificate)?;
    let t = tamper(&inst, &b.basis, &c.certificate, spec, &mut SeededRng::new(seed))?;
    let p = inst.ctx().modulus();
    Ok(TamperOutput {
        basis: write_basis(&BasisDoc { p, basis: t.basis }),
        certificate: write_certificate(&CertificateDoc {
            p,
            certificate: t.certificate,
        }),
        description: t.description,
    })
}

/// Operation counts for one benchmark instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub m: usize,
    pub n: usize,
    pub sigma: SigmaProfile,
    pub seed: u64,
    pub prove: u64,
    pub certificate: u64,
    pub certificate_naive: u64,
    pub verify: u64,
    pub recompute: u64,
}

/// Field operations to check `(P, C)` by recomputing `P·F rem X^{σ+1}` and
/// comparing it with `C·X^σ`.
pub fn naive_recompute_ops(inst: &Instance, p: &PolyMatrix) -> Result<u64> {
    let d: Vec<usize> = inst.order().as_slice().iter().map(|s| s + 1).collect();
    let (prod, ops) = inst.ctx().measure(|| p.mul_rem_orders(inst.f(), &d, inst.ctx()));
    prod?;
    Ok(ops.total())
}

pub fn bench_row(p: u64, m: usize, n: usize, sigma: SigmaProfile, seed: u64) -> Result<BenchRow> {
    let ctx = FieldCtx::new(p)?;
    let inst = gen_random_instance(&ctx, m, n, sigma, ShiftProfile::Zero, seed)?;
    let ctx = inst.ctx();
    let (basis, prove_ops) = ctx.measure(|| iterative_appbas(&inst));
    let (c, cert_ops) = ctx.measure(|| compute_certificate(inst.order(), inst.f(), &basis, ctx));
    let c = c?;
    let (naive, naive_ops) = ctx.measure(|| compute_certificate_naive(inst.order(), inst.f(), &basis, ctx));
    naive?;
    let v = certify_repeated(&inst, &basis, &c, seed, 1, &CertifyOptions::default())?;
    Ok(BenchRow {
        m,
        n,
        sigma,
        seed,
        prove: prove_ops.total(),
        certificate: cert_ops.total(),
        certificate_naive: naive_ops.total(),
        verify: v[0].ops.total(),
        recompute: naive_recompute_ops(&inst, &basis)?,
    })
}

fn profile_str(s: SigmaProfile) -> String {
    match s {
        SigmaProfile::Uniform(v) => format!("uniform:{v}"),
        SigmaProfile::RandomMax(v) => format!("random-max:{v}"),
        SigmaProfile::Skewed(v) => format!("skewed:{v}"),
    }
}

/// One row per grid point and seed, tab separated.
pub fn cmd_bench(p: u64, grid: &[(usize, usize, SigmaProfile)], seeds: &[u64]) -> Result<String> {
    let mut out = String::from(
        "m\tn\torder\tseed\tprove\tcertificate\tcertificate-naive\tverify\trecompute\trecompute/verify\n",
    );
    for &(m, n, sigma) in grid {
        for &seed in seeds {
            let r = bench_row(p, m, n, sigma, seed)?;
            let _ = writeln!(
                out,
                "{m}\t{n}\t{}\t{seed}\t{}\t{}\t{}\t{}\t{}\t{:.2}",
                profile_str(sigma),
                r.prove,
                r.certificate,
                r.certificate_naive,
                r.verify,
                r.recompute,
                r.recompute as f64 / r.verify.max(1) as f64
            );
        }
    }
    Ok(out)
}

/// `<m>x<n>:<order profile>`, e.g. `4x4:uniform:32`.
pub fn parse_grid_point(s: &str) -> Result<(usize, usize, SigmaProfile)> {
    let (dims, profile) = s
        .split_once(':')
        .ok_or_else(|| usage(format!("grid point `{s}` should look like 4x4:uniform:32")))?;
    let (m, n) = dims
        .split_once('x')
        .ok_or_else(|| usage(format!("grid dimensions `{dims}` should look like 4x4")))?;
    Ok((num(m, "row count")?, num(n, "column count")?, parse_sigma_profile(profile)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_verdict;

    fn gen(seed: u64) -> String {
        cmd_gen(&GenOptions {
            p: 101,
            m: 3,
            n: 2,
            sigma: SigmaProfile::Uniform(4),
            shift: ShiftProfile::UniformRange(-2, 2),
            seed,
        })
        .unwrap()
    }

    #[test]
    fn profile_syntax() {
        assert_eq!(parse_sigma_profile("skewed:20").unwrap(), SigmaProfile::Skewed(20));
        assert_eq!(parse_shift_profile("range:-1:3").unwrap(), ShiftProfile::UniformRange(-1, 3));
        assert_eq!(parse_shift_profile("staircase:2").unwrap(), ShiftProfile::Staircase(2));
        assert!(parse_sigma_profile("uniform").is_err());
        assert_eq!(
            parse_tamper_target("scale-row:3:1").unwrap(),
            TamperTarget::ScaleRow { row: Some(1), factor: 3 }
        );
        assert!(parse_tamper_target("swap-rows:1").is_err());
        assert_eq!(parse_grid_point("2x3:uniform:8").unwrap(), (2, 3, SigmaProfile::Uniform(8)));
    }

    #[test]
    fn seed_resolution() {
        assert_eq!(resolve_seed(Some(5), Some("9")).unwrap(), 5);
        assert_eq!(resolve_seed(None, Some("9")).unwrap(), 9);
        assert!(resolve_seed(None, Some("nine")).is_err());
    }

    #[test]
    fn prove_then_verify_is_reproducible() {
        let inst = gen(3);
        let out = cmd_prove(&inst).unwrap();
        let opts = VerifyOptions {
            seed: 17,
            sample_size: None,
            zeta: false,
            repeat: 3,
        };
        let a = cmd_verify(&inst, &out.basis, &out.certificate, &opts).unwrap();
        let b = cmd_verify(&inst, &out.basis, &out.certificate, &opts).unwrap();
        assert!(a.accepted);
        assert_eq!(a.runs.len(), 3);
        assert_eq!(crate::format::write_verdict(&a), crate::format::write_verdict(&b));
        assert_eq!(parse_verdict(&crate::format::write_verdict(&a)).unwrap(), a);
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let inst = gen(4);
        let out = cmd_prove(&inst).unwrap();
        let spec = TamperSpec {
            target: TamperTarget::CertificateEntry(Some((0, 0))),
            preserve_cheap_checks: false,
        };
        let t = cmd_tamper(&inst, &out.basis, &out.certificate, &spec, 1).unwrap();
        assert_ne!(t.certificate, out.certificate);
        let opts = VerifyOptions {
            seed: 2,
            sample_size: None,
            zeta: false,
            repeat: 5,
        };
        let v = cmd_verify(&inst, &t.basis, &t.certificate, &opts).unwrap();
        // a corrupted C either breaks the rank check or the product check
        assert!(!v.accepted);
    }

    #[test]
    fn small_field_and_sample_set() {
        let inst = gen(5);
        let out = cmd_prove(&inst).unwrap();
        let opts = VerifyOptions {
            seed: 1,
            sample_size: Some(4),
            zeta: false,
            repeat: 1,
        };
        let e = cmd_verify(&inst, &out.basis, &out.certificate, &opts).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn bench_table() {
        let t = cmd_bench(10007, &[(2, 2, SigmaProfile::Uniform(8))], &[1, 2]).unwrap();
        assert_eq!(t.lines().count(), 3);
    }
}
