use appbascert_core::certify::{certify_repeated, exact_conditions};
use appbascert_core::prover::{
    gen_random_instance, iterative_appbas_with_degrees, prove, tamper, ShiftProfile, SigmaProfile, TamperSpec,
    TamperTarget,
};
use appbascert_core::{certify, CertifyOptions, Condition, FieldCtx, SeededRng};
use proptest::prelude::*;

fn shift_profile(k: u8) -> ShiftProfile {
    match k % 4 {
        0 => ShiftProfile::Zero,
        1 => ShiftProfile::UniformRange(-4, 4),
        2 => ShiftProfile::Staircase(3),
        _ => ShiftProfile::Staircase(-2),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn honest_pairs_satisfy_every_condition(m in 1usize..5, n in 1usize..4, smax in 1usize..6, sp in 0u8..4, seed: u64) {
        let ctx = FieldCtx::new(10007).unwrap();
        let inst = gen_random_instance(&ctx, m, n, SigmaProfile::RandomMax(smax), shift_profile(sp), seed).unwrap();
        let (p, c) = prove(&inst).unwrap();
        prop_assert!(exact_conditions(&inst, &p, &c).unwrap().all());
        let runs = certify_repeated(&inst, &p, &c, seed, 3, &CertifyOptions::default()).unwrap();
        prop_assert!(runs.iter().all(|v| v.accepted));
    }

    #[test]
    fn rejections_are_always_justified(m in 1usize..4, n in 1usize..3, sp in 0u8..4, target in 0u8..4, seed: u64) {
        let ctx = FieldCtx::new(101).unwrap();
        let inst = gen_random_instance(&ctx, m, n, SigmaProfile::RandomMax(4), shift_profile(sp), seed).unwrap();
        let (p, c) = prove(&inst).unwrap();
        let target = match target {
            0 => TamperTarget::BasisCoeff(None),
            1 => TamperTarget::CertificateEntry(None),
            2 => TamperTarget::SwapRows(None),
            _ => TamperTarget::ScaleRow { row: None, factor: 3 },
        };
        let spec = TamperSpec { target, preserve_cheap_checks: false };
        let mut rng = SeededRng::new(seed);
        let Ok(bad) = tamper(&inst, &p, &c, &spec, &mut rng) else { return Ok(()) };
        let v = certify(&inst, &bad.basis, &bad.certificate, &mut rng, &CertifyOptions::default()).unwrap();
        if let Some(cond) = v.failed_condition {
            // deterministic steps report exactly the first violated condition
            if cond != Condition::ProductMismatch {
                prop_assert_eq!(Some(cond), bad.violated);
            }
            prop_assert!(!bad.exact.holds(cond));
        } else {
            // an accepted pair passes every deterministic step
            prop_assert!(bad.exact.reduced && bad.exact.full_rank);
        }
    }

    #[test]
    fn degrees_match_shifted_row_degrees(m in 1usize..5, n in 1usize..4, seed: u64) {
        let ctx = FieldCtx::new(97).unwrap();
        let inst = gen_random_instance(&ctx, m, n, SigmaProfile::RandomMax(5), ShiftProfile::UniformRange(-3, 3), seed).unwrap();
        let (p, t) = iterative_appbas_with_degrees(&inst);
        let rdeg: Vec<i64> = p.shifted_row_degree(inst.shift()).unwrap().iter().map(|d| d.get().unwrap()).collect();
        prop_assert_eq!(&rdeg, &t);
        let det = p.determinant(&ctx).unwrap();
        let total: i64 = t.iter().sum::<i64>() - inst.shift().sum();
        prop_assert_eq!(det.degree().get().unwrap(), total);
        prop_assert!(total as usize <= inst.total_order());
    }
}

#[test]
fn repeated_runs_use_distinct_streams() {
    let ctx = FieldCtx::new(10007).unwrap();
    let inst = gen_random_instance(&ctx, 3, 2, SigmaProfile::Uniform(3), ShiftProfile::Zero, 4).unwrap();
    let (p, c) = prove(&inst).unwrap();
    let runs = certify_repeated(&inst, &p, &c, 99, 4, &CertifyOptions::default()).unwrap();
    let streams: Vec<u64> = runs.iter().map(|v| v.transcript.stream).collect();
    assert_eq!(streams, vec![1, 2, 3, 4]);
    assert!(runs.windows(2).all(|w| w[0].transcript.u != w[1].transcript.u));
    let again = certify_repeated(&inst, &p, &c, 99, 4, &CertifyOptions::default()).unwrap();
    assert_eq!(runs, again);
}
