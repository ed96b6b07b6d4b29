mod common;

use proptest::prelude::*;

use sidelnikov::arith;
use sidelnikov::bounds::{self, FqPoly};
use sidelnikov::complexity::{self, DensePoly, LcEvaluator};
use sidelnikov::sequence::{self, ErrorPattern};
use sidelnikov::{sidelnikov_subsequence, FieldCtx, PeriodicSequence};

fn sequence_strategy() -> impl Strategy<Value = PeriodicSequence> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(7)].prop_flat_map(|d| {
        prop::collection::vec(0..d, 1..40).prop_map(move |t| PeriodicSequence::new(d, t).unwrap())
    })
}

fn field_orders() -> Vec<u64> {
    (3..=2000u64).filter(|&q| arith::prime_power(q).is_some()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn bm_gcd_and_hankel_agree(seq in sequence_strategy()) {
        let lc = complexity::lc_via_gcd(&seq);
        prop_assert_eq!(complexity::berlekamp_massey(&seq).0, lc);
        prop_assert_eq!(common::hankel_rank(seq.terms(), seq.d()), lc);
        prop_assert_eq!(LcEvaluator::new(seq.d(), seq.period()).lc(seq.terms()), lc);
    }

    #[test]
    fn feedback_polynomial_generates_the_sequence(seq in sequence_strategy()) {
        let (lc, feedback) = complexity::berlekamp_massey(&seq);
        let d = seq.d() as u64;
        let c = feedback.coeffs();
        prop_assert_eq!(c.len(), lc + 1);
        for n in 0..seq.period() {
            let acc: u64 = (0..=lc).map(|i| c[i] as u64 * seq.term(n + i) as u64).sum();
            prop_assert_eq!(acc % d, 0);
        }
    }

    #[test]
    fn incremental_evaluator_matches_rebuild(seq in sequence_strategy(), picks in prop::collection::vec((0usize..40, 1u32..7), 0..4)) {
        let (l, d) = (seq.period(), seq.d());
        let mut changes: Vec<(usize, u32)> = Vec::new();
        for (pos, delta) in picks {
            let pos = pos % l;
            if changes.iter().all(|c| c.0 != pos) {
                changes.push((pos, delta % d));
            }
        }
        let eval = LcEvaluator::new(d, l);
        let base = eval.base(seq.terms());
        let mut terms = seq.terms().to_vec();
        for &(p, delta) in &changes {
            terms[p] = (terms[p] + delta) % d;
        }
        let rebuilt = PeriodicSequence::new(d, terms).unwrap();
        prop_assert_eq!(eval.lc_with_changes(&base, &changes), complexity::lc_via_gcd(&rebuilt));
    }

    #[test]
    fn k_error_profile_is_monotone(seq in sequence_strategy()) {
        let k = if seq.period() <= 12 { 2 } else { 1 };
        let report = complexity::k_error_profile(&seq, k, 1_000_000).unwrap();
        for w in report.entries.windows(2) {
            prop_assert!(w[1].lc_k <= w[0].lc_k);
        }
        for e in &report.entries {
            prop_assert!(e.witness.weight() <= e.k);
            prop_assert_eq!(complexity::lc_via_gcd(&seq.perturb(&e.witness).unwrap()), e.lc_k);
        }
    }

    #[test]
    fn lucas_matches_pascal(n in 0usize..80, h in 0usize..80, d in prop_oneof![Just(2u32), Just(3), Just(5), Just(7), Just(11)]) {
        prop_assert_eq!(complexity::lucas_binomial(n as u64, h as u64, d), common::pascal_mod(n, h, d));
    }

    #[test]
    fn lucas_periodic_in_low_digits(n in 0u64..500, h in 0u64..9, t in 0u64..20) {
        let m = n % 9 + 9 * t;
        prop_assert_eq!(complexity::lucas_binomial(n, h, 3), complexity::lucas_binomial(m, h, 3));
    }

    #[test]
    fn multiplicity_routes_agree(d in prop_oneof![Just(2u32), Just(3), Just(5)], coeffs in prop::collection::vec(0u32..5, 1..12), theta in 0u32..5) {
        let f = DensePoly::new(d, coeffs.iter().map(|c| c % d).collect());
        prop_assume!(!f.is_zero());
        let theta = theta % d;
        let u = complexity::root_multiplicity(&f, theta).unwrap();
        prop_assert_eq!(u, complexity::root_multiplicity_by_division(&f, theta).unwrap());
        for h in 0..u {
            prop_assert_eq!(complexity::hasse_at(&f, h, theta), 0);
        }
    }

    #[test]
    fn lc_drop_matches_root_multiplicity_at_one(seq in sequence_strategy()) {
        // The factor x - 1 of x^l - 1 has multiplicity d^s; its contribution
        // to the gcd is min(mult of 1 in S, d^s).
        let (s, _) = arith::split_power(seq.period() as u64, seq.d() as u64);
        let cap = (seq.d() as usize).pow(s);
        let poly = complexity::sequence_poly(&seq);
        prop_assume!(!poly.is_zero());
        let mult = complexity::root_multiplicity(&poly, 1).unwrap().min(cap);
        let eval = LcEvaluator::new(seq.d(), seq.period());
        let by_factor = eval
            .factor_multiplicities(seq.terms())
            .into_iter()
            .find(|(f, _)| f.coeffs() == [seq.d() - 1, 1])
            .map_or(0, |(_, m)| m);
        prop_assert_eq!(by_factor, mult);
    }

    #[test]
    fn pattern_rank_round_trips(l in 1usize..12, k in 1usize..3, index in 0u128..5000) {
        let seq = PeriodicSequence::new(3, vec![0; l]).unwrap();
        let index = index % sequence::pattern_count(l, 3, k);
        let pattern: ErrorPattern = sequence::PatternEnumerator::starting_at(&seq, k, index).next().unwrap();
        let positions: Vec<usize> = pattern.changes().iter().map(|c| c.0).collect();
        let ranks: Vec<u32> = pattern.changes().iter().map(|&(p, v)| sequence::rank_of_replacement(seq.term(p), v)).collect();
        prop_assert_eq!(sequence::pattern_rank(l, 3, &positions, &ranks), index);
    }

    #[test]
    fn field_invariants(idx in 0usize..300, a in 0u32..2000, b in 0u32..2000) {
        let orders = field_orders();
        let q = orders[idx % orders.len()];
        let ctx = FieldCtx::with_order(q, None).unwrap();
        let (a, b) = (a % ctx.q(), b % ctx.q());
        let g = ctx.gamma();
        prop_assert_eq!(ctx.pow(g, ctx.group_order() as u64), 1);
        for r in arith::prime_factors(ctx.group_order() as u64) {
            prop_assert_ne!(ctx.pow(g, ctx.group_order() as u64 / r), 1);
        }
        prop_assert_eq!(ctx.mul(a, b), ctx.arith().mul(a, b));
        prop_assert_eq!(ctx.add(ctx.sub(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(ctx.antilog(ctx.discrete_log(a).unwrap() as u64), a);
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn decimation_of_the_full_sequence(idx in 0usize..60, pick in 0usize..20) {
        let primes: Vec<u64> = (5..400u64).filter(|&q| common::is_prime(q)).collect();
        let q = primes[idx % primes.len()];
        let ctx = FieldCtx::with_order(q, None).unwrap();
        let d = arith::prime_factors(q - 1)[pick % arith::prime_factors(q - 1).len()] as u32;
        let divs = arith::divisors(q - 1);
        let l = divs[pick % divs.len()] as u32;
        let full = sidelnikov_subsequence(&ctx, d, (q - 1) as u32).unwrap();
        let sub = sidelnikov_subsequence(&ctx, d, l).unwrap();
        let step = ((q - 1) / l as u64) as usize;
        for n in 0..l as usize {
            prop_assert_eq!(sub.term(n), full.term(n * step));
        }
    }

    #[test]
    fn zero_terms_come_from_minus_one(idx in 0usize..60) {
        let primes: Vec<u64> = (5..400u64).filter(|&q| common::is_prime(q) && q % 3 == 1).collect();
        let q = primes[idx % primes.len()];
        let f = common::PrimeField::new(q);
        let ctx = FieldCtx::with_order(q, None).unwrap();
        let seq = sidelnikov_subsequence(&ctx, 3, (q - 1) as u32).unwrap();
        let oracle = common::sequence(&f, 3, q - 1);
        prop_assert_eq!(seq.terms(), oracle.as_slice());
        // Zero terms: alpha^n + 1 = 0 once, and alpha^n + 1 in D_0 \ {1}.
        let zeros = seq.terms().iter().filter(|&&t| t == 0).count() as u64;
        prop_assert_eq!(zeros, (q - 1) / 3);
    }

    #[test]
    fn character_sum_tally_is_complete(idx in 0usize..40, coeffs in prop::collection::vec(0u32..200, 2..6)) {
        let primes: Vec<u64> = (3..200u64).filter(|&q| common::is_prime(q)).collect();
        let q = primes[idx % primes.len()];
        let ctx = FieldCtx::with_order(q, None).unwrap();
        let d = *arith::prime_factors(q - 1).last().unwrap() as u32;
        let f = FqPoly::new(coeffs.iter().map(|c| c % q as u32).collect());
        prop_assume!(!f.is_zero());
        let r = bounds::character_sum(&ctx, d, &f).unwrap();
        let roots = (0..q).filter(|&c| common::eval(f.coeffs(), c, q) == 0).count() as u64;
        prop_assert_eq!(r.zeros, roots);
        prop_assert_eq!(r.tally.iter().sum::<u64>() + r.zeros, q);
        prop_assert!(r.e <= f.degree().unwrap());
    }

    #[test]
    fn hasse_via_cyclotomy_matches_direct(idx in 0usize..8, h in 0usize..9) {
        let cases = [(7u64, 3u32, 3u32), (7, 3, 6), (13, 3, 3), (13, 3, 6), (19, 3, 9), (19, 3, 18), (31, 3, 15), (37, 3, 9)];
        let (q, d, l) = cases[idx];
        let ctx = FieldCtx::with_order(q, None).unwrap();
        if let Ok(v) = bounds::hasse_at_one_via_cyclotomy(&ctx, d, l, h) {
            let seq = sidelnikov_subsequence(&ctx, d, l).unwrap();
            prop_assert_eq!(v, complexity::hasse_at(&complexity::sequence_poly(&seq), h, 1));
        }
    }
}
