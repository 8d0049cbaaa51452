//! Exhaustive small-size sweeps and randomized properties for the exact
//! threshold layer. Oracles here are deliberately primitive: additive Pascal
//! rows, integer identities, and brute-force comparisons.

use dicke_depth::{
    binomial, p_threshold, partial_transpose, rdm2_noisy_dicke, schmidt_spectrum, verdict_single,
    BigNat, CertificationStatus, Rational, TwoBodyRDM,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use std::collections::HashMap;

#[test]
fn binomial_row_identities_up_to_120() {
    for n in 0..=120u64 {
        let mut row_sum = BigNat::zero();
        for k in 0..=n {
            let c = binomial(n, k as i64);
            assert_eq!(c, binomial(n, (n - k) as i64), "symmetry C({n},{k})");
            if k > 0 {
                // Pascal: C(n,k) = C(n-1,k-1) + C(n-1,k)
                let pascal = binomial(n - 1, k as i64 - 1) + binomial(n - 1, k as i64);
                assert_eq!(c, pascal, "Pascal C({n},{k})");
            }
            row_sum += c;
        }
        assert_eq!(row_sum, BigNat::one() << n, "row sum 2^{n}");
    }
}

#[test]
fn schmidt_spectra_normalize_exactly_up_to_60() {
    let one = Rational::one();
    for n in 2..=60u64 {
        for r in 0..=n {
            for m0 in 1..n {
                let s = schmidt_spectrum(n, r, m0).unwrap();
                let sum = s
                    .coefficients
                    .iter()
                    .fold(Rational::zero(), |acc, (_, l)| acc + l);
                assert_eq!(sum, one, "N={n} r={r} m0={m0}");
                assert!(s.coefficients.iter().all(|(_, l)| l > &Rational::zero()));
            }
        }
    }
}

#[test]
fn thresholds_symmetric_bounded_and_centered_up_to_60() {
    for n in 2..=60u64 {
        let mut by_r = HashMap::new();
        for r in 0..=n {
            let t = p_threshold(n, r).unwrap();
            assert!(t.value > Rational::zero() && t.value <= Rational::one());
            assert!(t.partition.m0 <= n / 2, "reported m0 beyond the half scan");
            by_r.insert(r, t.value);
        }
        for r in 0..=n {
            assert_eq!(by_r[&r], by_r[&(n - r)], "p({n},{r}) vs mirror");
        }
        let min_r = (0..=n).min_by(|a, b| by_r[a].cmp(&by_r[b])).unwrap();
        let center = [n / 2, n.div_ceil(2)];
        assert!(
            center.contains(&min_r) || by_r[&min_r] == by_r[&(n / 2)],
            "minimum of p({n},r) away from the center"
        );
    }
}

fn arb_ratio() -> impl Strategy<Value = Rational> {
    (any::<i32>(), 1..=i32::MAX).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

proptest! {
    #[test]
    fn rational_arithmetic_never_drifts(a in arb_ratio(), b in arb_ratio()) {
        let sum = &a + &b;
        prop_assert_eq!(sum - &b, a);
    }

    #[test]
    fn vandermonde_convolution(n in 2u64..=80, split in 1u64..=79, r in 0u64..=80) {
        prop_assume!(split < n && r <= n);
        let m0 = split;
        let m1 = n - split;
        let mut sum = BigNat::zero();
        for j in 0..=r {
            sum += binomial(m0, j as i64) * binomial(m1, (r - j) as i64);
        }
        prop_assert_eq!(sum, binomial(n, r as i64));
    }

    #[test]
    fn spectrum_invariant_under_block_swap(n in 2u64..=40, r in 0u64..=40, m0 in 1u64..=39) {
        prop_assume!(r <= n && m0 < n);
        let mut left: Vec<Rational> = schmidt_spectrum(n, r, m0).unwrap()
            .coefficients.into_iter().map(|(_, l)| l).collect();
        let mut right: Vec<Rational> = schmidt_spectrum(n, r, n - m0).unwrap()
            .coefficients.into_iter().map(|(_, l)| l).collect();
        left.sort();
        right.sort();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn threshold_certification_is_strict(n in 2u64..=40, r in 0u64..=40, measured in 0.0f64..=1.0) {
        prop_assume!(r <= n);
        let t = p_threshold(n, r).unwrap();
        let v = verdict_single(n, r, measured).unwrap();
        let p = t.value_f64();
        if measured >= p + 1e-12 {
            prop_assert_eq!(v.status, CertificationStatus::CertifiedDepthN);
        }
        if measured <= p - 1e-12 {
            prop_assert_eq!(v.status, CertificationStatus::Inconclusive);
        }
    }

    #[test]
    fn partial_transpose_involutive_and_trace_preserving(
        d in proptest::array::uniform4(0.0f64..1.0),
        corner in 0.0f64..1.0,
        inner in 0.0f64..1.0,
    ) {
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            m[i][i] = d[i];
        }
        m[0][3] = corner; m[3][0] = corner;
        m[1][2] = inner; m[2][1] = inner;
        let rdm = TwoBodyRDM::from_entries(m).unwrap();
        let pt = partial_transpose(rdm.entries());
        prop_assert_eq!(&partial_transpose(&pt), rdm.entries());
        let tr: f64 = (0..4).map(|i| pt[i][i]).sum();
        let tr0: f64 = (0..4).map(|i| m[i][i]).sum();
        prop_assert!((tr - tr0).abs() < 1e-15);
    }

    #[test]
    fn noisy_marginals_stay_states(n in 2u64..=60, r in 0u64..=60, pop in 0.0f64..=1.0) {
        prop_assume!(r <= n);
        let rdm = rdm2_noisy_dicke(n, r, pop).unwrap();
        prop_assert!(rdm.trace_exact().is_one());
        prop_assert!(rdm.eigenvalues()[0] >= -1e-12);
    }
}
