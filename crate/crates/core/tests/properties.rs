mod common;

use mpart_core::alpha::alpha_rows;
use mpart_core::partitions::count_pm_table;
use mpart_core::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn series(len: std::ops::Range<usize>) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-50i64..50, len).prop_map(|v| TruncatedSeries::from_i64(&v))
}

fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    (prop::bool::ANY, prop::collection::vec(-9i64..9, 0..25)).prop_map(|(neg, mut tail)| {
        tail.insert(0, if neg { -1 } else { 1 });
        TruncatedSeries::from_i64(&tail)
    })
}

fn sequence() -> impl Strategy<Value = MSequence> {
    let tail = prop_oneof![
        Just(Tail::Finite),
        (2u64..12).prop_map(Tail::Constant),
        Just(Tail::Successor)
    ];
    (prop::collection::vec(2u64..12, 0..6), tail).prop_filter_map(
        "needs at least one entry",
        |(entries, tail)| {
            MSequence::new(entries, tail)
                .ok()
                .filter(|s| s.get(1).is_some())
        },
    )
}

proptest! {
    #[test]
    fn multisection_law(f in series(1..60), g in series(1..60), m in 1usize..6) {
        let n = f.order().min(g.order());
        let (f, g) = (f.truncate(n), g.truncate(n));
        let lhs = (&f * &g.subst_power(m)).u_op(m);
        let rhs = &f.u_op(m) * &g.truncate(n / m);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(g.subst_power(m).u_op(m), g.truncate(n / m));
    }

    #[test]
    fn u_op_is_linear(f in series(1..60), g in series(1..60), a in -20i64..20, b in -20i64..20, m in 1usize..6) {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let lhs = (&f.scale(&a) + &g.scale(&b)).u_op(m);
        let rhs = &f.u_op(m).scale(&a) + &g.u_op(m).scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_laws(f in series(1..30), g in series(1..30), h in series(1..30)) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f - &g) + &g, f.truncate(f.order().min(g.order())));
        prop_assert_eq!(-&(-&f), f);
    }

    #[test]
    fn inverse_is_two_sided(f in unit_series()) {
        let inv = f.inverse().unwrap();
        prop_assert_eq!(&f * &inv, TruncatedSeries::one(f.order()));
        prop_assert_eq!(inv.inverse().unwrap(), f);
    }

    #[test]
    fn partial_sums_divide_by_one_minus_q(f in series(1..40)) {
        let geometric = TruncatedSeries::one_minus_q_pow(f.order(), 1).inverse().unwrap();
        prop_assert_eq!(f.partial_sums(), &f * &geometric);
    }

    #[test]
    fn dump_round_trip(f in series(1..40)) {
        prop_assert_eq!(TruncatedSeries::from_dump(&f.to_dump()).unwrap(), f);
    }

    #[test]
    fn spec_round_trip(seq in sequence()) {
        let spec = seq.to_spec();
        let back: MSequence = spec.parse().unwrap();
        prop_assert_eq!(&back, &seq);
        prop_assert_eq!(back.to_spec(), spec);
        for j in 0..12 {
            prop_assert_eq!(back.get(j), seq.get(j));
        }
    }

    #[test]
    fn functional_equation(seq in sequence(), order in 1usize..120) {
        let m1 = seq.entry(1).unwrap() as usize;
        let lhs = pm_series(&seq, order);
        let rhs = pm_series(&seq.drop_front(1), order).subst_power(m1).partial_sums();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn counter_agrees_with_dp(seq in sequence(), max in 0u64..3000) {
        let table = count_pm_table(&seq, max);
        let counter = PartitionCounter::new(&seq, max);
        for x in (0..=max).step_by(7).chain([max]) {
            prop_assert_eq!(&counter.count(x as i64), &table[x as usize]);
        }
        prop_assert_eq!(counter.count(-1), num_bigint::BigUint::from(0u32));
    }

    #[test]
    fn main_theorem_on_random_prefixes(entries in prop::collection::vec(2u64..10, 1..5)) {
        let seq = MSequence::finite(entries.clone()).unwrap();
        for rep in verify::verify_main_theorem_sweep(&seq, entries.len(), 30).unwrap() {
            prop_assert!(rep.passed(), "{}", rep);
        }
    }

    #[test]
    fn alpha_identity_at_random_points(m in 2u64..9, r in 1usize..10, n in 1i64..5000) {
        let t = alpha_table(m, r);
        let lhs = alpha::binomial(&BigInt::from(m as i64 * n + r as i64 - 1), r as u64);
        let rhs: BigInt = (1..=r)
            .map(|i| t.get(i) * alpha::binomial(&BigInt::from(n + i as i64 - 1), i as u64))
            .sum();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn u_op_on_h_basis_expands_through_alpha() {
    const ORDER: usize = 60;
    for m in 2..=5u64 {
        for r in 1..=8usize {
            let t = alpha_table(m, r);
            let lhs = TruncatedSeries::h(r, ORDER * m as usize).u_op(m as usize);
            let mut rhs = TruncatedSeries::zero(ORDER);
            for i in 1..=r {
                rhs = &rhs + &TruncatedSeries::h(i, ORDER).scale(&t.get(i));
            }
            assert_eq!(lhs, rhs, "m={m} r={r}");
        }
    }
}

#[test]
fn alpha_summation_identity() {
    // r alpha_r(i) = m i sum_{s=1}^{r} (alpha_{s-1}(i-1) - alpha_{s-1}(i))
    for m in 2..=6u64 {
        let rows = alpha_rows(m, 12);
        let at = |s: usize, i: usize| rows[s].get(i).cloned().unwrap_or_default();
        for r in 1..=12usize {
            for i in 1..=r {
                let sum: BigInt = (1..=r).map(|s| at(s - 1, i - 1) - at(s - 1, i)).sum();
                assert_eq!(
                    BigInt::from(r) * at(r, i),
                    BigInt::from(m * i as u64) * sum,
                    "m={m} r={r} i={i}"
                );
            }
        }
    }
}

#[test]
fn identity_implies_main_theorem() {
    for seq in common::battery() {
        for r in 2..=3 {
            let step = seq.partial_product_u64(r).unwrap().unwrap();
            let order = (4000 / step as usize).clamp(3, 25);
            let id = verify_identity(&seq, r, order).unwrap();
            assert!(id.holds, "{} r={r}", seq.to_spec());
            let thm = verify_main_theorem(&seq, r, order as u64).unwrap();
            assert!(thm.passed(), "{} r={r}", seq.to_spec());
        }
    }
}
