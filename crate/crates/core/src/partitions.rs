//! Counting M-ary partitions.
//!
//! `p_M(n)` is counted several independent ways:
//!
//! - [`count_pm`]: the unbounded-parts DP table over the part list.
//! - [`pm_series`]: the product of reciprocals `1/(1 - q^{M_j})` in the
//!   series ring.
//! - [`PartitionCounter`]: the functional equation
//!   `F_M(q) = F_{M'}(q^{m_1}) / (1 - q)`, which gives
//!   `p_M(x) = sum_{k <= x / m_1} p_{M'}(k)` and needs tables only of size
//!   `x / m_1`. This is the route used by the large verification sweeps.
//! - [`brute_force_count`]: explicit enumeration, for small `n` only.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mseq::MSequence;
use crate::series::TruncatedSeries;

/// Largest base order a U-operator chain may allocate.
pub const DEFAULT_ORDER_BUDGET: usize = 4_000_000;

/// Largest `n` accepted by [`brute_force_count`].
pub const BRUTE_FORCE_CAP: u64 = 60;

/// The part sizes `M_0 = 1 < M_1 < ...` not exceeding some limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartList {
    parts: Vec<u64>,
}

impl PartList {
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// All partial products `M_r <= limit`. A finite sequence simply stops
/// contributing parts once its entries run out.
pub fn parts_up_to(seq: &MSequence, limit: u64) -> PartList {
    let mut parts = vec![1u64];
    let mut current: u64 = 1;
    let mut j = 1;
    while let Some(m) = seq.get(j) {
        match current.checked_mul(m) {
            Some(next) if next <= limit => {
                parts.push(next);
                current = next;
            }
            _ => break,
        }
        j += 1;
    }
    PartList { parts }
}

/// `p_M(0..=n)` by the classic DP: for each part `k` in increasing order,
/// `table[x] += table[x - k]`.
pub fn count_pm_table(seq: &MSequence, n: u64) -> Vec<BigUint> {
    let len = usize::try_from(n).expect("n fits in memory") + 1;
    let mut table = vec![BigUint::zero(); len];
    table[0] = BigUint::one();
    for &k in parts_up_to(seq, n.max(1)).parts() {
        let k = k as usize;
        for x in k..len {
            let (lo, hi) = table.split_at_mut(x);
            hi[0] += &lo[x - k];
        }
    }
    table
}

/// The number of M-ary partitions of `n`; `p_M(0) = 1`.
pub fn count_pm(seq: &MSequence, n: u64) -> BigUint {
    count_pm_table(seq, n).pop().expect("table is non-empty")
}

/// `F_M(q) = prod_j 1/(1 - q^{M_j})` truncated to `order`, built as the
/// reciprocal of the finite product `prod_{M_j <= order} (1 - q^{M_j})`.
pub fn pm_series(seq: &MSequence, order: usize) -> TruncatedSeries {
    let parts = parts_up_to(seq, order.max(1) as u64);
    let denominator = parts
        .parts()
        .iter()
        .fold(TruncatedSeries::one(order), |acc, &k| {
            &acc * &TruncatedSeries::one_minus_q_pow(order, k as usize)
        });
    denominator
        .inverse()
        .expect("the product has constant term 1")
}

/// Evaluates `p_M(x)` for all `x <= max_n` from a prefix-sum table of size
/// about `max_n / m_1`.
#[derive(Debug, Clone)]
pub struct PartitionCounter {
    max_n: u64,
    /// `m_1`, or `None` when no part other than 1 is at most `max_n`.
    first: Option<u64>,
    /// `prefix[k] = sum_{j <= k} p_{M'}(j)` for `k <= max_n / m_1`.
    prefix: Vec<BigUint>,
}

impl PartitionCounter {
    pub fn new(seq: &MSequence, max_n: u64) -> Self {
        // bounds[d] = max_n / (m_1 ... m_d); descend while the next part fits
        let mut bounds = vec![max_n];
        let mut multipliers = Vec::new();
        let mut j = 1;
        while let Some(m) = seq.get(j) {
            let b = *bounds.last().expect("non-empty");
            if m > b {
                break;
            }
            multipliers.push(m);
            bounds.push(b / m);
            j += 1;
        }
        let depth = multipliers.len();
        if depth == 0 {
            return PartitionCounter {
                max_n,
                first: None,
                prefix: Vec::new(),
            };
        }
        // At the bottom level only the part 1 fits: p = 1, prefix sums k + 1.
        let bottom = bounds[depth] as usize;
        let mut prefix: Vec<BigUint> = (0..=bottom).map(|k| BigUint::from(k + 1)).collect();
        // Walk up: p_{d}(x) = prefix_{d+1}[x / m_{d+1}], prefix_d = running sum.
        for d in (1..depth).rev() {
            let m = multipliers[d] as usize;
            let size = bounds[d] as usize;
            let mut next = Vec::with_capacity(size + 1);
            let mut acc = BigUint::zero();
            for x in 0..=size {
                acc += &prefix[x / m];
                next.push(acc.clone());
            }
            prefix = next;
        }
        PartitionCounter {
            max_n,
            first: Some(multipliers[0]),
            prefix,
        }
    }

    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    /// `p_M(x)`; zero for negative `x`.
    ///
    /// # Panics
    /// If `x > max_n`.
    pub fn count(&self, x: i64) -> BigUint {
        if x < 0 {
            return BigUint::zero();
        }
        let x = x as u64;
        assert!(x <= self.max_n, "{x} exceeds counter bound {}", self.max_n);
        match self.first {
            None => BigUint::one(),
            Some(m) => self.prefix[(x / m) as usize].clone(),
        }
    }
}

fn chain_product(seq: &MSequence, r: usize) -> Result<u64> {
    seq.partial_product_u64(r)?
        .ok_or_else(|| Error::InvalidParameter(format!("m_1 ... m_{r} overflows 64 bits")))
}

/// `U_{m_r} ... U_{m_1}(q F_M(q))` truncated to `order`: coefficient `n >= 1`
/// is `p_M(m_1 ... m_r n - 1)`, coefficient 0 is 0.
pub fn shifted_series(seq: &MSequence, r: usize, order: usize) -> Result<TruncatedSeries> {
    shifted_series_with_budget(seq, r, order, DEFAULT_ORDER_BUDGET)
}

pub fn shifted_series_with_budget(
    seq: &MSequence,
    r: usize,
    order: usize,
    budget: usize,
) -> Result<TruncatedSeries> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    let multipliers = seq.prefix(r)?;
    let required = multipliers
        .iter()
        .fold(order as u128, |acc, &m| acc.saturating_mul(m as u128));
    if required > budget as u128 {
        return Err(Error::OrderBudget { required, budget });
    }
    let base = required as usize;
    let mut series = pm_series(seq, base).shift_up();
    for &m in &multipliers {
        series = series.u_op(m as usize);
    }
    debug_assert_eq!(series.order(), order);
    Ok(series)
}

/// The same sequence as [`shifted_series`], evaluated directly on the
/// arithmetic progression `m_1 ... m_r n - 1`.
pub fn shifted_direct(seq: &MSequence, r: usize, order: usize) -> Result<TruncatedSeries> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    let step = chain_product(seq, r)?;
    let max = step
        .checked_mul(order as u64)
        .ok_or_else(|| Error::InvalidParameter("argument overflows 64 bits".into()))?;
    let counter = PartitionCounter::new(seq, max);
    Ok(TruncatedSeries::from_fn(order, |n| {
        if n == 0 {
            BigInt::zero()
        } else {
            BigInt::from(counter.count((step * n as u64) as i64 - 1))
        }
    }))
}

/// Counts M-ary partitions of `n <= 60` by enumerating multiplicities of
/// each part, largest part first.
pub fn brute_force_count(seq: &MSequence, n: u64) -> Result<u64> {
    if n > BRUTE_FORCE_CAP {
        return Err(Error::BruteForceCap {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let parts = parts_up_to(seq, n.max(1));
    fn go(parts: &[u64], remaining: u64) -> u64 {
        match parts.split_last() {
            None => (remaining == 0) as u64,
            Some((&largest, rest)) => {
                let mut total = 0;
                let mut used = 0;
                while used <= remaining {
                    total += go(rest, remaining - used);
                    used += largest;
                }
                total
            }
        }
    }
    Ok(go(parts.parts(), n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> MSequence {
        MSequence::constant(2).unwrap()
    }

    #[test]
    fn part_lists() {
        assert_eq!(parts_up_to(&two(), 10).parts(), &[1, 2, 4, 8]);
        assert_eq!(
            parts_up_to(&MSequence::factorial(), 130).parts(),
            &[1, 2, 6, 24, 120]
        );
        assert_eq!(parts_up_to(&two(), 1).parts(), &[1]);
        let fin = MSequence::finite(vec![3]).unwrap();
        assert_eq!(parts_up_to(&fin, 1000).parts(), &[1, 3]);
    }

    #[test]
    fn part_list_divides_chain() {
        let seq = MSequence::finite(vec![3, 2, 5, 2, 7]).unwrap();
        let parts = parts_up_to(&seq, 10_000);
        assert_eq!(parts.parts()[0], 1);
        for w in parts.parts().windows(2) {
            assert!(w[0] < w[1] && w[1] % w[0] == 0);
        }
    }

    #[test]
    fn binary_partitions_of_five() {
        assert_eq!(count_pm(&two(), 5), BigUint::from(4u32));
        assert_eq!(brute_force_count(&two(), 5).unwrap(), 4);
        assert_eq!(pm_series(&two(), 10).coeff(5), BigInt::from(4));
    }

    #[test]
    fn empty_partition() {
        for seq in [two(), MSequence::factorial()] {
            assert_eq!(count_pm(&seq, 0), BigUint::one());
            assert_eq!(brute_force_count(&seq, 0).unwrap(), 1);
            assert_eq!(pm_series(&seq, 5).coeff(0), BigInt::one());
        }
    }

    #[test]
    fn factorial_partitions_of_six() {
        // 6; 2+2+2; 2+2+1+1; 2+1+1+1+1; 1*6
        assert_eq!(count_pm(&MSequence::factorial(), 6), BigUint::from(5u32));
    }

    #[test]
    fn brute_force_cap() {
        assert_eq!(
            brute_force_count(&two(), 61),
            Err(Error::BruteForceCap { n: 61, cap: 60 })
        );
    }

    #[test]
    fn series_matches_dp_for_factorials() {
        let seq = MSequence::factorial();
        let table = count_pm_table(&seq, 300);
        let series = pm_series(&seq, 300);
        for (n, v) in table.iter().enumerate() {
            assert_eq!(series.coeff(n), BigInt::from(v.clone()), "n = {n}");
        }
    }

    #[test]
    fn counter_matches_dp() {
        let seqs = [
            two(),
            MSequence::constant(3).unwrap(),
            MSequence::factorial(),
            MSequence::finite(vec![3, 2]).unwrap(),
            MSequence::finite(vec![]).unwrap(),
            MSequence::new(vec![5, 2], crate::mseq::Tail::Constant(3)).unwrap(),
        ];
        for seq in &seqs {
            for max in [0u64, 1, 7, 500] {
                let counter = PartitionCounter::new(seq, max);
                let table = count_pm_table(seq, max);
                for (x, v) in table.iter().enumerate() {
                    assert_eq!(&counter.count(x as i64), v, "{seq} x = {x}");
                }
                assert_eq!(counter.count(-1), BigUint::zero());
            }
        }
    }

    #[test]
    fn shifted_series_examples() {
        let s = shifted_series(&two(), 2, 10).unwrap();
        assert_eq!(s.coeff(0), BigInt::zero());
        // b_2(3) = 2
        assert_eq!(s.coeff(1), BigInt::from(2));
        let fact = MSequence::factorial();
        let s = shifted_series(&fact, 4, 20).unwrap();
        let table = count_pm_table(&fact, 120 * 20);
        for n in 1..=20usize {
            assert_eq!(s.coeff(n), BigInt::from(table[120 * n - 1].clone()));
        }
        assert_eq!(s, shifted_direct(&fact, 4, 20).unwrap());
    }

    #[test]
    fn shifted_series_budget() {
        let err = shifted_series_with_budget(&two(), 3, 100, 500).unwrap_err();
        assert_eq!(
            err,
            Error::OrderBudget {
                required: 800,
                budget: 500
            }
        );
        assert!(shifted_series(&two(), 0, 5).is_err());
        let fin = MSequence::finite(vec![2]).unwrap();
        assert!(matches!(
            shifted_series(&fin, 2, 5),
            Err(Error::OutOfRange { index: 2, .. })
        ));
    }
}
