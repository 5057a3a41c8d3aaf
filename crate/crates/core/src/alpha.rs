//! The basis-change integers `alpha_{m,r}(i)` defined by
//!
//! ```text
//! C(mn + r - 1, r) = sum_{i=1}^{r} alpha_{m,r}(i) C(n + i - 1, i)
//! ```
//!
//! They describe how `U_m` acts on the `h_r` basis:
//! `U_m h_r = sum_i alpha_{m,r}(i) h_i`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::mseq::mu;
use crate::report::{CongruenceReport, Sample};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaTable {
    pub m: u64,
    pub r: usize,
    /// `values[i - 1] = alpha_{m,r}(i)`.
    values: Vec<BigInt>,
}

impl AlphaTable {
    /// `alpha(i)` for `1 <= i <= r`, zero outside that range.
    pub fn get(&self, i: usize) -> BigInt {
        if i == 0 || i > self.r {
            return BigInt::zero();
        }
        self.values[i - 1].clone()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

/// Exact binomial coefficient `C(n, k)` for integer `n >= 0`; zero when `k > n`.
pub fn binomial(n: &BigInt, k: u64) -> BigInt {
    if n.is_negative() || BigInt::from(k) > *n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// All rows `alpha_s(0..=s)` for `s = 0..=r`.
///
/// Row 0 is `alpha_0(0) = 1` (from `C(mn - 1, 0) = C(n - 1, 0)`); for
/// `s >= 1`, `alpha_s(0) = 0`. Rows are built by
/// `r alpha_r(i) = m i alpha_{r-1}(i-1) - (m i - r + 1) alpha_{r-1}(i)`
/// and each division by `r` is checked to be exact.
pub fn alpha_rows(m: u64, r: usize) -> Vec<Vec<BigInt>> {
    let mb = BigInt::from(m);
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for s in 1..=r {
        let prev = &rows[s - 1];
        let at = |i: usize| prev.get(i).cloned().unwrap_or_default();
        let mut row = vec![BigInt::zero(); s + 1];
        for (i, slot) in row.iter_mut().enumerate().skip(1) {
            let mi = &mb * i;
            let numerator: BigInt = &mi * at(i - 1) - (&mi - BigInt::from(s) + 1) * at(i);
            let (q, rem) = numerator.div_rem(&BigInt::from(s));
            assert!(
                rem.is_zero(),
                "inexact division in alpha recurrence (m={m}, r={s}, i={i})"
            );
            *slot = q;
        }
        rows.push(row);
    }
    rows
}

/// `alpha_{m,r}(1..=r)` via the row recurrence.
pub fn alpha_table(m: u64, r: usize) -> AlphaTable {
    assert!(m >= 2 && r >= 1, "alpha_table needs m >= 2 and r >= 1");
    let mut rows = alpha_rows(m, r);
    let last = rows.pop().expect("r + 1 rows");
    AlphaTable {
        m,
        r,
        values: last[1..].to_vec(),
    }
}

/// `alpha_{m,r}` by solving the defining identity at `n = 1..=r` as an
/// exact rational linear system, then checking the solution is integral.
pub fn alpha_oracle(m: u64, r: usize) -> AlphaTable {
    assert!(m >= 2 && r >= 1, "alpha_oracle needs m >= 2 and r >= 1");
    let rat = |x: BigInt| BigRational::from_integer(x);
    // rows n = 1..=r, columns i = 1..=r, augmented with the right-hand side
    let mut a: Vec<Vec<BigRational>> = (1..=r)
        .map(|n| {
            let mut row: Vec<BigRational> = (1..=r)
                .map(|i| rat(binomial(&BigInt::from(n + i - 1), i as u64)))
                .collect();
            let lhs = BigInt::from(m) * n + r - 1;
            row.push(rat(binomial(&lhs, r as u64)));
            row
        })
        .collect();
    for col in 0..r {
        let pivot = (col..r)
            .find(|&row| !a[row][col].is_zero())
            .expect("the defining system is nonsingular");
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = a[col].clone();
        for (idx, row) in a.iter_mut().enumerate() {
            if idx != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * p;
                }
            }
        }
    }
    let values = a
        .iter()
        .map(|row| {
            let v = &row[r];
            assert!(v.is_integer(), "non-integral alpha from linear solve");
            v.to_integer()
        })
        .collect();
    AlphaTable { m, r, values }
}

/// Checks `mu(m i, r) | alpha_{m,r}(i)` for each `i`, and the weaker
/// `mu(m, r) | alpha_{m,r}(i)`. One sample per `i`, carrying its own modulus.
pub fn alpha_divisibility_report(m: u64, r: usize) -> CongruenceReport {
    let table = alpha_table(m, r);
    let weak = BigInt::from(mu(m, r as u64));
    let mut report = CongruenceReport::new(
        "alpha-divisibility",
        serde_json::json!({ "m": m, "r": r }),
        weak.magnitude().clone(),
    );
    for i in 1..=r {
        let value = table.get(i);
        let strong = BigInt::from(mu(m * i as u64, r as u64));
        let sample = Sample::new(i as i64, i as i64, &value, &strong)
            .with_modulus(strong.magnitude().clone());
        let weak_ok = value.is_multiple_of(&weak);
        report.push_checked(sample, weak_ok);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_tables() {
        assert_eq!(alpha_table(2, 2).values(), ints(&[-1, 4]).as_slice());
        assert_eq!(alpha_table(3, 2).values(), ints(&[-3, 9]).as_slice());
        assert_eq!(alpha_table(2, 3).values(), ints(&[0, -4, 8]).as_slice());
        assert_eq!(alpha_table(7, 1).values(), ints(&[7]).as_slice());
    }

    #[test]
    fn oracle_small() {
        assert_eq!(alpha_oracle(2, 2).values(), ints(&[-1, 4]).as_slice());
        assert_eq!(alpha_oracle(5, 1).values(), ints(&[5]).as_slice());
        assert_eq!(alpha_oracle(2, 3), alpha_table(2, 3));
    }

    #[test]
    fn oracle_row_satisfies_extra_points() {
        let t = alpha_oracle(3, 3);
        for n in 1..=6i64 {
            let lhs = binomial(&BigInt::from(3 * n + 2), 3);
            let rhs: BigInt = (1..=3)
                .map(|i| t.get(i) * binomial(&BigInt::from(n + i as i64 - 1), i as u64))
                .sum();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn leading_coefficients() {
        for m in 2..=6u64 {
            for r in 1..=12usize {
                let t = alpha_table(m, r);
                assert_eq!(t.get(r), BigInt::from(m).pow(r as u32));
                if r >= 2 {
                    // -(1/2)(r-1)(m-1)m^{r-1}
                    let twice =
                        -BigInt::from((r - 1) as u64 * (m - 1)) * BigInt::from(m).pow(r as u32 - 1);
                    assert!(twice.is_even());
                    assert_eq!(t.get(r - 1), twice / 2);
                }
            }
        }
    }

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(&BigInt::from(5), 2), BigInt::from(10));
        assert_eq!(binomial(&BigInt::from(3), 5), BigInt::zero());
        assert_eq!(binomial(&BigInt::from(0), 0), BigInt::one());
        assert_eq!(binomial(&BigInt::from(-2), 1), BigInt::zero());
    }

    #[test]
    fn divisibility_examples() {
        let r = alpha_divisibility_report(2, 4);
        assert!(r.violations.is_empty());
        let r = alpha_divisibility_report(5, 3);
        assert_eq!(r.modulus, 5u32.into());
        assert!(r.violations.is_empty());
        // alpha_{4,2}(1) = -6, mu(4, 2) = 2
        assert_eq!(alpha_table(4, 2).get(1), BigInt::from(-6));
        assert!(alpha_divisibility_report(4, 2).violations.is_empty());
    }
}
