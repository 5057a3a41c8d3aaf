use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::MSequence;
use crate::error::Result;

/// `a / gcd(a, b)`.
pub fn mu(a: u64, b: u64) -> u64 {
    a / a.gcd(&b)
}

/// `lcm(1, 2, ..., r)`, exact.
pub fn lcm_up_to(r: u64) -> BigUint {
    (1..=r).fold(BigUint::one(), |acc, j| acc.lcm(&BigUint::from(j)))
}

/// `m / gcd(m, lcm(1..r))`, the per-factor modulus of the main congruence.
pub fn cal_m(m: u64, r: u64) -> u64 {
    let g = BigUint::from(m).gcd(&lcm_up_to(r));
    m / g.to_u64().expect("gcd divides m")
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn primes_up_to(j: u64) -> impl Iterator<Item = u64> {
    (2..=j).filter(|&p| is_prime(p))
}

/// Product of all primes `p <= j`.
pub fn primorial(j: u64) -> BigUint {
    primes_up_to(j).fold(BigUint::one(), |acc, p| acc * p)
}

/// `prod_{p <= r-2} p^floor((r-2)/p)`; empty for `r < 4`.
pub fn d_r(r: u64) -> BigUint {
    let k = r.saturating_sub(2);
    primes_up_to(k).fold(BigUint::one(), |acc, p| {
        acc * BigUint::from(p).pow((k / p) as u32)
    })
}

/// `prod_{t=2}^{r} cal_m(m_t, t - 1)`.
pub fn theorem_modulus(seq: &MSequence, r: usize) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for t in 2..=r {
        acc *= cal_m(seq.entry(t)?, (t - 1) as u64);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_examples() {
        assert_eq!(mu(6, 4), 3);
        assert_eq!(mu(5, 3), 5);
        assert_eq!(mu(4, 2), 2);
    }

    #[test]
    fn mu_times_gcd_is_a() {
        for a in 1..=300u64 {
            for b in 1..=300u64 {
                assert_eq!(mu(a, b) * a.gcd(&b), a);
            }
        }
        // a sparser sweep over the full 10^4 range
        for a in (1..=10_000u64).step_by(37) {
            for b in (1..=10_000u64).step_by(41) {
                assert_eq!(mu(a, b) * a.gcd(&b), a);
            }
        }
    }

    #[test]
    fn cal_m_examples() {
        assert_eq!(cal_m(4, 2), 2);
        assert_eq!(cal_m(5, 3), 5);
        assert_eq!(cal_m(6, 3), 1);
    }

    #[test]
    fn cal_m_is_gcd_of_mu() {
        for m in 2..=200u64 {
            for r in 1..=20u64 {
                let g = (1..=r).fold(0u64, |acc, j| acc.gcd(&mu(m, j)));
                assert_eq!(cal_m(m, r), g, "m={m} r={r}");
            }
        }
    }

    #[test]
    fn cal_m_of_large_prime() {
        for p in [7u64, 11, 13, 101, 997] {
            for r in 1..p.min(40) {
                assert_eq!(cal_m(p, r), p);
            }
        }
    }

    #[test]
    fn cal_m_divides_previous() {
        for m in 2..=200u64 {
            for r in 2..=20u64 {
                assert_eq!(cal_m(m, r - 1) % cal_m(m, r), 0);
            }
        }
    }

    #[test]
    fn lcm_is_exact_beyond_u64() {
        // lcm(1..50) = 3099044504245996706400
        assert_eq!(lcm_up_to(50).to_string(), "3099044504245996706400");
    }

    #[test]
    fn primorials() {
        assert_eq!(primorial(0), BigUint::one());
        assert_eq!(primorial(1), BigUint::one());
        assert_eq!(primorial(3), BigUint::from(6u32));
        assert_eq!(primorial(5), BigUint::from(30u32));
    }

    #[test]
    fn d_r_values() {
        assert_eq!(d_r(3), BigUint::one());
        assert_eq!(d_r(4), BigUint::from(2u32));
        assert_eq!(d_r(5), BigUint::from(6u32));
        assert_eq!(d_r(2), BigUint::one());
        // r = 8: 2^3 * 3^2 * 5 = 360
        assert_eq!(d_r(8), BigUint::from(360u32));
    }

    #[test]
    fn theorem_modulus_examples() {
        let two = MSequence::constant(2).unwrap();
        assert_eq!(theorem_modulus(&two, 3).unwrap(), BigUint::from(2u32));
        let fact = MSequence::factorial();
        assert_eq!(theorem_modulus(&fact, 4).unwrap(), BigUint::from(30u32));
        assert_eq!(theorem_modulus(&fact, 1).unwrap(), BigUint::one());
        assert_eq!(theorem_modulus(&two, 1).unwrap(), BigUint::one());
    }

    #[test]
    fn theorem_modulus_is_product_of_factors() {
        let seq = MSequence::finite(vec![3, 4, 9, 10, 7]).unwrap();
        for r in 1..=5usize {
            let expected: u64 = (2..=r)
                .map(|t| cal_m(seq.entry(t).unwrap(), t as u64 - 1))
                .product();
            assert_eq!(theorem_modulus(&seq, r).unwrap(), BigUint::from(expected));
        }
        assert!(theorem_modulus(&seq, 6).is_err());
    }
}
