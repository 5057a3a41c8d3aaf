//! Verification routines: the main congruence, the generating-function
//! identity behind it, the classical m-ary congruences, and probes of the
//! two conjectures on shifted arguments.
//!
//! Theorem checks report violations as failures. Conjecture probes report
//! the same way, but their violations are findings: both conjectures are
//! false in general.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hbeta::HCache;
use crate::mseq::{cal_m, d_r, primorial, theorem_modulus, MSequence};
use crate::partitions::{count_pm_table, pm_series, shifted_series, PartitionCounter};
use crate::report::{CongruenceReport, Sample};
use crate::series::SeriesComparison;

/// The values of `n` at which `p_M(120n - 26) ≡ 10 (mod 20)` is claimed
/// for partitions into factorials.
pub const COUNTEREXAMPLE_NS: [u64; 6] = [2, 6, 8, 10, 12, 16];

fn overflow() -> Error {
    Error::InvalidParameter("argument overflows 64 bits".into())
}

fn step_of(seq: &MSequence, r: usize) -> Result<u64> {
    seq.partial_product_u64(r)?.ok_or_else(overflow)
}

fn to_i64(x: u64) -> Result<i64> {
    i64::try_from(x).map_err(|_| overflow())
}

fn positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidParameter(format!("{name} must be positive")));
    }
    Ok(())
}

/// `p_M(m_1 ... m_r n - 1) mod prod_{t=2}^{r} cal_m(m_t, t-1)` for `n = 1..=n_max`.
pub fn verify_main_theorem(seq: &MSequence, r: usize, n_max: u64) -> Result<CongruenceReport> {
    positive("r", r as u64)?;
    positive("n_max", n_max)?;
    let step = step_of(seq, r)?;
    let max = step.checked_mul(n_max).ok_or_else(overflow)?;
    let counter = PartitionCounter::new(seq, max);
    main_theorem_with(seq, r, n_max, &counter)
}

/// Main-theorem reports for every `r` in `1..=r_max`, sharing one counter.
pub fn verify_main_theorem_sweep(
    seq: &MSequence,
    r_max: usize,
    n_max: u64,
) -> Result<Vec<CongruenceReport>> {
    positive("r", r_max as u64)?;
    positive("n_max", n_max)?;
    let step = step_of(seq, r_max)?;
    let counter = PartitionCounter::new(seq, step.checked_mul(n_max).ok_or_else(overflow)?);
    (1..=r_max)
        .map(|r| main_theorem_with(seq, r, n_max, &counter))
        .collect()
}

fn main_theorem_with(
    seq: &MSequence,
    r: usize,
    n_max: u64,
    counter: &PartitionCounter,
) -> Result<CongruenceReport> {
    let modulus = theorem_modulus(seq, r)?;
    let step = step_of(seq, r)?;
    let m = BigInt::from(modulus.clone());
    let mut report = CongruenceReport::new(
        "main-theorem",
        serde_json::json!({ "seq": seq.to_spec(), "r": r, "n_max": n_max }),
        modulus,
    );
    for n in 1..=n_max {
        let arg = to_i64(step * n - 1)?;
        let value = BigInt::from(counter.count(arg));
        report.push(Sample::new(n as i64, arg, &value, &m));
    }
    Ok(report)
}

/// The stronger congruence modulo `prod_{t=2}^{r} m_t`, valid when every
/// prime factor of `m_t` is at least `t`.
pub fn verify_large_prime_corollary(
    seq: &MSequence,
    r: usize,
    n_max: u64,
) -> Result<CongruenceReport> {
    positive("r", r as u64)?;
    positive("n_max", n_max)?;
    let mut modulus = BigUint::one();
    for t in 2..=r {
        let m = seq.entry(t)?;
        if cal_m(m, t as u64 - 1) != m {
            return Err(Error::InvalidParameter(format!(
                "m_{t} = {m} has a prime factor below {t}"
            )));
        }
        modulus *= m;
    }
    let step = step_of(seq, r)?;
    let counter = PartitionCounter::new(seq, step.checked_mul(n_max).ok_or_else(overflow)?);
    let m = BigInt::from(modulus.clone());
    let mut report = CongruenceReport::new(
        "corollary-large-primes",
        serde_json::json!({ "seq": seq.to_spec(), "r": r, "n_max": n_max }),
        modulus,
    );
    for n in 1..=n_max {
        let arg = to_i64(step * n - 1)?;
        report.push(Sample::new(
            n as i64,
            arg,
            &BigInt::from(counter.count(arg)),
            &m,
        ));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub check: String,
    pub params: serde_json::Value,
    pub order: usize,
    pub holds: bool,
    pub first_mismatch: Option<usize>,
}

/// Compares `U_{m_r} ... U_{m_1}(q F_M(q))` with
/// `H_(m_2, ..., m_r)(q) * F_(m_{r+1}, m_{r+2}, ...)(q)` up to `order`.
pub fn verify_identity(seq: &MSequence, r: usize, order: usize) -> Result<IdentityReport> {
    if r < 2 {
        return Err(Error::InvalidParameter("the identity needs r >= 2".into()));
    }
    let lhs = shifted_series(seq, r, order)?;
    let tail_ms = seq.prefix(r)?[1..].to_vec();
    let h = HCache::new().get(&tail_ms, order)?;
    let rhs = &h * &pm_series(&seq.drop_front(r), order);
    let SeriesComparison {
        order,
        first_mismatch,
    } = lhs.compare(&rhs);
    Ok(IdentityReport {
        check: "identity".into(),
        params: serde_json::json!({ "seq": seq.to_spec(), "r": r, "order": order }),
        order,
        holds: first_mismatch.is_none(),
        first_mismatch,
    })
}

/// Which conjecture, and how its indices are aligned with `MSequence`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conjecture {
    /// General sequences: `p_M(m_1...m_r n - sigma - ...) mod prod mu_j`.
    General(GeneralIndexing),
    /// Partitions into factorials: `p_M(r! n - sigma - c) mod r!/D_r`.
    Factorial(FactorialIndexing),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneralIndexing {
    /// As written: argument `M_r n - sigma - m_1 - c` with `0 <= c < m_1`,
    /// modulus `prod_{j=1}^{r} m_j / gcd(m_j, P_j)`.
    Literal,
    /// Aligned with the main theorem: argument `M_r n - sigma - c` with
    /// `1 <= c <= m_1`, modulus `prod_{j=1}^{r-1} m_{j+1} / gcd(m_{j+1}, P_j)`.
    TheoremAligned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorialIndexing {
    /// `M = (1, 2, 3, ...)`: base `r!`, sigma weights `j!`.
    Literal,
    /// `M = (2, 3, 4, ...)`: base `m_1 ... m_r = (r+1)!`, sigma weights `(j+1)!`.
    Shifted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureParams {
    pub seq: MSequence,
    pub r: usize,
    /// `eps_1 .. eps_{r-1}`.
    pub eps: Vec<bool>,
    pub c: u64,
    pub conjecture: Conjecture,
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `m / gcd(m, P_j)`.
fn mu_primorial(m: u64, j: u64) -> u64 {
    let g = BigUint::from(m).gcd(&primorial(j));
    m / g.to_u64().expect("gcd divides m")
}

impl ConjectureParams {
    pub fn validate(&self) -> Result<()> {
        positive("r", self.r as u64)?;
        if self.eps.len() != self.r - 1 {
            return Err(Error::InvalidParameter(format!(
                "eps needs r - 1 = {} entries, got {}",
                self.r - 1,
                self.eps.len()
            )));
        }
        match self.conjecture {
            Conjecture::General(indexing) => {
                let m1 = self.seq.entry(1)?;
                self.seq.entry(self.r)?;
                let ok = match indexing {
                    GeneralIndexing::Literal => self.c < m1,
                    GeneralIndexing::TheoremAligned => (1..=m1).contains(&self.c),
                };
                if !ok {
                    return Err(Error::InvalidParameter(format!(
                        "c = {} is out of range for m_1 = {m1}",
                        self.c
                    )));
                }
            }
            Conjecture::Factorial(_) => {
                if self.seq != MSequence::factorial() {
                    return Err(Error::InvalidParameter(
                        "the factorial conjecture is stated for `fact` only".into(),
                    ));
                }
                if !(1..=2).contains(&self.c) {
                    return Err(Error::InvalidParameter("c must be 1 or 2".into()));
                }
            }
        }
        Ok(())
    }

    /// Weight multiplying `eps_j` in sigma.
    fn sigma_weight(&self, j: usize) -> Result<BigUint> {
        match self.conjecture {
            Conjecture::General(_) | Conjecture::Factorial(FactorialIndexing::Shifted) => {
                self.seq.partial_product(j)
            }
            Conjecture::Factorial(FactorialIndexing::Literal) => Ok(factorial(j as u64)),
        }
    }

    /// `sigma = sum_j eps_j * weight_j`, recomputed on every call.
    pub fn sigma(&self) -> Result<BigUint> {
        let mut sigma = BigUint::zero();
        for (idx, &e) in self.eps.iter().enumerate() {
            if e {
                sigma += self.sigma_weight(idx + 1)?;
            }
        }
        Ok(sigma)
    }

    /// The product multiplying `n` in the argument.
    pub fn base(&self) -> Result<BigUint> {
        match self.conjecture {
            Conjecture::Factorial(FactorialIndexing::Literal) => Ok(factorial(self.r as u64)),
            _ => self.seq.partial_product(self.r),
        }
    }

    /// Constant subtracted from `base * n`.
    pub fn offset(&self) -> Result<BigUint> {
        let extra = match self.conjecture {
            Conjecture::General(GeneralIndexing::Literal) => self.seq.entry(1)? + self.c,
            _ => self.c,
        };
        Ok(self.sigma()? + extra)
    }

    pub fn modulus(&self) -> Result<BigUint> {
        Ok(match self.conjecture {
            Conjecture::General(GeneralIndexing::Literal) => {
                let mut acc = BigUint::one();
                for j in 1..=self.r {
                    acc *= mu_primorial(self.seq.entry(j)?, j as u64);
                }
                acc
            }
            Conjecture::General(GeneralIndexing::TheoremAligned) => {
                let mut acc = BigUint::one();
                for j in 1..self.r {
                    acc *= mu_primorial(self.seq.entry(j + 1)?, j as u64);
                }
                acc
            }
            Conjecture::Factorial(_) => factorial(self.r as u64) / d_r(self.r as u64),
        })
    }

    fn params_json(&self) -> Result<serde_json::Value> {
        let eps: Vec<u8> = self.eps.iter().map(|&e| e as u8).collect();
        let sigma = self.sigma()?.to_u64().ok_or_else(overflow)?;
        Ok(serde_json::json!({
            "seq": self.seq.to_spec(),
            "r": self.r,
            "eps": eps,
            "c": self.c,
            "sigma": sigma,
            "conjecture": self.conjecture,
        }))
    }
}

/// Residues of `p_M(base * n - offset)` modulo the conjecture's modulus for
/// `n = 1..=n_max`; negative arguments are skipped and listed.
pub fn check_conjecture(params: &ConjectureParams, n_max: u64) -> Result<CongruenceReport> {
    params.validate()?;
    positive("n_max", n_max)?;
    let base = params.base()?.to_i64().ok_or_else(overflow)?;
    let offset = params.offset()?.to_i64().ok_or_else(overflow)?;
    let top = base.checked_mul(n_max as i64).ok_or_else(overflow)? - offset;
    let counter = PartitionCounter::new(&params.seq, top.max(0) as u64);
    let modulus = params.modulus()?;
    let m = BigInt::from(modulus.clone());
    let check = match params.conjecture {
        Conjecture::General(_) => "conjecture-general",
        Conjecture::Factorial(_) => "conjecture-factorial",
    };
    let mut report = CongruenceReport::new(check, params.params_json()?, modulus);
    for n in 1..=n_max {
        let arg = base * n as i64 - offset;
        if arg < 0 {
            report.skip(n as i64);
            continue;
        }
        report.push(Sample::new(
            n as i64,
            arg,
            &BigInt::from(counter.count(arg)),
            &m,
        ));
    }
    Ok(report)
}

/// `p_M(5! n - 2 - 4!) mod 5!/6` over partitions into factorials. Values of
/// `n` in [`COUNTEREXAMPLE_NS`] are expected to leave residue 10; other
/// values are reported without an expectation.
pub fn reproduce_counterexample(ns: &[u64]) -> Result<CongruenceReport> {
    let params = ConjectureParams {
        seq: MSequence::factorial(),
        r: 5,
        eps: vec![false, false, false, true],
        c: 2,
        conjecture: Conjecture::Factorial(FactorialIndexing::Literal),
    };
    debug_assert_eq!(params.offset()?, BigUint::from(26u32));
    let modulus = params.modulus()?;
    let max_n = ns.iter().copied().max().unwrap_or(0);
    let counter = PartitionCounter::new(&params.seq, 120 * max_n);
    let m = BigInt::from(modulus.clone());
    let mut report = CongruenceReport::new(
        "counterexample",
        serde_json::json!({ "seq": "fact", "expression": "p_M(120n - 26) mod 20", "n": ns }),
        modulus,
    )
    .with_expected_residue(BigUint::from(10u32));
    for &n in ns {
        positive("n", n)?;
        let arg = to_i64(120 * n - 26)?;
        let sample = Sample::new(n as i64, arg, &BigInt::from(counter.count(arg)), &m);
        if COUNTEREXAMPLE_NS.contains(&n) {
            report.push(sample);
        } else {
            report.push_unchecked(sample);
        }
    }
    Ok(report)
}

/// How a classical congruence is stated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassicalForm {
    /// The form that holds: sigma weights `m^{j+1}`, and the first
    /// Churchhouse family modulo `2^{floor((3k+4)/2)}`.
    #[default]
    Proven,
    /// Sigma weights `m^j` and modulus `2^{3k+2}`. Both fail in general.
    Printed,
}

/// `b_m(m^{r+1} n - sigma - m) ≡ 0 (mod m^r / c_r)` with `c_r = 2^{r-1}`
/// for even `m`, else 1. `sigma = sum_j eps_j m^{j+1}` in the proven form,
/// `sum_j eps_j m^j` in the printed one.
pub fn verify_classical_mary(
    m: u64,
    r: usize,
    eps: &[bool],
    n_max: u64,
    form: ClassicalForm,
) -> Result<CongruenceReport> {
    positive("r", r as u64)?;
    positive("n_max", n_max)?;
    if eps.len() != r - 1 {
        return Err(Error::InvalidParameter(format!(
            "eps needs r - 1 = {} entries",
            r - 1
        )));
    }
    let seq = MSequence::constant(m)?;
    let pow = |e: usize| m.checked_pow(e as u32).ok_or_else(overflow);
    let sigma: u64 = eps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e)
        .map(|(j, _)| match form {
            ClassicalForm::Proven => pow(j + 2),
            ClassicalForm::Printed => pow(j + 1),
        })
        .sum::<Result<u64>>()?;
    let c_r = if m.is_multiple_of(2) {
        1u64 << (r - 1)
    } else {
        1
    };
    let modulus = BigUint::from(pow(r)? / c_r);
    let step = pow(r + 1)?;
    let top = step.checked_mul(n_max).ok_or_else(overflow)?;
    let counter = PartitionCounter::new(&seq, top);
    let mm = BigInt::from(modulus.clone());
    let eps_json: Vec<u8> = eps.iter().map(|&e| e as u8).collect();
    let mut report = CongruenceReport::new(
        "classical",
        serde_json::json!({ "m": m, "r": r, "eps": eps_json, "sigma": sigma,
                            "n_max": n_max, "form": form }),
        modulus,
    );
    for n in 1..=n_max {
        let arg = to_i64(step * n)? - to_i64(sigma + m)?;
        if arg < 0 {
            report.skip(n as i64);
            continue;
        }
        report.push(Sample::new(
            n as i64,
            arg,
            &BigInt::from(counter.count(arg)),
            &mm,
        ));
    }
    Ok(report)
}

/// Two reports: `b_2(2^{k+2} n) - b_2(2^k n)` for `n = 1..=n_max`, modulo
/// `2^{floor((3k+4)/2)}` (proven) or `2^{3k+2}` (printed), and
/// `b_2(2^{2k+1}) - b_2(2^{2k-1}) mod 2^{3k}`.
pub fn verify_churchhouse(
    k: u32,
    n_max: u64,
    form: ClassicalForm,
) -> Result<[CongruenceReport; 2]> {
    positive("k", k as u64)?;
    positive("n_max", n_max)?;
    let top_exp = (k + 2).max(2 * k + 1);
    let top = (1u64 << top_exp)
        .checked_mul(n_max.max(1))
        .ok_or_else(overflow)?;
    let counter = PartitionCounter::new(&MSequence::constant(2)?, top);
    let b = |x: u64| BigInt::from(counter.count(x as i64));

    let m1 = BigUint::one()
        << match form {
            ClassicalForm::Proven => (3 * k + 4) / 2,
            ClassicalForm::Printed => 3 * k + 2,
        };
    let mm1 = BigInt::from(m1.clone());
    let mut first = CongruenceReport::new(
        "churchhouse-family-1",
        serde_json::json!({ "k": k, "n_max": n_max, "form": form }),
        m1,
    );
    for n in 1..=n_max {
        let hi = (1u64 << (k + 2)) * n;
        let lo = (1u64 << k) * n;
        first.push(Sample::new(n as i64, to_i64(hi)?, &(b(hi) - b(lo)), &mm1));
    }

    let m2 = BigUint::one() << (3 * k);
    let mm2 = BigInt::from(m2.clone());
    let mut second =
        CongruenceReport::new("churchhouse-family-2", serde_json::json!({ "k": k }), m2);
    let hi = 1u64 << (2 * k + 1);
    let lo = 1u64 << (2 * k - 1);
    second.push(Sample::new(k as i64, to_i64(hi)?, &(b(hi) - b(lo)), &mm2));
    Ok([first, second])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemarkCheck {
    pub holds: bool,
    pub n_max: u64,
    /// First `n` at which either identity failed.
    pub first_failure: Option<u64>,
}

/// For `n = 1..=n_max`:
/// `p_M(m_1 n) - p_M(m_1 (n-1)) = p_{M'}(n)` and `p_M(m_1 n - 1) = p_M(m_1 (n-1))`,
/// where `M' = (m_2, m_3, ...)`.
pub fn remark_identity_check(seq: &MSequence, n_max: u64) -> Result<RemarkCheck> {
    positive("n_max", n_max)?;
    let m1 = seq.entry(1)?;
    let table = count_pm_table(seq, m1.checked_mul(n_max).ok_or_else(overflow)?);
    let shifted = count_pm_table(&seq.drop_front(1), n_max);
    let first_failure = (1..=n_max).find(|&n| {
        let hi = &table[(m1 * n) as usize];
        let lo = &table[(m1 * (n - 1)) as usize];
        let diff_ok = BigInt::from(hi.clone()) - BigInt::from(lo.clone())
            == BigInt::from(shifted[n as usize].clone());
        let flat_ok = table[(m1 * n - 1) as usize] == *lo;
        !(diff_ok && flat_ok)
    });
    Ok(RemarkCheck {
        holds: first_failure.is_none(),
        n_max,
        first_failure,
    })
}
