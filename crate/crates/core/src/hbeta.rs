//! The series family `H_(m_1, ..., m_r)` and the integers `beta_J` that
//! expand it against `h_r` and smaller members of the family:
//!
//! ```text
//! H_()            = h_0 = q / (1 - q)
//! H_(m_1..m_r)    = U_{m_r}( H_(m_1..m_{r-1}) / (1 - q) )
//! H_(m_1..m_r)    = m_1 m_2^2 ... m_r^r h_r - sum_J beta_J H_(m_{j_1}, ..., m_{j_s})
//! ```
//!
//! where `J = (j_1 < ... < j_s)` ranges over proper non-empty index tuples.
//! The decomposition is not unique; [`beta_map`] produces the canonical one
//! obtained by expanding `U_{m_r} h_r` through the alpha table and
//! re-expanding each `h_i` via the contiguous window `(m_{r-i}, ..., m_{r-1})`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::alpha::{alpha_table, binomial};
use crate::error::{Error, Result};
use crate::mseq::{cal_m, mu};
use crate::partitions::DEFAULT_ORDER_BUDGET;
use crate::report::{bigjson, CongruenceReport, Sample};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSeries {
    pub ms: Vec<u64>,
    pub series: TruncatedSeries,
    /// `prod m_j`: the factor by which the working order was inflated.
    pub inflation: u128,
}

fn check_ms(ms: &[u64]) -> Result<()> {
    match ms.iter().position(|&m| m < 2) {
        Some(p) => Err(Error::InvalidEntry {
            position: p + 1,
            value: ms[p],
        }),
        None => Ok(()),
    }
}

fn inflation(ms: &[u64]) -> u128 {
    ms.iter()
        .fold(1u128, |acc, &m| acc.saturating_mul(m as u128))
}

/// Memoizes `H` series by their multiplier tuple, keeping the highest order
/// computed so far. Requests at or below that order are served by truncation.
#[derive(Debug, Clone)]
pub struct HCache {
    budget: usize,
    series: HashMap<Vec<u64>, TruncatedSeries>,
}

impl Default for HCache {
    fn default() -> Self {
        Self::new()
    }
}

impl HCache {
    pub fn new() -> Self {
        Self::with_budget(DEFAULT_ORDER_BUDGET)
    }

    pub fn with_budget(budget: usize) -> Self {
        HCache {
            budget,
            series: HashMap::new(),
        }
    }

    /// `H_ms` truncated to `order`.
    pub fn get(&mut self, ms: &[u64], order: usize) -> Result<TruncatedSeries> {
        check_ms(ms)?;
        let required = inflation(ms).saturating_mul(order as u128);
        if required > self.budget as u128 {
            return Err(Error::OrderBudget {
                required,
                budget: self.budget,
            });
        }
        self.get_unchecked(ms, order)
    }

    fn get_unchecked(&mut self, ms: &[u64], order: usize) -> Result<TruncatedSeries> {
        if let Some(s) = self.series.get(ms) {
            if s.order() >= order {
                return Ok(s.truncate(order));
            }
        }
        let computed = match ms.split_last() {
            None => TruncatedSeries::h(0, order),
            Some((&m, parent)) => {
                let m = m as usize;
                self.get_unchecked(parent, order * m)?
                    .partial_sums()
                    .u_op(m)
            }
        };
        debug_assert_eq!(computed.order(), order);
        self.series.insert(ms.to_vec(), computed.clone());
        Ok(computed)
    }
}

/// `H_ms` to `order`, building the recursion at base order `order * prod(ms)`.
pub fn build_h(ms: &[u64], order: usize) -> Result<HSeries> {
    let series = HCache::new().get(ms, order)?;
    Ok(HSeries {
        ms: ms.to_vec(),
        series,
        inflation: inflation(ms),
    })
}

/// `m_1 m_2^2 ... m_r^r`.
pub fn leading_coefficient(ms: &[u64]) -> BigInt {
    ms.iter().enumerate().fold(BigInt::one(), |acc, (j, &m)| {
        acc * BigInt::from(m).pow(j as u32 + 1)
    })
}

/// All strictly increasing `s`-tuples drawn from `1..=r`.
pub fn index_tuples(r: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        let need = s - cur.len();
        for j in start..=r + 1 - need {
            cur.push(j);
            go(j + 1, r, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if s <= r {
        go(1, r, s, &mut Vec::with_capacity(s), &mut out);
    }
    out
}

/// Canonical `beta_J(m_1, ..., m_r)`, keyed by index tuple. Absent tuples are zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaMap {
    pub ms: Vec<u64>,
    #[serde(serialize_with = "serialize_entries")]
    entries: BTreeMap<Vec<usize>, BigInt>,
}

#[derive(Serialize)]
struct BetaEntry<'a> {
    tuple: &'a [usize],
    #[serde(serialize_with = "bigjson::serialize")]
    value: &'a BigInt,
}

fn serialize_entries<S: serde::Serializer>(
    entries: &BTreeMap<Vec<usize>, BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        entries
            .iter()
            .map(|(tuple, value)| BetaEntry { tuple, value }),
    )
}

impl BetaMap {
    pub fn r(&self) -> usize {
        self.ms.len()
    }

    pub fn get(&self, tuple: &[usize]) -> BigInt {
        self.entries.get(tuple).cloned().unwrap_or_default()
    }

    /// Non-zero entries in lexicographic tuple order.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &BigInt)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("beta maps serialize")
    }
}

/// Memoizing builder for [`BetaMap`]s; the recurrence for `(m_1..m_r)`
/// consults the prefix `(m_1..m_{r-1})` and the windows `(m_{r-i}..m_{r-1})`.
#[derive(Debug, Default)]
pub struct BetaBuilder {
    memo: HashMap<Vec<u64>, BetaMap>,
}

impl BetaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, ms: &[u64]) -> &BetaMap {
        self.ensure(ms);
        &self.memo[ms]
    }

    fn ensure(&mut self, ms: &[u64]) {
        if self.memo.contains_key(ms) {
            return;
        }
        let r = ms.len();
        if r >= 2 {
            self.ensure(&ms[..r - 1]);
            for i in 2..r {
                self.ensure(&ms[r - i - 1..r - 1]);
            }
        }
        let map = self.compute(ms);
        self.memo.insert(ms.to_vec(), map);
    }

    /// Coefficient `prod_{j=1}^{r-i-1} m_j^j * prod_{j=r-i}^{r-1} m_j^{r-i-1}`,
    /// i.e. `m_1 m_2^2 ... m_{r-1}^{r-1}` divided by the leading coefficient of
    /// the window `(m_{r-i}, ..., m_{r-1})`.
    fn window_factor(ms: &[u64], i: usize) -> BigInt {
        let r = ms.len();
        let mut acc = BigInt::one();
        for j in 1..r - i {
            acc *= BigInt::from(ms[j - 1]).pow(j as u32);
        }
        for j in r - i..r {
            acc *= BigInt::from(ms[j - 1]).pow((r - i - 1) as u32);
        }
        acc
    }

    fn compute(&self, ms: &[u64]) -> BetaMap {
        let r = ms.len();
        let mut entries = BTreeMap::new();
        if r >= 2 {
            let alpha = alpha_table(ms[r - 1], r);
            let prefix = &self.memo[&ms[..r - 1]];
            // scaled[i] = window_factor(i) * alpha(i), for 1 <= i <= r-1
            let scaled: Vec<BigInt> = (0..r)
                .map(|i| {
                    if i == 0 {
                        BigInt::zero()
                    } else {
                        Self::window_factor(ms, i) * alpha.get(i)
                    }
                })
                .collect();
            for s in 1..r {
                for tuple in index_tuples(r, s) {
                    let value = if tuple[s - 1] == r {
                        if s == 1 {
                            BigInt::zero()
                        } else {
                            prefix.get(&tuple[..s - 1])
                        }
                    } else {
                        let mut v = BigInt::zero();
                        if tuple[0] == r - s {
                            // the contiguous tuple (r-s, ..., r-1)
                            v -= &scaled[s];
                        }
                        for i in s + 1..r {
                            // shift indices into the window (m_{r-i}, ..., m_{r-1})
                            if tuple[0] + i < r {
                                continue; // some shifted index would be <= 0
                            }
                            let shifted: Vec<usize> =
                                tuple.iter().map(|&j| j + i + 1 - r).collect();
                            let window = &self.memo[&ms[r - i - 1..r - 1]];
                            let b = window.get(&shifted);
                            if !b.is_zero() {
                                v -= &scaled[i] * b;
                            }
                        }
                        v
                    };
                    if !value.is_zero() {
                        entries.insert(tuple, value);
                    }
                }
            }
        }
        BetaMap {
            ms: ms.to_vec(),
            entries,
        }
    }
}

pub fn beta_map(ms: &[u64]) -> BetaMap {
    BetaBuilder::new().get(ms).clone()
}

/// Result of comparing `H_ms` with its beta expansion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionCheck {
    pub ms: Vec<u64>,
    pub order: usize,
    pub holds: bool,
    pub first_mismatch: Option<usize>,
}

/// `m_1 ... m_r^r h_r - sum_J beta_J H_(ms[J])` to `order`.
pub fn expansion_rhs(
    ms: &[u64],
    betas: &BetaMap,
    order: usize,
    cache: &mut HCache,
) -> Result<TruncatedSeries> {
    let r = ms.len();
    let mut rhs = TruncatedSeries::h(r, order).scale(&leading_coefficient(ms));
    for (tuple, beta) in betas.entries() {
        let sub: Vec<u64> = tuple.iter().map(|&j| ms[j - 1]).collect();
        let h = cache.get(&sub, order)?;
        rhs = &rhs - &h.scale(beta);
    }
    Ok(rhs)
}

pub fn expansion_check(ms: &[u64], order: usize) -> Result<ExpansionCheck> {
    expansion_check_with(ms, order, &mut HCache::new(), &mut BetaBuilder::new())
}

pub fn expansion_check_with(
    ms: &[u64],
    order: usize,
    cache: &mut HCache,
    betas: &mut BetaBuilder,
) -> Result<ExpansionCheck> {
    let lhs = cache.get(ms, order)?;
    let rhs = expansion_rhs(ms, betas.get(ms), order, cache)?;
    let cmp = lhs.compare(&rhs);
    Ok(ExpansionCheck {
        ms: ms.to_vec(),
        order: cmp.order,
        holds: cmp.is_equal(),
        first_mismatch: cmp.first_mismatch,
    })
}

/// The explicit decompositions for `r <= 3`:
///
/// ```text
/// H_(m1)         = m1 h_1
/// H_(m1,m2)      = m1 m2^2 h_2 - C(m2,2) H_(m1)
/// H_(m1,m2,m3)   = m1 m2^2 m3^3 h_3 - m3^2 (m3-1) H_(m1,m2) - C(m2,2) H_(m1,m3)
///                  - (m3^2 (m3-1) C(m2,2) - m2^2 C(m3,3)) H_(m1)
/// ```
///
/// This is a different valid decomposition from the canonical one at `r = 3`.
pub fn small_expansion(ms: &[u64], order: usize, cache: &mut HCache) -> Result<TruncatedSeries> {
    check_ms(ms)?;
    let c2 = |m: u64| binomial(&BigInt::from(m), 2);
    let c3 = |m: u64| binomial(&BigInt::from(m), 3);
    let lead = TruncatedSeries::h(ms.len(), order).scale(&leading_coefficient(ms));
    match *ms {
        [_] => Ok(lead),
        [m1, m2] => Ok(&lead - &cache.get(&[m1], order)?.scale(&c2(m2))),
        [m1, m2, m3] => {
            let b3 = BigInt::from(m3).pow(2) * (m3 - 1);
            let t12 = cache.get(&[m1, m2], order)?.scale(&b3);
            let t13 = cache.get(&[m1, m3], order)?.scale(&c2(m2));
            let c1 = &b3 * c2(m2) - BigInt::from(m2).pow(2) * c3(m3);
            let t1 = cache.get(&[m1], order)?.scale(&c1);
            Ok(&(&(&lead - &t12) - &t13) - &t1)
        }
        _ => Err(Error::InvalidParameter(
            "explicit expansions exist only for 1 <= r <= 3".into(),
        )),
    }
}

fn tuple_label(tuple: &[usize]) -> String {
    let inner: Vec<String> = tuple.iter().map(|j| j.to_string()).collect();
    format!("({})", inner.join(","))
}

/// Checks `beta_J ≡ 0 (mod prod_{t not in J} mu(m_t, t))` for every proper
/// tuple `J`, and for constant `ms = (m, ..., m)` also
/// `beta_J ≡ 0 (mod m^{r-s} / gcd(m, 2))`.
pub fn beta_divisibility_report(ms: &[u64]) -> Result<CongruenceReport> {
    beta_divisibility_report_with(ms, &mut BetaBuilder::new())
}

pub fn beta_divisibility_report_with(
    ms: &[u64],
    builder: &mut BetaBuilder,
) -> Result<CongruenceReport> {
    check_ms(ms)?;
    if ms.is_empty() {
        return Err(Error::InvalidParameter("beta needs r >= 1".into()));
    }
    let r = ms.len();
    let betas = builder.get(ms);
    let mu_t: Vec<u64> = (1..=r).map(|t| mu(ms[t - 1], t as u64)).collect();
    let full: BigUint = mu_t.iter().map(|&x| BigUint::from(x)).product();
    let mut report =
        CongruenceReport::new("beta-divisibility", serde_json::json!({ "ms": ms }), full);
    let constant = ms.iter().all(|&m| m == ms[0]);
    let mut idx = 0i64;
    for s in 1..r {
        for tuple in index_tuples(r, s) {
            idx += 1;
            let value = betas.get(&tuple);
            let modulus: BigInt = (1..=r)
                .filter(|t| !tuple.contains(t))
                .map(|t| BigInt::from(mu_t[t - 1]))
                .product();
            report.push(
                Sample::new(idx, s as i64, &value, &modulus)
                    .with_modulus(modulus.magnitude().clone())
                    .with_label(tuple_label(&tuple)),
            );
            if constant {
                let m = ms[0];
                let strong = BigInt::from(m).pow((r - s) as u32) / m.gcd(&2);
                report.push(
                    Sample::new(idx, s as i64, &value, &strong)
                        .with_modulus(strong.magnitude().clone())
                        .with_label(format!("{} constant", tuple_label(&tuple))),
                );
            }
        }
    }
    Ok(report)
}

/// `prod_{t=1}^{r} cal_m(m_t, t)`.
pub fn h_modulus(ms: &[u64]) -> BigUint {
    ms.iter()
        .enumerate()
        .map(|(j, &m)| BigUint::from(cal_m(m, j as u64 + 1)))
        .product()
}

/// Checks that every coefficient of `H_ms` up to `order` is divisible by
/// `prod_{t=1}^{r} cal_m(m_t, t)`.
pub fn h_divisibility_report(ms: &[u64], order: usize) -> Result<CongruenceReport> {
    h_divisibility_report_with(ms, order, &mut HCache::new())
}

pub fn h_divisibility_report_with(
    ms: &[u64],
    order: usize,
    cache: &mut HCache,
) -> Result<CongruenceReport> {
    let series = cache.get(ms, order)?;
    let modulus = h_modulus(ms);
    let m = BigInt::from(modulus.clone());
    let mut report = CongruenceReport::new(
        "h-divisibility",
        serde_json::json!({ "ms": ms, "order": order }),
        modulus,
    );
    for (n, c) in series.coeffs().iter().enumerate() {
        report.push(Sample::new(n as i64, n as i64, c, &m));
    }
    Ok(report)
}
