//! Exact arithmetic for M-ary (non-squashing) partitions.
//!
//! For a sequence `M = (m_0 = 1, m_1, m_2, ...)` with `m_j >= 2`, an M-ary
//! partition of `n` writes `n` as a sum of the partial products
//! `M_r = m_0 m_1 ... m_r`. This crate counts them, implements the series
//! machinery (`U_m`, `h_r`, the `H` family with its alpha/beta
//! coefficients), and verifies the congruence
//!
//! ```text
//! p_M(m_1 m_2 ... m_r n - 1) ≡ 0  (mod prod_{t=2}^{r} cal_m(m_t, t-1))
//! ```
//!
//! together with related classical congruences and conjecture probes.

pub mod alpha;
pub mod error;
pub mod hbeta;
pub mod mseq;
pub mod partitions;
pub mod report;
pub mod series;
pub mod verify;

pub use alpha::{alpha_divisibility_report, alpha_oracle, alpha_table, AlphaTable};
pub use error::{Error, ParseError, Result};
pub use hbeta::{
    beta_divisibility_report, beta_map, build_h, expansion_check, h_divisibility_report, BetaMap,
    HCache, HSeries,
};
pub use mseq::{cal_m, d_r, mu, primorial, theorem_modulus, MSequence, Tail};
pub use partitions::{
    brute_force_count, count_pm, parts_up_to, pm_series, shifted_series, PartList, PartitionCounter,
};
pub use report::{CongruenceReport, Sample, Verdict};
pub use series::{SeriesComparison, TruncatedSeries};
pub use verify::{
    check_conjecture, remark_identity_check, reproduce_counterexample, verify_churchhouse,
    verify_classical_mary, verify_identity, verify_main_theorem, ClassicalForm, Conjecture,
    ConjectureParams, FactorialIndexing, GeneralIndexing,
};
