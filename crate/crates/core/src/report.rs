//! Congruence reports shared by every verification routine.
//!
//! JSON layout (field names are stable):
//!
//! ```text
//! {check, params, modulus, expected_residue,
//!  samples: [{n, arg, residue, modulus?, label?}], skipped, violations, verdict}
//! ```
//!
//! Big integers are written as plain JSON numbers.

use std::fmt::{self, Display, Write as _};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

pub(crate) mod bigjson {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        let n: serde_json::Number = v.to_string().parse().map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }

    pub fn serialize_opt<T: Display, S: Serializer>(
        v: &Option<T>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => serialize(v, s),
            None => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub n: i64,
    /// The argument the quantity was evaluated at (e.g. `m_1 ... m_r n - 1`).
    pub arg: i64,
    #[serde(serialize_with = "bigjson::serialize")]
    pub residue: BigUint,
    /// Per-sample modulus, when it differs from the report's.
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "bigjson::serialize_opt"
    )]
    pub modulus: Option<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Sample {
    /// A sample whose residue is `value mod modulus`, in `[0, modulus)`.
    pub fn new(n: i64, arg: i64, value: &BigInt, modulus: &BigInt) -> Self {
        let residue = value.mod_floor(modulus);
        Sample {
            n,
            arg,
            residue: residue.magnitude().clone(),
            modulus: None,
            label: None,
        }
    }

    pub fn with_modulus(mut self, modulus: BigUint) -> Self {
        self.modulus = Some(modulus);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub check: String,
    pub params: serde_json::Value,
    #[serde(serialize_with = "bigjson::serialize")]
    pub modulus: BigUint,
    #[serde(serialize_with = "bigjson::serialize")]
    pub expected_residue: BigUint,
    pub samples: Vec<Sample>,
    /// Values of `n` whose argument was negative or otherwise out of scope.
    pub skipped: Vec<i64>,
    pub violations: Vec<i64>,
    pub verdict: Verdict,
}

impl CongruenceReport {
    pub fn new(check: &str, params: serde_json::Value, modulus: BigUint) -> Self {
        CongruenceReport {
            check: check.to_string(),
            params,
            modulus,
            expected_residue: BigUint::zero(),
            samples: Vec::new(),
            skipped: Vec::new(),
            violations: Vec::new(),
            verdict: Verdict::Pass,
        }
    }

    pub fn with_expected_residue(mut self, residue: BigUint) -> Self {
        self.expected_residue = residue;
        self
    }

    pub fn modulus_int(&self) -> BigInt {
        BigInt::from(self.modulus.clone())
    }

    /// Records a sample; it is a violation if its residue is not the expected one.
    pub fn push(&mut self, sample: Sample) {
        self.push_checked(sample, true);
    }

    /// Like [`push`](Self::push), with an additional condition that must hold.
    pub fn push_checked(&mut self, sample: Sample, extra_ok: bool) {
        if sample.residue != self.expected_residue || !extra_ok {
            self.violations.push(sample.n);
            self.verdict = Verdict::Fail;
        }
        self.samples.push(sample);
    }

    /// Records a sample without any expectation attached.
    pub fn push_unchecked(&mut self, sample: Sample) {
        self.samples.push(sample);
    }

    pub fn skip(&mut self, n: i64) {
        self.skipped.push(n);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// `n,arg,modulus,residue` rows (plus `label` when any sample has one).
    pub fn to_csv(&self) -> String {
        let labelled = self.samples.iter().any(|s| s.label.is_some());
        let mut out = String::from("n,arg,modulus,residue");
        if labelled {
            out.push_str(",label");
        }
        out.push('\n');
        for s in &self.samples {
            let modulus = s.modulus.as_ref().unwrap_or(&self.modulus);
            let _ = write!(out, "{},{},{},{}", s.n, s.arg, modulus, s.residue);
            if labelled {
                let _ = write!(out, ",{}", s.label.as_deref().unwrap_or(""));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl Display for CongruenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check:     {}", self.check)?;
        writeln!(f, "params:    {}", self.params)?;
        writeln!(
            f,
            "modulus:   {} (expected residue {})",
            self.modulus, self.expected_residue
        )?;
        writeln!(f, "samples:   {}", self.samples.len())?;
        if !self.skipped.is_empty() {
            writeln!(f, "skipped:   {:?}", self.skipped)?;
        }
        if !self.violations.is_empty() {
            writeln!(f, "violations: {:?}", self.violations)?;
        }
        write!(f, "verdict:   {}", self.verdict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_are_non_negative() {
        let s = Sample::new(1, 5, &BigInt::from(-7), &BigInt::from(5));
        assert_eq!(s.residue, BigUint::from(3u32));
    }

    #[test]
    fn violations_follow_expected_residue() {
        let mut r = CongruenceReport::new("t", serde_json::json!({}), BigUint::from(4u32))
            .with_expected_residue(BigUint::from(2u32));
        let m = BigInt::from(4);
        r.push(Sample::new(1, 1, &BigInt::from(6), &m));
        assert!(r.passed());
        r.push(Sample::new(2, 2, &BigInt::from(8), &m));
        assert_eq!(r.violations, vec![2]);
        assert_eq!(r.verdict, Verdict::Fail);
        r.push_unchecked(Sample::new(3, 3, &BigInt::from(1), &m));
        assert_eq!(r.violations, vec![2]);
    }

    #[test]
    fn json_layout() {
        let mut r = CongruenceReport::new(
            "demo",
            serde_json::json!({"r": 2}),
            "100000000000000000000000".parse().unwrap(),
        );
        r.push(Sample::new(1, 3, &BigInt::zero(), &BigInt::from(7)).with_label("x"));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["check"], "demo");
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["samples"][0]["label"], "x");
        assert!(v["samples"][0].get("modulus").is_none());
        assert!(r
            .to_json()
            .contains("\"modulus\": 100000000000000000000000"));
    }

    #[test]
    fn csv_layout() {
        let mut r = CongruenceReport::new("demo", serde_json::json!({}), BigUint::from(20u32));
        r.push_unchecked(Sample::new(2, 214, &BigInt::from(30), &BigInt::from(20)));
        assert_eq!(r.to_csv(), "n,arg,modulus,residue\n2,214,20,10\n");
    }
}
