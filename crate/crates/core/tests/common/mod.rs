#![allow(dead_code)]

use mpart_core::MSequence;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const SEED: u64 = 0x006d_7061_7274;

/// Constant sequences 2..=6, factorials, and a handful of mixed ones.
pub fn battery() -> Vec<MSequence> {
    let mut out: Vec<MSequence> = (2..=6).map(|m| MSequence::constant(m).unwrap()).collect();
    out.push(MSequence::factorial());
    for spec in [
        "list:3,2,tail=const",
        "list:2,3,5,7,11,tail=const",
        "list:4,9,2,6,3,tail=const",
        "list:6,10,15,tail=const",
        "list:2,2,3,tail=succ",
    ] {
        out.push(spec.parse().unwrap());
    }
    out
}

/// Finite sequences of length `len` with entries uniform in `2..=9`.
pub fn random_sequences(count: usize, len: usize, seed: u64) -> Vec<MSequence> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let entries = (0..len).map(|_| rng.random_range(2..=9)).collect();
            MSequence::finite(entries).unwrap()
        })
        .collect()
}

/// Every tuple of length `r` over `lo..=hi` in descending lexicographic
/// order, so each prefix is first requested from a series cache at its
/// highest order.
pub fn tuples_desc(r: usize, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for t in &out {
            for m in (lo..=hi).rev() {
                let mut u = t.clone();
                u.push(m);
                next.push(u);
            }
        }
        out = next;
    }
    out
}
