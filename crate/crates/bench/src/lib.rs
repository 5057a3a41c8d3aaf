//! Fixtures shared by the criterion benches.

use mpart_core::MSequence;

/// Sequences benchmarked by name: binary, ternary, factorial, mixed.
pub fn fixtures() -> Vec<(&'static str, MSequence)> {
    vec![
        ("const2", MSequence::constant(2).unwrap()),
        ("const3", MSequence::constant(3).unwrap()),
        ("fact", MSequence::factorial()),
        ("mixed", "list:3,2,5,4,tail=const".parse().unwrap()),
    ]
}

/// All tuples of length `r` over `2..=hi`, in descending lexicographic order.
pub fn tuples(r: usize, hi: u64) -> Vec<Vec<u64>> {
    (0..r).fold(vec![Vec::new()], |acc, _| {
        acc.iter()
            .flat_map(|t| {
                (2..=hi).rev().map(move |m| {
                    let mut u = t.clone();
                    u.push(m);
                    u
                })
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    #[test]
    fn tuple_counts() {
        assert_eq!(super::tuples(3, 4).len(), 27);
        assert_eq!(super::tuples(2, 3)[0], vec![3, 3]);
    }
}
