use std::collections::HashMap;

use serde::Serialize;

use super::{all_permutations, perm_sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalReport {
    pub n: usize,
    pub subsets_checked: u64,
    pub vanishing_found: u64,
}

/// Signed values of `Π_i (λ+i)^{σ(i)}` at `λ = 0..=n(n-1)/2`.
fn evaluation_vector(p: &[usize], points: usize) -> Vec<i128> {
    (0..points as i128)
        .map(|x| {
            let v = p.iter().enumerate().fold(1i128, |acc, (i, &j)| {
                acc.checked_mul((x + i as i128).pow(j as u32)).expect("evaluation fits in i128")
            });
            v * perm_sign(p) as i128
        })
        .collect()
}

fn subset_sums(vectors: &[Vec<i128>], points: usize) -> Vec<Vec<i128>> {
    let mut sums = vec![vec![0i128; points]];
    for v in vectors {
        let extended: Vec<Vec<i128>> = sums
            .iter()
            .map(|s| s.iter().zip(v).map(|(a, b)| a.checked_add(*b).expect("sum fits in i128")).collect())
            .collect();
        sums.extend(extended);
    }
    sums
}

/// Counts nonempty `S ⊆ S_n` with `P_S ≡ 0`.
///
/// `P_S` has degree at most `n(n-1)/2`, so it vanishes iff its values at
/// that many plus one points do. The permutations are split in two halves;
/// subset sums of one half are hashed and matched against negated sums of
/// the other.
pub fn universal_small_check(n: usize) -> UniversalReport {
    assert!((1..=4).contains(&n), "universal check supports n ≤ 4");
    let points = n * (n - 1) / 2 + 1;
    let vectors: Vec<Vec<i128>> = all_permutations(n).iter().map(|p| evaluation_vector(p, points)).collect();
    let (left, right) = vectors.split_at(vectors.len() / 2);
    let mut table: HashMap<Vec<i128>, u64> = HashMap::new();
    for s in subset_sums(left, points) {
        *table.entry(s).or_insert(0) += 1;
    }
    let mut zero_sums = 0u64;
    for s in subset_sums(right, points) {
        let neg: Vec<i128> = s.iter().map(|v| -v).collect();
        zero_sums += table.get(&neg).copied().unwrap_or(0);
    }
    UniversalReport {
        n,
        subsets_checked: (1u64 << vectors.len()) - 1,
        // the empty set pairs with itself
        vanishing_found: zero_sums - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(universal_small_check(2), UniversalReport { n: 2, subsets_checked: 3, vanishing_found: 0 });
        assert_eq!(universal_small_check(3), UniversalReport { n: 3, subsets_checked: 63, vanishing_found: 0 });
    }

    #[test]
    fn evaluation_vectors_are_signed() {
        assert_eq!(evaluation_vector(&[1, 0], 2), vec![0, -1]);
        assert_eq!(evaluation_vector(&[0, 1], 2), vec![1, 2]);
    }
}
