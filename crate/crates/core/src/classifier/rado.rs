//! Zero-sum subset search (Rado's condition).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

/// Smallest nonempty index subset (0-based) whose coefficients sum to zero.
///
/// Among all zero-sum subsets the one with fewest elements is returned, ties
/// broken lexicographically on the sorted index list. Works by dynamic
/// programming over achievable sums: `min_count[j][s]` is the fewest elements
/// of `coeffs[j..]` summing to `s`.
pub fn rado_condition(coeffs: &[BigInt]) -> Option<Vec<usize>> {
    let k = coeffs.len();
    if k == 0 {
        return None;
    }
    let mut min_count: Vec<HashMap<BigInt, usize>> = vec![HashMap::new(); k + 1];
    min_count[k].insert(BigInt::zero(), 0);
    for j in (0..k).rev() {
        let mut next = min_count[j + 1].clone();
        for (s, &c) in &min_count[j + 1] {
            let t = s + &coeffs[j];
            let slot = next.entry(t).or_insert(usize::MAX);
            if c + 1 < *slot {
                *slot = c + 1;
            }
        }
        min_count[j] = next;
    }

    // best size, over the smallest element of the subset
    let mut best: Option<(usize, usize)> = None;
    for (i, a) in coeffs.iter().enumerate() {
        if let Some(&c) = min_count[i + 1].get(&-a) {
            let size = c + 1;
            if best.map_or(true, |(b, _)| size < b) {
                best = Some((size, i));
            }
        }
    }
    let (size, first) = best?;

    let mut subset = vec![first];
    let mut target = -coeffs[first].clone();
    let mut remaining = size - 1;
    let mut j = first + 1;
    while remaining > 0 {
        let need = &target - &coeffs[j];
        if min_count[j + 1].get(&need) == Some(&(remaining - 1)) {
            subset.push(j);
            target = need;
            remaining -= 1;
        }
        j += 1;
    }
    debug_assert!(target.is_zero());
    Some(subset)
}
