//! Brute-force ground truth by direct enumeration.
//!
//! Unsigned first-kind numbers count permutations of `{1..n}` with exactly
//! `m` cycles; second-kind numbers count partitions of an `n`-set into
//! exactly `m` blocks. Nothing here may call into [`crate::stirling`]: the
//! oracle is only useful while it stays independent of the engine.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::Index;

/// Largest `n` the enumerators will accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_n: Index,
}

impl EnumerationBudget {
    pub const DEFAULT: EnumerationBudget = EnumerationBudget { max_n: 10 };

    pub fn new(max_n: Index) -> Self {
        EnumerationBudget { max_n }
    }

    fn admit(self, n: Index) -> Result<()> {
        if n > self.max_n {
            return Err(Error::BudgetExceeded {
                n,
                budget: self.max_n,
            });
        }
        if n == 0 {
            return Err(Error::domain("enumeration needs n >= 1"));
        }
        Ok(())
    }
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

fn count_cycles(perm: &[u8]) -> usize {
    let mut seen = 0u64;
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen & (1 << start) != 0 {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while seen & (1 << i) == 0 {
            seen |= 1 << i;
            i = perm[i] as usize;
        }
    }
    cycles
}

/// Rearranges `xs` into the next permutation in lexicographic order.
/// Returns `false` once the last permutation has been passed.
fn next_permutation(xs: &mut [u8]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs
        .iter()
        .rposition(|&x| x > xs[i])
        .expect("pivot has a successor");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// `hist[m]` = number of permutations of `n` elements with exactly `m` cycles.
///
/// Work is split by the image of the first element; the per-prefix counts
/// are summed, so the result does not depend on scheduling.
pub fn cycle_count_histogram(budget: EnumerationBudget, n: Index) -> Result<Vec<u64>> {
    budget.admit(n)?;
    let partials: Vec<Vec<u64>> = (0..n as u8)
        .into_par_iter()
        .map(|first| {
            let mut hist = vec![0u64; n + 1];
            let mut rest: Vec<u8> = (0..n as u8).filter(|&x| x != first).collect();
            let mut perm = vec![0u8; n];
            perm[0] = first;
            loop {
                perm[1..].copy_from_slice(&rest);
                hist[count_cycles(&perm)] += 1;
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            hist
        })
        .collect();
    let mut total = vec![0u64; n + 1];
    for hist in partials {
        for (t, h) in total.iter_mut().zip(hist) {
            *t += h;
        }
    }
    Ok(total)
}

/// Walks every restricted-growth string of length `n`: `a[0] = 0` and
/// `a[i] <= 1 + max(a[0..i])`. Each string is one set partition, with
/// `max + 1` blocks.
pub fn block_count_histogram(budget: EnumerationBudget, n: Index) -> Result<Vec<u64>> {
    budget.admit(n)?;
    let mut hist = vec![0u64; n + 1];
    let mut labels = vec![0usize; n];
    // prefix_max[i] = max(labels[0..=i])
    let mut prefix_max = vec![0usize; n];
    loop {
        hist[prefix_max[n - 1] + 1] += 1;
        // rightmost position that can still grow
        let Some(i) = (1..n).rev().find(|&i| labels[i] <= prefix_max[i - 1]) else {
            break;
        };
        labels[i] += 1;
        prefix_max[i] = prefix_max[i - 1].max(labels[i]);
        for t in i + 1..n {
            labels[t] = 0;
            prefix_max[t] = prefix_max[i];
        }
    }
    Ok(hist)
}

/// Permutations of `{1..n}` with exactly `m` cycles.
pub fn count_permutations_by_cycles(
    budget: EnumerationBudget,
    n: Index,
    m: Index,
) -> Result<BigInt> {
    let hist = cycle_count_histogram(budget, n)?;
    Ok(hist.get(m).copied().unwrap_or(0).into())
}

/// Partitions of an `n`-set into exactly `m` non-empty blocks.
pub fn count_set_partitions(budget: EnumerationBudget, n: Index, m: Index) -> Result<BigInt> {
    let hist = block_count_histogram(budget, n)?;
    Ok(hist.get(m).copied().unwrap_or(0).into())
}

/// Bell number by counting every restricted-growth string, ignoring blocks.
pub fn bell_by_enumeration(budget: EnumerationBudget, n: Index) -> Result<BigInt> {
    budget.admit(n)?;
    let mut count = 0u64;
    let mut labels = vec![0usize; n];
    fn walk(labels: &mut [usize], i: usize, max: usize, count: &mut u64) {
        if i == labels.len() {
            *count += 1;
            return;
        }
        for v in 0..=max + 1 {
            labels[i] = v;
            walk(labels, i + 1, max.max(v), count);
        }
    }
    walk(&mut labels, 1, 0, &mut count);
    Ok(count.into())
}
