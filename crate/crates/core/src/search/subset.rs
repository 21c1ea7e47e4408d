//! The brute-subset engine: every `n`-subset of the point indices, no symmetry.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::canon::Canonizer;
use super::eval::Evaluator;
use super::{Extremum, Mode};
use crate::error::{Error, Result};

/// `C(n, r)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Advances `c` (strictly increasing, entries `< n`) to the next combination.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let r = c.len();
    for i in (0..r).rev() {
        if c[i] < n - r + i {
            c[i] += 1;
            for j in i + 1..r {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn check_limit(total: usize, n: usize, limit: u64) -> Result<()> {
    let count = binomial(total as u64, n as u64);
    if count > limit {
        return Err(Error::GuardExceeded(format!("C({total}, {n}) = {count} subsets exceeds the limit {limit}")));
    }
    Ok(())
}

/// Calls `f` on every `n`-subset whose first element is `first`.
fn for_each_with_first(total: usize, n: usize, first: usize, mut f: impl FnMut(&[usize])) {
    if n == 0 {
        return;
    }
    let mut c: Vec<usize> = (first..first + n).collect();
    if c[n - 1] >= total {
        return;
    }
    loop {
        f(&c);
        // keep c[0] fixed
        if n == 1 || !next_combination(&mut c[1..], total) {
            break;
        }
    }
}

/// Extremal `M(C)` over all spanning `n`-subsets, with the lexicographically
/// least extremal subset.
pub fn subset_extremum(ev: &Evaluator, n: usize, mode: Mode, restrict_min_dist_2: bool, limit: u64) -> Result<Option<Extremum>> {
    let space = ev.space();
    let (total, k) = (space.num_points(), space.k());
    check_limit(total, n, limit)?;
    if n == 0 || n > total {
        return Ok(None);
    }
    let best = (0..=total - n)
        .into_par_iter()
        .filter_map(|first| {
            let mut best: Option<Extremum> = None;
            for_each_with_first(total, n, first, |c| {
                if ev.span_dim(c) < k {
                    return;
                }
                let e = ev.evaluate(&ev.mask(c));
                if restrict_min_dist_2 && e.max_section + 2 > n {
                    return;
                }
                let cand = Extremum { value: e.minimal, points: c.to_vec() };
                if best.as_ref().is_none_or(|b| cand.better_than(b, mode)) {
                    best = Some(cand);
                }
            });
            best
        })
        .reduce_with(|a, b| if b.better_than(&a, mode) { b } else { a });
    Ok(best)
}

/// Canonical forms of all spanning `n`-subsets, i.e. one entry per equivalence class.
pub fn subset_classes(ev: &Evaluator, n: usize, restrict_min_dist_2: bool, limit: u64) -> Result<BTreeSet<Vec<usize>>> {
    let space = ev.space();
    let (total, k) = (space.num_points(), space.k());
    check_limit(total, n, limit)?;
    let canon = Canonizer::new(space)?;
    if n == 0 || n > total {
        return Ok(BTreeSet::new());
    }
    let sets = (0..=total - n)
        .into_par_iter()
        .map(|first| {
            let mut found = BTreeSet::new();
            for_each_with_first(total, n, first, |c| {
                if ev.span_dim(c) < k {
                    return;
                }
                if restrict_min_dist_2 && ev.evaluate(&ev.mask(c)).max_section + 2 > n {
                    return;
                }
                found.insert(canon.canonical_indices(c));
            });
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ProjectiveSpace;
    use crate::gf::field_new;

    fn ev(q: u32, k: usize) -> Evaluator {
        Evaluator::new(ProjectiveSpace::new(&field_new(q).unwrap(), k).unwrap()).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(31, 11), 84_672_315);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(200, 100), u64::MAX);
    }

    #[test]
    fn combinations_in_order() {
        let mut seen = Vec::new();
        for first in 0..5 {
            for_each_with_first(5, 3, first, |c| seen.push(c.to_vec()));
        }
        assert_eq!(seen.len(), 10);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn fano_values() {
        let e = ev(2, 3);
        let m5 = subset_extremum(&e, 5, Mode::Min, false, u64::MAX).unwrap().unwrap();
        assert_eq!(m5.value, 6);
        let m6 = subset_extremum(&e, 6, Mode::Min, false, u64::MAX).unwrap().unwrap();
        assert_eq!(m6.value, 7);
        let big4 = subset_extremum(&e, 4, Mode::Max, false, u64::MAX).unwrap().unwrap();
        assert_eq!(big4.value, 6);
        assert!(subset_extremum(&e, 8, Mode::Min, false, u64::MAX).unwrap().is_none());
    }

    #[test]
    fn class_counts_fano() {
        let e = ev(2, 3);
        let counts: Vec<usize> = (3..=7).map(|n| subset_classes(&e, n, false, u64::MAX).unwrap().len()).collect();
        // spanning only: the triangle; frame and triangle+point; then complements
        assert_eq!(counts, vec![1, 2, 1, 1, 1]);
    }

    #[test]
    fn guard() {
        let e = ev(2, 5);
        assert!(matches!(subset_extremum(&e, 15, Mode::Min, true, 1_000), Err(Error::GuardExceeded(_))));
    }
}
