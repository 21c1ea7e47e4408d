//! Brute-force counts straight from the definitions, with no geometry.
//!
//! These enumerate codewords (or subcodes) and compare supports pairwise.
//! They exist to cross-check the hyperplane/subspace routes in the parent
//! module and are only usable for small `q^k`.

use fixedbitset::FixedBitSet;

use super::LinearCode;
use crate::error::{Error, Result};
use crate::geometry::RrefIter;
use crate::gf::Elem;

/// Default ceiling on `q^k` for the oracles.
pub const ORACLE_LIMIT: u64 = 1 << 20;

fn guard(code: &LinearCode, limit: u64) -> Result<u64> {
    let size = (code.q() as u64).checked_pow(code.k() as u32).filter(|&s| s <= limit);
    size.ok_or_else(|| Error::TooLarge(format!("q^k = {}^{} exceeds {limit}", code.q(), code.k())))
}

fn support(word: &[Elem]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(word.len());
    for (i, &x) in word.iter().enumerate() {
        if x != 0 {
            s.insert(i);
        }
    }
    s
}

/// Flags the supports that properly contain no other support of the family.
fn minimal_flags(family: &[FixedBitSet]) -> Vec<bool> {
    let mut distinct: Vec<&FixedBitSet> = family.iter().collect();
    distinct.sort_by_key(|s| (s.count_ones(..), s.as_slice().to_vec()));
    distinct.dedup();
    family
        .iter()
        .map(|s| {
            let w = s.count_ones(..);
            !distinct.iter().take_while(|t| t.count_ones(..) < w).any(|t| t.is_subset(s))
        })
        .collect()
}

/// Number of minimal codewords up to scalar multiples, by enumerating all codewords.
pub fn oracle_count_minimal(code: &LinearCode) -> Result<usize> {
    oracle_count_minimal_with_limit(code, ORACLE_LIMIT)
}

pub fn oracle_count_minimal_with_limit(code: &LinearCode, limit: u64) -> Result<usize> {
    let size = guard(code, limit)?;
    let (q, k) = (code.q() as u64, code.k());
    let mut supports = Vec::with_capacity(size as usize - 1);
    for m in 1..size {
        let mut msg = vec![0; k];
        let mut t = m;
        for x in msg.iter_mut() {
            *x = (t % q) as Elem;
            t /= q;
        }
        supports.push(support(&code.encode(&msg)));
    }
    let minimal = minimal_flags(&supports).into_iter().filter(|&b| b).count();
    Ok(minimal / (q as usize - 1))
}

/// Number of `l`-dimensional subcodes whose support is minimal among the
/// supports of all `l`-dimensional subcodes.
pub fn oracle_count_support_minimal(code: &LinearCode, l: usize, limit: u64) -> Result<usize> {
    guard(code, limit)?;
    if l == 0 || l > code.k() {
        return Err(Error::OutOfRange(format!("subcode dimension {l}")));
    }
    let supports: Vec<FixedBitSet> = RrefIter::new(code.field(), l, code.k())
        .map(|basis| {
            let words = basis.mul(code.generator()).expect("k columns");
            let mut s = FixedBitSet::with_capacity(code.n());
            for r in 0..l {
                s.union_with(&support(words.row(r)));
            }
            s
        })
        .collect();
    Ok(minimal_flags(&supports).into_iter().filter(|&b| b).count())
}

/// Generalized Hamming weight from the definition: least support size of an `l`-dim subcode.
pub fn oracle_ghw(code: &LinearCode, l: usize, limit: u64) -> Result<usize> {
    guard(code, limit)?;
    RrefIter::new(code.field(), l, code.k())
        .map(|basis| {
            let words = basis.mul(code.generator()).expect("k columns");
            let mut s = FixedBitSet::with_capacity(code.n());
            for r in 0..l {
                s.union_with(&support(words.row(r)));
            }
            s.count_ones(..)
        })
        .min()
        .ok_or_else(|| Error::OutOfRange(format!("subcode dimension {l}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::tests::{conic_code_gf3, simplex};
    use crate::gf::field_new;
    use crate::linalg::Matrix;

    #[test]
    fn simplex_and_identity() {
        assert_eq!(oracle_count_minimal(&simplex(2, 3)).unwrap(), 7);
        let f2 = field_new(2).unwrap();
        let id = LinearCode::from_matrix(Matrix::identity(&f2, 2)).unwrap();
        // supports {0}, {1}, {0,1}: the last contains both others
        assert_eq!(oracle_count_minimal(&id).unwrap(), 2);
        assert_eq!(oracle_count_minimal(&conic_code_gf3()).unwrap(), 6);
    }

    #[test]
    fn guard_trips() {
        let s = simplex(2, 5);
        assert!(matches!(oracle_count_minimal_with_limit(&s, 16), Err(Error::TooLarge(_))));
    }

    #[test]
    fn ghw_of_simplex_by_brute_force() {
        let s = simplex(2, 3);
        let d: Vec<usize> = (1..=3).map(|l| oracle_ghw(&s, l, ORACLE_LIMIT).unwrap()).collect();
        assert_eq!(d, vec![4, 6, 7]);
        assert_eq!(oracle_count_support_minimal(&s, 2, ORACLE_LIMIT).unwrap(), 7);
    }
}
