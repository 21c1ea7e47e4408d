//! The covering quantity α and the bounds on `M(C)` derived from it.
//!
//! `α_q^l(k, r)` is the least size of a point set containing
//! `W_1\U_1 ∪ ... ∪ W_r\U_r` for `r` distinct codimension-`l` subspaces
//! `W_i` and codimension-`(l+1)` subspaces `U_i ≤ W_i`. For `l = 1` this is
//! written `α_q(k, r)`. A projective code whose point set avoids such a
//! union has at least `r` non-minimal codeword classes, which turns values
//! of α into lower bounds on the number of minimal codewords.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::geometry::{gaussian_binomial, num_points, ProjectiveSpace, SubspaceRecord};
use crate::gf::{Elem, FieldSpec};

fn binom2(r: u64) -> u64 {
    r * r.saturating_sub(1) / 2
}

/// Largest `r` for which the dual-arc construction exists (`k >= 3`).
pub fn construction_max_r(q: u32) -> u64 {
    if q.is_multiple_of(2) {
        q as u64 + 1
    } else {
        q as u64
    }
}

/// `r q^(k-2) - C(r,2) q^(k-3)`, a lower bound on α for `k >= 3`.
pub fn alpha_formula(q: u32, k: usize, r: u64) -> u64 {
    let q = q as u64;
    r * q.pow(k as u32 - 2) - binom2(r) * q.pow(k as u32 - 3)
}

/// α_q(k, r) where a closed form is known, `None` elsewhere.
pub fn alpha_closed(q: u32, k: usize, r: u64) -> Option<u64> {
    if k < 2 {
        return None;
    }
    if r == 0 {
        return Some(0);
    }
    if k == 2 {
        return (r <= num_points(q, 2)).then_some(r);
    }
    if r <= 2 || r <= construction_max_r(q) {
        return Some(alpha_formula(q, k, r));
    }
    None
}

/// How a value of α was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Closed,
    Brute,
    /// Only an upper bound; never used in bounds.
    ConstructionUpperBound,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Closed => "closed",
            Provenance::Brute => "brute",
            Provenance::ConstructionUpperBound => "construction-upper-bound",
        })
    }
}

/// `r` pairs `(W_i, U_i)` and the union of the differences `W_i \ U_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverWitness {
    pub q: u32,
    pub k: usize,
    pub l: usize,
    pub outer: Vec<SubspaceRecord>,
    pub inner: Vec<SubspaceRecord>,
    pub union_points: FixedBitSet,
    pub cardinality: usize,
}

impl CoverWitness {
    pub fn new(space: &ProjectiveSpace, l: usize, outer: Vec<SubspaceRecord>, inner: Vec<SubspaceRecord>) -> Result<Self> {
        if outer.len() != inner.len() {
            return Err(Error::DimensionMismatch { expected: outer.len(), got: inner.len() });
        }
        let mut union_points = FixedBitSet::with_capacity(space.num_points());
        for (i, (w, u)) in outer.iter().zip(&inner).enumerate() {
            if w.codim != l || u.codim != l + 1 || !u.is_subspace_of(w) {
                return Err(Error::OutOfRange(format!("pair {i} is not a flag U < W of codimensions {}, {l}", l + 1)));
            }
            if outer[..i].contains(w) {
                return Err(Error::OutOfRange(format!("subspace {i} repeated")));
            }
            let mut diff = w.incident.clone();
            diff.difference_with(&u.incident);
            union_points.union_with(&diff);
        }
        let cardinality = union_points.count_ones(..);
        Ok(CoverWitness { q: space.q(), k: space.k(), l, outer, inner, union_points, cardinality })
    }

    pub fn empty(space: &ProjectiveSpace, l: usize) -> Self {
        CoverWitness {
            q: space.q(),
            k: space.k(),
            l,
            outer: Vec::new(),
            inner: Vec::new(),
            union_points: FixedBitSet::with_capacity(space.num_points()),
            cardinality: 0,
        }
    }

    pub fn r(&self) -> usize {
        self.outer.len()
    }
}

/// Limits for the exhaustive α search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteGuard {
    /// Ceiling on `[k;l]_q`, the number of candidate `W`.
    pub max_subspaces: u64,
    pub max_r: u64,
}

impl Default for BruteGuard {
    fn default() -> Self {
        BruteGuard { max_subspaces: 40, max_r: 4 }
    }
}

struct Flags {
    outer: Vec<SubspaceRecord>,
    inner: Vec<SubspaceRecord>,
    /// For each outer subspace, `(inner index, difference bits as words)`.
    diffs: Vec<Vec<(usize, Vec<u64>)>>,
}

fn words_of(bits: &FixedBitSet) -> Vec<u64> {
    let n = bits.len().div_ceil(64);
    let mut w = vec![0u64; n];
    for i in bits.ones() {
        w[i / 64] |= 1 << (i % 64);
    }
    w
}

fn flags(space: &ProjectiveSpace, l: usize) -> Result<Flags> {
    let outer: Vec<SubspaceRecord> = space.subspaces_codim(l)?.collect();
    let inner: Vec<SubspaceRecord> = space.subspaces_codim(l + 1)?.collect();
    let diffs = outer
        .iter()
        .map(|w| {
            inner
                .iter()
                .enumerate()
                .filter(|(_, u)| u.is_subspace_of(w))
                .map(|(ui, u)| {
                    let mut d = w.incident.clone();
                    d.difference_with(&u.incident);
                    (ui, words_of(&d))
                })
                .collect()
        })
        .collect();
    Ok(Flags { outer, inner, diffs })
}

#[derive(Clone)]
struct Best {
    size: u32,
    /// `(outer, inner)` index pairs.
    choice: Vec<(usize, usize)>,
}

fn better(a: &Best, b: &Best) -> bool {
    (a.size, &a.choice) < (b.size, &b.choice)
}

/// Depth-first branch and bound over increasing outer indices.
fn descend(fl: &Flags, r: usize, union: &[u64], size: u32, choice: &mut Vec<(usize, usize)>, best: &mut Option<Best>) {
    if best.as_ref().is_some_and(|b| size >= b.size && choice.len() < r) {
        return;
    }
    if choice.len() == r {
        let cand = Best { size, choice: choice.clone() };
        if best.as_ref().is_none_or(|b| better(&cand, b)) {
            *best = Some(cand);
        }
        return;
    }
    let start = choice.last().map_or(0, |&(w, _)| w + 1);
    let remaining = r - choice.len();
    for wi in start..=fl.outer.len().saturating_sub(remaining) {
        for (ui, diff) in &fl.diffs[wi] {
            let next: Vec<u64> = union.iter().zip(diff).map(|(a, b)| a | b).collect();
            let s = next.iter().map(|w| w.count_ones()).sum();
            choice.push((wi, *ui));
            descend(fl, r, &next, s, choice, best);
            choice.pop();
        }
    }
}

/// Exact α_q^l(k, r) by exhaustive search, with an optimal witness.
///
/// The group acts transitively on flags `U < W`, so the first pair is fixed
/// to the first outer subspace and its first inner subspace.
pub fn alpha_brute(space: &ProjectiveSpace, r: u64, l: usize, guard: BruteGuard) -> Result<(u64, CoverWitness)> {
    let k = space.k();
    if l == 0 || l >= k {
        return Err(Error::OutOfRange(format!("codimension l = {l} must satisfy 1 <= l < k = {k}")));
    }
    if r == 0 {
        return Ok((0, CoverWitness::empty(space, l)));
    }
    let count = gaussian_binomial(k as u32, l as u32, space.q())?;
    if r > count {
        return Err(Error::OutOfRange(format!("r = {r} exceeds [k;l]_q = {count}")));
    }
    if count > guard.max_subspaces || r > guard.max_r {
        return Err(Error::TooLarge(format!(
            "alpha brute force needs [k;l]_q <= {} and r <= {} (got {count}, {r})",
            guard.max_subspaces, guard.max_r
        )));
    }
    let fl = flags(space, l)?;
    let r = r as usize;
    let (u0, d0) = &fl.diffs[0][0];
    let s0 = d0.iter().map(|w| w.count_ones()).sum();
    let best = if r == 1 {
        Some(Best { size: s0, choice: vec![(0, *u0)] })
    } else {
        // split on the second outer subspace
        (1..fl.outer.len())
            .into_par_iter()
            .filter_map(|w1| {
                let mut best: Option<Best> = None;
                for (ui, diff) in &fl.diffs[w1] {
                    let union: Vec<u64> = d0.iter().zip(diff).map(|(a, b)| a | b).collect();
                    let s = union.iter().map(|w| w.count_ones()).sum();
                    let mut choice = vec![(0, *u0), (w1, *ui)];
                    descend(&fl, r, &union, s, &mut choice, &mut best);
                }
                best
            })
            .reduce_with(|a, b| if better(&b, &a) { b } else { a })
    };
    let best = best.ok_or_else(|| Error::OutOfRange(format!("no configuration with r = {r}")))?;
    let outer = best.choice.iter().map(|&(w, _)| fl.outer[w].clone()).collect();
    let inner = best.choice.iter().map(|&(_, u)| fl.inner[u].clone()).collect();
    let witness = CoverWitness::new(space, l, outer, inner)?;
    debug_assert_eq!(witness.cardinality as u32, best.size);
    Ok((best.size as u64, witness))
}

/// Points of a maximal arc in PG(GF(q)^3): the conic `{(1,t,t^2)} ∪ {(0,0,1)}`,
/// plus the nucleus `(0,1,0)` when `q` is even.
pub fn arc(field: &FieldSpec) -> Vec<[Elem; 3]> {
    let mut pts = vec![[0, 0, 1]];
    pts.extend(field.elements().map(|t| [1, t, field.mul(t, t)]));
    if field.q().is_multiple_of(2) {
        pts.push([0, 1, 0]);
    }
    debug_assert!(is_arc(field, &pts));
    pts
}

/// No three of the points are collinear.
pub fn is_arc(field: &FieldSpec, pts: &[[Elem; 3]]) -> bool {
    let n = pts.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if crate::linalg::span_dim(field, 3, &[pts[a], pts[b], pts[c]]).unwrap_or(0) < 3 {
                    return false;
                }
            }
        }
    }
    true
}

/// Witness of size `r q^(k-2) - C(r,2) q^(k-3)` built from a dual arc.
///
/// With `X = {x : x_0 = x_1 = x_2 = 0}` and arc points `a_1..a_{r+1}` of the
/// quotient plane, `H_i = a_i^⊥` and `U_i = a_i^⊥ ∩ a_{r+1}^⊥` (the lines
/// `a_i^⊥` form a dual arc under the standard bilinear form).
pub fn alpha_construction(space: &ProjectiveSpace, r: u64) -> Result<CoverWitness> {
    let (q, k) = (space.q(), space.k());
    if k < 3 || r > construction_max_r(q).max(2) {
        return Err(Error::OutOfRange(format!("no dual-arc construction for q = {q}, k = {k}, r = {r}")));
    }
    let arc = arc(space.field());
    let lift = |a: &[Elem; 3]| -> Vec<Elem> {
        let mut v = vec![0; k];
        v[..3].copy_from_slice(a);
        v
    };
    let last = lift(&arc[r as usize]);
    let mut outer = Vec::with_capacity(r as usize);
    let mut inner = Vec::with_capacity(r as usize);
    for a in &arc[..r as usize] {
        let row = lift(a);
        outer.push(space.subspace_from_dual(&[&row])?);
        inner.push(space.subspace_from_dual(&[&row, &last])?);
    }
    let w = CoverWitness::new(space, 1, outer, inner)?;
    assert_eq!(w.cardinality as u64, alpha_formula(q, k, r), "dual-arc construction size");
    Ok(w)
}

/// A witness of size exactly α_q(k, r) for an `r` with a certified value:
/// the dual-arc construction inside its range, brute force elsewhere.
pub fn optimal_witness(space: &ProjectiveSpace, r: u64, guard: BruteGuard) -> Result<CoverWitness> {
    let (q, k) = (space.q(), space.k());
    if r == 0 {
        return Ok(CoverWitness::empty(space, 1));
    }
    if k >= 3 && alpha_closed(q, k, r).is_some() {
        return alpha_construction(space, r);
    }
    if k == 2 {
        // hyperplanes are points and U_i = 0
        if r > num_points(q, 2) {
            return Err(Error::OutOfRange(format!("r = {r} exceeds the number of points")));
        }
        let zero = space.subspace_from_dual(&[[1, 0], [0, 1]])?;
        let outer: Vec<SubspaceRecord> = space.hyperplanes()[..r as usize].to_vec();
        let inner = vec![zero; r as usize];
        return CoverWitness::new(space, 1, outer, inner);
    }
    Ok(alpha_brute(space, r, 1, guard)?.1)
}

/// The code on the complement of the witness union.
pub fn complement_code(space: &Arc<ProjectiveSpace>, witness: &CoverWitness) -> Result<LinearCode> {
    if witness.l != 1 || witness.k != space.k() || witness.q != space.q() {
        return Err(Error::OutOfRange("witness does not match the space or is not a hyperplane witness".into()));
    }
    let pts: Vec<usize> = (0..space.num_points()).filter(|&p| !witness.union_points.contains(p)).collect();
    if space.span_dim(pts.iter().copied()) < space.k() {
        return Err(Error::DegenerateComplement);
    }
    let code = LinearCode::from_points(space.clone(), &pts)?;
    debug_assert!(witness.outer.iter().all(|h| !code.is_minimal_hyperplane(h).minimal));
    Ok(code)
}

/// Least length of a projective minimal `[n,k]_q` code.
pub fn minimal_code_length_bound(q: u32, k: usize) -> u64 {
    num_points(q, k) - (q as u64).pow(k as u32 - 2) + 1
}

/// Certified values of α for one space, with their provenance.
pub struct AlphaTable {
    space: Arc<ProjectiveSpace>,
    guard: BruteGuard,
    cache: HashMap<(u64, usize), Option<(u64, Provenance)>>,
}

impl AlphaTable {
    pub fn new(space: Arc<ProjectiveSpace>, guard: BruteGuard) -> Self {
        AlphaTable { space, guard, cache: HashMap::new() }
    }

    pub fn for_params(q: u32, k: usize, guard: BruteGuard) -> Result<Self> {
        let f = FieldSpec::new(q)?;
        Ok(Self::new(ProjectiveSpace::new(&f, k)?, guard))
    }

    pub fn space(&self) -> &Arc<ProjectiveSpace> {
        &self.space
    }

    pub fn guard(&self) -> BruteGuard {
        self.guard
    }

    /// Exact α^l(k, r) from a closed form (l = 1 only) or brute force within the guard.
    pub fn certified(&mut self, r: u64, l: usize) -> Option<(u64, Provenance)> {
        if let Some(v) = self.cache.get(&(r, l)) {
            return *v;
        }
        let (q, k) = (self.space.q(), self.space.k());
        let v = match (l, alpha_closed(q, k, r)) {
            (1, Some(a)) => Some((a, Provenance::Closed)),
            _ if r == 0 => Some((0, Provenance::Closed)),
            _ => alpha_brute(&self.space, r, l, self.guard).ok().map(|(a, _)| (a, Provenance::Brute)),
        };
        self.cache.insert((r, l), v);
        v
    }
}

/// An exact value of `m_q(n,k)` from a nonempty α window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindowValue {
    pub value: u64,
    pub r: u64,
}

/// Least `r` with `n > total - α(r)`, scanning certified values in order.
fn first_exceeding(table: &mut AlphaTable, l: usize, total: u64, n: u64) -> Option<u64> {
    let limit = gaussian_binomial(table.space.k() as u32, l as u32, table.space.q()).ok()?;
    for r in 1..=limit {
        let (a, _) = table.certified(r, l)?;
        if n + a > total {
            return Some(r);
        }
    }
    None
}

fn check_length(q: u32, k: usize, n: u64) -> Result<()> {
    let total = num_points(q, k);
    if k < 1 || n < k as u64 || n > total {
        return Err(Error::OutOfRange(format!("need k <= n <= [k;1]_q = {total}, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// Lower bound on `M(C)` over projective `[n,k]_q` codes; 0 when nothing is certified.
pub fn bound_m(table: &mut AlphaTable, n: u64) -> Result<u64> {
    let (q, k) = (table.space.q(), table.space.k());
    check_length(q, k, n)?;
    let total = num_points(q, k);
    Ok(first_exceeding(table, 1, total, n).map_or(0, |r| total - r + 1))
}

/// `m_q(n,k)` when `n` falls in a window `total - α(r) < n <= total - α(r-1)`
/// with both values certified.
pub fn exact_m(table: &mut AlphaTable, n: u64) -> Result<Option<WindowValue>> {
    let (q, k) = (table.space.q(), table.space.k());
    check_length(q, k, n)?;
    if k < 2 {
        return Ok(None);
    }
    let total = num_points(q, k);
    let Some(r) = first_exceeding(table, 1, total, n) else {
        return Ok(None);
    };
    let (prev, _) = table.certified(r - 1, 1).expect("scanned in order");
    Ok((n + prev <= total).then_some(WindowValue { value: total - r + 1, r }))
}

/// Lower bound on `M^l(C)` with the hypothesis `n > [k;l]_q - α^l(k,r)`.
pub fn bound_ml(table: &mut AlphaTable, l: usize, n: u64) -> Result<u64> {
    bound_ml_against(table, l, n, false)
}

/// Lower bound on `M^l(C)` with the hypothesis `n > [k;1]_q - α^l(k,r)`.
///
/// A code with `r` non-support-minimal `l`-subcodes misses `∪ W_i\U_i`, so
/// its length is at most the number of points minus α^l; this is at least
/// as strong as [`bound_ml`].
pub fn bound_ml_points(table: &mut AlphaTable, l: usize, n: u64) -> Result<u64> {
    bound_ml_against(table, l, n, true)
}

fn bound_ml_against(table: &mut AlphaTable, l: usize, n: u64, by_points: bool) -> Result<u64> {
    let (q, k) = (table.space.q(), table.space.k());
    check_length(q, k, n)?;
    if l == 0 || l >= k {
        return Err(Error::OutOfRange(format!("need 1 <= l < k, got l = {l}")));
    }
    let subspaces = gaussian_binomial(k as u32, l as u32, q)?;
    if table.certified(1, l).is_none() {
        return Err(Error::TooLarge(format!("alpha^{l} not certifiable within the guard")));
    }
    let total = if by_points { num_points(q, k) } else { subspaces };
    Ok(first_exceeding(table, l, total, n).map_or(0, |r| subspaces - r + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_new;

    fn space(q: u32, k: usize) -> Arc<ProjectiveSpace> {
        ProjectiveSpace::new(&field_new(q).unwrap(), k).unwrap()
    }

    fn table(q: u32, k: usize) -> AlphaTable {
        AlphaTable::new(space(q, k), BruteGuard::default())
    }

    #[test]
    fn closed_forms() {
        assert_eq!(alpha_closed(2, 3, 1), Some(2));
        assert_eq!(alpha_closed(2, 3, 2), Some(3));
        assert_eq!(alpha_closed(2, 4, 3), Some(6));
        assert_eq!(alpha_closed(3, 3, 3), Some(6));
        assert_eq!(alpha_closed(3, 3, 4), None);
        assert_eq!(alpha_closed(4, 5, 0), Some(0));
        assert_eq!(alpha_closed(5, 2, 4), Some(4));
        assert_eq!(alpha_closed(2, 4, 4), None);
    }

    #[test]
    fn brute_small_cases() {
        let s = space(2, 3);
        let (a, w) = alpha_brute(&s, 2, 1, BruteGuard::default()).unwrap();
        assert_eq!(a, 3);
        assert_eq!(w.cardinality, 3);
        assert_eq!(w.r(), 2);
        assert_ne!(w.outer[0], w.outer[1]);
        let (a, w) = alpha_brute(&s, 0, 1, BruteGuard::default()).unwrap();
        assert_eq!((a, w.r()), (0, 0));
        let (a, _) = alpha_brute(&space(2, 4), 2, 1, BruteGuard::default()).unwrap();
        assert_eq!(a, 6);
        // k = 2: hyperplanes are points, U_i = 0
        let (a, _) = alpha_brute(&space(3, 2), 3, 1, BruteGuard::default()).unwrap();
        assert_eq!(a, 3);
    }

    #[test]
    fn brute_guards_and_ranges() {
        let s = space(2, 6);
        assert!(matches!(alpha_brute(&s, 1, 1, BruteGuard::default()), Err(Error::TooLarge(_))));
        let s = space(2, 3);
        assert!(matches!(alpha_brute(&s, 5, 1, BruteGuard::default()), Err(Error::TooLarge(_))));
        assert!(matches!(alpha_brute(&s, 8, 1, BruteGuard::default()), Err(Error::OutOfRange(_))));
        assert!(matches!(alpha_brute(&s, 1, 3, BruteGuard::default()), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn arcs() {
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            let f = field_new(q).unwrap();
            let a = arc(&f);
            assert_eq!(a.len() as u32, if q.is_multiple_of(2) { q + 2 } else { q + 1 });
            assert!(is_arc(&f, &a));
        }
        let f3 = field_new(3).unwrap();
        assert!(!is_arc(&f3, &[[1, 0, 0], [0, 1, 0], [1, 1, 0]]));
    }

    #[test]
    fn constructions_have_formula_size() {
        for (q, k, r, size) in [(2, 3, 2, 3), (2, 4, 3, 6), (3, 3, 3, 6)] {
            let w = alpha_construction(&space(q, k), r).unwrap();
            assert_eq!(w.cardinality, size);
        }
        assert!(alpha_construction(&space(3, 3), 4).is_err());
        assert!(alpha_construction(&space(3, 2), 1).is_err());
        assert_eq!(alpha_construction(&space(5, 3), 0).unwrap().cardinality, 0);
    }

    #[test]
    fn construction_matches_brute_for_q3() {
        let s = space(3, 3);
        let (a, _) = alpha_brute(&s, 3, 1, BruteGuard::default()).unwrap();
        assert_eq!(a, alpha_construction(&s, 3).unwrap().cardinality as u64);
    }

    #[test]
    fn complement_codes() {
        let s = space(2, 3);
        let (_, w) = alpha_brute(&s, 1, 1, BruteGuard::default()).unwrap();
        let c = complement_code(&s, &w).unwrap();
        assert_eq!((c.n(), c.count_minimal()), (5, 6));

        let s4 = space(2, 4);
        let w = alpha_construction(&s4, 1).unwrap();
        let c = complement_code(&s4, &w).unwrap();
        assert_eq!((c.n(), c.count_minimal()), (11, 14));

        let c = complement_code(&s4, &CoverWitness::empty(&s4, 1)).unwrap();
        assert_eq!((c.n(), c.count_minimal()), (15, 15));
    }

    #[test]
    fn minimal_code_lengths() {
        assert_eq!(minimal_code_length_bound(2, 3), 6);
        assert_eq!(minimal_code_length_bound(2, 4), 12);
        assert_eq!(minimal_code_length_bound(3, 3), 11);
    }

    #[test]
    fn bounds_and_windows() {
        let mut t4 = table(2, 4);
        assert_eq!(bound_m(&mut t4, 12).unwrap(), 15);
        assert_eq!(bound_m(&mut t4, 10).unwrap(), 14);
        for n in 12..=15 {
            assert_eq!(exact_m(&mut t4, n).unwrap().map(|w| w.value), Some(15));
        }
        let mut t3 = table(2, 3);
        assert_eq!(bound_m(&mut t3, 6).unwrap(), 7);
        assert_eq!(exact_m(&mut t3, 6).unwrap().map(|w| w.value), Some(7));
        assert_eq!(exact_m(&mut t3, 5).unwrap(), Some(WindowValue { value: 6, r: 2 }));
        assert!(bound_m(&mut t3, 8).is_err());
        assert!(bound_m(&mut t3, 2).is_err());
    }

    #[test]
    fn subcode_bounds() {
        let mut t = table(2, 3);
        assert_eq!(t.certified(1, 2), Some((1, Provenance::Brute)));
        assert_eq!(bound_ml(&mut t, 2, 7).unwrap(), 7);
        assert_eq!(bound_ml(&mut t, 1, 6).unwrap(), bound_m(&mut t, 6).unwrap());
        let mut t4 = table(2, 4);
        assert_eq!(bound_ml_points(&mut t4, 2, 15).unwrap(), 35);
        let mut big = table(2, 6);
        assert!(matches!(bound_ml(&mut big, 2, 63), Err(Error::TooLarge(_))));
    }
}
