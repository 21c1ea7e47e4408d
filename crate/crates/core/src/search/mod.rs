//! Exhaustive computation of `m_q(n,k)` and `M_q(n,k)`.
//!
//! Projective `[n,k]_q` codes up to equivalence are the `n`-subsets of
//! PG(GF(q)^k) that span, up to GL(k,q). Two engines enumerate them: plain
//! iteration over all subsets, and canonical augmentation which visits one
//! set per class.
//!
//! A code with a weight-1 codeword has a column `x` outside the span of the
//! others. Deleting it leaves a projective `[n-1, k-1]` code, and exactly
//! one more hyperplane (the span of the others) is minimal in the original.
//! So the extremum over such codes is `1 + m_q(n-1, k-1)` (resp. `M`), and
//! the engines only need to look at codes of minimum distance at least 2.

pub mod canon;
pub mod eval;
pub mod orderly;
pub mod subset;
pub mod table;

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::alpha::{self, AlphaTable, BruteGuard};
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::geometry::{num_points, ProjectiveSpace};
use crate::gf::FieldSpec;
use crate::linalg::Matrix;

pub use canon::{canonical_form, Canonizer};
pub use eval::{Eval, Evaluator};
pub use orderly::{canon_extremum, enumerate_projective_codes, Checkpoint, EnumStats};
pub use subset::{subset_classes, subset_extremum};
pub use table::{m_table, Table, TableCell};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Minimize `M(C)`, giving `m_q(n,k)`.
    #[default]
    Min,
    /// Maximize `M(C)`, giving `M_q(n,k)`.
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    BruteSubset,
    CanonicalAugmentation,
    Prop2Window,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::BruteSubset => "brute-subset",
            Method::CanonicalAugmentation => "canonical-augmentation",
            Method::Prop2Window => "prop2-window",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Subsets when `C([k;1]_q, n)` is within the limit, canonical augmentation otherwise.
    #[default]
    Auto,
    Subset,
    Canon,
}

/// A value of `M(C)` with the point set achieving it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremum {
    pub value: usize,
    pub points: Vec<usize>,
}

impl Extremum {
    /// Strictly better in `mode`, ties going to the lexicographically smaller point list.
    pub fn better_than(&self, other: &Extremum, mode: Mode) -> bool {
        let a = match mode {
            Mode::Min => self.value.cmp(&other.value),
            Mode::Max => other.value.cmp(&self.value),
        };
        a.then_with(|| self.points.cmp(&other.points)).is_lt()
    }
}

/// An enumeration job over one ambient space and a range of lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchTask {
    pub q: u32,
    pub k: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub mode: Mode,
    pub restrict_min_dist_2: bool,
    /// Size of the sets at which the augmentation tree is split into jobs.
    pub partition_depth: usize,
}

impl Default for SearchTask {
    fn default() -> Self {
        SearchTask { q: 2, k: 3, n_min: 3, n_max: 7, mode: Mode::Min, restrict_min_dist_2: false, partition_depth: 4 }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub engine: Engine,
    pub restrict_min_dist_2: bool,
    /// Most subsets the brute-subset engine may iterate.
    pub subset_limit: u64,
    /// Largest ambient space (in points) for canonical augmentation.
    pub canon_max_points: usize,
    pub partition_depth: usize,
    pub checkpoint: Option<PathBuf>,
    /// Worker threads; `None` uses rayon's default.
    pub workers: Option<usize>,
    /// Limits for α values used by table windows.
    pub alpha_guard: BruteGuard,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            engine: Engine::Auto,
            restrict_min_dist_2: true,
            subset_limit: 100_000_000,
            canon_max_points: 40,
            partition_depth: 4,
            checkpoint: None,
            workers: None,
            alpha_guard: BruteGuard::default(),
        }
    }
}

impl SearchConfig {
    /// Runs `f` on a pool with the configured number of workers.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.workers {
            None => Ok(f()),
            Some(w) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(w)
                    .build()
                    .map_err(|e| Error::OutOfRange(format!("cannot start {w} workers: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
}

/// One value of `m_q(n,k)` or `M_q(n,k)` with a generator matrix achieving it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    pub value: usize,
    pub method: Method,
    /// The certificate has a weight-1 codeword and came from an `[n-1, k-1]` code.
    pub weight_one_reduction: bool,
    /// Generator matrix rows of an extremal code.
    pub certificate: Vec<Vec<u8>>,
}

impl TableEntry {
    pub fn certificate_matrix(&self) -> Result<Matrix> {
        let f = FieldSpec::new(self.q)?;
        let rows: Vec<&[u8]> = self.certificate.iter().map(|r| r.as_slice()).collect();
        if rows.len() != self.k {
            return Err(Error::DimensionMismatch { expected: self.k, got: rows.len() });
        }
        Matrix::from_rows(&f, self.n, &rows)
    }

    /// Re-analyzes the certificate; returns the recomputed `M(C)` on success.
    pub fn verify(&self) -> Result<usize> {
        let code = LinearCode::from_matrix(self.certificate_matrix()?)?;
        if code.n() != self.n || code.k() != self.k || !code.is_projective() {
            return Err(Error::OutOfRange(format!(
                "certificate is not a projective [{}, {}] code",
                self.n, self.k
            )));
        }
        let m = code.count_minimal();
        if m != self.value {
            return Err(Error::OutOfRange(format!("certificate has M(C) = {m}, entry says {}", self.value)));
        }
        Ok(m)
    }
}

fn generator_of(space: &ProjectiveSpace, points: &[usize]) -> Vec<Vec<u8>> {
    (0..space.k()).map(|r| points.iter().map(|&p| space.point(p)[r]).collect()).collect()
}

/// `[[1, 0], [0, G]]`: the code `G` plus a new coordinate carrying a weight-1 word.
fn lift(cert: &[Vec<u8>], n: usize) -> Vec<Vec<u8>> {
    let mut rows = vec![{
        let mut r = vec![0; n];
        r[0] = 1;
        r
    }];
    rows.extend(cert.iter().map(|r| std::iter::once(0).chain(r.iter().copied()).collect()));
    rows
}

fn space_for(q: u32, k: usize) -> Result<Arc<ProjectiveSpace>> {
    ProjectiveSpace::new(&FieldSpec::new(q)?, k)
}

fn check_params(q: u32, k: usize, n: usize) -> Result<()> {
    let total = num_points(q, k.max(1));
    if k == 0 || n < k || n as u64 > total {
        return Err(Error::OutOfRange(format!("need 1 <= k <= n <= [k;1]_q = {total}, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// Runs one engine for a single length.
fn engine_extremum(q: u32, k: usize, n: usize, mode: Mode, restrict: bool, cfg: &SearchConfig) -> Result<Option<(Extremum, Method)>> {
    let space = space_for(q, k)?;
    let ev = Evaluator::new(space.clone())?;
    let subsets = subset::binomial(space.num_points() as u64, n as u64);
    let use_subset = match cfg.engine {
        Engine::Subset => true,
        Engine::Canon => false,
        Engine::Auto => subsets <= cfg.subset_limit,
    };
    if use_subset {
        let e = subset_extremum(&ev, n, mode, restrict, cfg.subset_limit)?;
        return Ok(e.map(|e| (e, Method::BruteSubset)));
    }
    if space.num_points() > cfg.canon_max_points {
        return Err(Error::GuardExceeded(format!(
            "C({}, {n}) = {subsets} subsets and {} points exceed both engine limits",
            space.num_points(),
            space.num_points()
        )));
    }
    let task = SearchTask { q, k, n_min: n, n_max: n, mode, restrict_min_dist_2: restrict, partition_depth: cfg.partition_depth };
    let res = canon_extremum(&ev, &task, cfg.checkpoint.as_deref())?;
    Ok(res.into_iter().next().and_then(|r| r.best).map(|e| (e, Method::CanonicalAugmentation)))
}

/// Searched value, memoized on `(k, n)` for the weight-1 recursion.
pub(crate) fn searched_value(
    q: u32,
    k: usize,
    n: usize,
    mode: Mode,
    cfg: &SearchConfig,
    memo: &mut HashMap<(usize, usize), TableEntry>,
) -> Result<TableEntry> {
    check_params(q, k, n)?;
    if let Some(e) = memo.get(&(k, n)) {
        return Ok(e.clone());
    }
    let space = space_for(q, k)?;
    // with k = 1 the only code is [1,1], which has a weight-1 word
    let restrict = cfg.restrict_min_dist_2 && k >= 2;
    let direct = engine_extremum(q, k, n, mode, restrict, cfg)?.map(|(e, method)| TableEntry {
        q,
        n,
        k,
        mode,
        value: e.value,
        method,
        weight_one_reduction: false,
        certificate: generator_of(&space, &e.points),
    });
    let reduced = if restrict && n >= 2 && check_params(q, k - 1, n - 1).is_ok() {
        let sub = searched_value(q, k - 1, n - 1, mode, cfg, memo)?;
        Some(TableEntry {
            q,
            n,
            k,
            mode,
            value: sub.value + 1,
            method: sub.method,
            weight_one_reduction: true,
            certificate: lift(&sub.certificate, n),
        })
    } else {
        None
    };
    let entry = match (direct, reduced) {
        (Some(d), Some(r)) => {
            let r_wins = match mode {
                Mode::Min => r.value < d.value,
                Mode::Max => r.value > d.value,
            };
            if r_wins {
                r
            } else {
                d
            }
        }
        (Some(d), None) => d,
        (None, Some(r)) => r,
        (None, None) => return Err(Error::OutOfRange(format!("no projective [{n}, {k}]_{q} code exists"))),
    };
    memo.insert((k, n), entry.clone());
    Ok(entry)
}

/// Exact `m_q(n,k)` with an extremal certificate.
pub fn m_value(q: u32, k: usize, n: usize, cfg: &SearchConfig) -> Result<TableEntry> {
    cfg.install(|| searched_value(q, k, n, Mode::Min, cfg, &mut HashMap::new()))?
}

/// Exact `M_q(n,k)` with an extremal certificate.
pub fn big_m_value(q: u32, k: usize, n: usize, cfg: &SearchConfig) -> Result<TableEntry> {
    cfg.install(|| searched_value(q, k, n, Mode::Max, cfg, &mut HashMap::new()))?
}

/// `m_q(n,k)` from an α window, with a certificate built from an optimal cover.
pub fn window_value(table: &mut AlphaTable, n: usize) -> Result<Option<TableEntry>> {
    let space = table.space().clone();
    let Some(w) = alpha::exact_m(table, n as u64)? else {
        return Ok(None);
    };
    let witness = alpha::optimal_witness(&space, w.r - 1, table.guard())?;
    let code = alpha::complement_code(&space, &witness)?;
    // deleting points keeps non-minimal hyperplanes non-minimal
    let mut pts: Vec<usize> = code.column_points().to_vec();
    let k = space.k();
    let mut i = pts.len();
    while pts.len() > n && i > 0 {
        i -= 1;
        let mut trial = pts.clone();
        trial.remove(i);
        if space.span_dim(trial.iter().copied()) == k {
            pts = trial;
        }
    }
    if pts.len() != n {
        return Err(Error::DegenerateComplement);
    }
    let entry = TableEntry {
        q: space.q(),
        n,
        k,
        mode: Mode::Min,
        value: w.value as usize,
        method: Method::Prop2Window,
        weight_one_reduction: false,
        certificate: generator_of(&space, &pts),
    };
    debug_assert!(entry.verify().is_ok());
    Ok(Some(entry))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(engine: Engine) -> SearchConfig {
        SearchConfig { engine, ..SearchConfig::default() }
    }

    #[test]
    fn spec_examples() {
        let c = cfg(Engine::Auto);
        assert_eq!(m_value(2, 3, 6, &c).unwrap().value, 7);
        assert_eq!(m_value(2, 4, 9, &c).unwrap().value, 12);
        let conic = big_m_value(3, 3, 4, &c).unwrap();
        assert_eq!(conic.value, 6);
        assert_eq!(big_m_value(2, 3, 4, &c).unwrap().value, 6);
        assert_eq!(big_m_value(2, 3, 7, &c).unwrap().value, 7);
    }

    #[test]
    fn engines_and_restriction_agree() {
        for k in 2..=4 {
            for n in k..=num_points(2, k) as usize {
                let plain = SearchConfig { restrict_min_dist_2: false, ..cfg(Engine::Subset) };
                let a = m_value(2, k, n, &plain).unwrap();
                let b = m_value(2, k, n, &cfg(Engine::Subset)).unwrap();
                let c = m_value(2, k, n, &cfg(Engine::Canon)).unwrap();
                assert_eq!((a.value, b.value), (c.value, c.value), "n={n} k={k}");
                for e in [&a, &b, &c] {
                    assert_eq!(e.verify().unwrap(), e.value);
                }
                let ma = big_m_value(2, k, n, &plain).unwrap();
                let mc = big_m_value(2, k, n, &cfg(Engine::Canon)).unwrap();
                assert_eq!(ma.value, mc.value);
            }
        }
    }

    #[test]
    fn reduction_certificates() {
        let e = m_value(2, 4, 5, &cfg(Engine::Auto)).unwrap();
        assert_eq!(e.value, 5);
        assert!(e.weight_one_reduction);
        assert_eq!(e.verify().unwrap(), 5);
        assert_eq!(e.certificate[0], vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn bad_parameters() {
        let c = SearchConfig::default();
        assert!(m_value(2, 3, 8, &c).is_err());
        assert!(m_value(2, 3, 2, &c).is_err());
        assert!(m_value(6, 3, 4, &c).is_err());
        let tight = SearchConfig { subset_limit: 10, ..cfg(Engine::Subset) };
        assert!(matches!(m_value(2, 4, 7, &tight), Err(Error::GuardExceeded(_))));
    }

    #[test]
    fn windows_carry_certificates() {
        let mut t = AlphaTable::for_params(2, 4, BruteGuard::default()).unwrap();
        for n in 9..=15 {
            let e = window_value(&mut t, n).unwrap().unwrap();
            assert_eq!(e.verify().unwrap(), e.value);
        }
        assert_eq!(window_value(&mut t, 9).unwrap().unwrap().value, 12);
        assert!(window_value(&mut t, 8).unwrap().is_none());
    }
}
