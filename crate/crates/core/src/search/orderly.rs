//! Canonical augmentation (orderly generation) of point sets.
//!
//! Children of a canonical set `L` are `L ∪ {x}` with `x > max L`, kept only
//! when canonical themselves. Dropping the largest element of a canonical
//! set leaves a canonical set, so every class is produced exactly once.
//! The tree is cut at a fixed depth and the subtrees below it are the units
//! of parallel work and of checkpointing.

use std::fs;
use std::path::Path;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canon::Canonizer;
use super::eval::{Eval, Evaluator};
use super::{Extremum, Mode, SearchTask};
use crate::error::{Error, Result};

/// Class counts per length.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumStats {
    /// `classes[i]` counts the visited classes of size `n_min + i`.
    pub classes: Vec<u64>,
    /// Canonicity tests performed.
    pub tests: u64,
}

impl EnumStats {
    fn new(len: usize) -> Self {
        EnumStats { classes: vec![0; len], tests: 0 }
    }

    fn merge(&mut self, other: &EnumStats) {
        for (a, b) in self.classes.iter_mut().zip(&other.classes) {
            *a += b;
        }
        self.tests += other.tests;
    }
}

struct Walker<'a> {
    ev: &'a Evaluator,
    canon: Canonizer<'a>,
    task: &'a SearchTask,
}

impl Walker<'_> {
    fn viable(&self, set: &[usize]) -> bool {
        let total = self.ev.space().num_points();
        let k = self.task.k;
        let s = set.len();
        if s >= self.task.n_max {
            return s == self.task.n_max;
        }
        // enough larger indices left, and room to reach full rank
        let next = set.last().map_or(0, |&m| m + 1);
        let room = total - next;
        let need = self.task.n_min.saturating_sub(s);
        room >= need && self.ev.span_dim(set) + (self.task.n_max - s).min(room) >= k
    }

    fn visit(&self, set: &[usize], stats: &mut EnumStats, f: &mut impl FnMut(&[usize], Eval)) {
        let n = set.len();
        if n < self.task.n_min || n > self.task.n_max || self.ev.span_dim(set) < self.task.k {
            return;
        }
        let e = self.ev.evaluate(&self.ev.mask(set));
        if self.task.restrict_min_dist_2 && e.max_section + 2 > n {
            return;
        }
        stats.classes[n - self.task.n_min] += 1;
        f(set, e);
    }

    fn children(&self, set: &[usize], stats: &mut EnumStats) -> Vec<Vec<usize>> {
        let total = self.ev.space().num_points();
        let start = set.last().map_or(0, |&m| m + 1);
        let mut out = Vec::new();
        for x in start..total {
            let mut child = set.to_vec();
            child.push(x);
            stats.tests += 1;
            if self.viable(&child) && self.canon.is_canonical(&child) {
                out.push(child);
            }
        }
        out
    }

    fn walk(&self, set: &[usize], stats: &mut EnumStats, f: &mut impl FnMut(&[usize], Eval)) {
        self.visit(set, stats, f);
        if set.len() >= self.task.n_max {
            return;
        }
        for child in self.children(set, stats) {
            self.walk(&child, stats, f);
        }
    }

    /// Canonical sets of size `depth`, in generation order.
    fn roots(&self, depth: usize, stats: &mut EnumStats) -> Vec<Vec<usize>> {
        let mut level = vec![Vec::new()];
        for _ in 0..depth {
            level = level.iter().flat_map(|s| self.children(s, stats)).collect();
        }
        level
    }
}

fn check_task(ev: &Evaluator, task: &SearchTask) -> Result<()> {
    let space = ev.space();
    if task.q != space.q() || task.k != space.k() {
        return Err(Error::OutOfRange("task does not match the evaluator's space".into()));
    }
    let total = space.num_points();
    if task.n_min < task.k || task.n_min > task.n_max || task.n_max > total {
        return Err(Error::OutOfRange(format!(
            "need k <= n_min <= n_max <= {total}, got k = {}, n = {}..={}",
            task.k, task.n_min, task.n_max
        )));
    }
    Ok(())
}

fn partition_depth(task: &SearchTask) -> usize {
    task.partition_depth.min(task.n_min)
}

/// Visits one canonical representative of every class of spanning point
/// sets with size in `n_min..=n_max` (optionally only minimum distance >= 2).
///
/// The visitor may be called from several threads; the visiting order is
/// not specified.
pub fn enumerate_projective_codes(ev: &Evaluator, task: &SearchTask, visitor: impl Fn(&[usize], Eval) + Sync) -> Result<EnumStats> {
    check_task(ev, task)?;
    let walker = Walker { ev, canon: Canonizer::new(ev.space())?, task };
    let mut stats = EnumStats::new(task.n_max - task.n_min + 1);
    let roots = walker.roots(partition_depth(task), &mut stats);
    let parts: Vec<EnumStats> = roots
        .into_par_iter()
        .map(|root| {
            let mut st = EnumStats::new(task.n_max - task.n_min + 1);
            walker.walk(&root, &mut st, &mut |s, e| visitor(s, e));
            st
        })
        .collect();
    for p in &parts {
        stats.merge(p);
    }
    Ok(stats)
}

/// Result for one length within one subtree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthResult {
    pub n: usize,
    pub classes: u64,
    pub best: Option<Extremum>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    /// Membership bit-vector of the canonical root, as a 0/1 string.
    pub root: String,
    pub done: bool,
    pub results: Vec<LengthResult>,
}

/// Resumable state of a partitioned extremal search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub q: u32,
    pub k: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub mode: Mode,
    pub restrict_min_dist_2: bool,
    pub depth: usize,
    pub roots: Vec<RootEntry>,
}

fn bits_string(set: &[usize], total: usize) -> String {
    let mut s = vec![b'0'; total];
    for &i in set {
        s[i] = b'1';
    }
    String::from_utf8(s).expect("ascii")
}

fn parse_bits(s: &str) -> Result<Vec<usize>> {
    s.bytes()
        .enumerate()
        .filter_map(|(i, b)| match b {
            b'1' => Some(Ok(i)),
            b'0' => None,
            _ => Some(Err(Error::Parse { line: 0, msg: format!("bad bit-vector character {:?}", b as char) })),
        })
        .collect()
}

impl Checkpoint {
    fn matches(&self, task: &SearchTask, depth: usize) -> bool {
        (self.q, self.k, self.n_min, self.n_max, self.mode, self.restrict_min_dist_2, self.depth)
            == (task.q, task.k, task.n_min, task.n_max, task.mode, task.restrict_min_dist_2, depth)
    }

    pub fn load(path: &Path) -> Result<Checkpoint> {
        let text = fs::read_to_string(path).map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", path.display()) })?;
        serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string_pretty(self).expect("serializable") + "\n";
        fs::write(&tmp, text).and_then(|_| fs::rename(&tmp, path)).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("cannot write checkpoint {}: {e}", path.display()),
        })
    }
}

/// Extremal `M(C)` per length over all classes, by canonical augmentation.
///
/// With a checkpoint path, finished subtrees are recorded after each one
/// completes and skipped when the same task is run again.
pub fn canon_extremum(ev: &Evaluator, task: &SearchTask, checkpoint: Option<&Path>) -> Result<Vec<LengthResult>> {
    check_task(ev, task)?;
    let walker = Walker { ev, canon: Canonizer::new(ev.space())?, task };
    let depth = partition_depth(task);
    let total = ev.space().num_points();
    let lengths = task.n_max - task.n_min + 1;

    let resumed = match checkpoint {
        Some(p) if p.exists() => {
            let c = Checkpoint::load(p)?;
            if !c.matches(task, depth) {
                return Err(Error::OutOfRange(format!("checkpoint {} belongs to a different task", p.display())));
            }
            Some(c)
        }
        _ => None,
    };
    let state = match resumed {
        Some(c) => c,
        None => {
            let roots = walker.roots(depth, &mut EnumStats::new(lengths));
            Checkpoint {
                q: task.q,
                k: task.k,
                n_min: task.n_min,
                n_max: task.n_max,
                mode: task.mode,
                restrict_min_dist_2: task.restrict_min_dist_2,
                depth,
                roots: roots
                    .iter()
                    .map(|r| RootEntry { root: bits_string(r, total), done: false, results: Vec::new() })
                    .collect(),
            }
        }
    };
    let pending: Vec<(usize, Vec<usize>)> = state
        .roots
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.done)
        .map(|(i, r)| parse_bits(&r.root).map(|s| (i, s)))
        .collect::<Result<_>>()?;
    let state = Mutex::new(state);
    if let Some(p) = checkpoint {
        state.lock().expect("unpoisoned").save(p)?;
    }

    pending.into_par_iter().try_for_each(|(i, root)| -> Result<()> {
        let mut results: Vec<LengthResult> =
            (task.n_min..=task.n_max).map(|n| LengthResult { n, classes: 0, best: None }).collect();
        let mut st = EnumStats::new(lengths);
        walker.walk(&root, &mut st, &mut |s, e| {
            let slot = &mut results[s.len() - task.n_min];
            slot.classes += 1;
            let cand = Extremum { value: e.minimal, points: s.to_vec() };
            if slot.best.as_ref().is_none_or(|b| cand.better_than(b, task.mode)) {
                slot.best = Some(cand);
            }
        });
        let mut guard = state.lock().expect("unpoisoned");
        guard.roots[i].done = true;
        guard.roots[i].results = results;
        if let Some(p) = checkpoint {
            guard.save(p)?;
        }
        Ok(())
    })?;

    let state = state.into_inner().expect("unpoisoned");
    let mut out: Vec<LengthResult> =
        (task.n_min..=task.n_max).map(|n| LengthResult { n, classes: 0, best: None }).collect();
    for r in &state.roots {
        for (slot, res) in out.iter_mut().zip(&r.results) {
            slot.classes += res.classes;
            if let Some(c) = &res.best {
                if slot.best.as_ref().is_none_or(|b| c.better_than(b, task.mode)) {
                    slot.best = Some(c.clone());
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ProjectiveSpace;
    use crate::gf::field_new;
    use crate::search::subset::subset_classes;
    use std::sync::atomic::{AtomicUsize, Ordering};

    fn ev(q: u32, k: usize) -> Evaluator {
        Evaluator::new(ProjectiveSpace::new(&field_new(q).unwrap(), k).unwrap()).unwrap()
    }

    fn task(q: u32, k: usize, n_min: usize, n_max: usize) -> SearchTask {
        SearchTask { q, k, n_min, n_max, ..SearchTask::default() }
    }

    #[test]
    fn fano_examples() {
        let e = ev(2, 3);
        for (n, classes) in [(7, 1), (6, 1), (5, 1), (4, 2), (3, 1)] {
            let count = AtomicUsize::new(0);
            let st = enumerate_projective_codes(&e, &task(2, 3, n, n), |_, _| {
                count.fetch_add(1, Ordering::Relaxed);
            })
            .unwrap();
            assert_eq!(count.into_inner(), classes, "n = {n}");
            assert_eq!(st.classes, vec![classes as u64]);
        }
    }

    #[test]
    fn counts_match_subset_partition() {
        for (q, k) in [(2, 3), (3, 3), (2, 4)] {
            let e = ev(q, k);
            let total = e.space().num_points();
            let n_max = total.min(9);
            let st = enumerate_projective_codes(&e, &task(q, k, k, n_max), |_, _| {}).unwrap();
            for n in k..=n_max {
                let brute = subset_classes(&e, n, false, u64::MAX).unwrap().len() as u64;
                assert_eq!(st.classes[n - k], brute, "q={q} k={k} n={n}");
            }
        }
    }

    #[test]
    fn restricted_counts_match() {
        let e = ev(2, 4);
        let t = SearchTask { restrict_min_dist_2: true, ..task(2, 4, 5, 9) };
        let st = enumerate_projective_codes(&e, &t, |s, ev| assert!(ev.max_section + 2 <= s.len())).unwrap();
        for n in 5..=9 {
            assert_eq!(st.classes[n - 5], subset_classes(&e, n, true, u64::MAX).unwrap().len() as u64);
        }
    }

    #[test]
    fn depth_does_not_change_results() {
        let e = ev(2, 4);
        let a = canon_extremum(&e, &SearchTask { partition_depth: 1, ..task(2, 4, 6, 9) }, None).unwrap();
        let b = canon_extremum(&e, &SearchTask { partition_depth: 5, ..task(2, 4, 6, 9) }, None).unwrap();
        assert_eq!(a, b);
        let values: Vec<usize> = a.iter().map(|r| r.best.as_ref().unwrap().value).collect();
        assert_eq!(values, vec![6, 8, 8, 12]);
    }

    #[test]
    fn checkpoint_resume() {
        let dir = std::env::temp_dir().join(format!("mincodes-ckpt-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.json");
        let _ = fs::remove_file(&path);
        let e = ev(2, 4);
        let t = task(2, 4, 7, 8);
        let first = canon_extremum(&e, &t, Some(&path)).unwrap();
        let saved = Checkpoint::load(&path).unwrap();
        assert!(saved.roots.iter().all(|r| r.done));
        // a finished checkpoint replays without any work
        assert_eq!(canon_extremum(&e, &t, Some(&path)).unwrap(), first);
        // forget one subtree and redo it
        let mut partial = saved.clone();
        partial.roots[0].done = false;
        partial.roots[0].results.clear();
        partial.save(&path).unwrap();
        assert_eq!(canon_extremum(&e, &t, Some(&path)).unwrap(), first);
        assert!(canon_extremum(&e, &task(2, 4, 6, 8), Some(&path)).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }
}
