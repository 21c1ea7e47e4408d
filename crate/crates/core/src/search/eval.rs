//! Fast `M(C)` and minimum distance for point sets given as bit masks.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::ProjectiveSpace;

/// Largest ambient point count the mask-based evaluator accepts.
pub const MAX_EVAL_POINTS: usize = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Eval {
    /// `M(C)`.
    pub minimal: usize,
    /// `max_H |P ∩ H|`, so `d = n - max_section`.
    pub max_section: usize,
}

pub struct Evaluator {
    space: Arc<ProjectiveSpace>,
    words: usize,
    /// Hyperplane incidence masks, `words` per hyperplane.
    hyper: Vec<u64>,
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &x)| {
        let mut x = x;
        std::iter::from_fn(move || {
            (x != 0).then(|| {
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                w * 64 + b
            })
        })
    })
}

impl Evaluator {
    pub fn new(space: Arc<ProjectiveSpace>) -> Result<Self> {
        let n = space.num_points();
        if n > MAX_EVAL_POINTS {
            return Err(Error::GuardExceeded(format!("{n} points exceeds the search limit {MAX_EVAL_POINTS}")));
        }
        let words = n.div_ceil(64);
        let mut hyper = vec![0u64; words * n];
        for (h, rec) in space.hyperplanes().iter().enumerate() {
            for p in rec.incident.ones() {
                hyper[h * words + p / 64] |= 1 << (p % 64);
            }
        }
        Ok(Evaluator { space, words, hyper })
    }

    pub fn space(&self) -> &Arc<ProjectiveSpace> {
        &self.space
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn mask(&self, points: &[usize]) -> Vec<u64> {
        let mut m = vec![0u64; self.words];
        for &p in points {
            m[p / 64] |= 1 << (p % 64);
        }
        m
    }

    pub fn span_dim(&self, points: &[usize]) -> usize {
        self.space.span_dim(points.iter().copied())
    }

    pub fn evaluate(&self, mask: &[u64]) -> Eval {
        let k = self.space.k();
        let mut minimal = 0;
        let mut max_section = 0;
        let mut sec = vec![0u64; self.words];
        for h in self.hyper.chunks_exact(self.words) {
            let mut cnt = 0;
            for ((s, &a), &b) in sec.iter_mut().zip(mask).zip(h) {
                *s = a & b;
                cnt += s.count_ones() as usize;
            }
            max_section = max_section.max(cnt);
            if cnt + 1 >= k && self.space.span_dim_capped(ones(&sec), k - 1) == k - 1 {
                minimal += 1;
            }
        }
        Eval { minimal, max_section }
    }
}
