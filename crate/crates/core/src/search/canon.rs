//! Canonical representatives of point sets under GL(k, q).
//!
//! The canonical form of a set `S` is the image `g(S)` whose sorted index
//! list is lexicographically least. Points with larger first-nonzero
//! position have smaller indices, so the points of
//! `V_j = <e_{k-j}, ..., e_{k-1}>` are exactly the indices below `[j;1]_q`.
//! In a least image, each `V_j` that does not yet contain everything is
//! spanned by image points, so it suffices to search over ordered bases
//! `b_1, b_2, ...` with `g(b_i) = e_{k-i}` where each `<b_1..b_{j+1}>` is
//! spanned by `<b_1..b_j>` and one more point of `S`. The image points in
//! `V_{j+1} \ V_j` are then fixed by the choice of `b_1..b_{j+1}` and come
//! after every earlier image point, which gives prefix pruning.

use std::cmp::Ordering;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::geometry::{num_points, PointSet, ProjectiveSpace};
use crate::gf::{Elem, FieldSpec};

/// Largest dimension handled by the canonizer.
pub const MAX_CANON_K: usize = 8;

type Vector = [Elem; MAX_CANON_K];

#[derive(Clone, Copy)]
struct Row {
    pivot: usize,
    row: Vector,
    /// The row in coordinates with respect to the chosen basis `b`.
    coords: Vector,
}

struct Layer {
    pivot: usize,
    rho: Vector,
    /// `(μ, coordinates of x - μρ)` per member `x = μρ + d`.
    members: Vec<(Elem, Vector)>,
    ids: Vec<usize>,
}

enum Reference<'a> {
    /// Stop as soon as an image below the target shows up.
    Target(&'a [usize]),
    Best(Vec<usize>),
}

struct Search<'a> {
    f: &'a FieldSpec,
    q: usize,
    k: usize,
    /// `cum[j] = [j;1]_q`.
    cum: [usize; MAX_CANON_K + 1],
    pts: Vec<Vector>,
    reference: Reference<'a>,
    found_smaller: bool,
}

fn compare(prefix: &[usize], reference: &[usize], bound: usize) -> Ordering {
    for (a, b) in prefix.iter().zip(reference) {
        match a.cmp(b) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    // every later element of ours is >= bound
    match reference.get(prefix.len()) {
        Some(&r) if r < bound => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

impl Search<'_> {
    fn layers(&self, rows: &[Row], remaining: &[usize]) -> Vec<Layer> {
        let f = self.f;
        let mut layers: Vec<Layer> = Vec::new();
        for &x in remaining {
            let mut v = self.pts[x];
            let mut cd: Vector = [0; MAX_CANON_K];
            for r in rows {
                let c = v[r.pivot];
                if c != 0 {
                    let nc = f.neg(c);
                    for i in 0..self.k {
                        v[i] = f.add(v[i], f.mul(nc, r.row[i]));
                        cd[i] = f.add(cd[i], f.mul(c, r.coords[i]));
                    }
                }
            }
            let p = v.iter().position(|&e| e != 0).expect("remaining points lie outside the span");
            let mu = v[p];
            let s = f.inv_nz(mu);
            for e in v.iter_mut().take(self.k) {
                *e = f.mul(*e, s);
            }
            match layers.iter_mut().find(|l| l.rho == v) {
                Some(l) => {
                    l.members.push((mu, cd));
                    l.ids.push(x);
                }
                None => layers.push(Layer { pivot: p, rho: v, members: vec![(mu, cd)], ids: vec![x] }),
            }
        }
        // big layers first: they tend to give small images early
        layers.sort_by(|a, b| b.members.len().cmp(&a.members.len()).then(a.rho.cmp(&b.rho)));
        layers
    }

    fn leaf(&mut self, prefix: &[usize]) {
        match &mut self.reference {
            Reference::Target(t) => {
                if prefix < *t {
                    self.found_smaller = true;
                }
            }
            Reference::Best(b) => {
                if prefix < b.as_slice() {
                    *b = prefix.to_vec();
                }
            }
        }
    }

    fn descend(&mut self, rows: &mut Vec<Row>, remaining: &[usize], prefix: &mut Vec<usize>) {
        if remaining.is_empty() {
            self.leaf(prefix);
            return;
        }
        let f = self.f;
        let j = rows.len();
        let base = prefix.len();
        let bound = self.cum[j + 1];
        for layer in self.layers(rows, remaining) {
            let rest: Vec<usize> = remaining.iter().copied().filter(|x| !layer.ids.contains(x)).collect();
            let lambdas: Vec<Elem> = if j == 0 { vec![1] } else { f.nonzero().collect() };
            for &lambda in &lambdas {
                let linv = f.inv_nz(lambda);
                let mut alpha: Vector = [0; MAX_CANON_K];
                loop {
                    for &(mu, cd) in &layer.members {
                        let c = f.mul(mu, linv);
                        let cinv = f.inv_nz(c);
                        let mut idx = 0;
                        for i in (0..j).rev() {
                            let coord = f.sub(cd[i], f.mul(c, alpha[i]));
                            idx = idx * self.q + f.mul(coord, cinv) as usize;
                        }
                        prefix.push(self.cum[j] + idx);
                    }
                    prefix[base..].sort_unstable();
                    let ord = match &self.reference {
                        Reference::Target(t) => compare(prefix, t, bound),
                        Reference::Best(b) => compare(prefix, b, bound),
                    };
                    if ord == Ordering::Less && matches!(self.reference, Reference::Target(_)) {
                        self.found_smaller = true;
                        prefix.truncate(base);
                        return;
                    }
                    if ord != Ordering::Greater {
                        let mut coords: Vector = [0; MAX_CANON_K];
                        for i in 0..j {
                            coords[i] = f.neg(f.mul(alpha[i], linv));
                        }
                        coords[j] = linv;
                        rows.push(Row { pivot: layer.pivot, row: layer.rho, coords });
                        self.descend(rows, &rest, prefix);
                        rows.pop();
                        if self.found_smaller {
                            prefix.truncate(base);
                            return;
                        }
                    }
                    prefix.truncate(base);
                    if !next_vector(&mut alpha[..j], self.q) {
                        break;
                    }
                }
            }
        }
    }
}

/// Odometer step over `GF(q)^len` by element codes; false after the last vector.
fn next_vector(v: &mut [Elem], q: usize) -> bool {
    for x in v.iter_mut() {
        if (*x as usize) + 1 < q {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

/// Canonical forms for point sets of one projective space.
pub struct Canonizer<'a> {
    space: &'a ProjectiveSpace,
    cum: [usize; MAX_CANON_K + 1],
}

impl<'a> Canonizer<'a> {
    pub fn new(space: &'a ProjectiveSpace) -> Result<Self> {
        let k = space.k();
        if k > MAX_CANON_K {
            return Err(Error::TooLarge(format!("canonical forms need k <= {MAX_CANON_K}, got {k}")));
        }
        let mut cum = [0; MAX_CANON_K + 1];
        for (j, c) in cum.iter_mut().enumerate().take(k + 1) {
            *c = num_points(space.q(), j) as usize;
        }
        Ok(Canonizer { space, cum })
    }

    fn search<'r>(&'r self, points: &[usize], reference: Reference<'r>) -> Search<'r> {
        let k = self.space.k();
        let pts = points
            .iter()
            .map(|&i| {
                let mut v = [0; MAX_CANON_K];
                v[..k].copy_from_slice(self.space.point(i));
                v
            })
            .collect();
        Search {
            f: self.space.field(),
            q: self.space.q() as usize,
            k,
            cum: self.cum,
            pts,
            reference,
            found_smaller: false,
        }
    }

    /// Sorted indices of the canonical image of a set of distinct points.
    pub fn canonical_indices(&self, points: &[usize]) -> Vec<usize> {
        let mut start = points.to_vec();
        start.sort_unstable();
        start.dedup();
        let mut s = self.search(&start, Reference::Best(start.clone()));
        let ids: Vec<usize> = (0..start.len()).collect();
        s.descend(&mut Vec::with_capacity(self.space.k()), &ids, &mut Vec::with_capacity(start.len()));
        match s.reference {
            Reference::Best(b) => b,
            Reference::Target(_) => unreachable!(),
        }
    }

    /// Whether the sorted, duplicate-free `points` is its own canonical form.
    pub fn is_canonical(&self, points: &[usize]) -> bool {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        let mut s = self.search(points, Reference::Target(points));
        let ids: Vec<usize> = (0..points.len()).collect();
        s.descend(&mut Vec::with_capacity(self.space.k()), &ids, &mut Vec::with_capacity(points.len()));
        !s.found_smaller
    }

    /// Membership bit-vector of the canonical image.
    pub fn canonical_form(&self, points: &PointSet) -> Result<FixedBitSet> {
        if !points.is_set() {
            return Err(Error::OutOfRange("canonical forms are defined for point sets, not multisets".into()));
        }
        let idx: Vec<usize> = points.indices().collect();
        let mut bits = FixedBitSet::with_capacity(self.space.num_points());
        for i in self.canonical_indices(&idx) {
            bits.insert(i);
        }
        Ok(bits)
    }
}

/// Convenience wrapper around [`Canonizer::canonical_form`].
pub fn canonical_form(space: &ProjectiveSpace, points: &PointSet) -> Result<FixedBitSet> {
    Canonizer::new(space)?.canonical_form(points)
}
