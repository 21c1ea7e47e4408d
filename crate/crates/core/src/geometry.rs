//! The projective space PG(GF(q)^k).
//!
//! Points are represented by their normalized vector (first nonzero
//! coordinate equal to 1) and indexed in lexicographic order of those
//! vectors. Hyperplane `i` is the kernel of the linear form whose
//! coefficient vector is point `i`.

use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};
use crate::linalg::{Echelon, Matrix};

/// Number of points of PG(GF(q)^k), i.e. `[k;1]_q`.
pub fn num_points(q: u32, k: usize) -> u64 {
    (0..k).fold(0u64, |acc, _| acc * q as u64 + 1)
}

/// Gaussian binomial `[k;l]_q`, the number of `l`-dimensional subspaces of GF(q)^k.
pub fn gaussian_binomial(k: u32, l: u32, q: u32) -> Result<u64> {
    if l > k {
        return Err(Error::OutOfRange(format!("l = {l} > k = {k}")));
    }
    let q = q as u128;
    let pow = |e: u32| -> Result<u128> { q.checked_pow(e).ok_or(Error::Overflow("gaussian binomial")) };
    // [k;i+1] = [k;i] * (q^(k-i) - 1) / (q^(i+1) - 1), every step is integral
    let mut acc: u128 = 1;
    for i in 0..l {
        let num = pow(k - i)? - 1;
        let den = pow(i + 1)? - 1;
        acc = acc.checked_mul(num).ok_or(Error::Overflow("gaussian binomial"))? / den;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("gaussian binomial"))
}

/// Largest number of points we are willing to index.
pub const MAX_POINTS: u64 = 1 << 20;

/// A subset or multiset of the points of PG(GF(q)^k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    support: FixedBitSet,
    mult: Vec<u32>,
}

impl PointSet {
    pub fn empty(num_points: usize) -> Self {
        PointSet { support: FixedBitSet::with_capacity(num_points), mult: vec![0; num_points] }
    }

    pub fn from_indices(num_points: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(num_points);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn from_bits(bits: FixedBitSet) -> Self {
        let mut mult = vec![0; bits.len()];
        for i in bits.ones() {
            mult[i] = 1;
        }
        PointSet { support: bits, mult }
    }

    pub fn insert(&mut self, i: usize) {
        self.support.insert(i);
        self.mult[i] += 1;
    }

    pub fn universe(&self) -> usize {
        self.mult.len()
    }

    pub fn multiplicity(&self, i: usize) -> u32 {
        self.mult[i]
    }

    pub fn contains(&self, i: usize) -> bool {
        self.support.contains(i)
    }

    pub fn is_set(&self) -> bool {
        self.mult.iter().all(|&m| m <= 1)
    }

    /// `|P|` counted with multiplicity.
    pub fn cardinality(&self) -> usize {
        self.mult.iter().map(|&m| m as usize).sum()
    }

    /// Distinct points.
    pub fn bits(&self) -> &FixedBitSet {
        &self.support
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.support.ones()
    }

    /// `|P ∩ X|` with multiplicity, `X` given by its incidence bits.
    pub fn count_in(&self, x: &FixedBitSet) -> usize {
        if self.is_set() {
            return self.support.intersection_count(x);
        }
        self.support.intersection(x).map(|i| self.mult[i] as usize).sum()
    }

    /// The underlying set (multiplicities collapsed).
    pub fn to_set(&self) -> PointSet {
        PointSet::from_bits(self.support.clone())
    }
}

/// A projective subspace of given codimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceRecord {
    pub codim: usize,
    /// `codim x k`, in reduced row echelon form.
    pub dual_basis: Matrix,
    pub incident: FixedBitSet,
}

impl SubspaceRecord {
    pub fn num_incident(&self) -> usize {
        self.incident.count_ones(..)
    }

    pub fn contains_point(&self, i: usize) -> bool {
        self.incident.contains(i)
    }

    /// Pointwise containment `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &SubspaceRecord) -> bool {
        self.incident.is_subset(&other.incident)
    }
}

/// PG(GF(q)^k) with its point list and hyperplanes.
pub struct ProjectiveSpace {
    field: FieldSpec,
    k: usize,
    n: usize,
    coords: Vec<Elem>,
    /// Only for q = 2: bit `k-1-i` holds coordinate `i`, so index = word - 1.
    packed: Option<Vec<u64>>,
    hyperplanes: OnceLock<Vec<SubspaceRecord>>,
}

impl std::fmt::Debug for ProjectiveSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PG({:?}^{})", self.field, self.k)
    }
}

impl ProjectiveSpace {
    pub fn new(field: &FieldSpec, k: usize) -> Result<Arc<Self>> {
        if k == 0 {
            return Err(Error::OutOfRange("k must be at least 1".into()));
        }
        let q = field.q();
        let n64 = (0..k).try_fold(0u64, |acc, _| acc.checked_mul(q as u64).map(|x| x + 1));
        let n64 = n64.filter(|&n| n <= MAX_POINTS).ok_or_else(|| {
            Error::TooLarge(format!("PG(GF({q})^{k}) has more than {MAX_POINTS} points"))
        })?;
        let n = n64 as usize;
        let coords: Vec<Elem> = pg_points(field, k).into_iter().flatten().collect();
        let packed = (q == 2 && k <= 63).then(|| {
            coords
                .chunks(k)
                .map(|v| v.iter().fold(0u64, |acc, &x| (acc << 1) | x as u64))
                .collect()
        });
        Ok(Arc::new(ProjectiveSpace {
            field: field.clone(),
            k,
            n,
            coords,
            packed,
            hyperplanes: OnceLock::new(),
        }))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_points(&self) -> usize {
        self.n
    }

    pub fn point(&self, i: usize) -> &[Elem] {
        &self.coords[i * self.k..(i + 1) * self.k]
    }

    pub fn packed(&self) -> Option<&[u64]> {
        self.packed.as_deref()
    }

    pub fn point_index(&self, v: &[Elem]) -> Result<usize> {
        if v.len() != self.k {
            return Err(Error::DimensionMismatch { expected: self.k, got: v.len() });
        }
        point_index(&self.field, v)
    }

    pub fn hyperplanes(&self) -> &[SubspaceRecord] {
        self.hyperplanes.get_or_init(|| {
            (0..self.n)
                .map(|i| self.subspace_from_dual(&[self.point(i)]).expect("point is nonzero"))
                .collect()
        })
    }

    /// Builds the record of `{x : r·x = 0 for every row r}`; rows must be independent.
    pub fn subspace_from_dual<R: AsRef<[Elem]>>(&self, rows: &[R]) -> Result<SubspaceRecord> {
        let m = Matrix::from_rows(&self.field, self.k, rows)?;
        let red = m.rref();
        if red.rank != rows.len() {
            return Err(Error::RankDeficient { rank: red.rank, expected: rows.len() });
        }
        Ok(self.record_from_rref(red.matrix))
    }

    fn record_from_rref(&self, dual: Matrix) -> SubspaceRecord {
        let mut incident = FixedBitSet::with_capacity(self.n);
        let basis = dual.nullspace_basis();
        for p in self.span_points(&basis) {
            incident.insert(p);
        }
        SubspaceRecord { codim: dual.rows(), dual_basis: dual, incident }
    }

    /// Point indices of the projective subspace spanned by the rows of `basis`
    /// (rows assumed independent).
    pub fn span_points(&self, basis: &Matrix) -> Vec<usize> {
        let f = &self.field;
        let d = basis.rows();
        let mut out = Vec::with_capacity(num_points(f.q(), d) as usize);
        // coefficient vectors normalized on their first nonzero entry
        for coeffs in pg_points(f, d) {
            let v = basis.vec_mul(&coeffs);
            out.push(point_index(f, &v).expect("independent rows"));
        }
        out
    }

    /// Dimension of the span of the indexed points.
    pub fn span_dim(&self, points: impl IntoIterator<Item = usize>) -> usize {
        self.span_dim_capped(points, self.k)
    }

    /// Like [`span_dim`](Self::span_dim) but stops once `cap` is reached.
    pub fn span_dim_capped(&self, points: impl IntoIterator<Item = usize>, cap: usize) -> usize {
        if let Some(packed) = &self.packed {
            let mut basis = [0u64; 64];
            let mut dim = 0;
            for i in points {
                if dim >= cap {
                    break;
                }
                let mut v = packed[i];
                for &b in &basis[..dim] {
                    v = v.min(v ^ b);
                }
                if v != 0 {
                    // keep the basis sorted by leading bit, descending
                    let pos = basis[..dim].iter().position(|&b| b < v).unwrap_or(dim);
                    basis.copy_within(pos..dim, pos + 1);
                    basis[pos] = v;
                    dim += 1;
                }
            }
            return dim;
        }
        let mut e = Echelon::new(&self.field, self.k);
        for i in points {
            if e.dim() >= cap {
                break;
            }
            e.insert(self.point(i));
        }
        e.dim()
    }

    /// Every subspace of codimension `l`, each exactly once.
    pub fn subspaces_codim(&self, l: usize) -> Result<SubspaceIter<'_>> {
        if l == 0 || l > self.k {
            return Err(Error::OutOfRange(format!("codimension {l} not in 1..={}", self.k)));
        }
        Ok(SubspaceIter { space: self, inner: RrefIter::new(&self.field, l, self.k) })
    }
}

/// Normalized representatives of all points, in index order.
pub fn pg_points(field: &FieldSpec, k: usize) -> Vec<Vec<Elem>> {
    let q = field.q() as u64;
    let mut out = Vec::with_capacity(num_points(field.q(), k) as usize);
    for p in (0..k).rev() {
        let tail_len = k - 1 - p;
        for mut t in 0..q.pow(tail_len as u32) {
            let mut v = vec![0; k];
            v[p] = 1;
            for i in (p + 1..k).rev() {
                v[i] = (t % q) as Elem;
                t /= q;
            }
            out.push(v);
        }
    }
    out
}

/// Scales `v` so its first nonzero coordinate is 1.
pub fn normalize(field: &FieldSpec, v: &[Elem]) -> Result<Vec<Elem>> {
    let p = v.iter().position(|&x| x != 0).ok_or(Error::ZeroVector)?;
    let s = field.inv_nz(v[p]);
    Ok(v.iter().map(|&x| field.mul(x, s)).collect())
}

/// Index of `<v>` in the [`pg_points`] order.
pub fn point_index(field: &FieldSpec, v: &[Elem]) -> Result<usize> {
    let q = field.q() as usize;
    let k = v.len();
    let p = v.iter().position(|&x| x != 0).ok_or(Error::ZeroVector)?;
    let s = field.inv_nz(v[p]);
    let mut idx = num_points(q as u32, k - 1 - p) as usize;
    let mut tail = 0usize;
    for &x in &v[p + 1..] {
        tail = tail * q + field.mul(x, s) as usize;
    }
    idx += tail;
    Ok(idx)
}

/// Iterates all `l x k` matrices in reduced row echelon form of rank `l`.
pub(crate) struct RrefIter {
    field: FieldSpec,
    l: usize,
    k: usize,
    pivots: Option<Vec<usize>>,
    /// Positions `(row, col)` of the free entries for the current pivots.
    free: Vec<(usize, usize)>,
    odometer: Vec<Elem>,
    fresh: bool,
}

impl RrefIter {
    pub(crate) fn new(field: &FieldSpec, l: usize, k: usize) -> Self {
        let mut it = RrefIter {
            field: field.clone(),
            l,
            k,
            pivots: (l <= k).then(|| (0..l).collect()),
            free: Vec::new(),
            odometer: Vec::new(),
            fresh: true,
        };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        self.free.clear();
        if let Some(piv) = &self.pivots {
            for (r, &pc) in piv.iter().enumerate() {
                for c in pc + 1..self.k {
                    if !piv.contains(&c) {
                        self.free.push((r, c));
                    }
                }
            }
        }
        self.odometer = vec![0; self.free.len()];
        self.fresh = true;
    }

    fn next_pivots(&mut self) {
        let Some(piv) = self.pivots.as_mut() else { return };
        let (l, k) = (self.l, self.k);
        let mut i = l;
        while i > 0 {
            i -= 1;
            if piv[i] < k - l + i {
                piv[i] += 1;
                for j in i + 1..l {
                    piv[j] = piv[j - 1] + 1;
                }
                self.reset_free();
                return;
            }
        }
        self.pivots = None;
    }

    fn advance(&mut self) -> bool {
        let q = self.field.q() as Elem;
        for d in self.odometer.iter_mut().rev() {
            *d += 1;
            if *d < q {
                return true;
            }
            *d = 0;
        }
        false
    }
}

impl Iterator for RrefIter {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        loop {
            self.pivots.as_ref()?;
            if self.fresh || self.advance() {
                self.fresh = false;
                let piv = self.pivots.as_ref()?;
                let mut m = Matrix::zeros(&self.field, self.l, self.k);
                for (r, &pc) in piv.iter().enumerate() {
                    m.set(r, pc, 1);
                }
                for (&(r, c), &x) in self.free.iter().zip(&self.odometer) {
                    m.set(r, c, x);
                }
                return Some(m);
            }
            self.next_pivots();
        }
    }
}

pub struct SubspaceIter<'a> {
    space: &'a ProjectiveSpace,
    inner: RrefIter,
}

impl Iterator for SubspaceIter<'_> {
    type Item = SubspaceRecord;

    fn next(&mut self) -> Option<SubspaceRecord> {
        let dual = self.inner.next()?;
        Some(self.space.record_from_rref(dual))
    }
}
