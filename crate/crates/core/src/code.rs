//! Linear codes through their point multisets.
//!
//! Column `i` of a generator matrix is a point `<G_i>` of PG(GF(q)^k). A
//! nonzero codeword `m·G` vanishes exactly on the columns lying in the
//! hyperplane `{x : m·x = 0}`, so weights, minimality and subcode supports
//! all reduce to incidence questions about that point multiset.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};
use crate::geometry::{point_index, PointSet, ProjectiveSpace, SubspaceRecord};
use crate::linalg::{Echelon, Matrix};

pub mod oracle;

/// Hyperplane loops switch to rayon above this many points.
const PAR_THRESHOLD: usize = 512;

/// A `[n, k]_q` linear code given by a full-rank generator matrix without zero columns.
#[derive(Clone)]
pub struct LinearCode {
    space: Arc<ProjectiveSpace>,
    gen: Matrix,
    col_points: Vec<usize>,
    points: PointSet,
    projective: bool,
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]_{} code", self.n(), self.k(), self.space.q())
    }
}

/// Outcome of the minimality test for the codewords of one hyperplane.
#[derive(Debug, Clone)]
pub struct MinimalityReport {
    /// Index of the hyperplane (its dual vector is the point with this index).
    pub hyperplane_index: usize,
    pub hyperplane: SubspaceRecord,
    /// Coordinates (0-based) where the codewords are nonzero.
    pub support: Vec<usize>,
    pub weight: usize,
    pub minimal: bool,
    /// A codimension-2 subspace `U ≤ H` containing every column on `H`.
    pub witness_codim2: Option<SubspaceRecord>,
}

impl LinearCode {
    pub fn from_matrix(gen: Matrix) -> Result<Self> {
        let space = ProjectiveSpace::new(gen.field(), gen.rows().max(1))?;
        Self::from_matrix_in(space, gen)
    }

    /// Like [`from_matrix`](Self::from_matrix) but reuses an existing space.
    pub fn from_matrix_in(space: Arc<ProjectiveSpace>, gen: Matrix) -> Result<Self> {
        let (k, n) = (gen.rows(), gen.cols());
        if k == 0 || n < k || k != space.k() || gen.field() != space.field() {
            return Err(Error::OutOfRange(format!("generator must be k x n with 1 <= k <= n, got {k} x {n}")));
        }
        let rank = gen.rank();
        if rank < k {
            return Err(Error::RankDeficient { rank, expected: k });
        }
        let f = gen.field().clone();
        let mut col_points = Vec::with_capacity(n);
        for c in 0..n {
            let col = gen.column(c);
            col_points.push(point_index(&f, &col).map_err(|_| Error::ZeroColumn(c))?);
        }
        let points = PointSet::from_indices(space.num_points(), col_points.iter().copied());
        let projective = points.is_set();
        Ok(LinearCode { space, gen, col_points, points, projective })
    }

    /// The code whose columns are the given points, in the given order.
    pub fn from_points(space: Arc<ProjectiveSpace>, indices: &[usize]) -> Result<Self> {
        let k = space.k();
        let mut data = vec![0; k * indices.len()];
        for (c, &p) in indices.iter().enumerate() {
            if p >= space.num_points() {
                return Err(Error::OutOfRange(format!("point index {p}")));
            }
            for (r, &x) in space.point(p).iter().enumerate() {
                data[r * indices.len() + c] = x;
            }
        }
        let gen = Matrix::new(space.field(), k, indices.len(), data)?;
        Self::from_matrix_in(space, gen)
    }

    pub fn field(&self) -> &FieldSpec {
        self.space.field()
    }

    pub fn q(&self) -> u32 {
        self.space.q()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn space(&self) -> &Arc<ProjectiveSpace> {
        &self.space
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    /// Point index of every column.
    pub fn column_points(&self) -> &[usize] {
        &self.col_points
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn encode(&self, message: &[Elem]) -> Vec<Elem> {
        self.gen.vec_mul(message)
    }

    /// Drops repeated columns (keeping the first occurrence of each point).
    pub fn reduce_to_projective(&self) -> (LinearCode, usize) {
        let mut seen = vec![false; self.space.num_points()];
        let keep: Vec<usize> = self
            .col_points
            .iter()
            .copied()
            .filter(|&p| !std::mem::replace(&mut seen[p], true))
            .collect();
        let removed = self.n() - keep.len();
        if removed == 0 {
            return (self.clone(), 0);
        }
        let cols: Vec<usize> = {
            let mut seen = vec![false; self.space.num_points()];
            (0..self.n()).filter(|&c| !std::mem::replace(&mut seen[self.col_points[c]], true)).collect()
        };
        let k = self.k();
        let mut data = vec![0; k * cols.len()];
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..k {
                data[r * cols.len() + j] = self.gen.get(r, c);
            }
        }
        let gen = Matrix::new(self.field(), k, cols.len(), data).expect("same entries");
        let code = LinearCode::from_matrix_in(self.space.clone(), gen).expect("columns still span");
        (code, removed)
    }

    /// `|P ∩ X|` with multiplicity.
    fn count_on(&self, x: &SubspaceRecord) -> usize {
        self.points.count_in(&x.incident)
    }

    /// Dimension of the span of the (distinct) points of the code lying in `x`.
    fn section_dim(&self, x: &SubspaceRecord, cap: usize) -> usize {
        self.space.span_dim_capped(self.points.bits().intersection(&x.incident), cap)
    }

    /// Codewords of `h` are minimal iff the columns on `h` span `h`.
    pub fn is_minimal_hyperplane(&self, h: &SubspaceRecord) -> MinimalityReport {
        debug_assert_eq!(h.codim, 1);
        let k = self.k();
        let hyperplane_index = point_index(self.field(), h.dual_basis.row(0)).expect("nonzero form");
        let support: Vec<usize> =
            (0..self.n()).filter(|&c| !h.contains_point(self.col_points[c])).collect();
        let dim = self.section_dim(h, k);
        let minimal = dim == k - 1;
        let witness_codim2 = (!minimal).then(|| self.witness_inside(h));
        MinimalityReport {
            hyperplane_index,
            hyperplane: h.clone(),
            weight: support.len(),
            support,
            minimal,
            witness_codim2,
        }
    }

    /// Least (by dual basis) codimension-2 subspace of `h` containing `P ∩ h`.
    fn witness_inside(&self, h: &SubspaceRecord) -> SubspaceRecord {
        let f = self.field();
        let k = self.k();
        let section: Vec<&[Elem]> = self
            .points
            .bits()
            .intersection(&h.incident)
            .map(|i| self.space.point(i))
            .collect();
        // forms vanishing on the section
        let annihilator = if section.is_empty() {
            Matrix::identity(f, k)
        } else {
            Matrix::from_rows(f, k, &section).expect("length k").nullspace_basis()
        };
        let hrow = h.dual_basis.row(0);
        let mut h_span = Echelon::new(f, k);
        h_span.insert(hrow);
        let q = f.q() as u64;
        let d = annihilator.rows();
        let mut best: Option<Matrix> = None;
        for mut t in 1..q.pow(d as u32) {
            let mut coeffs = vec![0; d];
            for c in coeffs.iter_mut() {
                *c = (t % q) as Elem;
                t /= q;
            }
            let v = annihilator.vec_mul(&coeffs);
            if h_span.contains(&v) {
                continue;
            }
            let mut m = Matrix::from_rows(f, k, &[hrow, &v[..]]).expect("length k").rref().matrix;
            m.truncate_rows(2);
            if best.as_ref().is_none_or(|b| m.data() < b.data()) {
                best = Some(m);
            }
        }
        let dual = best.expect("section span has codimension at least 2");
        self.space.subspace_from_dual(&[dual.row(0), dual.row(1)]).expect("rank 2")
    }

    pub fn minimality_reports(&self) -> Vec<MinimalityReport> {
        self.space.hyperplanes().iter().map(|h| self.is_minimal_hyperplane(h)).collect()
    }

    /// `M(C)`: the number of hyperplanes (codeword classes up to scalars) that are minimal.
    pub fn count_minimal(&self) -> usize {
        let k = self.k();
        let test = |h: &SubspaceRecord| self.section_dim(h, k - 1) == k - 1;
        let hs = self.space.hyperplanes();
        if hs.len() >= PAR_THRESHOLD {
            hs.par_iter().filter(|h| test(h)).count()
        } else {
            hs.iter().filter(|h| test(h)).count()
        }
    }

    /// Minimum distance `n - max_H |P ∩ H|`.
    pub fn min_distance(&self) -> usize {
        self.n() - self.space.hyperplanes().iter().map(|h| self.count_on(h)).max().unwrap_or(0)
    }

    /// Codimension-`l` subspace `W` attached to the subcode spanned by the rows of `basis`.
    pub fn subspace_of_subcode(&self, basis: &Matrix) -> Result<SubspaceRecord> {
        if basis.cols() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: basis.cols() });
        }
        let mut coeff_rows = Vec::with_capacity(basis.rows());
        for r in 0..basis.rows() {
            coeff_rows.push(self.gen.solve_left(basis.row(r)).ok_or(Error::NotACodeword(r))?);
        }
        let m = Matrix::from_rows(self.field(), self.k(), &coeff_rows)?;
        let rank = m.rank();
        if rank != basis.rows() || basis.rows() == 0 {
            return Err(Error::RankDeficient { rank, expected: basis.rows().max(1) });
        }
        self.space.subspace_from_dual(&coeff_rows)
    }

    /// Basis (rows) of the subcode attached to `w`.
    pub fn subcode_of_subspace(&self, w: &SubspaceRecord) -> Matrix {
        w.dual_basis.mul(&self.gen).expect("dual basis has k columns")
    }

    /// Support of the subcode attached to `w`: the coordinates whose column is not in `w`.
    pub fn subcode_support(&self, w: &SubspaceRecord) -> (Vec<usize>, usize) {
        let support: Vec<usize> =
            (0..self.n()).filter(|&c| !w.contains_point(self.col_points[c])).collect();
        let weight = support.len();
        debug_assert_eq!(weight, self.n() - self.count_on(w));
        (support, weight)
    }

    pub fn is_support_minimal(&self, w: &SubspaceRecord) -> bool {
        let target = self.k() - w.codim;
        self.section_dim(w, target) == target
    }

    /// `M^l(C)`, counted per subcode.
    pub fn count_support_minimal(&self, l: usize) -> Result<usize> {
        self.check_level(l)?;
        Ok(self.space.subspaces_codim(l)?.par_bridge().filter(|w| self.is_support_minimal(w)).count())
    }

    /// Generalized Hamming weight `d_l = n - max_W |P ∩ W|` over codimension-`l` subspaces.
    pub fn ghw(&self, l: usize) -> Result<usize> {
        self.check_level(l)?;
        if l == 1 {
            return Ok(self.min_distance());
        }
        let best = self.space.subspaces_codim(l)?.par_bridge().map(|w| self.count_on(&w)).max();
        Ok(self.n() - best.unwrap_or(0))
    }

    fn check_level(&self, l: usize) -> Result<()> {
        if l == 0 || l > self.k() {
            return Err(Error::OutOfRange(format!("subcode dimension {l} not in 1..={}", self.k())));
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::geometry::pg_points;
    use crate::gf::field_new;

    pub(crate) fn simplex(q: u32, k: usize) -> LinearCode {
        let f = field_new(q).unwrap();
        let space = ProjectiveSpace::new(&f, k).unwrap();
        let all: Vec<usize> = (0..space.num_points()).collect();
        LinearCode::from_points(space, &all).unwrap()
    }

    /// Points of the conic x z = y^2 in PG(GF(3)^3).
    pub(crate) fn conic_code_gf3() -> LinearCode {
        let f = field_new(3).unwrap();
        let space = ProjectiveSpace::new(&f, 3).unwrap();
        let mut pts: Vec<usize> = f
            .elements()
            .map(|t| space.point_index(&[1, t, f.mul(t, t)]).unwrap())
            .collect();
        pts.push(space.point_index(&[0, 0, 1]).unwrap());
        LinearCode::from_points(space, &pts).unwrap()
    }

    #[test]
    fn construction() {
        let f2 = field_new(2).unwrap();
        let id = LinearCode::from_matrix(Matrix::identity(&f2, 4)).unwrap();
        assert_eq!((id.n(), id.k()), (4, 4));
        assert!(id.is_projective());

        let s = simplex(2, 3);
        assert_eq!((s.n(), s.k()), (7, 3));
        assert!(s.is_projective());

        let dup = Matrix::from_rows(&field_new(3).unwrap(), 3, &[[1, 2, 0], [1, 2, 1]]).unwrap();
        let c = LinearCode::from_matrix(dup).unwrap();
        assert!(!c.is_projective());

        let zero = Matrix::from_rows(&f2, 3, &[[1, 0, 0], [0, 1, 0]]).unwrap();
        assert_eq!(LinearCode::from_matrix(zero).unwrap_err(), Error::ZeroColumn(2));
        let low = Matrix::from_rows(&f2, 3, &[[1, 1, 0], [1, 1, 0]]).unwrap();
        assert!(matches!(LinearCode::from_matrix(low), Err(Error::RankDeficient { rank: 1, expected: 2 })));
    }

    #[test]
    fn reduction_to_projective() {
        let s = simplex(2, 3);
        let (same, removed) = s.reduce_to_projective();
        assert_eq!((same.n(), removed), (7, 0));

        let f2 = field_new(2).unwrap();
        let mut cols: Vec<Vec<Elem>> = pg_points(&f2, 3);
        cols.push(cols[4].clone());
        let mut data = vec![0; 3 * 8];
        for (c, col) in cols.iter().enumerate() {
            for r in 0..3 {
                data[r * 8 + c] = col[r];
            }
        }
        let c = LinearCode::from_matrix(Matrix::new(&f2, 3, 8, data).unwrap()).unwrap();
        assert!(!c.is_projective());
        assert_eq!(c.points().cardinality(), 8);
        let (r, removed) = c.reduce_to_projective();
        assert_eq!((r.n(), removed), (7, 1));
        assert!(r.is_projective());
        assert_eq!(r.count_minimal(), c.count_minimal());
    }

    #[test]
    fn minimality_on_simplex_and_identity() {
        let s = simplex(2, 3);
        assert!(s.minimality_reports().iter().all(|r| r.minimal && r.weight == 4));
        assert_eq!(s.count_minimal(), 7);
        assert_eq!(s.min_distance(), 4);
        for k in 1..=5 {
            let f = field_new(3).unwrap();
            let id = LinearCode::from_matrix(Matrix::identity(&f, k)).unwrap();
            assert_eq!(id.count_minimal(), k);
            assert_eq!(id.min_distance(), 1);
        }
    }

    #[test]
    fn complement_of_affine_part_has_a_non_minimal_hyperplane() {
        // P = PG(2,2) \ (H \ U) with H = {x_0 = 0}, U = <(0,0,1)>
        let f2 = field_new(2).unwrap();
        let space = ProjectiveSpace::new(&f2, 3).unwrap();
        let h = space.subspace_from_dual(&[[1, 0, 0]]).unwrap();
        let u = space.subspace_from_dual(&[[1, 0, 0], [0, 1, 0]]).unwrap();
        let pts: Vec<usize> = (0..7).filter(|&p| !h.contains_point(p) || u.contains_point(p)).collect();
        assert_eq!(pts.len(), 5);
        let c = LinearCode::from_points(space.clone(), &pts).unwrap();
        let r = c.is_minimal_hyperplane(&h);
        assert!(!r.minimal);
        assert_eq!(r.witness_codim2.as_ref(), Some(&u));
        assert_eq!(c.count_minimal(), 6);
        for rep in c.minimality_reports() {
            assert_eq!(rep.minimal, rep.witness_codim2.is_none());
            if let Some(w) = &rep.witness_codim2 {
                assert!(w.is_subspace_of(&rep.hyperplane));
                assert!(c.points().bits().intersection(&rep.hyperplane.incident).all(|p| w.contains_point(p)));
            }
        }
    }

    #[test]
    fn two_dimensional_codes() {
        let f = field_new(5).unwrap();
        let space = ProjectiveSpace::new(&f, 2).unwrap();
        let c = LinearCode::from_points(space, &[0, 2, 3, 5]).unwrap();
        for r in c.minimality_reports() {
            if r.weight < c.n() {
                assert!(r.minimal);
            }
        }
        assert_eq!(c.count_minimal(), 4);
    }

    #[test]
    fn conic_code_is_mds() {
        let c = conic_code_gf3();
        assert_eq!((c.n(), c.k()), (4, 3));
        assert_eq!(c.min_distance(), 2);
        for l in 1..=3 {
            assert_eq!(c.ghw(l).unwrap(), 1 + l);
        }
        // support-minimal 1-dim subcodes are exactly those of weight d_1 = 2
        for h in c.space().hyperplanes() {
            let (_, w) = c.subcode_support(h);
            assert_eq!(c.is_support_minimal(h), w == 2);
        }
        assert_eq!(c.count_minimal(), 6);
    }

    #[test]
    fn generalized_weights_of_simplex() {
        let s = simplex(2, 3);
        assert_eq!((s.ghw(1).unwrap(), s.ghw(2).unwrap(), s.ghw(3).unwrap()), (4, 6, 7));
        assert!(s.ghw(0).is_err() && s.ghw(4).is_err());
        assert_eq!(s.count_support_minimal(1).unwrap(), 7);
        assert_eq!(s.count_support_minimal(2).unwrap(), 7);
        assert_eq!(s.count_support_minimal(3).unwrap(), 1);
    }

    #[test]
    fn support_minimal_weight_window() {
        // d_l <= wt(D) <= n - k + l for every support-minimal D; n - k - l is already wrong for l = 1
        let f = field_new(2).unwrap();
        let p4 = ProjectiveSpace::new(&f, 4).unwrap();
        let codes = [
            simplex(2, 4),
            simplex(3, 3),
            conic_code_gf3(),
            LinearCode::from_points(p4, &[0, 1, 2, 3, 4, 7, 9, 12, 14]).unwrap(),
        ];
        let mut above_literal = false;
        for c in &codes {
            let (n, k) = (c.n(), c.k());
            for l in 1..=k {
                let dl = c.ghw(l).unwrap();
                for w in c.space().subspaces_codim(l).unwrap() {
                    if c.is_support_minimal(&w) {
                        let wt = c.subcode_support(&w).1;
                        assert!(dl <= wt && wt <= n - k + l, "n={n} k={k} l={l} wt={wt}");
                        above_literal |= wt + k + l > n;
                    }
                }
            }
        }
        assert!(above_literal);
    }

    #[test]
    fn subcode_subspace_correspondence() {
        let s = simplex(2, 3);
        // full code -> zero subspace
        let w = s.subspace_of_subcode(s.generator()).unwrap();
        assert_eq!((w.codim, w.num_incident()), (3, 0));
        assert_eq!(s.subcode_support(&w).1, 7);
        // single codeword -> its hyperplane
        let c = s.encode(&[1, 0, 1]);
        let h = s.subspace_of_subcode(&Matrix::from_rows(s.field(), 7, &[&c]).unwrap()).unwrap();
        assert_eq!(h, s.space().subspace_from_dual(&[[1, 0, 1]]).unwrap());
        let rep = s.is_minimal_hyperplane(&h);
        let nz: Vec<usize> = (0..7).filter(|&i| c[i] != 0).collect();
        assert_eq!(rep.support, nz);
        assert_eq!(s.subcode_support(&h).0, nz);
        // 2-dim subcode -> a point, weight 6
        let d = Matrix::from_rows(s.field(), 7, &[s.encode(&[1, 1, 0]), s.encode(&[0, 1, 1])]).unwrap();
        let w = s.subspace_of_subcode(&d).unwrap();
        assert_eq!(w.num_incident(), 1);
        let p = w.incident.ones().next().unwrap();
        assert_eq!(s.subcode_support(&w).0, (0..7).filter(|&i| s.column_points()[i] != p).collect::<Vec<_>>());
        // round trip back to the same subcode
        let back = s.subcode_of_subspace(&w);
        assert_eq!(s.subspace_of_subcode(&back).unwrap(), w);

        let bad = Matrix::from_rows(s.field(), 7, &[[1, 0, 0, 0, 0, 0, 0]]).unwrap();
        assert_eq!(s.subspace_of_subcode(&bad).unwrap_err(), Error::NotACodeword(0));
        let dep = Matrix::from_rows(s.field(), 7, &[s.encode(&[1, 1, 0]), s.encode(&[1, 1, 0])]).unwrap();
        assert!(matches!(s.subspace_of_subcode(&dep), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn subcode_round_trip_is_a_bijection() {
        for (q, k) in [(2u32, 4usize), (3, 3)] {
            let s = simplex(q, k);
            for l in 1..=k {
                let mut n = 0;
                for w in s.space().subspaces_codim(l).unwrap() {
                    let back = s.subspace_of_subcode(&s.subcode_of_subspace(&w)).unwrap();
                    assert_eq!(back, w);
                    n += 1;
                }
                assert_eq!(n as u64, crate::geometry::gaussian_binomial(k as u32, l as u32, q).unwrap());
            }
        }
    }
}
