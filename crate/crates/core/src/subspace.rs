//! Dense linear algebra over a finite field and canonical subspaces.
//!
//! Every [`Subspace`] is kept in reduced row echelon form, so two subspaces are
//! equal exactly when their stored bases are equal.

use std::fmt;

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("row has length {got}, expected {expected}")]
    RowLength { expected: usize, got: usize },
    #[error("entry {0} is not an element of the field")]
    BadEntry(u32),
    #[error("the zero subspace has no projective points")]
    ZeroSubspace,
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch in matrix product: {0}x{1} times {2}x{3}")]
    Shape(usize, usize, usize, usize),
}

/// A dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_iter()).finish()
    }
}

impl MatrixFq {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        MatrixFq { field: field.clone(), rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix with `cols` columns from explicit rows, validating
    /// lengths and entries.
    pub fn from_rows<R: AsRef<[u32]>>(field: &Field, cols: usize, rows: &[R]) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(LinalgError::RowLength { expected: cols, got: row.len() });
            }
            if let Some(&bad) = row.iter().find(|&&v| !field.contains(v)) {
                return Err(LinalgError::BadEntry(bad));
            }
            entries.extend_from_slice(row);
        }
        Ok(MatrixFq { field: field.clone(), rows: rows.len(), cols, entries })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(self.field.contains(v));
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.row_iter().map(<[u32]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixFq) -> Result<MatrixFq, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinalgError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        let f = &self.field;
        self.row_iter()
            .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &MatrixFq) -> Result<MatrixFq, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(LinalgError::AmbientMismatch(self.cols, other.cols));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(MatrixFq { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, entries })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Gauss-Jordan elimination in place, restricted to the first `limit`
    /// columns for pivot selection. Returns the pivot columns.
    fn eliminate(&mut self, limit: usize) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..limit {
            if next == self.rows {
                break;
            }
            let Some(src) = (next..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(src, next);
            let scale = f.inv(self.get(next, col)).expect("pivot is nonzero");
            for c in 0..self.cols {
                let v = f.mul(self.get(next, c), scale);
                self.set(next, c, v);
            }
            for r in 0..self.rows {
                let factor = self.get(r, col);
                if r == next || factor == 0 {
                    continue;
                }
                for c in 0..self.cols {
                    let v = f.sub(self.get(r, c), f.mul(factor, self.get(next, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }

    /// Reduced row echelon form, rank and pivot columns. Zero rows are kept
    /// at the bottom so the shape is unchanged.
    pub fn rref(&self) -> (MatrixFq, usize, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(m.cols);
        (m, pivots.len(), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of the right null space `{x : self * x = 0}`, one vector per row.
    pub fn kernel(&self) -> MatrixFq {
        let (r, _, pivots) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = MatrixFq::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            basis.set(i, fc, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                basis.set(i, pc, f.neg(r.get(row, fc)));
            }
        }
        basis
    }

    /// Solves `self * X = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &MatrixFq) -> Result<MatrixFq, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        if rhs.rows != self.rows {
            return Err(LinalgError::Shape(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        if self.field != rhs.field {
            return Err(LinalgError::FieldMismatch);
        }
        let n = self.rows;
        let mut aug = MatrixFq::zeros(&self.field, n, n + rhs.cols);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            for c in 0..rhs.cols {
                aug.set(r, n + c, rhs.get(r, c));
            }
        }
        if aug.eliminate(n).len() < n {
            return Err(LinalgError::Singular);
        }
        let mut x = MatrixFq::zeros(&self.field, n, rhs.cols);
        for r in 0..n {
            for c in 0..rhs.cols {
                x.set(r, c, aug.get(r, n + c));
            }
        }
        Ok(x)
    }
}

/// A projective point of `P(F_q^n)`, normalized so that its first nonzero
/// coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<u32>,
}

impl ProjPoint {
    pub fn new(field: &Field, coords: &[u32]) -> Result<Self, LinalgError> {
        if let Some(&bad) = coords.iter().find(|&&v| !field.contains(v)) {
            return Err(LinalgError::BadEntry(bad));
        }
        let lead = coords.iter().copied().find(|&v| v != 0).ok_or(LinalgError::ZeroVector)?;
        let scale = field.inv(lead).expect("nonzero");
        Ok(ProjPoint { coords: coords.iter().map(|&v| field.mul(v, scale)).collect() })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn ambient(&self) -> usize {
        self.coords.len()
    }
}

/// A linear subspace of `F_q^n` in canonical (RREF) form.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: MatrixFq,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, ", self.ambient)?;
        f.debug_list().entries(self.basis.row_iter()).finish()?;
        write!(f, ")")
    }
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace { ambient, basis: MatrixFq::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        Self::from_matrix(&MatrixFq::identity(field, ambient))
    }

    /// The row space of `m`.
    pub fn from_matrix(m: &MatrixFq) -> Self {
        let (r, rank, pivots) = m.rref();
        let basis = MatrixFq {
            field: r.field.clone(),
            rows: rank,
            cols: r.cols,
            entries: r.entries[..rank * r.cols].to_vec(),
        };
        Subspace { ambient: m.cols, basis, pivots }
    }

    /// Span of the given vectors in `F_q^ambient`.
    pub fn span<R: AsRef<[u32]>>(field: &Field, ambient: usize, vectors: &[R]) -> Result<Self, LinalgError> {
        Ok(Self::from_matrix(&MatrixFq::from_rows(field, ambient, vectors)?))
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn compatible(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.field() != other.field() {
            return Err(LinalgError::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Residue of `v` after eliminating against the basis pivots.
    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = v.to_vec();
        for (row, &pc) in self.pivots.iter().enumerate() {
            let factor = out[pc];
            if factor != 0 {
                for (o, &b) in out.iter_mut().zip(self.basis.row(row)) {
                    *o = f.sub(*o, f.mul(factor, b));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, v.len()));
        }
        Ok(self.reduce(v).iter().all(|&x| x == 0))
    }

    pub fn contains_point(&self, p: &ProjPoint) -> Result<bool, LinalgError> {
        self.contains(p.coords())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.compatible(other)?;
        Ok(self.basis.row_iter().all(|row| other.reduce(row).iter().all(|&x| x == 0)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.compatible(other)?;
        Ok(Self::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection by the Zassenhaus construction: row reduce
    /// `[[U, U], [V, 0]]`; rows whose left half vanishes span `U ∩ V`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.compatible(other)?;
        let n = self.ambient;
        let f = self.field();
        let mut m = MatrixFq::zeros(f, self.dim() + other.dim(), 2 * n);
        for (r, row) in self.basis.row_iter().enumerate() {
            for c in 0..n {
                m.set(r, c, row[c]);
                m.set(r, n + c, row[c]);
            }
        }
        for (r, row) in other.basis.row_iter().enumerate() {
            for c in 0..n {
                m.set(self.dim() + r, c, row[c]);
            }
        }
        let (reduced, _, _) = m.rref();
        let rows: Vec<Vec<u32>> = reduced
            .row_iter()
            .filter(|row| row[..n].iter().all(|&x| x == 0))
            .map(|row| row[n..].to_vec())
            .collect();
        Self::span(f, n, &rows)
    }

    /// Projective points of the subspace, lazily. Coefficient tuples against
    /// the RREF basis are visited in counting order with the first coefficient
    /// varying fastest; only tuples whose first nonzero entry is 1 are kept,
    /// which makes every produced vector already normalized.
    pub fn points(&self) -> PointIter<'_> {
        let q = self.field().order() as u64;
        let total = q.checked_pow(self.dim() as u32).unwrap_or(u64::MAX);
        PointIter { space: self, next: 1, total }
    }

    pub fn point_count(&self) -> u64 {
        let q = self.field().order() as u64;
        (0..self.dim() as u32).map(|i| q.pow(i)).sum()
    }
}

pub struct PointIter<'a> {
    space: &'a Subspace,
    next: u64,
    total: u64,
}

impl Iterator for PointIter<'_> {
    type Item = ProjPoint;

    fn next(&mut self) -> Option<ProjPoint> {
        let f = self.space.field();
        let q = f.order() as u64;
        while self.next < self.total {
            let idx = self.next;
            self.next += 1;
            // idx is nonzero; its lowest nonzero base-q digit must be 1.
            let mut rest = idx;
            while rest % q == 0 {
                rest /= q;
            }
            if rest % q != 1 {
                continue;
            }
            let mut coords = vec![0u32; self.space.ambient];
            let mut rest = idx;
            for row in self.space.basis.row_iter() {
                let c = (rest % q) as u32;
                rest /= q;
                if c != 0 {
                    for (x, &b) in coords.iter_mut().zip(row) {
                        *x = f.add(*x, f.mul(c, b));
                    }
                }
            }
            return Some(ProjPoint { coords });
        }
        None
    }
}

/// All projective points of `u` in canonical order.
pub fn enumerate_points(u: &Subspace) -> Result<Vec<ProjPoint>, LinalgError> {
    if u.dim() == 0 {
        return Err(LinalgError::ZeroSubspace);
    }
    Ok(u.points().collect())
}

/// `dim U + dim V - 2 dim(U ∩ V)`.
pub fn subspace_distance(u: &Subspace, v: &Subspace) -> Result<usize, LinalgError> {
    let meet = u.intersect(v)?;
    Ok(u.dim() + v.dim() - 2 * meet.dim())
}

/// The `i`-th standard basis vector of `F_q^n`.
pub fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}
