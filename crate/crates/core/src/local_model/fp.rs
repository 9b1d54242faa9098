//! Linear algebra over a prime field `F_p`.

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !is_prime {
            return Err(Error::InvalidParameter(format!("field size {p} is not prime")));
        }
        if p > 1 << 15 {
            return Err(Error::InvalidParameter(format!("field size {p} too large")));
        }
        Ok(PrimeField { p })
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverting zero");
        let mut result = 1;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

/// A dense matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// `M·v` for a column vector `v`.
    pub fn apply(&self, f: &PrimeField, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "shape mismatch");
        (0..self.rows).map(|r| f.dot(self.row(r), v)).collect()
    }

    pub fn mul(&self, f: &PrimeField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let v = (0..self.cols).fold(0, |acc, k| {
                    f.add(acc, f.mul(self.get(r, k), other.get(k, c)))
                });
                out.set(r, c, v);
            }
        }
        out
    }

    /// `vᵀ M w`.
    pub fn bilinear(&self, f: &PrimeField, v: &[u32], w: &[u32]) -> u32 {
        f.dot(v, &self.apply(f, w))
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        let rows: Vec<Vec<u32>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        rref(f, rows).len()
    }
}

/// Row-reduces `rows` to reduced row-echelon form, dropping zero rows.
pub fn rref(f: &PrimeField, mut rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for c in 0..cols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = f.inv(rows[pivot_row][c]);
        for v in rows[pivot_row].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && row[c] != 0 {
                let factor = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(factor, p));
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Basis of `{v : A v = 0}` for `A` given by its rows.
pub fn kernel(f: &PrimeField, rows: Vec<Vec<u32>>, cols: usize) -> Vec<Vec<u32>> {
    let reduced = rref(f, rows);
    let pivots: Vec<usize> = reduced
        .iter()
        .map(|r| r.iter().position(|&x| x != 0).expect("rref rows are nonzero"))
        .collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = f.sub(0, row[free]);
        }
        basis.push(v);
    }
    basis
}

/// A subspace of `F_p^d`, stored by its reduced row-echelon basis so that
/// equality and hashing are canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn span(field: PrimeField, ambient: usize, vectors: Vec<Vec<u32>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector of wrong length");
        let basis = if vectors.is_empty() { vectors } else { rref(&field, vectors) };
        Subspace { field, ambient, basis }
    }

    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new() }
    }

    pub fn whole(field: PrimeField, ambient: usize) -> Self {
        Subspace::span(field, ambient, unit_vectors(ambient, 0..ambient))
    }

    /// Span of the standard basis vectors with the given 0-based indices.
    pub fn coordinate(field: PrimeField, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Subspace::span(field, ambient, unit_vectors(ambient, indices))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(&self.field, rows).len() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, rows)
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    pub fn image(&self, m: &Matrix) -> Subspace {
        let rows = self.basis.iter().map(|v| m.apply(&self.field, v)).collect();
        Subspace::span(self.field, m.rows(), rows)
    }

    /// `{v : B(v, w) = 0 for all w in self}` for `B(v, w) = vᵀ M w`.
    pub fn orthogonal(&self, form: &Matrix) -> Subspace {
        let functionals: Vec<Vec<u32>> =
            self.basis.iter().map(|w| form.apply(&self.field, w)).collect();
        if functionals.is_empty() {
            return Subspace::whole(self.field, self.ambient);
        }
        let basis = kernel(&self.field, functionals, self.ambient);
        Subspace::span(self.field, self.ambient, basis)
    }

    pub fn is_isotropic(&self, form: &Matrix) -> bool {
        self.basis
            .iter()
            .all(|v| self.basis.iter().all(|w| form.bilinear(&self.field, v, w) == 0))
    }
}

fn unit_vectors(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Vec<Vec<u32>> {
    indices
        .into_iter()
        .map(|i| {
            let mut v = vec![0; ambient];
            v[i] = 1;
            v
        })
        .collect()
}

/// Every `k`-dimensional subspace of `F_p^d`, enumerated by reduced
/// row-echelon form: a pivot set plus free entries right of each pivot.
pub fn grassmannian(field: PrimeField, ambient: usize, k: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(field, ambient, k, 0, &mut pivots, &mut out);
    out
}

fn choose_pivots(
    field: PrimeField,
    ambient: usize,
    k: usize,
    start: usize,
    pivots: &mut Vec<usize>,
    out: &mut Vec<Subspace>,
) {
    if pivots.len() == k {
        fill_free_entries(field, ambient, pivots, out);
        return;
    }
    for c in start..ambient {
        pivots.push(c);
        choose_pivots(field, ambient, k, c + 1, pivots, out);
        pivots.pop();
    }
}

fn fill_free_entries(field: PrimeField, ambient: usize, pivots: &[usize], out: &mut Vec<Subspace>) {
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &p)| ((p + 1)..ambient).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
        .collect();
    let q = field.order();
    let mut values = vec![0u32; free.len()];
    loop {
        let mut basis = vec![vec![0u32; ambient]; pivots.len()];
        for (r, &p) in pivots.iter().enumerate() {
            basis[r][p] = 1;
        }
        for (&(r, c), &v) in free.iter().zip(&values) {
            basis[r][c] = v;
        }
        out.push(Subspace { field, ambient, basis });
        let mut i = 0;
        loop {
            if i == values.len() {
                return;
            }
            values[i] += 1;
            if values[i] < q {
                break;
            }
            values[i] = 0;
            i += 1;
        }
    }
}
