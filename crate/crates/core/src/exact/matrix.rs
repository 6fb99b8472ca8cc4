//! Dense exact linear algebra over [`Scalar`].

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::field::Scalar;

/// Coordinates of a vector in `R^n` or of a covector in `(R^n)^*`; which one is
/// meant is fixed by context (fans live in the primal space, polytopes in the dual).
pub type Vector = Vec<Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Scalar], s: &Scalar) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vector(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn from_ints(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| Scalar::from_int(x)).collect()
}

/// Scales `v` so that its first nonzero coordinate is `1` or `-1`.
pub fn normalize_direction(v: &[Scalar]) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(lead) => {
            let s = lead.abs().recip().expect("nonzero");
            scale(v, &s)
        }
    }
}

/// Scales `v` so that its first nonzero coordinate is exactly `1`.
pub fn normalize_line(v: &[Scalar]) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(lead) => {
            let s = lead.recip().expect("nonzero");
            scale(v, &s)
        }
    }
}

/// A dense matrix with `rows x cols` exact entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vector>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.data).finish()
    }
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

/// Solution set of `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    Unique(Vector),
    Family {
        particular: Vector,
        kernel: Vec<Vector>,
    },
}

impl Matrix {
    pub fn from_rows(cols: usize, data: Vec<Vector>) -> Self {
        for r in &data {
            assert_eq!(r.len(), cols, "ragged matrix");
        }
        Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| from_ints(r)).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        let data = (0..rows)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Matrix::from_rows(cols.len(), data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_rows(cols, vec![zero_vector(cols); rows])
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_rows(n, (0..n).map(|i| unit_vector(n, i)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &Vector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[Vector] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vector {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i][j] = x;
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_rows(self.rows, self.columns())
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols);
        self.data.iter().map(|r| dot(r, v)).collect()
    }

    /// `v^T A`, i.e. the adjoint applied to a covector.
    pub fn transpose_mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                let mut acc = Scalar::zero();
                for i in 0..self.rows {
                    if !v[i].is_zero() && !self.data[i][j].is_zero() {
                        acc += &(&v[i] * &self.data[i][j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let cols = other.columns();
        let data = self
            .data
            .iter()
            .map(|r| cols.iter().map(|c| dot(r, c)).collect())
            .collect();
        Matrix::from_rows(other.cols, data)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| is_zero_vector(r))
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> Echelon {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip().expect("nonzero pivot");
            if !inv.is_one_value() {
                for x in m[r].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            reduced: Matrix::from_rows(self.cols, m),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, one vector per free column (reduced-echelon basis).
    pub fn kernel(&self) -> Vec<Vector> {
        let e = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zero_vector(self.cols);
                v[f] = Scalar::one();
                for (row, &p) in e.pivots.iter().enumerate() {
                    v[p] = -e.reduced.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Canonical basis of the row space (nonzero rows of the RREF).
    pub fn row_space(&self) -> Vec<Vector> {
        let e = self.rref();
        e.reduced.data[..e.pivots.len()].to_vec()
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det = &det * &m[c][c];
            let inv = m[c][c].recip().expect("nonzero pivot");
            for i in (c + 1)..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = &m[i][c] * &inv;
                for j in c..n {
                    if !m[c][j].is_zero() {
                        let t = &f * &m[c][j];
                        m[i][j] = &m[i][j] - &t;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug: Vec<Vector> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend(unit_vector(n, i));
                row
            })
            .collect();
        let e = Matrix::from_rows(2 * n, aug).rref();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return Err(Error::Precondition("matrix is singular".into()));
        }
        let data = e.reduced.data.iter().map(|r| r[n..].to_vec()).collect();
        Ok(Matrix::from_rows(n, data))
    }

    /// Solves `A x = b` exactly.
    pub fn solve(&self, b: &[Scalar]) -> Result<LinearSolution> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let aug: Vec<Vector> = self
            .data
            .iter()
            .zip(b)
            .map(|(r, x)| {
                let mut row = r.clone();
                row.push(x.clone());
                row
            })
            .collect();
        let e = Matrix::from_rows(self.cols + 1, aug).rref();
        if e.pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = zero_vector(self.cols);
        for (row, &p) in e.pivots.iter().enumerate() {
            x[p] = e.reduced.get(row, self.cols).clone();
        }
        let kernel = self.kernel();
        if kernel.is_empty() {
            Ok(LinearSolution::Unique(x))
        } else {
            Ok(LinearSolution::Family {
                particular: x,
                kernel,
            })
        }
    }
}

impl Scalar {
    pub(crate) fn is_one_value(&self) -> bool {
        *self == Scalar::one()
    }
}

/// Canonical (reduced-echelon) basis of the span of `vectors` in `R^n`.
pub fn span_basis(n: usize, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    Matrix::from_rows(n, vectors.to_vec()).row_space()
}

pub fn rank_of(n: usize, vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(n, vectors.to_vec()).rank()
}

/// Basis of the annihilator `{x : <v, x> = 0 for all v}`.
pub fn annihilator(n: usize, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return (0..n).map(|i| unit_vector(n, i)).collect();
    }
    Matrix::from_rows(n, vectors.to_vec()).kernel()
}

/// Standard unit vectors completing a reduced-echelon basis to a basis of `R^n`.
pub fn standard_complement(n: usize, basis: &[Vector]) -> Vec<Vector> {
    let pivots = if basis.is_empty() {
        Vec::new()
    } else {
        Matrix::from_rows(n, basis.to_vec()).rref().pivots
    };
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|c| unit_vector(n, c))
        .collect()
}

/// Vectors from `candidates` that extend `base` to a basis of their joint span.
pub fn extend_basis(n: usize, base: &[Vector], candidates: &[Vector]) -> Vec<Vector> {
    let mut current = base.to_vec();
    let mut rank = rank_of(n, &current);
    let mut out = Vec::new();
    for c in candidates {
        current.push(c.clone());
        let r = rank_of(n, &current);
        if r > rank {
            rank = r;
            out.push(c.clone());
        } else {
            current.pop();
        }
    }
    out
}

/// Orthogonal projection of `x` onto the complement of `span(basis)`.
pub fn project_out(x: &[Scalar], basis: &[Vector]) -> Vector {
    if basis.is_empty() {
        return x.to_vec();
    }
    let k = basis.len();
    let gram = Matrix::from_rows(
        k,
        basis
            .iter()
            .map(|b| basis.iter().map(|c| dot(b, c)).collect())
            .collect(),
    );
    let rhs: Vector = basis.iter().map(|b| dot(b, x)).collect();
    let coeffs = match gram.solve(&rhs).expect("gram system") {
        LinearSolution::Unique(c) => c,
        LinearSolution::Family { particular, .. } => particular,
    };
    let mut out = x.to_vec();
    for (c, b) in coeffs.iter().zip(basis) {
        if !c.is_zero() {
            out = sub(&out, &scale(b, c));
        }
    }
    out
}

/// Determinant of the square matrix whose columns are `cols`.
pub fn det_columns(cols: &[Vector]) -> Scalar {
    let n = cols.len();
    if n == 0 {
        return Scalar::one();
    }
    Matrix::from_columns(n, cols).determinant()
}

/// A linear map `R^source -> R^target` with an optional fixed kernel orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    matrix: Matrix,
    kernel_orientation: Option<Vec<Vector>>,
}

impl LinearMap {
    /// `matrix` has `target` rows and `source` columns.
    pub fn new(matrix: Matrix) -> Self {
        LinearMap {
            matrix,
            kernel_orientation: None,
        }
    }

    pub fn with_kernel_orientation(mut self, basis: Vec<Vector>) -> Result<Self> {
        let kernel = self.matrix.kernel();
        if basis.len() != kernel.len() {
            return Err(Error::Precondition(
                "kernel orientation must have one vector per kernel dimension".into(),
            ));
        }
        for v in &basis {
            if v.len() != self.source_dim() || !is_zero_vector(&self.matrix.mul_vec(v)) {
                return Err(Error::Precondition(
                    "kernel orientation vector is not in the kernel".into(),
                ));
            }
        }
        if rank_of(self.source_dim(), &basis) != kernel.len() {
            return Err(Error::Precondition(
                "kernel orientation vectors are dependent".into(),
            ));
        }
        self.kernel_orientation = Some(basis);
        Ok(self)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target_dim()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_dim()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v)
    }

    /// The adjoint `s'` on covectors: `lambda |-> lambda o s`.
    pub fn adjoint(&self, covector: &[Scalar]) -> Vector {
        self.matrix.transpose_mul_vec(covector)
    }

    pub fn kernel_orientation(&self) -> Option<&[Vector]> {
        self.kernel_orientation.as_deref()
    }

    /// Kernel basis: the supplied orientation, else the reduced-echelon basis.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        self.kernel_orientation
            .clone()
            .unwrap_or_else(|| self.matrix.kernel())
    }

    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.mul(&inner.matrix))
    }
}

/// Exact solution of `map(x) = target`; inconsistency is an error distinct from
/// underdetermination, which is reported as a [`LinearSolution::Family`].
pub fn solve_linear(map: &LinearMap, target: &[Scalar]) -> Result<LinearSolution> {
    map.matrix.solve(target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solve() {
        let m = LinearMap::new(Matrix::identity(3));
        let t = from_ints(&[1, -2, 5]);
        assert_eq!(solve_linear(&m, &t).unwrap(), LinearSolution::Unique(t));
    }

    #[test]
    fn projection_kernel() {
        let m = LinearMap::new(Matrix::from_int_rows(&[&[1, 0]]));
        match solve_linear(&m, &from_ints(&[0])).unwrap() {
            LinearSolution::Family { kernel, .. } => {
                assert_eq!(kernel, vec![from_ints(&[0, 1])])
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn quadratic_kernel() {
        let m = Matrix::from_rows(2, vec![vec![Scalar::one(), Scalar::sqrt(2)]]);
        let k = m.kernel();
        assert_eq!(k, vec![vec![-Scalar::sqrt(2), Scalar::one()]]);
    }

    #[test]
    fn inconsistent_is_distinct() {
        let m = Matrix::from_int_rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(m.solve(&from_ints(&[1, 3])), Err(Error::Inconsistent));
        assert!(matches!(
            m.solve(&from_ints(&[1, 2])).unwrap(),
            LinearSolution::Family { .. }
        ));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_rows(
            2,
            vec![
                vec![Scalar::one(), Scalar::zero()],
                vec![Scalar::sqrt(2), Scalar::one()],
            ],
        );
        assert_eq!(m.determinant(), Scalar::one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let singular = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.determinant(), Scalar::zero());
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn projection_is_orthogonal() {
        let b = vec![from_ints(&[1, 1, 0])];
        let p = project_out(&from_ints(&[2, 0, 3]), &b);
        assert_eq!(p, from_ints(&[1, -1, 3]));
        assert!(dot(&p, &b[0]).is_zero());
    }
}
