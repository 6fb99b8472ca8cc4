//! Integer lattices: Hermite normal form, integer kernels, primitive vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::field::{lcm_of_denominators, Scalar};

pub type IntVector = Vec<BigInt>;

fn axpy(row: &mut [BigInt], k: &BigInt, other: &[BigInt]) {
    for (x, y) in row.iter_mut().zip(other) {
        *x -= k * y;
    }
}

/// Row-style Hermite normal form: the nonzero rows form a basis of the
/// lattice generated by `rows`, upper triangular with positive pivots and
/// reduced entries above each pivot.
pub fn hnf(rows: &[IntVector], ncols: usize) -> Vec<IntVector> {
    hnf_with_transform(rows, ncols).0
}

/// As [`hnf`], also returning the unimodular transform `U` with `U * rows`
/// equal to the full reduced matrix (zero rows included, at the bottom).
fn hnf_with_transform(rows: &[IntVector], ncols: usize) -> (Vec<IntVector>, Vec<IntVector>) {
    let m = rows.len();
    let mut a: Vec<IntVector> = rows.to_vec();
    let mut u: Vec<IntVector> = (0..m)
        .map(|i| (0..m).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == m {
            break;
        }
        // gcd-combine everything below into pivot_row
        for r in pivot_row + 1..m {
            if a[r][col].is_zero() {
                continue;
            }
            if a[pivot_row][col].is_zero() {
                a.swap(pivot_row, r);
                u.swap(pivot_row, r);
                continue;
            }
            let x = a[pivot_row][col].clone();
            let y = a[r][col].clone();
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (xg, yg) = (&x / &g, &y / &g);
            let new_p: IntVector = a[pivot_row]
                .iter()
                .zip(&a[r])
                .map(|(p, q)| &s * p + &t * q)
                .collect();
            let new_r: IntVector = a[pivot_row]
                .iter()
                .zip(&a[r])
                .map(|(p, q)| &xg * q - &yg * p)
                .collect();
            a[pivot_row] = new_p;
            a[r] = new_r;
            let up: IntVector = u[pivot_row]
                .iter()
                .zip(&u[r])
                .map(|(p, q)| &s * p + &t * q)
                .collect();
            let ur: IntVector = u[pivot_row]
                .iter()
                .zip(&u[r])
                .map(|(p, q)| &xg * q - &yg * p)
                .collect();
            u[pivot_row] = up;
            u[r] = ur;
        }
        if a[pivot_row][col].is_zero() {
            continue;
        }
        if a[pivot_row][col].is_negative() {
            for x in a[pivot_row].iter_mut().chain(u[pivot_row].iter_mut()) {
                *x = -&*x;
            }
        }
        let p = a[pivot_row][col].clone();
        for r in 0..pivot_row {
            let k = a[r][col].div_floor(&p);
            if !k.is_zero() {
                let (pr, ur) = (a[pivot_row].clone(), u[pivot_row].clone());
                axpy(&mut a[r], &k, &pr);
                axpy(&mut u[r], &k, &ur);
            }
        }
        pivot_row += 1;
    }
    // rows of `u` beyond the rank annihilate the input
    let basis = a.iter().take(pivot_row).cloned().collect();
    (basis, u)
}

/// A Z-basis of `{x in Z^n : row . x = 0 for every row}`.
pub fn integer_kernel(rows: &[IntVector], n: usize) -> Vec<IntVector> {
    if rows.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
    }
    // columns of the constraint matrix, as rows
    let transposed: Vec<IntVector> = (0..n)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    let (basis, u) = hnf_with_transform(&transposed, rows.len());
    let rank = basis.len();
    let kernel: Vec<IntVector> = u.into_iter().skip(rank).collect();
    hnf(&kernel, n)
}

/// Scale a rational vector to a primitive integer vector with the same
/// direction. `None` for the zero vector or irrational entries.
pub fn primitive(v: &[Scalar]) -> Option<IntVector> {
    if v.iter().any(|x| !x.is_rational()) || v.iter().all(Scalar::is_zero) {
        return None;
    }
    let l = lcm_of_denominators(v.iter().map(Scalar::rational_part));
    let ints: IntVector = v
        .iter()
        .map(|x| (x.rational_part() * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.iter().map(|x| x / &g).collect())
}

/// Lattice basis for the Z-span of rational vectors.
pub fn rational_lattice_basis(vectors: &[Vec<BigRational>], n: usize) -> Vec<Vec<BigRational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let l = lcm_of_denominators(vectors.iter().flatten());
    let scale = BigRational::from_integer(l.clone());
    let ints: Vec<IntVector> = vectors
        .iter()
        .map(|v| v.iter().map(|x| (x * &scale).to_integer()).collect())
        .collect();
    hnf(&ints, n)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| BigRational::new(x, l.clone()))
                .collect()
        })
        .collect()
}

pub fn to_scalars(v: &[BigInt]) -> Vec<Scalar> {
    v.iter().map(|x| Scalar::from_bigint(x.clone())).collect()
}

pub fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}
