//! Shared generators and independent oracles for the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quasitrop::exact::matrix::from_ints;
use quasitrop::expsum::{Complex, ExpSum};
use quasitrop::polytope::Polytope;
use quasitrop::{FieldDescriptor, LinearMap, Matrix, Scalar, Vector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int_points(rng: &mut ChaCha8Rng, n: usize, count: usize, range: i64) -> Vec<Vec<i64>> {
    (0..count)
        .map(|_| (0..n).map(|_| rng.gen_range(0..=range)).collect())
        .collect()
}

pub fn polytope_of(n: usize, pts: &[Vec<i64>]) -> Polytope {
    let vs: Vec<Vector> = pts.iter().map(|p| from_ints(p)).collect();
    Polytope::convex_hull(n, &vs).unwrap()
}

pub fn random_polytope(rng: &mut ChaCha8Rng, n: usize) -> Polytope {
    let count = rng.gen_range(2..=n + 2);
    polytope_of(n, &int_points(rng, n, count, 2))
}

/// Integer matrix with `rows x cols` entries in `-2..=2` of full rank.
pub fn random_full_rank(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    loop {
        let data: Vec<Vector> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| Scalar::from_int(rng.gen_range(-2..=2)))
                    .collect()
            })
            .collect();
        let m = Matrix::from_rows(cols, data);
        if m.rank() == rows.min(cols) {
            return m;
        }
    }
}

pub fn random_map(rng: &mut ChaCha8Rng, target: usize, source: usize) -> LinearMap {
    LinearMap::new(random_full_rank(rng, target, source))
}

/// A sum with one unit coefficient per exponent.
pub fn sum_with_support(n: usize, field: FieldDescriptor, support: &[Vector]) -> ExpSum {
    let terms = support
        .iter()
        .map(|e| (Complex::one(), e.clone()))
        .collect();
    ExpSum::from_terms(n, field, terms).unwrap()
}

fn q(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

// ---- independent volume oracle on integer points ----

fn cross2(o: &[i128], a: &[i128], b: &[i128]) -> i128 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Twice the area of the convex hull (monotone chain + shoelace).
fn twice_area(points: &BTreeSet<Vec<i128>>) -> i128 {
    let pts: Vec<&Vec<i128>> = points.iter().collect();
    if pts.len() < 3 {
        return 0;
    }
    let mut hull: Vec<&Vec<i128>> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &&Vec<i128>>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while hull.len() >= start + 2
                && cross2(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    let mut s = 0;
    for i in 0..hull.len() {
        let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
        s += a[0] * b[1] - a[1] * b[0];
    }
    s.abs()
}

/// Six times the volume, from brute-force supporting planes.
fn six_volume(points: &BTreeSet<Vec<i128>>) -> i128 {
    let pts: Vec<&Vec<i128>> = points.iter().collect();
    let sub = |a: &[i128], b: &[i128]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let dot = |a: &[i128], b: &[i128]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let p0 = pts[0];
    let mut planes = BTreeSet::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let (u, v) = (sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                let mut nrm = [
                    u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0],
                ];
                if nrm == [0, 0, 0] {
                    continue;
                }
                let c = dot(&nrm, pts[i]);
                let side: Vec<i128> = pts.iter().map(|p| dot(&nrm, p) - c).collect();
                if side.iter().all(|&s| s <= 0) {
                } else if side.iter().all(|&s| s >= 0) {
                    nrm = [-nrm[0], -nrm[1], -nrm[2]];
                } else {
                    continue;
                }
                let g = nrm.iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
                planes.insert([nrm[0] / g, nrm[1] / g, nrm[2] / g]);
            }
        }
    }
    // 6 vol = sum over facets of 2 * height * area, with the area
    // measured in a coordinate projection and rescaled
    let mut total = q(0);
    for nrm in planes {
        let c = pts.iter().map(|p| dot(&nrm, p)).max().unwrap();
        let on: Vec<&&Vec<i128>> = pts.iter().filter(|p| dot(&nrm, p) == c).collect();
        let k = (0..3).max_by_key(|&i| nrm[i].abs()).unwrap();
        let proj: BTreeSet<Vec<i128>> = on
            .iter()
            .map(|p| (0..3).filter(|&i| i != k).map(|i| p[i]).collect())
            .collect();
        let height = c - dot(&nrm, p0);
        total += q(height * twice_area(&proj)) / q(nrm[k].abs());
    }
    assert!(total.is_integer());
    total.to_integer().try_into().unwrap()
}

/// `n! * vol` of the hull of integer points, `n <= 3`.
fn factorial_volume(n: usize, points: &BTreeSet<Vec<i128>>) -> i128 {
    match n {
        1 => {
            let xs: Vec<i128> = points.iter().map(|p| p[0]).collect();
            xs.iter().max().unwrap() - xs.iter().min().unwrap()
        }
        2 => twice_area(points),
        3 => {
            let affine_dim = {
                let base = points.iter().next().unwrap();
                let rows: Vec<Vector> = points
                    .iter()
                    .map(|p| {
                        p.iter()
                            .zip(base)
                            .map(|(a, b)| Scalar::from_int((a - b) as i64))
                            .collect()
                    })
                    .collect();
                quasitrop::exact::matrix::rank_of(3, &rows)
            };
            if affine_dim < 3 {
                0
            } else {
                six_volume(points)
            }
        }
        _ => panic!("oracle covers n <= 3"),
    }
}

/// `n! * V(P_1..P_n)` of integer point sets by polarization over subsets.
pub fn oracle_normalized_mixed_volume(n: usize, sets: &[Vec<Vec<i64>>]) -> BigRational {
    assert_eq!(sets.len(), n);
    let mut total = 0i128;
    for mask in 1usize..(1 << n) {
        let mut sum: BTreeSet<Vec<i128>> = [vec![0i128; n]].into_iter().collect();
        for (i, set) in sets.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = sum
                    .iter()
                    .flat_map(|a| {
                        set.iter()
                            .map(move |b| a.iter().zip(b).map(|(x, y)| x + *y as i128).collect())
                    })
                    .collect();
            }
        }
        let v = factorial_volume(n, &sum);
        if (n - mask.count_ones() as usize) % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    // n! V = sum (-1)^(n-|S|) vol(P_S) = sum (-1)^(n-|S|) (n! vol) / n!
    let fact: i128 = (1..=n as i128).product();
    q(total) / q(fact)
}
