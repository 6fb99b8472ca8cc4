//! Alternating forms stored densely over the subset basis `e*_I`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::field::{FieldDescriptor, Scalar, ScalarDoc};
use crate::exact::matrix::{Matrix, Vector};

/// Masks of all `c`-subsets of `{0..n}`, ascending.
fn subset_masks(n: usize, c: usize) -> Vec<u32> {
    assert!(n <= 16, "ambient dimension too large for dense forms");
    (0u32..(1u32 << n))
        .filter(|m| m.count_ones() as usize == c)
        .collect()
}

fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of the shuffle placing `a` before `b`.
fn shuffle_sign(a: u32, b: u32) -> bool {
    let mut inversions = 0u32;
    for i in mask_indices(a) {
        inversions += (b & ((1u32 << i) - 1)).count_ones();
    }
    inversions % 2 == 1
}

/// An element of `Λ^c (R^n)^*`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExteriorForm {
    ambient: usize,
    degree: usize,
    masks: Vec<u32>,
    coeffs: Vec<Scalar>,
}

impl std::fmt::Debug for ExteriorForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                let idx: Vec<String> = mask_indices(m)
                    .iter()
                    .map(|i| format!("e{}", i + 1))
                    .collect();
                format!("{c}*{}", idx.join("^"))
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0[deg {}]", self.degree)
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl ExteriorForm {
    pub fn zero(ambient: usize, degree: usize) -> Self {
        let masks = subset_masks(ambient, degree);
        let coeffs = vec![Scalar::zero(); masks.len()];
        ExteriorForm {
            ambient,
            degree,
            masks,
            coeffs,
        }
    }

    /// The constant 0-form `x`.
    pub fn constant(ambient: usize, x: Scalar) -> Self {
        let mut f = ExteriorForm::zero(ambient, 0);
        f.coeffs[0] = x;
        f
    }

    /// `e*_1 ∧ ... ∧ e*_n`.
    pub fn volume(ambient: usize) -> Self {
        let mut f = ExteriorForm::zero(ambient, ambient);
        f.coeffs[0] = Scalar::one();
        f
    }

    pub fn covector(v: &[Scalar]) -> Self {
        let n = v.len();
        let mut f = ExteriorForm::zero(n, 1);
        for (i, x) in v.iter().enumerate() {
            f.set(1 << i, x.clone());
        }
        f
    }

    /// `u_1 ∧ ... ∧ u_k` for covectors `u_i`.
    pub fn wedge_all(ambient: usize, covectors: &[Vector]) -> Self {
        covectors
            .iter()
            .fold(ExteriorForm::constant(ambient, Scalar::one()), |acc, u| {
                acc.wedge(&ExteriorForm::covector(u)).expect("same ambient")
            })
    }

    /// The form `xi |-> vol(xi_1, ..., xi_{n-m}, o_1, ..., o_m)`.
    pub fn complement_volume(ambient: usize, orientation: &[Vector]) -> Self {
        let m = orientation.len();
        let mut f = ExteriorForm::zero(ambient, ambient - m);
        for k in 0..f.masks.len() {
            let mask = f.masks[k];
            let rest: Vec<usize> = (0..ambient).filter(|i| mask & (1 << i) != 0).collect();
            let parity: usize = rest.iter().enumerate().map(|(t, &j)| j - t).sum();
            let rows: Vec<usize> = (0..ambient).filter(|i| mask & (1 << i) == 0).collect();
            let minor = Matrix::from_rows(
                m,
                rows.iter()
                    .map(|&r| orientation.iter().map(|o| o[r].clone()).collect())
                    .collect(),
            );
            let mut det = if m == 0 {
                Scalar::one()
            } else {
                minor.determinant()
            };
            if parity % 2 == 1 {
                det = -det;
            }
            f.coeffs[k] = det;
        }
        f
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn index(&self, mask: u32) -> Option<usize> {
        self.masks.binary_search(&mask).ok()
    }

    pub fn coeff(&self, mask: u32) -> Scalar {
        self.index(mask)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, mask: u32, x: Scalar) {
        let i = self.index(mask).expect("mask of wrong degree");
        self.coeffs[i] = x;
    }

    /// Nonzero terms as `(subset mask, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.masks
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn check_same(&self, other: &ExteriorForm) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &ExteriorForm) -> Result<ExteriorForm> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (x, y) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *x = &*x + y;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ExteriorForm) -> Result<ExteriorForm> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> ExteriorForm {
        let mut out = self.clone();
        for x in out.coeffs.iter_mut() {
            *x = &*x * s;
        }
        out
    }

    /// Exterior product; forms whose total degree exceeds the ambient
    /// dimension multiply to the zero form of that degree.
    pub fn wedge(&self, other: &ExteriorForm) -> Result<ExteriorForm> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let deg = self.degree + other.degree;
        if deg > self.ambient {
            return Ok(ExteriorForm {
                ambient: self.ambient,
                degree: deg,
                masks: Vec::new(),
                coeffs: Vec::new(),
            });
        }
        let mut out = ExteriorForm::zero(self.ambient, deg);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                if a & b != 0 {
                    continue;
                }
                let mut t = x * y;
                if shuffle_sign(a, b) {
                    t = -t;
                }
                let i = out.index(a | b).expect("degree");
                out.coeffs[i] = &out.coeffs[i] + &t;
            }
        }
        Ok(out)
    }

    /// Value on `degree` vectors.
    pub fn evaluate(&self, vectors: &[Vector]) -> Result<Scalar> {
        if vectors.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: vectors.len(),
            });
        }
        for v in vectors {
            if v.len() != self.ambient {
                return Err(Error::DimensionMismatch {
                    expected: self.ambient,
                    found: v.len(),
                });
            }
        }
        let mut acc = Scalar::zero();
        for (mask, c) in self.terms() {
            let idx = mask_indices(mask);
            let minor = Matrix::from_rows(
                self.degree,
                vectors
                    .iter()
                    .map(|v| idx.iter().map(|&i| v[i].clone()).collect())
                    .collect(),
            );
            let det = if self.degree == 0 {
                Scalar::one()
            } else {
                minor.determinant()
            };
            acc += &(c * &det);
        }
        Ok(acc)
    }

    /// Pull-back along `map` (rows = this form's ambient, cols = new ambient).
    pub fn pullback(&self, map: &Matrix) -> Result<ExteriorForm> {
        if map.rows() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: map.rows(),
            });
        }
        let n = map.cols();
        if self.degree > n {
            return Ok(ExteriorForm {
                ambient: n,
                degree: self.degree,
                masks: Vec::new(),
                coeffs: Vec::new(),
            });
        }
        let mut out = ExteriorForm::zero(n, self.degree);
        for k in 0..out.masks.len() {
            let cols = mask_indices(out.masks[k]);
            let mut acc = Scalar::zero();
            for (mask, c) in self.terms() {
                let rows = mask_indices(mask);
                let minor = Matrix::from_rows(
                    self.degree,
                    rows.iter()
                        .map(|&r| cols.iter().map(|&j| map.get(r, j).clone()).collect())
                        .collect(),
                );
                let det = if self.degree == 0 {
                    Scalar::one()
                } else {
                    minor.determinant()
                };
                acc += &(c * &det);
            }
            out.coeffs[k] = acc;
        }
        Ok(out)
    }

    /// Interior product `ι_v`, inserting `v` as the first argument.
    pub fn contract(&self, v: &[Scalar]) -> ExteriorForm {
        assert_eq!(v.len(), self.ambient);
        if self.degree == 0 {
            return ExteriorForm::zero(self.ambient, 0).scale(&Scalar::zero());
        }
        let mut out = ExteriorForm::zero(self.ambient, self.degree - 1);
        for (mask, c) in self.terms() {
            for (pos, i) in mask_indices(mask).into_iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let mut t = c * &v[i];
                if pos % 2 == 1 {
                    t = -t;
                }
                let j = out.index(mask & !(1 << i)).expect("degree");
                out.coeffs[j] = &out.coeffs[j] + &t;
            }
        }
        out
    }

    /// `self / other` when the two forms are proportional and `other != 0`.
    pub fn ratio_to(&self, other: &ExteriorForm) -> Option<Scalar> {
        if self.ambient != other.ambient || self.degree != other.degree {
            return None;
        }
        let k = other.coeffs.iter().position(|c| !c.is_zero())?;
        let r = &self.coeffs[k] / &other.coeffs[k];
        let proportional = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(x, y)| *x == &r * y);
        proportional.then_some(r)
    }

    /// Wire form: 1-based subset keys such as `"1,2"`.
    pub fn to_doc(&self) -> BTreeMap<String, ScalarDoc> {
        self.terms()
            .map(|(m, c)| {
                let key: Vec<String> = mask_indices(m)
                    .iter()
                    .map(|i| (i + 1).to_string())
                    .collect();
                (key.join(","), ScalarDoc::from_scalar(c))
            })
            .collect()
    }

    pub fn from_doc(
        ambient: usize,
        degree: usize,
        doc: &BTreeMap<String, ScalarDoc>,
        field: FieldDescriptor,
    ) -> Result<Self> {
        let mut f = ExteriorForm::zero(ambient, degree);
        for (key, value) in doc {
            let mut mask = 0u32;
            let mut count = 0;
            for part in key.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let i: usize = part
                    .parse()
                    .map_err(|_| Error::Document(format!("bad weight key {key:?}")))?;
                if i == 0 || i > ambient || mask & (1 << (i - 1)) != 0 {
                    return Err(Error::Document(format!("bad weight key {key:?}")));
                }
                mask |= 1 << (i - 1);
                count += 1;
            }
            if count != degree {
                return Err(Error::Document(format!(
                    "weight key {key:?} has degree {count}, expected {degree}"
                )));
            }
            f.set(mask, value.to_scalar(field)?);
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::{from_ints, unit_vector};

    #[test]
    fn basic_wedges() {
        let e1 = ExteriorForm::covector(&from_ints(&[1, 0]));
        let e2 = ExteriorForm::covector(&from_ints(&[0, 1]));
        let w = e1.wedge(&e2).unwrap();
        let frame = vec![unit_vector(2, 0), unit_vector(2, 1)];
        assert_eq!(w.evaluate(&frame).unwrap(), Scalar::one());
        assert!(e1.wedge(&e1).unwrap().is_zero());
        let s = e1.add(&e2).unwrap().wedge(&e2).unwrap();
        assert_eq!(s.evaluate(&frame).unwrap(), Scalar::one());
    }

    #[test]
    fn graded_anticommutativity() {
        let a = ExteriorForm::covector(&from_ints(&[1, 2, 0]));
        let b = ExteriorForm::covector(&from_ints(&[0, 1, 3]));
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        assert_eq!(ab, ba.scale(&-Scalar::one()));
    }

    #[test]
    fn complement_volume_matches_determinant() {
        // vol(xi, o) with o = e2 in R^2 is -e1*? det[[x1,0],[x2,1]] = x1
        let f = ExteriorForm::complement_volume(2, &[unit_vector(2, 1)]);
        assert_eq!(f, ExteriorForm::covector(&from_ints(&[1, 0])));
        let g = ExteriorForm::complement_volume(2, &[unit_vector(2, 0)]);
        assert_eq!(g, ExteriorForm::covector(&from_ints(&[0, -1])));
        assert_eq!(
            ExteriorForm::complement_volume(3, &[]),
            ExteriorForm::volume(3)
        );
    }

    #[test]
    fn pullback_along_diagonal() {
        // (e1* ∧ e2*) pulled back along R^1 -> R^2 vanishes; e1* + e2* gives 2
        let s = Matrix::from_int_rows(&[&[1], &[1]]);
        let f = ExteriorForm::covector(&from_ints(&[1, 1]));
        assert_eq!(
            f.pullback(&s).unwrap(),
            ExteriorForm::covector(&from_ints(&[2]))
        );
        let v = ExteriorForm::volume(2).pullback(&s).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn contraction_kills_kernel() {
        let w = ExteriorForm::wedge_all(3, &[from_ints(&[1, 0, 0]), from_ints(&[0, 1, 0])]);
        assert!(w.contract(&from_ints(&[0, 0, 5])).is_zero());
        assert_eq!(
            w.contract(&from_ints(&[1, 0, 0])),
            ExteriorForm::covector(&from_ints(&[0, 1, 0]))
        );
    }

    #[test]
    fn doc_round_trip() {
        let w = ExteriorForm::wedge_all(3, &[from_ints(&[1, 2, 0]), from_ints(&[0, 1, 3])]);
        let doc = w.to_doc();
        let back = ExteriorForm::from_doc(3, 2, &doc, FieldDescriptor::Rationals).unwrap();
        assert_eq!(back, w);
    }
}
