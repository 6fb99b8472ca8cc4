//! Weighted fans whose weights are alternating forms.
//!
//! A fan is stored as a list of cones of one dimension, each with a scalar
//! coefficient `c`. The weight form of a cone `K` with canonical
//! orientation basis `o` of its span is `W(K) = c * vol(xi.., o)`, so `W`
//! vanishes on the span of `K` by construction. Cones may overlap;
//! [`TropicalFan::normalize`] cuts them into arrangement cells per span and
//! merges coefficients, which makes equality a structural comparison.

mod balance;
mod product;
mod pullback;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

pub use balance::BalanceReport;
pub use pullback::{compatible_kernel_orientation, pullback, pullback_injective_with};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exact::field::{FieldDescriptor, Scalar, ScalarDoc};
use crate::exact::matrix::{dot, normalize_line, Vector};
use crate::exact::ExteriorForm;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedCone {
    pub cone: Cone,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalFan {
    ambient: usize,
    degree: usize,
    cones: Vec<WeightedCone>,
}

/// Hyperplane normals (canonical sign) cutting the given cones inside their
/// common span.
fn arrangement(cones: &[&Cone]) -> Vec<Vector> {
    let mut hs: Vec<Vector> = cones
        .iter()
        .flat_map(|c| c.facets().iter().map(|f| normalize_line(f)))
        .collect();
    hs.sort();
    hs.dedup();
    hs
}

/// Cut `cone` by every hyperplane of the arrangement that crosses it.
pub(crate) fn split_into_cells(cone: &Cone, hyperplanes: &[Vector]) -> Vec<Cone> {
    let mut cells = vec![cone.clone()];
    for h in hyperplanes {
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells {
            let crosses_lineality = cell.lineality().iter().any(|l| !dot(h, l).is_zero());
            let signs: Vec<i8> = cell.rays().iter().map(|r| dot(h, r).signum()).collect();
            let mixed = signs.contains(&1) && signs.contains(&-1);
            if !(crosses_lineality || mixed) {
                next.push(cell);
                continue;
            }
            let neg: Vector = h.iter().map(|x| -x.clone()).collect();
            for side in [h.clone(), neg] {
                let mut ineqs = cell.facets().to_vec();
                ineqs.push(side);
                next.push(Cone::from_hrep(cell.ambient(), &ineqs, cell.equations()));
            }
        }
        cells = next;
    }
    cells
}

/// Group items by cone span, refine each group by its arrangement and add
/// up values cell by cell.
pub(crate) fn accumulate_cells<T: Clone>(
    items: Vec<(Cone, T)>,
    zero: impl Fn(&Cone) -> T,
    add: impl Fn(&T, &T) -> T,
) -> Vec<(Cone, T)> {
    let mut groups: BTreeMap<Vec<Vector>, Vec<(Cone, T)>> = BTreeMap::new();
    for (c, v) in items {
        groups.entry(c.span().to_vec()).or_default().push((c, v));
    }
    let mut out = Vec::new();
    for (_, group) in groups {
        let refs: Vec<&Cone> = group.iter().map(|(c, _)| c).collect();
        let hs = arrangement(&refs);
        let mut cells: HashMap<Cone, T> = HashMap::new();
        let mut order: Vec<Cone> = Vec::new();
        for (c, v) in &group {
            for cell in split_into_cells(c, &hs) {
                match cells.get_mut(&cell) {
                    Some(acc) => *acc = add(acc, v),
                    None => {
                        let start = add(&zero(&cell), v);
                        order.push(cell.clone());
                        cells.insert(cell, start);
                    }
                }
            }
        }
        order.sort();
        for cell in order {
            let v = cells.remove(&cell).expect("present");
            out.push((cell, v));
        }
    }
    out
}

impl TropicalFan {
    /// The fan with no cones, of the given degree (codimension).
    pub fn zero(ambient: usize, degree: usize) -> TropicalFan {
        TropicalFan {
            ambient,
            degree,
            cones: Vec::new(),
        }
    }

    /// The unit: the whole space with coefficient `c`.
    pub fn whole_space(ambient: usize, c: Scalar) -> TropicalFan {
        TropicalFan::from_cones(ambient, 0, vec![(Cone::whole_space(ambient), c)]).expect("pure")
    }

    /// A single linear subspace with coefficient `c`.
    pub fn subspace(ambient: usize, basis: &[Vector], c: Scalar) -> TropicalFan {
        let cone = Cone::subspace(ambient, basis);
        let degree = ambient - cone.dim();
        TropicalFan::from_cones(ambient, degree, vec![(cone, c)]).expect("pure")
    }

    /// Cones of dimension `ambient - degree` with coefficients relative to
    /// their canonical orientations.
    pub fn from_cones(
        ambient: usize,
        degree: usize,
        cones: Vec<(Cone, Scalar)>,
    ) -> Result<TropicalFan> {
        for (c, _) in &cones {
            if c.ambient() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: c.ambient(),
                });
            }
            if degree > ambient || c.dim() != ambient - degree {
                return Err(Error::Precondition(format!(
                    "cone of dimension {} in a fan of degree {degree} in R^{ambient}",
                    c.dim()
                )));
            }
        }
        Ok(TropicalFan {
            ambient,
            degree,
            cones: cones
                .into_iter()
                .filter(|(_, w)| !w.is_zero())
                .map(|(cone, coeff)| WeightedCone { cone, coeff })
                .collect(),
        })
    }

    /// Cones with explicit weight forms; each form must be a multiple of
    /// the cone's orientation form (the kernel condition).
    pub fn from_forms(
        ambient: usize,
        degree: usize,
        cones: Vec<(Cone, ExteriorForm)>,
    ) -> Result<TropicalFan> {
        let mut out = Vec::new();
        for (cone, form) in cones {
            if form.is_zero() {
                continue;
            }
            let reference = ExteriorForm::complement_volume(ambient, cone.span());
            let c = form.ratio_to(&reference).ok_or_else(|| {
                Error::Unbalanced(format!(
                    "weight {form:?} does not vanish on the span of the cone with rays {:?}",
                    cone.rays()
                ))
            })?;
            out.push((cone, c));
        }
        TropicalFan::from_cones(ambient, degree, out)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Codimension of the cones.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension of the cones, or `None` for degree beyond the ambient space.
    pub fn puredim(&self) -> Option<usize> {
        self.ambient.checked_sub(self.degree)
    }

    pub fn cones(&self) -> &[WeightedCone] {
        &self.cones
    }

    pub fn weight_form(&self, i: usize) -> ExteriorForm {
        let wc = &self.cones[i];
        ExteriorForm::complement_volume(self.ambient, wc.cone.span()).scale(&wc.coeff)
    }

    /// Canonical form: cones cut into arrangement cells per span, equal
    /// cells merged, zero cells dropped, cells sorted.
    pub fn normalize(&self) -> TropicalFan {
        let items: Vec<(Cone, Scalar)> = self
            .cones
            .iter()
            .map(|wc| (wc.cone.clone(), wc.coeff.clone()))
            .collect();
        let merged = accumulate_cells(items, |_| Scalar::zero(), |a, b| a + b);
        TropicalFan {
            ambient: self.ambient,
            degree: self.degree,
            cones: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(cone, coeff)| WeightedCone { cone, coeff })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.normalize().cones.is_empty()
    }

    pub fn scale(&self, s: &Scalar) -> TropicalFan {
        TropicalFan {
            ambient: self.ambient,
            degree: self.degree,
            cones: self
                .cones
                .iter()
                .filter(|_| !s.is_zero())
                .map(|wc| WeightedCone {
                    cone: wc.cone.clone(),
                    coeff: &wc.coeff * s,
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> TropicalFan {
        self.scale(&-Scalar::one())
    }

    fn check_compatible(&self, other: &TropicalFan) -> Result<()> {
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

    /// Sum of tropical varieties; the result is normalized.
    pub fn add(&self, other: &TropicalFan) -> Result<TropicalFan> {
        self.check_compatible(other)?;
        let mut cones = self.cones.clone();
        cones.extend(other.cones.iter().cloned());
        Ok(TropicalFan {
            ambient: self.ambient,
            degree: self.degree,
            cones,
        }
        .normalize())
    }

    pub fn sub(&self, other: &TropicalFan) -> Result<TropicalFan> {
        self.add(&other.neg())
    }

    /// Equality of tropical varieties: the difference normalizes to nothing.
    /// Fans of different degree are equal only when both are zero.
    pub fn equals(&self, other: &TropicalFan) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        if self.degree != other.degree {
            return self.is_zero() && other.is_zero();
        }
        self.sub(other).map(|d| d.cones.is_empty()).unwrap_or(false)
    }

    /// Both fans re-expressed on the same cells: the common refinement of
    /// their supports, with zero coefficients where a fan is absent.
    pub fn refine_common(&self, other: &TropicalFan) -> Result<(TropicalFan, TropicalFan)> {
        self.check_compatible(other)?;
        let mut items: Vec<(Cone, (Scalar, Scalar))> = Vec::new();
        for wc in &self.cones {
            items.push((wc.cone.clone(), (wc.coeff.clone(), Scalar::zero())));
        }
        for wc in &other.cones {
            items.push((wc.cone.clone(), (Scalar::zero(), wc.coeff.clone())));
        }
        let cells = accumulate_cells(
            items,
            |_| (Scalar::zero(), Scalar::zero()),
            |a, b| (&a.0 + &b.0, &a.1 + &b.1),
        );
        let build = |pick: fn(&(Scalar, Scalar)) -> Scalar| TropicalFan {
            ambient: self.ambient,
            degree: self.degree,
            cones: cells
                .iter()
                .map(|(cone, w)| WeightedCone {
                    cone: cone.clone(),
                    coeff: pick(w),
                })
                .collect(),
        };
        Ok((build(|w| w.0.clone()), build(|w| w.1.clone())))
    }

    /// For fans of degree equal to the ambient dimension: the weight form
    /// of the origin evaluated on the standard frame.
    pub fn zero_cone_value(&self) -> Result<Scalar> {
        if self.degree != self.ambient {
            return Err(Error::Precondition(format!(
                "fan has degree {}, not {}",
                self.degree, self.ambient
            )));
        }
        Ok(self.cones.iter().map(|wc| wc.coeff.clone()).sum())
    }

    pub fn balance_check(&self) -> BalanceReport {
        balance::balance_check(self)
    }

    pub fn stable_product(&self, other: &TropicalFan, seed: u64) -> Result<TropicalFan> {
        product::stable_product(self, other, seed)
    }

    pub fn to_doc(&self) -> FanDoc {
        let cones = self
            .cones
            .iter()
            .enumerate()
            .map(|(i, wc)| {
                let mut rays: Vec<Vec<ScalarDoc>> = wc
                    .cone
                    .rays()
                    .iter()
                    .map(|r| r.iter().map(ScalarDoc::from_scalar).collect())
                    .collect();
                for l in wc.cone.lineality() {
                    rays.push(l.iter().map(ScalarDoc::from_scalar).collect());
                    rays.push(
                        l.iter()
                            .map(|x| ScalarDoc::from_scalar(&-x.clone()))
                            .collect(),
                    );
                }
                ConeDoc {
                    rays,
                    orient: wc
                        .cone
                        .span()
                        .iter()
                        .map(|o| o.iter().map(ScalarDoc::from_scalar).collect())
                        .collect(),
                    weight: self.weight_form(i).to_doc(),
                }
            })
            .collect();
        FanDoc {
            field: None,
            dim: self.ambient,
            puredim: self.ambient as i64 - self.degree as i64,
            cones,
        }
    }

    pub fn from_doc(doc: &FanDoc, field: FieldDescriptor) -> Result<TropicalFan> {
        let n = doc.dim;
        if doc.puredim > n as i64 {
            return Err(Error::Document(format!(
                "puredim {} exceeds dim {n}",
                doc.puredim
            )));
        }
        let degree = (n as i64 - doc.puredim) as usize;
        let vectors = |rows: &Vec<Vec<ScalarDoc>>| -> Result<Vec<Vector>> {
            rows.iter()
                .map(|r| {
                    if r.len() != n {
                        return Err(Error::DimensionMismatch {
                            expected: n,
                            found: r.len(),
                        });
                    }
                    r.iter().map(|x| x.to_scalar(field)).collect()
                })
                .collect()
        };
        let mut cones = Vec::new();
        for c in &doc.cones {
            let rays = vectors(&c.rays)?;
            let orient = vectors(&c.orient)?;
            let cone = Cone::from_generators(n, &rays, &[]);
            if crate::exact::matrix::span_basis(n, &orient) != cone.span()
                || orient.len() != cone.dim()
            {
                return Err(Error::Document(
                    "orientation does not form a basis of the cone span".into(),
                ));
            }
            let form = ExteriorForm::from_doc(n, degree, &c.weight, field)?;
            let given = ExteriorForm::complement_volume(n, &orient);
            let canonical = ExteriorForm::complement_volume(n, cone.span());
            // same chain, expressed against the canonical orientation
            let flip = given.ratio_to(&canonical).expect("same span").signum();
            let form = if flip < 0 {
                form.scale(&-Scalar::one())
            } else {
                form
            };
            cones.push((cone, form));
        }
        TropicalFan::from_forms(n, degree, cones)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeDoc {
    pub rays: Vec<Vec<ScalarDoc>>,
    pub orient: Vec<Vec<ScalarDoc>>,
    pub weight: BTreeMap<String, ScalarDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FanDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDescriptor>,
    pub dim: usize,
    pub puredim: i64,
    pub cones: Vec<ConeDoc>,
}
