use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::field::{FieldDescriptor, Scalar};
use crate::exact::matrix::Vector;
use crate::expsum::{group_basis, Complex, ExpSum, GroupBasis};
use crate::fan::{pullback, TropicalFan};
use crate::polytope::Polytope;

/// How a hypersurface is tropicalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// The codimension-one skeleton of the Newton polytope.
    Direct,
    /// The lattice polytope of the model in `R^q`, pulled back along `s_G`.
    Model,
}

/// An exact value times `(2 pi)^two_pi_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledDensity {
    pub value: Scalar,
    pub two_pi_power: i32,
}

impl ScaledDensity {
    pub fn approx(&self) -> f64 {
        self.value.to_f64() * (2.0 * std::f64::consts::PI).powi(self.two_pi_power)
    }

    pub fn add(&self, other: &ScaledDensity) -> Result<ScaledDensity> {
        if self.two_pi_power != other.two_pi_power {
            return Err(Error::Precondition(
                "densities carry different powers of 2pi".into(),
            ));
        }
        Ok(ScaledDensity {
            value: self.value.try_add(&other.value)?,
            two_pi_power: self.two_pi_power,
        })
    }
}

impl fmt::Display for ScaledDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*(2pi)^({})", self.value, self.two_pi_power)
    }
}

/// Tropicalization of the hypersurface `{f = 0}`.
///
/// The model route needs a group basis covering the exponents of `f`; when
/// `basis` is `None` the group of `f` alone is used.
pub fn hypersurface_trop(
    f: &ExpSum,
    route: Route,
    basis: Option<&GroupBasis>,
    seed: u64,
) -> Result<TropicalFan> {
    let n = f.ambient();
    if f.is_monomial() {
        return Ok(TropicalFan::zero(n, 1));
    }
    match route {
        Route::Direct => Ok(f.newton_polytope()?.skeleton_fan(1)),
        Route::Model => {
            let owned;
            let g = match basis {
                Some(g) => g,
                None => {
                    owned = group_basis(std::slice::from_ref(f))?;
                    &owned
                }
            };
            g.require_spanning()?;
            let q = g.rank();
            let points: Vec<Vector> = f
                .support()
                .iter()
                .map(|e| {
                    Ok(g.coordinates(e)?
                        .into_iter()
                        .map(Scalar::from_bigint)
                        .collect())
                })
                .collect::<Result<_>>()?;
            let model = Polytope::convex_hull(q, &points)?.skeleton_fan(1);
            pullback(&g.winding_map(), &model, seed)
        }
    }
}

/// Stable product of the hypersurface tropicalizations of a system.
pub fn system_trop(fs: &[ExpSum], route: Route, seed: u64) -> Result<TropicalFan> {
    let first = fs
        .first()
        .ok_or_else(|| Error::Precondition("empty system".into()))?;
    let n = first.ambient();
    if fs.len() > n {
        log::warn!(
            "{} equations in dimension {n}: the generic intersection is empty",
            fs.len()
        );
        return Ok(TropicalFan::zero(n, fs.len()));
    }
    let basis = match route {
        Route::Model => Some(group_basis(fs)?),
        Route::Direct => None,
    };
    let mut acc = TropicalFan::whole_space(n, Scalar::one());
    for f in fs {
        if f.ambient() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.ambient(),
            });
        }
        let t = hypersurface_trop(f, route, basis.as_ref(), seed)?;
        acc = acc.stable_product(&t, seed)?;
    }
    Ok(acc)
}

/// Intersection index of `n` hypersurfaces in `C^n`: the origin weight of
/// the stable product, with the factor `(2 pi)^-n`.
pub fn intersection_index(fs: &[ExpSum], seed: u64) -> Result<ScaledDensity> {
    let first = fs
        .first()
        .ok_or_else(|| Error::Precondition("empty system".into()))?;
    let n = first.ambient();
    if fs.len() != n {
        return Err(Error::Precondition(format!(
            "{} hypersurfaces given in dimension {n}; the index needs exactly {n}",
            fs.len()
        )));
    }
    let fan = system_trop(fs, Route::Direct, seed)?;
    Ok(ScaledDensity {
        value: fan.zero_cone_value()?,
        two_pi_power: -(n as i32),
    })
}

/// Weak density of a codimension-`n` system.
pub fn weak_density(fs: &[ExpSum], seed: u64) -> Result<ScaledDensity> {
    intersection_index(fs, seed)
}

/// Smallest field containing every coordinate.
pub fn infer_field(points: &[Vector]) -> FieldDescriptor {
    points
        .iter()
        .flatten()
        .find_map(Scalar::radicand)
        .map(|d| FieldDescriptor::Quadratic { d })
        .unwrap_or(FieldDescriptor::Rationals)
}

/// An exponential sum whose hypersurface tropicalizes to `K_{P,1}`: the
/// vertices of `P` as exponents, all coefficients one.
pub fn realize_fan(p: &Polytope) -> ExpSum {
    let field = infer_field(p.vertices());
    let terms = p
        .vertices()
        .iter()
        .map(|v| (Complex::one(), v.clone()))
        .collect();
    ExpSum::from_terms(p.ambient(), field, terms).expect("vertices lie in their own field")
}
