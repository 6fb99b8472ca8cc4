//! Chambers of translates of the winding subspace `L_G` and the zero
//! lattices of codimension-`n` systems.
//!
//! For a system of `n` sums with group basis `l_1..l_q`, the model fan `K`
//! lives in `R^q` and `L_G = s_G(R^n)`. A generic translate `v + L_G` meets
//! the top cones of `K` transversally; each cone met contributes the lattice
//! `{y : <y, mu_j> in 2 pi Z}` where `mu_j = s_G^T m_j` and `m_j` is a
//! Z-basis of the integer covectors vanishing on the cone.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::field::{FieldDescriptor, Scalar, ScalarDoc};
use crate::exact::fm::{feasible_point, Constraint, Relation};
use crate::exact::lattice::{integer_kernel, primitive, to_scalars};
use crate::exact::matrix::{dot, rank_of, span_basis, Matrix, Vector};
use crate::exact::ExteriorForm;
use crate::expsum::{group_basis, ExpSum, GroupBasis, ScaledDensity};
use crate::fan::TropicalFan;
use crate::polytope::Polytope;

const SAMPLE_ATTEMPTS: usize = 64;

/// Proper subspaces of `R^q`, each by a reduced-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceFamily {
    pub ambient: usize,
    pub subspaces: Vec<Vec<Vector>>,
}

impl SubspaceFamily {
    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.subspaces.iter().any(|s| {
            let mut with = s.clone();
            with.push(v.to_vec());
            rank_of(self.ambient, &with) == s.len()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub point: Vector,
    /// Indices into the cones of the model fan.
    pub active: Vec<usize>,
}

/// The lattice `2 pi * span_Z(basis_over_2pi)` in `Im C^n` with a covering
/// multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedLattice {
    pub basis_over_2pi: Vec<Vector>,
    pub multiplicity: u64,
}

impl ShiftedLattice {
    /// `|det|` of the basis (over 2 pi).
    pub fn covolume_over_2pi(&self) -> Scalar {
        crate::exact::matrix::det_columns(&self.basis_over_2pi).abs()
    }

    pub fn to_doc(&self) -> LatticeDoc {
        LatticeDoc {
            basis_over_2pi: self
                .basis_over_2pi
                .iter()
                .map(|b| b.iter().map(ScalarDoc::from_scalar).collect())
                .collect(),
            multiplicity: self.multiplicity,
        }
    }

    pub fn from_doc(doc: &LatticeDoc, field: FieldDescriptor) -> Result<ShiftedLattice> {
        let basis = doc
            .basis_over_2pi
            .iter()
            .map(|b| {
                b.iter()
                    .map(|x| x.to_scalar(field))
                    .collect::<Result<Vector>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if doc.multiplicity == 0 {
            return Err(Error::Document("multiplicity must be positive".into()));
        }
        Ok(ShiftedLattice {
            basis_over_2pi: basis,
            multiplicity: doc.multiplicity,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub basis_over_2pi: Vec<Vec<ScalarDoc>>,
    pub multiplicity: u64,
}

/// A codimension-`n` system in its model space.
#[derive(Clone, Debug)]
pub struct ModelSystem {
    basis: GroupBasis,
    fan: TropicalFan,
}

impl ModelSystem {
    /// Model fan: the stable product in `R^q` of the skeleton fans of the
    /// lattice Newton polytopes.
    pub fn new(fs: &[ExpSum], seed: u64) -> Result<ModelSystem> {
        let basis = group_basis(fs)?;
        let n = basis.ambient();
        if fs.len() != n {
            return Err(Error::Precondition(format!(
                "zero lattices need {n} equations in dimension {n}, got {}",
                fs.len()
            )));
        }
        let q = basis.rank();
        let mut fan = TropicalFan::whole_space(q, Scalar::one());
        for f in fs {
            let pts: Vec<Vector> = f
                .support()
                .iter()
                .map(|e| Ok(to_scalars(&basis.coordinates(e)?)))
                .collect::<Result<_>>()?;
            let t = Polytope::convex_hull(q, &pts)?.skeleton_fan(1);
            fan = fan.stable_product(&t, seed)?;
        }
        Ok(ModelSystem {
            basis,
            fan: fan.normalize(),
        })
    }

    pub fn basis(&self) -> &GroupBasis {
        &self.basis
    }

    pub fn fan(&self) -> &TropicalFan {
        &self.fan
    }

    /// Basis of `L_G`, the columns of `s_G`.
    pub fn winding_subspace(&self) -> Vec<Vector> {
        span_basis(self.basis.rank(), &self.basis.winding_matrix().columns())
    }

    pub fn nontransversal_loci(&self) -> SubspaceFamily {
        nontransversal_loci(&self.fan, &self.winding_subspace())
    }

    pub fn sample_chamber(&self, family: &SubspaceFamily, seed: u64) -> Result<Chamber> {
        sample_chamber(family, &self.fan, &self.basis.winding_matrix(), seed)
    }

    pub fn zero_lattices(&self, chamber: &Chamber) -> Result<Vec<ShiftedLattice>> {
        zero_lattices(&self.basis, &self.fan, chamber)
    }

    /// Density of the zero lattices met from `chamber`.
    pub fn density(&self, chamber: &Chamber) -> Result<ScaledDensity> {
        density_sum(self.basis.ambient(), &self.zero_lattices(chamber)?)
    }
}

/// Subspaces `V_K + L_G` that are proper, for every cone `K` and every
/// facet of every cone. Translates off their union meet the fan
/// transversally and avoid its lower-dimensional skeleton.
pub fn nontransversal_loci(fan: &TropicalFan, l_g: &[Vector]) -> SubspaceFamily {
    let q = fan.ambient();
    let mut spans: Vec<Vec<Vector>> = Vec::new();
    for wc in fan.cones() {
        spans.push(wc.cone.span().to_vec());
        for (_, face) in wc.cone.facet_faces() {
            spans.push(face.span().to_vec());
        }
    }
    let mut subspaces: Vec<Vec<Vector>> = spans
        .into_iter()
        .map(|mut s| {
            s.extend(l_g.iter().cloned());
            span_basis(q, &s)
        })
        .filter(|s| s.len() < q)
        .collect();
    subspaces.sort();
    subspaces.dedup();
    SubspaceFamily {
        ambient: q,
        subspaces,
    }
}

/// Seeded point off the family, with the cones whose relative interior
/// meets `v + L_G`.
pub fn sample_chamber(
    family: &SubspaceFamily,
    fan: &TropicalFan,
    winding: &Matrix,
    seed: u64,
) -> Result<Chamber> {
    let q = family.ambient;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut point = None;
    for attempt in 0..SAMPLE_ATTEMPTS {
        let bound = 100i64 << attempt.min(20);
        let v: Vector = (0..q)
            .map(|_| Scalar::from_int(rng.gen_range(-bound..=bound)))
            .collect();
        if !family.contains(&v) {
            point = Some(v);
            break;
        }
    }
    let v = point.ok_or(Error::GenericityExhausted(SAMPLE_ATTEMPTS))?;
    let n = winding.cols();
    let mut active = Vec::new();
    for (i, wc) in fan.cones().iter().enumerate() {
        // x = v + S t must satisfy the cone's equations and strict facets
        let row = |a: &Vector| -> (Vector, Scalar) { (winding.transpose_mul_vec(a), -dot(a, &v)) };
        let mut cs = Vec::new();
        for e in wc.cone.equations() {
            let (a, b) = row(e);
            cs.push(Constraint::new(a, Relation::Equals, b));
        }
        for f in wc.cone.facets() {
            let (a, b) = row(f);
            cs.push(Constraint::new(a, Relation::Exceeds, b));
        }
        if feasible_point(n, &cs).is_some() {
            active.push(i);
        }
    }
    Ok(Chamber { point: v, active })
}

/// One lattice per active cone, with multiplicity the cone weight measured
/// against the primitive form `m_1 ^ ... ^ m_n`.
pub fn zero_lattices(
    basis: &GroupBasis,
    fan: &TropicalFan,
    chamber: &Chamber,
) -> Result<Vec<ShiftedLattice>> {
    let q = fan.ambient();
    let n = basis.ambient();
    let s = basis.winding_matrix();
    let mut out = Vec::new();
    for &i in &chamber.active {
        let wc = fan.cones().get(i).ok_or_else(|| {
            Error::Precondition("chamber refers to a missing cone; resample".into())
        })?;
        let mut joint = wc.cone.span().to_vec();
        joint.extend(s.columns());
        if rank_of(q, &joint) != q {
            return Err(Error::Precondition(
                "stale chamber: a met cone is not transversal; resample".into(),
            ));
        }
        let ints: Vec<Vec<BigInt>> = wc
            .cone
            .span()
            .iter()
            .map(|b| {
                primitive(b).ok_or_else(|| Error::Precondition("model fan is not rational".into()))
            })
            .collect::<Result<_>>()?;
        let m: Vec<Vector> = integer_kernel(&ints, q)
            .iter()
            .map(|r| to_scalars(r))
            .collect();
        if m.len() != n {
            return Err(Error::Precondition(format!(
                "cone of codimension {} in a degree-{n} system",
                m.len()
            )));
        }
        let mu: Vec<Vector> = m.iter().map(|mj| s.transpose_mul_vec(mj)).collect();
        let inv = Matrix::from_rows(n, mu).inverse()?;
        let primitive_form = ExteriorForm::wedge_all(q, &m);
        let ratio = fan
            .weight_form(i)
            .ratio_to(&primitive_form)
            .ok_or_else(|| {
                Error::Precondition("weight is not a multiple of the lattice form".into())
            })?;
        let mult = if wc.coeff.is_negative() {
            -ratio.abs()
        } else {
            ratio.abs()
        };
        let mult = mult
            .to_bigint()
            .filter(|k| *k >= BigInt::one())
            .and_then(|k| k.to_u64())
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "cone weight {mult} is not a positive integer multiplicity"
                ))
            })?;
        out.push(ShiftedLattice {
            basis_over_2pi: inv.columns(),
            multiplicity: mult,
        });
    }
    out.sort_by(|a, b| {
        (&a.basis_over_2pi, a.multiplicity).cmp(&(&b.basis_over_2pi, b.multiplicity))
    });
    Ok(out)
}

/// `sum multiplicity / covolume` for lattices in `R^n`, with covolumes
/// measured in units of 2 pi.
pub fn density_sum(n: usize, lattices: &[ShiftedLattice]) -> Result<ScaledDensity> {
    let mut total = Scalar::zero();
    for l in lattices {
        if l.basis_over_2pi.len() != n || rank_of(n, &l.basis_over_2pi) != n {
            return Err(Error::Precondition(
                "lattice basis is rank deficient".into(),
            ));
        }
        let k = Scalar::from_int(l.multiplicity as i64);
        total = total.try_add(&k.try_div(&l.covolume_over_2pi())?)?;
    }
    Ok(ScaledDensity {
        value: total,
        two_pi_power: -(n as i32),
    })
}
