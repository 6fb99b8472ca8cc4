use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::field::{FieldDescriptor, Scalar};
use crate::exact::lattice::rational_lattice_basis;
use crate::exact::matrix::{annihilator, rank_of, LinearMap, LinearSolution, Matrix, Vector};
use crate::expsum::ExpSum;

/// A Z-basis `l_1..l_q` of the group generated by exponents, and the
/// winding map `s_G : R^n -> R^q` whose rows are the `l_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupBasis {
    ambient: usize,
    field: FieldDescriptor,
    basis: Vec<Vector>,
    /// Basis rows in Q-coordinates, kept for solving.
    rational: Vec<Vec<BigRational>>,
}

fn q_coords(v: &[Scalar], field: FieldDescriptor) -> Vec<BigRational> {
    v.iter().flat_map(|x| x.q_coordinates(field)).collect()
}

fn from_q_coords(c: &[BigRational], field: FieldDescriptor, n: usize) -> Vector {
    let k = field.degree();
    (0..n)
        .map(|j| Scalar::from_q_coordinates(&c[j * k..(j + 1) * k], field))
        .collect()
}

impl GroupBasis {
    /// Basis of the group generated by `generators` (no spanning check).
    pub fn from_generators(
        ambient: usize,
        field: FieldDescriptor,
        generators: &[Vector],
    ) -> GroupBasis {
        let width = ambient * field.degree();
        let coords: Vec<Vec<BigRational>> = generators.iter().map(|g| q_coords(g, field)).collect();
        let rational = rational_lattice_basis(&coords, width);
        let basis = rational
            .iter()
            .map(|r| from_q_coords(r, field, ambient))
            .collect();
        GroupBasis {
            ambient,
            field,
            basis,
            rational,
        }
    }

    /// A larger group `H`: this one plus extra generators.
    pub fn with_extra(&self, extra: &[Vector]) -> GroupBasis {
        let mut gens = self.basis.clone();
        gens.extend(extra.iter().cloned());
        GroupBasis::from_generators(self.ambient, self.field, &gens)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Matrix of `s_G` (rows `l_i`).
    pub fn winding_matrix(&self) -> Matrix {
        Matrix::from_rows(self.ambient, self.basis.clone())
    }

    pub fn winding_map(&self) -> LinearMap {
        LinearMap::new(self.winding_matrix())
    }

    /// Whether the basis spans `R^n*`, i.e. `s_G` is injective.
    pub fn spans(&self) -> bool {
        rank_of(self.ambient, &self.basis) == self.ambient
    }

    /// Directions in `R^n` on which every exponent vanishes.
    pub fn deficient_directions(&self) -> Vec<Vector> {
        annihilator(self.ambient, &self.basis)
    }

    pub fn require_spanning(&self) -> Result<()> {
        if self.spans() {
            return Ok(());
        }
        Err(Error::NonSpanning(
            self.deficient_directions()
                .iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect())
                .collect(),
        ))
    }

    /// Integer coordinates of a group element in this basis.
    pub fn coordinates(&self, exponent: &[Scalar]) -> Result<Vec<BigInt>> {
        if exponent.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: exponent.len(),
            });
        }
        let target: Vector = q_coords(exponent, self.field)
            .into_iter()
            .map(Scalar::rational)
            .collect();
        let outside = || Error::Precondition(format!("{exponent:?} is not in the group"));
        if self.rational.is_empty() {
            return if target.iter().all(Scalar::is_zero) {
                Ok(Vec::new())
            } else {
                Err(outside())
            };
        }
        let width = target.len();
        let cols: Vec<Vector> = self
            .rational
            .iter()
            .map(|r| r.iter().cloned().map(Scalar::rational).collect())
            .collect();
        let m = Matrix::from_columns(width, &cols);
        let x = match m.solve(&target) {
            Ok(LinearSolution::Unique(x)) => x,
            _ => return Err(outside()),
        };
        x.iter()
            .map(|c| c.to_bigint().ok_or_else(outside))
            .collect()
    }
}

/// Group basis for the exponents of all sums; the exponents must span.
pub fn group_basis(fs: &[ExpSum]) -> Result<GroupBasis> {
    let first = fs
        .first()
        .ok_or_else(|| Error::Precondition("no exponential sums given".into()))?;
    let (n, field) = (first.ambient(), first.field());
    for f in fs {
        if f.ambient() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.ambient(),
            });
        }
    }
    let gens: Vec<Vector> = fs.iter().flat_map(|f| f.support()).collect();
    let g = GroupBasis::from_generators(n, field, &gens);
    g.require_spanning()?;
    Ok(g)
}
