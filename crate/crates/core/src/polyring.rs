//! Formal polynomial classes in polytopes, paired by mixed volume.
//!
//! A degree-`k` class is a rational combination of unordered `k`-tuples of
//! polytopes. Two classes are equal in the ring when every complementary
//! probe pairs to the same value; the pairing is nondegenerate, so a probe
//! family spanning the relevant degree decides equality.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::field::{format_rational, parse_rational, FieldDescriptor, Scalar};
use crate::fan::TropicalFan;
use crate::polytope::{mixed_volume, Polytope, PolytopeDoc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeClass {
    ambient: usize,
    degree: usize,
    /// Sorted monomials with nonzero coefficients.
    terms: BTreeMap<Vec<Polytope>, BigRational>,
}

/// Outcome of a probe-relative zero test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroVerdict {
    /// `witness` pairs with the class to the nonzero `pairing`.
    Nonzero {
        witness: PolytopeClass,
        pairing: Scalar,
    },
    /// Every one of `probes` pairs to zero.
    ZeroRelativeToProbes { probes: usize },
}

impl ZeroVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, ZeroVerdict::ZeroRelativeToProbes { .. })
    }
}

impl PolytopeClass {
    pub fn zero(ambient: usize, degree: usize) -> PolytopeClass {
        PolytopeClass {
            ambient,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The degree-zero class `r`.
    pub fn constant(ambient: usize, r: BigRational) -> PolytopeClass {
        PolytopeClass::monomial_with(ambient, Vec::new(), r)
    }

    pub fn polytope(p: &Polytope) -> PolytopeClass {
        PolytopeClass::monomial_with(p.ambient(), vec![p.clone()], BigRational::one())
    }

    pub fn monomial(ambient: usize, factors: Vec<Polytope>) -> Result<PolytopeClass> {
        for p in &factors {
            if p.ambient() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: p.ambient(),
                });
            }
        }
        Ok(PolytopeClass::monomial_with(
            ambient,
            factors,
            BigRational::one(),
        ))
    }

    fn monomial_with(ambient: usize, mut factors: Vec<Polytope>, c: BigRational) -> PolytopeClass {
        let mut out = PolytopeClass::zero(ambient, factors.len());
        if factors.len() <= ambient && !c.is_zero() {
            factors.sort();
            out.terms.insert(factors, c);
        }
        out
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Polytope], &BigRational)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    /// Formally zero: no surviving terms.
    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, other: &PolytopeClass) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    fn accumulate(&mut self, monomial: Vec<Polytope>, c: BigRational) {
        let slot = self.terms.entry(monomial).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &PolytopeClass) -> Result<PolytopeClass> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::Precondition(format!(
                "cannot add classes of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, r: &BigRational) -> PolytopeClass {
        let mut out = PolytopeClass::zero(self.ambient, self.degree);
        if !r.is_zero() {
            out.terms = self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect();
        }
        out
    }

    pub fn sub(&self, other: &PolytopeClass) -> Result<PolytopeClass> {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Product in the symmetric algebra; vanishes above the ambient dimension.
    pub fn multiply(&self, other: &PolytopeClass) -> Result<PolytopeClass> {
        self.check_compatible(other)?;
        let mut out = PolytopeClass::zero(self.ambient, self.degree + other.degree);
        if out.degree > self.ambient {
            return Ok(out);
        }
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut m: Vec<Polytope> = a.iter().chain(b).cloned().collect();
                m.sort();
                out.accumulate(m, ca * cb);
            }
        }
        Ok(out)
    }

    /// Mixed-volume evaluation of a top-degree class.
    pub fn top_pairing(&self) -> Result<Scalar> {
        if self.degree != self.ambient {
            return Err(Error::Precondition(format!(
                "pairing needs degree {}, class has degree {}",
                self.ambient, self.degree
            )));
        }
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            total = total.try_add(&mixed_volume(m)?.try_mul(&Scalar::rational(c.clone()))?)?;
        }
        Ok(total)
    }

    pub fn pair(&self, other: &PolytopeClass) -> Result<Scalar> {
        if self.degree + other.degree != self.ambient {
            return Err(Error::Precondition(format!(
                "degrees {} and {} are not complementary in dimension {}",
                self.degree, other.degree, self.ambient
            )));
        }
        self.multiply(other)?.top_pairing()
    }

    /// Zero test against complementary-degree probes; the first probe with a
    /// nonzero pairing is returned as a witness.
    pub fn is_zero_class(&self, probes: &[PolytopeClass]) -> Result<ZeroVerdict> {
        for p in probes {
            let v = self.pair(p)?;
            if !v.is_zero() {
                return Ok(ZeroVerdict::Nonzero {
                    witness: p.clone(),
                    pairing: v,
                });
            }
        }
        Ok(ZeroVerdict::ZeroRelativeToProbes {
            probes: probes.len(),
        })
    }

    /// Image in the fan ring: each monomial goes to the stable product of the
    /// codimension-one skeleton fans of its factors.
    pub fn to_trop(&self, seed: u64) -> Result<TropicalFan> {
        let n = self.ambient;
        let mut total = TropicalFan::zero(n, self.degree);
        for (m, c) in &self.terms {
            let mut fan = TropicalFan::whole_space(n, Scalar::one());
            for p in m {
                fan = fan.stable_product(&p.skeleton_fan(1), seed)?;
            }
            total = total.add(&fan.scale(&Scalar::rational(c.clone())))?;
        }
        Ok(total)
    }

    /// Every polytope occurring in some monomial.
    pub fn polytopes(&self) -> BTreeSet<Polytope> {
        self.terms.keys().flatten().cloned().collect()
    }

    pub fn to_doc(&self) -> ClassDoc {
        ClassDoc {
            dim: Some(self.ambient),
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermDoc {
                    coeff: format_rational(c),
                    polytopes: m.iter().map(Polytope::to_doc).collect(),
                })
                .collect(),
        }
    }

    /// `ambient` is used when the document omits `dim`.
    pub fn from_doc(
        doc: &ClassDoc,
        field: FieldDescriptor,
        ambient: Option<usize>,
    ) -> Result<PolytopeClass> {
        let n = doc
            .dim
            .or(ambient)
            .or_else(|| {
                doc.terms
                    .iter()
                    .flat_map(|t| t.polytopes.first())
                    .map(|p| p.dim)
                    .next()
            })
            .ok_or_else(|| Error::Document("class has no dimension".into()))?;
        if doc.degree > n {
            return Ok(PolytopeClass::zero(n, doc.degree));
        }
        let mut out = PolytopeClass::zero(n, doc.degree);
        for t in &doc.terms {
            if t.polytopes.len() != doc.degree {
                return Err(Error::Document(format!(
                    "term has {} factors in a degree-{} class",
                    t.polytopes.len(),
                    doc.degree
                )));
            }
            let factors = t
                .polytopes
                .iter()
                .map(|p| Polytope::from_doc(p, field))
                .collect::<Result<Vec<_>>>()?;
            let mono = PolytopeClass::monomial(n, factors)?;
            out = out.add(&mono.scale(&parse_rational(&t.coeff)?))?;
        }
        Ok(out)
    }
}

/// All degree-`degree` monomials in the operands' polytopes, the coordinate
/// segments and the standard simplex.
pub fn default_probes(
    ambient: usize,
    degree: usize,
    operands: &[&PolytopeClass],
) -> Vec<PolytopeClass> {
    let mut pool: BTreeSet<Polytope> = operands.iter().flat_map(|c| c.polytopes()).collect();
    pool.extend((0..ambient).map(|i| Polytope::coordinate_segment(ambient, i)));
    pool.insert(Polytope::standard_simplex(ambient));
    pool.into_iter()
        .combinations_with_replacement(degree)
        .map(|m| PolytopeClass::monomial_with(ambient, m, BigRational::one()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: String,
    pub polytopes: Vec<PolytopeDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub degree: usize,
    pub terms: Vec<TermDoc>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::from_ints;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn square() -> PolytopeClass {
        PolytopeClass::polytope(&Polytope::unit_cube(2))
    }

    fn seg(i: usize) -> PolytopeClass {
        PolytopeClass::polytope(&Polytope::coordinate_segment(2, i))
    }

    fn square_minus_segments() -> PolytopeClass {
        square().sub(&seg(0)).unwrap().sub(&seg(1)).unwrap()
    }

    #[test]
    fn products_concatenate() {
        let xy = seg(0).multiply(&seg(1)).unwrap();
        assert_eq!(xy.degree(), 2);
        assert_eq!(xy.terms().count(), 1);
        assert_eq!(xy, seg(1).multiply(&seg(0)).unwrap());
        assert!(square()
            .multiply(&PolytopeClass::zero(2, 1))
            .unwrap()
            .is_formally_zero());
        assert_eq!(
            square_minus_segments()
                .multiply(&square())
                .unwrap()
                .terms()
                .count(),
            3
        );
        let too_big = xy.multiply(&seg(0)).unwrap();
        assert_eq!(too_big.degree(), 3);
        assert!(too_big.is_formally_zero());
    }

    #[test]
    fn top_pairings() {
        let sq2 = square().multiply(&square()).unwrap();
        assert_eq!(sq2.top_pairing().unwrap(), Scalar::one());
        let xy = seg(0).multiply(&seg(1)).unwrap();
        assert_eq!(xy.top_pairing().unwrap(), Scalar::ratio(1, 2));
        let diff = sq2.sub(&xy.scale(&q(2, 1))).unwrap();
        assert_eq!(diff.top_pairing().unwrap(), Scalar::zero());
        assert!(matches!(
            square().top_pairing(),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn zero_tests() {
        let c = square_minus_segments();
        let probes = vec![square(), seg(0), seg(1)];
        assert_eq!(
            c.is_zero_class(&probes).unwrap(),
            ZeroVerdict::ZeroRelativeToProbes { probes: 3 }
        );
        let d = square().scale(&q(2, 1)).sub(&square()).unwrap();
        match d.is_zero_class(&[square()]).unwrap() {
            ZeroVerdict::Nonzero { witness, pairing } => {
                assert_eq!(witness, square());
                assert_eq!(pairing, Scalar::one());
            }
            other => panic!("{other:?}"),
        }
        assert!(PolytopeClass::zero(2, 1)
            .is_zero_class(&probes)
            .unwrap()
            .is_zero());
        let wrong = c.is_zero_class(&[c.multiply(&square()).unwrap()]);
        assert!(matches!(wrong, Err(Error::Precondition(_))));
        let probes = default_probes(2, 1, &[&c]);
        assert_eq!(probes.len(), 4);
        assert!(c.is_zero_class(&probes).unwrap().is_zero());
    }

    #[test]
    fn images_in_the_fan_ring() {
        let xy = seg(0).multiply(&seg(1)).unwrap().to_trop(0).unwrap();
        assert_eq!(xy.zero_cone_value().unwrap(), Scalar::one());
        assert!(square_minus_segments().to_trop(0).unwrap().is_zero());
        let r = PolytopeClass::constant(2, q(3, 4)).to_trop(0).unwrap();
        assert!(r.equals(&TropicalFan::whole_space(2, Scalar::ratio(3, 4))));
    }

    #[test]
    fn pairing_matches_fan_evaluation() {
        let tri = PolytopeClass::polytope(
            &Polytope::from_int_points(2, &[&[0, 0], &[2, 0], &[0, 1]]).unwrap(),
        );
        let a = tri.sub(&seg(0)).unwrap();
        let b = square().add(&tri).unwrap();
        let fan = a
            .to_trop(1)
            .unwrap()
            .stable_product(&b.to_trop(1).unwrap(), 1)
            .unwrap();
        let expected = Scalar::from_int(2) * a.pair(&b).unwrap();
        assert_eq!(fan.zero_cone_value().unwrap(), expected);
    }

    #[test]
    fn doc_round_trip() {
        let c = square_minus_segments().multiply(&PolytopeClass::polytope(&Polytope::segment(
            from_ints(&[0, 0]),
            vec![Scalar::sqrt(2), Scalar::one()],
        )));
        let c = c.unwrap();
        let doc = c.to_doc();
        let text = serde_json::to_string(&doc).unwrap();
        let back: ClassDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(
            PolytopeClass::from_doc(&back, FieldDescriptor::Quadratic { d: 2 }, None).unwrap(),
            c
        );
    }
}
