//! Polyhedral cones with both descriptions kept canonical.
//!
//! Conversion between inequalities and generators uses the double
//! description method with lineality pivoting and the combinatorial
//! adjacency test on tight-constraint sets.

use fixedbitset::FixedBitSet;

use crate::exact::field::Scalar;
use crate::exact::matrix::{
    annihilator, dot, is_zero_vector, normalize_direction, project_out, scale, span_basis, sub,
    Vector,
};

/// Lineality basis plus extreme rays modulo lineality.
#[derive(Clone, Debug)]
struct Generators {
    lineality: Vec<Vector>,
    rays: Vec<Vector>,
}

/// Generators of `{x : eq . x = 0, ineq . x >= 0}`.
fn double_description(n: usize, eqs: &[Vector], ineqs: &[Vector]) -> Generators {
    let mut lineality = annihilator(n, eqs);
    let mut rays: Vec<Vector> = Vec::new();
    let mut tight: Vec<FixedBitSet> = Vec::new();
    let m = ineqs.len();
    for (k, a) in ineqs.iter().enumerate() {
        if is_zero_vector(a) {
            continue;
        }
        if let Some(pi) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut p = lineality.remove(pi);
            let mut ap = dot(a, &p);
            if ap.is_negative() {
                p = p.iter().map(|x| -x.clone()).collect();
                ap = -ap;
            }
            for l in lineality.iter_mut() {
                let c = dot(a, l);
                if !c.is_zero() {
                    *l = sub(l, &scale(&p, &(&c / &ap)));
                }
            }
            for (r, z) in rays.iter_mut().zip(tight.iter_mut()) {
                let c = dot(a, r);
                if !c.is_zero() {
                    *r = normalize_direction(&sub(r, &scale(&p, &(&c / &ap))));
                }
                z.insert(k);
            }
            let mut z = FixedBitSet::with_capacity(m);
            z.insert_range(0..k);
            rays.push(normalize_direction(&p));
            tight.push(z);
            continue;
        }
        let values: Vec<Scalar> = rays.iter().map(|r| dot(a, r)).collect();
        let plus: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let minus: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        if minus.is_empty() {
            for (i, z) in tight.iter_mut().enumerate() {
                if values[i].is_zero() {
                    z.insert(k);
                }
            }
            continue;
        }
        let mut new_rays = Vec::new();
        let mut new_tight = Vec::new();
        for &i in &plus {
            for &j in &minus {
                let mut common = tight[i].clone();
                common.intersect_with(&tight[j]);
                let adjacent = (0..rays.len())
                    .filter(|&t| t != i && t != j)
                    .all(|t| !common.is_subset(&tight[t]));
                if !adjacent {
                    continue;
                }
                let r = sub(&scale(&rays[j], &values[i]), &scale(&rays[i], &values[j]));
                common.insert(k);
                new_rays.push(normalize_direction(&r));
                new_tight.push(common);
            }
        }
        let mut kept_rays = Vec::new();
        let mut kept_tight = Vec::new();
        for i in 0..rays.len() {
            if values[i].is_negative() {
                continue;
            }
            let mut z = tight[i].clone();
            if values[i].is_zero() {
                z.insert(k);
            }
            kept_rays.push(rays[i].clone());
            kept_tight.push(z);
        }
        kept_rays.extend(new_rays);
        kept_tight.extend(new_tight);
        rays = kept_rays;
        tight = kept_tight;
    }
    Generators { lineality, rays }
}

/// A polyhedral cone in `R^n`, stored canonically so that structural
/// equality is geometric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient: usize,
    /// Reduced-echelon basis of the span; also the canonical orientation.
    span: Vec<Vector>,
    lineality: Vec<Vector>,
    /// Extreme rays, orthogonal to the lineality space.
    rays: Vec<Vector>,
    /// Reduced-echelon basis of the annihilator of the span.
    equations: Vec<Vector>,
    /// Inward facet normals, lying in the span.
    facets: Vec<Vector>,
}

impl Cone {
    fn assemble(n: usize, gens: Generators, dual: Generators) -> Cone {
        let lineality = span_basis(n, &gens.lineality);
        let mut all = lineality.clone();
        all.extend(gens.rays.iter().cloned());
        let span = span_basis(n, &all);
        let equations = span_basis(n, &dual.lineality);
        let mut rays: Vec<Vector> = gens
            .rays
            .iter()
            .map(|r| normalize_direction(&project_out(r, &lineality)))
            .filter(|r| !is_zero_vector(r))
            .collect();
        rays.sort();
        rays.dedup();
        let mut facets: Vec<Vector> = dual
            .rays
            .iter()
            .map(|f| normalize_direction(&project_out(f, &equations)))
            .filter(|f| !is_zero_vector(f))
            .collect();
        facets.sort();
        facets.dedup();
        Cone {
            ambient: n,
            span,
            lineality,
            rays,
            equations,
            facets,
        }
    }

    /// `{x : ineq . x >= 0, eq . x = 0}`.
    pub fn from_hrep(n: usize, ineqs: &[Vector], eqs: &[Vector]) -> Cone {
        let gens = double_description(n, eqs, ineqs);
        let dual = double_description(n, &gens.lineality, &gens.rays);
        Cone::assemble(n, gens, dual)
    }

    /// `cone(rays) + span(lineality)`.
    pub fn from_generators(n: usize, rays: &[Vector], lineality: &[Vector]) -> Cone {
        let dual = double_description(n, lineality, rays);
        let gens = double_description(n, &dual.lineality, &dual.rays);
        Cone::assemble(n, gens, dual)
    }

    pub fn subspace(n: usize, basis: &[Vector]) -> Cone {
        Cone::from_generators(n, &[], basis)
    }

    pub fn whole_space(n: usize) -> Cone {
        Cone::from_hrep(n, &[], &[])
    }

    pub fn origin(n: usize) -> Cone {
        Cone::from_generators(n, &[], &[])
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.span.len()
    }

    pub fn span(&self) -> &[Vector] {
        &self.span
    }

    pub fn lineality(&self) -> &[Vector] {
        &self.lineality
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn equations(&self) -> &[Vector] {
        &self.equations
    }

    pub fn facets(&self) -> &[Vector] {
        &self.facets
    }

    pub fn is_subspace(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| !dot(f, x).is_negative())
    }

    pub fn contains_in_relint(&self, x: &[Scalar]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| dot(f, x).is_positive())
    }

    /// Sum of the extreme rays: a point of the relative interior.
    pub fn relint_point(&self) -> Vector {
        let mut p = vec![Scalar::zero(); self.ambient];
        for r in &self.rays {
            p = crate::exact::matrix::add(&p, r);
        }
        p
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_hrep(self.ambient, &ineqs, &eqs)
    }

    /// The Minkowski difference `self - other = self + (-other)`.
    pub fn minus(&self, other: &Cone) -> Cone {
        let mut rays = self.rays.clone();
        rays.extend(
            other
                .rays
                .iter()
                .map(|r| r.iter().map(|x| -x.clone()).collect()),
        );
        let mut lin = self.lineality.clone();
        lin.extend(other.lineality.iter().cloned());
        Cone::from_generators(self.ambient, &rays, &lin)
    }

    /// The face cut out by the supporting hyperplane `u^perp`, where `u`
    /// is nonnegative on the cone.
    pub fn face(&self, u: &[Scalar]) -> Cone {
        let rays: Vec<Vector> = self
            .rays
            .iter()
            .filter(|r| dot(u, r).is_zero())
            .cloned()
            .collect();
        Cone::from_generators(self.ambient, &rays, &self.lineality)
    }

    /// Codimension-one faces, paired with their inward normals.
    pub fn facet_faces(&self) -> Vec<(Vector, Cone)> {
        self.facets
            .iter()
            .map(|f| (f.clone(), self.face(f)))
            .collect()
    }

    /// Whether `other` is a face of `self`.
    pub fn has_face(&self, other: &Cone) -> bool {
        if !other.rays.iter().all(|r| self.contains(r))
            || !other
                .lineality
                .iter()
                .all(|l| self.contains(l) && self.contains(&neg(l)))
        {
            return false;
        }
        let p = other.relint_point();
        let tight: Vec<Vector> = self
            .facets
            .iter()
            .filter(|f| dot(f, &p).is_zero())
            .cloned()
            .collect();
        let mut eqs = self.equations.clone();
        eqs.extend(tight);
        let face = Cone::from_hrep(self.ambient, &self.facets, &eqs);
        face == *other
    }

    pub fn same_span(&self, other: &Cone) -> bool {
        self.span == other.span
    }
}

fn neg(v: &[Scalar]) -> Vector {
    v.iter().map(|x| -x.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::from_ints;

    #[test]
    fn quadrant_both_ways() {
        let a = Cone::from_hrep(2, &[from_ints(&[1, 0]), from_ints(&[0, 1])], &[]);
        let b = Cone::from_generators(2, &[from_ints(&[3, 0]), from_ints(&[0, 2])], &[]);
        assert_eq!(a, b);
        assert_eq!(a.rays(), &[from_ints(&[0, 1]), from_ints(&[1, 0])]);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let c = Cone::from_generators(
            2,
            &[from_ints(&[1, 0]), from_ints(&[1, 1]), from_ints(&[0, 1])],
            &[],
        );
        assert_eq!(c.rays().len(), 2);
        assert_eq!(c.facets().len(), 2);
    }

    #[test]
    fn halfplane_has_lineality() {
        let c = Cone::from_hrep(2, &[from_ints(&[0, 1])], &[]);
        assert_eq!(c.lineality().len(), 1);
        assert_eq!(c.rays(), &[from_ints(&[0, 1])]);
        assert_eq!(
            c,
            Cone::from_generators(2, &[from_ints(&[1, 5])], &[from_ints(&[1, 0])])
        );
    }

    #[test]
    fn lower_dimensional_cone_in_space() {
        let c = Cone::from_generators(3, &[from_ints(&[1, 0, 0]), from_ints(&[1, 1, 0])], &[]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.equations(), &[from_ints(&[0, 0, 1])]);
        assert_eq!(c.facets().len(), 2);
        assert!(c.contains(&from_ints(&[2, 1, 0])));
        assert!(!c.contains(&from_ints(&[0, 1, 0])));
    }

    #[test]
    fn cube_cone_has_eight_rays() {
        // cone over a square: x3 >= |x1|, x3 >= |x2|
        let ineqs = [
            from_ints(&[1, 0, 1]),
            from_ints(&[-1, 0, 1]),
            from_ints(&[0, 1, 1]),
            from_ints(&[0, -1, 1]),
        ];
        let c = Cone::from_hrep(3, &ineqs, &[]);
        assert_eq!(c.rays().len(), 4);
        assert_eq!(c.facets().len(), 4);
        for (u, f) in c.facet_faces() {
            assert_eq!(f.dim(), 2);
            assert!(c.has_face(&f));
            assert!(f.rays().iter().all(|r| dot(&u, r).is_zero()));
        }
    }

    #[test]
    fn irrational_ray() {
        let s = Scalar::sqrt(2);
        let c = Cone::from_generators(
            2,
            &[vec![Scalar::one(), s.clone()], from_ints(&[1, 0])],
            &[],
        );
        assert!(c.contains_in_relint(&from_ints(&[2, 1])));
        assert!(!c.contains(&from_ints(&[1, 2])));
    }

    #[test]
    fn intersect_and_minus() {
        let q1 = Cone::from_generators(2, &[from_ints(&[1, 0]), from_ints(&[0, 1])], &[]);
        let q2 = Cone::from_generators(2, &[from_ints(&[1, 0]), from_ints(&[0, -1])], &[]);
        let i = q1.intersect(&q2);
        assert_eq!(i.dim(), 1);
        assert_eq!(i.rays(), &[from_ints(&[1, 0])]);
        let d = q1.minus(&q2);
        // q1 - q2 contains (0,1) and (-1,0): the upper half plane
        assert_eq!(d, Cone::from_hrep(2, &[from_ints(&[0, 1])], &[]));
    }
}
