//! Convex polytopes in the dual space `R^n*` with exact vertices.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exact::field::{FieldDescriptor, Scalar, ScalarDoc};
use crate::exact::matrix::{
    add, dot, from_ints, normalize_direction, project_out, rank_of, scale, span_basis, sub, Matrix,
    Vector,
};
use crate::exact::ExteriorForm;
use crate::fan::TropicalFan;

/// A bounded convex polytope, stored by its sorted vertex list together
/// with an irredundant inequality description of the affine hull.
#[derive(Clone, Debug)]
pub struct Polytope {
    ambient: usize,
    vertices: Vec<Vector>,
    /// `(c, h)` meaning `c . x <= h`, one per facet.
    facets: Vec<(Vector, Scalar)>,
    /// `(c, h)` meaning `c . x = h` on the affine hull.
    hull_equations: Vec<(Vector, Scalar)>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl std::hash::Hash for Polytope {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.vertices.hash(state);
    }
}

impl PartialOrd for Polytope {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polytope {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient, &self.vertices).cmp(&(other.ambient, &other.vertices))
    }
}

/// A face, given by the indices of the polytope vertices it contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    faces: Vec<Face>,
    /// Indices of the facets of each face.
    facets_of: Vec<Vec<usize>>,
}

impl FaceLattice {
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    pub fn facets_of(&self, face: usize) -> &[usize] {
        &self.facets_of[face]
    }

    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        self.faces.iter().position(|f| f.vertices == vertices)
    }
}

impl Polytope {
    /// Convex hull of a nonempty point set.
    pub fn convex_hull(ambient: usize, points: &[Vector]) -> Result<Polytope> {
        if points.is_empty() {
            return Err(Error::Precondition("convex hull of an empty set".into()));
        }
        for p in points {
            if p.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: p.len(),
                });
            }
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();

        // functionals (c, c0) with c0 - c.p >= 0 on every point
        let ineqs: Vec<Vector> = pts
            .iter()
            .map(|p| {
                let mut row: Vector = p.iter().map(|x| -x.clone()).collect();
                row.push(Scalar::one());
                row
            })
            .collect();
        let hom = Cone::from_hrep(ambient + 1, &ineqs, &[]);

        let split = |v: &Vector| (v[..ambient].to_vec(), v[ambient].clone());
        let eq_normals: Vec<Vector> = span_basis(
            ambient,
            &hom.lineality()
                .iter()
                .map(|l| split(l).0)
                .collect::<Vec<_>>(),
        );
        let hull_equations: Vec<(Vector, Scalar)> = eq_normals
            .iter()
            .map(|c| (c.clone(), dot(c, &pts[0])))
            .collect();

        let mut facets: Vec<(Vector, Scalar)> = Vec::new();
        for ray in hom.rays() {
            let (c, _) = split(ray);
            let c = normalize_direction(&project_out(&c, &eq_normals));
            if c.iter().all(Scalar::is_zero) {
                continue;
            }
            let h = pts.iter().map(|p| dot(&c, p)).max().expect("nonempty");
            facets.push((c, h));
        }
        facets.sort();
        facets.dedup();

        let vertices: Vec<Vector> = pts
            .iter()
            .filter(|p| {
                let mut normals: Vec<Vector> = eq_normals.clone();
                normals.extend(
                    facets
                        .iter()
                        .filter(|(c, h)| dot(c, p) == *h)
                        .map(|(c, _)| c.clone()),
                );
                rank_of(ambient, &normals) == ambient
            })
            .cloned()
            .collect();

        Ok(Polytope {
            ambient,
            vertices,
            facets,
            hull_equations,
        })
    }

    pub fn from_int_points(ambient: usize, points: &[&[i64]]) -> Result<Polytope> {
        let pts: Vec<Vector> = points.iter().map(|p| from_ints(p)).collect();
        Polytope::convex_hull(ambient, &pts)
    }

    pub fn point(p: Vector) -> Polytope {
        let n = p.len();
        Polytope::convex_hull(n, &[p]).expect("single point")
    }

    pub fn segment(a: Vector, b: Vector) -> Polytope {
        let n = a.len();
        Polytope::convex_hull(n, &[a, b]).expect("segment")
    }

    /// `conv{0, e_i*}`: the segment along the `i`-th coordinate.
    pub fn coordinate_segment(n: usize, i: usize) -> Polytope {
        let mut e = vec![Scalar::zero(); n];
        e[i] = Scalar::one();
        Polytope::segment(vec![Scalar::zero(); n], e)
    }

    /// `conv{0, e_1*, ..., e_n*}`.
    pub fn standard_simplex(n: usize) -> Polytope {
        let mut pts = vec![vec![Scalar::zero(); n]];
        for i in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[i] = Scalar::one();
            pts.push(e);
        }
        Polytope::convex_hull(n, &pts).expect("simplex")
    }

    /// `[0,1]^n`.
    pub fn unit_cube(n: usize) -> Polytope {
        let pts: Vec<Vector> = (0u32..(1 << n))
            .map(|m| {
                (0..n)
                    .map(|i| Scalar::from_int(((m >> i) & 1) as i64))
                    .collect()
            })
            .collect();
        Polytope::convex_hull(n, &pts).expect("cube")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[(Vector, Scalar)] {
        &self.facets
    }

    pub fn hull_equations(&self) -> &[(Vector, Scalar)] {
        &self.hull_equations
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.hull_equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.hull_equations.is_empty()
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.hull_equations.iter().all(|(c, h)| dot(c, x) == *h)
            && self.facets.iter().all(|(c, h)| dot(c, x) <= *h)
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let pts: Vec<Vector> = self
            .vertices
            .iter()
            .flat_map(|a| other.vertices.iter().map(move |b| add(a, b)))
            .collect();
        Polytope::convex_hull(self.ambient, &pts)
    }

    pub fn scaled(&self, r: &Scalar) -> Polytope {
        let pts: Vec<Vector> = self.vertices.iter().map(|v| scale(v, r)).collect();
        Polytope::convex_hull(self.ambient, &pts).expect("nonempty")
    }

    pub fn translated(&self, t: &[Scalar]) -> Polytope {
        let pts: Vec<Vector> = self.vertices.iter().map(|v| add(v, t)).collect();
        Polytope::convex_hull(self.ambient, &pts).expect("nonempty")
    }

    /// Image under `x |-> m x` (points as column vectors).
    pub fn linear_image(&self, m: &Matrix) -> Result<Polytope> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: m.cols(),
            });
        }
        let pts: Vec<Vector> = self.vertices.iter().map(|v| m.mul_vec(v)).collect();
        Polytope::convex_hull(m.rows(), &pts)
    }

    fn affine_rank(&self, idx: &[usize]) -> usize {
        if idx.len() <= 1 {
            return 0;
        }
        let base = &self.vertices[idx[0]];
        let diffs: Vec<Vector> = idx[1..]
            .iter()
            .map(|&i| sub(&self.vertices[i], base))
            .collect();
        rank_of(self.ambient, &diffs)
    }

    pub fn face_lattice(&self) -> FaceLattice {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let facet_sets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|(c, h)| {
                all.iter()
                    .copied()
                    .filter(|&i| dot(c, &self.vertices[i]) == *h)
                    .collect()
            })
            .collect();
        let mut faces = vec![Face {
            vertices: all.clone(),
            dim: self.dim(),
        }];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(all, 0);
        let mut facets_of: Vec<Vec<usize>> = vec![Vec::new()];
        let mut next = 0;
        while next < faces.len() {
            let face = faces[next].clone();
            if face.dim > 0 {
                let mut cands: Vec<Vec<usize>> = facet_sets
                    .iter()
                    .map(|g| {
                        face.vertices
                            .iter()
                            .copied()
                            .filter(|i| g.contains(i))
                            .collect::<Vec<usize>>()
                    })
                    .filter(|s| !s.is_empty() && s.len() < face.vertices.len())
                    .collect();
                cands.sort();
                cands.dedup();
                let maximal: Vec<Vec<usize>> = cands
                    .iter()
                    .filter(|s| {
                        !cands
                            .iter()
                            .any(|t| t.len() > s.len() && s.iter().all(|i| t.contains(i)))
                    })
                    .cloned()
                    .collect();
                let mut children = Vec::new();
                for s in maximal {
                    let id = match index.get(&s) {
                        Some(&id) => id,
                        None => {
                            let dim = self.affine_rank(&s);
                            faces.push(Face {
                                vertices: s.clone(),
                                dim,
                            });
                            facets_of.push(Vec::new());
                            index.insert(s, faces.len() - 1);
                            faces.len() - 1
                        }
                    };
                    children.push(id);
                }
                facets_of[next] = children;
            }
            next += 1;
        }
        FaceLattice { faces, facets_of }
    }

    /// Simplices (vertex index lists) of the fan triangulation of a face,
    /// coning from its lexicographically smallest vertex.
    fn triangulate(
        &self,
        lattice: &FaceLattice,
        face: usize,
        memo: &mut HashMap<usize, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if let Some(t) = memo.get(&face) {
            return t.clone();
        }
        let f = &lattice.faces[face];
        let out = if f.dim == 0 {
            vec![vec![f.vertices[0]]]
        } else {
            // vertices are sorted, so the first index is the lex-smallest
            let apex = f.vertices[0];
            let mut simplices = Vec::new();
            for &g in lattice.facets_of(face) {
                if lattice.faces[g].vertices.contains(&apex) {
                    continue;
                }
                for mut s in self.triangulate(lattice, g, memo) {
                    s.insert(0, apex);
                    simplices.push(s);
                }
            }
            simplices
        };
        memo.insert(face, out.clone());
        out
    }

    /// Lebesgue volume; zero (with a warning) for lower-dimensional polytopes.
    pub fn volume(&self) -> Scalar {
        if !self.is_full_dimensional() {
            log::warn!("volume of a lower-dimensional polytope is taken to be zero");
            return Scalar::zero();
        }
        let n = self.ambient;
        if n == 0 {
            return Scalar::one();
        }
        let lattice = self.face_lattice();
        let mut memo = HashMap::new();
        let mut total = Scalar::zero();
        for s in self.triangulate(&lattice, 0, &mut memo) {
            let v0 = &self.vertices[s[0]];
            let cols: Vec<Vector> = s[1..].iter().map(|&i| sub(&self.vertices[i], v0)).collect();
            total += &crate::exact::matrix::det_columns(&cols).abs();
        }
        let fact: i64 = (1..=n as i64).product();
        total / Scalar::from_int(fact)
    }

    /// Closed normal cone of a face: functionals maximized on it.
    pub fn dual_cone(&self, face: &Face) -> Result<Cone> {
        let lattice = self.face_lattice();
        if lattice.index_of(&face.vertices).is_none() {
            return Err(Error::FaceNotInLattice);
        }
        Ok(self.normal_cone(&face.vertices))
    }

    fn normal_cone(&self, face: &[usize]) -> Cone {
        let w0 = &self.vertices[face[0]];
        let ineqs: Vec<Vector> = (0..self.vertices.len())
            .filter(|i| !face.contains(i))
            .map(|i| sub(w0, &self.vertices[i]))
            .collect();
        let eqs: Vec<Vector> = face[1..]
            .iter()
            .map(|&i| sub(&self.vertices[i], w0))
            .collect();
        Cone::from_hrep(self.ambient, &ineqs, &eqs)
    }

    /// The fan of normal cones of `k`-faces, each weighted by the
    /// normalized volume `k! vol_k` encoded as a wedge of edge covectors.
    pub fn skeleton_fan(&self, k: usize) -> TropicalFan {
        let n = self.ambient;
        if k > self.dim() {
            return TropicalFan::zero(n, k);
        }
        let lattice = self.face_lattice();
        let mut memo = HashMap::new();
        let mut cones = Vec::new();
        for (idx, face) in lattice.faces().iter().enumerate() {
            if face.dim != k {
                continue;
            }
            let cone = self.normal_cone(&face.vertices);
            let reference = ExteriorForm::complement_volume(n, cone.span());
            let mut weight = Scalar::zero();
            for s in self.triangulate(&lattice, idx, &mut memo) {
                let v0 = &self.vertices[s[0]];
                let edges: Vec<Vector> =
                    s[1..].iter().map(|&i| sub(&self.vertices[i], v0)).collect();
                let form = ExteriorForm::wedge_all(n, &edges);
                let r = form
                    .ratio_to(&reference)
                    .expect("edge wedge is proportional to the normal-cone weight");
                weight += &r.abs();
            }
            cones.push((cone, weight));
        }
        TropicalFan::from_cones(n, k, cones).expect("skeleton cones are pure")
    }

    pub fn to_doc(&self) -> PolytopeDoc {
        PolytopeDoc {
            dim: self.ambient,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(ScalarDoc::from_scalar).collect())
                .collect(),
        }
    }

    pub fn from_doc(doc: &PolytopeDoc, field: FieldDescriptor) -> Result<Polytope> {
        let pts = doc
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| x.to_scalar(field))
                    .collect::<Result<Vector>>()
            })
            .collect::<Result<Vec<Vector>>>()?;
        Polytope::convex_hull(doc.dim, &pts)
    }
}

/// Mixed volume by polarization, normalized so `V(P, ..., P) = vol(P)`.
pub fn mixed_volume(polytopes: &[Polytope]) -> Result<Scalar> {
    let n = polytopes.len();
    if n == 0 {
        return Ok(Scalar::one());
    }
    for p in polytopes {
        if p.ambient != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.ambient,
            });
        }
    }
    let mut sums: Vec<Option<Polytope>> = vec![None; 1 << n];
    let mut total = Scalar::zero();
    for mask in 1usize..(1 << n) {
        let top = usize::BITS - 1 - mask.leading_zeros();
        let rest = mask & !(1 << top);
        let sum = match &sums[rest] {
            None => polytopes[top as usize].clone(),
            Some(p) => p.minkowski_sum(&polytopes[top as usize])?,
        };
        let v = if sum.is_full_dimensional() {
            sum.volume()
        } else {
            Scalar::zero()
        };
        if (n - mask.count_ones() as usize) % 2 == 0 {
            total += &v;
        } else {
            total -= &v;
        }
        sums[mask] = Some(sum);
    }
    let fact: i64 = (1..=n as i64).product();
    Ok(total / Scalar::from_int(fact))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeDoc {
    pub dim: usize,
    pub vertices: Vec<Vec<ScalarDoc>>,
}
