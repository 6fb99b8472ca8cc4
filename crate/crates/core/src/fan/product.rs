use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exact::field::Scalar;
use crate::exact::matrix::{det_columns, dot, extend_basis, rank_of, Vector};
use crate::fan::TropicalFan;

/// How many displacement vectors are tried before giving up.
pub(crate) const DISPLACEMENT_ATTEMPTS: usize = 32;

struct Candidate<'a> {
    sigma: &'a Cone,
    tau: &'a Cone,
    c: Scalar,
    meet: Cone,
    difference: Cone,
}

/// Seeded integer vector; the range grows with the attempt number.
pub(crate) fn displacement(rng: &mut ChaCha8Rng, n: usize, attempt: usize) -> Vector {
    let bound = 1000i64 << attempt.min(20);
    (0..n)
        .map(|_| Scalar::from_int(rng.gen_range(-bound..=bound)))
        .collect()
}

/// Fan displacement rule: a transversal pair `(sigma, tau)` meeting in the
/// right dimension contributes to `sigma ∩ tau` iff a generic `v` lies in
/// the interior of `sigma - tau`.
pub(crate) fn stable_product(a: &TropicalFan, b: &TropicalFan, seed: u64) -> Result<TropicalFan> {
    let n = a.ambient();
    if b.ambient() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.ambient(),
        });
    }
    let degree = a.degree() + b.degree();
    if degree > n {
        return Ok(TropicalFan::zero(n, degree));
    }
    let fa = a.normalize();
    let fb = b.normalize();
    let target_dim = n - degree;

    let mut candidates = Vec::new();
    for wa in fa.cones() {
        for wb in fb.cones() {
            let mut joint = wa.cone.span().to_vec();
            joint.extend(wb.cone.span().iter().cloned());
            if rank_of(n, &joint) != n {
                continue;
            }
            let meet = wa.cone.intersect(&wb.cone);
            if meet.dim() != target_dim {
                continue;
            }
            candidates.push(Candidate {
                sigma: &wa.cone,
                tau: &wb.cone,
                c: &wa.coeff * &wb.coeff,
                meet,
                difference: wa.cone.minus(&wb.cone),
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = None;
    for attempt in 0..DISPLACEMENT_ATTEMPTS {
        let v = displacement(&mut rng, n, attempt);
        let generic = candidates.iter().all(|cand| {
            cand.difference
                .facets()
                .iter()
                .all(|h| !dot(h, &v).is_zero())
        });
        if generic {
            chosen = Some(v);
            break;
        }
        log::debug!("displacement {attempt} not generic, resampling");
    }
    let v = chosen.ok_or(Error::GenericityExhausted(DISPLACEMENT_ATTEMPTS))?;

    let mut cones = Vec::new();
    for cand in &candidates {
        if !cand
            .difference
            .facets()
            .iter()
            .all(|h| dot(h, &v).is_positive())
        {
            continue;
        }
        let o_i = cand.meet.span();
        let xi_a = extend_basis(n, o_i, cand.tau.span());
        let xi_b = extend_basis(n, o_i, cand.sigma.span());
        let cat = |parts: &[&[Vector]]| -> Vec<Vector> {
            parts.iter().flat_map(|p| p.iter().cloned()).collect()
        };
        let d_sigma = det_columns(&cat(&[&xi_a, cand.sigma.span()])).abs();
        let d_tau = det_columns(&cat(&[&xi_b, cand.tau.span()])).abs();
        let d_meet = det_columns(&cat(&[&xi_a, &xi_b, o_i])).abs();
        let coeff = &(&cand.c * &(&d_sigma * &d_tau)) / &d_meet;
        cones.push((cand.meet.clone(), coeff));
    }
    Ok(TropicalFan::from_cones(n, degree, cones)?.normalize())
}
