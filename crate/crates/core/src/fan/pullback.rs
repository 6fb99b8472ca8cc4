use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exact::field::Scalar;
use crate::exact::matrix::{
    det_columns, extend_basis, span_basis, standard_complement, LinearMap, LinearSolution, Matrix,
    Vector,
};
use crate::fan::TropicalFan;

/// Kernel basis of a surjective map, ordered so that `(lifts of e_1..e_m,
/// kernel)` is positively oriented in the source. With this orientation the
/// pull-back of a positive fan stays positive.
pub fn compatible_kernel_orientation(map: &LinearMap) -> Result<Vec<Vector>> {
    let s = map.matrix();
    let mut kernel = s.kernel();
    if kernel.is_empty() {
        return Ok(kernel);
    }
    let sign = orientation_sign(s, &kernel)?;
    if sign < 0 {
        kernel[0] = kernel[0].iter().map(|x| -x.clone()).collect();
    }
    Ok(kernel)
}

fn orientation_sign(s: &Matrix, kernel: &[Vector]) -> Result<i8> {
    let m = s.rows();
    let mut cols = Vec::new();
    for i in 0..m {
        let e = crate::exact::matrix::unit_vector(m, i);
        let lift = match s.solve(&e)? {
            LinearSolution::Unique(x) => x,
            LinearSolution::Family { particular, .. } => particular,
        };
        cols.push(lift);
    }
    cols.extend(kernel.iter().cloned());
    Ok(det_columns(&cols).signum())
}

/// Pull-back of a balanced fan on the target of `map` to its source.
pub fn pullback(map: &LinearMap, fan: &TropicalFan, seed: u64) -> Result<TropicalFan> {
    check_input(map, fan)?;
    let s = map.matrix();
    let rank = map.rank();
    if rank == 0 {
        return Err(Error::DegenerateMap);
    }
    if rank == map.target_dim() {
        return surjective(map, fan);
    }
    if rank == map.source_dim() {
        return injective(s, fan, &Scalar::one(), seed);
    }
    // s = C R with C the pivot columns (injective) and R the nonzero rows
    // of the reduced echelon form (surjective)
    let ech = s.rref();
    let c = Matrix::from_columns(
        s.rows(),
        &ech.pivots.iter().map(|&j| s.column(j)).collect::<Vec<_>>(),
    );
    let r = Matrix::from_rows(s.cols(), ech.reduced.row_vectors()[..rank].to_vec());
    let mut outer = LinearMap::new(r);
    if let Some(k) = map.kernel_orientation() {
        outer = outer.with_kernel_orientation(k.to_vec())?;
    }
    let middle = injective(&c, fan, &Scalar::one(), seed)?;
    surjective(&outer, &middle)
}

/// Injective pull-back with an explicit coefficient `t` for the auxiliary
/// image-subspace fan; the result does not depend on `t`.
pub fn pullback_injective_with(
    map: &LinearMap,
    fan: &TropicalFan,
    t: &Scalar,
    seed: u64,
) -> Result<TropicalFan> {
    check_input(map, fan)?;
    if !map.is_injective() || map.rank() == 0 {
        return Err(Error::Precondition("map is not injective".into()));
    }
    injective(map.matrix(), fan, t, seed)
}

fn check_input(map: &LinearMap, fan: &TropicalFan) -> Result<()> {
    if fan.ambient() != map.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: map.target_dim(),
            found: fan.ambient(),
        });
    }
    if fan.degree() > fan.ambient() {
        return Ok(());
    }
    let report = fan.balance_check();
    if !report.balanced {
        return Err(Error::Unbalanced(report.violations.join("; ")));
    }
    Ok(())
}

fn preimage(s: &Matrix, cone: &Cone) -> Cone {
    let ineqs: Vec<Vector> = cone
        .facets()
        .iter()
        .map(|f| s.transpose_mul_vec(f))
        .collect();
    let eqs: Vec<Vector> = cone
        .equations()
        .iter()
        .map(|e| s.transpose_mul_vec(e))
        .collect();
    Cone::from_hrep(s.cols(), &ineqs, &eqs)
}

fn surjective(map: &LinearMap, fan: &TropicalFan) -> Result<TropicalFan> {
    let s = map.matrix();
    let (m, src) = (s.rows(), s.cols());
    if fan.degree() > m {
        return Ok(TropicalFan::zero(src, fan.degree()));
    }
    let kappa = match map.kernel_orientation() {
        Some(k) if orientation_sign(s, k)? < 0 => -Scalar::one(),
        _ => Scalar::one(),
    };
    let mut cones = Vec::new();
    for wc in fan.normalize().cones() {
        let pre = preimage(s, &wc.cone);
        let xi_src = standard_complement(src, pre.span());
        let xi: Vec<Vector> = xi_src.iter().map(|x| s.mul_vec(x)).collect();
        let mut top = xi.clone();
        top.extend(wc.cone.span().iter().cloned());
        let mut bottom = xi_src.clone();
        bottom.extend(pre.span().iter().cloned());
        let c = &(&wc.coeff * &det_columns(&top).abs()) / &det_columns(&bottom).abs();
        cones.push((pre, &c * &kappa));
    }
    Ok(TropicalFan::from_cones(src, fan.degree(), cones)?.normalize())
}

fn injective(s: &Matrix, fan: &TropicalFan, t: &Scalar, seed: u64) -> Result<TropicalFan> {
    let (n, src) = (s.rows(), s.cols());
    if t.is_zero() {
        return Err(Error::Precondition(
            "auxiliary weight must be nonzero".into(),
        ));
    }
    if fan.degree() > src {
        return Ok(TropicalFan::zero(src, fan.degree()));
    }
    let image = span_basis(n, &s.columns());
    let e_fan = TropicalFan::subspace(n, &image, t.clone());
    let product = fan.stable_product(&e_fan, seed)?;
    let xi_b = standard_complement(n, &image);
    let mut e_frame = xi_b.clone();
    e_frame.extend(image.iter().cloned());
    let d_e = det_columns(&e_frame).abs();

    let mut cones = Vec::new();
    for wc in product.cones() {
        let o_rho = wc.cone.span();
        let xi_a = extend_basis(n, o_rho, &image);
        let eta: Vec<Vector> = xi_a
            .iter()
            .map(|x| match s.solve(x) {
                Ok(LinearSolution::Unique(y)) => Ok(y),
                _ => Err(Error::Precondition(
                    "image vector without unique preimage".into(),
                )),
            })
            .collect::<Result<_>>()?;
        let pre = preimage(s, &wc.cone);
        let mut top: Vec<Vector> = xi_a.clone();
        top.extend(xi_b.iter().cloned());
        top.extend(o_rho.iter().cloned());
        let mut bottom = eta.clone();
        bottom.extend(pre.span().iter().cloned());
        let num = &(&wc.coeff / t) * &det_columns(&top).abs();
        let den = &d_e * &det_columns(&bottom).abs();
        cones.push((pre, &num / &den));
    }
    Ok(TropicalFan::from_cones(src, fan.degree(), cones)?.normalize())
}
