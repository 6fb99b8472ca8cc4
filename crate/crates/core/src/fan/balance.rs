use std::collections::BTreeMap;

use crate::cone::Cone;
use crate::exact::matrix::{det_columns, standard_complement, Vector};
use crate::exact::ExteriorForm;
use crate::fan::{accumulate_cells, TropicalFan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    pub violations: Vec<String>,
}

/// Kernel condition on every cone, then the closed-chain condition on the
/// codimension-one walls of the normalized fan.
pub(crate) fn balance_check(fan: &TropicalFan) -> BalanceReport {
    let n = fan.ambient();
    let fan = fan.normalize();
    let mut violations = Vec::new();

    for (i, wc) in fan.cones().iter().enumerate() {
        let w = fan.weight_form(i);
        if wc.cone.span().iter().any(|v| !w.contract(v).is_zero()) {
            violations.push(format!(
                "weight does not vanish on the span of cone {:?}",
                wc.cone.rays()
            ));
        }
    }

    // boundary terms grouped by wall span
    let mut walls: BTreeMap<Vec<Vector>, Vec<(Cone, ExteriorForm)>> = BTreeMap::new();
    for (i, wc) in fan.cones().iter().enumerate() {
        let o_sigma = wc.cone.span();
        let xi = standard_complement(n, o_sigma);
        let mut full: Vec<Vector> = xi.clone();
        full.extend(o_sigma.iter().cloned());
        let d_sigma = det_columns(&full);
        let w = fan.weight_form(i);
        for (inward, tau) in wc.cone.facet_faces() {
            let outward: Vector = inward.iter().map(|x| -x.clone()).collect();
            let mut induced = xi.clone();
            induced.extend(tau.span().iter().cloned());
            induced.push(outward);
            let r = &d_sigma / &det_columns(&induced);
            let term = if r.is_negative() {
                w.scale(&-crate::Scalar::one())
            } else {
                w.clone()
            };
            walls
                .entry(tau.span().to_vec())
                .or_default()
                .push((tau, term));
        }
    }

    for (_, terms) in walls {
        let zero = |c: &Cone| ExteriorForm::zero(n, n - c.dim() - 1);
        let cells = accumulate_cells(terms, zero, |a, b| a.add(b).expect("same degree"));
        for (cell, sum) in cells {
            if !sum.is_zero() {
                violations.push(format!(
                    "boundary does not close at the cone with rays {:?} and lineality {:?}: residual {:?}",
                    cell.rays(),
                    cell.lineality(),
                    sum
                ));
            }
        }
    }

    BalanceReport {
        balanced: violations.is_empty(),
        violations,
    }
}
