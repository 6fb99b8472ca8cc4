//! Fourier–Motzkin elimination for mixed strict/weak linear systems over an
//! ordered field, with a witness point on success.

use crate::exact::field::Scalar;
use crate::exact::matrix::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `a . x >= b`
    AtLeast,
    /// `a . x > b`
    Exceeds,
    /// `a . x = b`
    Equals,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vector,
    pub relation: Relation,
    pub rhs: Scalar,
}

impl Constraint {
    pub fn new(coeffs: Vector, relation: Relation, rhs: Scalar) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn holds_at(&self, x: &[Scalar]) -> bool {
        let lhs = crate::exact::matrix::dot(&self.coeffs, x);
        match self.relation {
            Relation::AtLeast => lhs >= self.rhs,
            Relation::Exceeds => lhs > self.rhs,
            Relation::Equals => lhs == self.rhs,
        }
    }
}

/// One-sided inequality `a . x (>= | >) b` used internally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Ineq {
    a: Vector,
    b: Scalar,
    strict: bool,
}

fn to_ineqs(cs: &[Constraint]) -> Vec<Ineq> {
    let mut out = Vec::new();
    for c in cs {
        match c.relation {
            Relation::AtLeast | Relation::Exceeds => out.push(Ineq {
                a: c.coeffs.clone(),
                b: c.rhs.clone(),
                strict: c.relation == Relation::Exceeds,
            }),
            Relation::Equals => {
                out.push(Ineq {
                    a: c.coeffs.clone(),
                    b: c.rhs.clone(),
                    strict: false,
                });
                out.push(Ineq {
                    a: c.coeffs.iter().map(|x| -x.clone()).collect(),
                    b: -c.rhs.clone(),
                    strict: false,
                });
            }
        }
    }
    out
}

/// Scale so the first nonzero coefficient has absolute value one; helps
/// deduplication between elimination rounds.
fn normalize(mut q: Ineq) -> Ineq {
    if let Some(p) = q.a.iter().find(|x| !x.is_zero()) {
        let s = p.abs().recip().expect("nonzero");
        q.a = q.a.iter().map(|x| x * &s).collect();
        q.b = &q.b * &s;
    }
    q
}

fn eliminate(system: &[Ineq], j: usize) -> Vec<Ineq> {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut out: Vec<Ineq> = Vec::new();
    for q in system {
        match q.a[j].signum() {
            1 => lower.push(q),
            -1 => upper.push(q),
            _ => out.push(q.clone()),
        }
    }
    for p in &lower {
        for n in &upper {
            let sp = p.a[j].recip().expect("nonzero");
            let sn = (-n.a[j].clone()).recip().expect("nonzero");
            let a: Vector =
                p.a.iter()
                    .zip(&n.a)
                    .map(|(x, y)| &(x * &sp) + &(y * &sn))
                    .collect();
            let b = &(&p.b * &sp) + &(&n.b * &sn);
            out.push(Ineq {
                a,
                b,
                strict: p.strict || n.strict,
            });
        }
    }
    let mut seen = std::collections::HashSet::new();
    out.into_iter()
        .map(normalize)
        .filter(|q| seen.insert(q.clone()))
        .collect()
}

/// A point satisfying every constraint, or `None` when infeasible.
pub fn feasible_point(n: usize, constraints: &[Constraint]) -> Option<Vector> {
    let mut stages = vec![to_ineqs(constraints)];
    for j in (0..n).rev() {
        let next = eliminate(stages.last().expect("nonempty"), j);
        stages.push(next);
    }
    // all variables gone: constant constraints 0 >= b or 0 > b
    for q in stages.last().expect("nonempty") {
        let ok = if q.strict {
            q.b.is_negative()
        } else {
            !q.b.is_positive()
        };
        if !ok {
            return None;
        }
    }
    // back-substitute x_0, x_1, ... using the stage that still contains them
    let mut x = vec![Scalar::zero(); n];
    for j in 0..n {
        let stage = &stages[n - 1 - j];
        let mut lo: Option<(Scalar, bool)> = None;
        let mut hi: Option<(Scalar, bool)> = None;
        for q in stage {
            let c = &q.a[j];
            if c.is_zero() {
                continue;
            }
            let rest: Scalar = (0..j).map(|i| &q.a[i] * &x[i]).sum();
            let bound = &(&q.b - &rest) / c;
            if c.is_positive() {
                let tighter = match &lo {
                    None => true,
                    Some((v, s)) => bound > *v || (bound == *v && q.strict && !s),
                };
                if tighter {
                    lo = Some((bound, q.strict));
                }
            } else {
                let tighter = match &hi {
                    None => true,
                    Some((v, s)) => bound < *v || (bound == *v && q.strict && !s),
                };
                if tighter {
                    hi = Some((bound, q.strict));
                }
            }
        }
        x[j] = match (lo, hi) {
            (None, None) => Scalar::zero(),
            (Some((l, s)), None) => {
                if s {
                    l + Scalar::one()
                } else {
                    l
                }
            }
            (None, Some((h, s))) => {
                if s {
                    h - Scalar::one()
                } else {
                    h
                }
            }
            (Some((l, _)), Some((h, _))) => {
                if l == h {
                    l
                } else {
                    (l + h) / Scalar::from_int(2)
                }
            }
        };
    }
    debug_assert!(constraints.iter().all(|c| c.holds_at(&x)));
    Some(x)
}

pub fn is_feasible(n: usize, constraints: &[Constraint]) -> bool {
    feasible_point(n, constraints).is_some()
}
