//! Quasialgebraic exponential sums `f(z) = sum c_l exp(<z, l>)` with real
//! exponents over the working field.

mod group;
mod parse;
mod trop;

use std::collections::BTreeMap;
use std::fmt;

pub use group::{group_basis, GroupBasis};
pub use trop::{
    hypersurface_trop, infer_field, intersection_index, realize_fan, system_trop, weak_density,
    Route, ScaledDensity,
};

use crate::error::{Error, Result};
use crate::exact::field::{squarefree_split, FieldDescriptor, Scalar};
use crate::exact::matrix::Vector;
use crate::polytope::Polytope;
use parse::{Kind, Node};

/// A complex number with real and imaginary parts in the working field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Complex {
    pub re: Scalar,
    pub im: Scalar,
}

impl Complex {
    pub fn real(re: Scalar) -> Complex {
        Complex {
            re,
            im: Scalar::zero(),
        }
    }

    pub fn one() -> Complex {
        Complex::real(Scalar::one())
    }

    pub fn i() -> Complex {
        Complex {
            re: Scalar::zero(),
            im: Scalar::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Complex) -> Result<Complex> {
        Ok(Complex {
            re: self.re.try_add(&o.re)?,
            im: self.im.try_add(&o.im)?,
        })
    }

    fn neg(&self) -> Complex {
        Complex {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn mul(&self, o: &Complex) -> Result<Complex> {
        let re = self.re.try_mul(&o.re)?.try_sub(&self.im.try_mul(&o.im)?)?;
        let im = self.re.try_mul(&o.im)?.try_add(&self.im.try_mul(&o.re)?)?;
        Ok(Complex { re, im })
    }

    fn div(&self, o: &Complex) -> Result<Complex> {
        let den = o.re.try_mul(&o.re)?.try_add(&o.im.try_mul(&o.im)?)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let conj = Complex {
            re: o.re.clone(),
            im: -o.im.clone(),
        };
        let num = self.mul(&conj)?;
        Ok(Complex {
            re: num.re.try_div(&den)?,
            im: num.im.try_div(&den)?,
        })
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "({})*i", self.im),
            (false, false) => write!(f, "{}+({})*i", self.re, self.im),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Complex,
    pub exponent: Vector,
}

/// An exponential sum with distinct exponents and nonzero coefficients,
/// terms sorted by exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpSum {
    ambient: usize,
    field: FieldDescriptor,
    terms: Vec<Term>,
}

type Poly = BTreeMap<Vector, Complex>;

impl ExpSum {
    /// Parse an expression such as `"exp(z1) - 1"` or `"exp(sqrt2*z) - 3"`.
    pub fn parse(text: &str, field: FieldDescriptor, ambient: usize) -> Result<ExpSum> {
        let node = parse::parse(text)?;
        let ev = Evaluator { field, ambient };
        let poly = ev.sum(&node)?;
        Ok(ExpSum::from_poly(ambient, field, poly))
    }

    /// Build from `(coefficient, exponent)` pairs, merging like terms.
    pub fn from_terms(
        ambient: usize,
        field: FieldDescriptor,
        terms: Vec<(Complex, Vector)>,
    ) -> Result<ExpSum> {
        let mut poly = Poly::new();
        for (c, e) in terms {
            if e.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: e.len(),
                });
            }
            for x in e.iter().chain([&c.re, &c.im]) {
                if !field.contains(x) {
                    return Err(Error::Unrepresentable {
                        constant: x.to_string(),
                        field: field.to_string(),
                    });
                }
            }
            let acc = poly.entry(e).or_default();
            *acc = acc.add(&c)?;
        }
        Ok(ExpSum::from_poly(ambient, field, poly))
    }

    fn from_poly(ambient: usize, field: FieldDescriptor, poly: Poly) -> ExpSum {
        let terms = poly
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponent, coeff)| Term { coeff, exponent })
            .collect();
        ExpSum {
            ambient,
            field,
            terms,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn support(&self) -> Vec<Vector> {
        self.terms.iter().map(|t| t.exponent.clone()).collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() <= 1
    }

    pub fn newton_polytope(&self) -> Result<Polytope> {
        if self.terms.is_empty() {
            return Err(Error::Precondition(
                "the zero sum has no Newton polytope".into(),
            ));
        }
        Polytope::convex_hull(self.ambient, &self.support())
    }

    /// Replace every exponent `l` by `r * l`.
    pub fn scale_exponents(&self, r: &Scalar) -> ExpSum {
        let poly: Poly = self
            .terms
            .iter()
            .map(|t| (t.exponent.iter().map(|x| x * r).collect(), t.coeff.clone()))
            .collect();
        ExpSum::from_poly(self.ambient, self.field, poly)
    }

    /// Source text that parses back to this sum.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let lin: Vec<String> = t
                    .exponent
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| format!("({x})*z{}", j + 1))
                    .collect();
                if lin.is_empty() {
                    format!("({})", t.coeff)
                } else {
                    format!("({})*exp({})", t.coeff, lin.join("+"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parse a constant real expression such as `"1-3/2*sqrt2"`.
pub fn parse_constant(text: &str, field: FieldDescriptor) -> Result<Scalar> {
    let node = parse::parse(text)?;
    let ev = Evaluator { field, ambient: 0 };
    let poly = ev.sum(&node)?;
    let c = poly.get(&Vec::new()).cloned().unwrap_or_default();
    if !c.im.is_zero() {
        return Err(Error::Precondition(format!("{text:?} is not real")));
    }
    Ok(c.re)
}

/// A linear form `sum a_j z_j + b` met inside `exp(...)`.
struct Linear {
    coeffs: Vector,
    constant: Scalar,
}

struct Evaluator {
    field: FieldDescriptor,
    ambient: usize,
}

impl Evaluator {
    fn sqrt(&self, pos: usize, d: u64) -> Result<Scalar> {
        let (s, r) = squarefree_split(d);
        let s = Scalar::from_int(s as i64);
        if r == 1 {
            return Ok(s);
        }
        match self.field {
            FieldDescriptor::Quadratic { d: fd } if fd as u64 == r => Ok(&s * &Scalar::sqrt(fd)),
            _ => Err(Error::Unrepresentable {
                constant: format!("sqrt({d}) at byte {pos}"),
                field: self.field.to_string(),
            }),
        }
    }

    fn constant(&self, c: Complex) -> Poly {
        let mut p = Poly::new();
        if !c.is_zero() {
            p.insert(vec![Scalar::zero(); self.ambient], c);
        }
        p
    }

    fn as_constant(&self, p: &Poly) -> Option<Complex> {
        match p.len() {
            0 => Some(Complex::default()),
            1 => {
                let (e, c) = p.iter().next().expect("one term");
                e.iter().all(Scalar::is_zero).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add(&self, a: &Poly, b: &Poly, negate: bool) -> Result<Poly> {
        let mut out = a.clone();
        for (e, c) in b {
            let c = if negate { c.neg() } else { c.clone() };
            let acc = out.entry(e.clone()).or_default();
            *acc = acc.add(&c)?;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let mut out = Poly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vector = ea
                    .iter()
                    .zip(eb)
                    .map(|(x, y)| x.try_add(y))
                    .collect::<Result<_>>()?;
                let acc = out.entry(e).or_default();
                *acc = acc.add(&ca.mul(cb)?)?;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    fn sum(&self, node: &Node) -> Result<Poly> {
        match &node.kind {
            Kind::Number(x) => Ok(self.constant(Complex::real(Scalar::rational(x.clone())))),
            Kind::Imaginary => Ok(self.constant(Complex::i())),
            Kind::Sqrt(d) => Ok(self.constant(Complex::real(self.sqrt(node.pos, *d)?))),
            Kind::Var(_) => Err(Error::Syntax {
                pos: node.pos,
                msg: "variables may only appear inside exp(...)".into(),
            }),
            Kind::Exp(arg) => {
                let lin = self.linear(arg)?;
                if !lin.constant.is_zero() {
                    return Err(Error::Unrepresentable {
                        constant: format!("exp({}) at byte {}", lin.constant, arg.pos),
                        field: self.field.to_string(),
                    });
                }
                let mut p = Poly::new();
                p.insert(lin.coeffs, Complex::one());
                Ok(p)
            }
            Kind::Neg(a) => self.add(&Poly::new(), &self.sum(a)?, true),
            Kind::Add(a, b) => self.add(&self.sum(a)?, &self.sum(b)?, false),
            Kind::Sub(a, b) => self.add(&self.sum(a)?, &self.sum(b)?, true),
            Kind::Mul(a, b) => self.mul(&self.sum(a)?, &self.sum(b)?),
            Kind::Div(a, b) => {
                let num = self.sum(a)?;
                let den = self
                    .as_constant(&self.sum(b)?)
                    .ok_or_else(|| Error::Syntax {
                        pos: b.pos,
                        msg: "division by a non-constant expression".into(),
                    })?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                num.into_iter()
                    .map(|(e, c)| Ok((e, c.div(&den)?)))
                    .collect()
            }
            Kind::Pow(a, k) => {
                let base = self.sum(a)?;
                let mut acc = self.constant(Complex::one());
                for _ in 0..*k {
                    acc = self.mul(&acc, &base)?;
                }
                Ok(acc)
            }
        }
    }

    fn linear(&self, node: &Node) -> Result<Linear> {
        let n = self.ambient;
        let constant = |c: Scalar| Linear {
            coeffs: vec![Scalar::zero(); n],
            constant: c,
        };
        let not_linear = |msg: &str| Error::Syntax {
            pos: node.pos,
            msg: msg.into(),
        };
        match &node.kind {
            Kind::Number(x) => Ok(constant(Scalar::rational(x.clone()))),
            Kind::Sqrt(d) => Ok(constant(self.sqrt(node.pos, *d)?)),
            Kind::Imaginary => Err(not_linear("exponents must be real")),
            Kind::Exp(_) => Err(not_linear("exp(...) inside an exponent")),
            Kind::Var(k) => {
                let j = match (*k, n) {
                    (0, 1) => 0,
                    (0, _) => return Err(not_linear("bare z is only allowed in dimension 1")),
                    (k, n) if k <= n => k - 1,
                    _ => return Err(not_linear("variable index exceeds the dimension")),
                };
                let mut coeffs = vec![Scalar::zero(); n];
                coeffs[j] = Scalar::one();
                Ok(Linear {
                    coeffs,
                    constant: Scalar::zero(),
                })
            }
            Kind::Neg(a) => {
                let l = self.linear(a)?;
                Ok(Linear {
                    coeffs: l.coeffs.iter().map(|x| -x.clone()).collect(),
                    constant: -l.constant,
                })
            }
            Kind::Add(a, b) | Kind::Sub(a, b) => {
                let (x, y) = (self.linear(a)?, self.linear(b)?);
                let sub = matches!(node.kind, Kind::Sub(..));
                let comb = |p: &Scalar, q: &Scalar| if sub { p.try_sub(q) } else { p.try_add(q) };
                Ok(Linear {
                    coeffs: x
                        .coeffs
                        .iter()
                        .zip(&y.coeffs)
                        .map(|(p, q)| comb(p, q))
                        .collect::<Result<_>>()?,
                    constant: comb(&x.constant, &y.constant)?,
                })
            }
            Kind::Mul(a, b) => {
                let (x, y) = (self.linear(a)?, self.linear(b)?);
                let is_const = |l: &Linear| l.coeffs.iter().all(Scalar::is_zero);
                let (k, l) = if is_const(&x) {
                    (x.constant, y)
                } else if is_const(&y) {
                    (y.constant, x)
                } else {
                    return Err(not_linear("product of two variables in an exponent"));
                };
                Ok(Linear {
                    coeffs: l
                        .coeffs
                        .iter()
                        .map(|c| c.try_mul(&k))
                        .collect::<Result<_>>()?,
                    constant: l.constant.try_mul(&k)?,
                })
            }
            Kind::Div(a, b) => {
                let (x, y) = (self.linear(a)?, self.linear(b)?);
                if !y.coeffs.iter().all(Scalar::is_zero) {
                    return Err(not_linear("division by a variable in an exponent"));
                }
                let k = y.constant.recip()?;
                Ok(Linear {
                    coeffs: x
                        .coeffs
                        .iter()
                        .map(|c| c.try_mul(&k))
                        .collect::<Result<_>>()?,
                    constant: x.constant.try_mul(&k)?,
                })
            }
            Kind::Pow(a, e) => {
                let x = self.linear(a)?;
                if *e == 1 {
                    return Ok(x);
                }
                if !x.coeffs.iter().all(Scalar::is_zero) {
                    return Err(not_linear("power of a variable in an exponent"));
                }
                Ok(constant(x.constant.pow(*e)))
            }
        }
    }
}

#[cfg(test)]
mod tests;
