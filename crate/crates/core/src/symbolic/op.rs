use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Binding, ScalarPoly};

/// Linear differential operator `sum_d c_d(rho, xi, s, gamma) (d/drho)^d`.
///
/// Orders with a zero coefficient are not stored; the zero operator has an
/// empty map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffOp {
    coeffs: BTreeMap<u32, ScalarPoly>,
}

impl DiffOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::multiplication(ScalarPoly::one())
    }

    /// `(d/drho)^order`.
    pub fn derivative(order: u32) -> Self {
        Self::from_terms([(order, ScalarPoly::one())])
    }

    /// Multiplication by a scalar function.
    pub fn multiplication(p: ScalarPoly) -> Self {
        Self::from_terms([(0, p)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, ScalarPoly)>) -> Self {
        let mut op = Self::zero();
        for (d, p) in terms {
            op.add_at(d, &p);
        }
        op
    }

    fn add_at(&mut self, order: u32, p: &ScalarPoly) {
        if p.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&order) {
            Some(existing) => existing + p,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&order);
        } else {
            self.coeffs.insert(order, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest derivative order, `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, order: u32) -> Option<&ScalarPoly> {
        self.coeffs.get(&order)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &ScalarPoly)> {
        self.coeffs.iter().map(|(d, p)| (*d, p))
    }

    /// Total number of stored monomials; zero iff the operator is zero.
    pub fn term_count(&self) -> usize {
        self.coeffs.values().map(ScalarPoly::len).sum()
    }

    /// Left multiplication of every coefficient by `p`.
    pub fn scale(&self, p: &ScalarPoly) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(d, c)| (*d, p * c)))
    }

    /// `self ∘ rhs`: apply `rhs` first, then `self`. Leibniz rule
    /// `D^a q = sum_i C(a,i) (D^i q) D^(a-i)` moves derivatives past
    /// coefficients.
    pub fn compose(&self, rhs: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (a, p) in &self.coeffs {
            for (b, q) in &rhs.coeffs {
                let mut dq = q.clone();
                let mut binom = BigInt::from(1);
                for i in 0..=*a {
                    if dq.is_zero() {
                        break;
                    }
                    let c = BigRational::from_integer(binom.clone());
                    out.add_at(a - i + b, &(p * &dq).scale(&c));
                    dq = dq.d_drho();
                    binom = binom * BigInt::from(a - i) / BigInt::from(i + 1);
                }
            }
        }
        out
    }

    /// `[self, rhs] = self∘rhs - rhs∘self`.
    pub fn commutator(&self, rhs: &DiffOp) -> DiffOp {
        &self.compose(rhs) - &rhs.compose(self)
    }

    /// Substitutes `s -> s + shift` in every coefficient.
    pub fn shift_s(&self, shift: i64) -> DiffOp {
        Self::from_terms(self.coeffs.iter().map(|(d, p)| (*d, p.shift_s(shift))))
    }

    /// Numeric instantiation; the result still acts on functions of `rho`.
    pub fn bind(&self, b: &Binding) -> BoundOp {
        let mut terms = Vec::new();
        for (d, p) in &self.coeffs {
            for (e, (c, magnitude)) in p.bind_with_magnitude(b) {
                if c != 0.0 {
                    terms.push(BoundTerm { order: *d, rho_exp: e, coeff: c, magnitude });
                }
            }
        }
        BoundOp { terms }
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(d, p)| match d {
                0 => format!("({p})"),
                1 => format!("({p}) D"),
                _ => format!("({p}) D^{d}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add<&DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (d, p) in &rhs.coeffs {
            out.add_at(*d, p);
        }
        out
    }
}

impl Sub<&DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self + &(-rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            coeffs: self.coeffs.iter().map(|(d, p)| (*d, -p)).collect(),
        }
    }
}

impl Add for DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: DiffOp) -> DiffOp {
        &self + &rhs
    }
}

impl Sub for DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: DiffOp) -> DiffOp {
        &self - &rhs
    }
}

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        -&self
    }
}

/// One term `coeff * rho^rho_exp * (d/drho)^order` of a numerically bound operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundTerm {
    pub order: u32,
    pub rho_exp: i32,
    pub coeff: f64,
    /// Sum of the magnitudes of the monomials that were added into `coeff`;
    /// bounds its rounding error.
    pub magnitude: f64,
}

impl BoundTerm {
    pub fn new(order: u32, rho_exp: i32, coeff: f64) -> Self {
        BoundTerm { order, rho_exp, coeff, magnitude: coeff.abs() }
    }
}

/// A differential operator whose coefficients are numeric Laurent
/// polynomials in `rho`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoundOp {
    terms: Vec<BoundTerm>,
}

impl BoundOp {
    pub fn new(terms: Vec<BoundTerm>) -> Self {
        BoundOp { terms: terms.into_iter().filter(|t| t.coeff != 0.0).collect() }
    }

    pub fn terms(&self) -> &[BoundTerm] {
        &self.terms
    }

    pub fn max_order(&self) -> u32 {
        self.terms.iter().map(|t| t.order).max().unwrap_or(0)
    }

    /// Coefficient of `(d/drho)^order` evaluated at `rho`.
    pub fn coeff_at(&self, order: u32, rho: f64) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.order == order)
            .map(|t| t.coeff * rho.powi(t.rho_exp))
            .sum()
    }

    pub fn scaled(&self, factor: f64) -> BoundOp {
        BoundOp::new(
            self.terms
                .iter()
                .map(|t| BoundTerm { coeff: t.coeff * factor, magnitude: t.magnitude * factor.abs(), ..*t })
                .collect(),
        )
    }

    pub fn plus(&self, other: &BoundOp) -> BoundOp {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        BoundOp::new(terms)
    }
}
