use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Binding;

/// Exponents of one monomial `rho^rho * xi^xi * s^s * gamma^gamma`.
///
/// `rho` and `xi` may be negative (Laurent variables), `s` and `gamma` may not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub rho: i32,
    pub xi: i32,
    pub s: u32,
    pub gamma: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { rho: 0, xi: 0, s: 0, gamma: 0 };

    pub fn new(rho: i32, xi: i32, s: u32, gamma: u32) -> Self {
        Monomial { rho, xi, s, gamma }
    }

    fn mul(self, other: Monomial) -> Monomial {
        Monomial {
            rho: self.rho + other.rho,
            xi: self.xi + other.xi,
            s: self.s + other.s,
            gamma: self.gamma + other.gamma,
        }
    }
}

/// Exact Laurent polynomial in `rho` and `xi`, polynomial in `s` and `gamma`,
/// with rational coefficients.
///
/// Terms with zero coefficient are never stored, so structural equality is
/// mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScalarPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl ScalarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn rho_pow(e: i32) -> Self {
        Self::term(BigRational::one(), Monomial::new(e, 0, 0, 0))
    }

    pub fn xi_pow(e: i32) -> Self {
        Self::term(BigRational::one(), Monomial::new(0, e, 0, 0))
    }

    pub fn s() -> Self {
        Self::term(BigRational::one(), Monomial::new(0, 0, 1, 0))
    }

    pub fn gamma() -> Self {
        Self::term(BigRational::one(), Monomial::new(0, 0, 0, 1))
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Partial derivative with respect to `rho`.
    pub fn d_drho(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.rho != 0 {
                let dm = Monomial { rho: m.rho - 1, ..*m };
                out.add_term(dm, c * BigRational::from_integer(BigInt::from(m.rho)));
            }
        }
        out
    }

    /// Substitutes `s -> s + shift` and expands.
    pub fn shift_s(&self, shift: i64) -> Self {
        let mut out = Self::zero();
        let shift = BigInt::from(shift);
        for (m, c) in &self.terms {
            // (s + shift)^e = sum_i C(e, i) s^i shift^(e - i)
            let e = m.s;
            let mut binom = BigInt::one();
            for i in 0..=e {
                let factor = &binom * num_traits::pow(shift.clone(), (e - i) as usize);
                out.add_term(
                    Monomial { s: i, ..*m },
                    c * BigRational::from_integer(factor),
                );
                binom = binom * BigInt::from(e - i) / BigInt::from(i + 1);
            }
        }
        out
    }

    /// Numeric instantiation at `(s, xi, gamma)`; returns the remaining
    /// Laurent polynomial in `rho` as `exponent -> coefficient`.
    pub fn bind(&self, b: &Binding) -> BTreeMap<i32, f64> {
        self.bind_with_magnitude(b).into_iter().map(|(e, (v, _))| (e, v)).collect()
    }

    /// Like [`ScalarPoly::bind`], also returning for each `rho` power the sum
    /// of absolute values of the monomials that were combined.
    pub fn bind_with_magnitude(&self, b: &Binding) -> BTreeMap<i32, (f64, f64)> {
        let mut out: BTreeMap<i32, (f64, f64)> = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c.to_f64().unwrap_or(f64::NAN)
                * b.xi.powi(m.xi)
                * b.s.powi(m.s as i32)
                * b.gamma.powi(m.gamma as i32);
            let slot = out.entry(m.rho).or_insert((0.0, 0.0));
            slot.0 += v;
            slot.1 += v.abs();
        }
        out
    }

    /// Full numeric evaluation including `rho`.
    pub fn eval(&self, b: &Binding, rho: f64) -> f64 {
        self.bind(b).iter().map(|(e, c)| c * rho.powi(*e)).sum()
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let abs = c.abs();
            let mut factors = Vec::new();
            for (name, e) in [("rho", m.rho), ("xi", m.xi), ("s", m.s as i32), ("gamma", m.gamma as i32)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() || !abs.is_one() {
                write!(f, "{abs}")?;
                if !factors.is_empty() {
                    write!(f, "*")?;
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add<&ScalarPoly> for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&ScalarPoly> for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul<&ScalarPoly> for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(*mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        ScalarPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<ScalarPoly> for ScalarPoly {
            type Output = ScalarPoly;
            fn $method(self, rhs: ScalarPoly) -> ScalarPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ScalarPoly> for ScalarPoly {
            type Output = ScalarPoly;
            fn $method(self, rhs: &ScalarPoly) -> ScalarPoly {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let p = ScalarPoly::s() * ScalarPoly::rho_pow(2);
        assert!((&p - &p).is_zero());
        assert_eq!((&p - &p).len(), 0);
    }

    #[test]
    fn laurent_xi_cancels() {
        let p = ScalarPoly::xi_pow(-1) * ScalarPoly::xi_pow(1);
        assert_eq!(p, ScalarPoly::one());
    }

    #[test]
    fn shift_s_expands_binomially() {
        // s(s-1) -> (s+1)s = s^2 + s
        let ss = &ScalarPoly::s() * &(ScalarPoly::s() - ScalarPoly::one());
        let shifted = ss.shift_s(1);
        let expected = &ScalarPoly::s() * &ScalarPoly::s() + ScalarPoly::s();
        assert_eq!(shifted, expected);
        assert_eq!(ss.shift_s(1).shift_s(-1), ss);
    }

    #[test]
    fn derivative_of_laurent_terms() {
        let p = ScalarPoly::rho_pow(-1).scale(&rational(3, 2)) + ScalarPoly::rho_pow(2);
        let expected = ScalarPoly::rho_pow(-2).scale(&rational(-3, 2)) + ScalarPoly::rho_pow(1).scale(&rational(2, 1));
        assert_eq!(p.d_drho(), expected);
        assert!(ScalarPoly::gamma().d_drho().is_zero());
    }

    #[test]
    fn bind_collects_rho_powers() {
        let p = ScalarPoly::xi_pow(-1) * ScalarPoly::rho_pow(1) + ScalarPoly::s() * ScalarPoly::rho_pow(1);
        let b = Binding { s: 2.0, xi: 0.5, gamma: 1.0 };
        let bound = p.bind(&b);
        assert_eq!(bound.len(), 1);
        assert!((bound[&1] - 4.0).abs() < 1e-15);
    }

    #[test]
    fn display_is_readable() {
        let p = ScalarPoly::s().scale(&rational(-1, 2)) + ScalarPoly::rho_pow(-1);
        assert_eq!(p.to_string(), "rho^-1 - 1/2*s");
    }
}
