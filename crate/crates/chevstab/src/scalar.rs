use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Exact rational scalar used throughout the engine.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A Laurent polynomial in the two formal symbols `q` and `w` with exact
/// rational coefficients. Keys are `(q-exponent, w-exponent)`; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<(i64, i64), Rat>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        Laurent { terms }
    }

    /// `c * q^a * w^b`.
    pub fn monomial(c: Rat, a: i64, b: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        Laurent { terms }
    }

    pub fn q_pow(a: i64) -> Self {
        Self::monomial(Rat::one(), a, 0)
    }

    pub fn w_pow(b: i64) -> Self {
        Self::monomial(Rat::one(), 0, b)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: i64, b: i64) -> Rat {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, key: (i64, i64), c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v * c))
                .collect(),
        }
    }

    /// Substitutes `q -> q^n`, `w -> w^n`.
    pub fn substitute_power(&self, n: i64) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a * n, b * n), v.clone()))
                .collect(),
        }
    }

    /// Evaluates at a rational value of `q`; fails if any `w` appears.
    pub fn eval_q(&self, q: &Rat) -> Option<Rat> {
        let mut acc = Rat::zero();
        for (&(a, b), c) in &self.terms {
            if b != 0 {
                return None;
            }
            acc += c * pow_rat(q, a);
        }
        Some(acc)
    }

    /// True if the polynomial involves only `q` (no `w`).
    pub fn is_q_only(&self) -> bool {
        self.terms.keys().all(|&(_, b)| b == 0)
    }
}

pub fn pow_rat(base: &Rat, exp: i64) -> Rat {
    if exp >= 0 {
        num::pow::pow(base.clone(), exp as usize)
    } else {
        num::pow::pow(base.clone(), (-exp) as usize)
            .recip()
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v);
        }
        out
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, v);
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        out
    }
}

fn fmt_coeff(c: &Rat, lead: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if lead {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    Ok(())
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            fmt_coeff(c, i == 0, f)?;
            let abs = c.abs();
            let has_sym = a != 0 || b != 0;
            if !has_sym || !abs.is_one() {
                write!(f, "{abs}")?;
                if has_sym {
                    write!(f, "*")?;
                }
            }
            if a != 0 {
                if a == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{a}")?;
                }
                if b != 0 {
                    write!(f, "*")?;
                }
            }
            if b != 0 {
                if b == 1 {
                    write!(f, "w")?;
                } else {
                    write!(f, "w^{b}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Laurent polynomial in a single symbol, used for Poincaré-type outputs.
/// Keys are exponents of the display symbol.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly1 {
    pub symbol: char,
    terms: BTreeMap<i64, Rat>,
}

impl Poly1 {
    pub fn zero(symbol: char) -> Self {
        Poly1 {
            symbol,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, exp: i64, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> Rat {
        self.terms.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            fmt_coeff(c, i == 0, f)?;
            let abs = c.abs();
            if e == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
                if e != 0 {
                    write!(f, "*")?;
                }
            }
            if e == 1 {
                write!(f, "{}", self.symbol)?;
            } else if e != 0 {
                write!(f, "{}^{}", self.symbol, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_arithmetic() {
        let a = &Laurent::one() - &Laurent::q_pow(-1);
        let b = &Laurent::one() + &Laurent::q_pow(-1);
        let prod = &a * &b;
        assert_eq!(prod, &Laurent::one() - &Laurent::q_pow(-2));
        assert_eq!(prod.eval_q(&rat(2)).unwrap(), rat_frac(3, 4));
    }

    #[test]
    fn display_is_sorted_and_stable() {
        let mut p = Laurent::zero();
        p.add_term((1, 0), &rat(1));
        p.add_term((0, 0), &rat(-2));
        p.add_term((0, 2), &rat_frac(1, 3));
        assert_eq!(p.to_string(), "-2 + 1/3*w^2 + q");
    }

    #[test]
    fn substitute_power_scales_exponents() {
        let p = &Laurent::q_pow(1) + &Laurent::w_pow(-2);
        let s = p.substitute_power(3);
        assert_eq!(s, &Laurent::q_pow(3) + &Laurent::w_pow(-6));
    }
}
