use crate::error::{Error, Result};
use crate::grading::MultiDegree;
use crate::scalar::{rat, Laurent, Rat};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A multivariate formal power series in `t_1..t_m`, truncated at total
/// degree `bound`, with coefficients Laurent polynomials in `q` and `w`.
///
/// Invariants: every stored key has total degree <= `bound`; zero
/// coefficients are absent.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    num_vars: usize,
    bound: u32,
    coeffs: BTreeMap<MultiDegree, Laurent>,
}

impl TruncatedSeries {
    pub fn zero(num_vars: usize, bound: u32) -> Self {
        TruncatedSeries {
            num_vars,
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize, bound: u32) -> Self {
        let mut s = Self::zero(num_vars, bound);
        s.add_term(MultiDegree::zero(num_vars), Laurent::one());
        s
    }

    pub fn monomial(d: MultiDegree, c: Laurent, bound: u32) -> Self {
        let mut s = Self::zero(d.num_colors(), bound);
        s.add_term(d, c);
        s
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn coeff(&self, d: &MultiDegree) -> Laurent {
        self.coeffs.get(d).cloned().unwrap_or_else(Laurent::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiDegree, &Laurent)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, d: MultiDegree, c: Laurent) {
        assert_eq!(d.num_colors(), self.num_vars);
        if d.total() > self.bound || c.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(d.clone())
            .or_insert_with(Laurent::zero);
        *entry += &c;
        if entry.is_zero() {
            self.coeffs.remove(&d);
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars || self.bound != other.bound {
            return Err(Error::Shape(format!(
                "series of shape ({}, D={}) vs ({}, D={})",
                self.num_vars, self.bound, other.num_vars, other.bound
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            num_vars: self.num_vars,
            bound: self.bound,
            coeffs: self.coeffs.iter().map(|(d, c)| (d.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars, self.bound);
        }
        TruncatedSeries {
            num_vars: self.num_vars,
            bound: self.bound,
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, v)| (d.clone(), v.scale(c)))
                .collect(),
        }
    }

    /// Coefficient-wise convolution truncated at the common bound.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = Self::zero(self.num_vars, self.bound);
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &other.coeffs {
                if d1.total() + d2.total() > self.bound {
                    continue;
                }
                out.add_term(d1.add(d2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// `sum_{j>=0} f^j / j!`; requires zero constant coefficient.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(&MultiDegree::zero(self.num_vars)).is_zero() {
            return Err(Error::Domain(
                "series_exp needs zero constant term".into(),
            ));
        }
        let mut out = Self::one(self.num_vars, self.bound);
        let mut term = Self::one(self.num_vars, self.bound);
        for j in 1..=self.bound.max(1) {
            term = term.mul(self)?.scale(&(rat(1) / rat(j as i64)));
            if term.is_zero() {
                break;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// `log(1 + g)` for the argument `1 + g`; requires constant coefficient 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeff(&MultiDegree::zero(self.num_vars)) != Laurent::one() {
            return Err(Error::Domain("series_log needs constant term 1".into()));
        }
        let g = self.sub(&Self::one(self.num_vars, self.bound))?;
        let mut out = Self::zero(self.num_vars, self.bound);
        let mut pw = Self::one(self.num_vars, self.bound);
        for j in 1..=self.bound.max(1) {
            pw = pw.mul(&g)?;
            if pw.is_zero() {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            out = out.add(&pw.scale(&(rat(sign) / rat(j as i64))))?;
        }
        Ok(out)
    }

    /// Multiplicative inverse; requires constant coefficient 1.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeff(&MultiDegree::zero(self.num_vars)) != Laurent::one() {
            return Err(Error::Domain(
                "series inverse needs constant term 1".into(),
            ));
        }
        // 1/(1+g) = sum (-g)^j.
        let g = self
            .sub(&Self::one(self.num_vars, self.bound))?
            .neg();
        let mut out = Self::one(self.num_vars, self.bound);
        let mut pw = Self::one(self.num_vars, self.bound);
        for _ in 1..=self.bound.max(1) {
            pw = pw.mul(&g)?;
            if pw.is_zero() {
                break;
            }
            out = out.add(&pw)?;
        }
        Ok(out)
    }

    /// Moves every key `d` to `n*d`, dropping keys that overflow the bound.
    /// Coefficients are untouched; substitute `q`/`w` powers via
    /// [`TruncatedSeries::map_coeffs`] when needed.
    pub fn substitute_power(&self, n: u32) -> Self {
        assert!(n >= 1);
        let mut out = Self::zero(self.num_vars, self.bound);
        for (d, c) in &self.coeffs {
            out.add_term(d.scale(n), c.clone());
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Laurent) -> Laurent) -> Self {
        let mut out = Self::zero(self.num_vars, self.bound);
        for (d, c) in &self.coeffs {
            out.add_term(d.clone(), f(c));
        }
        out
    }

    /// Sum of all coefficients (evaluation at `t_i = 1`).
    pub fn eval_all_ones(&self) -> Laurent {
        let mut acc = Laurent::zero();
        for c in self.coeffs.values() {
            acc += c;
        }
        acc
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 + O(t^{})", self.bound + 1);
        }
        for (i, (d, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (k, p) in d.parts().iter().enumerate() {
                if *p == 0 {
                    continue;
                }
                if self.num_vars == 1 {
                    write!(f, "*t")?;
                } else {
                    write!(f, "*t{}", k + 1)?;
                }
                if *p > 1 {
                    write!(f, "^{p}")?;
                }
            }
        }
        write!(f, " + O(t^{})", self.bound + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `1/(1 - c*t^d)` truncated: the geometric series on one monomial.
pub fn geometric(d: &MultiDegree, c: &Laurent, bound: u32) -> TruncatedSeries {
    let mut out = TruncatedSeries::one(d.num_colors(), bound);
    if d.is_zero() {
        panic!("geometric series needs a nonconstant monomial");
    }
    let mut key = d.clone();
    let mut pw = c.clone();
    while key.total() <= bound {
        out.add_term(key.clone(), pw.clone());
        key = key.add(d);
        pw = &pw * c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_frac;

    fn t(num_vars: usize, bound: u32) -> TruncatedSeries {
        TruncatedSeries::monomial(
            MultiDegree::unit(num_vars, 0),
            Laurent::one(),
            bound,
        )
    }

    #[test]
    fn mul_polynomial_identity() {
        // (1+t)(1-t) = 1-t^2 at D=4.
        let one = TruncatedSeries::one(1, 4);
        let a = one.add(&t(1, 4)).unwrap();
        let b = one.sub(&t(1, 4)).unwrap();
        let p = a.mul(&b).unwrap();
        let expected = one
            .sub(&TruncatedSeries::monomial(
                MultiDegree::new(vec![2]),
                Laurent::one(),
                4,
            ))
            .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn mul_geometric_truncates() {
        // (sum_{d<=4} t^d)(1-t) = 1 at D=4.
        let geo = geometric(&MultiDegree::new(vec![1]), &Laurent::one(), 4);
        let b = TruncatedSeries::one(1, 4).sub(&t(1, 4)).unwrap();
        assert_eq!(geo.mul(&b).unwrap(), TruncatedSeries::one(1, 4));
    }

    #[test]
    fn mul_with_q_coefficients() {
        // (1+qt)^2 = 1 + 2qt + q^2 t^2.
        let a = TruncatedSeries::one(1, 4)
            .add(&TruncatedSeries::monomial(
                MultiDegree::new(vec![1]),
                Laurent::q_pow(1),
                4,
            ))
            .unwrap();
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.coeff(&MultiDegree::new(vec![1])), Laurent::q_pow(1).scale(&rat(2)));
        assert_eq!(sq.coeff(&MultiDegree::new(vec![2])), Laurent::q_pow(2));
        assert_eq!(sq.coeff(&MultiDegree::new(vec![3])), Laurent::zero());
    }

    #[test]
    fn exp_of_minus_log_one_minus_t() {
        // exp(sum t^n/n) = sum t^d, D=6.
        let mut f = TruncatedSeries::zero(1, 6);
        for n in 1..=6 {
            f.add_term(
                MultiDegree::new(vec![n]),
                Laurent::constant(rat_frac(1, n as i64)),
            );
        }
        let e = f.exp().unwrap();
        let geo = geometric(&MultiDegree::new(vec![1]), &Laurent::one(), 6);
        assert_eq!(e, geo);
    }

    #[test]
    fn exp_with_q_powers() {
        // exp(sum q^n t^n / n) = sum q^d t^d, D=4.
        let mut f = TruncatedSeries::zero(1, 4);
        for n in 1..=4i64 {
            f.add_term(
                MultiDegree::new(vec![n as u32]),
                Laurent::q_pow(n).scale(&rat_frac(1, n)),
            );
        }
        let e = f.exp().unwrap();
        let geo = geometric(&MultiDegree::new(vec![1]), &Laurent::q_pow(1), 4);
        assert_eq!(e, geo);
    }

    #[test]
    fn exp_zero_is_one() {
        assert_eq!(
            TruncatedSeries::zero(2, 5).exp().unwrap(),
            TruncatedSeries::one(2, 5)
        );
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert!(TruncatedSeries::one(1, 3).exp().is_err());
    }

    #[test]
    fn substitute_power_examples() {
        let f = t(1, 5);
        assert_eq!(
            f.substitute_power(3),
            TruncatedSeries::monomial(MultiDegree::new(vec![3]), Laurent::one(), 5)
        );
        // 1 + t + t^2 with t -> t^2 at D=3 drops the t^4 term.
        let mut g = TruncatedSeries::one(1, 3);
        g.add_term(MultiDegree::new(vec![1]), Laurent::one());
        g.add_term(MultiDegree::new(vec![2]), Laurent::one());
        let sub = g.substitute_power(2);
        let mut expected = TruncatedSeries::one(1, 3);
        expected.add_term(MultiDegree::new(vec![2]), Laurent::one());
        assert_eq!(sub, expected);
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let b = TruncatedSeries::one(1, 6).sub(&t(1, 6)).unwrap();
        let inv = b.inverse().unwrap();
        assert_eq!(inv, geometric(&MultiDegree::new(vec![1]), &Laurent::one(), 6));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = TruncatedSeries::one(1, 4);
        let b = TruncatedSeries::one(2, 4);
        assert!(a.mul(&b).is_err());
    }
}
