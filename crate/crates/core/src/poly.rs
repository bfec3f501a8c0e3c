//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Integer polynomial, coefficients stored constant term first.
///
/// Trailing zero coefficients are never stored, so the zero polynomial is the
/// empty vector and `degree` is `None` for it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `x^deg * p(1/x)`, i.e. the coefficient sequence reversed.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs)
    }

    /// `p(t * x)` for `t = +1` or `t = -1`.
    pub fn scale_var_sign(&self, t: i32) -> Self {
        if t >= 0 {
            return self.clone();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Number of leading zero coefficients, i.e. the largest `k` with `x^k | p`.
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out `x^k`; panics if `x^k` does not divide.
    pub fn strip_x_power(&self, k: usize) -> Self {
        assert!(k <= self.x_valuation(), "x^{k} does not divide polynomial");
        Self::new(self.coeffs[k..].to_vec())
    }

    /// Gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact division over the integers; `None` if the quotient is not an
    /// integer polynomial or the remainder is nonzero.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = rat_div_rem(&to_rat(self), &to_rat(divisor));
        if !r.is_empty() {
            return None;
        }
        from_rat_integral(&q)
    }

    /// Primitive gcd over `Q[x]` (content-free, positive leading coefficient).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = to_rat(self);
        let mut b = to_rat(other);
        while !b.is_empty() {
            let (_, r) = rat_div_rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            return IntPoly::zero();
        }
        let denom_lcm = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = a
            .iter()
            .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        IntPoly::new(ints).primitive()
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

type RatVec = Vec<BigRational>;

fn to_rat(p: &IntPoly) -> RatVec {
    p.coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn from_rat_integral(v: &RatVec) -> Option<IntPoly> {
    let mut out = Vec::with_capacity(v.len());
    for c in v {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(IntPoly::new(out))
}

fn rat_trim(v: &mut RatVec) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn rat_div_rem(a: &RatVec, b: &RatVec) -> (RatVec, RatVec) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.clone();
    rat_trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let factor = rem.last().unwrap() / lead;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &factor * bc;
        }
        quot[shift] = factor;
        rem.pop();
        rat_trim(&mut rem);
    }
    rat_trim(&mut quot);
    (quot, rem)
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(s)
    }
}

impl fmt::Display for IntPoly {
    /// Highest degree first, e.g. `x^4 - x^3 - 2x^2 + x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_conventional_form() {
        let p = IntPoly::from_i64(&[1, 1, -2, -1, 1]);
        assert_eq!(p.to_string(), "x^4 - x^3 - 2x^2 + x + 1");
        assert_eq!(IntPoly::from_i64(&[-3]).to_string(), "-3");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = IntPoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(IntPoly::from_i64(&[0, 0]).degree(), None);
    }

    #[test]
    fn exact_division_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let a = IntPoly::from_i64(&[-1, 0, 1]);
        let b = IntPoly::from_i64(&[1, 1]);
        assert_eq!(a.div_exact(&b), Some(IntPoly::from_i64(&[-1, 1])));
        assert_eq!(a.div_exact(&IntPoly::from_i64(&[1, 2])), None);
        let c = IntPoly::from_i64(&[2, 2]);
        assert_eq!(a.gcd(&c), IntPoly::from_i64(&[1, 1]));
        assert_eq!(a.gcd(&IntPoly::from_i64(&[1, 0, 1])), IntPoly::one());
    }

    #[test]
    fn valuation_and_strip() {
        let p = IntPoly::from_i64(&[0, 0, 3, 1]);
        assert_eq!(p.x_valuation(), 2);
        assert_eq!(p.strip_x_power(2), IntPoly::from_i64(&[3, 1]));
    }

    #[test]
    fn reverse_and_sign_substitution() {
        let q = IntPoly::from_i64(&[1, -1, -1]);
        assert_eq!(q.reversed(), IntPoly::from_i64(&[-1, -1, 1]));
        assert_eq!(q.scale_var_sign(-1), IntPoly::from_i64(&[1, 1, -1]));
    }
}
