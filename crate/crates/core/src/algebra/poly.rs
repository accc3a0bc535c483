use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, ExactInt};

/// Dense univariate polynomial over the integers, coefficients stored low to high.
///
/// The coefficient vector never carries trailing zeros, so the zero polynomial
/// is the empty vector and has no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<ExactInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<ExactInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// Builds a polynomial from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<ExactInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The linear form `λ + shift`.
    pub fn linear(shift: i64) -> Self {
        Self::from_i64s(&[shift, 1])
    }

    /// `(λ + shift)^exp`.
    pub fn linear_pow(shift: i64, exp: usize) -> Self {
        Self::linear(shift).pow(exp)
    }

    /// The monomial `c·λ^k`.
    pub fn monomial(c: impl Into<ExactInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c.into());
        Self::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactInt> {
        self.coeffs
    }

    /// Coefficient of `λ^k` (zero above the degree).
    pub fn coeff(&self, k: usize) -> ExactInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&ExactInt> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, v: &ExactInt) -> ExactInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        acc
    }

    pub fn eval_i64(&self, v: i64) -> ExactInt {
        self.eval(&BigInt::from(v))
    }

    pub fn scale(&self, k: &ExactInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn pow(&self, mut exp: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitution `p(λ + k)`, computed by repeated synthetic division.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let k = BigInt::from(k);
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * &k;
                c[j] += t;
            }
        }
        Self::from_coeffs(c)
    }

    /// Content (gcd of coefficients, non-negative).
    pub fn content(&self) -> ExactInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact division by an integer scalar; `None` if some coefficient is not divisible.
    pub fn div_exact_scalar(&self, d: &ExactInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::from_coeffs(out))
    }

    /// Division with remainder over the rationals, returning `(q, r, s)` with
    /// `s^k · self = q · d + r` for a positive integer scale `s` that makes
    /// every step integral. When `d` is monic the scale is 1.
    fn pseudo_div_rem(&self, d: &Self) -> (Self, Self, ExactInt) {
        let dd = d.degree().expect("nonzero divisor");
        let lead = d.leading_coeff().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        let mut scale = BigInt::one();
        if rem.len() <= dd {
            return (Self::zero(), self.clone(), scale);
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = rem[i + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            let q = if r.is_zero() {
                q
            } else {
                // Rescale everything so this step divides exactly.
                let g = top.gcd(&lead);
                let f = &lead / &g;
                for c in rem.iter_mut() {
                    *c *= &f;
                }
                for c in quot.iter_mut() {
                    *c *= &f;
                }
                scale *= &f;
                &top * &f / &lead
            };
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem), scale)
    }

    /// Tests `d | self` over the rationals.
    ///
    /// On success returns `(q, s)` with `self = q · d / s`: `q` is an integer
    /// polynomial and `s` a positive integer; `s = 1` whenever the division is
    /// exact over the integers (always the case for monic `d`).
    pub fn divides_by(&self, d: &Self) -> Result<Option<(Self, ExactInt)>, AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::ZeroDivisor);
        }
        let (q, r, s) = self.pseudo_div_rem(d);
        if !r.is_zero() {
            return Ok(None);
        }
        // Reduce q / s to lowest terms.
        if q.is_zero() {
            return Ok(Some((q, BigInt::one())));
        }
        let g = q.content().gcd(&s);
        if g.is_one() {
            return Ok(Some((q, s)));
        }
        let q = q.div_exact_scalar(&g).expect("content divides");
        Ok(Some((q, s / g)))
    }

    /// Exact quotient `self / d` when it is an integer polynomial.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        match self.divides_by(d) {
            Ok(Some((q, s))) if s.is_one() => Some(q),
            _ => None,
        }
    }

    /// Multiplicity of the root `-alpha`, i.e. the largest `k` with `(λ+alpha)^k | self`.
    /// The zero polynomial has no finite order and returns `None`.
    pub fn order_at(&self, alpha: i64) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let shifted = self.shift(-alpha);
        shifted.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "λ")?,
                (1, false) => write!(f, "{mag}λ")?,
                (_, true) => write!(f, "λ^{k}")?,
                (_, false) => write!(f, "{mag}λ^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut c = long.coeffs.clone();
        for (a, b) in c.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPolynomial::from_coeffs(c)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(c)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: &IntPolynomial) -> IntPolynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for IntPolynomial {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}
