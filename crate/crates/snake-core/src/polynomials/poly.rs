//! Dense univariate polynomials with arbitrary-precision integer
//! coefficients, stored lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PolyError;

/// A polynomial in one indeterminate over the integers.
///
/// The coefficient vector is kept normalized: the leading coefficient is
/// nonzero unless the polynomial is zero, in which case the vector is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from coefficients in ascending degree order.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        IntPoly::constant(1)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x - a`.
    pub fn x_minus(a: impl Into<BigInt>) -> Self {
        Self::new(vec![-a.into(), BigInt::one()])
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficients in ascending degree order, trailing zeros trimmed.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Exact evaluation at a rational point. Used by the spectral checks so
    /// that residuals are judged without accumulated rounding error.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// `p(q(x))` by Horner over the polynomial ring.
    pub fn compose(&self, inner: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &IntPoly::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn mul_scalar(&self, s: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Long division with remainder over the integers. Every leading-term
    /// division must be exact (the divisors in this crate are monic), else
    /// `NonExactDivision` is reported.
    pub fn div_rem(&self, d: &IntPoly) -> Result<(IntPoly, IntPoly), PolyError> {
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dd = d.degree().expect("nonzero divisor");
        let dl = d.leading().expect("nonzero divisor").clone();
        let mut rem = self.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let lead = rem.leading().expect("nonzero remainder");
            let (q, r) = num_integer::Integer::div_rem(lead, &dl);
            if !r.is_zero() {
                return Err(PolyError::NonExactDivision { degree: rd });
            }
            let shift = rd - dd;
            let mut sub = vec![BigInt::zero(); shift];
            sub.extend(d.coeffs.iter().map(|c| c * &q));
            rem = &rem - &IntPoly::new(sub);
            quot[shift] = q;
        }
        Ok((IntPoly::new(quot), rem))
    }

    /// Coefficient array as decimal strings, ascending degree.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl Zero for IntPoly {
    fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for IntPoly {
    fn one() -> Self {
        IntPoly::constant(1)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        IntPoly::new(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        IntPoly::new(out)
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

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl fmt::Display for IntPoly {
    /// Canonical text form in descending powers, e.g.
    /// `x^4-12x^3+50x^2-84x+46`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64(cs)
    }

    #[test]
    fn normalization_trims_leading_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn ring_identities() {
        let a = p(&[46, -84, 50, -12, 1]);
        assert_eq!(&a * &IntPoly::one(), a);
        assert_eq!(&a + &IntPoly::zero(), a);
        assert_eq!(&(&a - &a), &IntPoly::zero());
    }

    #[test]
    fn compose_example_from_staircase_algebra() {
        // Q_1((x-3)^2) = (x-3)^2 - 3 = x^2 - 6x + 6
        let q1 = p(&[-3, 1]);
        let inner = &p(&[-3, 1]) * &p(&[-3, 1]);
        assert_eq!(q1.compose(&inner), p(&[6, -6, 1]));
    }

    #[test]
    fn division_by_monic_is_exact() {
        let a = &p(&[-3, 1]) * &p(&[7, -6, 1]);
        let (q, r) = a.div_rem(&p(&[-3, 1])).unwrap();
        assert_eq!(q, p(&[7, -6, 1]));
        assert!(r.is_zero());
        let (q2, r2) = p(&[1, 0, 1]).div_rem(&p(&[1, 1])).unwrap();
        assert_eq!(q2, p(&[-1, 1]));
        assert_eq!(r2, p(&[2]));
    }

    #[test]
    fn division_errors() {
        assert_eq!(
            p(&[1]).div_rem(&IntPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
        assert_eq!(
            p(&[0, 0, 1]).div_rem(&p(&[0, 2])),
            Err(PolyError::NonExactDivision { degree: 2 })
        );
    }

    #[test]
    fn display_canonical() {
        assert_eq!(
            p(&[46, -84, 50, -12, 1]).to_string(),
            "x^4-12x^3+50x^2-84x+46"
        );
        assert_eq!(p(&[0, -1, 0, 2]).to_string(), "2x^3-x");
        assert_eq!(p(&[-7]).to_string(), "-7");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[0, 1]).to_string(), "x");
        assert_eq!(p(&[1, -1]).to_string(), "-x+1");
    }

    #[test]
    fn eval_routes_agree() {
        let a = p(&[46, -84, 50, -12, 1]);
        assert_eq!(a.eval_i64(0), BigInt::from(46));
        assert_eq!(
            a.eval_i64(3),
            BigInt::from(46 - 84 * 3 + 50 * 9 - 12 * 27 + 81)
        );
        assert!((a.eval_f64(2.0) - a.eval_i64(2).to_f64().unwrap()).abs() < 1e-12);
    }
}
