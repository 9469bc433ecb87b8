//! Exact bivariate polynomials in the highest weight and the central charge,
//! with arbitrary-precision rational coefficients.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Sparse polynomial in two indeterminates: the conformal weight (degree key
/// `.0`) and the central charge (degree key `.1`). No zero coefficients are
/// stored, so `is_zero` and equality are structural.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyDC {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl PolyDC {
    pub fn zero() -> Self {
        PolyDC::default()
    }

    pub fn one() -> Self {
        PolyDC::constant(BigRational::one())
    }

    pub fn constant(r: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert((0, 0), r);
        }
        PolyDC { terms }
    }

    pub fn from_int(n: i64) -> Self {
        PolyDC::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// n/d as a constant.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        PolyDC::constant(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The weight indeterminate.
    pub fn weight() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((1, 0), BigRational::one());
        PolyDC { terms }
    }

    /// The central-charge indeterminate.
    pub fn charge() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 1), BigRational::one());
        PolyDC { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return PolyDC::zero();
        }
        PolyDC {
            terms: self.terms.iter().map(|(k, v)| (*k, v * r)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Entrywise evaluation at a complex weight/charge pair.
    pub fn evaluate(&self, weight: Complex64, charge: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(dw, dc), coeff) in &self.terms {
            let c = coeff.to_f64().unwrap_or(f64::NAN);
            acc += c * weight.powi(dw as i32) * charge.powi(dc as i32);
        }
        acc
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|r| r.is_integer())
    }
}

impl AddAssign<&PolyDC> for PolyDC {
    fn add_assign(&mut self, rhs: &PolyDC) {
        for (k, v) in &rhs.terms {
            let entry = self.terms.entry(*k).or_insert_with(BigRational::zero);
            *entry += v;
            if entry.is_zero() {
                self.terms.remove(k);
            }
        }
    }
}

impl Add for PolyDC {
    type Output = PolyDC;
    fn add(mut self, rhs: PolyDC) -> PolyDC {
        self += &rhs;
        self
    }
}

impl Sub for PolyDC {
    type Output = PolyDC;
    fn sub(self, rhs: PolyDC) -> PolyDC {
        self + rhs.neg()
    }
}

impl Neg for PolyDC {
    type Output = PolyDC;
    fn neg(self) -> PolyDC {
        PolyDC {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl Mul for &PolyDC {
    type Output = PolyDC;
    fn mul(self, rhs: &PolyDC) -> PolyDC {
        let mut out = PolyDC::zero();
        for (&(a1, b1), v1) in &self.terms {
            for (&(a2, b2), v2) in &rhs.terms {
                let k = (a1 + a2, b1 + b2);
                let entry = out.terms.entry(k).or_insert_with(BigRational::zero);
                *entry += v1 * v2;
                if entry.is_zero() {
                    out.terms.remove(&k);
                }
            }
        }
        out
    }
}

impl fmt::Debug for PolyDC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PolyDC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(dw, dc), coeff) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{coeff}")?;
            if dw > 0 {
                write!(f, "*D^{dw}")?;
            }
            if dc > 0 {
                write!(f, "*c^{dc}")?;
            }
        }
        Ok(())
    }
}

/// One monomial of a serialized polynomial entry. Numerator and denominator
/// are decimal strings so rationals survive round-trips bit-exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermRecord {
    #[serde(rename = "dDelta")]
    pub d_delta: u32,
    #[serde(rename = "dC")]
    pub d_c: u32,
    pub num: String,
    pub den: String,
}

impl PolyDC {
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(&(dw, dc), r)| TermRecord {
                d_delta: dw,
                d_c: dc,
                num: r.numer().to_string(),
                den: r.denom().to_string(),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<Self, String> {
        let mut out = PolyDC::zero();
        for rec in records {
            let num: BigInt = rec.num.parse().map_err(|e| format!("bad numerator: {e}"))?;
            let den: BigInt = rec.den.parse().map_err(|e| format!("bad denominator: {e}"))?;
            if den.is_zero() {
                return Err("zero denominator".into());
            }
            let mut term = PolyDC::constant(BigRational::new(num, den));
            term = &term * &PolyDC::monomial(rec.d_delta, rec.d_c);
            out += &term;
        }
        Ok(out)
    }

    fn monomial(dw: u32, dc: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((dw, dc), BigRational::one());
        PolyDC { terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ring_identities() {
        let w = PolyDC::weight();
        let c = PolyDC::charge();
        let p = w.clone() + c.scale_int(2); // D + 2c
        let q = &p * &p;
        // (D + 2c)^2 = D^2 + 4Dc + 4c^2
        let wc = &w * &c;
        let expected = &w * &w + wc.scale_int(4) + (&c * &c).scale_int(4);
        assert_eq!(q, expected);
        assert!((p.clone() - p).is_zero());
    }

    #[test]
    fn evaluation() {
        // 3D^2 - c/2 at D=2, c=4 -> 12 - 2 = 10
        let p = (&PolyDC::weight() * &PolyDC::weight()).scale_int(3) - PolyDC::charge().scale(&BigRational::new(1.into(), 2.into()));
        let v = p.evaluate(Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0));
        assert_abs_diff_eq!(v.re, 10.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
        assert_eq!(
            PolyDC::zero().evaluate(Complex64::new(1.3, 2.2), Complex64::new(-4.0, 0.1)),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn record_round_trip() {
        let p = PolyDC::weight().scale(&BigRational::new(7.into(), 3.into()))
            + PolyDC::from_ratio(-1, 12);
        let q = PolyDC::from_records(&p.to_records()).unwrap();
        assert_eq!(p, q);
    }
}
