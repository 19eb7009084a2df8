//! Elements of a real quadratic field Q(sqrt D), or of Q itself when `D = 1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::multiquad::{fmt_rational, mask_of, MultiQuadElement};
use super::NumberFieldError;

/// `a + b sqrt(d)`. When `d == 1` the element is rational and `b` is zero.
///
/// Rational elements (b = 0) combine with elements of any field; combining two
/// irrational elements of different fields is a logic error and panics.
#[derive(Clone)]
pub struct QuadraticFieldElement {
    a: BigRational,
    b: BigRational,
    d: i64,
}

pub fn is_squarefree(d: i64) -> bool {
    if d < 1 {
        return false;
    }
    let mut f = 2i64;
    while f * f <= d {
        if d % (f * f) == 0 {
            return false;
        }
        f += 1;
    }
    true
}

impl QuadraticFieldElement {
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Self {
        assert!(is_squarefree(d), "radicand {d} is not squarefree");
        if d == 1 {
            return Self { a: a + b, b: BigRational::zero(), d };
        }
        Self { a, b, d }
    }

    pub fn from_ints(a: i64, b: i64, d: i64) -> Self {
        Self::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()), d)
    }

    /// `(u + v sqrt d) / 2`
    pub fn halves(u: i64, v: i64, d: i64) -> Self {
        let two = BigInt::from(2);
        Self::new(
            BigRational::new(u.into(), two.clone()),
            BigRational::new(v.into(), two),
            d,
        )
    }

    pub fn rational(a: BigRational, d: i64) -> Self {
        Self::new(a, BigRational::zero(), d)
    }

    pub fn from_int(n: i64, d: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()), d)
    }

    pub fn zero(d: i64) -> Self {
        Self::from_int(0, d)
    }

    pub fn one(d: i64) -> Self {
        Self::from_int(1, d)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.into())
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    fn d_rat(&self) -> BigRational {
        BigRational::from_integer(self.d.into())
    }

    fn common_d(&self, other: &Self) -> i64 {
        if self.d == other.d || other.b.is_zero() {
            self.d
        } else if self.b.is_zero() {
            other.d
        } else {
            panic!("mixing Q(sqrt {}) and Q(sqrt {})", self.d, other.d)
        }
    }

    /// Sign of the real embedding `sqrt(d) > 0`, decided exactly.
    pub fn signum(&self) -> Ordering {
        let zero = BigRational::zero();
        let sa = self.a.cmp(&zero);
        let sb = self.b.cmp(&zero);
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let db2 = &self.b * &self.b * self.d_rat();
        if a2 > db2 {
            sa
        } else {
            sb
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// `(u, v)` with `self = (u + v sqrt d) / 2`, when both are integers.
    pub fn half_coords(&self) -> Option<(BigInt, BigInt)> {
        let two = BigRational::from_integer(2.into());
        let u = &self.a * &two;
        let v = &self.b * &two;
        if u.is_integer() && v.is_integer() {
            Some((u.to_integer(), v.to_integer()))
        } else {
            None
        }
    }

    /// Membership in the ring of integers.
    pub fn is_integral(&self) -> bool {
        if self.d == 1 {
            return self.a.is_integer();
        }
        let Some((u, v)) = self.half_coords() else {
            return false;
        };
        if self.d.rem_euclid(4) == 1 {
            (&u - &v).is_even()
        } else {
            u.is_even() && v.is_even()
        }
    }

    /// Whether `self` is divisible by `alpha` in the ring of integers.
    pub fn is_divisible_by(&self, alpha: &Self) -> bool {
        if alpha.is_zero() {
            return self.is_zero();
        }
        (self / alpha).is_integral()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Self { a: &c.a / &n, b: &c.b / &n, d: self.d })
    }

    /// Whether `self` is a square in the field.
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        if self.b.is_zero() {
            if rational_sqrt(&self.a).is_some() {
                return true;
            }
            // a = d t^2 makes a the square of t sqrt(d)
            return self.d > 1 && rational_sqrt(&(&self.a / self.d_rat())).is_some();
        }
        // y = s + t sqrt d: s^2 and d t^2 are the roots of z^2 - a z + d b^2 / 4
        let Some(n) = rational_sqrt(&self.norm()) else {
            return false;
        };
        let half = BigRational::new(1.into(), 2.into());
        [(&self.a + &n) * &half, (&self.a - &n) * &half]
            .iter()
            .any(|s2| !s2.is_zero() && rational_sqrt(s2).is_some())
    }

    pub fn to_multiquad(&self) -> Option<MultiQuadElement> {
        let mut x = MultiQuadElement::from_rational(self.a.clone());
        if !self.b.is_zero() {
            x = &x + &MultiQuadElement::sqrt_term(self.b.clone(), self.d)?;
        }
        Some(x)
    }

    /// The element of Q(sqrt d) equal to `x`, or `NotInField` when `x` has a
    /// nonzero coefficient on any other radical. `d = None` asks for Q.
    pub fn coerce(x: &MultiQuadElement, d: Option<i64>) -> Result<Self, NumberFieldError> {
        let allowed = match d {
            None | Some(1) => None,
            Some(d) => Some(mask_of(d).ok_or(NumberFieldError::UnsupportedRadicand(d))?),
        };
        if x.support().any(|m| m != 0 && Some(m) != allowed) {
            return Err(NumberFieldError::NotInField {
                value: x.to_string(),
                d: d.unwrap_or(1),
            });
        }
        let b = allowed.map(|m| x.coeff(m).clone()).unwrap_or_else(BigRational::zero);
        Ok(Self::new(x.coeff(0).clone(), b, d.unwrap_or(1)))
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

impl PartialEq for QuadraticFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadraticFieldElement {}

impl Add for &QuadraticFieldElement {
    type Output = QuadraticFieldElement;
    fn add(self, rhs: Self) -> QuadraticFieldElement {
        let d = self.common_d(rhs);
        QuadraticFieldElement { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d }
    }
}

impl Sub for &QuadraticFieldElement {
    type Output = QuadraticFieldElement;
    fn sub(self, rhs: Self) -> QuadraticFieldElement {
        let d = self.common_d(rhs);
        QuadraticFieldElement { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d }
    }
}

impl Mul for &QuadraticFieldElement {
    type Output = QuadraticFieldElement;
    fn mul(self, rhs: Self) -> QuadraticFieldElement {
        let d = self.common_d(rhs);
        let dr = BigRational::from_integer(d.into());
        QuadraticFieldElement {
            a: &self.a * &rhs.a + &self.b * &rhs.b * dr,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        }
    }
}

impl Div for &QuadraticFieldElement {
    type Output = QuadraticFieldElement;
    fn div(self, rhs: Self) -> QuadraticFieldElement {
        let inv = rhs.inverse().expect("division by zero");
        self * &inv
    }
}

impl Neg for &QuadraticFieldElement {
    type Output = QuadraticFieldElement;
    fn neg(self) -> QuadraticFieldElement {
        QuadraticFieldElement { a: -&self.a, b: -&self.b, d: self.d }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for QuadraticFieldElement {
            type Output = QuadraticFieldElement;
            fn $f(self, rhs: Self) -> QuadraticFieldElement {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QuadraticFieldElement {
    type Output = QuadraticFieldElement;
    fn neg(self) -> QuadraticFieldElement {
        -&self
    }
}

impl fmt::Display for QuadraticFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rational(&self.a))?;
        if !self.b.is_zero() {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, " {} {}*sqrt({})", sign, fmt_rational(&self.b.abs()), self.d)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuadraticFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quad[{}]({self})", self.d)
    }
}
