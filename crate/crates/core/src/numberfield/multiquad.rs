//! Exact arithmetic in the multiquadratic field Q(sqrt 2, sqrt 3, sqrt 5).
//!
//! Every Gram entry `-2cos(pi/m)` for `m` in {2,3,4,5,6} lives here, as do the
//! products of such entries that appear along walks in a Coxeter diagram.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Primes whose square roots generate the field; bit `i` of a basis mask
/// selects `PRIMES[i]`.
pub const PRIMES: [i64; 3] = [2, 3, 5];

/// The radicand of the basis element with the given mask.
pub fn radicand(mask: usize) -> i64 {
    PRIMES
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, p)| *p)
        .product()
}

/// The mask of `sqrt(d)` for a squarefree `d` dividing 30, or `None`.
pub fn mask_of(d: i64) -> Option<usize> {
    (0..8).find(|&m| radicand(m) == d)
}

/// An element `sum_m c_m sqrt(radicand(m))` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiQuadElement {
    coeffs: [BigRational; 8],
}

impl MultiQuadElement {
    pub fn zero() -> Self {
        Self {
            coeffs: std::array::from_fn(|_| BigRational::zero()),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut x = Self::zero();
        x.coeffs[0] = r;
        x
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `c * sqrt(d)`; `d` must be squarefree and divide 30.
    pub fn sqrt_term(c: BigRational, d: i64) -> Option<Self> {
        let mask = mask_of(d)?;
        let mut x = Self::zero();
        x.coeffs[mask] = c;
        Some(x)
    }

    /// `c * sqrt(n)` for any positive `n = s^2 * r` with `r | 30` squarefree.
    pub fn scaled_sqrt(c: BigRational, n: i64) -> Option<Self> {
        if n <= 0 {
            return None;
        }
        let mut square = 1i64;
        let mut rest = n;
        let mut f = 2i64;
        while f * f <= rest {
            while rest % (f * f) == 0 {
                rest /= f * f;
                square *= f;
            }
            f += 1;
        }
        Self::sqrt_term(c * BigRational::from_integer(square.into()), rest)
    }

    pub fn coeff(&self, mask: usize) -> &BigRational {
        &self.coeffs[mask]
    }

    pub fn coeffs(&self) -> &[BigRational; 8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Masks with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..8).filter(|&m| !self.coeffs[m].is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.support().all(|m| m == 0)
    }

    /// `-2cos(pi/m)` for the labels whose cosine is quadratic.
    pub fn neg_two_cos_pi_over(m: u32) -> Option<Self> {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        match m {
            2 => Some(Self::zero()),
            3 => Some(Self::from_int(-1)),
            4 => Self::sqrt_term(-BigRational::one(), 2),
            5 => {
                let mut x = Self::from_rational(-half.clone());
                x.coeffs[mask_of(5).unwrap()] = -half;
                Some(x)
            }
            6 => Self::sqrt_term(-BigRational::one(), 3),
            _ => None,
        }
    }

    /// The Galois conjugate flipping the sign of `sqrt(PRIMES[i])` for every
    /// bit `i` set in `flips`.
    pub fn conjugate(&self, flips: usize) -> Self {
        Self {
            coeffs: std::array::from_fn(|m| {
                if (m & flips).count_ones() % 2 == 1 {
                    -&self.coeffs[m]
                } else {
                    self.coeffs[m].clone()
                }
            }),
        }
    }

    /// Multiplicative inverse via the product of the nontrivial conjugates.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut y = Self::one();
        for s in 1..8 {
            y = &y * &self.conjugate(s);
        }
        let norm = (self * &y).coeffs[0].clone();
        Some(&y * &Self::from_rational(norm.recip()))
    }

    /// Exact sign of the real value (all radicals positive).
    pub fn signum(&self) -> Ordering {
        sign_in_tower(self, PRIMES.len())
    }

    pub fn to_f64(&self) -> f64 {
        (0..8)
            .map(|m| {
                self.coeffs[m].to_f64().unwrap_or(f64::NAN) * (radicand(m) as f64).sqrt()
            })
            .sum()
    }
}

/// Sign of `x` whose support lies in the subfield generated by the first
/// `level` primes. Writes `x = a + b sqrt(p)` and compares `a^2` with `p b^2`.
fn sign_in_tower(x: &MultiQuadElement, level: usize) -> Ordering {
    if level == 0 {
        return x.coeffs[0].cmp(&BigRational::zero());
    }
    let bit = 1usize << (level - 1);
    let mut a = MultiQuadElement::zero();
    let mut b = MultiQuadElement::zero();
    for m in 0..bit {
        a.coeffs[m] = x.coeffs[m].clone();
        b.coeffs[m] = x.coeffs[m | bit].clone();
    }
    let sa = sign_in_tower(&a, level - 1);
    let sb = sign_in_tower(&b, level - 1);
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    let p = MultiQuadElement::from_int(PRIMES[level - 1]);
    let diff = &(&a * &a) - &(&p * &(&b * &b));
    match sign_in_tower(&diff, level - 1) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => unreachable!("sqrt of a prime is irrational over the subfield"),
    }
}

impl Add for &MultiQuadElement {
    type Output = MultiQuadElement;
    fn add(self, rhs: Self) -> MultiQuadElement {
        MultiQuadElement {
            coeffs: std::array::from_fn(|m| &self.coeffs[m] + &rhs.coeffs[m]),
        }
    }
}

impl Sub for &MultiQuadElement {
    type Output = MultiQuadElement;
    fn sub(self, rhs: Self) -> MultiQuadElement {
        MultiQuadElement {
            coeffs: std::array::from_fn(|m| &self.coeffs[m] - &rhs.coeffs[m]),
        }
    }
}

impl Neg for &MultiQuadElement {
    type Output = MultiQuadElement;
    fn neg(self) -> MultiQuadElement {
        MultiQuadElement {
            coeffs: std::array::from_fn(|m| -&self.coeffs[m]),
        }
    }
}

impl Mul for &MultiQuadElement {
    type Output = MultiQuadElement;
    fn mul(self, rhs: Self) -> MultiQuadElement {
        let mut out = MultiQuadElement::zero();
        for i in self.support() {
            for j in rhs.support() {
                // sqrt(r_i) sqrt(r_j) = radicand(i & j) * sqrt(r_{i ^ j})
                let c = BigRational::from_integer(radicand(i & j).into());
                out.coeffs[i ^ j] += &self.coeffs[i] * &rhs.coeffs[j] * c;
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiQuadElement {
            type Output = MultiQuadElement;
            fn $f(self, rhs: Self) -> MultiQuadElement {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiQuadElement {
    type Output = MultiQuadElement;
    fn neg(self) -> MultiQuadElement {
        -&self
    }
}

impl fmt::Display for MultiQuadElement {
    /// Canonical text: the rational part always leads, followed by
    /// `+ c*sqrt(d)` / `- c*sqrt(d)` terms in increasing radicand order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rational(&self.coeffs[0]))?;
        let mut masks: Vec<usize> = (1..8).collect();
        masks.sort_by_key(|&m| radicand(m));
        for m in masks {
            let c = &self.coeffs[m];
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, " {} {}*sqrt({})", sign, fmt_rational(&c.abs()), radicand(m))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiQuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiQuad({self})")
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
