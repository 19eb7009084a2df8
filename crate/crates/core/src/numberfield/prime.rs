//! Decomposition of rational primes in a real quadratic field and the
//! reduction map from its ring of integers onto the residue field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{ToPrimitive, Zero};

use super::finite::{is_prime, FiniteField, ResidueElement};
use super::quadratic::{is_squarefree, QuadraticFieldElement};
use super::NumberFieldError;

/// Squarefree `D < 100` for which Q(sqrt D) has class number one.
pub const PID_RADICANDS: &[i64] = &[
    2, 3, 5, 6, 7, 11, 13, 14, 17, 19, 21, 22, 23, 29, 31, 33, 37, 38, 41, 43, 46, 47, 53, 57,
    59, 61, 62, 67, 69, 71, 73, 77, 83, 86, 89, 93, 94, 97,
];

/// Search bound for norm equations when looking for an ideal generator.
const GENERATOR_SEARCH_BOUND: i64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimeKind {
    Ramified,
    Split,
    Inert,
    /// The field is Q itself; `(p)` is the only prime above `p`.
    Rational,
}

impl fmt::Display for PrimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeKind::Ramified => "ramified",
            PrimeKind::Split => "split",
            PrimeKind::Inert => "inert",
            PrimeKind::Rational => "rational",
        })
    }
}

/// A prime ideal above `p` together with its residue field and the image of
/// the ring generator `omega` (`(1 + sqrt D)/2` when `D = 1 mod 4`, else `sqrt D`).
#[derive(Clone, Debug)]
pub struct PrimeIdealData {
    p: u32,
    d: i64,
    kind: PrimeKind,
    generator: Option<QuadraticFieldElement>,
    field: FiniteField,
    omega_image: u32,
}

/// Discriminant of Q(sqrt d).
pub fn discriminant(d: i64) -> i64 {
    if d == 1 {
        1
    } else if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

/// Minimal polynomial of `omega` as `(c1, c0)` in `x^2 + c1 x + c0`.
fn omega_min_poly(d: i64) -> (i64, i64) {
    if d.rem_euclid(4) == 1 {
        (-1, -(d - 1) / 4)
    } else {
        (0, -d)
    }
}

/// Writes an integral `x` as `s + t * omega`.
fn omega_coords(x: &QuadraticFieldElement) -> Option<(BigInt, BigInt)> {
    if !x.is_integral() {
        return None;
    }
    if x.d() == 1 {
        return Some((x.a().to_integer(), BigInt::zero()));
    }
    let (u, v) = x.half_coords()?;
    if x.d().rem_euclid(4) == 1 {
        // (u + v sqrt d)/2 = (u - v)/2 + v omega
        Some(((&u - &v) / 2, v))
    } else {
        Some((u / 2, v / 2))
    }
}

fn legendre(a: i64, p: u32) -> i64 {
    let f = FiniteField::prime(p);
    let x = f.from_i64(a);
    if x == 0 {
        0
    } else if f.is_square(x) {
        1
    } else {
        -1
    }
}

/// The decomposition type of `p` in Q(sqrt d), with a generator for the
/// chosen prime ideal whenever the ring of integers is known to be a PID.
///
/// For split primes the generator is the first solution `(u + v sqrt d)/2`,
/// `v > 0` minimal, of the norm equation; the residue map is the one that
/// kills it.
pub fn splitting(p: u32, d: i64) -> Result<PrimeIdealData, NumberFieldError> {
    if !is_prime(p as u64) || p >= (1 << 16) {
        return Err(NumberFieldError::NotPrime(p as i64));
    }
    if !is_squarefree(d) {
        return Err(NumberFieldError::NotSquarefree(d));
    }
    if d == 1 {
        return Ok(PrimeIdealData {
            p,
            d,
            kind: PrimeKind::Rational,
            generator: Some(QuadraticFieldElement::from_int(p as i64, 1)),
            field: FiniteField::prime(p),
            omega_image: 0,
        });
    }
    let disc = discriminant(d);
    let kind = if disc % p as i64 == 0 {
        PrimeKind::Ramified
    } else if p == 2 {
        if d.rem_euclid(8) == 1 {
            PrimeKind::Split
        } else {
            PrimeKind::Inert
        }
    } else if legendre(d, p) == 1 {
        PrimeKind::Split
    } else {
        PrimeKind::Inert
    };

    let (c1, c0) = omega_min_poly(d);
    match kind {
        PrimeKind::Inert => {
            let field = FiniteField::quadratic(p);
            let omega_image = field
                .elements()
                .find(|&x| {
                    let v = field.add(
                        field.add(field.mul(x, x), field.mul(field.from_i64(c1), x)),
                        field.from_i64(c0),
                    );
                    v == 0
                })
                .expect("minimal polynomial splits in F_{p^2}");
            Ok(PrimeIdealData {
                p,
                d,
                kind,
                generator: Some(QuadraticFieldElement::from_int(p as i64, d)),
                field,
                omega_image,
            })
        }
        _ => {
            let field = FiniteField::prime(p);
            let roots: Vec<u32> = field
                .elements()
                .filter(|&x| {
                    let v = (x as i64 * x as i64 + c1 * x as i64 + c0).rem_euclid(p as i64);
                    v == 0
                })
                .collect();
            let generator = if PID_RADICANDS.contains(&d) {
                Some(find_generator(p, d, kind).ok_or(NumberFieldError::NotPid(d))?)
            } else {
                None
            };
            let mut data = PrimeIdealData {
                p,
                d,
                kind,
                generator,
                field,
                omega_image: roots[0],
            };
            if let Some(g) = data.generator.clone() {
                data.omega_image = *roots
                    .iter()
                    .find(|&&r| {
                        data.omega_image = r;
                        data.reduce_code(&g) == Some(0)
                    })
                    .expect("generator lies in one of the primes above p");
            }
            Ok(data)
        }
    }
}

fn find_generator(p: u32, d: i64, kind: PrimeKind) -> Option<QuadraticFieldElement> {
    if kind == PrimeKind::Ramified && d == p as i64 {
        return Some(QuadraticFieldElement::from_ints(0, 1, d));
    }
    let one_mod_four = d.rem_euclid(4) == 1;
    // Norm N((u + v sqrt d)/k) = +-p with k = 2 or 1.
    let scale = if one_mod_four { 4 } else { 1 };
    let target = scale * p as i64;
    for v in 0..GENERATOR_SEARCH_BOUND {
        let dv2 = d.checked_mul(v * v)?;
        for rhs in [dv2 + target, dv2 - target] {
            if rhs < 0 {
                continue;
            }
            let u = rhs.sqrt();
            if u * u != rhs {
                continue;
            }
            let x = if one_mod_four {
                QuadraticFieldElement::halves(u, v, d)
            } else {
                QuadraticFieldElement::from_ints(u, v, d)
            };
            if x.is_integral() {
                return Some(x);
            }
        }
    }
    None
}

impl PrimeIdealData {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn kind(&self) -> PrimeKind {
        self.kind
    }

    pub fn residue_q(&self) -> u32 {
        self.field.order()
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn omega_image(&self) -> u32 {
        self.omega_image
    }

    /// Generator of the ideal; `NotPid` when the field is outside the
    /// class-number-one allowlist.
    pub fn generator(&self) -> Result<&QuadraticFieldElement, NumberFieldError> {
        self.generator.as_ref().ok_or(NumberFieldError::NotPid(self.d))
    }

    fn reduce_code(&self, x: &QuadraticFieldElement) -> Option<u32> {
        let (s, t) = omega_coords(x)?;
        let p = BigInt::from(self.p);
        let s = s.mod_floor(&p).to_u32()?;
        let t = t.mod_floor(&p).to_u32()?;
        let f = self.field;
        Some(f.add(s, f.mul(t, self.omega_image)))
    }

    /// The ring homomorphism from the ring of integers onto the residue field.
    pub fn residue(&self, x: &QuadraticFieldElement) -> Result<ResidueElement, NumberFieldError> {
        if x.d() != self.d && !x.is_rational() {
            return Err(NumberFieldError::FieldMismatch { expected: self.d, found: x.d() });
        }
        self.reduce_code(x)
            .map(|c| ResidueElement::new(self.field, c))
            .ok_or_else(|| NumberFieldError::NotIntegral(x.to_string()))
    }
}
