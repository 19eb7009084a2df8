//! Prime fields F_p and their quadratic extensions F_{p^2}.
//!
//! Elements are encoded as `a0 + a1 * p` for `a0 + a1 t`, where `t` is a root
//! of the field's fixed monic irreducible `t^2 + c1 t + c0`.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u32,
    /// `(c1, c0)` of the modulus `t^2 + c1 t + c0`, for degree 2.
    modulus: Option<(u32, u32)>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

impl FiniteField {
    /// The prime field F_p. Panics unless `p` is a prime below 2^16.
    pub fn prime(p: u32) -> Self {
        assert!(is_prime(p as u64) && p < (1 << 16), "unsupported characteristic {p}");
        Self { p, modulus: None }
    }

    /// F_{p^2} built on the lexicographically smallest monic irreducible
    /// quadratic `t^2 + c1 t + c0`, ordered by `(c1, c0)`.
    pub fn quadratic(p: u32) -> Self {
        let base = Self::prime(p);
        for c1 in 0..p {
            for c0 in 0..p {
                let has_root = (0..p).any(|x| {
                    let v = (x as u64 * x as u64 + c1 as u64 * x as u64 + c0 as u64) % p as u64;
                    v == 0
                });
                if !has_root {
                    return Self { p, modulus: Some((c1, c0)) };
                }
            }
        }
        unreachable!("no irreducible quadratic over F_{}", base.p)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        if self.modulus.is_some() {
            2
        } else {
            1
        }
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.degree())
    }

    pub fn modulus(&self) -> Option<(u32, u32)> {
        self.modulus
    }

    /// Embeds an integer residue.
    pub fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// `a0 + a1 t`
    pub fn element(&self, a0: u32, a1: u32) -> u32 {
        assert!(self.modulus.is_some() || a1 == 0);
        a0 % self.p + (a1 % self.p) * self.p
    }

    /// The generator `t` of the extension (degree 2 only).
    pub fn t(&self) -> u32 {
        assert!(self.modulus.is_some(), "F_p has no extension generator");
        self.p
    }

    fn split(&self, x: u32) -> (u64, u64) {
        ((x % self.p) as u64, (x / self.p) as u64)
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let p = self.p as u64;
        let (x0, x1) = self.split(x);
        let (y0, y1) = self.split(y);
        (((x0 + y0) % p) + ((x1 + y1) % p) * p) as u32
    }

    pub fn neg(&self, x: u32) -> u32 {
        let p = self.p as u64;
        let (x0, x1) = self.split(x);
        (((p - x0) % p) + ((p - x1) % p) * p) as u32
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let p = self.p as u64;
        match self.modulus {
            None => ((x as u64 * y as u64) % p) as u32,
            Some((c1, c0)) => {
                let (x0, x1) = self.split(x);
                let (y0, y1) = self.split(y);
                let l0 = x0 * y0 % p;
                let l1 = (x0 * y1 + x1 * y0) % p;
                let l2 = x1 * y1 % p;
                // t^2 = -c1 t - c0
                let r0 = (l0 + l2 * ((p - c0 as u64) % p)) % p;
                let r1 = (l1 + l2 * ((p - c1 as u64) % p)) % p;
                (r0 + r1 * p) as u32
            }
        }
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: u32) -> Option<u32> {
        (x != 0).then(|| self.pow(x, self.order() as u64 - 2))
    }

    pub fn div(&self, x: u32, y: u32) -> Option<u32> {
        self.inv(y).map(|yi| self.mul(x, yi))
    }

    /// Whether `x` is a square; every element is one in characteristic 2.
    pub fn is_square(&self, x: u32) -> bool {
        if x == 0 || self.p == 2 {
            return true;
        }
        self.pow(x, (self.order() as u64 - 1) / 2) == 1
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order()
    }

    /// Small signed representative in a prime field, for display.
    pub fn centered(&self, x: u32) -> i64 {
        let x = x as i64;
        let p = self.p as i64;
        if x > p / 2 {
            x - p
        } else {
            x
        }
    }

    pub fn fmt_element(&self, x: u32) -> String {
        match self.modulus {
            None => x.to_string(),
            Some(_) => {
                let (a0, a1) = self.split(x);
                format!("{a0}+{a1}t")
            }
        }
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "F_{}", self.p),
            Some((c1, c0)) => write!(f, "F_{}[t]/(t^2+{}t+{})", self.p, c1, c0),
        }
    }
}

/// An element of a residue field together with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueElement {
    pub field: FiniteField,
    pub code: u32,
}

impl ResidueElement {
    pub fn new(field: FiniteField, code: u32) -> Self {
        Self { field, code }
    }

    pub fn add(self, o: Self) -> Self {
        Self::new(self.field, self.field.add(self.code, o.code))
    }

    pub fn mul(self, o: Self) -> Self {
        Self::new(self.field, self.field.mul(self.code, o.code))
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.fmt_element(self.code))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: FiniteField) {
        let els: Vec<u32> = f.elements().collect();
        assert_eq!(els.len() as u32, f.order());
        for &x in &els {
            assert_eq!(f.add(x, f.neg(x)), 0);
            if x != 0 {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
            }
            for &y in &els {
                assert_eq!(f.mul(x, y), f.mul(y, x));
                for &z in els.iter().step_by(3) {
                    assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                    assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn field_axioms() {
        check_axioms(FiniteField::prime(5));
        check_axioms(FiniteField::quadratic(2));
        check_axioms(FiniteField::quadratic(3));
        check_axioms(FiniteField::quadratic(5));
    }

    #[test]
    fn smallest_modulus() {
        assert_eq!(FiniteField::quadratic(2).modulus(), Some((1, 1)));
        assert_eq!(FiniteField::quadratic(3).modulus(), Some((0, 1)));
        assert_eq!(FiniteField::quadratic(5).modulus(), Some((0, 2)));
    }

    #[test]
    fn squares_mod_p() {
        let f = FiniteField::prime(11);
        let squares: Vec<u32> = (1..11).filter(|&x| f.is_square(x)).collect();
        assert_eq!(squares, vec![1, 3, 4, 5, 9]);
        // every element of F_9 that lies in F_3 is a square there
        let f9 = FiniteField::quadratic(3);
        assert!(f9.is_square(2));
    }
}
