//! The coefficient field GF(q), q = p^h, with log/antilog tables.

use super::poly::{self, FieldOps, PrimeField};
use super::FieldError;

/// Largest coefficient field we build tables for.
pub const MAX_BASE_ORDER: u64 = 1 << 16;

/// GF(q) in a polynomial basis over GF(p). Element `a` is the integer whose
/// base-p digits are its coordinates, lowest degree first.
#[derive(Clone, Debug)]
pub struct BaseField {
    p: u32,
    h: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl BaseField {
    pub fn new(p: u32, h: u32, modulus: Option<Vec<u32>>) -> Result<Self, FieldError> {
        if !poly::is_prime(p as u64) {
            return Err(FieldError::NonPrime(p));
        }
        if h == 0 {
            return Err(FieldError::InvalidParameter("h must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(h)
            .filter(|&q| q <= MAX_BASE_ORDER)
            .ok_or(FieldError::TooLarge)? as u32;
        let prime = PrimeField::new(p);
        let modulus = match modulus {
            Some(m) => {
                validate_monic(&m, h as usize, p, "base")?;
                if !poly::is_irreducible(&prime, &m) {
                    return Err(FieldError::Reducible("base"));
                }
                m
            }
            None => smallest_irreducible(&prime, h as usize),
        };

        let to_poly = |a: u32| digits(a, p, h as usize);
        let from_poly = |c: &[u32]| undigits(c, p);

        // Multiplicative generator: smallest element of order q - 1.
        let group = (q - 1) as u64;
        let factors = poly::prime_factors(group);
        let generator = (1..q)
            .find(|&g| {
                let gp = to_poly(g);
                factors.iter().all(|&r| {
                    let v = poly::powmod(&prime, &gp, group / r, &modulus);
                    v != vec![1]
                })
            })
            .ok_or(FieldError::Reducible("base"))?;

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let gp = to_poly(generator);
        let mut acc = vec![1u32];
        for k in 0..(q - 1) {
            let a = from_poly(&acc);
            if log[a as usize] != u32::MAX {
                return Err(FieldError::Reducible("base"));
            }
            log[a as usize] = k;
            exp.push(a);
            acc = poly::mulmod(&prime, &acc, &gp, &modulus);
        }
        Ok(Self {
            p,
            h,
            q,
            modulus,
            exp,
            log,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let k = (self.log[a as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[k as usize]
    }
}

impl FieldOps for BaseField {
    type Elem = u32;

    fn order(&self) -> u64 {
        self.q as u64
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.h == 1 {
            return (a + b) % self.p;
        }
        add_digitwise(a, b, self.p)
    }

    fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            let d = a % self.p;
            out += ((self.p - d) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = self.log[a as usize] + self.log[b as usize];
        let m = self.q - 1;
        self.exp[(if k >= m { k - m } else { k }) as usize]
    }

    fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in GF({})", self.q);
        let m = self.q - 1;
        self.exp[((m - self.log[a as usize]) % m) as usize]
    }
}

pub(crate) fn add_digitwise(mut a: u32, mut b: u32, p: u32) -> u32 {
    let (mut out, mut place) = (0u32, 1u32);
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

pub(crate) fn digits(mut a: u32, base: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(a % base);
        a /= base;
    }
    out
}

pub(crate) fn undigits(c: &[u32], base: u32) -> u32 {
    c.iter().rev().fold(0u32, |acc, &d| acc * base + d)
}

pub(crate) fn validate_monic(
    m: &[u32],
    degree: usize,
    order: u32,
    which: &'static str,
) -> Result<(), FieldError> {
    if m.len() != degree + 1 || m[degree] != 1 || m.iter().any(|&c| c >= order) {
        return Err(FieldError::BadModulus {
            which,
            expected_degree: degree,
        });
    }
    Ok(())
}

/// First monic irreducible of the given degree when monic polynomials are
/// listed by the integer whose base-|F| digits are the lower coefficients,
/// constant term least significant.
pub(crate) fn smallest_irreducible<F: FieldOps<Elem = u32>>(field: &F, degree: usize) -> Vec<u32> {
    let order = field.order() as u32;
    let count = (order as u64).pow(degree as u32);
    (0..count)
        .map(|v| {
            let mut c = digits(v as u32, order, degree);
            c.push(1);
            c
        })
        .find(|c| poly::is_irreducible(field, c))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_tables() {
        let f = BaseField::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // w = 2, w^2 = w + 1 = 3
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.inv(3), 2);
    }

    #[test]
    fn gf9_negation_and_inverse() {
        let f = BaseField::new(3, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn rejects_reducible_override() {
        assert!(matches!(
            BaseField::new(2, 2, Some(vec![1, 0, 1])),
            Err(FieldError::Reducible("base"))
        ));
        assert!(matches!(
            BaseField::new(4, 1, None),
            Err(FieldError::NonPrime(4))
        ));
    }
}
