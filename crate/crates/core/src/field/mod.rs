//! The field tower GF(p) ⊂ GF(q) ⊂ GF(q^n).
//!
//! Every element of GF(q^n) is encoded as an integer in `[0, q^n)`. Its
//! base-q digits are the coordinates over GF(q) in the polynomial basis
//! `1, y, ..., y^(n-1)` of the extension, and each base-q digit is itself a
//! GF(q) element whose base-p digits are its coordinates over GF(p). The
//! basis element `y^j` is therefore encoded as `q^j`.

pub mod base;
pub mod linalg;
pub mod poly;
pub mod subspace;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use base::BaseField;
pub use poly::FieldOps;

use poly::divisors;

/// Multiplication through log/antilog tables is used up to this order.
pub const TABLE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("invalid field parameter: {0}")]
    InvalidParameter(String),
    #[error("the {0} defining polynomial is reducible")]
    Reducible(&'static str),
    #[error("the {which} defining polynomial must be monic of degree {expected_degree} with coefficients in range")]
    BadModulus {
        which: &'static str,
        expected_degree: usize,
    },
    #[error("{r} does not divide {n}")]
    NotADivisor { r: u32, n: u32 },
    #[error("field order exceeds the supported range")]
    TooLarge,
    #[error("{0} is not an element of the field")]
    OutOfRange(u64),
}

/// An element of GF(q^n) in the tower encoding.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Gf(pub u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for Gf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MulStrategy {
    Tables,
    Schoolbook,
}

/// Overrides accepted by [`FieldContext::with_options`].
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FieldOptions {
    /// Monic degree-h polynomial over GF(p), low degree first.
    pub base_modulus: Option<Vec<u32>>,
    /// Monic degree-n polynomial over GF(q), low degree first, coefficients
    /// in the GF(q) encoding.
    pub ext_modulus: Option<Vec<u32>>,
    pub strategy: Option<MulStrategy>,
}

/// Serializable description of a field context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub h: u32,
    pub n: u32,
    pub base_poly: Vec<u32>,
    pub ext_poly: Vec<u32>,
}

#[derive(Debug)]
struct LogTables {
    /// `exp[k] = g^k` for `k < 2(Q-1)`.
    exp: Vec<u32>,
    /// `log[a]`, undefined at zero.
    log: Vec<u32>,
    /// Zech logarithms `log(1 + g^k)` for odd characteristic; `u32::MAX`
    /// marks `1 + g^k = 0`.
    zech: Vec<u32>,
}

/// Immutable arithmetic context for GF(q^n) over GF(q).
#[derive(Debug)]
pub struct FieldContext {
    base: BaseField,
    n: u32,
    order: u32,
    ext_modulus: Vec<u32>,
    strategy: MulStrategy,
    generator: Gf,
    tables: Option<LogTables>,
    /// Column j holds the GF(q)-coordinates of `(y^j)^q`.
    frobenius_matrix: Vec<Vec<u32>>,
    /// `q^s mod (Q - 1)` for `s < n`.
    frobenius_exponents: Vec<u64>,
}

impl FieldContext {
    pub fn new(p: u32, h: u32, n: u32) -> Result<Self, FieldError> {
        Self::with_options(p, h, n, FieldOptions::default())
    }

    pub fn with_options(p: u32, h: u32, n: u32, opts: FieldOptions) -> Result<Self, FieldError> {
        let base = BaseField::new(p, h, opts.base_modulus)?;
        if n < 2 {
            return Err(FieldError::InvalidParameter("n must be at least 2".into()));
        }
        let q = base.q();
        let order = (q as u64)
            .checked_pow(n)
            .filter(|&o| o <= u32::MAX as u64)
            .ok_or(FieldError::TooLarge)? as u32;

        let ext_modulus = match opts.ext_modulus {
            Some(m) => {
                base::validate_monic(&m, n as usize, q, "extension")?;
                if !poly::is_irreducible(&base, &m) {
                    return Err(FieldError::Reducible("extension"));
                }
                m
            }
            None => base::smallest_irreducible(&base, n as usize),
        };

        let strategy = opts.strategy.unwrap_or(if order as u64 <= TABLE_LIMIT {
            MulStrategy::Tables
        } else {
            MulStrategy::Schoolbook
        });
        if strategy == MulStrategy::Tables && order as u64 > TABLE_LIMIT {
            return Err(FieldError::TooLarge);
        }

        let mut ctx = FieldContext {
            base,
            n,
            order,
            ext_modulus,
            strategy: MulStrategy::Schoolbook,
            generator: Gf::ONE,
            tables: None,
            frobenius_matrix: Vec::new(),
            frobenius_exponents: (0..n)
                .map(|s| mod_pow(q as u64, s as u64, order as u64 - 1))
                .collect(),
        };

        // Generator: smallest element of multiplicative order Q - 1.
        let group = order as u64 - 1;
        let factors = poly::prime_factors(group);
        let generator = (1..order)
            .map(Gf)
            .find(|&g| factors.iter().all(|&r| ctx.pow(g, group / r) != Gf::ONE))
            .ok_or(FieldError::Reducible("extension"))?;
        if ctx.pow(generator, group) != Gf::ONE {
            return Err(FieldError::Reducible("extension"));
        }
        ctx.generator = generator;

        if strategy == MulStrategy::Tables {
            ctx.tables = Some(ctx.build_tables()?);
            ctx.strategy = MulStrategy::Tables;
        }

        ctx.frobenius_matrix = (0..n)
            .map(|j| {
                let yj = ctx.basis(j as usize);
                ctx.coords(ctx.pow(yj, q as u64))
            })
            .collect();
        Ok(ctx)
    }

    fn build_tables(&self) -> Result<LogTables, FieldError> {
        let m = self.order as usize - 1;
        let mut exp = Vec::with_capacity(2 * m);
        let mut log = vec![u32::MAX; self.order as usize];
        let mut acc = Gf::ONE;
        for k in 0..m {
            if log[acc.index()] != u32::MAX {
                return Err(FieldError::Reducible("extension"));
            }
            log[acc.index()] = k as u32;
            exp.push(acc.0);
            acc = self.mul_schoolbook(acc, self.generator);
        }
        exp.extend_from_within(..);
        let zech = if self.p() == 2 {
            Vec::new()
        } else {
            (0..m)
                .map(|k| {
                    let s = base::add_digitwise(1, exp[k], self.p());
                    if s == 0 {
                        u32::MAX
                    } else {
                        log[s as usize]
                    }
                })
                .collect()
        };
        Ok(LogTables { exp, log, zech })
    }

    pub fn p(&self) -> u32 {
        self.base.p()
    }

    pub fn h(&self) -> u32 {
        self.base.h()
    }

    pub fn q(&self) -> u32 {
        self.base.q()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The order `q^n` of the extension field.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn ext_modulus(&self) -> &[u32] {
        &self.ext_modulus
    }

    pub fn strategy(&self) -> MulStrategy {
        self.strategy
    }

    pub fn generator(&self) -> Gf {
        self.generator
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p(),
            h: self.h(),
            n: self.n,
            base_poly: self.base.modulus().to_vec(),
            ext_poly: self.ext_modulus.clone(),
        }
    }

    /// `GF(Q)` label, e.g. `GF(8)`.
    pub fn label(&self) -> String {
        format!("GF({})", self.order)
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.order).map(Gf)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Gf> {
        (1..self.order).map(Gf)
    }

    pub fn element(&self, v: u64) -> Result<Gf, FieldError> {
        if v < self.order as u64 {
            Ok(Gf(v as u32))
        } else {
            Err(FieldError::OutOfRange(v))
        }
    }

    /// Embeds a GF(q) element.
    pub fn from_base(&self, c: u32) -> Gf {
        debug_assert!(c < self.q());
        Gf(c)
    }

    /// The basis element `y^j`.
    pub fn basis(&self, j: usize) -> Gf {
        Gf(self.q().pow(j as u32))
    }

    /// Coordinates over GF(q), lowest degree first.
    pub fn coords(&self, x: Gf) -> Vec<u32> {
        base::digits(x.0, self.q(), self.n as usize)
    }

    pub fn from_coords(&self, c: &[u32]) -> Gf {
        debug_assert_eq!(c.len(), self.n as usize);
        Gf(base::undigits(c, self.q()))
    }

    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        if self.p() == 2 {
            return Gf(a.0 ^ b.0);
        }
        match &self.tables {
            Some(t) => {
                if a.is_zero() {
                    return b;
                }
                if b.is_zero() {
                    return a;
                }
                let m = self.order - 1;
                let la = t.log[a.index()];
                let lb = t.log[b.index()];
                let k = if lb >= la { lb - la } else { lb + m - la };
                let z = t.zech[k as usize];
                if z == u32::MAX {
                    Gf::ZERO
                } else {
                    Gf(t.exp[(la + z) as usize])
                }
            }
            None => Gf(base::add_digitwise(a.0, b.0, self.p())),
        }
    }

    pub fn neg(&self, a: Gf) -> Gf {
        if self.p() == 2 || a.is_zero() {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let m = self.order - 1;
                let k = t.log[a.index()] + m / 2;
                Gf(t.exp[k as usize])
            }
            None => Gf(neg_digitwise(a.0, self.p())),
        }
    }

    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.is_zero() || b.is_zero() {
            return Gf::ZERO;
        }
        match &self.tables {
            Some(t) => Gf(t.exp[(t.log[a.index()] + t.log[b.index()]) as usize]),
            None => self.mul_schoolbook(a, b),
        }
    }

    /// Panics if `a` is zero.
    pub fn inv(&self, a: Gf) -> Gf {
        assert!(!a.is_zero(), "inverse of zero in {}", self.label());
        match &self.tables {
            Some(t) => {
                let m = self.order - 1;
                Gf(t.exp[((m - t.log[a.index()]) % m) as usize])
            }
            None => self.pow(a, self.order as u64 - 2),
        }
    }

    /// Panics if `b` is zero.
    pub fn div(&self, a: Gf, b: Gf) -> Gf {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Gf, e: u64) -> Gf {
        if e == 0 {
            return Gf::ONE;
        }
        if a.is_zero() {
            return Gf::ZERO;
        }
        let m = self.order as u64 - 1;
        if let Some(t) = &self.tables {
            let k = (t.log[a.index()] as u64 * (e % m)) % m;
            return Gf(t.exp[k as usize]);
        }
        let mut result = Gf::ONE;
        let mut b = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_schoolbook(result, b);
            }
            b = self.mul_schoolbook(b, b);
            e >>= 1;
        }
        result
    }

    /// Discrete logarithm to the base [`Self::generator`].
    pub fn log(&self, a: Gf) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.log[a.index()]),
            None => {
                let mut acc = Gf::ONE;
                for k in 0..self.order - 1 {
                    if acc == a {
                        return Some(k);
                    }
                    acc = self.mul(acc, self.generator);
                }
                None
            }
        }
    }

    /// `x^(q^s)`; `s` is taken modulo n.
    pub fn frobenius(&self, x: Gf, s: i64) -> Gf {
        let s = s.rem_euclid(self.n as i64) as u32;
        if s == 0 || x.is_zero() {
            return x;
        }
        if let Some(t) = &self.tables {
            let m = self.order as u64 - 1;
            let k = (t.log[x.index()] as u64 * self.frobenius_exponents[s as usize]) % m;
            return Gf(t.exp[k as usize]);
        }
        let mut c = self.coords(x);
        for _ in 0..s {
            c = self.apply_frobenius_matrix(&c);
        }
        self.from_coords(&c)
    }

    fn apply_frobenius_matrix(&self, c: &[u32]) -> Vec<u32> {
        let n = self.n as usize;
        let mut out = vec![0u32; n];
        for (j, &cj) in c.iter().enumerate() {
            if cj == 0 {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let t = self.base.mul(cj, self.frobenius_matrix[j][i]);
                *o = self.base.add(*o, t);
            }
        }
        out
    }

    /// `x^(p^e)`, a generator power of the automorphism group of GF(q^n);
    /// `e` is taken modulo `h n`.
    pub fn pow_p(&self, x: Gf, e: u32) -> Gf {
        let e = e % (self.h() * self.n);
        if e == 0 || x.is_zero() {
            return x;
        }
        let m = self.order as u64 - 1;
        self.pow(x, mod_pow(self.p() as u64, e as u64, m))
    }

    /// Whether `x` lies in the subfield GF(q^d).
    pub fn in_subfield(&self, x: Gf, d: u32) -> bool {
        self.frobenius(x, d as i64) == x
    }

    /// A generator of GF(q^d)^* for `d | n`.
    pub fn subfield_generator(&self, d: u32) -> Result<Gf, FieldError> {
        self.check_divisor(d)?;
        let m = self.order as u64 - 1;
        let sub = (self.q() as u64).pow(d) - 1;
        Ok(self.pow(self.generator, m / sub))
    }

    pub fn subfield_elements(&self, d: u32) -> Result<Vec<Gf>, FieldError> {
        self.check_divisor(d)?;
        Ok(self
            .elements()
            .filter(|&x| self.in_subfield(x, d))
            .collect())
    }

    fn check_divisor(&self, r: u32) -> Result<(), FieldError> {
        if r == 0 || !self.n.is_multiple_of(r) {
            return Err(FieldError::NotADivisor { r, n: self.n });
        }
        Ok(())
    }

    /// Relative norm onto GF(q^r): `prod_{i < n/r} x^(q^(r i))`.
    pub fn norm_rel(&self, x: Gf, r: u32) -> Result<Gf, FieldError> {
        self.check_divisor(r)?;
        let v = (0..self.n / r).fold(Gf::ONE, |acc, i| {
            self.mul(acc, self.frobenius(x, (r * i) as i64))
        });
        assert!(self.in_subfield(v, r), "norm escaped GF(q^{r})");
        Ok(v)
    }

    /// Relative trace onto GF(q^r): `sum_{i < n/r} x^(q^(r i))`.
    pub fn trace_rel(&self, x: Gf, r: u32) -> Result<Gf, FieldError> {
        self.check_divisor(r)?;
        let v = (0..self.n / r).fold(Gf::ZERO, |acc, i| {
            self.add(acc, self.frobenius(x, (r * i) as i64))
        });
        assert!(self.in_subfield(v, r), "trace escaped GF(q^{r})");
        Ok(v)
    }

    /// Absolute trace onto GF(q), returned as a GF(q) element.
    pub fn trace(&self, x: Gf) -> u32 {
        self.trace_rel(x, 1).expect("1 divides n").0
    }

    pub fn norm(&self, x: Gf) -> u32 {
        self.norm_rel(x, 1).expect("1 divides n").0
    }

    /// `c * x` for `c` in GF(q).
    pub fn scale_base(&self, c: u32, x: Gf) -> Gf {
        self.mul(self.from_base(c), x)
    }

    pub fn divisors_of_n(&self) -> Vec<u32> {
        divisors(self.n)
    }

    fn mul_schoolbook(&self, a: Gf, b: Gf) -> Gf {
        let pa = self.coords(a);
        let pb = self.coords(b);
        let prod = poly::mulmod(&self.base, &pa, &pb, &self.ext_modulus);
        let mut c = prod;
        c.resize(self.n as usize, 0);
        self.from_coords(&c)
    }
}

fn neg_digitwise(mut a: u32, p: u32) -> u32 {
    let (mut out, mut place) = (0u32, 1u32);
    while a > 0 {
        let d = a % p;
        out += ((p - d) % p) * place;
        a /= p;
        place = place.wrapping_mul(p);
    }
    out
}

fn mod_pow(b: u64, e: u64, m: u64) -> u64 {
    let mut result = 1u128 % m as u128;
    let mut base = b as u128 % m as u128;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % m as u128;
        }
        base = base * base % m as u128;
        e >>= 1;
    }
    result as u64
}

impl FieldOps for FieldContext {
    type Elem = Gf;

    fn order(&self) -> u64 {
        self.order as u64
    }
    fn zero(&self) -> Gf {
        Gf::ZERO
    }
    fn one(&self) -> Gf {
        Gf::ONE
    }
    fn add(&self, a: Gf, b: Gf) -> Gf {
        FieldContext::add(self, a, b)
    }
    fn neg(&self, a: Gf) -> Gf {
        FieldContext::neg(self, a)
    }
    fn mul(&self, a: Gf, b: Gf) -> Gf {
        FieldContext::mul(self, a, b)
    }
    fn inv(&self, a: Gf) -> Gf {
        FieldContext::inv(self, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_default_modulus() {
        let f = FieldContext::new(2, 1, 3).unwrap();
        assert_eq!(f.ext_modulus(), &[1, 1, 0, 1]);
        assert_eq!(f.label(), "GF(8)");
        // y^3 = y + 1
        let y = f.basis(1);
        assert_eq!(f.pow(y, 3), Gf(0b011));
    }

    #[test]
    fn tables_agree_with_schoolbook() {
        for &(p, h, n) in &[(2, 1, 4), (3, 1, 3), (2, 2, 3), (5, 1, 2)] {
            let t = FieldContext::new(p, h, n).unwrap();
            let s = FieldContext::with_options(
                p,
                h,
                n,
                FieldOptions {
                    strategy: Some(MulStrategy::Schoolbook),
                    ..Default::default()
                },
            )
            .unwrap();
            for a in t.elements() {
                assert_eq!(t.neg(a), s.neg(a));
                assert_eq!(t.frobenius(a, 1), s.frobenius(a, 1));
                for b in t.elements() {
                    assert_eq!(t.mul(a, b), s.mul(a, b));
                    assert_eq!(t.add(a, b), s.add(a, b));
                }
            }
        }
    }

    #[test]
    fn trace_and_norm_land_in_base() {
        let f = FieldContext::new(3, 1, 4).unwrap();
        let mut hits = [0usize; 3];
        for x in f.elements() {
            hits[f.trace(x) as usize] += 1;
            let nrm = f.norm(x);
            assert!(nrm < 3);
        }
        assert_eq!(hits, [27, 27, 27]);
        let sub = f.subfield_elements(2).unwrap();
        assert_eq!(sub.len(), 9);
    }

    #[test]
    fn frobenius_has_order_n() {
        let f = FieldContext::new(2, 2, 3).unwrap();
        let g = f.generator();
        assert_eq!(f.frobenius(g, 3), g);
        assert_ne!(f.frobenius(g, 1), g);
        assert_eq!(f.frobenius(f.frobenius(g, 1), -1), g);
        assert_eq!(f.pow_p(g, 2), f.frobenius(g, 1));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            FieldContext::new(4, 1, 2),
            Err(FieldError::NonPrime(4))
        ));
        assert!(FieldContext::new(2, 1, 1).is_err());
        let reducible = FieldOptions {
            ext_modulus: Some(vec![1, 0, 0, 1]),
            ..Default::default()
        };
        assert!(matches!(
            FieldContext::with_options(2, 1, 3, reducible),
            Err(FieldError::Reducible(_))
        ));
    }
}
