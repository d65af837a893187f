//! Dense univariate polynomials over a small finite field, stored
//! low-degree-first. Only what is needed to pick and validate defining
//! polynomials and minimal polynomials.

/// Arithmetic of a finite field whose elements are plain `Copy` values.
pub trait FieldOps {
    type Elem: Copy + Eq + std::fmt::Debug;

    fn order(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: Self::Elem) -> Self::Elem;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }
}

/// GF(p) with elements `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        debug_assert!(is_prime(p as u64));
        Self { p }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl FieldOps for PrimeField {
    type Elem = u32;

    fn order(&self) -> u64 {
        self.p as u64
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: u32) -> u32 {
        assert!(
            !a.is_multiple_of(self.p),
            "inverse of zero in GF({})",
            self.p
        );
        // Fermat: a^(p-2)
        let mut result = 1u64;
        let mut base = a as u64 % self.p as u64;
        let mut e = self.p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        result as u32
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn trim<F: FieldOps>(field: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|&c| field.is_zero(c)) {
        p.pop();
    }
}

/// Degree of a trimmed polynomial; `None` for the zero polynomial.
pub fn degree<F: FieldOps>(field: &F, p: &[F::Elem]) -> Option<usize> {
    p.iter().rposition(|&c| !field.is_zero(c))
}

pub fn mul<F: FieldOps>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(field, &mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn rem<F: FieldOps>(field: &F, a: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    let dm = degree(field, m).expect("division by the zero polynomial");
    let lead_inv = field.inv(m[dm]);
    let mut r: Vec<F::Elem> = a.to_vec();
    trim(field, &mut r);
    while let Some(dr) = degree(field, &r) {
        if dr < dm {
            break;
        }
        let c = field.mul(r[dr], lead_inv);
        let shift = dr - dm;
        for (k, &mk) in m[..=dm].iter().enumerate() {
            r[shift + k] = field.sub(r[shift + k], field.mul(c, mk));
        }
        trim(field, &mut r);
    }
    r
}

pub fn mulmod<F: FieldOps>(field: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    rem(field, &mul(field, a, b), m)
}

pub fn powmod<F: FieldOps>(field: &F, base: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut result = rem(field, &[field.one()], m);
    let mut b = rem(field, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(field, &result, &b, m);
        }
        b = mulmod(field, &b, &b, m);
        e >>= 1;
    }
    result
}

pub fn sub<F: FieldOps>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let len = a.len().max(b.len());
    let mut out: Vec<F::Elem> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(field.zero());
            let y = b.get(i).copied().unwrap_or(field.zero());
            field.sub(x, y)
        })
        .collect();
    trim(field, &mut out);
    out
}

pub fn poly_gcd<F: FieldOps>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(field, &mut x);
    trim(field, &mut y);
    while !y.is_empty() {
        let r = rem(field, &x, &y);
        x = y;
        y = r;
    }
    x
}

/// `x^(order^k) mod m`, by repeated `order`-th powering of `x`.
fn frobenius_power_of_x<F: FieldOps>(field: &F, k: u32, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = rem(field, &[field.zero(), field.one()], m);
    for _ in 0..k {
        acc = powmod(field, &acc, field.order(), m);
    }
    acc
}

/// Rabin's irreducibility test for a polynomial of degree >= 1.
pub fn is_irreducible<F: FieldOps>(field: &F, m: &[F::Elem]) -> bool {
    let Some(d) = degree(field, m) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = vec![field.zero(), field.one()];
    let full = frobenius_power_of_x(field, d as u32, m);
    if !sub(field, &full, &rem(field, &x, m)).is_empty() {
        return false;
    }
    for r in prime_factors(d as u64) {
        let partial = frobenius_power_of_x(field, d as u32 / r as u32, m);
        let diff = sub(field, &partial, &x);
        let g = poly_gcd(field, m, &diff);
        if degree(field, &g) != Some(0) {
            return false;
        }
    }
    true
}

/// Evaluate `p` at `x` (Horner).
pub fn eval<F: FieldOps>(field: &F, p: &[F::Elem], x: F::Elem) -> F::Elem {
    p.iter()
        .rev()
        .fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c))
}

/// Formal derivative.
pub fn derivative<F: FieldOps>(field: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| {
            // i * c as repeated addition; i is small
            (0..i).fold(field.zero(), |acc, _| field.add(acc, c))
        })
        .collect();
    trim(field, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(3) && is_prime(31));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(91));
        assert_eq!(prime_factors(1023), vec![3, 11, 31]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn irreducible_over_gf2() {
        let f2 = PrimeField::new(2);
        assert!(is_irreducible(&f2, &[1, 1, 0, 1]));
        assert!(is_irreducible(&f2, &[1, 0, 1, 1]));
        assert!(!is_irreducible(&f2, &[1, 0, 0, 1])); // (x+1)(x^2+x+1)
        assert!(!is_irreducible(&f2, &[1, 0, 1, 0, 1])); // (x^2+x+1)^2
        assert!(is_irreducible(&f2, &[1, 1, 0, 0, 1]));
    }

    #[test]
    fn irreducible_over_gf3() {
        let f3 = PrimeField::new(3);
        assert!(is_irreducible(&f3, &[1, 0, 1])); // x^2 + 1
        assert!(!is_irreducible(&f3, &[2, 0, 1])); // x^2 - 1
    }

    #[test]
    fn derivative_in_char_two() {
        let f2 = PrimeField::new(2);
        // d/dx (x^3 + x^2 + 1) = 3x^2 + 2x = x^2
        assert_eq!(derivative(&f2, &[1, 0, 1, 1]), vec![0, 0, 1]);
    }
}
