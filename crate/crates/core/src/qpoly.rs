//! q-polynomials `f(x) = sum_{i<n} a_i x^(q^i)` over GF(q^n), i.e. the
//! GF(q)-linear maps of GF(q^n) reduced modulo `x^(q^n) - x`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::linalg;
use crate::field::subspace::FqSubspace;
use crate::field::{FieldContext, FieldError, Gf};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QPolyError {
    #[error("q-polynomials live over different field contexts")]
    ContextMismatch,
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("cannot parse coefficient list: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone)]
pub struct QPolynomial {
    field: Arc<FieldContext>,
    coeffs: Vec<Gf>,
}

impl QPolynomial {
    pub fn new(field: Arc<FieldContext>, coeffs: Vec<Gf>) -> Result<Self, QPolyError> {
        let n = field.n() as usize;
        if coeffs.len() != n {
            return Err(QPolyError::WrongLength {
                expected: n,
                got: coeffs.len(),
            });
        }
        for c in &coeffs {
            field.element(c.0 as u64)?;
        }
        Ok(Self { field, coeffs })
    }

    pub fn from_encoded(field: Arc<FieldContext>, coeffs: &[u64]) -> Result<Self, QPolyError> {
        let c = coeffs
            .iter()
            .map(|&v| field.element(v))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, c)
    }

    /// Parses `"a0,a1,...,a{n-1}"`.
    pub fn parse(field: Arc<FieldContext>, s: &str) -> Result<Self, QPolyError> {
        let values = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| QPolyError::Parse(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_encoded(field, &values)
    }

    pub fn zero(field: Arc<FieldContext>) -> Self {
        let n = field.n() as usize;
        Self {
            field,
            coeffs: vec![Gf::ZERO; n],
        }
    }

    pub fn identity(field: Arc<FieldContext>) -> Self {
        Self::monomial(field, 0, Gf::ONE)
    }

    /// `a x^(q^s)`, `s` taken modulo n.
    pub fn monomial(field: Arc<FieldContext>, s: u32, a: Gf) -> Self {
        let mut p = Self::zero(field);
        let n = p.coeffs.len();
        p.coeffs[s as usize % n] = a;
        p
    }

    /// The q-polynomial whose values on `field.basis(0..n)` are `values`.
    pub fn from_basis_values(field: Arc<FieldContext>, values: &[Gf]) -> Result<Self, QPolyError> {
        let n = field.n() as usize;
        if values.len() != n {
            return Err(QPolyError::WrongLength {
                expected: n,
                got: values.len(),
            });
        }
        let moore: Vec<Vec<Gf>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| field.frobenius(field.basis(j), k as i64))
                    .collect()
            })
            .collect();
        let inv =
            linalg::invert(field.as_ref(), &moore).expect("Moore matrix of a basis is invertible");
        let coeffs = inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(values)
                    .fold(Gf::ZERO, |acc, (&m, &v)| field.add(acc, field.mul(m, v)))
            })
            .collect();
        Self::new(field, coeffs)
    }

    /// `Tr_{q^n/q^r}(x)`.
    pub fn relative_trace(field: Arc<FieldContext>, r: u32) -> Result<Self, QPolyError> {
        let n = field.n();
        if r == 0 || !n.is_multiple_of(r) {
            return Err(FieldError::NotADivisor { r, n }.into());
        }
        let mut p = Self::zero(field);
        for j in 0..n / r {
            p.coeffs[(r * j) as usize] = Gf::ONE;
        }
        Ok(p)
    }

    /// `Tr_{q^n/q}(x)`.
    pub fn trace(field: Arc<FieldContext>) -> Self {
        Self::relative_trace(field, 1).expect("1 divides n")
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Gf] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_same(&self, other: &Self) -> Result<(), QPolyError> {
        if Arc::ptr_eq(&self.field, &other.field)
            || self.field.descriptor() == other.field.descriptor()
        {
            Ok(())
        } else {
            Err(QPolyError::ContextMismatch)
        }
    }

    pub fn eval(&self, x: Gf) -> Gf {
        let f = &self.field;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Gf::ZERO, |acc, (i, &c)| {
                f.add(acc, f.mul(c, f.frobenius(x, i as i64)))
            })
    }

    /// Values of `f` at every field element, indexed by encoding.
    pub fn eval_table(&self) -> Vec<Gf> {
        let f = &self.field;
        let q = f.q();
        let n = f.n() as usize;
        // images[k][c] = c * f(y^k)
        let images: Vec<Vec<Gf>> = (0..n)
            .map(|k| {
                let fk = self.eval(f.basis(k));
                (0..q).map(|c| f.scale_base(c, fk)).collect()
            })
            .collect();
        let order = f.order() as usize;
        let mut table = vec![Gf::ZERO; order];
        let (mut k, mut place) = (0usize, 1usize);
        for x in 1..order {
            if x >= place * q as usize {
                k += 1;
                place *= q as usize;
            }
            let c = x / place;
            table[x] = f.add(table[x - c * place], images[k][c]);
        }
        table
    }

    pub fn add(&self, other: &Self) -> Result<Self, QPolyError> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(Self {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QPolyError> {
        self.check_same(other)?;
        self.add(&other.scale(self.field.neg(Gf::ONE)))
    }

    /// `lambda * f`.
    pub fn scale(&self, lambda: Gf) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|&a| self.field.mul(lambda, a))
                .collect(),
        }
    }

    /// `f ∘ g`, with `c_k = sum_{i+j ≡ k} a_i b_j^(q^i)`.
    pub fn compose(&self, g: &Self) -> Result<Self, QPolyError> {
        self.check_same(g)?;
        let f = &self.field;
        let n = self.coeffs.len();
        let mut c = vec![Gf::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = f.mul(a, f.frobenius(b, i as i64));
                c[(i + j) % n] = f.add(c[(i + j) % n], term);
            }
        }
        Ok(Self {
            field: f.clone(),
            coeffs: c,
        })
    }

    /// The n×n matrix over GF(q) whose column j holds the coordinates of
    /// `f(y^j)`, returned row-major.
    pub fn fq_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.coeffs.len();
        let cols: Vec<Vec<u32>> = (0..n)
            .map(|j| self.field.coords(self.eval(self.field.basis(j))))
            .collect();
        (0..n)
            .map(|i| cols.iter().map(|c| c[i]).collect())
            .collect()
    }

    /// `dim_{GF(q)} ker f`.
    pub fn kernel_dimension(&self) -> u32 {
        let n = self.coeffs.len();
        (n - linalg::rank(self.field.base(), self.fq_matrix())) as u32
    }

    /// `U_f = {(x, f(x))}` as a GF(q)-subspace of GF(q^n)^2.
    pub fn graph_subspace(&self) -> FqSubspace {
        let f = &self.field;
        FqSubspace::span(
            f.clone(),
            2,
            (0..f.n() as usize).map(|j| {
                let b = f.basis(j);
                vec![b, self.eval(b)]
            }),
        )
    }

    /// `d` such that GF(q^d) is the maximum field of linearity of `U_f`.
    pub fn field_of_linearity(&self) -> u32 {
        self.graph_subspace().field_of_linearity()
    }
}

impl PartialEq for QPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.check_same(other).is_ok() && self.coeffs == other.coeffs
    }
}

impl Eq for QPolynomial {}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.0.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial[{}]({})", self.field.label(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, h: u32, n: u32) -> Arc<FieldContext> {
        Arc::new(FieldContext::new(p, h, n).unwrap())
    }

    #[test]
    fn square_composed_with_itself() {
        let f = gf(2, 1, 3);
        let sq = QPolynomial::monomial(f.clone(), 1, Gf::ONE);
        let c = sq.compose(&sq).unwrap();
        assert_eq!(c.coeffs(), &[Gf::ZERO, Gf::ZERO, Gf::ONE]);
        for x in f.elements() {
            assert_eq!(c.eval(x), f.pow(x, 4));
        }
    }

    #[test]
    fn kernel_dimensions() {
        let f = gf(2, 1, 3);
        assert_eq!(
            QPolynomial::monomial(f.clone(), 1, Gf::ONE).kernel_dimension(),
            0
        );
        assert_eq!(QPolynomial::trace(f.clone()).kernel_dimension(), 2);
        assert_eq!(QPolynomial::zero(f).kernel_dimension(), 3);
    }

    #[test]
    fn eval_table_matches_eval() {
        let f = gf(3, 1, 3);
        let p = QPolynomial::from_encoded(f.clone(), &[5, 0, 17]).unwrap();
        let t = p.eval_table();
        for x in f.elements() {
            assert_eq!(t[x.index()], p.eval(x));
        }
    }

    #[test]
    fn parse_round_trip() {
        let f = gf(2, 2, 3);
        let p = QPolynomial::parse(f.clone(), "3, 0,12").unwrap();
        assert_eq!(p.to_string(), "3,0,12");
        assert!(QPolynomial::parse(f.clone(), "1,2").is_err());
        assert!(QPolynomial::parse(f, "1,x,2").is_err());
    }

    #[test]
    fn mismatched_contexts() {
        let a = QPolynomial::identity(gf(2, 1, 3));
        let b = QPolynomial::identity(gf(3, 1, 3));
        assert_eq!(a.compose(&b).unwrap_err(), QPolyError::ContextMismatch);
    }

    #[test]
    fn linearity_fields() {
        let f = gf(2, 1, 4);
        assert_eq!(
            QPolynomial::monomial(f.clone(), 2, Gf::ONE).field_of_linearity(),
            2
        );
        assert_eq!(
            QPolynomial::monomial(f.clone(), 1, Gf::ONE).field_of_linearity(),
            1
        );
        let f3 = gf(2, 1, 3);
        assert_eq!(
            QPolynomial::monomial(f3, 1, Gf::ONE).field_of_linearity(),
            1
        );
    }
}
