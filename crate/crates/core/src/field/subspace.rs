//! GF(q)-subspaces of GF(q^n)^k.

use std::sync::Arc;

use super::linalg::Echelon;
use super::{FieldContext, Gf};

#[derive(Clone, Debug)]
pub struct FqSubspace {
    field: Arc<FieldContext>,
    arity: usize,
    basis: Vec<Vec<Gf>>,
    echelon: Echelon<u32>,
}

impl FqSubspace {
    /// The GF(q)-span of `vectors`; dependent vectors are dropped.
    pub fn span<I>(field: Arc<FieldContext>, arity: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Gf>>,
    {
        let width = arity * field.n() as usize;
        let mut echelon = Echelon::new(field.base(), width);
        let mut basis = Vec::new();
        for v in vectors {
            assert_eq!(v.len(), arity);
            let c = fq_coords(&field, &v);
            if echelon.insert(field.base(), &c) {
                basis.push(v);
            }
        }
        Self {
            field,
            arity,
            basis,
            echelon,
        }
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Gf>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Gf]) -> bool {
        self.echelon
            .contains(self.field.base(), &fq_coords(&self.field, v))
    }

    /// All `q^dim` vectors, in the order of GF(q)-combination digits.
    pub fn vectors(&self) -> Vec<Vec<Gf>> {
        let q = self.field.q();
        let total = (q as u64).pow(self.dim() as u32);
        (0..total)
            .map(|mut v| {
                let mut acc = vec![Gf::ZERO; self.arity];
                for b in &self.basis {
                    let c = (v % q as u64) as u32;
                    v /= q as u64;
                    if c != 0 {
                        for (a, &x) in acc.iter_mut().zip(b) {
                            *a = self.field.add(*a, self.field.scale_base(c, x));
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Largest `d | n` such that the subspace is closed under
    /// multiplication by GF(q^d).
    pub fn field_of_linearity(&self) -> u32 {
        let mut divisors = self.field.divisors_of_n();
        divisors.reverse();
        for d in divisors {
            if d == 1 {
                return 1;
            }
            let lambda = self
                .field
                .subfield_generator(d)
                .expect("d divides n by construction");
            let closed = self.basis.iter().all(|b| {
                let scaled: Vec<Gf> = b.iter().map(|&x| self.field.mul(lambda, x)).collect();
                self.contains(&scaled)
            });
            if closed {
                return d;
            }
        }
        1
    }
}

fn fq_coords(field: &FieldContext, v: &[Gf]) -> Vec<u32> {
    v.iter().flat_map(|&x| field.coords(x)).collect()
}

/// `d` such that GF(q^d) is the maximum field of linearity of `u`.
pub fn subspace_field_of_linearity(u: &FqSubspace) -> u32 {
    u.field_of_linearity()
}
