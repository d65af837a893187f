//! The linear set `D_f = {<(x, f(x))> : x != 0}` on PG(1, q^n), its point
//! weights and weight distribution.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::field::Gf;
use crate::geometry::LinePoint;
use crate::qpoly::QPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinsetError {
    #[error("|Im(f(x)/x)| = {size} outside [{lower}, {upper}]")]
    SizeBound { size: u64, lower: u64, upper: u64 },
}

/// `theta_i = (q^(i+1) - 1) / (q - 1)`, the number of points of PG(i, q).
pub fn theta(q: u64, i: i64) -> u64 {
    if i < 0 {
        return 0;
    }
    (0..=i as u32).map(|k| q.pow(k)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSetProfile {
    pub q: u32,
    pub n: u32,
    /// Points `<(1, m)>` in index order, i.e. ascending slope `m`.
    pub points: Vec<LinePoint>,
    /// Weight of each point, aligned with `points`.
    pub weights: Vec<u32>,
    pub distribution: Vec<u32>,
    pub frequencies: Vec<u64>,
}

impl LinearSetProfile {
    pub fn size(&self) -> u64 {
        self.points.len() as u64
    }

    pub fn rank(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> usize {
        self.distribution.len()
    }

    pub fn min_weight(&self) -> u32 {
        self.distribution[0]
    }

    pub fn max_weight(&self) -> u32 {
        *self.distribution.last().expect("nonempty")
    }

    pub fn frequency(&self, w: u32) -> u64 {
        self.distribution
            .iter()
            .position(|&d| d == w)
            .map_or(0, |i| self.frequencies[i])
    }

    /// Slope `m` of each point `<(1, m)>`.
    pub fn slopes(&self) -> impl Iterator<Item = Gf> + '_ {
        self.points.iter().map(|p| p.coords()[1])
    }

    pub fn weight_of_slope(&self, m: Gf) -> Option<u32> {
        self.points
            .binary_search_by_key(&m, |p| p.coords()[1])
            .ok()
            .map(|i| self.weights[i])
    }

    pub fn identities(&self) -> IdentityCheck {
        let q = self.q as u64;
        let n = self.n as i64;
        let card = self.frequencies.iter().sum::<u64>() == self.size();
        let weight_sum = self
            .distribution
            .iter()
            .zip(&self.frequencies)
            .map(|(&w, &nw)| nw * theta(q, w as i64 - 1))
            .sum::<u64>()
            == theta(q, n - 1);
        let size_bound = self.size() <= theta(q, n - 1);
        let mut top: Vec<u32> = self.weights.clone();
        top.sort_unstable_by(|a, b| b.cmp(a));
        let pair_sum = top.len() < 2 || top[0] + top[1] <= self.n;
        IdentityCheck {
            card,
            weight_sum,
            size_bound,
            pair_sum,
        }
    }

    pub fn classify(&self) -> Classification {
        classify(self.n, &self.distribution, &self.frequencies)
    }

    pub fn report(&self) -> LinearSetReport {
        LinearSetReport {
            size: self.size(),
            distribution: self.distribution.clone(),
            frequencies: self.frequencies.clone(),
            classification: self.classify(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    /// `|D| = sum_j N_{i_j}`.
    pub card: bool,
    /// `sum_j N_{i_j} theta_{i_j - 1} = theta_{n-1}`.
    pub weight_sum: bool,
    /// `|D| <= theta_{n-1}`.
    pub size_bound: bool,
    /// Any two distinct points have weights summing to at most n.
    pub pair_sum: bool,
}

impl IdentityCheck {
    pub fn all(&self) -> bool {
        self.card && self.weight_sum && self.size_bound && self.pair_sum
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Scattered,
    Club(u32),
    TwoWeightHalf,
    General {
        distribution: Vec<u32>,
        frequencies: Vec<u64>,
        degenerate: bool,
    },
}

impl Classification {
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Classification::General {
                degenerate: true,
                ..
            }
        )
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Scattered => write!(f, "scattered"),
            Classification::Club(i) => write!(f, "club({i})"),
            Classification::TwoWeightHalf => write!(f, "two_half"),
            Classification::General { .. } => write!(f, "general"),
        }
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn classify(n: u32, distribution: &[u32], frequencies: &[u64]) -> Classification {
    match (distribution, frequencies) {
        ([1], _) => Classification::Scattered,
        ([1, i], [_, 1]) => Classification::Club(*i),
        ([1, i], [_, 2]) if n.is_multiple_of(2) && *i == n / 2 => Classification::TwoWeightHalf,
        _ => Classification::General {
            distribution: distribution.to_vec(),
            frequencies: frequencies.to_vec(),
            degenerate: distribution == [n],
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSetReport {
    pub size: u64,
    pub distribution: Vec<u32>,
    pub frequencies: Vec<u64>,
    pub classification: Classification,
}

/// Builds `D_f` with the weight of `<(x0, f(x0))>` taken as the kernel
/// dimension of `x -> f(x0) x - x0 f(x)`.
pub fn build_linear_set(f: &QPolynomial) -> LinearSetProfile {
    let field = f.field();
    let table = f.eval_table();
    let order = field.order() as usize;
    let mut rep = vec![Gf::ZERO; order];
    for x in field.nonzero_elements() {
        let m = field.div(table[x.index()], x);
        if rep[m.index()].is_zero() {
            rep[m.index()] = x;
        }
    }
    let slopes: Vec<(Gf, Gf)> = rep
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(m, &x)| (Gf(m as u32), x))
        .collect();
    let weights: Vec<u32> = slopes
        .par_iter()
        .map(|&(_, x0)| {
            let fx0 = table[x0.index()];
            let g = QPolynomial::identity(field.clone())
                .scale(fx0)
                .sub(&f.scale(x0))
                .expect("same context");
            g.kernel_dimension()
        })
        .collect();
    let points = slopes
        .iter()
        .map(|&(m, _)| LinePoint::canonical(field, [Gf::ONE, m]).expect("nonzero"))
        .collect();

    let mut hist: BTreeMap<u32, u64> = BTreeMap::new();
    for &w in &weights {
        *hist.entry(w).or_default() += 1;
    }
    let profile = LinearSetProfile {
        q: field.q(),
        n: field.n(),
        points,
        weights,
        distribution: hist.keys().copied().collect(),
        frequencies: hist.values().copied().collect(),
    };
    let check = profile.identities();
    assert!(
        check.all(),
        "linear set identities failed for {f:?}: {check:?}"
    );
    profile
}

/// `|Im(f(x)/x)|`, checked against `q^(n-1) + 1 <= size <= theta_{n-1}`
/// when `U_f` has field of linearity GF(q).
pub fn image_size(f: &QPolynomial) -> Result<u64, LinsetError> {
    let field = f.field();
    let table = f.eval_table();
    let mut seen = vec![false; field.order() as usize];
    let mut size = 0u64;
    for x in field.nonzero_elements() {
        let m = field.div(table[x.index()], x);
        if !seen[m.index()] {
            seen[m.index()] = true;
            size += 1;
        }
    }
    if f.field_of_linearity() == 1 {
        let q = field.q() as u64;
        let n = field.n();
        let (lower, upper) = (q.pow(n - 1) + 1, theta(q, n as i64 - 1));
        if size < lower || size > upper {
            return Err(LinsetError::SizeBound { size, lower, upper });
        }
    }
    Ok(size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use std::sync::Arc;

    fn gf8() -> Arc<FieldContext> {
        Arc::new(FieldContext::new(2, 1, 3).unwrap())
    }

    #[test]
    fn square_is_scattered() {
        let f = QPolynomial::monomial(gf8(), 1, Gf::ONE);
        let p = build_linear_set(&f);
        assert_eq!(p.size(), 7);
        assert_eq!(p.distribution, vec![1]);
        assert_eq!(p.frequencies, vec![7]);
        assert_eq!(p.classify(), Classification::Scattered);
        assert_eq!(image_size(&f), Ok(7));
    }

    #[test]
    fn trace_is_club() {
        let f = QPolynomial::trace(gf8());
        let p = build_linear_set(&f);
        assert_eq!(p.size(), 5);
        assert_eq!(p.distribution, vec![1, 2]);
        assert_eq!(p.frequencies, vec![4, 1]);
        assert_eq!(p.classify(), Classification::Club(2));
        assert_eq!(p.classify().to_string(), "club(2)");
        assert_eq!(image_size(&f), Ok(5));
    }

    #[test]
    fn identity_is_degenerate() {
        let f = QPolynomial::identity(gf8());
        let p = build_linear_set(&f);
        assert_eq!(p.size(), 1);
        assert_eq!(p.points[0].coords(), &[Gf::ONE, Gf::ONE]);
        assert_eq!(p.weights, vec![3]);
        assert!(p.classify().is_degenerate());
        assert_eq!(image_size(&f), Ok(1));

        let z = build_linear_set(&QPolynomial::zero(gf8()));
        assert_eq!(z.points[0].coords(), &[Gf::ONE, Gf::ZERO]);
    }

    #[test]
    fn classification_fallthrough() {
        assert_eq!(
            classify(4, &[1, 2], &[10, 2]),
            Classification::TwoWeightHalf
        );
        assert!(matches!(
            classify(6, &[1, 2], &[10, 3]),
            Classification::General {
                degenerate: false,
                ..
            }
        ));
        assert_eq!(classify(5, &[1, 3], &[1, 1]).to_string(), "club(3)");
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta(2, 2), 7);
        assert_eq!(theta(3, 0), 1);
        assert_eq!(theta(3, -1), 0);
    }
}
