//! Projective systems in PG(2, Q), their `[N, 3]_Q` codes and weight
//! enumerators.

pub mod closed_form;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{linalg, FieldContext, Gf};
use crate::geometry::{line_count, line_through, PlanePoint};
use crate::linsets::LinearSetProfile;
use crate::pointsets::{accumulate, Kind, LineSpectrum, PlanePointSet};

pub use closed_form::{closed_form, closed_form_b, closed_form_c, specialized};

/// Largest `Q^3` the brute-force enumerator accepts.
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("all points lie on one line")]
    DegenerateSpan,
    #[error("{0} messages exceed the brute-force limit")]
    TooLarge(u64),
    #[error("minimum weight of the linear set is {0}, not 1")]
    MinWeightNotOne(u32),
    #[error("no closed form applies: {0}")]
    NoMatchingCase(String),
}

/// A set of points with positive multiplicities spanning the plane.
#[derive(Clone, Debug)]
pub struct ProjectiveSystem {
    field: Arc<FieldContext>,
    points: Vec<PlanePoint>,
    multiplicities: Vec<u32>,
}

impl ProjectiveSystem {
    pub fn new(
        field: Arc<FieldContext>,
        points: Vec<(PlanePoint, u32)>,
    ) -> Result<Self, CodeError> {
        let mut merged: BTreeMap<u64, (PlanePoint, u32)> = BTreeMap::new();
        for (p, m) in points.into_iter().filter(|&(_, m)| m > 0) {
            merged.entry(p.index(&field)).or_insert((p, 0)).1 += m;
        }
        let (points, multiplicities): (Vec<_>, Vec<_>) = merged.into_values().unzip();
        let spans = match points.as_slice() {
            [a, b, rest @ ..] => {
                let l = line_through(&field, a, b).expect("distinct canonical points");
                rest.iter().any(|p| !l.contains(&field, p))
            }
            _ => false,
        };
        if !spans {
            return Err(CodeError::DegenerateSpan);
        }
        Ok(Self {
            field,
            points,
            multiplicities,
        })
    }

    pub fn from_pointset(s: &PlanePointSet) -> Result<Self, CodeError> {
        let field = s.source.field().clone();
        Self::new(field, s.points.points().iter().map(|&p| (p, 1)).collect())
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    pub fn points(&self) -> &[PlanePoint] {
        &self.points
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn length(&self) -> u64 {
        self.multiplicities.iter().map(|&m| m as u64).sum()
    }

    /// Multiplicity-weighted spectrum over all lines.
    pub fn line_spectrum(&self) -> LineSpectrum {
        let mut hits = vec![0u32; line_count(&self.field) as usize];
        for (p, &m) in self.points.iter().zip(&self.multiplicities) {
            accumulate(&self.field, p, m, &mut hits);
        }
        let mut counts = BTreeMap::new();
        for h in hits {
            *counts.entry(h as u64).or_insert(0u64) += 1;
        }
        LineSpectrum::from_counts(counts)
    }

    /// `m - max_l sum_{P in l} m(P)`.
    pub fn min_distance(&self) -> u64 {
        self.length() - self.line_spectrum().max_size()
    }
}

/// A `3 x m` generator matrix, stored by columns.
#[derive(Clone, Debug)]
pub struct GeneratorMatrix {
    field: Arc<FieldContext>,
    columns: Vec<[Gf; 3]>,
}

impl GeneratorMatrix {
    pub fn from_system(sys: &ProjectiveSystem) -> Self {
        let columns = sys
            .points
            .iter()
            .zip(&sys.multiplicities)
            .flat_map(|(p, &m)| std::iter::repeat_n(*p.coords(), m as usize))
            .collect();
        Self {
            field: sys.field.clone(),
            columns,
        }
    }

    pub fn new(field: Arc<FieldContext>, columns: Vec<[Gf; 3]>) -> Self {
        Self { field, columns }
    }

    pub fn columns(&self) -> &[[Gf; 3]] {
        &self.columns
    }

    pub fn length(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        let rows = (0..3)
            .map(|i| self.columns.iter().map(|c| c[i]).collect())
            .collect();
        linalg::rank(self.field.as_ref(), rows)
    }

    pub fn to_system(&self) -> Result<ProjectiveSystem, CodeError> {
        let pts = self
            .columns
            .iter()
            .map(|c| PlanePoint::canonical(&self.field, *c).map(|p| (p, 1)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CodeError::DegenerateSpan)?;
        ProjectiveSystem::new(self.field.clone(), pts)
    }

    /// One line `x,y,z` per column.
    pub fn to_csv(&self) -> String {
        self.columns
            .iter()
            .map(|c| format!("{},{},{}\n", c[0].0, c[1].0, c[2].0))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightEnumerator {
    pub length: u64,
    /// Order `Q` of the alphabet.
    pub alphabet: u64,
    #[serde(rename = "A")]
    pub a: BTreeMap<u64, u64>,
}

impl WeightEnumerator {
    pub fn from_counts(length: u64, alphabet: u64, a: BTreeMap<u64, u64>) -> Self {
        Self {
            length,
            alphabet,
            a: a.into_iter().filter(|&(_, c)| c > 0).collect(),
        }
    }

    pub fn total(&self) -> u64 {
        self.a.values().sum()
    }

    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.a.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn min_distance(&self) -> Option<u64> {
        self.nonzero_weights().first().copied()
    }

    /// At most three nonzero weights.
    pub fn few_weights(&self) -> bool {
        self.nonzero_weights().len() <= 3
    }

    /// `A_0 = 1` and `sum A_w = Q^3`.
    pub fn is_consistent(&self) -> bool {
        self.a.get(&0) == Some(&1) && self.total() == self.alphabet.pow(3)
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .a
            .iter()
            .map(|(&w, &c)| match w {
                0 => c.to_string(),
                _ => format!("{c}z^{w}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `A_{N-m} = (Q-1) * #{lines meeting the set in m points}`.
pub fn enumerator_from_spectrum(
    spec: &LineSpectrum,
    length: u64,
    alphabet: u64,
) -> WeightEnumerator {
    let mut a = BTreeMap::from([(0, 1)]);
    for (&m, &c) in &spec.counts {
        *a.entry(length - m).or_insert(0) += (alphabet - 1) * c;
    }
    let e = WeightEnumerator::from_counts(length, alphabet, a);
    assert!(
        e.is_consistent(),
        "enumerator from spectrum violates totals: {e}"
    );
    e
}

/// Weight distribution of every codeword `vG`, `v ∈ GF(Q)^3`.
pub fn enumerator_brute_force(g: &GeneratorMatrix) -> Result<WeightEnumerator, CodeError> {
    let field = &g.field;
    let q = field.order() as u64;
    let messages = q.pow(3);
    if messages > BRUTE_FORCE_LIMIT {
        return Err(CodeError::TooLarge(messages));
    }
    let m = g.length() as u64;
    let inv_z: Vec<Option<Gf>> = g
        .columns
        .iter()
        .map(|c| (!c[2].is_zero()).then(|| field.neg(field.inv(c[2]))))
        .collect();
    let pairs: Vec<(Gf, Gf)> = field
        .elements()
        .flat_map(|a| field.elements().map(move |b| (a, b)))
        .collect();
    let hist = pairs
        .par_iter()
        .fold(
            || (BTreeMap::<u64, u64>::new(), vec![0u32; q as usize]),
            |(mut hist, mut bucket), &(v1, v2)| {
                bucket.iter_mut().for_each(|b| *b = 0);
                let mut fixed = 0u64;
                for (c, iz) in g.columns.iter().zip(&inv_z) {
                    let s = field.add(field.mul(v1, c[0]), field.mul(v2, c[1]));
                    match iz {
                        // s + v3 z = 0 exactly when v3 = -s/z
                        Some(iz) => bucket[field.mul(s, *iz).index()] += 1,
                        None => fixed += s.is_zero() as u64,
                    }
                }
                for &zeros in bucket.iter() {
                    *hist.entry(m - fixed - zeros as u64).or_insert(0) += 1;
                }
                (hist, bucket)
            },
        )
        .map(|(h, _)| h)
        .reduce(BTreeMap::new, |mut a, b| {
            for (w, c) in b {
                *a.entry(w).or_insert(0) += c;
            }
            a
        });
    Ok(WeightEnumerator::from_counts(m, q, hist))
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeReport {
    pub kind: Kind,
    /// `[N, k, d]`.
    pub params: [u64; 3],
    pub field: String,
    #[serde(rename = "A")]
    pub a: BTreeMap<u64, u64>,
    pub few_weights: bool,
    pub closed_form_match: Option<bool>,
    pub specialized_match: Option<bool>,
    pub brute_force_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<BTreeMap<u64, u64>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CodeReport {
    /// Every comparison that ran agreed.
    pub fn all_match(&self) -> bool {
        [
            self.closed_form_match,
            self.specialized_match,
            self.brute_force_match,
        ]
        .iter()
        .all(|m| m.unwrap_or(true))
    }
}

/// Compares the enumerator read off the spectrum with the closed forms
/// and, when `brute_force` is set and the field is small enough, with
/// exhaustive codeword enumeration.
pub fn code_report(
    profile: &LinearSetProfile,
    set: &PlanePointSet,
    spec: &LineSpectrum,
    brute_force: bool,
) -> Result<CodeReport, CodeError> {
    let field = set.source.field();
    let q_order = field.order() as u64;
    let n_points = set.len();
    let sys = ProjectiveSystem::from_pointset(set)?;
    let e = enumerator_from_spectrum(spec, n_points, q_order);
    let d = n_points - spec.max_size();
    assert_eq!(Some(d), e.min_distance(), "minimum distance from spectrum");
    let mut notes = Vec::new();

    let (closed_form_match, closed) = match closed_form(profile, set.kind) {
        Ok(c) => (Some(c == e), Some(c.a)),
        Err(err) => {
            notes.push(format!("closed form skipped: {err}"));
            (None, None)
        }
    };
    let specialized_match = match specialized(profile, set.kind) {
        Ok(Some(c)) => Some(c == e),
        Ok(None) => None,
        Err(err) => {
            notes.push(format!("specialized form skipped: {err}"));
            None
        }
    };
    let brute_force_match = if brute_force {
        match enumerator_brute_force(&GeneratorMatrix::from_system(&sys)) {
            Ok(b) => Some(b == e),
            Err(err) => {
                notes.push(format!("brute force skipped: {err}"));
                None
            }
        }
    } else {
        None
    };
    Ok(CodeReport {
        kind: set.kind,
        params: [n_points, 3, d],
        field: field.label(),
        few_weights: e.few_weights(),
        a: e.a,
        closed_form_match,
        specialized_match,
        brute_force_match,
        closed_form: closed,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linsets::build_linear_set;
    use crate::pointsets::{build_pointset, line_spectrum};
    use crate::qpoly::QPolynomial;

    fn gf8() -> Arc<FieldContext> {
        Arc::new(FieldContext::new(2, 1, 3).unwrap())
    }

    fn a(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn square_codes() {
        let f = QPolynomial::monomial(gf8(), 1, Gf::ONE);
        let p = build_linear_set(&f);
        let b = build_pointset(&f, Kind::B);
        let sb = line_spectrum(&b);
        let r = code_report(&p, &b, &sb, true).unwrap();
        assert_eq!(r.params, [15, 3, 8]);
        assert_eq!(r.a, a(&[(0, 1), (8, 7), (12, 196), (14, 308)]));
        assert!(r.few_weights && r.all_match());
        assert_eq!(r.brute_force_match, Some(true));

        let c = build_pointset(&f, Kind::C);
        let sc = line_spectrum(&c);
        let r = code_report(&p, &c, &sc, true).unwrap();
        assert_eq!(r.params, [10, 3, 8]);
        assert_eq!(r.a, a(&[(0, 1), (8, 315), (10, 196)]));
        assert!(r.all_match());
    }

    #[test]
    fn trace_code() {
        let f = QPolynomial::trace(gf8());
        let p = build_linear_set(&f);
        let b = build_pointset(&f, Kind::B);
        let s = line_spectrum(&b);
        let r = code_report(&p, &b, &s, true).unwrap();
        assert_eq!(r.params, [13, 3, 8]);
        assert_eq!(r.a, a(&[(0, 1), (8, 21), (10, 112), (12, 378)]));
        assert!(r.all_match());
    }

    #[test]
    fn system_round_trip() {
        let f = QPolynomial::trace(gf8());
        let b = build_pointset(&f, Kind::B);
        let sys = ProjectiveSystem::from_pointset(&b).unwrap();
        let g = GeneratorMatrix::from_system(&sys);
        assert_eq!(g.rank(), 3);
        let back = g.to_system().unwrap();
        assert_eq!(back.points(), sys.points());
        assert_eq!(back.multiplicities(), sys.multiplicities());
        assert_eq!(g.to_csv().lines().count(), 13);
        assert_eq!(sys.min_distance(), 8);
    }

    #[test]
    fn collinear_points_rejected() {
        let field = gf8();
        let line = crate::geometry::ProjLine::infinity();
        let pts = line.points(&field).into_iter().map(|p| (p, 1)).collect();
        assert_eq!(
            ProjectiveSystem::new(field, pts).unwrap_err(),
            CodeError::DegenerateSpan
        );
    }

    #[test]
    fn guard_applies() {
        let field = Arc::new(FieldContext::new(2, 1, 9).unwrap());
        let g = GeneratorMatrix::new(field, vec![[Gf::ONE, Gf::ZERO, Gf::ZERO]]);
        assert!(matches!(
            enumerator_brute_force(&g),
            Err(CodeError::TooLarge(_))
        ));
    }
}
