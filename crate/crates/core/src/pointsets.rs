//! The plane point sets `B_f = G_f ∪ D_f` and `C_f = G_f ∪ (l_inf \ D_f)`
//! and their line-intersection spectra.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldContext, Gf};
use crate::geometry::{line_count, PlanePoint, PointSet, ProjLine};
use crate::linsets::LinearSetProfile;
use crate::qpoly::QPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointsetError {
    #[error("minimum weight of the linear set is {0}, not 1")]
    MinWeightNotOne(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    B,
    C,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::B => write!(f, "B"),
            Kind::C => write!(f, "C"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlanePointSet {
    pub kind: Kind,
    pub points: PointSet,
    pub source: QPolynomial,
    pub redei_line: ProjLine,
}

impl PlanePointSet {
    pub fn len(&self) -> u64 {
        self.points.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Canonical points `<(x, f(x), 1)>` for every `x`.
pub fn graph_points(f: &QPolynomial) -> Vec<PlanePoint> {
    let field = f.field();
    let table = f.eval_table();
    field
        .elements()
        .map(|x| {
            PlanePoint::canonical(field, [x, table[x.index()], Gf::ONE])
                .expect("third coordinate is one")
        })
        .collect()
}

fn direction_slopes(f: &QPolynomial) -> Vec<bool> {
    let field = f.field();
    let table = f.eval_table();
    let mut seen = vec![false; field.order() as usize];
    for x in field.nonzero_elements() {
        seen[field.div(table[x.index()], x).index()] = true;
    }
    seen
}

pub fn build_pointset(f: &QPolynomial, kind: Kind) -> PlanePointSet {
    let field = f.field();
    let q_order = field.order() as u64;
    let in_d = direction_slopes(f);
    let d_size = in_d.iter().filter(|&&b| b).count() as u64;
    let mut pts = graph_points(f);
    let dir = |m: Gf| PlanePoint::canonical(field, [Gf::ONE, m, Gf::ZERO]).expect("nonzero");
    match kind {
        Kind::B => pts.extend(field.elements().filter(|m| in_d[m.index()]).map(dir)),
        Kind::C => {
            pts.extend(field.elements().filter(|m| !in_d[m.index()]).map(dir));
            pts.push(PlanePoint::canonical(field, [Gf::ZERO, Gf::ONE, Gf::ZERO]).expect("nonzero"));
        }
    }
    let points = PointSet::new(field, pts);
    let expected = match kind {
        Kind::B => q_order + d_size,
        Kind::C => q_order + (q_order + 1 - d_size),
    };
    assert_eq!(points.len() as u64, expected, "{kind} point count");
    PlanePointSet {
        kind,
        points,
        source: f.clone(),
        redei_line: ProjLine::infinity(),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LineSpectrum {
    /// Intersection size -> number of lines.
    pub counts: BTreeMap<u64, u64>,
    /// First line, in index order, realizing each size.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<u64, ProjLine>,
}

impl LineSpectrum {
    pub fn from_counts(counts: BTreeMap<u64, u64>) -> Self {
        Self {
            counts: counts.into_iter().filter(|&(_, c)| c > 0).collect(),
            witnesses: BTreeMap::new(),
        }
    }

    pub fn total_lines(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `sum_m m * counts(m)`.
    pub fn incidence_total(&self) -> u64 {
        self.counts.iter().map(|(&m, &c)| m * c).sum()
    }

    pub fn sizes(&self) -> BTreeSet<u64> {
        self.counts.keys().copied().collect()
    }

    pub fn max_size(&self) -> u64 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    fn check(&self, field: &FieldContext, n_points: u64) {
        let q = field.order() as u64;
        assert_eq!(self.total_lines(), line_count(field), "spectrum line total");
        assert_eq!(
            self.incidence_total(),
            n_points * (q + 1),
            "spectrum incidence total"
        );
    }
}

fn spectrum_from_hits(field: &FieldContext, hits: &[u32]) -> LineSpectrum {
    let mut counts = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for (i, &h) in hits.iter().enumerate() {
        *counts.entry(h as u64).or_insert(0) += 1;
        witnesses
            .entry(h as u64)
            .or_insert_with(|| ProjLine::from_index(field, i as u64).expect("in range"));
    }
    LineSpectrum { counts, witnesses }
}

/// Adds `w` to the hit count of every line through `p`.
pub(crate) fn accumulate(field: &FieldContext, p: &PlanePoint, w: u32, hits: &mut [u32]) {
    let q = field.order() as usize;
    let [x1, x2, x3] = *p.coords();
    let affine = 1 + q;
    if x3.is_zero() {
        hits[0] += w;
        if x2.is_zero() {
            for h in &mut hits[1..1 + q] {
                *h += w;
            }
        } else {
            let a = field.neg(field.div(x1, x2));
            let start = affine + a.index() * q;
            for h in &mut hits[start..start + q] {
                *h += w;
            }
        }
    } else {
        let inv = field.neg(field.inv(x3));
        hits[1 + field.mul(x2, inv).index()] += w;
        for a in field.elements() {
            let b = field.mul(field.add(x1, field.mul(a, x2)), inv);
            hits[affine + a.index() * q + b.index()] += w;
        }
    }
}

/// Exact spectrum of an arbitrary point set, by accumulating incidences
/// from the points: `O(|S| Q)`.
pub fn line_spectrum_of(field: &FieldContext, set: &PointSet) -> LineSpectrum {
    let lines = line_count(field) as usize;
    let hits = set
        .points()
        .par_chunks(256)
        .fold(
            || vec![0u32; lines],
            |mut acc, chunk| {
                for p in chunk {
                    accumulate(field, p, 1, &mut acc);
                }
                acc
            },
        )
        .reduce(
            || vec![0u32; lines],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let spec = spectrum_from_hits(field, &hits);
    spec.check(field, set.len() as u64);
    spec
}

pub fn line_spectrum(s: &PlanePointSet) -> LineSpectrum {
    line_spectrum_of(s.source.field(), &s.points)
}

/// Reference spectrum: walks every line and tests each of its points for
/// membership. `O(Q^3)`; meant for small fields.
pub fn line_spectrum_by_lines(field: &FieldContext, set: &PointSet) -> LineSpectrum {
    let hits: Vec<u32> = (0..line_count(field))
        .into_par_iter()
        .map(|i| {
            let line = ProjLine::from_index(field, i).expect("in range");
            line.points(field)
                .iter()
                .filter(|p| set.contains(field, p))
                .count() as u32
        })
        .collect();
    let spec = spectrum_from_hits(field, &hits);
    spec.check(field, set.len() as u64);
    spec
}

fn require_min_weight_one(profile: &LinearSetProfile) -> Result<(), PointsetError> {
    match profile.min_weight() {
        1 => Ok(()),
        w => Err(PointsetError::MinWeightNotOne(w)),
    }
}

/// Line counts per intersection size determined by the weight
/// distribution of `D_f` alone.
pub fn predicted_spectrum(
    profile: &LinearSetProfile,
    kind: Kind,
) -> Result<LineSpectrum, PointsetError> {
    require_min_weight_one(profile)?;
    let q = profile.q as u64;
    let n = profile.n;
    let big_q = q.pow(n);
    let total = big_q * big_q + big_q + 1;
    let d = profile.size();
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut assigned = 1u64;
    let (inf_size, bump, rest_size) = match kind {
        Kind::B => (d, 1, 1),
        Kind::C => (big_q + 1 - d, 0, 0),
    };
    *counts.entry(inf_size).or_default() += 1;
    for (&w, &nw) in profile.distribution.iter().zip(&profile.frequencies) {
        let lines = q.pow(n - w) * nw;
        *counts.entry(q.pow(w) + bump).or_default() += lines;
        assigned += lines;
    }
    if kind == Kind::C {
        let lines = big_q * (big_q + 1 - d);
        *counts.entry(2).or_default() += lines;
        assigned += lines;
    }
    *counts.entry(rest_size).or_default() += total - assigned;
    Ok(LineSpectrum::from_counts(counts))
}

/// Which intersection-number pattern applies to a point set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumCase {
    /// Kind B, largest weight below `n - 1`.
    BShortWeights,
    /// Kind B, distribution `(1, n - 1)` or `n = 2`.
    BCoweightOne,
    /// Kind C, `q > 2`.
    COddOrLargeQ,
    /// Kind C, `q = 2` and at least three weights.
    CBinaryManyWeights,
    /// Kind C, `q = 2`, two weights, one heavy point.
    CBinaryClub,
    /// Kind C, `q = 2`, two weights, several heavy points.
    CBinaryTwoWeights,
    /// Kind C, `q = 2`, scattered.
    CBinaryScattered,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionType {
    pub case: SpectrumCase,
    pub sizes: BTreeSet<u64>,
}

/// The set of intersection numbers predicted from the weight distribution,
/// stated per case rather than derived from the line counts.
pub fn intersection_type(
    profile: &LinearSetProfile,
    kind: Kind,
) -> Result<IntersectionType, PointsetError> {
    require_min_weight_one(profile)?;
    let q = profile.q as u64;
    let n = profile.n;
    let d = profile.size();
    let t = profile.t();
    let heavy = &profile.distribution[1..];
    let i_t = profile.max_weight();
    let co = q.pow(n) + 1 - d;
    let mut sizes = BTreeSet::new();
    let case = match kind {
        Kind::B => {
            sizes.extend([1, q + 1]);
            sizes.extend(heavy.iter().map(|&i| q.pow(i) + 1));
            if i_t + 1 < n {
                sizes.insert(d);
                SpectrumCase::BShortWeights
            } else {
                SpectrumCase::BCoweightOne
            }
        }
        Kind::C if q > 2 => {
            sizes.extend([0, 2, q, co]);
            sizes.extend(heavy.iter().map(|&i| q.pow(i)));
            SpectrumCase::COddOrLargeQ
        }
        Kind::C => match t {
            1 => {
                sizes.extend([0, 2]);
                SpectrumCase::CBinaryScattered
            }
            2 => {
                let i = heavy[0];
                sizes.extend([0, 2, 1 << i]);
                if profile.frequencies[1] == 1 {
                    SpectrumCase::CBinaryClub
                } else {
                    sizes.insert(co);
                    SpectrumCase::CBinaryTwoWeights
                }
            }
            _ => {
                sizes.extend([0, 2, co]);
                sizes.extend(heavy.iter().map(|&i| 1u64 << i));
                SpectrumCase::CBinaryManyWeights
            }
        },
    };
    Ok(IntersectionType { case, sizes })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SpectrumDiff {
    /// `(size, predicted, actual)` for every size where the two differ.
    pub mismatches: Vec<(u64, u64, u64)>,
}

impl SpectrumDiff {
    pub fn is_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn diff_spectra(predicted: &LineSpectrum, actual: &LineSpectrum) -> SpectrumDiff {
    let sizes: BTreeSet<u64> = predicted.sizes().union(&actual.sizes()).copied().collect();
    let get = |s: &LineSpectrum, m: u64| s.counts.get(&m).copied().unwrap_or(0);
    SpectrumDiff {
        mismatches: sizes
            .into_iter()
            .map(|m| (m, get(predicted, m), get(actual, m)))
            .filter(|&(_, a, b)| a != b)
            .collect(),
    }
}

/// Largest `e <= cap` with every realized size `≡ 1 (mod p^e)`.
pub fn blocking_exponent(spec: &LineSpectrum, p: u32, cap: u32) -> u32 {
    let p = p as u64;
    let mut e = 0;
    let mut modulus = 1u64;
    while e < cap {
        let next = modulus * p;
        if spec.counts.keys().all(|&m| m % next == 1 % next) {
            e += 1;
            modulus = next;
        } else {
            break;
        }
    }
    e
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcType {
    Hyperoval,
    /// KM-arc of type `2^i`.
    KmArc {
        i: u32,
    },
}

/// Detects a set of type `(0, 2)` or `(0, 2, 2^i)` in a plane of even order.
pub fn km_arc_check(spec: &LineSpectrum) -> Option<ArcType> {
    let odd: Vec<u64> = spec
        .sizes()
        .into_iter()
        .filter(|&m| m != 0 && m != 2)
        .collect();
    match odd.as_slice() {
        [] => Some(ArcType::Hyperoval),
        [m] if m.is_power_of_two() && *m >= 4 => Some(ArcType::KmArc {
            i: m.trailing_zeros(),
        }),
        _ => None,
    }
}

pub fn is_hyperoval(spec: &LineSpectrum) -> bool {
    km_arc_check(spec) == Some(ArcType::Hyperoval)
}

#[derive(Clone, Debug, Serialize)]
pub struct PointsetReport {
    pub kind: Kind,
    #[serde(rename = "N")]
    pub n_points: u64,
    pub spectrum: BTreeMap<u64, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arc: Option<ArcType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<BTreeMap<u64, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_sizes: Option<IntersectionType>,
    pub predicted_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<SpectrumDiff>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

/// Builds the point set, computes its spectrum and compares it with the
/// prediction from `profile`.
pub fn analyze_pointset(
    f: &QPolynomial,
    profile: &LinearSetProfile,
    kind: Kind,
) -> (PlanePointSet, LineSpectrum, PointsetReport) {
    let field = f.field();
    let set = build_pointset(f, kind);
    let spec = line_spectrum(&set);
    let exponent =
        (kind == Kind::B).then(|| blocking_exponent(&spec, field.p(), field.h() * field.n()));
    let arc = (kind == Kind::C && field.q() == 2)
        .then(|| km_arc_check(&spec))
        .flatten();
    let mut report = PointsetReport {
        kind,
        n_points: set.len(),
        spectrum: spec.counts.clone(),
        exponent,
        arc,
        predicted: None,
        predicted_sizes: None,
        predicted_match: None,
        diff: None,
        skipped: None,
    };
    match (
        predicted_spectrum(profile, kind),
        intersection_type(profile, kind),
    ) {
        (Ok(pred), Ok(tt)) => {
            let diff = diff_spectra(&pred, &spec);
            let ok = diff.is_match() && tt.sizes == spec.sizes();
            report.predicted = Some(pred.counts);
            report.predicted_sizes = Some(tt);
            report.predicted_match = Some(ok);
            if !diff.is_match() {
                report.diff = Some(diff);
            }
        }
        (Err(e), _) | (_, Err(e)) => report.skipped = Some(e.to_string()),
    }
    (set, spec, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linsets::build_linear_set;
    use std::sync::Arc;

    fn gf8() -> Arc<FieldContext> {
        Arc::new(FieldContext::new(2, 1, 3).unwrap())
    }

    fn counts(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn trace_blocking_set() {
        let f = QPolynomial::trace(gf8());
        let s = build_pointset(&f, Kind::B);
        assert_eq!(s.len(), 13);
        let spec = line_spectrum(&s);
        assert_eq!(spec.counts, counts(&[(5, 3), (3, 16), (1, 54)]));
        assert_eq!(blocking_exponent(&spec, 2, 3), 1);
        let p = build_linear_set(&f);
        assert_eq!(predicted_spectrum(&p, Kind::B).unwrap().counts, spec.counts);
        let tt = intersection_type(&p, Kind::B).unwrap();
        assert_eq!(tt.case, SpectrumCase::BCoweightOne);
        assert_eq!(tt.sizes, spec.sizes());
    }

    #[test]
    fn square_hyperoval() {
        let f = QPolynomial::monomial(gf8(), 1, Gf::ONE);
        let s = build_pointset(&f, Kind::C);
        assert_eq!(s.len(), 10);
        let spec = line_spectrum(&s);
        assert_eq!(spec.counts, counts(&[(2, 45), (0, 28)]));
        assert!(is_hyperoval(&spec));
        let b = line_spectrum(&build_pointset(&f, Kind::B));
        assert_eq!(b.counts, counts(&[(7, 1), (3, 28), (1, 44)]));
    }

    #[test]
    fn graph_contains_origin() {
        let f = QPolynomial::trace(gf8());
        let s = build_pointset(&f, Kind::B);
        let origin = PlanePoint::canonical(f.field(), [Gf::ZERO, Gf::ZERO, Gf::ONE]).unwrap();
        assert!(s.points.contains(f.field(), &origin));
    }

    #[test]
    fn accumulation_matches_line_walk() {
        let field = Arc::new(FieldContext::new(3, 1, 2).unwrap());
        let f = QPolynomial::from_encoded(field.clone(), &[2, 4]).unwrap();
        for kind in [Kind::B, Kind::C] {
            let s = build_pointset(&f, kind);
            let fast = line_spectrum(&s);
            let slow = line_spectrum_by_lines(&field, &s.points);
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn arc_detection() {
        let sp = |pairs: &[(u64, u64)]| LineSpectrum::from_counts(counts(pairs));
        assert_eq!(
            km_arc_check(&sp(&[(0, 5), (2, 9), (4, 3)])),
            Some(ArcType::KmArc { i: 2 })
        );
        assert_eq!(km_arc_check(&sp(&[(0, 5), (2, 9), (3, 3)])), None);
        assert_eq!(km_arc_check(&sp(&[(0, 5), (2, 9), (4, 3), (8, 1)])), None);
        assert!(is_hyperoval(&sp(&[(0, 28), (2, 45)])));
    }

    #[test]
    fn degenerate_prediction_rejected() {
        let f = QPolynomial::identity(gf8());
        let p = build_linear_set(&f);
        assert_eq!(
            predicted_spectrum(&p, Kind::B),
            Err(PointsetError::MinWeightNotOne(3))
        );
        let spec = LineSpectrum::from_counts(counts(&[(1, 73)]));
        assert_eq!(blocking_exponent(&spec, 2, 3), 3);
    }
}
