//! Points and lines of PG(1, Q) and PG(2, Q), with Q = q^n.
//!
//! Points are stored in canonical form (first nonzero coordinate equal to
//! one) and indexed densely in lexicographic order of that form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldContext, Gf};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("a line needs two distinct points")]
    SamePoint,
    #[error("point index {0} out of range")]
    IndexOutOfRange(u64),
    #[error("cannot parse point: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint<const D: usize> {
    coords: [Gf; D],
}

pub type LinePoint = ProjPoint<2>;
pub type PlanePoint = ProjPoint<3>;

impl<const D: usize> ProjPoint<D> {
    /// Scales `v` so that its first nonzero coordinate is one.
    pub fn canonical(field: &FieldContext, mut v: [Gf; D]) -> Result<Self, GeometryError> {
        let lead = v
            .iter()
            .copied()
            .find(|c| !c.is_zero())
            .ok_or(GeometryError::ZeroVector)?;
        if lead != Gf::ONE {
            let inv = field.inv(lead);
            for c in v.iter_mut() {
                *c = field.mul(*c, inv);
            }
        }
        Ok(Self { coords: v })
    }

    pub fn coords(&self) -> &[Gf; D] {
        &self.coords
    }

    /// Number of points of PG(D-1, Q).
    pub fn count(field: &FieldContext) -> u64 {
        let q = field.order() as u64;
        (0..D as u32 - 1).map(|m| q.pow(m)).sum::<u64>() + q.pow(D as u32 - 1)
    }

    /// Dense index in lexicographic order of canonical forms.
    pub fn index(&self, field: &FieldContext) -> u64 {
        let q = field.order() as u64;
        let k = self
            .coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("canonical point");
        let tail = D - 1 - k;
        let offset: u64 = (0..tail as u32).map(|m| q.pow(m)).sum();
        let value = self.coords[k + 1..]
            .iter()
            .fold(0u64, |acc, c| acc * q + c.0 as u64);
        offset + value
    }

    pub fn from_index(field: &FieldContext, mut idx: u64) -> Result<Self, GeometryError> {
        if idx >= Self::count(field) {
            return Err(GeometryError::IndexOutOfRange(idx));
        }
        let q = field.order() as u64;
        let mut tail = 0usize;
        while idx >= q.pow(tail as u32) {
            idx -= q.pow(tail as u32);
            tail += 1;
        }
        let mut coords = [Gf::ZERO; D];
        let k = D - 1 - tail;
        coords[k] = Gf::ONE;
        for j in (k + 1..D).rev() {
            coords[j] = Gf((idx % q) as u32);
            idx /= q;
        }
        Ok(Self { coords })
    }
}

impl<const D: usize> fmt::Display for ProjPoint<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.0.to_string()).collect();
        write!(f, "{}", parts.join(":"))
    }
}

impl<const D: usize> fmt::Debug for ProjPoint<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

impl<const D: usize> Serialize for ProjPoint<D> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de, const D: usize> Deserialize<'de> for ProjPoint<D> {
    fn deserialize<De: serde::Deserializer<'de>>(d: De) -> Result<Self, De::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses `"x:y:z"`. The result is not checked against a field; use
/// [`ProjPoint::canonical`] to validate.
impl<const D: usize> FromStr for ProjPoint<D> {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let vals: Vec<u32> = s
            .split(':')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| GeometryError::Parse(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        let coords: [Gf; D] = vals
            .into_iter()
            .map(Gf)
            .collect::<Vec<_>>()
            .try_into()
            .map_err(|_| GeometryError::Parse(format!("expected {D} coordinates in {s:?}")))?;
        Ok(Self { coords })
    }
}

/// A line of PG(2, Q) given by canonical dual coordinates `(v1, v2, v3)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjLine(pub PlanePoint);

impl ProjLine {
    pub fn new(field: &FieldContext, v: [Gf; 3]) -> Result<Self, GeometryError> {
        PlanePoint::canonical(field, v).map(ProjLine)
    }

    /// The line `x3 = 0`.
    pub fn infinity() -> Self {
        ProjLine(PlanePoint {
            coords: [Gf::ZERO, Gf::ZERO, Gf::ONE],
        })
    }

    pub fn dual(&self) -> &[Gf; 3] {
        self.0.coords()
    }

    pub fn index(&self, field: &FieldContext) -> u64 {
        self.0.index(field)
    }

    pub fn from_index(field: &FieldContext, idx: u64) -> Result<Self, GeometryError> {
        PlanePoint::from_index(field, idx).map(ProjLine)
    }

    pub fn contains(&self, field: &FieldContext, p: &PlanePoint) -> bool {
        dot(field, self.dual(), p.coords()).is_zero()
    }

    pub fn points(&self, field: &FieldContext) -> Vec<PlanePoint> {
        orthogonal(field, self.dual())
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn dot(field: &FieldContext, a: &[Gf; 3], b: &[Gf; 3]) -> Gf {
    (0..3).fold(Gf::ZERO, |acc, i| field.add(acc, field.mul(a[i], b[i])))
}

/// Canonical points `x` with `v . x = 0`, in index order.
fn orthogonal(field: &FieldContext, v: &[Gf; 3]) -> Vec<PlanePoint> {
    let [v1, v2, v3] = *v;
    let pt = |c: [Gf; 3]| PlanePoint { coords: c };
    let mut out = Vec::with_capacity(field.order() as usize + 1);
    if !v3.is_zero() {
        let inv = field.inv(v3);
        out.push(pt([Gf::ZERO, Gf::ONE, field.neg(field.mul(v2, inv))]));
        for y in field.elements() {
            let z = field.neg(field.mul(field.add(v1, field.mul(v2, y)), inv));
            out.push(pt([Gf::ONE, y, z]));
        }
    } else if !v2.is_zero() {
        out.push(pt([Gf::ZERO, Gf::ZERO, Gf::ONE]));
        let y = field.neg(field.div(v1, v2));
        for z in field.elements() {
            out.push(pt([Gf::ONE, y, z]));
        }
    } else {
        out.push(pt([Gf::ZERO, Gf::ZERO, Gf::ONE]));
        for z in field.elements() {
            out.push(pt([Gf::ZERO, Gf::ONE, z]));
        }
    }
    out
}

pub fn points_on_line(field: &FieldContext, line: &ProjLine) -> Vec<PlanePoint> {
    line.points(field)
}

pub fn lines_through(field: &FieldContext, p: &PlanePoint) -> Vec<ProjLine> {
    orthogonal(field, p.coords())
        .into_iter()
        .map(ProjLine)
        .collect()
}

pub fn line_count(field: &FieldContext) -> u64 {
    PlanePoint::count(field)
}

/// Every line of PG(2, Q) in lexicographic order of dual coordinates.
pub fn all_lines(field: &FieldContext) -> impl Iterator<Item = ProjLine> + '_ {
    (0..line_count(field)).map(move |i| ProjLine::from_index(field, i).expect("in range"))
}

pub fn line_through(
    field: &FieldContext,
    a: &PlanePoint,
    b: &PlanePoint,
) -> Result<ProjLine, GeometryError> {
    let (x, y) = (a.coords(), b.coords());
    let m = |i: usize, j: usize| field.sub(field.mul(x[i], y[j]), field.mul(x[j], y[i]));
    ProjLine::new(field, [m(1, 2), m(2, 0), m(0, 1)]).map_err(|_| GeometryError::SamePoint)
}

/// A set of plane points with constant-time membership via a bitmap over
/// point indices.
#[derive(Clone, Debug)]
pub struct PointSet {
    points: Vec<PlanePoint>,
    indices: Vec<u64>,
    bits: Vec<u64>,
}

impl PointSet {
    pub fn new<I: IntoIterator<Item = PlanePoint>>(field: &FieldContext, pts: I) -> Self {
        let total = PlanePoint::count(field) as usize;
        let mut bits = vec![0u64; total.div_ceil(64)];
        let mut tagged: Vec<(u64, PlanePoint)> = Vec::new();
        for p in pts {
            let i = p.index(field);
            let (w, b) = ((i / 64) as usize, i % 64);
            if bits[w] >> b & 1 == 0 {
                bits[w] |= 1 << b;
                tagged.push((i, p));
            }
        }
        tagged.sort_unstable_by_key(|t| t.0);
        let (indices, points) = tagged.into_iter().unzip();
        Self {
            points,
            indices,
            bits,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in index order.
    pub fn points(&self) -> &[PlanePoint] {
        &self.points
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn contains_index(&self, i: u64) -> bool {
        self.bits
            .get((i / 64) as usize)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn contains(&self, field: &FieldContext, p: &PlanePoint) -> bool {
        self.contains_index(p.index(field))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_counts_over_gf8() {
        let f = FieldContext::new(2, 1, 3).unwrap();
        assert_eq!(line_count(&f), 73);
        let lines: Vec<_> = all_lines(&f).collect();
        assert_eq!(lines.len(), 73);
        assert!(lines.windows(2).all(|w| w[0] < w[1]));
        for l in &lines {
            let pts = l.points(&f);
            assert_eq!(pts.len(), 9);
            assert!(pts.iter().all(|p| l.contains(&f, p)));
        }
    }

    #[test]
    fn index_round_trip() {
        let f = FieldContext::new(3, 1, 2).unwrap();
        for i in 0..PlanePoint::count(&f) {
            let p = PlanePoint::from_index(&f, i).unwrap();
            assert_eq!(p.index(&f), i);
            assert_eq!(PlanePoint::canonical(&f, *p.coords()).unwrap(), p);
        }
        for i in 0..LinePoint::count(&f) {
            assert_eq!(LinePoint::from_index(&f, i).unwrap().index(&f), i);
        }
        assert!(PlanePoint::from_index(&f, 91).is_err());
    }

    #[test]
    fn canonical_forms() {
        let f = FieldContext::new(2, 2, 2).unwrap();
        let l = Gf(7);
        let p = PlanePoint::canonical(&f, [Gf::ZERO, l, Gf::ZERO]).unwrap();
        assert_eq!(p.coords(), &[Gf::ZERO, Gf::ONE, Gf::ZERO]);
        let fx = Gf(5);
        let p = PlanePoint::canonical(&f, [l, f.mul(l, fx), l]).unwrap();
        assert_eq!(p.coords(), &[Gf::ONE, fx, Gf::ONE]);
        assert_eq!(
            PlanePoint::canonical(&f, [Gf::ZERO; 3]),
            Err(GeometryError::ZeroVector)
        );
    }

    #[test]
    fn line_at_infinity() {
        let f = FieldContext::new(2, 1, 3).unwrap();
        let pts = ProjLine::infinity().points(&f);
        assert!(pts.iter().all(|p| p.coords()[2].is_zero()));
        assert_eq!(pts.len(), 9);
    }

    #[test]
    fn serialization() {
        let p: PlanePoint = "1:5:0".parse().unwrap();
        assert_eq!(p.to_string(), "1:5:0");
        assert!("1:5".parse::<PlanePoint>().is_err());
    }
}
