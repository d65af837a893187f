//! Constructors for the known q-polynomial families whose linear sets are
//! scattered, clubs, or have two points of weight n/2, each with its side
//! conditions checked and its claimed classification verified.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::poly::{self, gcd};
use crate::field::{linalg, FieldContext, FieldError, Gf};
use crate::linsets::{build_linear_set, theta, Classification, LinearSetProfile};
use crate::qpoly::{QPolyError, QPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("gcd({s}, {m}) = {g}, expected 1")]
    GcdViolation { s: u32, m: u32, g: u32 },
    #[error("norm condition fails: {0}")]
    NormViolation(String),
    #[error("condition fails: {0}")]
    ConditionViolation(String),
    #[error("n = {n} is not {r} * {t} with t >= 2")]
    FactorizationMismatch { r: u32, t: u32, n: u32 },
    #[error("missing parameter {0}")]
    MissingParameter(&'static str),
    #[error("no parameter satisfies: {0}")]
    NoValidParameter(String),
    #[error("expected {expected}, got {got}")]
    ClaimFailed { expected: Claim, got: String },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    QPoly(#[from] QPolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `x^(q^s)`.
    Monomial,
    /// `x^(q^s) + δ x^(q^(s(n-1)))`.
    Binomial,
    /// Four-term polynomial for `n = 2l`, q odd.
    Quadrinomial,
    /// `x^q + δ x^(q^4)`, n = 6.
    SexticBinomial,
    /// `x^q + x^(q^3) + δ x^(q^5)`, n = 6.
    SexticTrinomial,
    /// `x^q + δ x^(q^5)`, n = 8.
    OcticBinomial,
    /// `Tr_{q^(rt)/q^r}(x^(q^s))`.
    TraceClub,
    /// `Tr(b_{n-2} x) + λ Tr(b_{n-1} x)` over a dual basis.
    DualBasisClub,
    /// `f(T(x)) - a T(x)`, `T(x) = Tr_{q^n/q^r}(c0 x)`, `f - a` invertible.
    TraceCompositionClub,
    /// As above with `f - a` singular.
    TraceCompositionClubPlus,
    /// `Tr_{q^n/q^t}(f(x/(ε^(q^t)-ε))) + Tr_{q^n/q^t}(ε^(q^t) x/(ε^(q^t)-ε))`.
    TwoPointsTrace,
    /// `sum_l (u_l + u_l^(q^s) ξ) Tr(λ*_l x)`.
    TwoPointsDualBasis,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::Monomial,
        Family::Binomial,
        Family::Quadrinomial,
        Family::SexticBinomial,
        Family::SexticTrinomial,
        Family::OcticBinomial,
        Family::TraceClub,
        Family::DualBasisClub,
        Family::TraceCompositionClub,
        Family::TraceCompositionClubPlus,
        Family::TwoPointsTrace,
        Family::TwoPointsDualBasis,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Monomial => "monomial",
            Family::Binomial => "binomial",
            Family::Quadrinomial => "quadrinomial",
            Family::SexticBinomial => "sextic_binomial",
            Family::SexticTrinomial => "sextic_trinomial",
            Family::OcticBinomial => "octic_binomial",
            Family::TraceClub => "trace_club",
            Family::DualBasisClub => "dual_basis_club",
            Family::TraceCompositionClub => "trace_composition_club",
            Family::TraceCompositionClubPlus => "trace_composition_club_plus",
            Family::TwoPointsTrace => "two_points_trace",
            Family::TwoPointsDualBasis => "two_points_dual_basis",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

/// The classification a family promises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Scattered,
    Club(u32),
    TwoWeightHalf,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Scattered => write!(f, "scattered"),
            Claim::Club(i) => write!(f, "club({i})"),
            Claim::TwoWeightHalf => write!(f, "two_half"),
        }
    }
}

impl Claim {
    pub fn holds(self, c: &Classification) -> bool {
        match (self, c) {
            (Claim::Scattered, Classification::Scattered) => true,
            (Claim::Club(1), Classification::Scattered) => true,
            (Claim::Club(i), Classification::Club(j)) => i == *j,
            (Claim::TwoWeightHalf, Classification::TwoWeightHalf) => true,
            _ => false,
        }
    }
}

/// Family parameters. Field elements are encoded integers; unset entries
/// are filled by a deterministic search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<u64>,
    /// Coefficients of the inner polynomial on the subfield.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<Vec<u64>>,
    /// A GF(q)-basis of GF(q^t).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub family: String,
    /// Every parameter actually used, including searched ones.
    pub params: FamilyParams,
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub family: Family,
    pub poly: QPolynomial,
    pub params: FamilyParams,
    pub claim: Claim,
    pub profile: LinearSetProfile,
}

impl FamilyInstance {
    pub fn provenance(&self) -> Provenance {
        Provenance {
            family: self.family.name().to_string(),
            params: self.params.clone(),
        }
    }
}

fn check_gcd(s: u32, m: u32) -> Result<(), FamilyError> {
    let g = gcd(s as u64, m as u64) as u32;
    if g == 1 {
        Ok(())
    } else {
        Err(FamilyError::GcdViolation { s, m, g })
    }
}

fn elem(field: &FieldContext, v: u64) -> Result<Gf, FamilyError> {
    Ok(field.element(v)?)
}

fn poly_from(field: &Arc<FieldContext>, terms: &[(u32, Gf)]) -> QPolynomial {
    let mut c = vec![Gf::ZERO; field.n() as usize];
    let n = field.n();
    for &(k, a) in terms {
        let k = (k % n) as usize;
        c[k] = field.add(c[k], a);
    }
    QPolynomial::new(field.clone(), c).expect("valid coefficients")
}

/// `x -> Tr_{q^n/q}(b x)`.
pub fn trace_form(field: &Arc<FieldContext>, b: Gf) -> QPolynomial {
    let c = (0..field.n())
        .map(|k| field.frobenius(b, k as i64))
        .collect();
    QPolynomial::new(field.clone(), c).expect("valid coefficients")
}

/// Dual basis of `basis` with respect to the absolute trace form, checked
/// to satisfy `Tr(b_i B_j) = δ_ij`. `None` if `basis` is not a GF(q)-basis.
pub fn dual_basis(field: &FieldContext, basis: &[Gf]) -> Option<Vec<Gf>> {
    let n = field.n() as usize;
    if basis.len() != n {
        return None;
    }
    let gram: Vec<Vec<u32>> = basis
        .iter()
        .map(|&bi| {
            basis
                .iter()
                .map(|&bj| field.trace(field.mul(bi, bj)))
                .collect()
        })
        .collect();
    let inv = linalg::invert(field.base(), &gram)?;
    let dual: Vec<Gf> = inv
        .iter()
        .map(|row| {
            row.iter().zip(basis).fold(Gf::ZERO, |acc, (&c, &b)| {
                field.add(acc, field.scale_base(c, b))
            })
        })
        .collect();
    for (i, &d) in dual.iter().enumerate() {
        for (j, &b) in basis.iter().enumerate() {
            assert_eq!(field.trace(field.mul(d, b)), (i == j) as u32, "dual basis");
        }
    }
    Some(dual)
}

/// Degree of `x` over GF(q^r).
fn degree_over(field: &FieldContext, x: Gf, r: u32) -> u32 {
    let n = field.n();
    (1..=n / r)
        .find(|&k| field.frobenius(x, (r * k) as i64) == x)
        .map_or(n / r, |k| k)
}

/// Whether `sum_i coeffs[i] z^(q^i)`, coefficients in GF(q^d), is scattered
/// as a map of GF(q^d).
fn scattered_on_subfield(field: &FieldContext, coeffs: &[Gf], d: u32) -> Result<bool, FamilyError> {
    if coeffs.iter().any(|&c| !field.in_subfield(c, d)) {
        return Err(FamilyError::ConditionViolation(format!(
            "inner coefficients must lie in GF(q^{d})"
        )));
    }
    let sub = field.subfield_elements(d)?;
    let mut seen = std::collections::HashSet::new();
    for &z in sub.iter().filter(|z| !z.is_zero()) {
        let v = coeffs.iter().enumerate().fold(Gf::ZERO, |acc, (i, &c)| {
            field.add(acc, field.mul(c, field.frobenius(z, i as i64)))
        });
        seen.insert(field.div(v, z));
    }
    Ok(seen.len() as u64 == theta(field.q() as u64, d as i64 - 1))
}

fn require_even(n: u32) -> Result<u32, FamilyError> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(FamilyError::ConditionViolation(format!(
            "n = {n} must be even and at least 4"
        )));
    }
    Ok(n / 2)
}

/// Builds the family member selected by `params`, filling missing
/// parameters by a search in encoding order, and verifies its claim.
pub fn construct(
    field: &Arc<FieldContext>,
    family: Family,
    params: &FamilyParams,
) -> Result<FamilyInstance, FamilyError> {
    let mut used = params.clone();
    let (poly, claim) = match family {
        Family::Monomial => monomial(field, &mut used)?,
        Family::Binomial => binomial(field, &mut used)?,
        Family::Quadrinomial => quadrinomial(field, &mut used)?,
        Family::SexticBinomial | Family::SexticTrinomial | Family::OcticBinomial => {
            sporadic(field, family, &mut used)?
        }
        Family::TraceClub => trace_club(field, &mut used)?,
        Family::DualBasisClub => dual_basis_club(field, &mut used)?,
        Family::TraceCompositionClub => trace_composition(field, &mut used, true)?,
        Family::TraceCompositionClubPlus => trace_composition(field, &mut used, false)?,
        Family::TwoPointsTrace => two_points_trace(field, &mut used)?,
        Family::TwoPointsDualBasis => two_points_dual_basis(field, &mut used)?,
    };
    let profile = build_linear_set(&poly);
    let got = profile.classify();
    if !claim.holds(&got) {
        return Err(FamilyError::ClaimFailed {
            expected: claim,
            got: got.to_string(),
        });
    }
    Ok(FamilyInstance {
        family,
        poly,
        params: used,
        claim,
        profile,
    })
}

fn monomial(
    field: &Arc<FieldContext>,
    p: &mut FamilyParams,
) -> Result<(QPolynomial, Claim), FamilyError> {
    let s = *p.s.get_or_insert(1);
    check_gcd(s, field.n())?;
    Ok((poly_from(field, &[(s, Gf::ONE)]), Claim::Scattered))
}

/// All `δ` valid for the binomial family, in encoding order.
pub fn binomial_deltas(field: &FieldContext) -> Vec<Gf> {
    field
        .nonzero_elements()
        .filter(|&d| field.norm(d) != 1)
        .collect()
}

fn binomial(
    field: &Arc<FieldContext>,
    p: &mut FamilyParams,
) -> Result<(QPolynomial, Claim), FamilyError> {
    let n = field.n();
    let s = *p.s.get_or_insert(1);
    check_gcd(s, n)?;
    let delta = match p.delta {
        Some(v) => elem(field, v)?,
        None => *binomial_deltas(field)
            .first()
            .ok_or_else(|| FamilyError::NoValidParameter("δ != 0 with N(δ) != 1".into()))?,
    };
    p.delta = Some(delta.0 as u64);
    if field.norm(delta) == 1 {
        return Err(FamilyError::NormViolation("N_{q^n/q}(δ) = 1".into()));
    }
    Ok((
        poly_from(field, &[(s, Gf::ONE), (s * (n - 1), delta)]),
        Claim::Scattered,
    ))
}

fn quadrinomial(
    field: &Arc<FieldContext>,
    p: &mut FamilyParams,
) -> Result<(QPolynomial, Claim), FamilyError> {
    let n = field.n();
    let l = require_even(n)?;
    if field.p() == 2 {
        return Err(FamilyError::ConditionViolation("q must be odd".into()));
    }
    let s = *p.s.get_or_insert(1);
    check_gcd(s, n)?;
    let minus_one = field.neg(Gf::ONE);
    let ok = |d: Gf| {
        field
            .norm_rel(d, l)
            .map(|v| v == minus_one)
            .unwrap_or(false)
    };
    let delta = match p.delta {
        Some(v) => elem(field, v)?,
        None => field
            .nonzero_elements()
            .find(|&d| ok(d))
            .ok_or_else(|| FamilyError::NoValidParameter("N(δ) = -1".into()))?,
    };
    p.delta = Some(delta.0 as u64);
    if !ok(delta) {
        return Err(FamilyError::NormViolation("N_{q^(2l)/q^l}(δ) != -1".into()));
    }
    let q = field.q() as u64;
    let order = field.order() as u64 - 1;
    let c2 = field.pow(delta, 1 + q.pow(s) % order);
    let qs = q.pow((s * (2 * l - 1)) % n) % order;
    let c3 = field.pow(delta, (1 + order - qs) % order);
    Ok((
        poly_from(
            field,
            &[
                (s, Gf::ONE),
                (s * (l - 1), Gf::ONE),
                (s * (l + 1), c2),
                (s * (2 * l - 1), c3),
            ],
        ),
        Claim::Scattered,
    ))
}

fn sporadic(
    field: &Arc<FieldContext>,
    family: Family,
    p: &mut FamilyParams,
) -> Result<(QPolynomial, Claim), FamilyError> {
    let (n, q, odd) = (field.n(), field.q(), field.p() != 2);
    let cond = |ok: bool, msg: &str| {
        if ok {
            Ok(())
        } else {
            Err(FamilyError::ConditionViolation(msg.to_string()))
        }
    };
    let delta = p.delta.map(|v| elem(field, v)).transpose()?;
    let (terms, delta): (Vec<(u32, Gf)>, Gf) = match family {
        Family::SexticBinomial => {
            cond(n == 6, "n must be 6")?;
            cond(q > 4, "q must exceed 4")?;
            let d = delta.ok_or(FamilyError::MissingParameter("delta"))?;
            (vec![(1, Gf::ONE), (4, d)], d)
        }
        Family::SexticTrinomial => {
            cond(n == 6, "n must be 6")?;
            cond(odd, "q must be odd")?;
            let good = |d: Gf| field.add(field.mul(d, d), d) == Gf::ONE;
            let d = match delta {
                Some(d) => d,
                None => field
                    .elements()
                    .find(|&d| good(d))
                    .ok_or_else(|| FamilyError::NoValidParameter("δ^2 + δ = 1".into()))?,
            };
            cond(good(d), "δ^2 + δ must equal 1")?;
            (vec![(1, Gf::ONE), (3, Gf::ONE), (5, d)], d)
        }
        _ => {
            cond(n == 8, "n must be 8")?;
            cond(odd, "q must be odd")?;
            let good = |d: Gf| field.mul(d, d) == field.neg(Gf::ONE);
            let d = match delta {
                Some(d) => d,
                None => field
                    .elements()
                    .find(|&d| good(d))
                    .ok_or_else(|| FamilyError::NoValidParameter("δ^2 = -1".into()))?,
            };
            cond(good(d), "δ^2 must equal -1")?;
            (vec![(1, Gf::ONE), (5, d)], d)
        }
    };
    p.delta = Some(delta.0 as u64);
    Ok((poly_from(field, &terms), Claim::Scattered))
}

fn rt(
    field: &FieldContext,
    p: &mut FamilyParams,
    default_r: u32,
) -> Result<(u32, u32), FamilyError> {
    let n = field.n();
    let r = match (p.r, p.t) {
        (Some(r), _) => r,
        (None, Some(t)) if t > 0 && n.is_multiple_of(t) => n / t,
        _ => default_r,
    };
    let t = p.t.unwrap_or(n.checked_div(r).unwrap_or(0));
    if r == 0 || r * t != n || t < 2 {
        return Err(FamilyError::FactorizationMismatch { r, t, n });
    }
    p.r = Some(r);
    p.t = Some(t);
    Ok((r, t))
}

fn trace_club(
    field: &Arc<FieldContext>,
    p: &mut FamilyParams,
) -> Result<(QPolynomial, Claim), FamilyError> {
    let n = field.n();
    let (r, t) = rt(field, p, 1)?;
    let s = *p.s.get_or_insert(1);
    check_gcd(s, n)?;
    let terms: Vec<(u32, Gf)> = (0..t).map(|j| (s + r * j, Gf::ONE)).collect();
    Ok((poly_from(field, &terms), Claim::Club(r * (t - 1))))
}

fn dual_basis_club(
    field: &Arc<FieldContext>,
    p: &mut FamilyParams,
) -> Result<(QPolynomial, Claim), FamilyError> {
    let n = field.n();
    if n < 3 {
        return Err(FamilyError::ConditionViolation(
            "n must be at least 3".into(),
        ));
    }
    let generates = |l: Gf| degree_over(field, l, 1) == n;
    let lambda = match p.lambda {
        Some(v) => elem(field, v)?,
        None => field
            .elements()
            .find(|&l| generates(l))
            .expect("a generator exists"),
    };
    p.lambda = Some(lambda.0 as u64);
    if !generates(lambda) {
        return Err(FamilyError::ConditionViolation(
            "GF(q)(λ) must be GF(q^n)".into(),
        ));
    }
    let basis_for = |w: Gf| {
        let mut b: Vec<Gf> = (0..n - 2).map(|k| field.pow(lambda, k as u64)).collect();
        b.push(field.add(field.pow(lambda, n as u64 - 2), w));
        b.push(field.mul(w, lambda));
        dual_basis(field, &b)
    };
    let (omega, dual) = match p.omega {
        Some(v) => {
            let w = elem(field, v)?;
            (w, basis_for(w))
        }
        None => field
            .nonzero_elements()
            .find_map(|w| basis_for(w).map(|d| (w, Some(d))))
            .ok_or_else(|| FamilyError::NoValidParameter("ω making a basis".into()))?,
    };
    p.omega = Some(omega.0 as u64);
    let b = dual.ok_or_else(|| {
        FamilyError::ConditionViolation("the vectors do not form a GF(q)-basis".into())
    })?;
    let f = trace_form(field, b[n as usize - 2])
        .add(&trace_form(field, b[n as usize - 1]).scale(lambda))?;
    Ok((f, Claim::Club(n - 2)))
}

/// Monic minimal polynomial of `w` over GF(q^r), low degree first.
fn minimal_polynomial(field: &FieldContext, w: Gf, r: u32) -> Vec<Gf> {
    let deg = degree_over(field, w, r);
    let mut g = vec![Gf::ONE];
    for k in 0..deg {
        let root = field.frobenius(w, (r * k) as i64);
        g = poly::mul(field, &g, &[field.neg(root), Gf::ONE]);
    }
    g
}

fn trace_composition(
    field: &Arc<FieldContext>,
    p: &mut FamilyParams,
    invertible: bool,
) -> Result<(QPolynomial, Claim), FamilyError> {
    let default_r = if invertible {
        1
    } else {
        poly::divisors(field.n())
            .into_iter()
            .find(|&r| r >= 2 && field.n() / r >= 2)
            .unwrap_or(field.n())
    };
    let (r, t) = rt(field, p, default_r)?;
    let inner: Vec<Gf> = match &p.inner {
        Some(v) => v
            .iter()
            .map(|&x| elem(field, x))
            .collect::<Result<_, _>>()?,
        None => {
            let mut c = vec![Gf::ZERO; r as usize];
            c[1 % r as usize] = Gf::ONE;
            c
        }
    };
    p.inner = Some(inner.iter().map(|c| c.0 as u64).collect());
    if inner.len() != r as usize {
        return Err(FamilyError::ConditionViolation(format!(
            "inner polynomial needs {r} coefficients"
        )));
    }
    if !scattered_on_subfield(field, &inner, r)? {
        return Err(FamilyError::ConditionViolation(format!(
            "inner polynomial is not scattered on GF(q^{r})"
        )));
    }
    let omega = match p.omega {
        Some(v) => elem(field, v)?,
        None => field
            .elements()
            .find(|&w| degree_over(field, w, r) == t)
            .expect("an element of full degree exists"),
    };
    p.omega = Some(omega.0 as u64);
    if degree_over(field, omega, r) != t {
        return Err(FamilyError::ConditionViolation(format!(
            "1, ω, ..., ω^{} is not a GF(q^{r})-basis",
            t - 1
        )));
    }
    let sub = field.subfield_elements(r)?;
    let inner_at = |z: Gf| {
        inner.iter().enumerate().fold(Gf::ZERO, |acc, (i, &c)| {
            field.add(acc, field.mul(c, field.frobenius(z, i as i64)))
        })
    };
    let singular = |a: Gf| {
        sub.iter()
            .any(|&z| !z.is_zero() && inner_at(z) == field.mul(a, z))
    };
    let a = match p.a {
        Some(v) => elem(field, v)?,
        None => *sub
            .iter()
            .find(|&&a| singular(a) != invertible)
            .ok_or_else(|| {
                FamilyError::NoValidParameter("a with the required invertibility".into())
            })?,
    };
    p.a = Some(a.0 as u64);
    if !field.in_subfield(a, r) {
        return Err(FamilyError::ConditionViolation(format!(
            "a must lie in GF(q^{r})"
        )));
    }
    if singular(a) == invertible {
        let what = if invertible { "invertible" } else { "singular" };
        return Err(FamilyError::ConditionViolation(format!(
            "f(x) - ax must be {what} on GF(q^{r})"
        )));
    }

    let g = minimal_polynomial(field, omega, r);
    let dg = poly::derivative(field.as_ref(), &g);
    let coef = |k: usize| g.get(k).copied().unwrap_or(Gf::ZERO);
    let sum = (0..t as usize).fold(Gf::ZERO, |acc, j| {
        field.add(acc, field.mul(field.pow(omega, j as u64), coef(j + 1)))
    });
    let c0 = field.div(sum, poly::eval(field.as_ref(), &dg, omega));
    for j in 0..t {
        let v = field.trace_rel(field.mul(c0, field.pow(omega, j as u64)), r)?;
        assert_eq!(
            v,
            if j == 0 { Gf::ONE } else { Gf::ZERO },
            "dual element c0"
        );
    }

    let tr = QPolynomial::relative_trace(field.clone(), r)?.compose(&QPolynomial::monomial(
        field.clone(),
        0,
        c0,
    ))?;
    let mut fc = vec![Gf::ZERO; field.n() as usize];
    fc[..r as usize].copy_from_slice(&inner);
    let f_minus_a =
        QPolynomial::new(field.clone(), fc)?.sub(&QPolynomial::monomial(field.clone(), 0, a))?;
    let claim = if invertible {
        Claim::Club(r * (t - 1))
    } else {
        Claim::Club(r * (t - 1) + 1)
    };
    Ok((f_minus_a.compose(&tr)?, claim))
}

fn two_points_trace(
    field: &Arc<FieldContext>,
    p: &mut FamilyParams,
) -> Result<(QPolynomial, Claim), FamilyError> {
    let t = require_even(field.n())?;
    p.t = Some(t);
    let eps = match p.epsilon {
        Some(v) => elem(field, v)?,
        None => field
            .elements()
            .find(|&e| !field.in_subfield(e, t))
            .expect("proper extension"),
    };
    p.epsilon = Some(eps.0 as u64);
    if field.in_subfield(eps, t) {
        return Err(FamilyError::ConditionViolation(format!(
            "{{1, ε}} is not a GF(q^{t})-basis"
        )));
    }
    let inner: Vec<Gf> = match &p.inner {
        Some(v) => v
            .iter()
            .map(|&x| elem(field, x))
            .collect::<Result<_, _>>()?,
        None => {
            let mut c = vec![Gf::ZERO; t as usize];
            c[1] = Gf::ONE;
            c
        }
    };
    p.inner = Some(inner.iter().map(|c| c.0 as u64).collect());
    if inner.len() != t as usize {
        return Err(FamilyError::ConditionViolation(format!(
            "inner polynomial needs {t} coefficients"
        )));
    }
    if !scattered_on_subfield(field, &inner, t)? {
        return Err(FamilyError::ConditionViolation(format!(
            "inner polynomial is not scattered on GF(q^{t})"
        )));
    }
    let eps_t = field.frobenius(eps, t as i64);
    let kappa = field.inv(field.sub(eps_t, eps));
    let tr = QPolynomial::relative_trace(field.clone(), t)?;
    let mut fc = vec![Gf::ZERO; field.n() as usize];
    fc[..t as usize].copy_from_slice(&inner);
    let f = QPolynomial::new(field.clone(), fc)?;
    let first = tr.compose(&f.compose(&QPolynomial::monomial(field.clone(), 0, kappa))?)?;
    let second = tr.compose(&QPolynomial::monomial(
        field.clone(),
        0,
        field.mul(eps_t, kappa),
    ))?;
    Ok((first.add(&second)?, Claim::TwoWeightHalf))
}

fn two_points_dual_basis(
    field: &Arc<FieldContext>,
    p: &mut FamilyParams,
) -> Result<(QPolynomial, Claim), FamilyError> {
    let t = require_even(field.n())?;
    p.t = Some(t);
    let s = *p.s.get_or_insert(1);
    check_gcd(s, t)?;
    let xi = match p.xi {
        Some(v) => elem(field, v)?,
        None => field
            .elements()
            .find(|&e| !field.in_subfield(e, t))
            .expect("proper extension"),
    };
    p.xi = Some(xi.0 as u64);
    if field.in_subfield(xi, t) {
        return Err(FamilyError::ConditionViolation(format!(
            "{{1, ξ}} is not a GF(q^{t})-basis"
        )));
    }
    let u: Vec<Gf> = match &p.u {
        Some(v) => v
            .iter()
            .map(|&x| elem(field, x))
            .collect::<Result<_, _>>()?,
        None => {
            let g = field.subfield_generator(t)?;
            (0..t).map(|k| field.pow(g, k as u64)).collect()
        }
    };
    p.u = Some(u.iter().map(|c| c.0 as u64).collect());
    let u_rank = {
        let rows = u.iter().map(|&x| field.coords(x)).collect();
        linalg::rank(field.base(), rows)
    };
    if u.len() != t as usize || u.iter().any(|&x| !field.in_subfield(x, t)) || u_rank != t as usize
    {
        return Err(FamilyError::ConditionViolation(format!(
            "u is not a GF(q)-basis of GF(q^{t})"
        )));
    }
    let minus_one_t = if t % 2 == 0 {
        Gf::ONE
    } else {
        field.neg(Gf::ONE)
    };
    let xi_norm = field.pow(xi, (field.q() as u64).pow(t) + 1);
    let norm_t = |x: Gf| -> Gf {
        (0..t).fold(Gf::ONE, |acc, k| {
            field.mul(acc, field.frobenius(x, k as i64))
        })
    };
    let basis_for = |mu: Gf| -> Option<Vec<Gf>> {
        let mut b: Vec<Gf> = u
            .iter()
            .map(|&x| {
                field.add(
                    x,
                    field.mul(mu, field.mul(field.frobenius(x, s as i64), xi)),
                )
            })
            .collect();
        b.extend(
            u.iter()
                .map(|&x| field.add(x, field.mul(field.frobenius(x, s as i64), xi))),
        );
        dual_basis(field, &b)
    };
    let mu_ok = |mu: Gf| {
        field.in_subfield(mu, t)
            && norm_t(mu) != Gf::ONE
            && norm_t(field.neg(field.mul(xi_norm, mu))) != minus_one_t
    };
    let (mu, dual) = match p.mu {
        Some(v) => {
            let m = elem(field, v)?;
            (m, basis_for(m))
        }
        None => field
            .subfield_elements(t)?
            .into_iter()
            .filter(|&m| mu_ok(m))
            .find_map(|m| basis_for(m).map(|d| (m, Some(d))))
            .ok_or_else(|| {
                FamilyError::NoValidParameter("μ meeting the norm and basis conditions".into())
            })?,
    };
    p.mu = Some(mu.0 as u64);
    if !mu_ok(mu) {
        return Err(FamilyError::NormViolation(
            "μ fails a norm condition or is outside GF(q^t)".into(),
        ));
    }
    let dual = dual.ok_or_else(|| {
        FamilyError::ConditionViolation("the vectors do not form a GF(q)-basis".into())
    })?;
    let mut f = QPolynomial::zero(field.clone());
    for (l, &ul) in u.iter().enumerate() {
        let w = field.add(ul, field.mul(field.frobenius(ul, s as i64), xi));
        f = f.add(&trace_form(field, dual[t as usize + l]).scale(w))?;
    }
    Ok((f, Claim::TwoWeightHalf))
}

/// The parameter grid used for sweeps: every valid `s` for monomials, the
/// first `deltas` valid `δ` for binomials, every `(r, t)` split for trace
/// clubs, and the default two-point instance.
pub fn desk_instances(field: &Arc<FieldContext>, deltas: usize) -> Vec<(Family, FamilyParams)> {
    let n = field.n();
    let mut out = Vec::new();
    for s in (1..n).filter(|&s| gcd(s as u64, n as u64) == 1) {
        out.push((
            Family::Monomial,
            FamilyParams {
                s: Some(s),
                ..Default::default()
            },
        ));
    }
    for d in binomial_deltas(field).into_iter().take(deltas) {
        out.push((
            Family::Binomial,
            FamilyParams {
                s: Some(1),
                delta: Some(d.0 as u64),
                ..Default::default()
            },
        ));
    }
    for r in poly::divisors(n).into_iter().filter(|&r| n / r >= 2) {
        for s in (1..n).filter(|&s| gcd(s as u64, n as u64) == 1) {
            out.push((
                Family::TraceClub,
                FamilyParams {
                    r: Some(r),
                    t: Some(n / r),
                    s: Some(s),
                    ..Default::default()
                },
            ));
        }
    }
    if n.is_multiple_of(2) && n >= 4 {
        out.push((Family::TwoPointsTrace, FamilyParams::default()));
    }
    out
}
