//! Semilinear equivalence of graph subspaces `U_f = {(x, f(x))}` of
//! GF(q^n)^2, the resulting class count of a linear set, and what this
//! says about equivalence of the associated codes.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::field::{FieldContext, Gf};
use crate::linsets::{build_linear_set, LinearSetProfile};
use crate::pointsets::{build_pointset, line_spectrum, Kind};
use crate::qpoly::QPolynomial;

/// Default cap on the number of candidate first rows examined.
pub const DEFAULT_BUDGET: u64 = 1 << 26;
/// Largest number of polynomials enumerated by [`gamma_l_class`].
pub const CLASS_ENUMERATION_LIMIT: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquivalenceError {
    #[error("polynomials live over different fields")]
    ContextMismatch,
    #[error("search needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error(
        "enumerating {count} polynomials exceeds the limit {limit}; supply candidates instead"
    )]
    EnumerationTooLarge { count: u64, limit: u64 },
    #[error("hypothesis not met: {0}")]
    HypothesisViolation(String),
}

/// `v -> M v^(p^e)`, applied componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    pub matrix: [[Gf; 2]; 2],
    pub automorphism: u32,
}

impl SemilinearMap {
    pub fn identity() -> Self {
        SemilinearMap {
            matrix: [[Gf::ONE, Gf::ZERO], [Gf::ZERO, Gf::ONE]],
            automorphism: 0,
        }
    }

    pub fn det(&self, field: &FieldContext) -> Gf {
        let m = &self.matrix;
        field.sub(field.mul(m[0][0], m[1][1]), field.mul(m[0][1], m[1][0]))
    }

    pub fn is_linear(&self) -> bool {
        self.automorphism == 0
    }

    pub fn apply(&self, field: &FieldContext, v: [Gf; 2]) -> [Gf; 2] {
        let (x, y) = (
            field.pow_p(v[0], self.automorphism),
            field.pow_p(v[1], self.automorphism),
        );
        let m = &self.matrix;
        [
            field.add(field.mul(m[0][0], x), field.mul(m[0][1], y)),
            field.add(field.mul(m[1][0], x), field.mul(m[1][1], y)),
        ]
    }

    pub fn inverse(&self, field: &FieldContext) -> Self {
        let m = &self.matrix;
        let di = field.inv(self.det(field));
        let inv = [
            [field.mul(m[1][1], di), field.neg(field.mul(m[0][1], di))],
            [field.neg(field.mul(m[1][0], di)), field.mul(m[0][0], di)],
        ];
        let period = field.h() * field.n();
        let back = (period - self.automorphism % period) % period;
        SemilinearMap {
            matrix: inv.map(|row| row.map(|a| field.pow_p(a, back))),
            automorphism: back,
        }
    }

    /// The map `v -> other(self(v))`.
    pub fn then(&self, other: &Self, field: &FieldContext) -> Self {
        let a = &other.matrix;
        let b = self
            .matrix
            .map(|row| row.map(|x| field.pow_p(x, other.automorphism)));
        let mut m = [[Gf::ZERO; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = field.add(field.mul(a[i][0], b[0][j]), field.mul(a[i][1], b[1][j]));
            }
        }
        SemilinearMap {
            matrix: m,
            automorphism: (self.automorphism + other.automorphism) % (field.h() * field.n()),
        }
    }

    /// The `g` with `U_f^φ = U_g`, or `None` when the image is not a graph.
    pub fn graph_image(&self, f: &QPolynomial) -> Option<QPolynomial> {
        let field = f.field();
        if self.det(field).is_zero() {
            return None;
        }
        let ft = f.eval_table();
        let mut gt: Vec<Option<Gf>> = vec![None; field.order() as usize];
        for x in field.elements() {
            let [u, v] = self.apply(field, [x, ft[x.index()]]);
            if gt[u.index()].replace(v).is_some() {
                return None;
            }
        }
        let values: Vec<Gf> = (0..field.n() as usize)
            .map(|j| gt[field.basis(j).index()].expect("image covers every first coordinate"))
            .collect();
        let g = QPolynomial::from_basis_values(field.clone(), &values).expect("n basis values");
        debug_assert!(self.maps_graph(f, &g));
        Some(g)
    }

    /// Whether the image of `U_f` is exactly `U_g`.
    pub fn maps_graph(&self, f: &QPolynomial, g: &QPolynomial) -> bool {
        let field = f.field();
        if self.det(field).is_zero() {
            return false;
        }
        let ft = f.eval_table();
        let gt = g.eval_table();
        field.elements().all(|x| {
            let [u, v] = self.apply(field, [x, ft[x.index()]]);
            gt[u.index()] == v
        })
    }
}

impl Serialize for SemilinearMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            matrix: [[u32; 2]; 2],
            automorphism: u32,
        }
        Repr {
            matrix: self.matrix.map(|r| r.map(|x| x.0)),
            automorphism: self.automorphism,
        }
        .serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equivalent,
    Inequivalent,
    #[serde(rename = "inconclusive-budget")]
    InconclusiveBudget,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equivalent => "equivalent",
            Verdict::Inequivalent => "inequivalent",
            Verdict::InconclusiveBudget => "inconclusive-budget",
        })
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchStats {
    pub automorphisms: u32,
    pub candidates: u64,
    pub budget: u64,
    pub pruned_by_invariants: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantComparison {
    pub weights_a: Vec<u32>,
    pub weights_b: Vec<u32>,
    pub weights_equal: bool,
    pub b_spectrum_equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub verdict: Verdict,
    pub linear_only: bool,
    pub witness: Option<SemilinearMap>,
    pub stats: SearchStats,
    pub invariants: InvariantComparison,
}

fn weight_signature(p: &LinearSetProfile) -> Vec<u32> {
    let mut w = Vec::new();
    for (&d, &c) in p.distribution.iter().zip(&p.frequencies) {
        w.extend(std::iter::repeat_n(d, c as usize));
    }
    w
}

fn b_spectrum(f: &QPolynomial) -> BTreeMap<u64, u64> {
    line_spectrum(&build_pointset(f, Kind::B)).counts
}

fn compare_invariants(f: &QPolynomial, g: &QPolynomial) -> InvariantComparison {
    let (wa, wb) = (
        weight_signature(&build_linear_set(f)),
        weight_signature(&build_linear_set(g)),
    );
    let weights_equal = wa == wb;
    let b_spectrum_equal = weights_equal && b_spectrum(f) == b_spectrum(g);
    InvariantComparison {
        weights_a: wa,
        weights_b: wb,
        weights_equal,
        b_spectrum_equal,
    }
}

/// Weight multiset of `D_g` and line spectrum of `B_g`.
type Signature = (Vec<u32>, Vec<(u64, u64)>);

/// Number of first rows a full search examines.
pub fn search_size(field: &FieldContext, linear_only: bool) -> u64 {
    let autos = if linear_only {
        1
    } else {
        (field.h() * field.n()) as u64
    };
    let q = field.order() as u64;
    autos * (q * q - 1)
}

/// Searches for `φ` with `U_f^φ = U_g`. The automorphism is outermost; for
/// each first row `(a, b)` the second row is forced by two coordinates of
/// the image and checked on the remaining ones.
pub fn gamma_l_equivalent(
    f: &QPolynomial,
    g: &QPolynomial,
    linear_only: bool,
    budget: u64,
) -> Result<EquivalenceReport, EquivalenceError> {
    if f.field().descriptor() != g.field().descriptor() {
        return Err(EquivalenceError::ContextMismatch);
    }
    let field = f.field().clone();
    let invariants = compare_invariants(f, g);
    let mut stats = SearchStats {
        budget,
        ..Default::default()
    };
    let report = |verdict, witness, stats, invariants| EquivalenceReport {
        verdict,
        linear_only,
        witness,
        stats,
        invariants,
    };
    if !invariants.b_spectrum_equal {
        stats.pruned_by_invariants = true;
        return Ok(report(Verdict::Inequivalent, None, stats, invariants));
    }
    let needed = search_size(&field, linear_only);
    if needed > budget {
        return Ok(report(Verdict::InconclusiveBudget, None, stats, invariants));
    }

    let n = field.n() as usize;
    let beta: Vec<Gf> = (0..n).map(|k| field.basis(k)).collect();
    let fb: Vec<Gf> = beta.iter().map(|&b| f.eval(b)).collect();
    let gt = g.eval_table();
    let autos = if linear_only {
        1
    } else {
        field.h() * field.n()
    };

    for e in 0..autos {
        stats.automorphisms += 1;
        let x: Vec<Gf> = beta.iter().map(|&b| field.pow_p(b, e)).collect();
        let y: Vec<Gf> = fb.iter().map(|&v| field.pow_p(v, e)).collect();
        let minor = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                (
                    i,
                    j,
                    field.sub(field.mul(x[i], y[j]), field.mul(x[j], y[i])),
                )
            })
            .find(|m| !m.2.is_zero());
        let witness = match minor {
            Some(m) => {
                stats.candidates += (field.order() as u64).pow(2) - 1;
                search_rows(&field, &x, &y, &gt, m, e)
            }
            None => scalar_witness(&field, f, g),
        };
        if let Some(w) = witness {
            assert!(w.maps_graph(f, g), "witness failed re-verification");
            assert!(invariants.b_spectrum_equal);
            return Ok(report(Verdict::Equivalent, Some(w), stats, invariants));
        }
    }
    Ok(report(Verdict::Inequivalent, None, stats, invariants))
}

fn search_rows(
    field: &Arc<FieldContext>,
    x: &[Gf],
    y: &[Gf],
    gt: &[Gf],
    (i, j, det): (usize, usize, Gf),
    e: u32,
) -> Option<SemilinearMap> {
    let di = field.inv(det);
    let order = field.order();
    (0..order).into_par_iter().find_map_first(|a| {
        let a = Gf(a);
        for b in 0..order {
            let b = Gf(b);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let img = |k: usize| gt[field.add(field.mul(a, x[k]), field.mul(b, y[k])).index()];
            let (yi, yj) = (img(i), img(j));
            // solve c x_k + d y_k = g(a x_k + b y_k) for k = i, j
            let c = field.mul(field.sub(field.mul(yi, y[j]), field.mul(yj, y[i])), di);
            let d = field.mul(field.sub(field.mul(x[i], yj), field.mul(x[j], yi)), di);
            if field.mul(a, d) == field.mul(b, c) {
                continue;
            }
            let ok = (0..x.len()).all(|k| {
                k == i || k == j || field.add(field.mul(c, x[k]), field.mul(d, y[k])) == img(k)
            });
            if ok {
                return Some(SemilinearMap {
                    matrix: [[a, b], [c, d]],
                    automorphism: e,
                });
            }
        }
        None
    })
}

/// Both graphs are one-dimensional over GF(q^n) when `f = λx`.
fn scalar_witness(field: &FieldContext, f: &QPolynomial, g: &QPolynomial) -> Option<SemilinearMap> {
    let lambda = f.eval(Gf::ONE);
    let mu = g.eval(Gf::ONE);
    let w = SemilinearMap {
        matrix: [[Gf::ONE, Gf::ZERO], [field.sub(mu, lambda), Gf::ONE]],
        automorphism: 0,
    };
    w.maps_graph(f, g).then_some(w)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    /// Number of orbits.
    pub s: usize,
    pub representatives: Vec<String>,
    pub orbit_sizes: Vec<usize>,
    /// Polynomials examined.
    pub enumerated: u64,
    /// Polynomials whose linear set equals that of `f`.
    pub matches: usize,
    pub linear_only: bool,
}

/// Slopes `g(x)/x` over all nonzero `x`, as a bitmap; `None` as soon as a
/// slope falls outside `target`.
fn slopes_within(
    g_table: &[Gf],
    field: &FieldContext,
    target: Option<&[bool]>,
) -> Option<Vec<bool>> {
    let mut seen = vec![false; field.order() as usize];
    for x in field.nonzero_elements() {
        let m = field.div(g_table[x.index()], x);
        if let Some(t) = target {
            if !t[m.index()] {
                return None;
            }
        }
        seen[m.index()] = true;
    }
    Some(seen)
}

/// All polynomials `g` (from `candidates`, or every element of `L_{n,q}`)
/// with the same linear set as `f`, grouped into equivalence orbits.
pub fn gamma_l_class(
    f: &QPolynomial,
    candidates: Option<&[QPolynomial]>,
    linear_only: bool,
    budget: u64,
) -> Result<(ClassReport, Vec<QPolynomial>), EquivalenceError> {
    let field = f.field().clone();
    let target = slopes_within(&f.eval_table(), &field, None).expect("unrestricted");
    let same_set = |g: &QPolynomial| {
        slopes_within(&g.eval_table(), &field, Some(&target)).is_some_and(|s| s == target)
    };

    let (enumerated, mut matched): (u64, Vec<QPolynomial>) = match candidates {
        Some(list) => {
            if list
                .iter()
                .any(|g| g.field().descriptor() != field.descriptor())
            {
                return Err(EquivalenceError::ContextMismatch);
            }
            (
                list.len() as u64,
                list.iter().filter(|g| same_set(g)).cloned().collect(),
            )
        }
        None => {
            let total = (field.order() as u64).saturating_pow(field.n());
            if total > CLASS_ENUMERATION_LIMIT {
                return Err(EquivalenceError::EnumerationTooLarge {
                    count: total,
                    limit: CLASS_ENUMERATION_LIMIT,
                });
            }
            let found = (0..total)
                .into_par_iter()
                .filter_map(|code| {
                    let mut c = Vec::with_capacity(field.n() as usize);
                    let mut rest = code;
                    for _ in 0..field.n() {
                        c.push(Gf((rest % field.order() as u64) as u32));
                        rest /= field.order() as u64;
                    }
                    let g = QPolynomial::new(field.clone(), c).expect("valid");
                    same_set(&g).then_some(g)
                })
                .collect();
            (total, found)
        }
    };
    if !matched.iter().any(|g| g == f) {
        matched.insert(0, f.clone());
    }

    let mut buckets: BTreeMap<Signature, Vec<usize>> = BTreeMap::new();
    for (i, g) in matched.iter().enumerate() {
        let sig = (
            weight_signature(&build_linear_set(g)),
            b_spectrum(g).into_iter().collect(),
        );
        buckets.entry(sig).or_default().push(i);
    }
    let mut orbits: Vec<(usize, usize)> = Vec::new();
    for members in buckets.values() {
        let mut reps: Vec<(usize, usize)> = Vec::new();
        for &i in members {
            let mut placed = false;
            for rep in reps.iter_mut() {
                let r = gamma_l_equivalent(&matched[rep.0], &matched[i], linear_only, budget)?;
                match r.verdict {
                    Verdict::Equivalent => {
                        rep.1 += 1;
                        placed = true;
                        break;
                    }
                    Verdict::Inequivalent => {}
                    Verdict::InconclusiveBudget => {
                        return Err(EquivalenceError::BudgetExceeded {
                            needed: search_size(&field, linear_only),
                            budget,
                        })
                    }
                }
            }
            if !placed {
                reps.push((i, 1));
            }
        }
        orbits.extend(reps);
    }
    // orbit of f first, then by encoding
    orbits.sort_by_key(|&(i, _)| (matched[i] != *f, matched[i].to_string()));
    let reps: Vec<QPolynomial> = orbits.iter().map(|&(i, _)| matched[i].clone()).collect();
    let report = ClassReport {
        s: orbits.len(),
        representatives: reps.iter().map(|g| g.to_string()).collect(),
        orbit_sizes: orbits.iter().map(|o| o.1).collect(),
        enumerated,
        matches: matched.len(),
        linear_only,
    };
    Ok((report, reps))
}

/// `a x^(q^i)` for every nonzero `a` and every `i`.
pub fn monomial_candidates(field: &Arc<FieldContext>) -> Vec<QPolynomial> {
    (0..field.n())
        .flat_map(|i| field.nonzero_elements().map(move |a| (i, a)))
        .map(|(i, a)| QPolynomial::monomial(field.clone(), i, a))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeVerdict {
    Equivalent,
    Inequivalent,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeConclusion {
    pub kind: Kind,
    pub verdict: CodeVerdict,
    /// The result the conclusion rests on.
    pub basis: String,
    pub subspaces: EquivalenceReport,
    pub enumerators_equal: bool,
}

/// Transfers a linear-equivalence verdict on `U_f`, `U_g` to the codes of
/// the given kind. Both polynomials must have GF(q) as field of linearity,
/// and kind C additionally needs q > 2.
pub fn code_inequivalence_conclusion(
    f: &QPolynomial,
    g: &QPolynomial,
    kind: Kind,
    budget: u64,
) -> Result<CodeConclusion, EquivalenceError> {
    if f.field().descriptor() != g.field().descriptor() {
        return Err(EquivalenceError::ContextMismatch);
    }
    for (name, h) in [("f", f), ("g", g)] {
        if h.field_of_linearity() != 1 {
            return Err(EquivalenceError::HypothesisViolation(format!(
                "{name} is linear over a field larger than GF(q)"
            )));
        }
    }
    if kind == Kind::C && f.field().q() == 2 {
        return Err(EquivalenceError::HypothesisViolation(
            "co-blocking set codes over q = 2 are not covered; the longest line need not be the Rédei line".into(),
        ));
    }
    let subspaces = gamma_l_equivalent(f, g, true, budget)?;
    let enumerator = |h: &QPolynomial| {
        let set = build_pointset(h, kind);
        let spec = line_spectrum(&set);
        crate::codes::enumerator_from_spectrum(
            &spec,
            set.points.len() as u64,
            h.field().order() as u64,
        )
    };
    let enumerators_equal = enumerator(f) == enumerator(g);
    let verdict = match subspaces.verdict {
        Verdict::Equivalent => CodeVerdict::Equivalent,
        Verdict::Inequivalent => CodeVerdict::Inequivalent,
        Verdict::InconclusiveBudget => CodeVerdict::Inconclusive,
    };
    if verdict == CodeVerdict::Equivalent {
        assert!(
            enumerators_equal,
            "equivalent codes with different weight enumerators"
        );
    }
    let basis = match kind {
        Kind::B => "Rédei blocking sets B_f, B_g are projectively equivalent iff U_f, U_g are; codes are monomially equivalent iff U_f, U_g are linearly equivalent",
        Kind::C => "for q > 2 the Rédei line is the unique longest line of C_f, so co-blocking set codes are monomially equivalent iff U_f, U_g are linearly equivalent",
    };
    Ok(CodeConclusion {
        kind,
        verdict,
        basis: basis.to_string(),
        subspaces,
        enumerators_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32, h: u32, n: u32) -> Arc<FieldContext> {
        Arc::new(FieldContext::new(p, h, n).unwrap())
    }

    fn poly(f: &Arc<FieldContext>, s: &str) -> QPolynomial {
        QPolynomial::parse(f.clone(), s).unwrap()
    }

    #[test]
    fn reflexive_with_identity_witness() {
        let f = ctx(2, 1, 3);
        let x2 = poly(&f, "0,1,0");
        let r = gamma_l_equivalent(&x2, &x2, false, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::Equivalent);
        assert!(r.witness.unwrap().maps_graph(&x2, &x2));
    }

    #[test]
    fn distinct_monomials_over_32() {
        let f = ctx(2, 1, 5);
        let a = poly(&f, "0,1,0,0,0");
        let b = poly(&f, "0,0,1,0,0");
        let r = gamma_l_equivalent(&a, &b, false, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::Inequivalent);
        assert!(!r.stats.pruned_by_invariants);
        assert_eq!(r.stats.candidates, 5 * (32 * 32 - 1));
        let c = poly(&f, "0,0,0,0,1");
        let r = gamma_l_equivalent(&a, &c, true, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::Equivalent);
    }

    #[test]
    fn diagonal_scaling_is_found() {
        let f = ctx(3, 1, 3);
        let base = poly(&f, "0,1,0");
        let (alpha, beta) = (Gf(5), Gf(11));
        let g = base
            .scale(beta)
            .compose(&QPolynomial::monomial(f.clone(), 0, f.inv(alpha)))
            .unwrap();
        let r = gamma_l_equivalent(&base, &g, true, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::Equivalent);
        let d = SemilinearMap {
            matrix: [[alpha, Gf::ZERO], [Gf::ZERO, beta]],
            automorphism: 0,
        };
        assert!(d.maps_graph(&base, &g));
    }

    #[test]
    fn inverse_and_composition() {
        let f = ctx(2, 2, 2);
        let a = poly(&f, "0,1");
        let b = a
            .scale(Gf(3))
            .compose(&QPolynomial::monomial(f.clone(), 0, Gf(7)))
            .unwrap();
        let c = b.scale(Gf(9));
        let ab = gamma_l_equivalent(&a, &b, false, DEFAULT_BUDGET)
            .unwrap()
            .witness
            .unwrap();
        let bc = gamma_l_equivalent(&b, &c, false, DEFAULT_BUDGET)
            .unwrap()
            .witness
            .unwrap();
        assert!(ab.inverse(&f).maps_graph(&b, &a));
        assert!(ab.then(&bc, &f).maps_graph(&a, &c));
        let twist = SemilinearMap {
            matrix: [[Gf(2), Gf(1)], [Gf(5), Gf(3)]],
            automorphism: 1,
        };
        let v = [Gf(6), Gf(13)];
        assert_eq!(twist.inverse(&f).apply(&f, twist.apply(&f, v)), v);
        assert_eq!(twist.then(&twist.inverse(&f), &f).apply(&f, v), v);
    }

    #[test]
    fn invariants_prune() {
        let f = ctx(2, 1, 3);
        let r = gamma_l_equivalent(
            &poly(&f, "0,1,0"),
            &poly(&f, "1,1,1"),
            false,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Inequivalent);
        assert!(r.stats.pruned_by_invariants);
    }

    #[test]
    fn scalar_graphs() {
        let f = ctx(2, 1, 3);
        let r = gamma_l_equivalent(&poly(&f, "3,0,0"), &poly(&f, "6,0,0"), true, DEFAULT_BUDGET)
            .unwrap();
        assert_eq!(r.verdict, Verdict::Equivalent);
    }

    #[test]
    fn budget_is_a_verdict() {
        let f = ctx(2, 1, 3);
        let x2 = poly(&f, "0,1,0");
        let r = gamma_l_equivalent(&x2, &poly(&f, "0,0,1"), false, 10).unwrap();
        assert_eq!(r.verdict, Verdict::InconclusiveBudget);
    }

    #[test]
    fn class_of_square_map() {
        let f = ctx(2, 1, 3);
        let (r, reps) = gamma_l_class(&poly(&f, "0,1,0"), None, false, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.s, r.matches, r.enumerated), (1, 14, 512));
        assert_eq!(reps[0], poly(&f, "0,1,0"));
    }

    #[test]
    fn class_of_monomials_over_32() {
        let f = ctx(2, 1, 5);
        let cands = monomial_candidates(&f);
        let (r, _) =
            gamma_l_class(&poly(&f, "0,1,0,0,0"), Some(&cands), false, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.s, 2);
        assert_eq!(r.representatives, vec!["0,1,0,0,0", "0,0,1,0,0"]);
    }

    #[test]
    fn class_enumeration_guard() {
        let f = ctx(2, 1, 5);
        assert!(matches!(
            gamma_l_class(&poly(&f, "0,1,0,0,0"), None, false, DEFAULT_BUDGET),
            Err(EquivalenceError::EnumerationTooLarge {
                count: 33554432,
                ..
            })
        ));
    }

    #[test]
    fn code_conclusions() {
        let f = ctx(2, 1, 5);
        let (a, b) = (poly(&f, "0,1,0,0,0"), poly(&f, "0,0,1,0,0"));
        let c = code_inequivalence_conclusion(&a, &b, Kind::B, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.verdict, CodeVerdict::Inequivalent);
        assert!(c.enumerators_equal);
        let c = code_inequivalence_conclusion(&a, &a, Kind::B, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.verdict, CodeVerdict::Equivalent);
        assert!(matches!(
            code_inequivalence_conclusion(&a, &b, Kind::C, DEFAULT_BUDGET),
            Err(EquivalenceError::HypothesisViolation(_))
        ));
        let g = ctx(2, 1, 4);
        assert!(matches!(
            code_inequivalence_conclusion(
                &poly(&g, "0,0,1,0"),
                &poly(&g, "0,0,1,0"),
                Kind::B,
                DEFAULT_BUDGET
            ),
            Err(EquivalenceError::HypothesisViolation(_))
        ));
    }
}
