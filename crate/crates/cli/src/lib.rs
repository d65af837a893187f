//! Analysis pipeline behind the `redei` binary: builds the linear set,
//! both plane point sets and their codes for one polynomial, and batches
//! such runs over a grid.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use redei_core::codes::{code_report, CodeReport};
use redei_core::equivalence::EquivalenceError;
use redei_core::families::{self, Family, FamilyError, FamilyParams, Provenance};
use redei_core::field::{FieldDescriptor, FieldError, FieldOptions};
use redei_core::linsets::{
    build_linear_set, image_size, IdentityCheck, LinearSetReport, LinsetError,
};
use redei_core::pointsets::{analyze_pointset, Kind, PointsetReport};
use redei_core::qpoly::QPolyError;
use redei_core::{FieldContext, QPolynomial};

pub const TOOL: &str = "redei";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const GUARD: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("field: {0}")]
    Field(#[from] FieldError),
    #[error("polynomial: {0}")]
    QPoly(#[from] QPolyError),
    #[error("family: {0}")]
    Family(#[from] FamilyError),
    #[error("equivalence: {0}")]
    Equivalence(#[from] EquivalenceError),
    #[error("grid: {0}")]
    Grid(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("usage: {0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Field(FieldError::TooLarge) => exit::GUARD,
            CliError::Equivalence(
                EquivalenceError::BudgetExceeded { .. }
                | EquivalenceError::EnumerationTooLarge { .. },
            ) => exit::GUARD,
            CliError::Family(FamilyError::ClaimFailed { .. }) => exit::MISMATCH,
            _ => exit::USAGE,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum KindSel {
    B,
    C,
    #[default]
    Both,
}

impl KindSel {
    pub fn kinds(self) -> Vec<Kind> {
        match self {
            KindSel::B => vec![Kind::B],
            KindSel::C => vec![Kind::C],
            KindSel::Both => vec![Kind::B, Kind::C],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Verify {
    #[default]
    All,
    ClosedForm,
    BruteForce,
    None,
}

impl Verify {
    pub fn closed_form(self) -> bool {
        matches!(self, Verify::All | Verify::ClosedForm)
    }

    pub fn brute_force(self) -> bool {
        matches!(self, Verify::All | Verify::BruteForce)
    }
}

/// Field parameters with optional defining polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub h: u32,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_modulus: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext_modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

impl FieldSpec {
    pub fn build(&self) -> Result<Arc<FieldContext>, CliError> {
        let opts = FieldOptions {
            base_modulus: self.base_modulus.clone(),
            ext_modulus: self.ext_modulus.clone(),
            strategy: None,
        };
        Ok(Arc::new(FieldContext::with_options(
            self.p, self.h, self.n, opts,
        )?))
    }
}

/// Where the polynomial comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Coeffs(String),
    Family(Family, FamilyParams),
}

pub struct Resolved {
    pub poly: QPolynomial,
    pub provenance: Option<Provenance>,
}

pub fn resolve(field: &Arc<FieldContext>, source: &Source) -> Result<Resolved, CliError> {
    match source {
        Source::Coeffs(s) => Ok(Resolved {
            poly: QPolynomial::parse(field.clone(), s)?,
            provenance: None,
        }),
        Source::Family(fam, params) => {
            let inst = families::construct(field, *fam, params)?;
            Ok(Resolved {
                provenance: Some(inst.provenance()),
                poly: inst.poly,
            })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

pub fn tool() -> ToolInfo {
    ToolInfo {
        name: TOOL,
        version: VERSION,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldInfo {
    pub label: String,
    pub q: u32,
    #[serde(flatten)]
    pub descriptor: FieldDescriptor,
    pub generator: u32,
}

pub fn field_info(field: &FieldContext) -> FieldInfo {
    FieldInfo {
        label: field.label(),
        q: field.q(),
        descriptor: field.descriptor(),
        generator: field.generator().0,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LinearSetSection {
    #[serde(flatten)]
    pub report: LinearSetReport,
    pub rank: u32,
    pub field_of_linearity: u32,
    pub identities: IdentityCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size_bound_error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum CodeSection {
    Report(CodeReport),
    Skipped { kind: Kind, skipped: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub tool: ToolInfo,
    pub field: FieldInfo,
    pub polynomial: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Provenance>,
    pub linear_set: LinearSetSection,
    pub pointsets: Vec<PointsetReport>,
    pub codes: Vec<CodeSection>,
    /// Every enabled comparison agreed.
    pub all_match: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
}

/// The full pipeline for one polynomial.
pub fn analyze(
    f: &QPolynomial,
    provenance: Option<Provenance>,
    kinds: KindSel,
    verify: Verify,
) -> AnalyzeReport {
    let field = f.field();
    let profile = build_linear_set(f);
    let identities = profile.identities();
    let size_bound_error = match image_size(f) {
        Ok(size) => {
            assert_eq!(size, profile.size());
            None
        }
        Err(e @ LinsetError::SizeBound { .. }) => Some(e.to_string()),
    };
    let mut mismatches = Vec::new();
    if !identities.all() {
        mismatches.push(format!("linear set identities: {identities:?}"));
    }
    if let Some(e) = &size_bound_error {
        mismatches.push(e.clone());
    }

    let mut pointsets = Vec::new();
    let mut codes = Vec::new();
    for kind in kinds.kinds() {
        let (set, spec, mut pr) = analyze_pointset(f, &profile, kind);
        if !verify.closed_form() {
            pr.predicted = None;
            pr.predicted_sizes = None;
            pr.predicted_match = None;
            pr.diff = None;
        }
        if pr.predicted_match == Some(false) {
            mismatches.push(format!("{kind}: line spectrum differs from prediction"));
        }
        pointsets.push(pr);
        match code_report(&profile, &set, &spec, verify.brute_force()) {
            Ok(mut cr) => {
                if !verify.closed_form() {
                    cr.closed_form_match = None;
                    cr.specialized_match = None;
                    cr.closed_form = None;
                }
                for (name, m) in [
                    ("closed form", cr.closed_form_match),
                    ("specialized form", cr.specialized_match),
                    ("brute force", cr.brute_force_match),
                ] {
                    if m == Some(false) {
                        mismatches.push(format!("{kind}: {name} enumerator differs"));
                    }
                }
                codes.push(CodeSection::Report(cr));
            }
            Err(e) => codes.push(CodeSection::Skipped {
                kind,
                skipped: e.to_string(),
            }),
        }
    }
    AnalyzeReport {
        tool: tool(),
        field: field_info(field),
        polynomial: f.to_string(),
        family: provenance,
        linear_set: LinearSetSection {
            report: profile.report(),
            rank: field.n(),
            field_of_linearity: f.field_of_linearity(),
            identities,
            size_bound_error,
        },
        pointsets,
        codes,
        all_match: mismatches.is_empty(),
        mismatches,
    }
}

/// One sweep entry: a field and either explicit coefficients or a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEntry {
    #[serde(flatten)]
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "is_default_params")]
    pub params: FamilyParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<String>,
}

fn is_default_params(p: &FamilyParams) -> bool {
    *p == FamilyParams::default()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    #[serde(default)]
    pub kind: KindSel,
    #[serde(default)]
    pub verify: Verify,
    pub entries: Vec<GridEntry>,
}

impl Grid {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Grid(e.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Provenance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
    pub skipped: u64,
}

impl Tally {
    fn add(&mut self, m: Option<bool>) {
        match m {
            Some(true) => self.pass += 1,
            Some(false) => self.fail += 1,
            None => self.skipped += 1,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepSummary {
    pub entries: u64,
    pub passed: u64,
    pub failed: u64,
    pub errors: u64,
    pub checks: BTreeMap<&'static str, Tally>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub tool: ToolInfo,
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.errors == 0
    }
}

pub fn sweep(grid: &Grid) -> SweepReport {
    let mut summary = SweepSummary::default();
    let mut rows = Vec::new();
    for entry in &grid.entries {
        summary.entries += 1;
        let row = match sweep_entry(entry, grid, &mut summary.checks) {
            Ok(row) => row,
            Err(e) => SweepRow {
                field: format!(
                    "p={} h={} n={}",
                    entry.field.p, entry.field.h, entry.field.n
                ),
                family: None,
                polynomial: entry.coeffs.clone(),
                classification: None,
                passed: false,
                failures: Vec::new(),
                error: Some(match &entry.family {
                    Some(fam) => format!("{fam}: {e}"),
                    None => e.to_string(),
                }),
            },
        };
        if row.error.is_some() {
            summary.errors += 1;
        } else if row.passed {
            summary.passed += 1;
        } else {
            summary.failed += 1;
        }
        rows.push(row);
    }
    SweepReport {
        tool: tool(),
        rows,
        summary,
    }
}

fn sweep_entry(
    entry: &GridEntry,
    grid: &Grid,
    checks: &mut BTreeMap<&'static str, Tally>,
) -> Result<SweepRow, CliError> {
    let field = entry.field.build()?;
    let source = match (&entry.family, &entry.coeffs) {
        (Some(fam), None) => Source::Family(fam.parse()?, entry.params.clone()),
        (None, Some(c)) => Source::Coeffs(c.clone()),
        _ => {
            return Err(CliError::Grid(
                "each entry needs exactly one of family, coeffs".into(),
            ))
        }
    };
    let resolved = resolve(&field, &source)?;
    let report = analyze(
        &resolved.poly,
        resolved.provenance.clone(),
        grid.kind,
        grid.verify,
    );
    let ls = &report.linear_set;
    checks
        .entry("identities")
        .or_default()
        .add(Some(ls.identities.all()));
    checks
        .entry("size_bound")
        .or_default()
        .add((ls.field_of_linearity == 1).then_some(ls.size_bound_error.is_none()));
    if resolved.provenance.is_some() {
        checks.entry("family_claim").or_default().add(Some(true));
    }
    for p in &report.pointsets {
        checks
            .entry("spectrum_prediction")
            .or_default()
            .add(p.predicted_match);
    }
    for c in &report.codes {
        if let CodeSection::Report(c) = c {
            checks
                .entry("closed_form")
                .or_default()
                .add(c.closed_form_match);
            checks
                .entry("specialized_form")
                .or_default()
                .add(c.specialized_match);
            checks
                .entry("brute_force")
                .or_default()
                .add(c.brute_force_match);
        }
    }
    Ok(SweepRow {
        field: field.label(),
        family: resolved.provenance,
        polynomial: Some(report.polynomial.clone()),
        classification: Some(ls.report.classification.to_string()),
        passed: report.all_match,
        failures: report.mismatches,
        error: None,
    })
}

/// Grid over every family instance of [`families::desk_instances`] for the
/// given fields.
pub fn desk_grid(fields: &[(u32, u32, u32)], deltas: usize) -> Result<Grid, CliError> {
    let mut entries = Vec::new();
    for &(p, h, n) in fields {
        let spec = FieldSpec {
            p,
            h,
            n,
            ..Default::default()
        };
        let field = spec.build()?;
        for (fam, params) in families::desk_instances(&field, deltas) {
            entries.push(GridEntry {
                field: spec.clone(),
                family: Some(fam.name().to_string()),
                params,
                coeffs: None,
            });
        }
    }
    Ok(Grid {
        kind: KindSel::Both,
        verify: Verify::All,
        entries,
    })
}

/// Human-readable rendering of an analysis report.
pub fn render_pretty(r: &AnalyzeReport) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    let ls = &r.linear_set;
    let _ = writeln!(
        s,
        "field        {} (p={} h={} n={})",
        r.field.label, r.field.descriptor.p, r.field.descriptor.h, r.field.descriptor.n
    );
    let _ = writeln!(s, "polynomial   {}", r.polynomial);
    if let Some(fam) = &r.family {
        let _ = writeln!(s, "family       {}", fam.family);
    }
    let _ = writeln!(
        s,
        "linear set   size {}  weights {:?} x {:?}  {}",
        ls.report.size, ls.report.distribution, ls.report.frequencies, ls.report.classification
    );
    for p in &r.pointsets {
        let _ = write!(s, "pointset {}   N={}  spectrum", p.kind, p.n_points);
        for (k, v) in p.spectrum.iter().rev() {
            let _ = write!(s, " {k}:{v}");
        }
        match (p.predicted_match, &p.skipped) {
            (Some(m), _) => {
                let _ = write!(s, "  predicted {}", if m { "ok" } else { "MISMATCH" });
            }
            (None, Some(why)) => {
                let _ = write!(s, "  prediction skipped ({why})");
            }
            _ => {}
        }
        let _ = writeln!(s);
    }
    for c in &r.codes {
        match c {
            CodeSection::Report(c) => {
                let _ = write!(
                    s,
                    "code {}       [{},{},{}]_{}  A:",
                    c.kind,
                    c.params[0],
                    c.params[1],
                    c.params[2],
                    r.field
                        .descriptor
                        .p
                        .pow(r.field.descriptor.h * r.field.descriptor.n)
                );
                for (w, a) in &c.a {
                    let _ = write!(s, " {w}:{a}");
                }
                let _ = writeln!(s);
                for note in &c.notes {
                    let _ = writeln!(s, "             {note}");
                }
            }
            CodeSection::Skipped { kind, skipped } => {
                let _ = writeln!(s, "code {kind}       skipped ({skipped})");
            }
        }
    }
    let _ = writeln!(s, "all match    {}", r.all_match);
    for m in &r.mismatches {
        let _ = writeln!(s, "  {m}");
    }
    s
}

/// Weight enumerators as `kind,weight,count` rows.
pub fn render_csv(r: &AnalyzeReport) -> String {
    let mut s = String::from("kind,weight,count\n");
    for c in &r.codes {
        if let CodeSection::Report(c) = c {
            for (w, a) in &c.a {
                s.push_str(&format!("{},{w},{a}\n", c.kind));
            }
        }
    }
    s
}
