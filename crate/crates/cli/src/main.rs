use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use redei_cli::{
    analyze, exit, field_info, render_csv, render_pretty, resolve, sweep, tool, CliError,
    FieldInfo, FieldSpec, Grid, KindSel, Source, ToolInfo, Verify,
};
use redei_core::equivalence::{
    code_inequivalence_conclusion, gamma_l_class, gamma_l_equivalent, monomial_candidates,
    ClassReport, CodeConclusion, EquivalenceReport, Verdict, DEFAULT_BUDGET,
};
use redei_core::families::{FamilyParams, Provenance};
use redei_core::pointsets::Kind;
use redei_core::QPolynomial;

#[derive(Parser)]
#[command(
    name = "redei",
    version,
    about = "Linear sets, Rédei-type point sets and their few-weight codes"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "REDEI_WORKERS")]
    workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pretty,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Linear set, point sets, spectra and codes of one polynomial.
    Analyze {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = VerifyArg::All)]
        verify: VerifyArg,
    },
    /// Semilinear equivalence of two graph subspaces.
    Equiv {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        coeffs_a: String,
        #[arg(long)]
        coeffs_b: String,
        /// Restrict to GL(2, q^n).
        #[arg(long)]
        linear: bool,
        /// Also state what the verdict means for the codes of this kind.
        #[arg(long, value_enum)]
        codes: Option<KindArg>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Equivalence classes of polynomials defining the same linear set.
    Class {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        linear: bool,
        #[arg(long, value_enum, default_value_t = Candidates::All)]
        candidates: Candidates,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Analyze every entry of a JSON grid.
    Sweep {
        #[arg(long)]
        grid: PathBuf,
    },
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    h: u32,
    #[arg(long)]
    n: u32,
    /// Defining polynomial of GF(q) over GF(p), low degree first.
    #[arg(long, value_delimiter = ',')]
    base_modulus: Option<Vec<u32>>,
    /// Defining polynomial of GF(q^n) over GF(q), low degree first.
    #[arg(long, value_delimiter = ',')]
    ext_modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            h: self.h,
            n: self.n,
            base_modulus: self.base_modulus.clone(),
            ext_modulus: self.ext_modulus.clone(),
        }
    }
}

#[derive(Args)]
struct PolyArgs {
    /// Coefficients a_0,...,a_{n-1} as encoded field elements.
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    coeffs: Option<String>,
    /// Family name such as binomial or trace_club.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    delta: Option<u64>,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    omega: Option<u64>,
    #[arg(long)]
    lambda: Option<u64>,
    #[arg(long)]
    epsilon: Option<u64>,
    #[arg(long)]
    xi: Option<u64>,
    #[arg(long)]
    mu: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    inner: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    u: Option<Vec<u64>>,
}

impl PolyArgs {
    fn source(&self) -> Result<Source, CliError> {
        match (&self.coeffs, &self.family) {
            (Some(c), None) => Ok(Source::Coeffs(c.clone())),
            (None, Some(fam)) => Ok(Source::Family(
                fam.parse()?,
                FamilyParams {
                    s: self.s,
                    r: self.r,
                    t: self.t,
                    delta: self.delta,
                    a: self.a,
                    omega: self.omega,
                    lambda: self.lambda,
                    epsilon: self.epsilon,
                    xi: self.xi,
                    mu: self.mu,
                    inner: self.inner.clone(),
                    u: self.u.clone(),
                },
            )),
            _ => Err(CliError::Usage(
                "give exactly one of --coeffs, --family".into(),
            )),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    B,
    C,
    Both,
}

impl From<KindArg> for KindSel {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::B => KindSel::B,
            KindArg::C => KindSel::C,
            KindArg::Both => KindSel::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyArg {
    All,
    ClosedForm,
    BruteForce,
    None,
}

impl From<VerifyArg> for Verify {
    fn from(v: VerifyArg) -> Self {
        match v {
            VerifyArg::All => Verify::All,
            VerifyArg::ClosedForm => Verify::ClosedForm,
            VerifyArg::BruteForce => Verify::BruteForce,
            VerifyArg::None => Verify::None,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Candidates {
    /// Every q-polynomial (guarded).
    All,
    /// `a x^(q^i)` only.
    Monomials,
}

#[derive(Serialize)]
struct EquivOutput {
    tool: ToolInfo,
    field: FieldInfo,
    a: String,
    b: String,
    #[serde(flatten)]
    report: EquivalenceReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    codes: Vec<CodeConclusion>,
}

#[derive(Serialize)]
struct ClassOutput {
    tool: ToolInfo,
    field: FieldInfo,
    polynomial: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<Provenance>,
    candidates: &'static str,
    #[serde(flatten)]
    report: ClassReport,
}

struct Output {
    json: String,
    pretty: Option<String>,
    csv: Option<String>,
    code: i32,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Analyze {
            field,
            poly,
            kind,
            verify,
        } => {
            let ctx = field.spec().build()?;
            let resolved = resolve(&ctx, &poly.source()?)?;
            let report = analyze(
                &resolved.poly,
                resolved.provenance,
                (*kind).into(),
                (*verify).into(),
            );
            Ok(Output {
                json: json(&report),
                pretty: Some(render_pretty(&report)),
                csv: Some(render_csv(&report)),
                code: if report.all_match {
                    exit::OK
                } else {
                    exit::MISMATCH
                },
            })
        }
        Command::Equiv {
            field,
            coeffs_a,
            coeffs_b,
            linear,
            codes,
            budget,
        } => {
            let ctx = field.spec().build()?;
            let a = QPolynomial::parse(ctx.clone(), coeffs_a)?;
            let b = QPolynomial::parse(ctx.clone(), coeffs_b)?;
            let report = gamma_l_equivalent(&a, &b, *linear, *budget)?;
            let kinds = codes.map(|k| KindSel::from(k).kinds()).unwrap_or_default();
            let conclusions = kinds
                .into_iter()
                .map(|k: Kind| code_inequivalence_conclusion(&a, &b, k, *budget))
                .collect::<Result<Vec<_>, _>>()?;
            let code = if report.verdict == Verdict::InconclusiveBudget {
                exit::GUARD
            } else {
                exit::OK
            };
            let pretty = format!(
                "{} ({})\n",
                report.verdict,
                if *linear { "GL" } else { "ΓL" }
            );
            Ok(Output {
                json: json(&EquivOutput {
                    tool: tool(),
                    field: field_info(&ctx),
                    a: a.to_string(),
                    b: b.to_string(),
                    report,
                    codes: conclusions,
                }),
                pretty: Some(pretty),
                csv: None,
                code,
            })
        }
        Command::Class {
            field,
            poly,
            linear,
            candidates,
            budget,
        } => {
            let ctx = field.spec().build()?;
            let resolved = resolve(&ctx, &poly.source()?)?;
            let list = match candidates {
                Candidates::All => None,
                Candidates::Monomials => Some(monomial_candidates(&ctx)),
            };
            let (report, _) = gamma_l_class(&resolved.poly, list.as_deref(), *linear, *budget)?;
            let pretty = format!("s = {}\n{}\n", report.s, report.representatives.join("\n"));
            Ok(Output {
                json: json(&ClassOutput {
                    tool: tool(),
                    field: field_info(&ctx),
                    polynomial: resolved.poly.to_string(),
                    family: resolved.provenance,
                    candidates: match candidates {
                        Candidates::All => "all",
                        Candidates::Monomials => "monomials",
                    },
                    report,
                }),
                pretty: Some(pretty),
                csv: None,
                code: exit::OK,
            })
        }
        Command::Sweep { grid } => {
            let text = std::fs::read_to_string(grid)?;
            let report = sweep(&Grid::from_json(&text)?);
            let mut csv = String::from("field,family,polynomial,classification,passed\n");
            for r in &report.rows {
                csv.push_str(&format!(
                    "{},{},\"{}\",{},{}\n",
                    r.field,
                    r.family.as_ref().map_or("", |f| f.family.as_str()),
                    r.polynomial.as_deref().unwrap_or(""),
                    r.classification.as_deref().unwrap_or(""),
                    r.passed
                ));
            }
            let s = &report.summary;
            let pretty = format!(
                "entries {}  passed {}  failed {}  errors {}\n",
                s.entries, s.passed, s.failed, s.errors
            );
            Ok(Output {
                json: json(&report),
                pretty: Some(pretty),
                csv: Some(csv),
                code: if report.all_passed() {
                    exit::OK
                } else {
                    exit::MISMATCH
                },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
        {
            eprintln!("redei: workers: {e}");
        }
    }
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("redei: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = match cli.format {
        Format::Json => Some(out.json),
        Format::Pretty => out.pretty,
        Format::Csv => out.csv,
    };
    let Some(text) = text else {
        eprintln!("redei: this command has no such output format");
        return ExitCode::from(exit::USAGE as u8);
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("redei: {e}");
        return ExitCode::from(exit::USAGE as u8);
    }
    ExitCode::from(out.code as u8)
}
