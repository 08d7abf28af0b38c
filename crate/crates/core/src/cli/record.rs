//! Machine-readable results of a run and their JSON, CSV and Markdown
//! renderings.

use num_bigint::BigInt;
use serde::Serialize;

use crate::apery::{run_constants, AperyEstimate, ConstantsRun, Normalization, Settings};
use crate::error::{Error, Result};
use crate::gpqh::{OperatorKind, QHOperator};
use crate::qde::Mode;
use crate::real::Real;
use crate::zetaid::{identify, Identification, IdentifyOptions, ZetaPolynomial};

use super::cache::{CacheStatus, OperatorCache};
use super::spec::{Polarization, VarietySpec};

pub const RECORD_FORMAT: &str = "apery-record 1";

pub fn toolchain() -> String {
    format!("apery {} ({})", env!("CARGO_PKG_VERSION"), env!("APERY_RUSTC_VERSION"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeChoice {
    Auto,
    Rational,
    Float,
}

impl ModeChoice {
    pub fn parse(s: &str) -> Option<ModeChoice> {
        match s {
            "auto" => Some(ModeChoice::Auto),
            "rational" => Some(ModeChoice::Rational),
            "float" => Some(ModeChoice::Float),
            _ => None,
        }
    }

    pub fn resolve(self, op: &QHOperator, digits: u32) -> Mode {
        match self {
            ModeChoice::Auto => Mode::default_for(op, digits),
            ModeChoice::Rational => Mode::Rational,
            ModeChoice::Float => Mode::Float { digits: digits.max(40) + 60 },
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ComputeOptions {
    pub terms: usize,
    pub precision: u32,
    pub mode: ModeChoice,
    pub normalization: Normalization,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions { terms: 200, precision: 40, mode: ModeChoice::Auto, normalization: Normalization::LefschetzChern }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecEcho {
    pub input: String,
    pub canonical: String,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polarization: Option<Polarization>,
    pub aliases: Vec<String>,
}

impl SpecEcho {
    fn new(input: &str, spec: &VarietySpec, op: &QHOperator) -> SpecEcho {
        let mut e = SpecEcho {
            input: input.to_string(),
            canonical: spec.canonical(),
            kind: if spec.is_product() { "product" } else { "gp" },
            family: None,
            rank: None,
            node: None,
            dims: None,
            weights: None,
            polarization: None,
            aliases: spec.aliases(),
        };
        match (&op.kind, spec) {
            (OperatorKind::Homogeneous { family, rank, node }, _) => {
                e.family = Some(family.to_string());
                e.rank = Some(*rank);
                e.node = Some(*node);
            }
            (OperatorKind::Product { dims, weights }, VarietySpec::Product { polarization, .. }) => {
                e.dims = Some(dims.clone());
                e.weights = Some(weights.clone());
                e.polarization = Some(polarization.clone());
            }
            _ => {}
        }
        e
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentifiedForm {
    pub internal: String,
    pub display: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub fundamental: bool,
    pub primitive_codim: usize,
    pub seed_codim: usize,
    pub weight: usize,
    /// Seed coordinates in the Schubert (or monomial) basis, as `num/den`.
    pub seed: Vec<String>,
    pub estimate: String,
    /// Significant digits printed in `estimate`.
    pub estimate_precision: u32,
    pub error: String,
    pub identified: Option<IdentifiedForm>,
    /// Ratio of the two shortest reduced lattice vectors.
    pub confidence: Option<String>,
    pub flags: Vec<&'static str>,
    pub oscillation_period: usize,
    pub method: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResultRecord {
    pub format: &'static str,
    pub spec: SpecEcho,
    pub dim: usize,
    pub fano_index: Option<u32>,
    pub mu: usize,
    pub basis_size: usize,
    pub terms: usize,
    pub precision: u32,
    pub mode: &'static str,
    pub normalization: &'static str,
    pub normalization_applied: &'static str,
    pub entries: Vec<Entry>,
    pub toolchain: String,
    pub operator_hash: String,
}

/// One non-fundamental constant with its identification.
#[derive(Clone, Debug)]
pub struct Constant {
    pub estimate: AperyEstimate,
    pub identification: Option<ZetaPolynomial>,
    pub confidence: f64,
    pub id_digits: u32,
}

impl Constant {
    pub fn weight(&self) -> usize {
        self.estimate.weight
    }

    pub fn value(&self) -> &Real {
        &self.estimate.value
    }

    /// Whether the value is zero within its error.
    pub fn is_zero(&self) -> bool {
        let e = &self.estimate;
        e.truncated || self.identification.as_ref().is_some_and(|p| p.is_zero())
    }
}

/// Everything produced by [`run_compute`].
#[derive(Clone, Debug)]
pub struct Computation {
    pub spec: VarietySpec,
    pub operator: QHOperator,
    pub cache_status: CacheStatus,
    pub run: ConstantsRun,
    pub constants: Vec<Constant>,
    pub record: ResultRecord,
}

fn rational_string(x: &BigInt) -> String {
    format!("{x}/1")
}

/// Digits used for identification: the estimate must carry ten more for the
/// stability check, plus a small margin.
pub fn identification_digits(e: &AperyEstimate, precision: u32) -> u32 {
    e.accurate_digits().saturating_sub(12).min(precision)
}

pub fn identify_estimate(e: &AperyEstimate, precision: u32, include_euler: bool) -> (Option<ZetaPolynomial>, f64, u32) {
    if e.truncated {
        return (Some(ZetaPolynomial::zero()), f64::INFINITY, precision);
    }
    let digits = identification_digits(e, precision);
    if digits < 12 {
        return (None, 0.0, digits);
    }
    let o = IdentifyOptions { digits, include_euler, ..IdentifyOptions::default() };
    match identify(&e.value, e.weight as u32, &o) {
        Identification::Identified { poly, confidence } => (Some(poly), confidence, digits),
        Identification::Unidentified { .. } => (None, 0.0, digits),
    }
}

fn entry_for(c: &Constant, precision: u32) -> Entry {
    let e = &c.estimate;
    let shown = e.accurate_digits().clamp(1, precision);
    let mut flags = Vec::new();
    if e.truncated {
        flags.push("truncated");
    }
    if e.oscillation_period > 1 {
        flags.push("oscillating");
    }
    if c.identification.is_none() {
        flags.push("unidentified");
    }
    Entry {
        fundamental: false,
        primitive_codim: e.primitive_codim,
        seed_codim: e.seed_codim,
        weight: e.weight,
        seed: e.seed.iter().map(rational_string).collect(),
        estimate: e.value.to_decimal(shown),
        estimate_precision: shown,
        error: if e.error_estimate.is_zero() { "0".into() } else { e.error_estimate.to_decimal(3) },
        identified: c
            .identification
            .as_ref()
            .map(|p| IdentifiedForm { internal: p.internal_string(), display: p.display_form() }),
        confidence: c.identification.as_ref().and_then(|_| {
            c.confidence.is_finite().then(|| format!("{:.4e}", c.confidence))
        }),
        flags,
        oscillation_period: e.oscillation_period,
        method: e.method,
    }
}

fn fundamental_entry(op: &QHOperator, denominator: &[BigInt]) -> Entry {
    Entry {
        fundamental: true,
        primitive_codim: 0,
        seed_codim: op.dim_x,
        weight: 0,
        seed: denominator.iter().map(rational_string).collect(),
        estimate: "1".into(),
        estimate_precision: 1,
        error: "0".into(),
        identified: Some(IdentifiedForm { internal: "1".into(), display: "1".into() }),
        confidence: None,
        flags: Vec::new(),
        oscillation_period: 1,
        method: "exact",
    }
}

/// Builds (or loads) the operator, computes and identifies all constants.
pub fn run_compute(input: &str, spec: &VarietySpec, o: &ComputeOptions, cache: &OperatorCache) -> Result<Computation> {
    if o.terms < 20 {
        return Err(Error::Config("at least 20 terms are needed".into()));
    }
    if o.precision < 10 {
        return Err(Error::Config("precision must be at least 10 digits".into()));
    }
    let (op, cache_status) = cache.load_or_build(spec)?;
    let mut settings = Settings::new(&op, o.terms, o.precision, o.normalization);
    settings.mode = o.mode.resolve(&op, o.precision);
    let run = run_constants(&op, &settings)?;
    let include_euler = spec.needs_euler();
    let constants: Vec<Constant> = run
        .estimates
        .iter()
        .map(|e| {
            let (identification, confidence, id_digits) = identify_estimate(e, o.precision, include_euler);
            Constant { estimate: e.clone(), identification, confidence, id_digits }
        })
        .collect();
    let mut entries = vec![fundamental_entry(&op, &run.seeds.denominator)];
    entries.extend(constants.iter().map(|c| entry_for(c, o.precision)));
    let record = ResultRecord {
        format: RECORD_FORMAT,
        spec: SpecEcho::new(input, spec, &op),
        dim: op.dim_x,
        fano_index: op.fano_index,
        mu: op.mu(),
        basis_size: op.size(),
        terms: o.terms,
        precision: o.precision,
        mode: settings.mode.name(),
        normalization: o.normalization.name(),
        normalization_applied: run.seeds.normalization.name(),
        entries,
        toolchain: toolchain(),
        operator_hash: op.hash(),
    };
    Ok(Computation { spec: spec.clone(), operator: op, cache_status, run, constants, record })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Md,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<OutputFormat> {
        match s {
            "json" => Some(OutputFormat::Json),
            "csv" => Some(OutputFormat::Csv),
            "md" => Some(OutputFormat::Md),
            _ => None,
        }
    }
}

impl ResultRecord {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "variety",
            "fundamental",
            "primitive_codim",
            "weight",
            "estimate",
            "error",
            "identified",
            "flags",
        ])
        .map_err(csv_err)?;
        for e in &self.entries {
            let id = e.identified.as_ref().map(|i| i.display.as_str()).unwrap_or("");
            w.write_record([
                self.spec.canonical.as_str(),
                if e.fundamental { "true" } else { "false" },
                &e.primitive_codim.to_string(),
                &e.weight.to_string(),
                &e.estimate,
                &e.error,
                id,
                &e.flags.join(";"),
            ])
            .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!(
            "### {}\n\ndim {}, μ = {}, basis {}, {} terms, {} digits, {} mode, {} normalization\n\n",
            self.spec.canonical,
            self.dim,
            self.mu,
            self.basis_size,
            self.terms,
            self.precision,
            self.mode,
            self.normalization_applied
        );
        s.push_str("| codim | estimate | error | identified | flags |\n|---|---|---|---|---|\n");
        for e in self.entries.iter().filter(|e| !e.fundamental) {
            let id = e.identified.as_ref().map(|i| i.display.as_str()).unwrap_or("?");
            s.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                e.primitive_codim,
                e.estimate,
                e.error,
                id,
                e.flags.join(", ")
            ));
        }
        s
    }

    pub fn render(&self, f: OutputFormat) -> Result<String> {
        Ok(match f {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv()?,
            OutputFormat::Md => self.to_markdown(),
        })
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Internal(e.to_string())
}

/// The error object printed by the command-line driver.
pub fn error_json(e: &Error) -> String {
    let kind = match e {
        Error::Config(_) => "config",
        Error::Internal(_) => "internal",
        Error::Precondition(_) => "precondition",
        Error::Numeric(_) => "numeric",
        Error::Parse(_) => "parse",
        Error::Version { .. } => "version",
        Error::Checksum => "checksum",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    };
    serde_json::json!({ "error": { "kind": kind, "message": e.to_string() } }).to_string()
}
