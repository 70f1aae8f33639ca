//! Command-line front end: one subcommand per operation, plus `verify`.
//!
//! Every result is a record `{"op", "params", "value": {"re", "im"}, "terms",
//! "method", "tail_bound"?, "detail"?}`; `params` echoes the parsed command so
//! the invocation can be replayed from the output.

pub mod verify;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::expsums::{self, KloostermanMethod, SalieSign, SumValue};
use crate::kernels::{self, Damping, KernelArg};
use crate::lfun::{self, FundamentalDiscriminant};
use crate::matcore::{HalfIntegralForm, HalfIntegralMatrix, IntMat2};
use crate::petersson::{self, ResidueOptions, SpectralParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Human,
}

#[derive(Debug, Parser)]
#[command(name = "spinor-moments", version, about = "Exponential sums, kernels and main terms for spinor L-function moments")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, env = "SPINOR_FORMAT", default_value = "json", global = true)]
    pub format: Format,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// A complex number given as `re` or `re,im`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexArg(pub Complex64);

impl FromStr for ComplexArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidArgument(format!("malformed complex number {s:?}"));
        let parts: Vec<f64> = s
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match parts.as_slice() {
            [re] => Ok(ComplexArg(Complex64::new(*re, 0.0))),
            [re, im] => Ok(ComplexArg(Complex64::new(*re, *im))),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ComplexArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0.re, self.0.im)
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Symplectic Kloosterman sum K(Q, T; C).
    Kloosterman(KloostermanArgs),
    /// Salié sum H±(P, S; c).
    Salie(SalieArgs),
    /// Quadratic Gauss sum Σ e((a x² + b x)/c).
    Gauss(GaussArgs),
    /// Solutions of the three congruences mod N.
    Count(CountArgs),
    /// Character-twisted average of K(μ2 I, μ1 I; C) over C ∈ GO₂(ℤ).
    Twisted(TwistedArgs),
    /// Double-Bessel kernel 𝒥_ℓ, or J_ν(x) with --x.
    Besselkernel(BesselArgs),
    /// Smooth weight W(x).
    Weight(WeightArgs),
    /// Dirichlet coefficient r_q(n).
    Rcoeff(RcoeffArgs),
    /// L(s, χ_q).
    Lvalue(LvalueArgs),
    /// Poincaré-series coefficient h_Q(T)·(det T)^{k/2−3/4}.
    Hqt(HqtArgs),
    /// Normalised coefficient matrix over a list of forms.
    Gram(GramArgs),
    /// Main-term residue at s = t = 0.
    Mainterm(MaintermArgs),
    /// Polynomial fit of the main term against log N.
    Fit(FitArgs),
    /// Run a module's property suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct KloostermanArgs {
    /// Form `t1,t2,t4` or `a,b;b,d`.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(serialize_with = "crate::json::display")]
    pub q: HalfIntegralMatrix,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(serialize_with = "crate::json::display")]
    pub t: HalfIntegralMatrix,
    /// Modulus `a,b;c,d`; with `--method factored` the cofactor of `N`.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(serialize_with = "crate::json::display")]
    pub c: IntMat2,
    #[arg(long, value_enum, default_value = "brute")]
    pub method: KloostermanMethod,
    /// Prime `N` for the factored route (modulus `N·C`).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
}

#[derive(Debug, Args, Serialize)]
pub struct SalieArgs {
    #[arg(long, allow_hyphen_values = true)]
    #[serde(serialize_with = "crate::json::display")]
    pub p: HalfIntegralMatrix,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(serialize_with = "crate::json::display")]
    pub s: HalfIntegralMatrix,
    #[arg(long)]
    pub c: i64,
    #[arg(long, value_enum, default_value = "+")]
    pub sign: SalieSign,
}

#[derive(Debug, Args, Serialize)]
pub struct GaussArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: i64,
    #[arg(long)]
    pub c: i64,
}

#[derive(Debug, Args, Serialize)]
pub struct CountArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub c1: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub c2: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub c4: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub h1: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub h2: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub a: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub b: i64,
}

#[derive(Debug, Args, Serialize)]
pub struct TwistedArgs {
    #[arg(long, allow_hyphen_values = true)]
    #[serde(serialize_with = "crate::json::display")]
    pub c: IntMat2,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub q1: FundamentalDiscriminant,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub q2: FundamentalDiscriminant,
}

#[derive(Debug, Args, Serialize)]
pub struct BesselArgs {
    /// Weight `k`; the order is `ℓ = k − 3/2`.
    #[arg(long, default_value_t = 10)]
    pub k: i64,
    /// Eigenvalues `s1²,s2²` of the kernel argument.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eig: Option<Vec<f64>>,
    /// Kernel argument `T C⁻¹ Q C⁻ᵀ` from forms and a modulus.
    #[arg(long, allow_hyphen_values = true, requires_all = ["q", "c"])]
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_display")]
    pub t: Option<HalfIntegralMatrix>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_display")]
    pub q: Option<HalfIntegralMatrix>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_display")]
    pub c: Option<IntMat2>,
    /// Evaluate `J_ν(x)` instead, with `ν` from `--nu` (default `ℓ`).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
}

fn opt_display<T: fmt::Display, S: serde::Serializer>(x: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Args, Serialize)]
pub struct WeightArgs {
    #[arg(long)]
    pub x: f64,
    #[arg(long, default_value_t = 10)]
    pub k: i64,
    #[arg(long, value_enum, default_value = "one-minus-s-squared")]
    pub damping: Damping,
}

#[derive(Debug, Args, Serialize)]
pub struct RcoeffArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub q: FundamentalDiscriminant,
    #[arg(long)]
    pub n: i64,
}

#[derive(Debug, Args, Serialize)]
pub struct LvalueArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub q: FundamentalDiscriminant,
    /// `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(serialize_with = "crate::json::display")]
    pub s: ComplexArg,
}

#[derive(Debug, Args, Serialize)]
pub struct SpectralArgs {
    #[arg(long, default_value_t = 10)]
    pub k: i64,
    #[arg(long, default_value_t = 3)]
    pub n: i64,
    #[arg(long, default_value_t = SpectralParams::DEFAULT_C_MAX)]
    pub c_max: i64,
    #[arg(long, default_value_t = SpectralParams::DEFAULT_S_MAX)]
    pub s_max: i64,
    /// Override the entry/determinant bound of the rank-2 box.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub box_bound: Option<i64>,
}

impl SpectralArgs {
    fn params(&self) -> Result<SpectralParams, Error> {
        let mut p = SpectralParams::new(self.k, self.n)?.with_cutoffs(self.c_max, self.s_max);
        if let Some(b) = self.box_bound {
            p = p.with_box_bound(b);
        }
        Ok(p)
    }
}

#[derive(Debug, Args, Serialize)]
pub struct HqtArgs {
    #[arg(long, allow_hyphen_values = true)]
    #[serde(serialize_with = "crate::json::display")]
    pub q: HalfIntegralForm,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(serialize_with = "crate::json::display")]
    pub t: HalfIntegralForm,
    #[command(flatten)]
    #[serde(flatten)]
    pub spectral: SpectralArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct GramArgs {
    /// Forms, e.g. `--forms 1,0,1 1,0,2`.
    #[arg(long, num_args = 0.., allow_hyphen_values = true)]
    #[serde(serialize_with = "crate::json::display_seq")]
    pub forms: Vec<HalfIntegralForm>,
    #[command(flatten)]
    #[serde(flatten)]
    pub spectral: SpectralArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct ResidueArgs {
    #[arg(long, default_value_t = 0.1)]
    pub radius: f64,
    #[arg(long, default_value_t = 128)]
    pub nodes: usize,
    #[arg(long, value_enum, default_value = "one-minus-s-all-squared")]
    pub damping: Damping,
}

impl ResidueArgs {
    fn options(&self) -> ResidueOptions {
        ResidueOptions {
            radius: self.radius,
            nodes: self.nodes,
            damping: self.damping,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct MaintermArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub q1: FundamentalDiscriminant,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub q2: FundamentalDiscriminant,
    /// Level, as a real number > 1.
    #[arg(long)]
    pub n: f64,
    #[arg(long, default_value_t = 10)]
    pub k: i64,
    #[command(flatten)]
    #[serde(flatten)]
    pub residue: ResidueArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct FitArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub q1: FundamentalDiscriminant,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub q2: FundamentalDiscriminant,
    #[arg(long, default_value_t = 10)]
    pub k: i64,
    /// Sample levels.
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000,100000")]
    pub ns: Vec<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub residue: ResidueArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub module: verify::Module,
}

/// The parsed subcommand name, its parameters and the output format.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandSpec {
    pub op: String,
    pub params: Value,
    pub format: Format,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Kloosterman(_) => "kloosterman",
            Command::Salie(_) => "salie",
            Command::Gauss(_) => "gauss",
            Command::Count(_) => "count",
            Command::Twisted(_) => "twisted",
            Command::Besselkernel(_) => "besselkernel",
            Command::Weight(_) => "weight",
            Command::Rcoeff(_) => "rcoeff",
            Command::Lvalue(_) => "lvalue",
            Command::Hqt(_) => "hqt",
            Command::Gram(_) => "gram",
            Command::Mainterm(_) => "mainterm",
            Command::Fit(_) => "fit",
            Command::Verify(_) => "verify",
        }
    }
}

impl Cli {
    pub fn spec(&self) -> CommandSpec {
        CommandSpec {
            op: self.command.name().to_string(),
            params: serde_json::to_value(&self.command).expect("parameters serialise"),
            format: self.format,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub op: String,
    pub params: Value,
    #[serde(serialize_with = "crate::json::complex")]
    pub value: Complex64,
    pub terms: Option<u64>,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Record {
    fn new(spec: &CommandSpec, value: Complex64, method: &str) -> Self {
        Record {
            op: spec.op.clone(),
            params: spec.params.clone(),
            value,
            terms: None,
            method: method.to_string(),
            tail_bound: None,
            detail: None,
        }
    }

    fn real(spec: &CommandSpec, value: f64, method: &str) -> Self {
        Self::new(spec, Complex64::new(value, 0.0), method)
    }

    fn from_sum(spec: &CommandSpec, v: &SumValue) -> Self {
        let mut r = Self::new(spec, v.value, v.method.as_str());
        r.terms = Some(v.terms);
        r
    }

    fn terms(mut self, n: u64) -> Self {
        self.terms = Some(n);
        self
    }

    fn tail(mut self, t: f64) -> Self {
        self.tail_bound = Some(t);
        self
    }

    fn detail(mut self, d: impl Serialize) -> Self {
        self.detail = Some(serde_json::to_value(d).expect("detail serialises"));
        self
    }
}

/// Result of a run: the records and whether every hard check passed.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub records: Vec<Record>,
    pub passed: bool,
    /// Rows for CSV output when the subcommand has a natural table.
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl Outcome {
    fn one(r: Record) -> Self {
        Outcome {
            records: vec![r],
            passed: true,
            table: None,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, Error> {
    let spec = cli.spec();
    let sp = &spec;
    Ok(match &cli.command {
        Command::Kloosterman(a) => {
            let v = match a.method {
                KloostermanMethod::Brute => expsums::kloosterman(a.q, a.t, &a.c)?,
                KloostermanMethod::PI => {
                    if !a.c.is_scalar() {
                        return Err(Error::InvalidArgument("method pI needs C = p·I".into()));
                    }
                    expsums::kloosterman_pi(a.q, a.t, a.c.a)?
                }
                KloostermanMethod::Factored => {
                    let n = a
                        .n
                        .ok_or_else(|| Error::InvalidArgument("method factored needs --n".into()))?;
                    expsums::kloosterman_factored(a.q, a.t, n, &a.c)?
                }
            };
            Outcome::one(Record::from_sum(sp, &v))
        }
        Command::Salie(a) => Outcome::one(Record::from_sum(sp, &expsums::salie(a.p, a.s, a.c, a.sign)?)),
        Command::Gauss(a) => Outcome::one(Record::from_sum(sp, &expsums::gauss_sum(a.a, a.b, a.c)?)),
        Command::Count(a) => {
            let n = expsums::congruence_count(a.n, a.c1, a.c2, a.c4, a.h1, a.h2, a.a, a.b)?;
            Outcome::one(Record::real(sp, n as f64, "brute").terms((a.n * a.n * a.n) as u64))
        }
        Command::Twisted(a) => {
            let v = expsums::twisted_average(&a.c, a.q1, a.q2)?;
            let closed = expsums::twisted_average_closed_form(&a.c, a.q1, a.q2)?;
            Outcome::one(Record::from_sum(sp, &v).detail(json!({ "closed_form": closed })))
        }
        Command::Besselkernel(a) => {
            let ell = kernels::BesselOrder::from_weight(a.k)?.ell();
            if let Some(x) = a.x {
                let nu = a.nu.unwrap_or(ell);
                let v = kernels::bessel_j(nu, x)?;
                let check = kernels::bessel::bessel_j_schlafli(nu, x)?;
                Outcome::one(Record::real(sp, v, "series-or-continued-fraction").detail(json!({ "integral": check })))
            } else {
                let arg = match (&a.eig, a.t, a.q, a.c) {
                    (Some(e), _, _, _) if e.len() == 2 => KernelArg::new(e[0], e[1])?,
                    (Some(_), _, _, _) => return Err(Error::InvalidArgument("--eig takes two values".into())),
                    (None, Some(t), Some(q), Some(c)) => KernelArg::from_forms(&t, &q, &c)?,
                    _ => return Err(Error::InvalidArgument("give --eig or --t/--q/--c".into())),
                };
                let v = kernels::script_j(ell, &arg);
                let fine = kernels::script_j_fixed(ell, &arg, 256);
                Outcome::one(
                    Record::real(sp, v, "adaptive-gauss-kronrod")
                        .detail(json!({ "s1_sq": arg.s1_sq, "s2_sq": arg.s2_sq, "fixed_grid": fine })),
                )
            }
        }
        Command::Weight(a) => {
            let w = kernels::weight_w(a.x, a.k, a.damping)?;
            Outcome::one(Record::real(sp, w.value, "gauss-legendre").tail(w.truncation_bound))
        }
        Command::Rcoeff(a) => Outcome::one(Record::real(sp, lfun::r_coeff(a.q, a.n)?, "divisor-sum")),
        Command::Lvalue(a) => {
            let v = lfun::dirichlet_l(a.s.0, a.q)?;
            Outcome::one(Record::new(sp, v.value, "euler-maclaurin"))
        }
        Command::Hqt(a) => {
            let h = petersson::h_fourier(&a.q, &a.t, &a.spectral.params()?)?;
            let mut r = Record::new(sp, h.total, "petersson-formula")
                .terms((h.rank1_terms + h.rank2_terms) as u64)
                .tail(h.tail_bound);
            r.detail = Some(serde_json::to_value(&h).expect("serialises"));
            Outcome::one(r)
        }
        Command::Gram(a) => {
            let g = petersson::spectral_gram(&a.forms, &a.spectral.params()?)?;
            let mut records = Vec::new();
            for (i, row) in g.matrix.iter().enumerate() {
                for (j, z) in row.iter().enumerate() {
                    let mut r = Record::new(sp, *z, "petersson-formula")
                        .detail(json!({ "i": i, "j": j }))
                        .tail(g.coefficients[i][j].tail_bound);
                    r.op = "gram.entry".into();
                    records.push(r);
                }
            }
            let mut summary = Record::real(sp, g.hermitian_defect, "hermitian-defect")
                .tail(g.tail_budget)
                .detail(json!({
                    "min_eigenvalue": g.min_eigenvalue,
                    "normalization": g.normalization.value,
                    "index": g.normalization.index,
                }));
            summary.op = "gram.diagnostics".into();
            records.push(summary);
            Outcome {
                records,
                passed: true,
                table: None,
            }
        }
        Command::Mainterm(a) => {
            let r = petersson::main_term_residue_with(a.q1, a.q2, a.n, a.k, a.residue.options())?;
            Outcome::one(
                Record::new(sp, Complex64::new(r.residue, r.residue_im), "nested-trapezoid")
                    .terms((a.residue.nodes * a.residue.nodes) as u64)
                    .detail(json!({ "log_coefficients": r.coefficients })),
            )
        }
        Command::Fit(a) => {
            let f = petersson::leading_coeff_fit(a.q1, a.q2, a.k, &a.ns, a.residue.options())?;
            let rows = f
                .samples
                .iter()
                .map(|(n, y)| {
                    let x = n.ln();
                    let fit: f64 = f.coefficients.iter().enumerate().map(|(p, c)| c * x.powi(p as i32)).sum();
                    vec![n.to_string(), x.to_string(), y.to_string(), fit.to_string()]
                })
                .collect();
            let header = ["n", "log_n", "residue", "fitted"].map(String::from).to_vec();
            Outcome {
                records: vec![Record::real(sp, f.leading, "least-squares").detail(&f)],
                passed: true,
                table: Some((header, rows)),
            }
        }
        Command::Verify(a) => {
            let checks = verify::run_suite(a.module);
            let passed = checks.iter().all(|c| c.passed);
            let records = checks
                .into_iter()
                .map(|c| {
                    let mut r = Record::real(sp, c.measured, "verify").detail(&c);
                    r.op = format!("verify.{}", c.module);
                    r
                })
                .collect();
            Outcome {
                records,
                passed,
                table: None,
            }
        }
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Writes the outcome in the requested format.
pub fn write_outcome(out: &mut impl Write, outcome: &Outcome, format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for r in &outcome.records {
                writeln!(out, "{}", serde_json::to_string(r).expect("record serialises"))?;
            }
        }
        Format::Csv => {
            if let Some((header, rows)) = &outcome.table {
                writeln!(out, "{}", header.join(","))?;
                for row in rows {
                    writeln!(out, "{}", row.iter().map(|s| csv_field(s)).collect::<Vec<_>>().join(","))?;
                }
            } else {
                writeln!(out, "op,params,re,im,terms,method,tail_bound")?;
                for r in &outcome.records {
                    let fields = [
                        r.op.clone(),
                        r.params.to_string(),
                        r.value.re.to_string(),
                        r.value.im.to_string(),
                        r.terms.map(|t| t.to_string()).unwrap_or_default(),
                        r.method.clone(),
                        r.tail_bound.map(|t| t.to_string()).unwrap_or_default(),
                    ];
                    writeln!(out, "{}", fields.iter().map(|s| csv_field(s)).collect::<Vec<_>>().join(","))?;
                }
            }
        }
        Format::Human => {
            for r in &outcome.records {
                write!(out, "{:<18} {:.12} {:+.3e}i  [{}]", r.op, r.value.re, r.value.im, r.method)?;
                if let Some(t) = r.terms {
                    write!(out, "  terms={t}")?;
                }
                if let Some(t) = r.tail_bound {
                    write!(out, "  tail≤{t:.2e}")?;
                }
                if let Some(d) = &r.detail {
                    write!(out, "  {d}")?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

/// Parses arguments, runs and prints; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = cli.threads {
        // a second initialisation in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(&cli) {
        Ok(outcome) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            if write_outcome(&mut lock, &outcome, cli.format).is_err() {
                return 1;
            }
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
