use std::collections::BTreeMap;
use std::fmt::Write as _;

use grassmann_core::angles::{
    complementary_angle, complementary_angle_formula, complementary_angle_principal,
    grassmann_angle, grassmann_angle_any_dim, grassmann_angle_equal_dim, grassmann_angle_principal,
    oriented_grassmann_cos,
};
use grassmann_core::identities::run_suite;
use grassmann_core::scalar::Scalar;
use grassmann_core::subspace::principal_decomposition;
use grassmann_core::{
    AngleReport, Blade, Complex64, Field, IdentityCheck, Method, Suite, Tolerance,
};
use serde::{Deserialize, Serialize};

use crate::document::{entries, Entry, InputDocument};
use crate::error::{CliError, Result};

pub const MAX_VERIFY_DIM: usize = 8;
pub const MAX_VERIFY_TRIALS: usize = 10_000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    #[default]
    Projection,
    EqualDim,
    AnyDim,
    Principal,
}

#[derive(Debug, Clone, Default)]
pub struct AngleRequest {
    pub v: String,
    pub w: String,
    pub method: MethodArg,
    pub complementary: bool,
    pub oriented: bool,
    pub degrees: bool,
    /// Overrides the document field.
    pub field: Option<Field>,
    pub residual_eps: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleOutput {
    pub value_radians: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_degrees: Option<f64>,
    pub cos: f64,
    pub cos_squared: f64,
    pub method: Method,
    pub residual: f64,
    /// `⟨ν, ω⟩ / (‖ν‖ ‖ω‖)` for the given bases, with `--oriented`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oriented_cos: Option<Entry>,
}

impl AngleOutput {
    fn new(r: AngleReport, degrees: bool) -> Self {
        Self {
            value_radians: r.value,
            value_degrees: degrees.then(|| r.degrees()),
            cos: r.cos,
            cos_squared: r.cos_squared(),
            method: r.method,
            residual: r.residual,
            oriented_cos: None,
        }
    }
}

pub fn angle(doc: &InputDocument, req: &AngleRequest) -> Result<AngleOutput> {
    match req.field.unwrap_or(doc.field) {
        Field::Real => angle_typed::<f64>(doc, req),
        Field::Complex => angle_typed::<Complex64>(doc, req),
    }
}

pub fn angle_typed<T: Scalar>(doc: &InputDocument, req: &AngleRequest) -> Result<AngleOutput> {
    let tol = doc.tolerance(req.residual_eps)?;
    let degrees = req.degrees || doc.options.degrees.unwrap_or(false);
    let bv = doc.basis::<T>(&req.v, &tol)?;
    let bw = doc.basis::<T>(&req.w, &tol)?;
    if req.oriented {
        return oriented::<T>(doc, req, &tol, degrees);
    }
    if req.method == MethodArg::EqualDim && bv.len() != bw.len() {
        return Err(CliError::Dimension(format!(
            "equal-dim needs bases of equal length, {} has {} vectors and {} has {}",
            req.v,
            bv.len(),
            req.w,
            bw.len()
        )));
    }
    let report = match req.method {
        MethodArg::Projection | MethodArg::Principal => {
            let v = doc.subspace::<T>(&req.v, &tol)?;
            let w = doc.subspace::<T>(&req.w, &tol)?;
            match (req.method, req.complementary) {
                (MethodArg::Projection, false) => grassmann_angle(&v, &w)?,
                (MethodArg::Projection, true) => complementary_angle(&v, &w)?,
                (_, false) => grassmann_angle_principal(&v, &w)?,
                (_, true) => complementary_angle_principal(&v, &w)?,
            }
        }
        _ if req.complementary => complementary_angle_formula(&bv, &bw)?,
        MethodArg::EqualDim => grassmann_angle_equal_dim(&bv, &bw)?,
        MethodArg::AnyDim => grassmann_angle_any_dim(&bv, &bw)?,
    };
    Ok(AngleOutput::new(report, degrees))
}

fn oriented<T: Scalar>(
    doc: &InputDocument,
    req: &AngleRequest,
    tol: &Tolerance,
    degrees: bool,
) -> Result<AngleOutput> {
    if req.complementary {
        return Err(CliError::Input(
            "--oriented and --complementary cannot be combined".into(),
        ));
    }
    let v = doc.subspace::<T>(&req.v, tol)?;
    let w = doc.subspace::<T>(&req.w, tol)?;
    if v.dim() != w.dim() || v.is_zero() {
        return Err(CliError::Dimension(format!(
            "oriented angle needs nonzero subspaces of equal dimension, got {} and {}",
            v.dim(),
            w.dim()
        )));
    }
    let nu = Blade::new(doc.ambient, doc.basis::<T>(&req.v, tol)?)?;
    let omega = Blade::new(doc.ambient, doc.basis::<T>(&req.w, tol)?)?;
    let c = oriented_grassmann_cos(&nu, &omega)?;
    let unoriented = grassmann_angle(&v, &w)?;
    let report = AngleReport {
        cos: c.abs().min(1.0),
        method: Method::Oriented,
        residual: (c.abs() - unoriented.cos).abs(),
        ..unoriented
    };
    let mut out = AngleOutput::new(report, degrees);
    out.oriented_cos = Some(Entry::of(c));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrincipalOutput {
    pub angles_radians: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles_degrees: Option<Vec<f64>>,
    pub cosines: Vec<f64>,
    /// Columns `e_1 … e_p`.
    pub e_basis: Vec<Vec<Entry>>,
    /// Columns `f_1 … f_q`.
    pub f_basis: Vec<Vec<Entry>>,
    /// `max |⟨e_i, f_j⟩ − δ_ij cos θ_i|`.
    pub residual: f64,
}

pub fn principal(
    doc: &InputDocument,
    v: &str,
    w: &str,
    field: Option<Field>,
    degrees: bool,
) -> Result<PrincipalOutput> {
    match field.unwrap_or(doc.field) {
        Field::Real => principal_typed::<f64>(doc, v, w, degrees),
        Field::Complex => principal_typed::<Complex64>(doc, v, w, degrees),
    }
}

fn principal_typed<T: Scalar>(
    doc: &InputDocument,
    v: &str,
    w: &str,
    degrees: bool,
) -> Result<PrincipalOutput> {
    let tol = doc.tolerance(None)?;
    let sv = doc.subspace::<T>(v, &tol)?;
    let sw = doc.subspace::<T>(w, &tol)?;
    if sv.is_zero() || sw.is_zero() {
        return Err(CliError::Input(format!(
            "principal angles need nonzero subspaces ({v}, {w})"
        )));
    }
    let d = principal_decomposition(&sv, &sw)?;
    let degrees = degrees || doc.options.degrees.unwrap_or(false);
    Ok(PrincipalOutput {
        angles_degrees: degrees.then(|| d.angles.iter().map(|a| a.to_degrees()).collect()),
        cosines: d.cosines.clone(),
        e_basis: d.e_basis.columns().iter().map(|c| entries(c)).collect(),
        f_basis: d.f_basis.columns().iter().map(|c| entries(c)).collect(),
        residual: d.residual(),
        angles_radians: d.angles,
    })
}

#[derive(Debug, Clone)]
pub struct VerifyRequest {
    pub suite: Suite,
    pub field: Field,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub residual_eps: Option<f64>,
}

pub fn verify(req: &VerifyRequest) -> Result<Vec<IdentityCheck>> {
    if req.n == 0 || req.n > MAX_VERIFY_DIM {
        return Err(CliError::Input(format!(
            "n must be in 1..={MAX_VERIFY_DIM}, got {}",
            req.n
        )));
    }
    if req.trials > MAX_VERIFY_TRIALS {
        return Err(CliError::Input(format!(
            "trials must be at most {MAX_VERIFY_TRIALS}, got {}",
            req.trials
        )));
    }
    let d = Tolerance::default();
    let tol = Tolerance::new(d.rank_eps, req.residual_eps.unwrap_or(d.residual_eps))?;
    Ok(run_suite(
        req.suite, req.field, req.n, req.trials, req.seed, &tol,
    )?)
}

pub fn render_angle(out: &AngleOutput) -> String {
    let mut s = String::new();
    let _ = write!(s, "angle    {} rad", out.value_radians);
    if let Some(d) = out.value_degrees {
        let _ = write!(s, " ({d}°)");
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "cos      {}", out.cos);
    let _ = writeln!(s, "cos²     {}", out.cos_squared);
    match out.oriented_cos {
        Some(Entry::Real(x)) => {
            let _ = writeln!(s, "oriented {x}");
        }
        Some(Entry::Complex([re, im])) => {
            let _ = writeln!(
                s,
                "oriented {re} {} {}i",
                if im < 0.0 { '-' } else { '+' },
                im.abs()
            );
        }
        None => {}
    }
    let _ = writeln!(s, "method   {}", out.method.name());
    let _ = writeln!(s, "residual {:e}", out.residual);
    s
}

pub fn render_principal(out: &PrincipalOutput) -> String {
    let mut s = String::new();
    for (i, a) in out.angles_radians.iter().enumerate() {
        let _ = write!(s, "θ{} = {a} rad", i + 1);
        if let Some(d) = &out.angles_degrees {
            let _ = write!(s, " ({}°)", d[i]);
        }
        let _ = writeln!(s, ", cos = {}", out.cosines[i]);
    }
    let _ = writeln!(s, "residual {:e}", out.residual);
    s
}

pub fn render_verify(checks: &[IdentityCheck]) -> String {
    let mut by_name: BTreeMap<&str, (usize, usize, f64)> = BTreeMap::new();
    for c in checks {
        let e = by_name.entry(&c.name).or_insert((0, 0, 0.0));
        e.0 += 1;
        e.1 += c.passed as usize;
        e.2 = e.2.max(c.residual);
    }
    let mut s = String::new();
    for (name, (total, passed, worst)) in &by_name {
        let _ = writeln!(
            s,
            "{name:<24} {passed}/{total} passed, max residual {worst:.2e}"
        );
    }
    for c in checks.iter().filter(|c| !c.passed) {
        let _ = writeln!(
            s,
            "FAILED {} residual {:e}: {}",
            c.name, c.residual, c.witness
        );
    }
    s
}
