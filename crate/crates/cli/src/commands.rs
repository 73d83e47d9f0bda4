use std::fmt::Write as _;

use dbound::blaschke::{interpolate_roots_of_unity_with, InterpolationConfig};
use dbound::classify::{classify_point, Classification};
use dbound::sampling::sample_many;
use dbound::selftest::{self as suite, Check, SelftestConfig};
use dbound::{AutParams, Complex64, DomainPoint, ErrorClass, Mat2, Stratum, Structure, Tolerance};
use serde::Deserialize;
use serde_json::{json, Value};

pub enum Output {
    Json(Value),
    Csv(String),
}

pub enum CliError {
    /// Malformed request: unreadable input, bad JSON, wrong schema.
    Input(String),
    Core(dbound::Error),
    /// The self-test ran; its report is still printed.
    SelftestFailed(Output),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Core(e) => match e.class() {
                ErrorClass::Input => 1,
                ErrorClass::Domain => 2,
                ErrorClass::Solver => 3,
            },
            CliError::SelftestFailed(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "malformed input: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::SelftestFailed(_) => write!(f, "self-test failed"),
        }
    }
}

impl From<dbound::Error> for CliError {
    fn from(e: dbound::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub struct Options {
    pub tol: Tolerance,
    pub seed: u64,
    pub samples: usize,
    pub resolution: f64,
    pub csv: bool,
}

impl Options {
    pub fn new(
        tol: f64,
        seed: u64,
        samples: usize,
        resolution: f64,
        csv: bool,
    ) -> Result<Self, CliError> {
        let tol = Tolerance::new(tol)?;
        if samples == 0 {
            return Err(CliError::Input("--samples must be positive".into()));
        }
        if !(resolution > 0.0 && resolution.is_finite()) {
            return Err(CliError::Input("--resolution must be positive".into()));
        }
        Ok(Options {
            tol,
            seed,
            samples,
            resolution,
            csv,
        })
    }
}

fn parse(text: &str) -> Result<Value, CliError> {
    Ok(serde_json::from_str(text)?)
}

/// A single point, a bare array of points, or `{"points": [...]}` as
/// printed by `sample`. The flag says whether a list was given.
fn points(text: &str) -> Result<(Vec<DomainPoint>, bool), CliError> {
    let value = parse(text)?;
    let list = match value {
        Value::Array(items) => items,
        Value::Object(mut map) if map.contains_key("points") => match map.remove("points") {
            Some(Value::Array(items)) => items,
            _ => return Err(CliError::Input("`points` must be an array".into())),
        },
        single => return Ok((vec![serde_json::from_value(single)?], false)),
    };
    let points = list
        .into_iter()
        .map(serde_json::from_value)
        .collect::<Result<_, _>>()?;
    Ok((points, true))
}

fn one_or_many(mut values: Vec<Value>, many: bool) -> Value {
    if many {
        Value::Array(values)
    } else {
        values.pop().unwrap_or(Value::Null)
    }
}

fn fmt_opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn classification_csv(reports: &[Classification]) -> String {
    let mut out = String::from("stratum,label,region,royal,triangular,defect,mu_lower,mu_upper\n");
    for r in reports {
        let region = serde_json::to_value(r.region).expect("region serializes");
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:e},{},{}",
            r.stratum,
            r.label,
            region.as_str().unwrap_or_default(),
            fmt_opt(r.royal),
            fmt_opt(r.triangular),
            r.defect,
            fmt_opt(r.mu.map(|m| m.lower)),
            fmt_opt(r.mu.map(|m| m.upper)),
        );
    }
    out
}

pub fn classify(text: &str, opts: &Options) -> Result<Output, CliError> {
    let (points, many) = points(text)?;
    let reports = points
        .iter()
        .map(|p| classify_point(p, opts.tol, opts.resolution))
        .collect::<Result<Vec<_>, _>>()?;
    if opts.csv {
        return Ok(Output::Csv(classification_csv(&reports)));
    }
    let values = reports
        .iter()
        .map(serde_json::to_value)
        .collect::<Result<_, _>>()?;
    Ok(Output::Json(one_or_many(values, many)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AutRequest {
    aut: AutParams,
    point: DomainPoint,
    #[serde(default)]
    invert: bool,
}

pub fn aut(text: &str, _opts: &Options) -> Result<Output, CliError> {
    let req: AutRequest = serde_json::from_str(text)?;
    let map = if req.invert {
        req.aut.inverse()?
    } else {
        req.aut
    };
    let image = map.apply(&req.point)?;
    Ok(Output::Json(json!({ "point": image })))
}

pub fn decompose(text: &str, opts: &Options) -> Result<Output, CliError> {
    let (points, many) = points(text)?;
    let values = points
        .iter()
        .map(|p| {
            Ok(serde_json::to_value(dbound::orbits::decompose(
                p, opts.tol,
            )?)?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Output::Json(one_or_many(values, many)))
}

fn complex(v: &Value) -> Result<Complex64, CliError> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .map(|re| Complex64::new(re, 0.0))
            .ok_or_else(|| CliError::Input(format!("bad number {n}"))),
        _ => Ok(serde_json::from_value(v.clone())?),
    }
}

/// `{"a11": z, ...}` or row-major `[[a11, a12], [a21, a22]]`, entries either
/// `[re, im]` or plain reals.
fn matrix(v: &Value) -> Result<Mat2, CliError> {
    match v {
        Value::Array(rows) => {
            let entries: Vec<&Value> = rows.iter().filter_map(Value::as_array).flatten().collect();
            if rows.len() != 2
                || entries.len() != 4
                || rows.iter().any(|r| r.as_array().map(Vec::len) != Some(2))
            {
                return Err(CliError::Input(
                    "matrix must have two rows of two entries".into(),
                ));
            }
            Ok(Mat2 {
                a11: complex(entries[0])?,
                a12: complex(entries[1])?,
                a21: complex(entries[2])?,
                a22: complex(entries[3])?,
            })
        }
        Value::Object(map) => {
            let get = |key: &str| {
                map.get(key)
                    .ok_or_else(|| CliError::Input(format!("matrix is missing `{key}`")))
                    .and_then(complex)
            };
            Ok(Mat2 {
                a11: get("a11")?,
                a12: get("a12")?,
                a21: get("a21")?,
                a22: get("a22")?,
            })
        }
        _ => Err(CliError::Input(
            "matrix must be an object or an array of rows".into(),
        )),
    }
}

fn structure(name: &str) -> Result<Structure, CliError> {
    let folded: String = name
        .chars()
        .filter(|c| *c != '_' && *c != '-')
        .collect::<String>()
        .to_lowercase();
    match folded.as_str() {
        "full" => Ok(Structure::Full),
        "scalar" => Ok(Structure::Scalar),
        "diag" | "diagonal" => Ok(Structure::Diag),
        "pentaspan" | "penta" => Ok(Structure::PentaSpan),
        _ => Err(CliError::Input(format!("unknown structure `{name}`"))),
    }
}

pub fn mu(text: &str, opts: &Options) -> Result<Output, CliError> {
    let value = parse(text)?;
    let a = matrix(
        value
            .get("matrix")
            .ok_or_else(|| CliError::Input("missing `matrix`".into()))?,
    )?;
    if ![a.a11, a.a12, a.a21, a.a22].iter().all(|z| z.is_finite()) {
        return Err(CliError::Input("matrix entries must be finite".into()));
    }
    let structure = match value.get("structure") {
        None => Structure::Full,
        Some(Value::String(s)) => structure(s)?,
        Some(other) => return Err(CliError::Input(format!("bad structure {other}"))),
    };
    let bracket = dbound::mu::mu(&a, structure, opts.resolution);
    Ok(Output::Json(serde_json::to_value(bracket)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleRequest {
    stratum: String,
    /// Only used by the `Γₙ` strata.
    #[serde(default = "default_n")]
    n: usize,
    count: Option<usize>,
}

fn default_n() -> usize {
    2
}

fn points_csv(points: &[DomainPoint]) -> Result<String, CliError> {
    let width = points
        .iter()
        .map(|p| match p {
            DomainPoint::GammaN(c) => c.n(),
            DomainPoint::Gamma2(_) => 2,
            _ => 3,
        })
        .max()
        .unwrap_or(0);
    let mut out = String::from("kind");
    for j in 0..width {
        let _ = write!(out, ",c{j}_re,c{j}_im");
    }
    out.push('\n');
    for p in points {
        let value = serde_json::to_value(p)?;
        out.push_str(value["kind"].as_str().unwrap_or_default());
        let coords: Vec<Complex64> = serde_json::from_value(value["coords"].clone())?;
        for z in coords {
            let _ = write!(out, ",{},{}", z.re, z.im);
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn sample(text: &str, opts: &Options) -> Result<Output, CliError> {
    let req: SampleRequest = serde_json::from_str(text)?;
    let stratum: Stratum = req.stratum.parse()?;
    let count = req.count.unwrap_or(opts.samples);
    let points = sample_many(stratum, req.n, count, opts.seed)?;
    if opts.csv {
        return Ok(Output::Csv(points_csv(&points)?));
    }
    Ok(Output::Json(
        json!({ "stratum": stratum.label(), "points": points }),
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InterpRequest {
    targets: Vec<Complex64>,
}

pub fn interp(text: &str, opts: &Options) -> Result<Output, CliError> {
    let req: InterpRequest = serde_json::from_str(text)?;
    let config = InterpolationConfig {
        seed: opts.seed,
        ..InterpolationConfig::default()
    };
    let found = interpolate_roots_of_unity_with(&req.targets, &config)?;
    Ok(Output::Json(
        json!({ "product": found.product, "residual": found.residual }),
    ))
}

fn checks_csv(checks: &[Check]) -> String {
    let mut out = String::from("name,passed,cases,detail\n");
    for c in checks {
        let _ = writeln!(
            out,
            "{},{},{},\"{}\"",
            c.name,
            c.passed,
            c.cases,
            c.detail.replace('"', "\"\"")
        );
    }
    out
}

pub fn selftest(opts: &Options) -> Result<Output, CliError> {
    let cfg = SelftestConfig {
        samples: opts.samples,
        seed: opts.seed,
        resolution: opts.resolution,
    };
    let checks = suite::run(&cfg);
    let passed = checks.iter().all(|c| c.passed);
    let output = if opts.csv {
        Output::Csv(checks_csv(&checks))
    } else {
        Output::Json(json!({ "passed": passed, "checks": checks }))
    };
    if passed {
        Ok(output)
    } else {
        Err(CliError::SelftestFailed(output))
    }
}
