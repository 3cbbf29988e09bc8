//! Line-oriented run configuration.
//!
//! ```text
//! # comment
//! command = certify
//! [triplet]
//! kind = stable
//! alpha = 1.0
//! [kernel]
//! kind = box
//! ```
//!
//! Keys before the first header belong to the top level. Every key is
//! consumed exactly once; unknown or repeated keys are errors naming
//! their line.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use srd_core::certify::CertifyConfig;
use srd_core::kernels::GridTable;
use srd_core::levy::{Jump, LevyMeasure, TabulatedDensity};
use srd_core::simulate::SimConfig;
use srd_core::{Kernel, LevyTriplet, Point, QuadOptions, SpectralOptions};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown key `{key}` in [{section}]")]
    UnknownKey { line: usize, section: String, key: String },
    #[error("line {line}: invalid value for `{key}`: {msg}")]
    Value { line: usize, key: String, msg: String },
    #[error("missing key `{key}` in [{section}]")]
    Missing { section: String, key: String },
    #[error("{0}")]
    Model(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

type Result<T> = std::result::Result<T, ConfigError>;

/// Workflow selected by the config or the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Certify,
    Simulate,
    Validate,
    Sweep,
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        <Command as clap::ValueEnum>::from_str(s, true)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Certify => "certify",
            Command::Simulate => "simulate",
            Command::Validate => "validate",
            Command::Sweep => "sweep",
        })
    }
}

#[derive(Debug)]
struct Entry {
    value: String,
    line: usize,
    used: bool,
}

/// Parsed `[section] key = value` document.
#[derive(Debug, Default)]
struct Document {
    sections: BTreeMap<String, BTreeMap<String, RefCell<Entry>>>,
}

const SECTIONS: [&str; 7] = ["", "triplet", "kernel", "numerics", "simulate", "validate", "sweep"];

impl Document {
    fn parse(text: &str) -> Result<Self> {
        let mut doc = Document::default();
        let mut section = String::new();
        doc.sections.insert(section.clone(), BTreeMap::new());
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(rest) = body.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| ConfigError::Syntax { line, msg: format!("unterminated section header `{body}`") })?
                    .trim()
                    .to_ascii_lowercase();
                if !SECTIONS.contains(&name.as_str()) || name.is_empty() {
                    return Err(ConfigError::Syntax { line, msg: format!("unknown section [{name}]") });
                }
                if doc.sections.contains_key(&name) {
                    return Err(ConfigError::Syntax { line, msg: format!("section [{name}] appears twice") });
                }
                doc.sections.insert(name.clone(), BTreeMap::new());
                section = name;
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| ConfigError::Syntax { line, msg: format!("expected `key = value`, found `{body}`") })?;
            let key = key.trim().to_ascii_lowercase();
            if key.is_empty() || key.contains(char::is_whitespace) {
                return Err(ConfigError::Syntax { line, msg: format!("malformed key `{key}`") });
            }
            let entries = doc.sections.get_mut(&section).expect("current section exists");
            if entries.contains_key(&key) {
                return Err(ConfigError::Syntax { line, msg: format!("key `{key}` repeated in [{section}]") });
            }
            entries.insert(key, RefCell::new(Entry { value: value.trim().to_string(), line, used: false }));
        }
        Ok(doc)
    }

    fn has(&self, section: &str) -> bool {
        self.sections.contains_key(section)
    }

    fn raw(&self, section: &str, key: &str) -> Option<(String, usize)> {
        let e = self.sections.get(section)?.get(key)?;
        let mut e = e.borrow_mut();
        e.used = true;
        Some((e.value.clone(), e.line))
    }

    fn get<T: FromStr>(&self, section: &str, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match self.raw(section, key) {
            None => Ok(None),
            Some((v, line)) => v
                .parse::<T>()
                .map(Some)
                .map_err(|e| ConfigError::Value { line, key: key.to_string(), msg: format!("`{v}`: {e}") }),
        }
    }

    fn require<T: FromStr>(&self, section: &str, key: &str) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        self.get(section, key)?
            .ok_or_else(|| ConfigError::Missing { section: section.to_string(), key: key.to_string() })
    }

    fn list<T: FromStr>(&self, section: &str, key: &str) -> Result<Option<Vec<T>>>
    where
        T::Err: fmt::Display,
    {
        match self.raw(section, key) {
            None => Ok(None),
            Some((v, line)) => v
                .split(',')
                .map(|p| {
                    p.trim().parse::<T>().map_err(|e| ConfigError::Value {
                        line,
                        key: key.to_string(),
                        msg: format!("`{}`: {e}", p.trim()),
                    })
                })
                .collect::<Result<Vec<T>>>()
                .map(Some),
        }
    }

    fn line_of(&self, section: &str, key: &str) -> usize {
        self.sections.get(section).and_then(|s| s.get(key)).map_or(0, |e| e.borrow().line)
    }

    fn unused(&self) -> Option<ConfigError> {
        for (section, entries) in &self.sections {
            for (key, e) in entries {
                let e = e.borrow();
                if !e.used {
                    let section = if section.is_empty() { "top level".to_string() } else { section.clone() };
                    return Some(ConfigError::UnknownKey { line: e.line, section, key: key.clone() });
                }
            }
        }
        None
    }
}

fn value_err(doc: &Document, section: &str, key: &str, msg: impl Into<String>) -> ConfigError {
    ConfigError::Value { line: doc.line_of(section, key), key: key.to_string(), msg: msg.into() }
}

fn read_rows(path: &Path) -> Result<Vec<Vec<f64>>> {
    let io = |source| ConfigError::Io { path: path.to_path_buf(), source };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| io(std::io::Error::other(e)))?;
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| io(std::io::Error::other(e)))?;
        let row = rec
            .iter()
            .map(|c| c.parse::<f64>())
            .collect::<std::result::Result<Vec<f64>, _>>()
            .map_err(|e| ConfigError::Model(format!("{}: record {}: {e}", path.display(), i + 1)))?;
        rows.push(row);
    }
    Ok(rows)
}

/// Scale of a stable integrator.
#[derive(Debug, Clone, PartialEq)]
pub enum StableScale {
    /// `Re K(s) = |s|^α`.
    Calibrated,
    Symmetric(f64),
    Skewed { c_pos: f64, c_neg: f64 },
}

/// Integrator description; rebuilt for every sweep value.
#[derive(Debug, Clone, PartialEq)]
pub struct TripletSpec {
    pub kind: String,
    pub drift: f64,
    pub gaussian: f64,
    pub alpha: f64,
    pub scale: StableScale,
    pub rate: f64,
    pub jumps: Vec<Jump>,
    pub density: Vec<(f64, f64)>,
    /// Name of a preset when `kind = builtin`.
    pub name: String,
}

impl TripletSpec {
    pub fn label(&self) -> String {
        match self.kind.as_str() {
            "stable" => format!("stable-{}", self.alpha),
            "builtin" => self.name.clone(),
            k => k.to_string(),
        }
    }

    pub fn build(&self) -> std::result::Result<LevyTriplet, srd_core::Error> {
        match self.kind.as_str() {
            "gaussian" => LevyTriplet::new(self.drift, self.gaussian, LevyMeasure::None),
            "stable" => {
                let measure = match self.scale {
                    StableScale::Calibrated => {
                        let c = 1.0 / srd_core::levy::stable_constant(self.alpha);
                        LevyMeasure::Stable { alpha: self.alpha, c_pos: c, c_neg: c }
                    }
                    StableScale::Symmetric(c) => LevyMeasure::Stable { alpha: self.alpha, c_pos: c, c_neg: c },
                    StableScale::Skewed { c_pos, c_neg } => LevyMeasure::Stable { alpha: self.alpha, c_pos, c_neg },
                };
                LevyTriplet::new(self.drift, self.gaussian, measure)
            }
            "compound-poisson" => LevyTriplet::new(
                self.drift,
                self.gaussian,
                LevyMeasure::CompoundPoisson { rate: self.rate, jumps: self.jumps.clone() },
            ),
            "tabulated" => LevyTriplet::new(
                self.drift,
                self.gaussian,
                LevyMeasure::Tabulated(TabulatedDensity::from_signed_samples(&self.density)?),
            ),
            "builtin" => LevyTriplet::builtins()
                .into_iter()
                .find(|(n, _)| *n == self.name)
                .map(|(_, t)| t)
                .ok_or_else(|| srd_core::Error::InvalidParameter(format!("unknown builtin `{}`", self.name))),
            other => Err(srd_core::Error::InvalidParameter(format!("unknown triplet kind `{other}`"))),
        }
    }
}

/// Kernel description; rebuilt for every sweep value.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    pub kind: String,
    pub dim: usize,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub height: f64,
    pub beta: f64,
    pub grid: Vec<Vec<f64>>,
}

impl KernelSpec {
    pub fn build(&self) -> std::result::Result<Kernel, srd_core::Error> {
        match self.kind.as_str() {
            "box" => Kernel::boxcar(&self.lo, &self.hi, self.height),
            "tent" => Kernel::tent(self.dim),
            "gaussian-bump" => Kernel::gaussian_bump(self.dim),
            "power-decay" => Kernel::power_decay(self.dim, self.beta),
            "zero" => Kernel::zero(self.dim),
            "tabulated" => Kernel::tabulated(GridTable::from_rows(self.dim, &self.grid)?),
            other => Err(srd_core::Error::InvalidParameter(format!("unknown kernel kind `{other}`"))),
        }
    }
}

/// Swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Alpha,
    Beta,
    Rate,
    Gaussian,
    Height,
    Window,
}

impl FromStr for SweepParameter {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "alpha" => SweepParameter::Alpha,
            "beta" => SweepParameter::Beta,
            "rate" => SweepParameter::Rate,
            "gaussian" => SweepParameter::Gaussian,
            "height" => SweepParameter::Height,
            "window" => SweepParameter::Window,
            _ => return Err(String::from("expected alpha, beta, rate, gaussian, height or window")),
        })
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParameter::Alpha => "alpha",
            SweepParameter::Beta => "beta",
            SweepParameter::Rate => "rate",
            SweepParameter::Gaussian => "gaussian",
            SweepParameter::Height => "height",
            SweepParameter::Window => "window",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

/// Validation suite sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidateSpec {
    pub pairs: usize,
    pub draws: usize,
    pub seed: u64,
    pub rho_bar: f64,
    pub lags: Vec<Point>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub output: Option<PathBuf>,
    pub triplet: TripletSpec,
    pub kernel: KernelSpec,
    pub certify: CertifyConfig,
    pub threads: Option<usize>,
    pub simulate: Option<SimConfig>,
    pub validate: ValidateSpec,
    pub sweep: Option<SweepSpec>,
}

fn parse_point(doc: &Document, section: &str, key: &str, text: &str, dim: usize) -> Result<Point> {
    let coords = text
        .split(',')
        .map(|c| c.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<f64>, _>>()
        .map_err(|e| value_err(doc, section, key, format!("`{text}`: {e}")))?;
    if coords.len() != dim {
        return Err(value_err(doc, section, key, format!("point `{text}` needs {dim} coordinates")));
    }
    Ok(Point::new(&coords))
}

/// `;`-separated points with `,`-separated coordinates.
fn points(doc: &Document, section: &str, key: &str, dim: usize) -> Result<Option<Vec<Point>>> {
    match doc.raw(section, key) {
        None => Ok(None),
        Some((v, _)) => v.split(';').map(|p| parse_point(doc, section, key, p, dim)).collect::<Result<_>>().map(Some),
    }
}

impl RunConfig {
    /// Reads and parses `path`; relative data files resolve against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let doc = Document::parse(text)?;
        let command = doc.get::<Command>("", "command")?;
        let output = doc.get::<PathBuf>("", "output")?;

        for needed in ["triplet", "kernel"] {
            if !doc.has(needed) {
                return Err(ConfigError::Missing { section: needed.to_string(), key: String::from("kind") });
            }
        }
        let triplet = Self::triplet(&doc, base)?;
        let kernel = Self::kernel(&doc, base)?;
        let (certify, threads) = Self::numerics(&doc)?;
        let simulate = if doc.has("simulate") { Some(Self::simulation(&doc, kernel.dim)?) } else { None };
        let validate = Self::validation(&doc, kernel.dim)?;
        let sweep = if doc.has("sweep") {
            let parameter = doc.require("sweep", "parameter")?;
            let values: Vec<f64> = doc
                .list("sweep", "values")?
                .ok_or_else(|| ConfigError::Missing { section: "sweep".into(), key: "values".into() })?;
            Some(SweepSpec { parameter, values })
        } else {
            None
        };
        if let Some(e) = doc.unused() {
            return Err(e);
        }
        Ok(RunConfig { command, output, triplet, kernel, certify, threads, simulate, validate, sweep })
    }

    fn triplet(doc: &Document, base: &Path) -> Result<TripletSpec> {
        let s = "triplet";
        let kind: String = doc.require(s, "kind")?;
        let mut spec = TripletSpec {
            kind: kind.clone(),
            drift: doc.get(s, "drift")?.unwrap_or(0.0),
            gaussian: 0.0,
            alpha: 0.0,
            scale: StableScale::Calibrated,
            rate: 0.0,
            jumps: Vec::new(),
            density: Vec::new(),
            name: String::new(),
        };
        match kind.as_str() {
            "gaussian" => spec.gaussian = doc.get(s, "gaussian")?.unwrap_or(1.0),
            "stable" => {
                spec.alpha = doc.require(s, "alpha")?;
                spec.gaussian = doc.get(s, "gaussian")?.unwrap_or(0.0);
                let scale = doc.raw(s, "scale");
                let (cp, cn) = (doc.get::<f64>(s, "c_pos")?, doc.get::<f64>(s, "c_neg")?);
                spec.scale = match (scale, cp, cn) {
                    (None, None, None) => StableScale::Calibrated,
                    (Some((v, _)), None, None) if v == "calibrated" => StableScale::Calibrated,
                    (Some((v, line)), None, None) => StableScale::Symmetric(v.parse().map_err(|e| {
                        ConfigError::Value { line, key: "scale".into(), msg: format!("`{v}`: {e}") }
                    })?),
                    (None, Some(c_pos), Some(c_neg)) => StableScale::Skewed { c_pos, c_neg },
                    _ => return Err(value_err(doc, s, "scale", "give `scale` or both `c_pos` and `c_neg`")),
                };
            }
            "compound-poisson" => {
                spec.gaussian = doc.get(s, "gaussian")?.unwrap_or(0.0);
                spec.rate = doc.require(s, "rate")?;
                let (v, _) = doc
                    .raw(s, "jumps")
                    .ok_or_else(|| ConfigError::Missing { section: s.into(), key: "jumps".into() })?;
                spec.jumps = v
                    .split(',')
                    .map(|p| {
                        let (a, w) = p.split_once(':').unwrap_or((p, "1"));
                        match (a.trim().parse::<f64>(), w.trim().parse::<f64>()) {
                            (Ok(atom), Ok(weight)) => Ok(Jump { atom, weight }),
                            _ => Err(value_err(doc, s, "jumps", format!("`{}` is not `atom:weight`", p.trim()))),
                        }
                    })
                    .collect::<Result<_>>()?;
            }
            "tabulated" => {
                spec.gaussian = doc.get(s, "gaussian")?.unwrap_or(0.0);
                let file: PathBuf = doc.require(s, "file")?;
                let rows = read_rows(&base.join(file))?;
                spec.density = rows
                    .iter()
                    .map(|r| match r.as_slice() {
                        [y, d] => Ok((*y, *d)),
                        _ => Err(value_err(doc, s, "file", "density rows need exactly `y, density`")),
                    })
                    .collect::<Result<_>>()?;
            }
            "builtin" => {
                spec.name = doc.require(s, "name")?;
                if !LevyTriplet::builtins().iter().any(|(n, _)| *n == spec.name) {
                    let names: Vec<&str> = LevyTriplet::builtins().iter().map(|b| b.0).collect();
                    return Err(value_err(doc, s, "name", format!("expected one of {}", names.join(", "))));
                }
            }
            other => {
                return Err(value_err(
                    doc,
                    s,
                    "kind",
                    format!("`{other}`: expected gaussian, stable, compound-poisson, tabulated or builtin"),
                ))
            }
        }
        Ok(spec)
    }

    fn kernel(doc: &Document, base: &Path) -> Result<KernelSpec> {
        let s = "kernel";
        let kind: String = doc.require(s, "kind")?;
        let dim: usize = doc.get(s, "dim")?.unwrap_or(1);
        if !(1..=3).contains(&dim) {
            return Err(value_err(doc, s, "dim", "dimension must be 1, 2 or 3"));
        }
        let mut spec = KernelSpec { kind: kind.clone(), dim, lo: vec![], hi: vec![], height: 1.0, beta: 0.0, grid: vec![] };
        match kind.as_str() {
            "box" => {
                spec.lo = doc.list(s, "lo")?.unwrap_or_else(|| vec![0.0; dim]);
                spec.hi = doc.list(s, "hi")?.unwrap_or_else(|| vec![1.0; dim]);
                spec.height = doc.get(s, "height")?.unwrap_or(1.0);
                if spec.lo.len() != dim || spec.hi.len() != dim {
                    return Err(value_err(doc, s, "lo", format!("box corners need {dim} coordinates")));
                }
            }
            "tent" | "gaussian-bump" | "zero" => {}
            "power-decay" => spec.beta = doc.require(s, "beta")?,
            "tabulated" => {
                let file: PathBuf = doc.require(s, "file")?;
                spec.grid = read_rows(&base.join(file))?;
            }
            other => {
                return Err(value_err(
                    doc,
                    s,
                    "kind",
                    format!("`{other}`: expected box, tent, gaussian-bump, power-decay, zero or tabulated"),
                ))
            }
        }
        Ok(spec)
    }

    fn numerics(doc: &Document) -> Result<(CertifyConfig, Option<usize>)> {
        let s = "numerics";
        let mut c = CertifyConfig::default();
        let q: &mut QuadOptions = &mut c.spectral.quad;
        if let Some(v) = doc.get(s, "rel_tol")? {
            q.rel_tol = v;
        }
        if let Some(v) = doc.get(s, "abs_tol")? {
            q.abs_tol = v;
        }
        if let Some(v) = doc.get(s, "max_subdivisions")? {
            q.max_subdivisions = v;
        }
        let sp: &mut SpectralOptions = &mut c.spectral;
        if let Some(v) = doc.get(s, "s_min")? {
            sp.s_box.0 = v;
        }
        if let Some(v) = doc.get(s, "s_max")? {
            sp.s_box.1 = v;
        }
        if let Some(v) = doc.get(s, "grid_points")? {
            sp.grid_points = v;
        }
        if let Some(v) = doc.get(s, "refine_rounds")? {
            sp.refine_rounds = v;
        }
        if let Some(v) = doc.get(s, "clamp_tol")? {
            sp.clamp_tol = v;
        }
        if let Some(v) = doc.list(s, "candidates")? {
            c.candidates = v;
        }
        c.window = doc.get(s, "window")?;
        c.lattice_half_points = doc.get(s, "lattice_points")?;
        if let Some(v) = doc.get(s, "profile_s_min")? {
            c.s_grid.0 = v;
        }
        if let Some(v) = doc.get(s, "profile_s_max")? {
            c.s_grid.1 = v;
        }
        if let Some(v) = doc.get(s, "profile_points")? {
            c.s_grid.2 = v;
        }
        let threads: Option<usize> = doc.get(s, "threads")?;
        if threads == Some(0) {
            return Err(value_err(doc, s, "threads", "worker count must be positive"));
        }
        c.validate().map_err(|e| ConfigError::Model(format!("[numerics]: {e}")))?;
        Ok((c, threads))
    }

    fn simulation(doc: &Document, dim: usize) -> Result<SimConfig> {
        let s = "simulate";
        Ok(SimConfig {
            step: doc.get(s, "step")?.unwrap_or(0.01),
            window: doc.get(s, "window")?.unwrap_or(4.0),
            samples: doc.get(s, "samples")?.unwrap_or(10_000),
            seed: doc.get(s, "seed")?.unwrap_or(1),
            lags: points(doc, s, "lags", dim)?.unwrap_or_default(),
        })
    }

    fn validation(doc: &Document, dim: usize) -> Result<ValidateSpec> {
        let s = "validate";
        let default_lag = |x: f64| {
            let mut c = vec![0.0; dim];
            c[0] = x;
            Point::new(&c)
        };
        let rho_bar: f64 = doc.get(s, "rho_bar")?.unwrap_or(0.5);
        if !(rho_bar > 0.0 && rho_bar < 1.0) {
            return Err(value_err(doc, s, "rho_bar", "must lie in (0, 1)"));
        }
        Ok(ValidateSpec {
            pairs: doc.get(s, "pairs")?.unwrap_or(100_000),
            draws: doc.get(s, "draws")?.unwrap_or(1_000),
            seed: doc.get(s, "seed")?.unwrap_or(1),
            rho_bar,
            lags: points(doc, s, "lags", dim)?.unwrap_or_else(|| vec![default_lag(0.6), default_lag(0.8)]),
        })
    }

    /// Applies a sweep value to a copy of the configuration.
    pub fn with_parameter(&self, parameter: SweepParameter, value: f64) -> RunConfig {
        let mut c = self.clone();
        match parameter {
            SweepParameter::Alpha => c.triplet.alpha = value,
            SweepParameter::Beta => c.kernel.beta = value,
            SweepParameter::Rate => c.triplet.rate = value,
            SweepParameter::Gaussian => c.triplet.gaussian = value,
            SweepParameter::Height => c.kernel.height = value,
            SweepParameter::Window => c.certify.window = Some(value),
        }
        c
    }

    /// Overrides every seed in the configuration.
    pub fn set_seed(&mut self, seed: u64) {
        if let Some(sim) = &mut self.simulate {
            sim.seed = seed;
        }
        self.validate.seed = seed;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "
# reference configuration
command = certify
[triplet]
kind = stable
alpha = 1.0
[kernel]
kind = box
[numerics]
candidates = 0.5, 0.25
";

    #[test]
    fn parses_reference_config() {
        let c = RunConfig::parse(EXAMPLE, Path::new(".")).unwrap();
        assert_eq!(c.command, Some(Command::Certify));
        assert_eq!(c.triplet.alpha, 1.0);
        assert_eq!(c.triplet.scale, StableScale::Calibrated);
        assert_eq!(c.certify.candidates, vec![0.5, 0.25]);
        let t = c.triplet.build().unwrap();
        assert!((t.eval_re_k(2.0).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn errors_name_the_line() {
        let bad = EXAMPLE.replace("alpha = 1.0", "alpha = one");
        let e = RunConfig::parse(&bad, Path::new(".")).unwrap_err();
        assert!(e.to_string().starts_with("line 6:"), "{e}");
        let typo = EXAMPLE.replace("kind = box", "kind = box\nhieght = 2");
        let e = RunConfig::parse(&typo, Path::new(".")).unwrap_err();
        assert!(e.to_string().starts_with("line 9: unknown key `hieght`"), "{e}");
        let e = RunConfig::parse("[triplet\nkind = gaussian", Path::new(".")).unwrap_err();
        assert!(e.to_string().starts_with("line 1:"), "{e}");
        let e = RunConfig::parse("kind gaussian", Path::new(".")).unwrap_err();
        assert!(e.to_string().starts_with("line 1:"), "{e}");
    }

    #[test]
    fn compound_poisson_jumps_and_lags() {
        let text = "
[triplet]
kind = compound-poisson
rate = 2
jumps = -1:0.25, 0.5:0.75
[kernel]
kind = tent
dim = 2
[simulate]
lags = 0.5, 0; 1, 1
";
        let c = RunConfig::parse(text, Path::new(".")).unwrap();
        assert_eq!(c.triplet.jumps.len(), 2);
        assert_eq!(c.triplet.jumps[1].weight, 0.75);
        let sim = c.simulate.unwrap();
        assert_eq!(sim.lags.len(), 2);
        assert_eq!(sim.lags[1].coords(), &[1.0, 1.0]);
    }
}
