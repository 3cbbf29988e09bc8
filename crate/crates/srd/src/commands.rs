//! The four workflows. Each writes its files into the output directory and
//! returns a [`Status`] that maps onto the process exit code.

use anyhow::{Context, Result};
use log::{info, warn};

use srd_core::certify::{certify, theorem_integral, CertificateReport, CertifyConfig, SpectralProfile, Verdict};
use srd_core::levy::NegDefCheck;
use srd_core::simulate::{empirical_char, gap_sweep, lemma4_check, sample_field, SimConfig, TestMeasure};
use srd_core::{Error, Kernel, LevyTriplet, Spectral};

use crate::config::{Command, RunConfig};
use crate::output::{self, float, OutputDir};

/// Outcome of a workflow, ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Inconclusive,
    /// Rejected input or failed validation.
    Failed,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Inconclusive => 2,
            Status::Failed => 3,
        }
    }
}

/// Characteristic-function grid for simulation checks.
pub const CHAR_GRID: [f64; 10] = [0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0];

/// Half-width of the acceptance band, in units of `1/√N`.
pub const CHAR_BAND: f64 = 4.0;

pub fn run(command: Command, config: &RunConfig, out: &OutputDir) -> Result<Status> {
    match command {
        Command::Certify => run_certify(config, out),
        Command::Simulate => run_simulate(config, out),
        Command::Validate => run_validate(config, out),
        Command::Sweep => run_sweep(config, out),
    }
}

fn build(config: &RunConfig) -> Result<(Kernel, LevyTriplet)> {
    let kernel = config.kernel.build().context("building kernel")?;
    let triplet = config.triplet.build().context("building triplet")?;
    Ok((kernel, triplet))
}

/// Certification, with rejection as a value rather than an error.
fn certify_or_reject(kernel: &Kernel, triplet: &LevyTriplet, config: &CertifyConfig) -> Result<std::result::Result<CertificateReport, String>> {
    match certify(kernel, triplet, config) {
        Ok(r) => Ok(Ok(r)),
        Err(Error::Rejected(msg)) => Ok(Err(msg)),
        Err(e) => Err(e).context("certification"),
    }
}

fn verdict_status(v: Verdict) -> Status {
    match v {
        Verdict::CertifiedSrd => Status::Pass,
        Verdict::Inconclusive => Status::Inconclusive,
    }
}

fn run_certify(config: &RunConfig, out: &OutputDir) -> Result<Status> {
    let (kernel, triplet) = build(config)?;
    let label = config.triplet.label();
    let mut w = out.csv("certificate.csv", &output::CERTIFICATE_HEADER)?;
    let status = match certify_or_reject(&kernel, &triplet, &config.certify)? {
        Ok(report) => {
            info!("{}: {}", report.kernel_label, report.verdict);
            w.write_record(output::certificate_row(&label, &report))?;
            out.text("report.txt", &output::report_text(&label, &report))?;
            output::write_profile(out, &report.profile)?;
            verdict_status(report.verdict)
        }
        Err(reason) => {
            warn!("rejected: {reason}");
            w.write_record(output::rejected_row(kernel.label(), &label, kernel.dim(), &reason))?;
            out.text("report.txt", &format!("verdict                 rejected\nreason                  {reason}\n"))?;
            Status::Failed
        }
    };
    w.flush()?;
    Ok(status)
}

fn sim_config(config: &RunConfig) -> SimConfig {
    config.simulate.clone().unwrap_or(SimConfig { step: 0.01, window: 4.0, samples: 10_000, seed: 1, lags: vec![] })
}

fn run_simulate(config: &RunConfig, out: &OutputDir) -> Result<Status> {
    let (kernel, triplet) = build(config)?;
    let sim = sim_config(config);
    let label = config.triplet.label();
    let sample = match sample_field(&kernel, &triplet, &label, &sim) {
        Ok(s) => s,
        Err(Error::Rejected(msg)) => {
            warn!("simulation rejected: {msg}");
            out.text("report.txt", &format!("simulation rejected: {msg}\n"))?;
            return Ok(Status::Failed);
        }
        Err(e) => return Err(e).context("simulation"),
    };
    info!("{} draws of {} columns", sample.rows, sample.columns);

    let mut header = vec![String::from("x0")];
    header.extend((1..sample.columns).map(|c| format!("x_lag{c}")));
    let mut w = csv::Writer::from_path(out.path("samples.csv"))?;
    w.write_record(&header)?;
    for k in 0..sample.rows {
        w.write_record(sample.row(k).iter().map(|x| float(*x)))?;
    }
    w.flush()?;

    let sp = Spectral::new(&kernel, &triplet, config.certify.spectral)?;
    let band = CHAR_BAND / (sample.rows as f64).sqrt();
    let mut w = out.csv(
        "characteristic.csv",
        &["column", "lag", "s", "empirical_re", "empirical_im", "exact_re", "exact_im", "distance", "band", "pass"],
    )?;
    let mut worst: f64 = 0.0;
    for c in 0..sample.columns {
        let lag = if c == 0 { String::new() } else { output::point(&sample.lags[c - 1]) };
        for &s in &CHAR_GRID {
            // column 0 is the marginal, lag columns the joint law at (s, s)
            let (emp, exact) = if c == 0 {
                (empirical_char(&sample, 0.0, s, 0), sp.char_x0(s)?.value)
            } else {
                (empirical_char(&sample, s, s, c), sp.char_joint(&sample.lags[c - 1], s, s)?.value)
            };
            let d = (emp - exact).norm();
            worst = worst.max(d);
            w.write_record([
                c.to_string(),
                lag.clone(),
                float(s),
                float(emp.re),
                float(emp.im),
                float(exact.re),
                float(exact.im),
                float(d),
                float(band),
                (d <= band).to_string(),
            ])?;
        }
    }
    w.flush()?;
    let pass = worst <= band;
    out.text(
        "report.txt",
        &format!(
            "kernel                {}\ntriplet               {label}\nsamples               {}\nstep                  {}\nwindow                {}\nseed                  {}\nmax |phi_hat - phi|   {worst:.6e}\nband                  {band:.6e}\nresult                {}\n",
            kernel.label(),
            sample.rows,
            sim.step,
            sim.window,
            sim.seed,
            if pass { "pass" } else { "fail" }
        ),
    )?;
    Ok(if pass { Status::Pass } else { Status::Failed })
}

const NEGDEF_NAMES: [(NegDefCheck, &str); 5] = [
    (NegDefCheck::NonNegativeReal, "re-k-nonnegative"),
    (NegDefCheck::Hermitian, "hermitian"),
    (NegDefCheck::Complex, "complex-bound"),
    (NegDefCheck::RealPart, "real-part-bound"),
    (NegDefCheck::LowerBound, "lower-bound"),
];

fn run_validate(config: &RunConfig, out: &OutputDir) -> Result<Status> {
    let (kernel, triplet) = build(config)?;
    let v = &config.validate;
    let mut w = out.csv("validation.csv", &["suite", "case", "inputs", "lhs", "rhs", "margin", "pass"])?;
    let mut failures = 0usize;
    let mut report = String::new();

    let nd = triplet.check_negdef_inequalities(v.pairs, v.seed)?;
    for (check, name) in NEGDEF_NAMES {
        let n = nd.by_check[check as usize];
        failures += n;
        w.write_record([
            "negdef",
            name,
            &format!("pairs={} seed={}", nd.pairs, v.seed),
            &n.to_string(),
            "0",
            &float(-(n as f64) + 0.0),
            &(n == 0).to_string(),
        ])?;
    }
    report.push_str(&format!("negdef      {} violations over {} pairs\n", nd.violations, nd.pairs));

    let sp = Spectral::new(&kernel, &triplet, config.certify.spectral)?;
    let gaps = gap_sweep(&sp, v.draws, v.seed)?;
    for (i, c) in gaps.checks.iter().enumerate() {
        w.write_record([
            String::from("covariance-gap"),
            i.to_string(),
            format!("t={} s1={} s2={}", output::point(&c.t), float(c.s1), float(c.s2)),
            float(c.gap),
            float(c.bound),
            float(c.bound - c.gap),
            c.holds.to_string(),
        ])?;
    }
    failures += gaps.violations.len();
    report.push_str(&format!(
        "gap         {} violations over {} draws (worst gap - bound {:.3e})\n",
        gaps.violations.len(),
        gaps.draws,
        gaps.worst_excess
    ));

    let mut sim = sim_config(config);
    sim.lags = v.lags.clone();
    match sample_field(&kernel, &triplet, &config.triplet.label(), &sim) {
        Ok(sample) => {
            let cfg = CertifyConfig { lattice_half_points: Some(1), ..config.certify.clone() };
            let profile = SpectralProfile::build(&sp, &cfg)?;
            let ti = theorem_integral(&sp, &profile, v.rho_bar)?;
            let measures = [
                ("point-mass", TestMeasure::PointMass(0.0)),
                ("three-atom", TestMeasure::discrete(vec![-1.0, 0.0, 1.0], vec![1.0 / 3.0; 3])?),
                ("gaussian", TestMeasure::gaussian(0.0, 1.0)?),
            ];
            let mut checked = 0;
            for (col, lag) in sample.lags.iter().enumerate() {
                let rho = sp.rho_tilde(lag)?.value;
                for (name, mu) in &measures {
                    let inputs = format!(
                        "t={} rho_tilde={} rho_bar={} integral={}",
                        output::point(lag),
                        float(rho),
                        float(v.rho_bar),
                        float(ti.value)
                    );
                    match lemma4_check(&sample, col + 1, mu, rho, v.rho_bar, ti.value) {
                        Ok(c) => {
                            checked += 1;
                            failures += (!c.holds) as usize;
                            w.write_record([
                                String::from("averaged-covariance"),
                                name.to_string(),
                                format!("{inputs} se={}", float(c.std_error)),
                                float(c.lhs),
                                float(c.rhs),
                                float(c.margin()),
                                c.holds.to_string(),
                            ])?;
                        }
                        Err(Error::Rejected(msg)) => {
                            w.write_record(["averaged-covariance", name, &inputs, "", "", "", "skipped"])?;
                            report.push_str(&format!("skipped     {name} at {lag}: {msg}\n"));
                        }
                        Err(e) => return Err(e).context("averaged covariance check"),
                    }
                }
            }
            report.push_str(&format!("averaged    {checked} checks from {} draws\n", sample.rows));
        }
        Err(Error::Rejected(msg)) => report.push_str(&format!("averaged    not run: {msg}\n")),
        Err(e) => return Err(e).context("simulation for the averaged covariance check"),
    }
    w.flush()?;
    report.push_str(&format!("failures    {failures}\n"));
    out.text("report.txt", &report)?;
    Ok(if failures == 0 { Status::Pass } else { Status::Failed })
}

fn run_sweep(config: &RunConfig, out: &OutputDir) -> Result<Status> {
    let sweep = config.sweep.as_ref().context("the sweep workflow needs a [sweep] section")?;
    let mut header = vec!["parameter", "value"];
    header.extend(output::CERTIFICATE_HEADER);
    let mut w = out.csv("sweep.csv", &header)?;
    let mut worst = Status::Pass;
    for &value in &sweep.values {
        let c = config.with_parameter(sweep.parameter, value);
        let (kernel, triplet) = match build(&c) {
            Ok(b) => b,
            Err(e) => {
                let reason = format!("{e:#}");
                warn!("{} = {value}: {reason}", sweep.parameter);
                let mut row = vec![sweep.parameter.to_string(), float(value)];
                row.extend(output::rejected_row(&c.kernel.kind, &c.triplet.label(), c.kernel.dim, &reason));
                w.write_record(row)?;
                worst = worst.max(Status::Failed);
                continue;
            }
        };
        let label = c.triplet.label();
        let mut row = vec![sweep.parameter.to_string(), float(value)];
        match certify_or_reject(&kernel, &triplet, &c.certify)? {
            Ok(report) => {
                info!("{} = {value}: {}", sweep.parameter, report.verdict);
                worst = worst.max(verdict_status(report.verdict));
                row.extend(output::certificate_row(&label, &report));
            }
            Err(reason) => {
                worst = worst.max(Status::Failed);
                row.extend(output::rejected_row(kernel.label(), &label, kernel.dim(), &reason));
            }
        }
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(worst)
}
