//! Files written by the workflows.
//!
//! Floats use `{:.16e}` so that they round-trip exactly and reruns with the
//! same seed are byte-identical.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use srd_core::certify::{CertificateReport, IntegralMethod, SpectralProfile, TailMethod};
use srd_core::spectral::RhoMethod;
use srd_core::Point;

pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

pub fn point(p: &Point) -> String {
    p.coords().iter().map(|c| float(*c)).collect::<Vec<_>>().join(" ")
}

pub fn integral_method(m: IntegralMethod) -> &'static str {
    match m {
        IntegralMethod::ClosedForm => "closed-form",
        IntegralMethod::Quadrature => "quadrature",
    }
}

pub fn tail_method(m: TailMethod) -> &'static str {
    match m {
        TailMethod::DisjointSupport => "disjoint-support",
        TailMethod::Envelope => "envelope",
        TailMethod::ShellFit => "shell-fit",
    }
}

pub fn rho_method(m: RhoMethod) -> &'static str {
    match m {
        RhoMethod::Homogeneous => "homogeneous",
        RhoMethod::GridSearch => "grid-search",
    }
}

/// Output directory with its files.
pub struct OutputDir {
    root: PathBuf,
}

impl OutputDir {
    pub fn create(root: &Path) -> io::Result<Self> {
        fs::create_dir_all(root)?;
        Ok(OutputDir { root: root.to_path_buf() })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn csv(&self, name: &str, header: &[&str]) -> csv::Result<csv::Writer<fs::File>> {
        let mut w = csv::Writer::from_path(self.path(name))?;
        w.write_record(header)?;
        Ok(w)
    }

    pub fn text(&self, name: &str, body: &str) -> io::Result<()> {
        fs::write(self.path(name), body)
    }
}

pub const CERTIFICATE_HEADER: [&str; 19] = [
    "kernel",
    "triplet",
    "dim",
    "verdict",
    "rho_bar",
    "ac_measure",
    "ac_method",
    "theorem_integral",
    "theorem_error",
    "theorem_method",
    "srd_lattice_sum",
    "srd_tail",
    "srd_total",
    "srd_error",
    "tail_method",
    "decay_exponent",
    "rho_exact",
    "lattice_step",
    "reasons",
];

pub fn certificate_row(triplet: &str, r: &CertificateReport) -> Vec<String> {
    let choice = r.choice.as_ref();
    let theorem = r.theorem.as_ref();
    vec![
        r.kernel_label.clone(),
        triplet.to_string(),
        r.profile.dim.to_string(),
        r.verdict.to_string(),
        opt_float(choice.map(|c| c.rho_bar)),
        opt_float(choice.map(|c| c.ac_measure)),
        choice.map(|c| c.method.to_string()).unwrap_or_default(),
        opt_float(theorem.map(|t| t.value)),
        opt_float(theorem.map(|t| t.error)),
        theorem.map(|t| integral_method(t.method).to_string()).unwrap_or_default(),
        float(r.srd.lattice_sum),
        float(r.srd.tail),
        float(r.srd.total()),
        float(r.srd.error),
        tail_method(r.srd.method).to_string(),
        opt_float(r.srd.decay_exponent),
        r.rho_exact().to_string(),
        float(r.profile.step),
        r.reasons.join("; "),
    ]
}

/// Row for an input the pipeline refused to certify.
pub fn rejected_row(kernel: &str, triplet: &str, dim: usize, reason: &str) -> Vec<String> {
    let mut row = vec![String::new(); CERTIFICATE_HEADER.len()];
    row[0] = kernel.to_string();
    row[1] = triplet.to_string();
    row[2] = dim.to_string();
    row[3] = String::from("rejected");
    row[CERTIFICATE_HEADER.len() - 1] = reason.to_string();
    row
}

pub fn write_profile(out: &OutputDir, profile: &SpectralProfile) -> csv::Result<()> {
    let mut w = out.csv("profile.csv", &["t", "rho_tilde", "error", "method", "argmax_s1", "argmax_s2"])?;
    for (p, r) in profile.points.iter().zip(&profile.rho) {
        w.write_record([
            point(p),
            float(r.value),
            float(r.error),
            rho_method(r.method).to_string(),
            float(r.argmax.0),
            float(r.argmax.1),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn report_text(triplet: &str, r: &CertificateReport) -> String {
    let mut s = String::new();
    let line = |s: &mut String, k: &str, v: String| s.push_str(&format!("{k:<24}{v}\n"));
    line(&mut s, "kernel", r.kernel_label.clone());
    line(&mut s, "triplet", triplet.to_string());
    line(&mut s, "verdict", r.verdict.to_string());
    for (name, c) in r.integrability.conditions() {
        line(&mut s, &format!("integrability {name}"), format!("{:?} ({:.6e} ± {:.1e})", c.status, c.value, c.error));
    }
    match &r.choice {
        Some(c) => {
            line(&mut s, "rho_bar", format!("{} ({} feasible)", c.rho_bar, c.feasible.len()));
            line(&mut s, "|A^c|", format!("{:.10e} via {}", c.ac_measure, c.method));
        }
        None => line(&mut s, "rho_bar", String::from("none feasible")),
    }
    if let Some(t) = &r.theorem {
        line(
            &mut s,
            "theorem integral",
            format!("{:.10e} ± {:.1e} ({})", t.value, t.error, integral_method(t.method)),
        );
        if let Some(d) = &t.divergence {
            line(&mut s, "  divergence", d.clone());
        }
    }
    line(
        &mut s,
        "SRD integral",
        format!(
            "{:.10e} = lattice {:.10e} + tail {:.3e} ({}) ± {:.1e}",
            r.srd.total(),
            r.srd.lattice_sum,
            r.srd.tail,
            tail_method(r.srd.method),
            r.srd.error
        ),
    );
    if let Some(d) = &r.srd.divergence {
        line(&mut s, "  divergence", d.clone());
    }
    line(
        &mut s,
        "lattice",
        format!(
            "step {:.4e}, {} points, window {:.4}, rho exact: {}",
            r.profile.step,
            r.profile.points.len(),
            r.profile.window(),
            r.rho_exact()
        ),
    );
    for reason in &r.reasons {
        line(&mut s, "reason", reason.clone());
    }
    s
}
