//! The analysis document behind `polyadj analyze`, in JSON and text.

use std::fmt::Write as _;

use anyhow::Result;
use serde::Serialize;

use polyadj_core::adjunction::{self, LemmaOutcome};
use polyadj_core::fan::normal_fan;
use polyadj_core::format::PolytopeInput;
use polyadj_core::ratmath::format_rational;
use polyadj_core::spectrum::{codegree_step, spectrum_superset, CoreNormalConfig};
use polyadj_core::{HPolytope, Rational};

/// Exact values are strings: `p/q`, or `p` for integers.
#[derive(Debug, Serialize)]
pub struct AnalysisDocument {
    pub input: InputEcho,
    pub qcd: String,
    pub c_star: String,
    pub core: Core,
    pub core_normals: Vec<Vec<String>>,
    pub acore: Hull,
    pub fan: FanSummary,
    pub lemmas: Lemmas,
    pub spectrum: Spectrum,
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub normal: Vec<String>,
    pub rhs: String,
}

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub dim: usize,
    /// Canonical facet description, `<normal, x> <= rhs`.
    pub inequalities: Vec<Row>,
    /// Largest feasible shift of the rows exactly as written; present for
    /// inequality input with integral normals.
    pub raw_c_star: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Core {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    /// Equations `<normal, x> = rhs` cutting out the affine hull.
    pub affine_hull: Vec<Row>,
}

#[derive(Debug, Serialize)]
pub struct Hull {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct FanSummary {
    pub smooth: bool,
    pub gorenstein_index: Option<String>,
    pub canonicity_threshold: String,
    pub alpha: Option<String>,
    pub alpha_canonical: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub outcome: &'static str,
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Lemmas {
    /// Scale used by the lattice-point check, absent when it was skipped.
    pub alpha: Option<String>,
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

#[derive(Debug, Serialize)]
pub struct Spectrum {
    pub epsilon: String,
    pub step: String,
    pub candidates: Vec<String>,
    pub contains_qcd: bool,
}

fn s(x: &Rational) -> String {
    format_rational(x)
}

fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn analyze(
    input: &PolytopeInput,
    p: &HPolytope,
    alpha: Option<&Rational>,
    epsilon: &Rational,
) -> Result<AnalysisDocument> {
    let report = adjunction::analyze(p)?;
    let fan = normal_fan(p);
    let threshold = fan.canonicity_threshold()?.threshold;
    let alpha_canonical = alpha.map(|a| *a <= threshold);
    let (lemma_alpha, canonical) = match alpha {
        Some(a) => (a.clone(), *a <= threshold),
        None => (threshold.clone(), true),
    };
    let lemmas = adjunction::verify_lemmas_at(&report, p, &lemma_alpha, canonical)?;

    let cfg = CoreNormalConfig::new(p.dim(), report.core_normals.clone())?;
    let step = codegree_step(&cfg)?.step;
    let candidates = spectrum_superset(&cfg, epsilon)?;

    let raw_c_star = input
        .raw_system()
        .and_then(|sys| adjunction::raw_c_star(&sys).ok())
        .map(|c| s(&c));

    Ok(AnalysisDocument {
        input: InputEcho {
            dim: p.dim(),
            inequalities: p
                .normals()
                .iter()
                .zip(p.rhs())
                .map(|(a, b)| Row {
                    normal: strs(a),
                    rhs: s(b),
                })
                .collect(),
            raw_c_star,
        },
        qcd: s(&report.qcd),
        c_star: s(&report.c_star),
        core: Core {
            dim: report.core.dim(),
            vertices: report.core.vertices().iter().map(|v| strs(v)).collect(),
            affine_hull: report
                .caff
                .equations()
                .iter()
                .map(|(a, b)| Row {
                    normal: strs(a),
                    rhs: s(b),
                })
                .collect(),
        },
        core_normals: report.core_normals.iter().map(|a| strs(a)).collect(),
        acore: Hull {
            dim: report.acore.dim(),
            vertices: report.acore.vertices().iter().map(|v| strs(v)).collect(),
        },
        fan: FanSummary {
            smooth: fan.is_smooth(),
            gorenstein_index: fan.gorenstein_index().map(|r| r.to_string()),
            canonicity_threshold: s(&threshold),
            alpha: alpha.map(s),
            alpha_canonical,
        },
        lemmas: Lemmas {
            alpha: lemmas.alpha.as_ref().map(s),
            checks: lemmas
                .outcomes()
                .into_iter()
                .map(|(name, o)| Check {
                    name,
                    outcome: o.label(),
                    detail: match o {
                        LemmaOutcome::Pass => None,
                        LemmaOutcome::Fail { witness } => Some(witness.clone()),
                        LemmaOutcome::Skipped { reason } => Some(reason.clone()),
                    },
                })
                .collect(),
            all_pass: lemmas.all_pass(),
        },
        spectrum: Spectrum {
            epsilon: s(epsilon),
            step: s(&step),
            contains_qcd: candidates.contains(&report.qcd),
            candidates: candidates.iter().map(s).collect(),
        },
    })
}

fn tuple(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

fn row(r: &Row, rel: &str) -> String {
    format!("{} {rel} {}", r.normal.join(" "), r.rhs)
}

/// Plain-text rendering of the same values as the JSON form.
pub fn to_text(doc: &AnalysisDocument) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(
        w,
        "input: dim {}, {} facets",
        doc.input.dim,
        doc.input.inequalities.len()
    );
    for r in &doc.input.inequalities {
        let _ = writeln!(w, "  {}", row(r, "<="));
    }
    if let Some(raw) = &doc.input.raw_c_star {
        let _ = writeln!(w, "raw c_star: {raw}");
    }
    let _ = writeln!(w, "c_star: {}", doc.c_star);
    let _ = writeln!(w, "qcd: {}", doc.qcd);
    let _ = writeln!(w, "core: dim {}", doc.core.dim);
    for v in &doc.core.vertices {
        let _ = writeln!(w, "  vertex {}", tuple(v));
    }
    for r in &doc.core.affine_hull {
        let _ = writeln!(w, "  hull {}", row(r, "="));
    }
    let normals: Vec<String> = doc.core_normals.iter().map(|a| tuple(a)).collect();
    let _ = writeln!(w, "core normals: {}", normals.join(" "));
    let _ = writeln!(w, "acore: dim {}", doc.acore.dim);
    for v in &doc.acore.vertices {
        let _ = writeln!(w, "  vertex {}", tuple(v));
    }
    let f = &doc.fan;
    let _ = writeln!(
        w,
        "fan: smooth {}, gorenstein index {}, canonicity threshold {}",
        f.smooth,
        f.gorenstein_index.as_deref().unwrap_or("none"),
        f.canonicity_threshold
    );
    if let (Some(a), Some(c)) = (&f.alpha, f.alpha_canonical) {
        let _ = writeln!(w, "  {a}-canonical: {c}");
    }
    let _ = writeln!(
        w,
        "lemmas (alpha {}):",
        doc.lemmas.alpha.as_deref().unwrap_or("none")
    );
    for c in &doc.lemmas.checks {
        match &c.detail {
            Some(d) => {
                let _ = writeln!(w, "  {}: {} ({d})", c.name, c.outcome);
            }
            None => {
                let _ = writeln!(w, "  {}: {}", c.name, c.outcome);
            }
        }
    }
    let sp = &doc.spectrum;
    let _ = writeln!(w, "spectrum (epsilon {}): step {}", sp.epsilon, sp.step);
    let _ = writeln!(w, "  candidates: {}", sp.candidates.join(" "));
    let _ = writeln!(w, "  contains qcd: {}", sp.contains_qcd);
    out
}
