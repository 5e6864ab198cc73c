//! Batch runs over seeded random polytopes.

use std::io::Write;

use anyhow::{Context, Result};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use polyadj_core::adjunction::{self, verify_lemmas_at};
use polyadj_core::fan::normal_fan;
use polyadj_core::generators;
use polyadj_core::ratmath::format_rational;
use polyadj_core::spectrum::{spectrum_superset, CoreNormalConfig};
use polyadj_core::Rational;

/// Bumped whenever the columns change.
pub const CSV_VERSION: u32 = 1;

pub const COLUMNS: [&str; 11] = [
    "index",
    "seed",
    "facets",
    "qcd",
    "c_star",
    "canonicity_threshold",
    "gorenstein_index",
    "alpha_canonical",
    "lemmas",
    "qcd_in_superset",
    "dilation_check",
];

pub struct Settings {
    pub count: u64,
    pub dim: usize,
    pub points: usize,
    pub half_width: i64,
    pub seed: u64,
    pub alpha: Option<Rational>,
    pub epsilon: Rational,
}

struct Row {
    fields: Vec<String>,
    qcd: Rational,
    alpha_canonical: bool,
    lemma_failure: bool,
    superset_miss: bool,
    dilation_failure: bool,
}

#[derive(Serialize)]
pub struct Summary {
    pub csv_version: u32,
    pub count: u64,
    pub dim: usize,
    pub points: usize,
    #[serde(rename = "box")]
    pub half_width: i64,
    pub seed: u64,
    pub alpha: Option<String>,
    pub epsilon: String,
    pub alpha_canonical: u64,
    pub lemma_failures: u64,
    pub superset_misses: u64,
    pub dilation_failures: u64,
    /// Distinct codegrees `>= epsilon` among alpha-canonical instances,
    /// descending.
    pub distinct_qcd: Vec<String>,
}

fn flag(b: bool) -> String {
    if b { "true" } else { "false" }.to_string()
}

fn run_one(cfg: &Settings, index: u64) -> Result<Row> {
    let seed = cfg.seed.wrapping_add(index);
    let p = generators::random(cfg.dim, cfg.points, seed, cfg.half_width)?;
    let report = adjunction::analyze(&p)?;
    let fan = normal_fan(&p);
    let threshold = fan.canonicity_threshold()?.threshold;
    let index_r = fan.gorenstein_index();
    let (alpha, alpha_canonical) = match &cfg.alpha {
        Some(a) => (a.clone(), *a <= threshold),
        None => (threshold.clone(), true),
    };
    let lemmas = verify_lemmas_at(&report, &p, &alpha, alpha_canonical)?;

    let in_superset = if report.qcd >= cfg.epsilon {
        let normals = CoreNormalConfig::new(p.dim(), report.core_normals.clone())?;
        Some(spectrum_superset(&normals, &cfg.epsilon)?.contains(&report.qcd))
    } else {
        None
    };
    let (_, dilated) = adjunction::qcodegree(&p.dilate(&BigInt::from(2))?)?;
    let dilation_ok = dilated * Rational::from_integer(2.into()) == report.qcd;

    let fields = vec![
        index.to_string(),
        seed.to_string(),
        p.len().to_string(),
        format_rational(&report.qcd),
        format_rational(&report.c_star),
        format_rational(&threshold),
        index_r.map_or_else(|| "none".to_string(), |r| r.to_string()),
        flag(alpha_canonical),
        if lemmas.all_pass() { "pass" } else { "fail" }.to_string(),
        in_superset.map_or_else(|| "below_epsilon".to_string(), flag),
        if dilation_ok { "pass" } else { "fail" }.to_string(),
    ];
    Ok(Row {
        fields,
        qcd: report.qcd,
        alpha_canonical,
        lemma_failure: !lemmas.all_pass(),
        superset_miss: in_superset == Some(false),
        dilation_failure: !dilation_ok,
    })
}

/// Runs the census, writing the CSV to `out` in instance order.
pub fn run(cfg: &Settings, out: impl Write) -> Result<Summary> {
    let rows: Vec<Row> = (0..cfg.count)
        .into_par_iter()
        .map(|i| run_one(cfg, i).with_context(|| format!("census instance {i}")))
        .collect::<Result<_>>()?;

    let mut out = out;
    writeln!(out, "# polyadj census v{CSV_VERSION}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for r in &rows {
        w.write_record(&r.fields)?;
    }
    w.flush()?;

    let mut distinct: Vec<Rational> = rows
        .iter()
        .filter(|r| r.alpha_canonical && r.qcd >= cfg.epsilon)
        .map(|r| r.qcd.clone())
        .collect();
    distinct.sort_by(|a, b| b.cmp(a));
    distinct.dedup();
    let count = |f: fn(&Row) -> bool| rows.iter().filter(|r| f(r)).count() as u64;

    Ok(Summary {
        csv_version: CSV_VERSION,
        count: cfg.count,
        dim: cfg.dim,
        points: cfg.points,
        half_width: cfg.half_width,
        seed: cfg.seed,
        alpha: cfg.alpha.as_ref().map(format_rational),
        epsilon: format_rational(&cfg.epsilon),
        alpha_canonical: count(|r| r.alpha_canonical),
        lemma_failures: count(|r| r.lemma_failure),
        superset_misses: count(|r| r.superset_miss),
        dilation_failures: count(|r| r.dilation_failure),
        distinct_qcd: distinct.iter().map(format_rational).collect(),
    })
}
