//! Batch reports over a parameter range.

use std::io::Write;

use rayon::prelude::*;
use serde_json::{json, Value};

use septic_core::arith::Factorizer;
use septic_core::field::{prime_congruence_check, FieldReport};
use septic_core::Error;

use crate::{Format, EXIT_OK};

pub const COLUMNS: [&str; 9] = [
    "t",
    "E_value",
    "omega",
    "fifth_power_free",
    "alpha",
    "conductor",
    "polya_rank",
    "is_polya",
    "index_one_certified",
];

fn text<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "unknown".to_string(), |x| x.to_string())
}

/// The nine survey columns of one report, as strings.
pub fn row(report: &FieldReport) -> [String; 9] {
    [
        report.t.to_string(),
        report.e_value.to_string(),
        text(report.omega()),
        text(report.fifth_power_free),
        report.alpha.to_string(),
        text(report.conductor.as_ref()),
        text(report.polya_rank),
        text(report.is_polya),
        report.index_one_certified.to_string(),
    ]
}

fn json_row(report: &FieldReport) -> Value {
    let cells = row(report);
    let mut obj = serde_json::Map::new();
    for (i, (name, cell)) in COLUMNS.iter().zip(cells).enumerate() {
        // alpha, omega, polya_rank are small counts; everything else stays a string.
        let value = match (i, cell.parse::<u64>()) {
            (2 | 4 | 6, Ok(n)) => json!(n),
            _ => match cell.as_str() {
                "true" => json!(true),
                "false" => json!(false),
                _ => json!(cell),
            },
        };
        obj.insert(name.to_string(), value);
    }
    Value::Object(obj)
}

struct Outcome {
    report: FieldReport,
    congruence: Option<bool>,
}

pub fn run(
    t_min: i64,
    t_max: i64,
    format: Format,
    jobs: usize,
    fz: &dyn Factorizer,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> anyhow::Result<i32> {
    if t_min > t_max {
        return Err(Error::Domain(format!("empty range [{t_min}, {t_max}]")).into());
    }
    if jobs == 0 {
        return Err(Error::Domain("--jobs must be at least 1".into()).into());
    }
    let ts: Vec<i64> = (t_min..=t_max).filter(|&t| t != 0).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let outcomes: Vec<septic_core::Result<Outcome>> = pool.install(|| {
        ts.par_iter()
            .map(|&t| {
                let report = FieldReport::compute(t, fz)?;
                let congruence = prime_congruence_check(t, fz).ok();
                Ok(Outcome { report, congruence })
            })
            .collect()
    });

    if format == Format::Csv {
        writeln!(out, "{}", COLUMNS.join(","))?;
    }
    let mut omegas = Vec::new();
    let mut congruence_ok = 0usize;
    let mut congruence_known = 0usize;
    for outcome in outcomes {
        let Outcome { report, congruence } = outcome?;
        match format {
            Format::Csv => writeln!(out, "{}", row(&report).join(","))?,
            Format::Json => writeln!(out, "{}", json_row(&report))?,
        }
        if let Some(w) = report.omega() {
            omegas.push(w);
        }
        if let Some(ok) = congruence {
            congruence_known += 1;
            congruence_ok += usize::from(ok);
        }
        for reason in &report.unknown_reasons {
            writeln!(err, "note: t = {}: {reason}", report.t)?;
        }
    }

    let rows = ts.len();
    if let Some(&max) = omegas.iter().max() {
        let mean = omegas.iter().sum::<usize>() as f64 / omegas.len() as f64;
        writeln!(
            err,
            "summary: {rows} rows, omega(E(t)) mean {mean:.3}, max {max} over {} complete factorizations",
            omegas.len()
        )?;
    }
    writeln!(
        err,
        "summary: every prime > 7 of E(t) is 1 mod 7 on {congruence_ok}/{congruence_known} fully factored rows"
    )?;
    Ok(EXIT_OK)
}
