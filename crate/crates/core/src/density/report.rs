//! CSV output.
//!
//! Series files have the header
//! `x,label,exact_sum,li_x,ratio,theoretical,abs_error`, one row per
//! (checkpoint, label), ordered by checkpoint and then by series. Exact sums
//! and limits are written as `num/den`; empty cells mean "not applicable".

use std::io::Write;

use crate::classfn::{format_rational, rational_to_f64, Rational};
use crate::error::Error;

use super::{AnalyticRow, ConvergenceSeries};

pub const SERIES_HEADER: [&str; 7] = ["x", "label", "exact_sum", "li_x", "ratio", "theoretical", "abs_error"];
pub const ANALYTIC_HEADER: [&str; 4] = ["s", "side", "value", "theoretical"];
pub const REDUCTION_HEADER: [&str; 7] = [
    "oracle",
    "class",
    "representative",
    "order",
    "value",
    "target",
    "abs_error",
];

fn fmt_f(v: f64, digits: usize) -> String {
    format!("{:.*}", digits, v)
}

pub fn write_series<W: Write>(out: W, series: &[ConvergenceSeries]) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SERIES_HEADER)?;
    let rows = series.iter().map(|s| s.points.len()).max().unwrap_or(0);
    for i in 0..rows {
        for s in series {
            let Some(p) = s.points.get(i) else { continue };
            let ratio = p.ratio();
            let theo = s.theoretical.as_ref();
            let err = match (ratio, theo) {
                (Some(r), Some(t)) => fmt_f((r - rational_to_f64(t)).abs(), 9),
                _ => String::new(),
            };
            w.write_record([
                p.x.to_string(),
                s.label.clone(),
                format_rational(&p.exact_sum),
                fmt_f(p.li, 6),
                ratio.map(|r| fmt_f(r, 9)).unwrap_or_default(),
                theo.map(format_rational).unwrap_or_default(),
                err,
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_analytic<W: Write>(out: W, rows: &[AnalyticRow]) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ANALYTIC_HEADER)?;
    for r in rows {
        for (side, v) in [("E", r.e_side), ("K", r.k_side)] {
            w.write_record([
                r.s.to_string(),
                side.to_string(),
                fmt_f(v, 12),
                format_rational(&r.theoretical),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// One row of a cyclic-reduction report.
#[derive(Clone, Debug)]
pub struct ReductionRow {
    pub oracle: String,
    pub class: usize,
    pub representative: String,
    pub order: u64,
    pub value: ReductionValue,
    pub target: Rational,
}

#[derive(Clone, Debug)]
pub enum ReductionValue {
    Exact(Rational),
    Approx(f64),
}

impl ReductionRow {
    pub fn abs_error(&self) -> f64 {
        let t = rational_to_f64(&self.target);
        match &self.value {
            ReductionValue::Exact(v) => (rational_to_f64(v) - t).abs(),
            ReductionValue::Approx(v) => (v - t).abs(),
        }
    }
}

pub fn write_reduction<W: Write>(out: W, rows: &[ReductionRow]) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(REDUCTION_HEADER)?;
    for r in rows {
        let value = match &r.value {
            ReductionValue::Exact(v) => format_rational(v),
            ReductionValue::Approx(v) => fmt_f(*v, 9),
        };
        w.write_record([
            r.oracle.clone(),
            r.class.to_string(),
            r.representative.clone(),
            r.order.to_string(),
            value,
            format_rational(&r.target),
            fmt_f(r.abs_error(), 9),
        ])?;
    }
    w.flush()?;
    Ok(())
}
