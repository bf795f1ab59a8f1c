//! CSV and JSON emission for solve runs and verification reports.
//!
//! Both formats print every number through the same 17-significant-digit
//! formatter, so the two artifacts of one run carry identical values and
//! parse back to identical doubles.

use crate::integrate::SampleFlag;
use crate::verify::VerificationReport;
use std::fmt::Write as _;

/// 17 significant digits: enough to round-trip any f64 exactly.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// One merged output row across methods.
#[derive(Debug, Clone, Copy)]
pub struct OutputRow {
    pub x: f64,
    pub z_linearized: Option<f64>,
    pub z_direct: Option<f64>,
    pub q: Option<f64>,
    pub p: Option<f64>,
    pub flag: SampleFlag,
}

pub const CSV_HEADER: &str = "x,z_linearized,z_direct,q,p,flag";

pub fn write_csv(rows: &[OutputRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_f64(r.x),
            fmt_opt(r.z_linearized),
            fmt_opt(r.z_direct),
            fmt_opt(r.q),
            fmt_opt(r.p),
            r.flag.as_str()
        );
    }
    out
}

/// Minimal JSON value builder; numbers go through [`fmt_f64`].
pub enum Json {
    Null,
    Bool(bool),
    Num(f64),
    Int(i64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

impl Json {
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Num(v) => {
                if v.is_finite() {
                    out.push_str(&fmt_f64(*v));
                } else {
                    // JSON has no inf/nan; emit null and let the flag column
                    // carry the information
                    out.push_str("null");
                }
            }
            Json::Int(v) => {
                let _ = write!(out, "{v}");
            }
            Json::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        '\r' => out.push_str("\\r"),
                        '\t' => out.push_str("\\t"),
                        c if (c as u32) < 0x20 => {
                            let _ = write!(out, "\\u{:04x}", c as u32);
                        }
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    pad(out, indent + 1);
                    item.write(out, indent + 1);
                }
                out.push('\n');
                pad(out, indent);
                out.push(']');
            }
            Json::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    pad(out, indent + 1);
                    Json::Str(k.clone()).write(out, indent + 1);
                    out.push_str(": ");
                    v.write(out, indent + 1);
                }
                out.push('\n');
                pad(out, indent);
                out.push('}');
            }
        }
    }
}

fn pad(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

pub fn opt_num(v: Option<f64>) -> Json {
    v.map(Json::Num).unwrap_or(Json::Null)
}

pub fn row_json(r: &OutputRow) -> Json {
    Json::Obj(vec![
        ("x".into(), Json::Num(r.x)),
        ("z_linearized".into(), opt_num(r.z_linearized)),
        ("z_direct".into(), opt_num(r.z_direct)),
        ("q".into(), opt_num(r.q)),
        ("p".into(), opt_num(r.p)),
        ("flag".into(), Json::Str(r.flag.as_str().into())),
    ])
}

pub fn verification_json(rep: &VerificationReport) -> Json {
    Json::Obj(vec![
        ("max_residual".into(), opt_num(rep.max_residual)),
        (
            "residual_grid".into(),
            Json::Arr(
                rep.residual_grid
                    .iter()
                    .map(|&(x, r)| Json::Arr(vec![Json::Num(x), Json::Num(r)]))
                    .collect(),
            ),
        ),
        (
            "skipped_segments".into(),
            Json::Int(rep.skipped_segments as i64),
        ),
        ("comparison_max_gap".into(), opt_num(rep.comparison_max_gap)),
        (
            "compared_points".into(),
            Json::Int(rep.compared_points as i64),
        ),
        (
            "pole_agreement".into(),
            Json::Arr(
                rep.pole_agreement
                    .iter()
                    .map(|pa| {
                        Json::Obj(vec![
                            ("pole_linearized".into(), Json::Num(pa.pole_linearized)),
                            ("blowup_direct".into(), Json::Num(pa.blowup_direct)),
                            ("gap".into(), Json::Num(pa.gap)),
                        ])
                    })
                    .collect(),
            ),
        ),
        ("pass".into(), Json::Bool(rep.pass)),
    ])
}
