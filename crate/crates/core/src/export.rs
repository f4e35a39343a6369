//! Deterministic text renderings: CSV tables, JSON documents and the SVG
//! level diagram. Numbers carry 9 significant digits.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::report::{Params, VerificationReport};
use crate::spectrum::{ArrowOrientation, DiagramData, Level, SpectrumRow};

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `printf("%.9g")`.
pub fn fmt_sig9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mant, exp) = sci.split_once('e').unwrap_or((&sci, "0"));
    let exp: i32 = exp.parse().unwrap_or(0);
    if (-5..9).contains(&exp) {
        let fixed = format!("{:.*}", (8 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{}{:02}", trim_zeros(mant), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

/// Rounds to 9 significant digits; non-finite values are clamped to the
/// largest finite double so that JSON stays numeric.
pub fn round_sig9(x: f64) -> f64 {
    let x = if x.is_nan() { f64::MAX } else { x.clamp(-f64::MAX, f64::MAX) };
    fmt_sig9(x).parse().unwrap_or(x)
}

fn num(x: f64) -> Value {
    json!(round_sig9(x))
}

fn round_value(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().unwrap_or(0.0)),
        Value::Array(a) => Value::Array(a.iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, v)| (k.clone(), round_value(v))).collect()),
        other => other.clone(),
    }
}

fn params_value(p: &Params) -> Value {
    Value::Object(p.iter().map(|(k, v)| (k.clone(), round_value(v))).collect::<Map<_, _>>())
}

pub fn spectrum_csv(rows: &[SpectrumRow]) -> String {
    let mut out = String::from("n,N,s,xi,E_over_m\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.n,
            r.principal,
            fmt_sig9(r.s),
            fmt_sig9(r.xi),
            fmt_sig9(r.e_over_m)
        );
    }
    out
}

pub fn spectrum_json(rows: &[SpectrumRow], parameters: &Params) -> String {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| json!({"n": r.n, "N": r.principal, "s": num(r.s), "xi": num(r.xi), "E_over_m": num(r.e_over_m)}))
        .collect();
    pretty(&json!({"parameters": params_value(parameters), "rows": rows}))
}

/// Which wavefunction columns to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Columns {
    Upper,
    Lower,
    Both,
}

impl Columns {
    fn names(self) -> &'static [&'static str] {
        match self {
            Columns::Upper => &["rho", "F1"],
            Columns::Lower => &["rho", "F2"],
            Columns::Both => &["rho", "F1", "F2"],
        }
    }

    fn pick(self, (rho, f1, f2): (f64, f64, f64)) -> Vec<f64> {
        match self {
            Columns::Upper => vec![rho, f1],
            Columns::Lower => vec![rho, f2],
            Columns::Both => vec![rho, f1, f2],
        }
    }
}

pub fn wavefunction_csv(samples: &[(f64, f64, f64)], columns: Columns) -> String {
    let mut out = columns.names().join(",");
    out.push('\n');
    for s in samples {
        let line: Vec<String> = columns.pick(*s).into_iter().map(fmt_sig9).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn wavefunction_json(samples: &[(f64, f64, f64)], columns: Columns, parameters: &Params) -> String {
    let names = columns.names();
    let rows: Vec<Value> = samples
        .iter()
        .map(|s| {
            let vals = columns.pick(*s);
            Value::Object(names.iter().zip(vals).map(|(n, v)| (n.to_string(), num(v))).collect())
        })
        .collect();
    pretty(&json!({"parameters": params_value(parameters), "samples": rows}))
}

pub fn diagram_csv(d: &DiagramData) -> String {
    let mut out = String::from("k,n,N,E_over_m,dashed\n");
    for l in &d.levels {
        let _ = writeln!(out, "{},{},{},{},{}", l.k, l.n, l.principal, fmt_sig9(l.energy_over_m), l.dashed);
    }
    out
}

const COL_WIDTH: f64 = 70.0;
const COL_GAP: f64 = 50.0;
const PAIR_GAP: f64 = 70.0;
const MARGIN_X: f64 = 70.0;
const MARGIN_TOP: f64 = 50.0;
const PLOT_HEIGHT: f64 = 420.0;

fn column_x(k: i32) -> f64 {
    let pair = (k.unsigned_abs() - 1) as f64;
    let left = MARGIN_X + pair * (2.0 * COL_WIDTH + COL_GAP + PAIR_GAP);
    if k < 0 {
        left
    } else {
        left + COL_WIDTH + COL_GAP
    }
}

fn display_label(label: &str) -> String {
    label.replace("Sigma", "\u{3a3}").replace("Xi", "\u{39e}")
}

/// Level diagram: one `<line class="level">` per level, dashed for `n = 0`,
/// with labelled arrows.
pub fn diagram_svg(d: &DiagramData) -> String {
    let (lo, hi) = d
        .levels
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), l| (lo.min(l.energy_over_m), hi.max(l.energy_over_m)));
    let span = if hi > lo { hi - lo } else { 1.0 };
    let y = |e: f64| MARGIN_TOP + (hi - e) / span * PLOT_HEIGHT;
    let level_y = |k: i32, principal: u32| d.level(k, principal).map(|l: &Level| y(l.energy_over_m));
    let width = column_x(d.k_max as i32) + COL_WIDTH + MARGIN_X;
    let height = MARGIN_TOP + PLOT_HEIGHT + 60.0;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        s,
        r#"<defs><marker id="head" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>"#
    );
    let _ = writeln!(s, r#"<title>Energy levels, gamma = {}</title>"#, fmt_sig9(d.gamma));
    for abs_k in 1..=d.k_max as i32 {
        for k in [-abs_k, abs_k] {
            let _ = writeln!(
                s,
                r#"<text class="column" x="{:.2}" y="{:.2}" text-anchor="middle">k = {k}</text>"#,
                column_x(k) + COL_WIDTH / 2.0,
                MARGIN_TOP + PLOT_HEIGHT + 35.0
            );
        }
    }
    for l in &d.levels {
        let x = column_x(l.k);
        let yy = y(l.energy_over_m);
        let dash = if l.dashed { r#" stroke-dasharray="6,4""# } else { "" };
        let _ = writeln!(
            s,
            r#"<line class="level" data-k="{}" data-n="{}" data-N="{}" data-energy="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="2"{dash}/>"#,
            l.k,
            l.n,
            l.principal,
            fmt_sig9(l.energy_over_m),
            x,
            yy,
            x + COL_WIDTH,
            yy
        );
    }
    for a in &d.arrows {
        let (Some(y1), Some(y2)) = (level_y(a.from.0, a.from.1), level_y(a.to.0, a.to.1)) else {
            continue;
        };
        let raising = a.label.ends_with('+');
        let (x1, x2, y1, y2, tx, ty) = match a.orientation {
            ArrowOrientation::Vertical => {
                let x = column_x(a.from.0) + if raising { 0.3 } else { 0.7 } * COL_WIDTH;
                (x, x, y1, y2, x + if raising { -4.0 } else { 4.0 }, (y1 + y2) / 2.0)
            }
            ArrowOrientation::Horizontal => {
                let off = if a.label == "A-" { -5.0 } else { 5.0 };
                let (xa, xb) = (column_x(a.from.0), column_x(a.to.0));
                let (x1, x2) = if xa < xb { (xa + COL_WIDTH, xb) } else { (xa, xb + COL_WIDTH) };
                (x1, x2, y1 + off, y2 + off, (x1 + x2) / 2.0, y1 + off - 2.0)
            }
        };
        let anchor = match a.orientation {
            ArrowOrientation::Vertical if raising => "end",
            ArrowOrientation::Vertical => "start",
            ArrowOrientation::Horizontal => "middle",
        };
        let _ = writeln!(
            s,
            r#"<g class="arrow" data-label="{}"><line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="gray" marker-end="url(#head)"/><text x="{tx:.2}" y="{ty:.2}" text-anchor="{anchor}" fill="gray">{}</text></g>"#,
            a.label,
            display_label(&a.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// `{version, parameters, entries, passed}` with numbers rounded to 9
/// significant digits.
pub fn report_value(report: &VerificationReport, parameters: &Params) -> Value {
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "check_name": e.check_name,
                "parameters": params_value(&e.parameters),
                "measured_error": num(e.measured_error),
                "tolerance": num(e.tolerance),
                "passed": e.passed,
            })
        })
        .collect();
    json!({
        "version": REPORT_VERSION,
        "parameters": params_value(parameters),
        "entries": entries,
        "passed": report.passed(),
    })
}

pub fn report_json(report: &VerificationReport, parameters: &Params) -> String {
    pretty(&report_value(report, parameters))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::params;
    use crate::spectrum::level_diagram;

    #[test]
    fn sig9_formatting() {
        assert_eq!(fmt_sig9(0.8660254037844386), "0.866025404");
        assert_eq!(fmt_sig9(0.9659258262890683), "0.965925826");
        assert_eq!(fmt_sig9(1.0), "1");
        assert_eq!(fmt_sig9(-2.5), "-2.5");
        assert_eq!(fmt_sig9(123456789012.0), "1.23456789e+11");
        assert_eq!(fmt_sig9(1.5e-7), "1.5e-07");
        assert_eq!(fmt_sig9(0.0001234), "0.0001234");
        assert_eq!(fmt_sig9(0.0), "0");
        assert_eq!(fmt_sig9(999999999.6), "1e+09");
    }

    #[test]
    fn round_sig9_clamps() {
        assert_eq!(round_sig9(0.8660254037844386), 0.866025404);
        assert!(round_sig9(f64::INFINITY).is_finite());
    }

    #[test]
    fn spectrum_csv_layout() {
        let rows = [SpectrumRow { n: 0, principal: 1, s: 0.5, xi: 1.0, e_over_m: 0.25 }];
        assert_eq!(spectrum_csv(&rows), "n,N,s,xi,E_over_m\n0,1,0.5,1,0.25\n");
    }

    #[test]
    fn svg_has_one_line_per_level() {
        let d = level_diagram(0.5, 2, 3).unwrap();
        let svg = diagram_svg(&d);
        assert_eq!(svg.matches(r#"class="level""#).count(), d.levels.len());
        let dashed = svg.lines().filter(|l| l.contains(r#"class="level""#) && l.contains("stroke-dasharray")).count();
        assert_eq!(dashed, d.levels.iter().filter(|l| l.dashed).count());
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn report_schema() {
        let mut r = VerificationReport::new();
        r.record("x", params([("m", json!(1))]), 1e-17, 1e-10);
        let v = report_value(&r, &params([("gamma", json!(0.5))]));
        assert_eq!(v["passed"], json!(true));
        assert_eq!(v["entries"][0]["check_name"], json!("x"));
        assert!(v["version"].is_string());
    }
}
