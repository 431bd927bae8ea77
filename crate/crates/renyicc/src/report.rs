//! Deterministic report serialization.
//!
//! Reports go out as a single JSON object with a fixed key order and
//! every real number printed with 12 significant digits, so identical
//! queries produce byte-identical output. A small JSON value tree is
//! built by hand; the formatting must not depend on shortest-roundtrip
//! float printing.

use std::fmt::Write as _;

use crate::bounds::{BoundReport, ParamValue, SweepPoint};
use crate::embezzle::EmbezzleResult;
use crate::spectra::Order;

/// JSON value with deterministic member order.
#[derive(Debug, Clone)]
pub enum Json {
    Null,
    Int(i64),
    Real(f64),
    Text(String),
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

/// Format a real with 12 significant digits in exponent notation.
/// Valid JSON and stable across runs.
pub fn fmt_f64(x: f64) -> String {
    debug_assert!(x.is_finite(), "reports must not contain {x}");
    let x = if x == 0.0 { 0.0 } else { x }; // normalize -0
    format!("{x:.11e}")
}

impl Json {
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Int(v) => {
                let _ = write!(out, "{v}");
            }
            Json::Real(v) => out.push_str(&fmt_f64(*v)),
            Json::Text(s) => {
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
            Json::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            Json::Object(members) => {
                out.push('{');
                for (i, (key, value)) in members.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    Json::Text(key.clone()).write(out);
                    out.push(':');
                    value.write(out);
                }
                out.push('}');
            }
        }
    }
}

fn order_json(order: Order) -> Json {
    match order {
        Order::Inf => Json::Text("inf".to_string()),
        Order::Finite(a) => Json::Real(a),
    }
}

fn param_json(value: &ParamValue) -> Json {
    match value {
        ParamValue::Int(v) => Json::Int(*v as i64),
        ParamValue::Real(v) => Json::Real(*v),
        ParamValue::Text(s) => Json::Text(s.clone()),
    }
}

/// `{theorem_tag, value_bits, value_bits_floored, optimizer, eps,
///   params, companions}`
pub fn bound_report_json(report: &BoundReport) -> Json {
    Json::Object(vec![
        (
            "theorem_tag".to_string(),
            Json::Text(report.kind.tag().to_string()),
        ),
        ("value_bits".to_string(), Json::Real(report.value_bits)),
        (
            "value_bits_floored".to_string(),
            Json::Real(report.value_bits_floored()),
        ),
        ("optimizer".to_string(), order_json(report.optimizer)),
        ("eps".to_string(), Json::Real(report.eps)),
        (
            "params".to_string(),
            Json::Object(
                report
                    .params
                    .iter()
                    .map(|(k, v)| (k.clone(), param_json(v)))
                    .collect(),
            ),
        ),
        (
            "companions".to_string(),
            Json::Object(
                report
                    .companions
                    .iter()
                    .map(|(k, v)| (k.clone(), Json::Real(*v)))
                    .collect(),
            ),
        ),
    ])
}

/// `{d, fidelity, target, eps_target?, predecessor_d?,
///   predecessor_fidelity?}` — optional keys are omitted when absent.
pub fn embezzle_result_json(result: &EmbezzleResult) -> Json {
    let mut members = vec![
        ("d".to_string(), Json::Int(result.d as i64)),
        ("fidelity".to_string(), Json::Real(result.fidelity)),
        ("target".to_string(), Json::Text(result.target.clone())),
    ];
    if let Some(eps) = result.eps_target {
        members.push(("eps_target".to_string(), Json::Real(eps)));
    }
    if let Some((d, f)) = result.predecessor {
        members.push(("predecessor_d".to_string(), Json::Int(d as i64)));
        members.push(("predecessor_fidelity".to_string(), Json::Real(f)));
    }
    Json::Object(members)
}

/// Sweep table in CSV: `family,param,eps,beta,bound_bits`, one row per
/// grid point.
pub fn sweep_csv(family: &str, param: &str, eps: f64, sweep: &[SweepPoint]) -> String {
    let mut out = String::from("family,param,eps,beta,bound_bits\n");
    for point in sweep {
        let beta = match point.beta {
            Order::Inf => "inf".to_string(),
            Order::Finite(b) => fmt_f64(b),
        };
        let _ = writeln!(
            out,
            "{family},{param},{},{beta},{}",
            fmt_f64(eps),
            fmt_f64(point.bound_bits)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_has_12_digits() {
        assert_eq!(fmt_f64(0.1), "1.00000000000e-1");
        assert_eq!(fmt_f64(4.0), "4.00000000000e0");
        assert_eq!(fmt_f64(0.0), "0.00000000000e0");
        assert_eq!(fmt_f64(-0.0), "0.00000000000e0");
        assert_eq!(fmt_f64(-1.5), "-1.50000000000e0");
        assert_eq!(fmt_f64(3.678071905112638), "3.67807190511e0");
    }

    #[test]
    fn json_escaping() {
        let j = Json::Text("a\"b\\c\nd".to_string());
        assert_eq!(j.render(), r#""a\"b\\c\nd""#);
    }

    #[test]
    fn object_renders_in_member_order() {
        let j = Json::Object(vec![
            ("b".to_string(), Json::Int(1)),
            ("a".to_string(), Json::Null),
        ]);
        assert_eq!(j.render(), r#"{"b":1,"a":null}"#);
    }

    #[test]
    fn bound_report_shape() {
        let report = crate::bounds::ip_bounds_closed(8, 0.1).unwrap();
        let rendered = bound_report_json(&report).render();
        assert!(rendered.starts_with(r#"{"theorem_tag":"ip_closed""#));
        assert!(rendered.contains(r#""value_bits":3.67807190511e0"#));
        assert!(rendered.contains(r#""optimizer":"inf""#));
        assert!(rendered.contains(r#""params":{"n":8}"#));
        assert!(rendered.contains(r#""upper":4.00000000000e0"#));
    }

    #[test]
    fn sweep_csv_shape() {
        let sweep = vec![
            SweepPoint {
                beta: Order::Finite(2.0),
                bound_bits: 1.25,
            },
            SweepPoint {
                beta: Order::Inf,
                bound_bits: 1.5,
            },
        ];
        let csv = sweep_csv("ip", "8", 0.1, &sweep);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "family,param,eps,beta,bound_bits");
        assert_eq!(
            lines[1],
            "ip,8,1.00000000000e-1,2.00000000000e0,1.25000000000e0"
        );
        assert_eq!(lines[2], "ip,8,1.00000000000e-1,inf,1.50000000000e0");
    }
}
