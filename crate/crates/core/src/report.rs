//! Verification outcomes and their JSON / CSV / text renderings.
//!
//! Scalars are always written as decimal strings carrying every working
//! digit, so a report can be parsed back into the exact same value at the
//! same precision.

use std::fmt::Write as _;

use rug::Float;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Scalar, SeriesOutcome};

#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Int(i64),
    Real(Scalar),
    Text(String),
}

impl ParamValue {
    pub fn render(&self) -> String {
        match self {
            ParamValue::Int(v) => v.to_string(),
            ParamValue::Real(v) => format_scalar(v),
            ParamValue::Text(v) => v.clone(),
        }
    }
}

/// Ordered parameter record of one evaluation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Params(Vec<(String, ParamValue)>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn int(mut self, name: &str, value: i64) -> Self {
        self.0.push((name.to_string(), ParamValue::Int(value)));
        self
    }

    pub fn real(mut self, name: &str, value: &Scalar) -> Self {
        self.0.push((name.to_string(), ParamValue::Real(value.clone())));
        self
    }

    pub fn label(mut self, name: &str, value: &str) -> Self {
        self.0.push((name.to_string(), ParamValue::Text(value.to_string())));
        self
    }

    pub fn text(&self) -> String {
        self.0
            .iter()
            .map(|(k, v)| match v {
                ParamValue::Int(i) => format!("{k}={i}"),
                ParamValue::Real(r) => format!("{k}={}", short(r)),
                ParamValue::Text(t) => format!("{k}={t}"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ParamValue)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn get(&self, name: &str) -> Option<&ParamValue> {
        self.0.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unconverged,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unconverged => "unconverged",
            Status::Error => "error",
        }
    }

    /// Stable CLI exit code: 0 pass, 1 fail, 2 invalid input, 3 unconverged.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
            Status::Unconverged => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub identity: String,
    pub anchor: String,
    pub params: Params,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub residual: Scalar,
    pub digits: u32,
    pub terms_used: u64,
    pub tail_bound: Option<Scalar>,
    pub elapsed_ms: f64,
    pub status: Status,
    pub notes: Vec<String>,
}

impl IdentityReport {
    /// Report for `lhs = rhs`; passes iff `|lhs − rhs|` is within the
    /// context's verify tolerance.
    pub fn evaluated(
        identity: &str,
        anchor: &str,
        params: Params,
        lhs: Scalar,
        rhs: Scalar,
        ctx: &PrecisionContext,
    ) -> Self {
        let residual = Float::with_val(ctx.prec(), &lhs - &rhs);
        let status = if ctx.within_tolerance(&residual) { Status::Pass } else { Status::Fail };
        Self {
            identity: identity.to_string(),
            anchor: anchor.to_string(),
            params,
            lhs,
            rhs,
            residual,
            digits: ctx.digits(),
            terms_used: 0,
            tail_bound: None,
            elapsed_ms: 0.0,
            status,
            notes: Vec::new(),
        }
    }

    /// Report for an evaluation that could not be carried out.
    pub fn errored(identity: &str, anchor: &str, params: Params, err: &Error, ctx: &PrecisionContext) -> Self {
        let nan = Float::with_val(ctx.prec(), rug::float::Special::Nan);
        Self {
            identity: identity.to_string(),
            anchor: anchor.to_string(),
            params,
            lhs: nan.clone(),
            rhs: nan.clone(),
            residual: nan,
            digits: ctx.digits(),
            terms_used: 0,
            tail_bound: None,
            elapsed_ms: 0.0,
            status: Status::Error,
            notes: vec![err.to_string()],
        }
    }

    /// Folds the truncation data of the series that make up the left side.
    pub fn with_series<'a>(mut self, outcomes: impl IntoIterator<Item = &'a SeriesOutcome>) -> Self {
        let mut tail = Float::new(self.lhs.prec());
        for out in outcomes {
            self.terms_used += out.terms_used;
            tail += &out.tail_bound;
            if !out.converged {
                self.status = Status::Unconverged;
                self.notes.push(format!("series stopped after {} terms above the tail target", out.terms_used));
            }
        }
        self.tail_bound = Some(tail);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn abs_residual(&self) -> Scalar {
        self.residual.clone().abs()
    }

    pub fn to_json(&self) -> Value {
        let mut params = Map::new();
        for (k, v) in self.params.iter() {
            params.insert(k.to_string(), Value::String(v.render()));
        }
        json!({
            "identity": self.identity,
            "paper_anchor": self.anchor,
            "params": params,
            "lhs": format_scalar(&self.lhs),
            "rhs": format_scalar(&self.rhs),
            "residual": format_scalar(&self.residual),
            "digits": self.digits,
            "terms_used": self.terms_used,
            "tail_bound": self.tail_bound.as_ref().map(format_scalar),
            "elapsed_ms": self.elapsed_ms,
            "status": self.status,
            "notes": self.notes,
        })
    }

    pub const CSV_HEADER: [&'static str; 12] = [
        "identity",
        "paper_anchor",
        "params",
        "lhs",
        "rhs",
        "residual",
        "digits",
        "terms_used",
        "tail_bound",
        "elapsed_ms",
        "status",
        "notes",
    ];

    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.identity.clone(),
            self.anchor.clone(),
            self.params.iter().map(|(k, v)| format!("{k}={}", v.render())).collect::<Vec<_>>().join(";"),
            format_scalar(&self.lhs),
            format_scalar(&self.rhs),
            format_scalar(&self.residual),
            self.digits.to_string(),
            self.terms_used.to_string(),
            self.tail_bound.as_ref().map(format_scalar).unwrap_or_default(),
            format!("{:.3}", self.elapsed_ms),
            self.status.as_str().to_string(),
            self.notes.join(" | "),
        ]
    }

    pub fn text_line(&self) -> String {
        let mut line = format!(
            "{:<6} {:<16} {:<40} residual={:<12}",
            self.status.as_str(),
            self.identity,
            self.params.text(),
            short(&self.residual)
        );
        if self.terms_used > 0 {
            let _ = write!(line, " terms={}", self.terms_used);
        }
        for note in &self.notes {
            let _ = write!(line, " [{note}]");
        }
        line
    }
}

/// Full-precision decimal rendering; parsing it back at the same precision
/// reproduces the value exactly.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, None)
}

/// Parses a decimal string produced by [`format_scalar`] at `prec` bits.
pub fn parse_scalar_exact(text: &str, prec: u32) -> Result<Scalar> {
    let parsed = Float::parse(text).map_err(|e| Error::Parse(format!("`{text}`: {e}")))?;
    Ok(Float::with_val(prec, parsed))
}

/// Six significant digits, for human-readable output.
pub fn short(x: &Scalar) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, Some(6))
}

/// Writes reports as a CSV document with a header row.
pub fn write_csv<W: std::io::Write>(out: W, reports: &[IdentityReport]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Parse(format!("csv write failed: {e}"));
    writer.write_record(IdentityReport::CSV_HEADER).map_err(io)?;
    for r in reports {
        writer.write_record(r.csv_record()).map_err(io)?;
    }
    writer.flush().map_err(|e| Error::Parse(format!("csv flush failed: {e}")))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn status_from_tolerance() {
        let c = PrecisionContext::default();
        let r = IdentityReport::evaluated("x", "a", Params::new(), c.pi(), c.pi(), &c);
        assert!(r.passed());
        assert_eq!(format_scalar(&r.residual), "0");
        let r = IdentityReport::evaluated("x", "a", Params::new(), c.pi(), c.real(3), &c);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.status.exit_code(), 1);
    }

    #[test]
    fn json_schema_fields() {
        let c = PrecisionContext::default();
        let r = IdentityReport::evaluated("th1", "Theorem 1", Params::new().int("n", 2).real("alpha", &c.real(1.5)), c.pi(), c.pi(), &c)
            .with_note("n");
        let v = r.to_json();
        for key in ["identity", "paper_anchor", "params", "lhs", "rhs", "residual", "digits", "terms_used", "tail_bound", "elapsed_ms", "status", "notes"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["params"]["n"], "2");
        assert_eq!(v["status"], "pass");
        let lhs = parse_scalar_exact(v["lhs"].as_str().unwrap(), c.prec()).unwrap();
        assert_eq!(lhs, c.pi());
    }

    #[test]
    fn csv_quoting() {
        let c = PrecisionContext::default();
        let r = IdentityReport::evaluated("th1", "Theorem 1", Params::new(), c.pi(), c.pi(), &c).with_note("has, comma \"and quote\"");
        let mut buf = Vec::new();
        write_csv(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let rec = reader.records().next().unwrap().unwrap();
        assert_eq!(&rec[11], "has, comma \"and quote\"");
        assert_eq!(reader.headers().unwrap().len(), 12);
    }

    proptest! {
        #[test]
        fn decimal_round_trip(mantissa in -1.0e6f64..1.0e6, exp in -300i32..300, digits in 15u32..120) {
            let c = PrecisionContext::new(digits).unwrap();
            let x = c.real(mantissa) * c.pow10(exp) / 7u32;
            let back = parse_scalar_exact(&format_scalar(&x), c.prec()).unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
