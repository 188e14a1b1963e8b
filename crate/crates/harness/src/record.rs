use std::collections::BTreeMap;
use std::path::Path;

use ecmodel::CurveModel;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::HarnessError;

/// One curve of a batch file, validated on ingest.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRecord {
    pub label: String,
    pub a: [BigInt; 5],
    pub rank: u32,
    pub sha_finite: bool,
    pub integral_points: Vec<(BigInt, BigInt)>,
    pub generator: Option<(BigInt, BigInt)>,
    /// Prime ↦ rationals `"n/d"` replacing the default value set at that prime.
    pub w_override: BTreeMap<u64, Vec<String>>,
}

/// A line that failed validation; the rest of the file is still usable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordError {
    pub line: usize,
    pub label: Option<String>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Ingested {
    pub records: Vec<CurveRecord>,
    pub errors: Vec<RecordError>,
}

impl CurveRecord {
    pub fn curve(&self) -> Result<CurveModel, HarnessError> {
        Ok(CurveModel::from_bigints(&self.label, self.a.clone())?)
    }

    pub fn overrides(&self) -> Result<BTreeMap<u64, Vec<BigRational>>, HarnessError> {
        let mut out = BTreeMap::new();
        for (l, vals) in &self.w_override {
            let qs = vals.iter().map(|s| selmer::parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
            out.insert(*l, qs);
        }
        Ok(out)
    }
}

fn integer(v: &Value, what: &str) -> Result<BigInt, String> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().unwrap()),
        Value::String(s) => s.trim().parse().map_err(|_| format!("{what}: `{s}` is not an integer")),
        _ => Err(format!("{what}: expected an integer, found {v}")),
    }
}

fn pair(v: &Value, what: &str) -> Result<(BigInt, BigInt), String> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok((integer(x, what)?, integer(y, what)?)),
        _ => Err(format!("{what}: expected [x, y], found {v}")),
    }
}

fn parse_record(v: &Value) -> Result<CurveRecord, String> {
    let obj = v.as_object().ok_or("record is not an object")?;
    let field = |k: &str| obj.get(k).ok_or_else(|| format!("missing field `{k}`"));
    let label = field("label")?.as_str().ok_or("`label` must be a string")?.to_string();
    let a_vals = field("a")?.as_array().ok_or("`a` must be an array")?;
    if a_vals.len() != 5 {
        return Err(format!("`a` needs 5 integers, found {}", a_vals.len()));
    }
    let a: Vec<BigInt> = a_vals.iter().map(|x| integer(x, "a")).collect::<Result<_, _>>()?;
    let a: [BigInt; 5] = a.try_into().unwrap();
    let rank = field("rank")?.as_u64().ok_or("`rank` must be a non-negative integer")? as u32;
    let sha_finite = field("sha_finite")?.as_bool().ok_or("`sha_finite` must be a boolean")?;
    let integral_points = field("integral_points")?
        .as_array()
        .ok_or("`integral_points` must be an array")?
        .iter()
        .map(|pt| pair(pt, "integral_points"))
        .collect::<Result<_, _>>()?;
    let generator = match obj.get("generator") {
        None | Some(Value::Null) => None,
        Some(g) => Some(pair(g, "generator")?),
    };
    let mut w_override = BTreeMap::new();
    if let Some(m) = obj.get("w_override").filter(|m| !m.is_null()) {
        for (k, vals) in m.as_object().ok_or("`w_override` must be an object")? {
            let l: u64 = k.parse().map_err(|_| format!("w_override: `{k}` is not a prime"))?;
            let vals = vals.as_array().ok_or("w_override values must be arrays")?;
            let mut texts = Vec::new();
            for q in vals {
                let s = match q {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    _ => return Err(format!("w_override: {q} is not a rational")),
                };
                selmer::parse_rational(&s).map_err(|e| e.to_string())?;
                texts.push(s);
            }
            w_override.insert(l, texts);
        }
    }
    for key in obj.keys() {
        if !["label", "a", "rank", "sha_finite", "integral_points", "generator", "w_override"].contains(&key.as_str()) {
            return Err(format!("unknown field `{key}`"));
        }
    }
    Ok(CurveRecord { label, a, rank, sha_finite, integral_points, generator, w_override })
}

fn validate(rec: &CurveRecord) -> Result<(), String> {
    let curve = rec.curve().map_err(|e| e.to_string())?;
    let pts = rec.integral_points.iter().chain(rec.generator.iter());
    for (x, y) in pts {
        if !curve.contains_integral_point(x, y) {
            return Err(format!("({x}, {y}) is not on the curve: residual {}", curve.equation_residual(x, y)));
        }
    }
    Ok(())
}

/// Line-delimited records; blank lines and `#` comments are skipped.
pub fn ingest_str(text: &str) -> Ingested {
    let mut out = Ingested::default();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let parsed = serde_json::from_str::<Value>(t).map_err(|e| (None, format!("malformed JSON: {e}"))).and_then(|v| {
            let label = v.get("label").and_then(Value::as_str).map(str::to_string);
            let rec = parse_record(&v).map_err(|m| (label.clone(), m))?;
            validate(&rec).map_err(|m| (label, m))?;
            Ok(rec)
        });
        match parsed {
            Ok(rec) => out.records.push(rec),
            Err((label, message)) => out.errors.push(RecordError { line: i + 1, label, message }),
        }
    }
    out
}

pub fn ingest(path: &Path) -> Result<Ingested, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    Ok(ingest_str(&text))
}
