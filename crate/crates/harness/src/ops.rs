use ecmodel::count_points_fp;
use frobenius::{frobenius_matrix, short_model};
use padic::Padic;

use crate::api::{FrobReport, P1Response};
use crate::record::{CurveRecord, Ingested};
use crate::HarnessError;

pub fn find<'a>(ingested: &'a Ingested, label: &str) -> Result<&'a CurveRecord, HarnessError> {
    ingested
        .records
        .iter()
        .find(|r| r.label == label)
        .ok_or_else(|| match ingested.errors.iter().find(|e| e.label.as_deref() == Some(label)) {
            Some(e) => HarnessError::Ingest(format!("line {}: {}", e.line, e.message)),
            None => HarnessError::Usage(format!("no record labelled `{label}`")),
        })
}

/// Frobenius matrix with its naive-count check.
pub fn frob_report(rec: &CurveRecord, p: u64, prec: i64) -> Result<FrobReport, HarnessError> {
    let curve = rec.curve()?;
    let model = short_model(&curve, p, prec + 4)?;
    let frob = frobenius_matrix(&model, prec)?;
    let (_, a_p) = count_points_fp(&curve, p)?;
    let (trace, det) = frob.charpoly();
    let trace_matches = trace.agrees_to(&Padic::from_int(p, a_p, prec), trace.precision().min(prec));
    let det_matches = det.agrees_to(&Padic::from_int(p, p as i64, prec), det.precision().min(prec));
    Ok(FrobReport { label: rec.label.clone(), p, prec, matrix: frob.matrix.clone(), trace, det, a_p, trace_matches, det_matches })
}

pub fn p1(p: u64, level: u8, prec: i64) -> Result<P1Response, HarnessError> {
    if !matches!(level, 1 | 2) {
        return Err(HarnessError::Usage(format!("level must be 1 or 2, not {level}")));
    }
    let report = polylog::p1_weakly_global(p, level, prec)?;
    Ok(P1Response { report, notes: Vec::new() })
}

/// `S = {2}` zero set, with a note when it is larger than the S-integral points {2, 1/2, −1}.
pub fn p1_s2(p: u64, prec: i64, match_digits: i64) -> Result<P1Response, HarnessError> {
    let report = polylog::p1_s2_weakly_global(p, prec)?;
    let integral = [(2, 1), (1, 2), (-1, 1)].map(|(n, d)| {
        Padic::from_ratio(p, &n.into(), &num_bigint::BigInt::from(d), prec)
    });
    let extra = report
        .points
        .iter()
        .filter(|z| !integral.iter().any(|w| z.agrees_to(w, match_digits)))
        .count();
    let mut notes = Vec::new();
    if extra > 0 {
        notes.push(format!("the set strictly contains the S-integral points: {extra} further points"));
    }
    Ok(P1Response { report, notes })
}
