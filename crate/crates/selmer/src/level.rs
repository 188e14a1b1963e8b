use coleman::engine::{DiskExpansion, Engine};
use ecmodel::{FpCurve, FpPoint, PadicPoint};
use padic::{series_zeros_in_disk, Padic, Series};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::wset::WNorm;
use crate::SelmerError;

/// Thresholds, in p-adic digits, for accepting `D_2(z) = ‖w‖`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchPolicy {
    pub match_digits: i64,
    /// Agreement below this is a clean mismatch; between the two is the gap zone.
    pub reject_below: i64,
}

impl Default for MatchPolicy {
    fn default() -> Self {
        MatchPolicy { match_digits: 5, reject_below: 2 }
    }
}

/// Digits to which `a` and `b` agree, and whether that count is limited by
/// precision rather than by a known nonzero digit.
fn agreement(a: &Padic, b: &Padic) -> (i64, bool) {
    let d = a - b;
    if d.is_zero() {
        (d.precision(), true)
    } else {
        (d.valuation(), false)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Assignment {
    Matched { norm: usize, agreement: i64 },
    /// `gap` marks a best agreement inside the gap zone that is capped by precision,
    /// so a rerun with more digits could still produce a match.
    Unmatched { closest: Option<usize>, agreement: i64, gap: bool },
}

impl MatchPolicy {
    pub fn assign(&self, d2: &Padic, norms: &[WNorm]) -> Result<Assignment, SelmerError> {
        if d2.precision() < self.match_digits {
            return Err(SelmerError::Precision(format!(
                "D2 known to O(p^{}) but {} digits are required",
                d2.precision(),
                self.match_digits
            )));
        }
        let mut scored: Vec<(i64, bool, usize)> = norms
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let (d, capped) = agreement(d2, &w.value);
                (d, capped, i)
            })
            .collect();
        scored.sort_by(|a, b| b.0.cmp(&a.0).then(a.2.cmp(&b.2)));
        let Some(&(best, capped, idx)) = scored.first() else {
            return Ok(Assignment::Unmatched { closest: None, agreement: 0, gap: false });
        };
        if best >= self.match_digits {
            if let Some(&(second, _, other)) = scored.get(1) {
                if second >= self.match_digits && second == best {
                    return Err(SelmerError::Precision(format!(
                        "norms {} and {} both agree with D2 to {best} digits",
                        norms[idx].key(),
                        norms[other].key()
                    )));
                }
            }
            return Ok(Assignment::Matched { norm: idx, agreement: best });
        }
        Ok(Assignment::Unmatched { closest: Some(idx), agreement: best, gap: capped && best >= self.reject_below })
    }
}

fn zeros_on(exp: &DiskExpansion, g: &Series, prec: i64) -> Result<Vec<PadicPoint>, SelmerError> {
    let set = series_zeros_in_disk(g, 0)?;
    set.zeros
        .iter()
        .map(|s| {
            let x = exp.x.eval(s)?.with_prec(prec);
            let y = exp.y.eval(s)?.with_prec(prec);
            Ok(PadicPoint::affine(x, y))
        })
        .collect()
}

fn expansions(engine: &Engine) -> Result<Vec<DiskExpansion>, SelmerError> {
    let fp = FpCurve::new(&engine.curve, engine.p)?;
    let pts: Vec<FpPoint> = fp.affine_points();
    pts.par_iter().map(|&r| engine.disk_expansion(r).map_err(SelmerError::from)).collect()
}

fn point_key(pt: &PadicPoint) -> (Option<num_bigint::BigInt>, Option<num_bigint::BigInt>) {
    match pt {
        PadicPoint::Affine { x, y } => (x.to_bigint(), y.to_bigint()),
        PadicPoint::Infinity => (None, None),
    }
}

fn sort_points(pts: &mut [PadicPoint]) {
    pts.sort_by_key(point_key);
}

/// Points of `E(Z_p) ∖ O` with `∫_O α = 0`, i.e. the integral p-adic torsion.
pub fn level1_set(engine: &Engine) -> Result<Vec<PadicPoint>, SelmerError> {
    let per_disk: Vec<Vec<PadicPoint>> = expansions(engine)?
        .par_iter()
        .map(|e| zeros_on(e, &e.i_alpha, engine.prec))
        .collect::<Result<_, _>>()?;
    let mut out: Vec<PadicPoint> = per_disk.into_iter().flatten().collect();
    sort_points(&mut out);
    Ok(out)
}

/// Points of level 2 attached to one norm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsiSet {
    pub norm: WNorm,
    pub points: Vec<PadicPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocatedPoint {
    pub point: PadicPoint,
    pub d2: Padic,
    pub assignment: Assignment,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Level2Result {
    pub psi: Vec<PsiSet>,
    pub points: Vec<LocatedPoint>,
    /// Some point fell in the gap zone; a rerun at higher precision may resolve it.
    pub needs_more_precision: bool,
}

impl Level2Result {
    pub fn union(&self) -> Vec<PadicPoint> {
        let mut all: Vec<PadicPoint> = self.psi.iter().flat_map(|s| s.points.iter().cloned()).collect();
        sort_points(&mut all);
        all
    }

    pub fn nonempty(&self) -> usize {
        self.psi.iter().filter(|s| !s.points.is_empty()).count()
    }
}

/// Rank 0: the level 1 points split by which `‖w‖` equals `D_2(z)`.
pub fn level2_set_rank0(engine: &Engine, norms: &[WNorm], policy: MatchPolicy) -> Result<Level2Result, SelmerError> {
    let per_disk: Vec<Vec<LocatedPoint>> = expansions(engine)?
        .par_iter()
        .map(|e| -> Result<Vec<LocatedPoint>, SelmerError> {
            let zs = series_zeros_in_disk(&e.i_alpha, 0)?;
            zs.zeros
                .iter()
                .map(|s| {
                    let point = PadicPoint::affine(e.x.eval(s)?.with_prec(engine.prec), e.y.eval(s)?.with_prec(engine.prec));
                    let d2 = e.d2.eval(s)?.with_prec(engine.prec);
                    let assignment = policy.assign(&d2, norms)?;
                    Ok(LocatedPoint { point, d2, assignment })
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let mut points: Vec<LocatedPoint> = per_disk.into_iter().flatten().collect();
    points.sort_by_key(|lp| point_key(&lp.point));
    let mut psi: Vec<PsiSet> = norms.iter().map(|w| PsiSet { norm: w.clone(), points: Vec::new() }).collect();
    let mut needs_more_precision = false;
    for lp in &points {
        match &lp.assignment {
            Assignment::Matched { norm, .. } => psi[*norm].points.push(lp.point.clone()),
            Assignment::Unmatched { gap, .. } => needs_more_precision |= gap,
        }
    }
    Ok(Level2Result { psi, points, needs_more_precision })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rank1Result {
    /// `c = D_2(y)/log(y)²` for the chosen generator `y`.
    pub c: Padic,
    pub psi: Vec<PsiSet>,
}

impl Rank1Result {
    pub fn union(&self) -> Vec<PadicPoint> {
        let mut all: Vec<PadicPoint> = self.psi.iter().flat_map(|s| s.points.iter().cloned()).collect();
        sort_points(&mut all);
        all
    }
}

/// Rank 1: zeros of `D_2 − c·log² − ‖w‖` on every affine residue disk, one set per norm.
/// The generator is assumed to lie in the norm-0 piece.
pub fn level2_set_rank1(engine: &Engine, generator: &PadicPoint, norms: &[WNorm]) -> Result<Rank1Result, SelmerError> {
    let ints = engine.integrals(generator)?;
    if ints.i_alpha.is_zero() {
        return Err(SelmerError::Domain("generator has log 0; it is torsion".into()));
    }
    let log2 = &ints.i_alpha * &ints.i_alpha;
    let c = ints.d2.try_div(&log2)?;
    let exps = expansions(engine)?;
    let psi = norms
        .par_iter()
        .map(|w| -> Result<PsiSet, SelmerError> {
            let mut points = Vec::new();
            for e in &exps {
                let g = e.d2.sub(&e.i_alpha.mul(&e.i_alpha).scale(&c)).add_constant(&-&w.value);
                points.extend(zeros_on(e, &g, engine.prec)?);
            }
            sort_points(&mut points);
            Ok(PsiSet { norm: w.clone(), points })
        })
        .collect::<Result<_, _>>()?;
    Ok(Rank1Result { c, psi })
}
