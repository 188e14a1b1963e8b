//! Coleman integrals of `α, β` and the double integral `∫αβ` on the original model.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use ecmodel::{count_points_fp, ord, CurveModel, FpPoint, PadicPoint};
use frobenius::poly::CubicSplit;
use frobenius::{frobenius_matrix, short_model, FrobeniusData, ShortModel};
use padic::{padic_log, sqrt_with_residue, teichmuller_of_residue, Padic, Series};
use serde::{Deserialize, Serialize};

use crate::anchor::{anchor_values, even_terms, laurent_order_needed, reg_constants, EvenTerms, RegConstants};
use crate::disk::{good_disk, good_parameter, weierstrass_disk, weierstrass_parameter, DiskSeries};
use crate::etale::Cubic;
use crate::formal::FormalDisk;
use crate::{floor_log, ColemanError};

/// `(F0, F1, F01)` for `ω0 = dx/2y`, `ω1 = x·ω0` on the short model.
#[derive(Clone, Debug)]
pub struct Values {
    pub f0: Padic,
    pub f1: Padic,
    pub f01: Padic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointIntegrals {
    pub i_alpha: Padic,
    pub i_beta: Padic,
    pub d2: Padic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiskKind {
    /// `x = x_c + p·s` around a Teichmüller point.
    Good,
    /// `y = p·s` around a 2-torsion point.
    Weierstrass,
}

#[derive(Clone, Debug)]
pub struct Center {
    pub kind: DiskKind,
    pub x: Padic,
    pub y: Padic,
    pub values: Values,
    pub series: DiskSeries,
}

/// A residue disk with everything expanded in its parameter `s ∈ Z_p`.
#[derive(Clone, Debug)]
pub struct DiskExpansion {
    pub residue: FpPoint,
    pub kind: DiskKind,
    /// Original-model coordinates.
    pub x: Series,
    pub y: Series,
    pub i_alpha: Series,
    pub i_beta: Series,
    pub d2: Series,
}

pub struct Engine {
    pub p: u64,
    pub prec: i64,
    pub work: i64,
    pub curve: CurveModel,
    pub model: ShortModel,
    pub frob: FrobeniusData,
    pub formal: FormalDisk,
    cubic: Cubic,
    even: EvenTerms,
    consts: RegConstants,
    disk_order: usize,
    centers: Mutex<HashMap<(u64, u64), Arc<Center>>>,
}

impl Engine {
    /// Set up the Frobenius structure and regularization constants for `curve` at `p`,
    /// aiming at `prec` correct digits in the outputs.
    pub fn new(curve: &CurveModel, p: u64, prec: i64) -> Result<Self, ColemanError> {
        let (n, _) = count_points_fp(curve, p)?;
        let anomaly = ord(&num_bigint::BigInt::from(n), p) as i64;
        let work = prec + 6 + 2 * anomaly;
        let model = short_model(curve, p, work + 4)?;
        let frob = frobenius_matrix(&model, work)?;
        let f = model.f();
        let split = CubicSplit::new(&f)?;
        let cubic = Cubic::new(&model.a, &model.b);
        let even = even_terms(&frob, &split, &cubic, frob.prec)?;
        let order = laurent_order_needed(&frob, &even).max(work + 2 * floor_log(p, 2 * work as u64) + 8);
        let formal = FormalDisk::new(&model, order, work + 10)?;
        let consts = reg_constants(&frob, &formal, &even)?;
        let disk_order = (work + 2 * floor_log(p, 4 * work as u64) + 6) as usize;
        Ok(Engine {
            p,
            prec,
            work,
            curve: curve.clone(),
            model,
            frob,
            formal,
            cubic,
            even,
            consts,
            disk_order,
            centers: Mutex::new(HashMap::new()),
        })
    }

    fn fmod(&self, x: u64) -> u64 {
        let p = self.p as u128;
        let a = self.model.a.residue().unwrap_or(0) as u128;
        let b = self.model.b.residue().unwrap_or(0) as u128;
        let x = x as u128;
        ((x * x % p * x + a * x + b) % p) as u64
    }

    /// Affine points of the reduced short model.
    pub fn short_residues(&self) -> Vec<(u64, u64)> {
        let p = self.p;
        let mut out = Vec::new();
        for x in 0..p {
            let v = self.fmod(x);
            for y in 0..p {
                if (y as u128 * y as u128 % p as u128) as u64 == v {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn f_at(&self, x: &Padic) -> Padic {
        &(&(&(x * x) * x) + &(&self.model.a * x)) + &self.model.b
    }

    fn d2_of(&self, v: &Values) -> Padic {
        &v.f01 + &(&self.model.kappa * &(&v.f0 * &v.f0)).div_int(2)
    }

    fn teichmuller_point(&self, xr: u64, yr: u64) -> Result<(Padic, Padic), ColemanError> {
        let prec = self.work + 4;
        let x = if xr == 0 { Padic::zero(self.p, prec) } else { teichmuller_of_residue(self.p, xr, prec)? };
        let fx = self.f_at(&x).with_prec(prec);
        let y = sqrt_with_residue(&fx, yr)?;
        Ok((x, y))
    }

    fn two_torsion_x(&self, xr: u64) -> Result<Padic, ColemanError> {
        let prec = self.work + 4;
        let mut x = Padic::from_int(self.p, xr as i64, prec);
        for _ in 0..200 {
            let df = (&x * &x).mul_int(3) + &self.model.a;
            let step = self.f_at(&x).try_div(&df)?;
            x = &x - &step;
            if step.is_zero() {
                return Ok(x.with_prec(prec));
            }
        }
        Err(ColemanError::Precision("2-torsion lift did not converge".into()))
    }
}

impl Engine {
    /// Center of the disk reducing to `(xr, yr)` on the short model, with its values.
    pub fn center(&self, xr: u64, yr: u64) -> Result<Arc<Center>, ColemanError> {
        if let Some(c) = self.centers.lock().expect("center cache").get(&(xr, yr)) {
            return Ok(c.clone());
        }
        let c = Arc::new(self.build_center(xr, yr)?);
        self.centers.lock().expect("center cache").insert((xr, yr), c.clone());
        Ok(c)
    }

    fn build_center(&self, xr: u64, yr: u64) -> Result<Center, ColemanError> {
        if self.fmod(xr) != (yr as u128 * yr as u128 % self.p as u128) as u64 {
            return Err(ColemanError::Domain(format!("({xr}, {yr}) is not on the reduced curve")));
        }
        if yr != 0 {
            let (x, y) = self.teichmuller_point(xr, yr)?;
            let [f0, f1, f01] =
                anchor_values(&self.frob, &self.model, &self.cubic, &self.even, &self.consts, &x, &y, self.work)?;
            let series = good_disk(&self.model, &x, &y, self.disk_order)?;
            return Ok(Center { kind: DiskKind::Good, x, y, values: Values { f0, f1, f01 }, series });
        }
        let x = self.two_torsion_x(xr)?;
        let y = Padic::zero(self.p, padic::NO_TAIL);
        let d2 = self.d2_two_torsion(xr, &x)?;
        let zero = Padic::zero(self.p, padic::NO_TAIL);
        let series = weierstrass_disk(&self.model, &x, self.disk_order)?;
        Ok(Center { kind: DiskKind::Weierstrass, x, y, values: Values { f0: zero.clone(), f1: zero, f01: d2 }, series })
    }

    /// `D2(W) = D2(W+Q) − D2(Q) + log(x_W − x_Q)/2` for a good anchor `Q`, from the
    /// quasi-parallelogram law and `W = −W`.
    fn d2_two_torsion(&self, xr: u64, xw: &Padic) -> Result<Padic, ColemanError> {
        let fp = padic::Fp::new(self.p);
        for (xq, yq) in self.short_residues() {
            if yq == 0 || xq == xr {
                continue;
            }
            let l = fp.mul(yq, fp.inv(fp.sub(xq, xr)));
            let xs = fp.sub(fp.sub(fp.mul(l, l), xr), xq);
            let ys = fp.neg(fp.mul(l, fp.sub(xs, xr)));
            if ys == 0 {
                continue;
            }
            let q = self.center(xq, yq)?;
            let lam = q.y.try_div(&(&q.x - xw))?;
            let x3 = &(&(&lam * &lam) - xw) - &q.x;
            let y3 = -(&lam * &(&x3 - xw));
            let r = self.values_short(&x3, &y3)?;
            let log = padic_log(&(xw - &q.x))?.div_int(2);
            return Ok(&(&self.d2_of(&r) - &self.d2_of(&q.values)) + &log);
        }
        Err(ColemanError::Domain(format!("no good anchor for the 2-torsion disk at p = {}", self.p)))
    }

    /// Values at a point of the short model.
    pub fn values_short(&self, x: &Padic, y: &Padic) -> Result<Values, ColemanError> {
        if x.valuation() < 0 {
            let z = -(x.try_div(y)?);
            let (f0, f1, f01) = self.formal.values(&z)?;
            return Ok(Values { f0, f1, f01 });
        }
        let (xr, yr) = match (x.residue(), y.residue()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(ColemanError::Precision("point known to less than one digit".into())),
        };
        let c = self.center(xr, yr)?;
        let s = match c.kind {
            DiskKind::Good => good_parameter(&c.x, x)?,
            DiskKind::Weierstrass => weierstrass_parameter(y)?,
        };
        let i0 = c.series.i0.eval(&s)?;
        let i1 = c.series.i1.eval(&s)?;
        let i01 = c.series.i01.eval(&s)?;
        let v = &c.values;
        Ok(Values { f0: &v.f0 + &i0, f1: &v.f1 + &i1, f01: &(&v.f01 + &i01) + &(&v.f1 * &i0) })
    }

    fn to_point(&self, v: &Values) -> PointIntegrals {
        let k = &self.model.kappa;
        PointIntegrals { i_alpha: v.f0.clone(), i_beta: &v.f1 + &(k * &v.f0), d2: self.d2_of(v) }
    }

    /// `∫α`, `∫β` and `∫αβ` from the tangential base point at O to `pt`.
    pub fn integrals(&self, pt: &PadicPoint) -> Result<PointIntegrals, ColemanError> {
        let s = self.model.to_short(pt);
        match &s {
            PadicPoint::Infinity => Err(ColemanError::Domain("integrals at O itself".into())),
            PadicPoint::Affine { x, y } => Ok(self.to_point(&self.values_short(x, y)?)),
        }
    }

    pub fn d2(&self, pt: &PadicPoint) -> Result<Padic, ColemanError> {
        Ok(self.integrals(pt)?.d2)
    }
}

impl Engine {
    /// Short-model residue of an original-model residue point.
    pub fn short_residue(&self, pt: FpPoint) -> Result<(u64, u64), ColemanError> {
        let FpPoint::Affine(x, y) = pt else {
            return Err(ColemanError::Domain("the disk of O has no finite center".into()));
        };
        let lift = PadicPoint::affine(Padic::from_int(self.p, x as i64, 4), Padic::from_int(self.p, y as i64, 4));
        match self.model.to_short(&lift) {
            PadicPoint::Affine { x, y } => Ok((x.residue().unwrap_or(0), y.residue().unwrap_or(0))),
            PadicPoint::Infinity => unreachable!("affine stays affine"),
        }
    }

    /// Expansions on the disk of an original-model residue point.
    pub fn disk_expansion(&self, residue: FpPoint) -> Result<DiskExpansion, ColemanError> {
        let (xr, yr) = self.short_residue(residue)?;
        let c = self.center(xr, yr)?;
        let ds = &c.series;
        let v = &c.values;
        let k = &self.model.kappa;
        let (shift, a1h, a3h) = self.model.change();
        let x = ds.x.add_constant(&-shift);
        let y = ds.y.sub(&x.scale(&a1h)).add_constant(&-a3h);
        let i_alpha = ds.i0.add_constant(&v.f0);
        let i_beta = ds.i1.add(&ds.i0.scale(k)).add_constant(&(&v.f1 + &(k * &v.f0)));
        let ib_c = &v.f1 + &(k * &v.f0);
        let d2 = ds
            .i0
            .scale(&ib_c)
            .add(&ds.i01)
            .add(&ds.i0.mul(&ds.i0).scale(&k.div_int(2)))
            .add_constant(&self.d2_of(v));
        Ok(DiskExpansion { residue, kind: c.kind, x, y, i_alpha, i_beta, d2 })
    }
}

impl Engine {
    /// `reg(h_i)` for the Frobenius corrections; both vanish for odd `h_i`.
    pub fn correction_constants(&self) -> [Padic; 2] {
        self.consts.k.clone()
    }
}

impl Engine {
    /// `∫α`, `∫β`, `∫αβ` along a path inside one residue disk, from `from` to `to`.
    pub fn tiny_integrals(&self, from: &PadicPoint, to: &PadicPoint) -> Result<PointIntegrals, ColemanError> {
        let (a, b) = (self.model.to_short(from), self.model.to_short(to));
        let (PadicPoint::Affine { x: xa, y: ya }, PadicPoint::Affine { x: xb, y: yb }) = (&a, &b) else {
            return Err(ColemanError::Domain("tiny integrals need affine endpoints".into()));
        };
        // Each leg is expressed through antiderivatives sharing one base in the disk.
        let (va, vb) = if xa.valuation() < 0 && xb.valuation() < 0 {
            (self.values_short(xa, ya)?, self.values_short(xb, yb)?)
        } else {
            let ra = (xa.residue(), ya.residue());
            let rb = (xb.residue(), yb.residue());
            if xa.valuation() < 0 || xb.valuation() < 0 || ra != rb {
                return Err(ColemanError::Domain("endpoints lie in different residue disks".into()));
            }
            let (Some(xr), Some(yr)) = ra else {
                return Err(ColemanError::Precision("point known to less than one digit".into()));
            };
            let c = self.center(xr, yr)?;
            let param = |x: &Padic, y: &Padic| match c.kind {
                DiskKind::Good => good_parameter(&c.x, x),
                DiskKind::Weierstrass => weierstrass_parameter(y),
            };
            let at = |s: &Padic| -> Result<Values, ColemanError> {
                Ok(Values { f0: c.series.i0.eval(s)?, f1: c.series.i1.eval(s)?, f01: c.series.i01.eval(s)? })
            };
            (at(&param(xa, ya)?)?, at(&param(xb, yb)?)?)
        };
        let da = self.to_point(&va);
        let db = self.to_point(&vb);
        let ia = &db.i_alpha - &da.i_alpha;
        let ib = &db.i_beta - &da.i_beta;
        let d2 = &(&db.d2 - &da.d2) - &(&ia * &da.i_beta);
        Ok(PointIntegrals { i_alpha: ia, i_beta: ib, d2 })
    }
}
