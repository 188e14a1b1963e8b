use num_bigint::BigInt;
use padic::{sqrt_with_residue, Fp, Padic, PadicError};
use serde::{Deserialize, Serialize};

use crate::curve::CurveModel;
use crate::fp::FpPoint;
use crate::EcError;

/// Point over Q_p on a Weierstrass model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum PadicPoint {
    Infinity,
    Affine { x: Padic, y: Padic },
}

impl PadicPoint {
    pub fn affine(x: Padic, y: Padic) -> Self {
        PadicPoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PadicPoint::Infinity)
    }

    pub fn x(&self) -> Option<&Padic> {
        match self {
            PadicPoint::Affine { x, .. } => Some(x),
            PadicPoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&Padic> {
        match self {
            PadicPoint::Affine { y, .. } => Some(y),
            PadicPoint::Infinity => None,
        }
    }

    /// `z = −x/y`, the parameter at O.
    pub fn z(&self) -> Option<Padic> {
        match self {
            PadicPoint::Affine { x, y } => Some(-(x / y)),
            PadicPoint::Infinity => None,
        }
    }

    /// Reduction mod p, `None` for points in the formal disk of O.
    pub fn reduction(&self) -> Option<FpPoint> {
        match self {
            PadicPoint::Infinity => Some(FpPoint::Infinity),
            PadicPoint::Affine { x, y } => {
                if x.valuation() < 0 {
                    Some(FpPoint::Infinity)
                } else {
                    Some(FpPoint::Affine(x.residue()?, y.residue()?))
                }
            }
        }
    }

    /// Whether both coordinates agree to `digits` absolute digits.
    pub fn agrees_to(&self, other: &PadicPoint, digits: i64) -> bool {
        match (self, other) {
            (PadicPoint::Infinity, PadicPoint::Infinity) => true,
            (PadicPoint::Affine { x, y }, PadicPoint::Affine { x: u, y: v }) => {
                x.agrees_to(u, digits) && y.agrees_to(v, digits)
            }
            _ => false,
        }
    }

    pub fn precision(&self) -> i64 {
        match self {
            PadicPoint::Infinity => i64::MAX,
            PadicPoint::Affine { x, y } => x.precision().min(y.precision()),
        }
    }
}

/// A Weierstrass model with coefficients in Q_p at a fixed working precision.
#[derive(Clone, Debug)]
pub struct PadicCurve {
    pub p: u64,
    pub prec: i64,
    pub a: [Padic; 5],
}

impl PadicCurve {
    pub fn new(curve: &CurveModel, p: u64, prec: i64) -> Self {
        let a = [0, 1, 2, 3, 4].map(|i| Padic::from_bigint(p, &curve.a[i], prec));
        PadicCurve { p, prec, a }
    }

    pub fn int(&self, n: i64) -> Padic {
        Padic::from_int(self.p, n, self.prec)
    }

    pub fn from_integers(&self, x: &BigInt, y: &BigInt) -> PadicPoint {
        PadicPoint::affine(Padic::from_bigint(self.p, x, self.prec), Padic::from_bigint(self.p, y, self.prec))
    }

    /// `y² + a1xy + a3y − (x³ + a2x² + a4x + a6)`.
    pub fn residual(&self, x: &Padic, y: &Padic) -> Padic {
        let [a1, a2, a3, a4, a6] = &self.a;
        let lhs = y * y + a1 * x * y + a3 * y;
        let rhs = x * x * x + a2 * x * x + a4 * x + a6;
        lhs - rhs
    }

    /// `2y + a1x + a3`.
    pub fn psi2(&self, x: &Padic, y: &Padic) -> Padic {
        y.mul_int(2) + &self.a[0] * x + &self.a[2]
    }

    pub fn neg(&self, pt: &PadicPoint) -> PadicPoint {
        match pt {
            PadicPoint::Infinity => PadicPoint::Infinity,
            PadicPoint::Affine { x, y } => PadicPoint::affine(x.clone(), -y - &self.a[0] * x - &self.a[2]),
        }
    }

    pub fn add(&self, p1: &PadicPoint, p2: &PadicPoint) -> Result<PadicPoint, EcError> {
        let [a1, a2, a3, a4, a6] = &self.a;
        let (x1, y1, x2, y2) = match (p1, p2) {
            (PadicPoint::Infinity, q) | (q, PadicPoint::Infinity) => return Ok(q.clone()),
            (PadicPoint::Affine { x: x1, y: y1 }, PadicPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let dx = x2 - x1;
        let (lambda, nu) = if dx.is_zero() {
            let s = y1 + y2 + a1 * x2 + a3;
            if s.is_zero() {
                return Ok(PadicPoint::Infinity);
            }
            let den = self.psi2(x1, y1);
            if den.is_zero() {
                return Err(EcError::Precision("doubling denominator vanishes at working precision".into()));
            }
            let num = x1 * x1 * self.int(3) + a2 * x1 * self.int(2) + a4 - a1 * y1;
            let nnum = -(x1 * x1 * x1) + a4 * x1 + a6.mul_int(2) - a3 * y1;
            (num.try_div(&den)?, nnum.try_div(&den)?)
        } else {
            ((y2 - y1).try_div(&dx)?, (y1 * x2 - y2 * x1).try_div(&dx)?)
        };
        let x3 = &lambda * &lambda + a1 * &lambda - a2 - x1 - x2;
        let y3 = -((&lambda + a1) * &x3) - nu - a3;
        if [&x3, &y3].iter().any(|c| c.is_zero() && c.precision() <= 0) {
            return Err(EcError::Precision("group law exhausted the precision budget".into()));
        }
        Ok(PadicPoint::affine(x3, y3))
    }

    pub fn double(&self, pt: &PadicPoint) -> Result<PadicPoint, EcError> {
        self.add(pt, pt)
    }

    /// `m·P` by double-and-add.
    pub fn scalar_mul(&self, m: i64, pt: &PadicPoint) -> Result<PadicPoint, EcError> {
        let mut base = if m < 0 { self.neg(pt) } else { pt.clone() };
        let mut k = m.unsigned_abs();
        let mut acc = PadicPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base)?;
            }
        }
        Ok(acc)
    }

    /// Point with the given x-coordinate whose y reduces to `y_res`; the
    /// y-discriminant must be a unit square (non-Weierstrass residue).
    pub fn lift_x(&self, x: &Padic, y_res: u64) -> Result<PadicPoint, EcError> {
        let [a1, a2, a3, a4, a6] = &self.a;
        let l = a1 * x + a3;
        let d = &l * &l + (x * x * x + a2 * x * x + a4 * x + a6).mul_int(4);
        if !d.is_unit() {
            return Err(EcError::Domain("x lies in a Weierstrass residue disk".into()));
        }
        let f = Fp::new(self.p);
        let lres = l.residue().unwrap_or(0);
        let target = f.add(f.mul(2, y_res), lres);
        let root = sqrt_with_residue(&d, target).map_err(EcError::from)?;
        let y = (root - l).div_int(2);
        Ok(PadicPoint::affine(x.clone(), y))
    }

    /// Point with the given y-coordinate whose x reduces to `x_res`, by Newton
    /// iteration in x; valid where the x-derivative of the equation is a unit.
    pub fn lift_y(&self, y: &Padic, x_res: u64) -> Result<PadicPoint, EcError> {
        let [a1, a2, _, a4, _] = &self.a;
        let mut x = Padic::from_int(self.p, x_res as i64, self.prec);
        for _ in 0..(2 * self.prec.max(4)) {
            let g = self.residual(&x, y);
            let dg = a1 * y - (&x * &x * self.int(3) + a2 * &x * self.int(2) + a4);
            if !dg.is_unit() {
                return Err(EcError::Domain("x-derivative is not a unit in this residue disk".into()));
            }
            let step = g.try_div(&dg)?;
            x = &x - &step;
            if step.is_zero() {
                return Ok(PadicPoint::affine(x, y.clone()));
            }
        }
        Err(EcError::Precision("Newton lifting of x did not settle".into()))
    }

    /// The canonical lift of an F_p point used as a disk center: `x` the least
    /// nonnegative residue with y by Hensel, or for a vertical-tangent residue
    /// the Q_p point with `2y + a1x + a3 = 0`.
    pub fn disk_center(&self, pt: FpPoint) -> Result<PadicPoint, EcError> {
        let FpPoint::Affine(xr, yr) = pt else {
            return Ok(PadicPoint::Infinity);
        };
        let f = Fp::new(self.p);
        let [a1, _, a3, _, _] = &self.a;
        let psi = f.add(f.add(f.mul(2, yr), f.mul(a1.residue().unwrap_or(0), xr)), a3.residue().unwrap_or(0));
        if psi != 0 {
            return self.lift_x(&Padic::from_int(self.p, xr as i64, self.prec), yr);
        }
        self.two_torsion_lift(xr)
    }

    /// The 2-torsion point of E(Q_p) reducing to `(x_res, ·)` with vertical tangent.
    pub fn two_torsion_lift(&self, x_res: u64) -> Result<PadicPoint, EcError> {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = a1 * a1 + a2.mul_int(4);
        let b4 = a4.mul_int(2) + a1 * a3;
        let b6 = a3 * a3 + a6.mul_int(4);
        let mut x = Padic::from_int(self.p, x_res as i64, self.prec);
        for _ in 0..(2 * self.prec.max(4)) {
            let g = x.pow(3)?.mul_int(4) + &b2 * &x * &x + b4.mul_int(2) * &x + &b6;
            let dg = x.pow(2)?.mul_int(12) + b2.mul_int(2) * &x + b4.mul_int(2);
            if !dg.is_unit() {
                return Err(EcError::Domain("repeated 2-torsion residue".into()));
            }
            let step = g.try_div(&dg)?;
            x = &x - &step;
            if step.is_zero() {
                let y = -((a1 * &x + a3).div_int(2));
                return Ok(PadicPoint::affine(x, y));
            }
        }
        Err(EcError::Precision("Newton lifting of a 2-torsion point did not settle".into()))
    }
}

impl From<PadicError> for EcError {
    fn from(e: PadicError) -> Self {
        EcError::Padic(e)
    }
}
