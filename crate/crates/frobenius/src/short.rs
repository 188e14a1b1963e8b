use ecmodel::{CurveModel, FormalGroup, PadicPoint};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use padic::Padic;

use crate::poly::Poly;
use crate::FrobError;

type Q = BigRational;

fn to_padic(c: &Q, p: u64, prec: i64) -> Padic {
    Padic::from_ratio(p, c.numer(), c.denom(), prec)
}

/// `y'² = x'³ + a·x' + b` with `x' = x + b2/12`, `y' = y + (a1·x + a3)/2`.
///
/// Under this change `dx'/2y'` equals `α = dx/(2y + a1x + a3)` exactly, so the
/// recorded multiplier is 1, and `β = x·α = ω1 + κ·ω0` with `κ = −b2/12`.
#[derive(Clone, Debug)]
pub struct ShortModel {
    pub p: u64,
    pub prec: i64,
    pub a_exact: Q,
    pub b_exact: Q,
    pub a: Padic,
    pub b: Padic,
    pub kappa: Padic,
    pub multiplier: Padic,
    shift: Q,
    a1_half: Q,
    a3_half: Q,
}

/// Short model over Z_p for `p ≥ 5` with good reduction.
pub fn short_model(curve: &CurveModel, p: u64, prec: i64) -> Result<ShortModel, FrobError> {
    if p < 5 {
        return Err(FrobError::UnsupportedPrime(p));
    }
    if !curve.has_good_reduction(p) {
        return Err(FrobError::BadReduction(p));
    }
    let qi = |n: &BigInt| Q::from_integer(n.clone());
    let a_exact = -qi(&curve.c4) / Q::from_integer(48.into());
    let b_exact = -qi(&curve.c6) / Q::from_integer(864.into());
    let shift = qi(&curve.b2) / Q::from_integer(12.into());
    let two = Q::from_integer(2.into());
    Ok(ShortModel {
        p,
        prec,
        a: to_padic(&a_exact, p, prec),
        b: to_padic(&b_exact, p, prec),
        kappa: to_padic(&-shift.clone(), p, prec),
        multiplier: Padic::one(p, prec),
        a_exact,
        b_exact,
        a1_half: qi(curve.a1()) / &two,
        a3_half: qi(curve.a3()) / &two,
        shift,
    })
}

impl ShortModel {
    pub fn is_identity(&self) -> bool {
        self.shift.is_zero() && self.a1_half.is_zero() && self.a3_half.is_zero()
    }

    fn c(&self, q: &Q) -> Padic {
        to_padic(q, self.p, self.prec)
    }

    /// `f(x) = x³ + a·x + b`, lowest degree first.
    pub fn f(&self) -> Poly {
        vec![self.b.clone(), self.a.clone(), self.a.zero_like(), self.a.one_like()]
    }

    /// `(b2/12, a1/2, a3/2)`: `x' = x + b2/12`, `y' = y + (a1/2)·x + a3/2`.
    pub fn change(&self) -> (Padic, Padic, Padic) {
        (self.c(&self.shift), self.c(&self.a1_half), self.c(&self.a3_half))
    }

    pub fn to_short(&self, pt: &PadicPoint) -> PadicPoint {
        match pt {
            PadicPoint::Infinity => PadicPoint::Infinity,
            PadicPoint::Affine { x, y } => {
                let xs = x + &self.c(&self.shift);
                let ys = y + &(&self.c(&self.a1_half) * x) + self.c(&self.a3_half);
                PadicPoint::affine(xs, ys)
            }
        }
    }

    pub fn from_short(&self, pt: &PadicPoint) -> PadicPoint {
        match pt {
            PadicPoint::Infinity => PadicPoint::Infinity,
            PadicPoint::Affine { x, y } => {
                let xo = x - &self.c(&self.shift);
                let yo = y - &(&self.c(&self.a1_half) * &xo) - self.c(&self.a3_half);
                PadicPoint::affine(xo, yo)
            }
        }
    }

    /// Discriminant `−16(4a³ + 27b²)` of the short model.
    pub fn discriminant(&self) -> Padic {
        let a3 = &self.a * &self.a * &self.a;
        (a3.mul_int(4) + (&self.b * &self.b).mul_int(27)).mul_int(-16)
    }

    /// Exact expansions at O of the short model.
    pub fn formal_group(&self, order: usize) -> FormalGroup {
        let z = Q::zero();
        FormalGroup::from_coefficients([z.clone(), z.clone(), z, self.a_exact.clone(), self.b_exact.clone()], order)
    }
}
