use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use padic::Fp;

use crate::curve::CurveModel;
use crate::EcError;

/// Point of the reduced curve over F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FpPoint {
    Infinity,
    Affine(u64, u64),
}

/// Reduction of an integral model modulo a prime of good reduction.
#[derive(Clone, Debug)]
pub struct FpCurve {
    pub field: Fp,
    pub a: [u64; 5],
}

fn reduce(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

impl FpCurve {
    pub fn new(curve: &CurveModel, p: u64) -> Result<Self, EcError> {
        if !curve.has_good_reduction(p) {
            return Err(EcError::BadReduction(p));
        }
        let a = [0, 1, 2, 3, 4].map(|i| reduce(&curve.a[i], p));
        Ok(FpCurve { field: Fp::new(p), a })
    }

    pub fn p(&self) -> u64 {
        self.field.p
    }

    fn rhs(&self, x: u64) -> u64 {
        let f = self.field;
        let [_, a2, _, a4, a6] = self.a;
        let x2 = f.mul(x, x);
        f.add(f.add(f.mul(x2, x), f.mul(a2, x2)), f.add(f.mul(a4, x), a6))
    }

    /// `(a1 x + a3)² + 4 (x³ + a2 x² + a4 x + a6)`.
    fn y_discriminant(&self, x: u64) -> u64 {
        let f = self.field;
        let l = f.add(f.mul(self.a[0], x), self.a[2]);
        f.add(f.mul(l, l), f.mul(4 % f.p, self.rhs(x)))
    }

    pub fn contains(&self, pt: FpPoint) -> bool {
        match pt {
            FpPoint::Infinity => true,
            FpPoint::Affine(x, y) => {
                let f = self.field;
                let lhs = f.add(f.mul(y, y), f.mul(y, f.add(f.mul(self.a[0], x), self.a[2])));
                lhs == self.rhs(x)
            }
        }
    }

    pub fn neg(&self, pt: FpPoint) -> FpPoint {
        match pt {
            FpPoint::Infinity => pt,
            FpPoint::Affine(x, y) => {
                let f = self.field;
                FpPoint::Affine(x, f.sub(f.neg(y), f.add(f.mul(self.a[0], x), self.a[2])))
            }
        }
    }

    pub fn add(&self, p1: FpPoint, p2: FpPoint) -> FpPoint {
        let f = self.field;
        let [a1, a2, a3, a4, a6] = self.a;
        let (x1, y1, x2, y2) = match (p1, p2) {
            (FpPoint::Infinity, q) | (q, FpPoint::Infinity) => return q,
            (FpPoint::Affine(x1, y1), FpPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let (lambda, nu) = if x1 == x2 {
            let s = f.add(f.add(y1, y2), f.add(f.mul(a1, x2), a3));
            if s == 0 {
                return FpPoint::Infinity;
            }
            let den = f.add(f.add(f.mul(2, y1), f.mul(a1, x1)), a3);
            let num = f.sub(f.add(f.add(f.mul(3, f.mul(x1, x1)), f.mul(f.mul(2, a2), x1)), a4), f.mul(a1, y1));
            let inv = f.inv(den);
            let x3 = f.mul(f.mul(x1, x1), x1);
            let nnum = f.sub(f.add(f.add(f.neg(x3), f.mul(a4, x1)), f.mul(2, a6)), f.mul(a3, y1));
            (f.mul(num, inv), f.mul(nnum, inv))
        } else {
            let inv = f.inv(f.sub(x2, x1));
            let lambda = f.mul(f.sub(y2, y1), inv);
            let nu = f.mul(f.sub(f.mul(y1, x2), f.mul(y2, x1)), inv);
            (lambda, nu)
        };
        let x3 = f.sub(f.sub(f.sub(f.add(f.mul(lambda, lambda), f.mul(a1, lambda)), a2), x1), x2);
        let y3 = f.sub(f.sub(f.neg(f.mul(f.add(lambda, a1), x3)), nu), a3);
        FpPoint::Affine(x3, y3)
    }

    pub fn mul(&self, m: i64, pt: FpPoint) -> FpPoint {
        let mut base = if m < 0 { self.neg(pt) } else { pt };
        let mut k = m.unsigned_abs();
        let mut acc = FpPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// All affine points, ordered by (x, y).
    pub fn affine_points(&self) -> Vec<FpPoint> {
        let f = self.field;
        let p = f.p;
        let inv2 = f.inv(2);
        let mut out = Vec::new();
        for x in 0..p {
            let d = self.y_discriminant(x);
            if let Some(r) = f.sqrt(d) {
                let l = f.add(f.mul(self.a[0], x), self.a[2]);
                let y1 = f.mul(f.sub(r, l), inv2);
                let y2 = f.mul(f.sub(f.neg(r), l), inv2);
                out.push(FpPoint::Affine(x, y1.min(y2)));
                if y1 != y2 {
                    out.push(FpPoint::Affine(x, y1.max(y2)));
                }
            }
        }
        out
    }

    /// Whether the point has a vertical tangent (`2y + a1x + a3 = 0`).
    pub fn is_two_torsion(&self, pt: FpPoint) -> bool {
        match pt {
            FpPoint::Infinity => false,
            FpPoint::Affine(x, y) => {
                let f = self.field;
                f.add(f.add(f.mul(2, y), f.mul(self.a[0], x)), self.a[2]) == 0
            }
        }
    }

    pub fn order_of(&self, pt: FpPoint) -> u64 {
        let mut q = pt;
        let mut n = 1;
        while q != FpPoint::Infinity {
            q = self.add(q, pt);
            n += 1;
        }
        n
    }
}

/// `(#Ẽ(F_p), a_p)` by a quadratic-character sweep over a table of squares.
pub fn count_points_fp(curve: &CurveModel, p: u64) -> Result<(u64, i64), EcError> {
    if p == 2 {
        return Err(EcError::UnsupportedPrime(p));
    }
    let c = FpCurve::new(curve, p)?;
    let f = c.field;
    let mut square = vec![false; p as usize];
    for r in 0..p {
        square[f.mul(r, r) as usize] = true;
    }
    let mut count = 1u64;
    for x in 0..p {
        let d = c.y_discriminant(x);
        count += if d == 0 {
            1
        } else if square[d as usize] {
            2
        } else {
            0
        };
    }
    Ok((count, p as i64 + 1 - count as i64))
}
