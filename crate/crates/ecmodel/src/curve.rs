use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::EcError;

/// Integral Weierstrass model `y² + a1xy + a3y = x³ + a2x² + a4x + a6`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveModel {
    pub label: String,
    pub a: [BigInt; 5],
    pub b2: BigInt,
    pub b4: BigInt,
    pub b6: BigInt,
    pub b8: BigInt,
    pub c4: BigInt,
    pub c6: BigInt,
    pub disc: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionType {
    Good,
    Multiplicative,
    Additive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionData {
    pub prime: u64,
    pub n_l: u32,
    pub kind: ReductionType,
}

impl CurveModel {
    pub fn new(label: &str, a: [i64; 5]) -> Result<Self, EcError> {
        Self::from_bigints(label, a.map(BigInt::from))
    }

    pub fn from_bigints(label: &str, a: [BigInt; 5]) -> Result<Self, EcError> {
        let [a1, a2, a3, a4, a6] = &a;
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - 24 * &b4;
        let b2cube: BigInt = &b2 * &b2 * &b2;
        let c6 = -b2cube + 36 * &b2 * &b4 - 216 * &b6;
        let b2b2b8: BigInt = &b2 * &b2 * &b8;
        let disc: BigInt = -b2b2b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6;
        if disc.is_zero() {
            return Err(EcError::Singular(label.to_string()));
        }
        Ok(CurveModel { label: label.to_string(), a, b2, b4, b6, b8, c4, c6, disc })
    }

    pub fn a1(&self) -> &BigInt {
        &self.a[0]
    }
    pub fn a2(&self) -> &BigInt {
        &self.a[1]
    }
    pub fn a3(&self) -> &BigInt {
        &self.a[2]
    }
    pub fn a4(&self) -> &BigInt {
        &self.a[3]
    }
    pub fn a6(&self) -> &BigInt {
        &self.a[4]
    }

    /// Left side minus right side of the Weierstrass equation at integers.
    pub fn equation_residual(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let [a1, a2, a3, a4, a6] = &self.a;
        y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)
    }

    pub fn contains_integral_point(&self, x: &BigInt, y: &BigInt) -> bool {
        self.equation_residual(x, y).is_zero()
    }

    /// `N_l = ord_l(Δ)` and the reduction type by the c4 criterion.
    pub fn classify_reduction(&self, l: u64) -> ReductionData {
        let n_l = ord(&self.disc, l);
        let kind = if n_l == 0 {
            ReductionType::Good
        } else if (&self.c4 % l).is_zero() {
            ReductionType::Additive
        } else {
            ReductionType::Multiplicative
        };
        ReductionData { prime: l, n_l, kind }
    }

    pub fn has_good_reduction(&self, p: u64) -> bool {
        !(&self.disc % p).is_zero()
    }

    /// Primes dividing the discriminant, ascending.
    pub fn bad_primes(&self) -> Result<Vec<u64>, EcError> {
        factor_primes(&self.disc.abs())
    }
}

/// Valuation of a nonzero integer at `l`.
pub fn ord(n: &BigInt, l: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let lb = BigInt::from(l);
    let mut m = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = m.div_rem(&lb);
        if !r.is_zero() {
            return k;
        }
        m = q;
        k += 1;
    }
}

pub fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for q in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let qb = BigInt::from(q);
        if *n == qb {
            return true;
        }
        if (n % &qb).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors by trial division up to 10^6, accepting a prime cofactor.
pub fn factor_primes(n: &BigInt) -> Result<Vec<u64>, EcError> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while d < 1_000_000 && m > BigInt::one() {
        let db = BigInt::from(d);
        if (&m % &db).is_zero() {
            out.push(d);
            while (&m % &db).is_zero() {
                m /= &db;
            }
        }
        if &db * &db > m {
            break;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        if is_probable_prime(&m) {
            out.push(m.to_u64().ok_or_else(|| EcError::Factorization(n.to_string()))?);
        } else {
            return Err(EcError::Factorization(n.to_string()));
        }
    }
    out.sort_unstable();
    Ok(out)
}
