use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::PadicError;

thread_local! {
    static POWERS: RefCell<HashMap<u64, Vec<BigInt>>> = RefCell::new(HashMap::new());
}

/// `p^k` as a big integer, memoized per thread.
pub fn pow_p(p: u64, k: u32) -> BigInt {
    assert!(k < 1 << 24, "p-adic modulus exponent {k} out of range");
    POWERS.with(|cell| {
        let mut map = cell.borrow_mut();
        let table = map.entry(p).or_insert_with(|| vec![BigInt::one()]);
        while table.len() <= k as usize {
            let next = table.last().unwrap() * p;
            table.push(next);
        }
        table[k as usize].clone()
    })
}

/// Valuation of a nonzero integer at `p`, and the cofactor.
pub fn split_valuation(p: u64, n: &BigInt) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0i64;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    (v, m)
}

/// Inverse of `a` modulo `m` (assumed coprime).
pub fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// An element of Q_p known modulo `p^prec`.
///
/// Nonzero values are `unit * p^val + O(p^prec)` with `unit` coprime to `p` and
/// reduced modulo `p^(prec - val)`. Zero carries `val == prec`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Padic {
    p: u64,
    val: i64,
    unit: BigInt,
    prec: i64,
}

impl Padic {
    pub fn zero(p: u64, prec: i64) -> Self {
        Padic { p, val: prec, unit: BigInt::zero(), prec }
    }

    pub fn one(p: u64, prec: i64) -> Self {
        Self::from_int(p, 1, prec)
    }

    pub fn from_int(p: u64, n: i64, prec: i64) -> Self {
        Self::from_bigint(p, &BigInt::from(n), prec)
    }

    pub fn from_bigint(p: u64, n: &BigInt, prec: i64) -> Self {
        Self::normalize(p, 0, n.clone(), prec)
    }

    /// `num / den` for integers, `den != 0`.
    pub fn from_ratio(p: u64, num: &BigInt, den: &BigInt, prec: i64) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero(p, prec);
        }
        let (va, ua) = split_valuation(p, num);
        let (vb, ub) = split_valuation(p, den);
        let v = va - vb;
        if v >= prec {
            return Self::zero(p, prec);
        }
        let m = pow_p(p, (prec - v) as u32);
        let unit = (ua * inv_mod(&ub, &m)).mod_floor(&m);
        Padic { p, val: v, unit, prec }
    }

    /// Builds `m * p^v + O(p^prec)` and brings it to canonical form.
    pub fn normalize(p: u64, v: i64, m: BigInt, prec: i64) -> Self {
        if m.is_zero() || v >= prec {
            return Self::zero(p, prec);
        }
        let (extra, u) = split_valuation(p, &m);
        let v = v + extra;
        if v >= prec {
            return Self::zero(p, prec);
        }
        let modulus = pow_p(p, (prec - v) as u32);
        Padic { p, val: v, unit: u.mod_floor(&modulus), prec }
    }

    /// `unit * p^val + O(p^prec)` from raw parts, validated.
    pub fn from_parts(p: u64, unit: BigInt, val: i64, prec: i64) -> Result<Self, PadicError> {
        if val > prec {
            return Err(PadicError::Parse(format!("valuation {val} exceeds precision {prec}")));
        }
        if unit.is_negative() {
            return Err(PadicError::Parse("negative mantissa".into()));
        }
        if unit.is_zero() {
            return Ok(Self::zero(p, prec));
        }
        let bound = pow_p(p, (prec - val) as u32);
        if unit >= bound {
            return Err(PadicError::Parse("mantissa not reduced".into()));
        }
        if (&unit % p).is_zero() {
            return Err(PadicError::Parse("mantissa divisible by p".into()));
        }
        Ok(Padic { p, val, unit, prec })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Valuation; for zero this is the absolute precision.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn rel_precision(&self) -> i64 {
        self.prec - self.val
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.val == 0
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.p, self.prec)
    }

    pub fn one_like(&self) -> Self {
        Self::one(self.p, self.prec)
    }

    pub fn int_like(&self, n: i64) -> Self {
        Self::from_int(self.p, n, self.prec)
    }

    /// Caps the absolute precision at `prec`.
    pub fn with_prec(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        if self.is_zero() || self.val >= prec {
            return Self::zero(self.p, prec);
        }
        let m = pow_p(self.p, (prec - self.val) as u32);
        Padic { p: self.p, val: self.val, unit: self.unit.mod_floor(&m), prec }
    }

    /// Raises the claimed precision; only valid for values known to be exact.
    pub fn lift_exact(&self, prec: i64) -> Self {
        if self.is_zero() {
            return Self::zero(self.p, prec);
        }
        Padic { p: self.p, val: self.val, unit: self.unit.clone(), prec: prec.max(self.prec) }
    }

    /// Representative integer in `[0, p^prec)` for values with nonnegative valuation.
    pub fn to_bigint(&self) -> Option<BigInt> {
        if self.val < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        Some(&self.unit * pow_p(self.p, self.val as u32))
    }

    /// Reduction modulo p for integral values.
    pub fn residue(&self) -> Option<u64> {
        if self.val < 0 {
            return None;
        }
        if self.val > 0 || self.is_zero() {
            return Some(0);
        }
        (&self.unit % self.p).to_u64()
    }

    /// Residue mod p of the unit part (nonzero values only).
    pub fn residue_unit(&self) -> u64 {
        (&self.unit % self.p).to_u64().unwrap_or(0)
    }

    /// True when `self - other` vanishes to at least `digits` absolute digits.
    pub fn agrees_to(&self, other: &Padic, digits: i64) -> bool {
        (self - other).valuation() >= digits
    }

    /// Valuation of the difference, capped by the common precision.
    pub fn distance_val(&self, other: &Padic) -> i64 {
        (self - other).valuation()
    }

    pub fn try_div(&self, other: &Padic) -> Result<Padic, PadicError> {
        assert_eq!(self.p, other.p, "prime mismatch");
        if other.is_zero() {
            return Err(PadicError::Domain(format!(
                "division by zero known to O({}^{})",
                other.p, other.prec
            )));
        }
        if self.is_zero() {
            let prec = self.prec - other.val;
            return Ok(Self::zero(self.p, prec));
        }
        let v = self.val - other.val;
        let rel = self.rel_precision().min(other.rel_precision());
        let m = pow_p(self.p, rel as u32);
        let unit = (&self.unit * inv_mod(&other.unit, &m)).mod_floor(&m);
        Ok(Padic { p: self.p, val: v, unit, prec: v + rel })
    }

    pub fn inv(&self) -> Result<Padic, PadicError> {
        if self.is_zero() {
            return Err(PadicError::Domain(format!(
                "inverse of zero known to O({}^{})",
                self.p, self.prec
            )));
        }
        let rel = self.rel_precision();
        let m = pow_p(self.p, rel as u32);
        Ok(Padic { p: self.p, val: -self.val, unit: inv_mod(&self.unit, &m), prec: rel - self.val })
    }

    /// Integer power (negative exponents invert).
    pub fn pow(&self, e: i64) -> Result<Padic, PadicError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if e == 0 {
            return Ok(Self::one(self.p, self.prec.max(1)));
        }
        let mut result: Option<Padic> = None;
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => &r * &base,
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result.unwrap())
    }

    /// Product with an exact integer.
    pub fn mul_int(&self, n: i64) -> Padic {
        if n == 0 {
            return Self::zero(self.p, self.prec);
        }
        let (vn, un) = split_valuation(self.p, &BigInt::from(n));
        if self.is_zero() {
            return Self::zero(self.p, self.prec + vn);
        }
        Self::normalize(self.p, self.val + vn, &self.unit * un, self.prec + vn)
    }

    /// Quotient by an exact nonzero integer.
    pub fn div_int(&self, n: i64) -> Padic {
        assert!(n != 0, "division by zero integer");
        let (vn, un) = split_valuation(self.p, &BigInt::from(n));
        if self.is_zero() {
            return Self::zero(self.p, self.prec - vn);
        }
        let rel = self.rel_precision();
        let m = pow_p(self.p, rel as u32);
        let unit = (&self.unit * inv_mod(&un, &m)).mod_floor(&m);
        Padic { p: self.p, val: self.val - vn, unit, prec: self.prec - vn }
    }

    /// Multiplication by `p^k` (exact shift).
    pub fn shift(&self, k: i64) -> Padic {
        if self.is_zero() {
            return Self::zero(self.p, self.prec + k);
        }
        Padic { p: self.p, val: self.val + k, unit: self.unit.clone(), prec: self.prec + k }
    }
}

fn add_impl(a: &Padic, b: &Padic, negate_b: bool) -> Padic {
    assert_eq!(a.p, b.p, "prime mismatch");
    let p = a.p;
    let prec = a.prec.min(b.prec);
    if b.is_zero() {
        return a.with_prec(prec);
    }
    if a.is_zero() {
        let r = b.with_prec(prec);
        return if negate_b { -r } else { r };
    }
    let v = a.val.min(b.val);
    if v >= prec {
        return Padic::zero(p, prec);
    }
    let ua = if a.val > v { &a.unit * pow_p(p, (a.val - v) as u32) } else { a.unit.clone() };
    let ub = if b.val > v { &b.unit * pow_p(p, (b.val - v) as u32) } else { b.unit.clone() };
    let m = if negate_b { ua - ub } else { ua + ub };
    Padic::normalize(p, v, m, prec)
}

fn mul_impl(a: &Padic, b: &Padic) -> Padic {
    assert_eq!(a.p, b.p, "prime mismatch");
    let prec = (a.prec.saturating_add(b.val)).min(b.prec.saturating_add(a.val));
    if a.is_zero() || b.is_zero() {
        return Padic::zero(a.p, prec);
    }
    let v = a.val + b.val;
    let rel = a.rel_precision().min(b.rel_precision());
    let m = pow_p(a.p, rel as u32);
    Padic { p: a.p, val: v, unit: (&a.unit * &b.unit).mod_floor(&m), prec: v + rel }
}

impl Neg for &Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        if self.is_zero() {
            return self.clone();
        }
        let m = pow_p(self.p, self.rel_precision() as u32);
        Padic { p: self.p, val: self.val, unit: m - &self.unit, prec: self.prec }
    }
}

impl Neg for Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Padic> for &Padic {
            type Output = Padic;
            fn $method(self, rhs: &Padic) -> Padic {
                $body(self, rhs)
            }
        }
        impl $tr<Padic> for Padic {
            type Output = Padic;
            fn $method(self, rhs: Padic) -> Padic {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Padic> for Padic {
            type Output = Padic;
            fn $method(self, rhs: &Padic) -> Padic {
                $body(&self, rhs)
            }
        }
        impl $tr<Padic> for &Padic {
            type Output = Padic;
            fn $method(self, rhs: Padic) -> Padic {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| add_impl(a, b, false));
binop!(Sub, sub, |a, b| add_impl(a, b, true));
binop!(Mul, mul, mul_impl);
binop!(Div, div, |a: &Padic, b: &Padic| a.try_div(b).expect("p-adic division by zero"));

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}^{} + O({}^{})", self.unit, self.p, self.val, self.p, self.prec)
    }
}

impl FromStr for Padic {
    type Err = PadicError;

    /// Parses the canonical form `u*p^v + O(p^N)`.
    fn from_str(s: &str) -> Result<Self, PadicError> {
        let bad = || PadicError::Parse(format!("not a canonical p-adic number: {s:?}"));
        let (head, tail) = s.trim().split_once(" + O(").ok_or_else(bad)?;
        let tail = tail.strip_suffix(')').ok_or_else(bad)?;
        let (u, pv) = head.split_once('*').ok_or_else(bad)?;
        let (p1, v) = pv.split_once('^').ok_or_else(bad)?;
        let (p2, n) = tail.split_once('^').ok_or_else(bad)?;
        let p: u64 = p1.parse().map_err(|_| bad())?;
        if p2.parse::<u64>().map_err(|_| bad())? != p || p < 3 {
            return Err(bad());
        }
        let unit: BigInt = u.parse().map_err(|_| bad())?;
        let val: i64 = v.parse().map_err(|_| bad())?;
        let prec: i64 = n.parse().map_err(|_| bad())?;
        let x = Padic::from_parts(p, unit, val, prec)?;
        if x.is_zero() && val != prec {
            return Err(bad());
        }
        Ok(x)
    }
}

impl Serialize for Padic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Padic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
