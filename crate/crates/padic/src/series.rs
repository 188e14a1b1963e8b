use crate::number::Padic;
use crate::PadicError;

/// Sentinel tail for series that carry no analytic tail bound (formal series).
pub const NO_TAIL: i64 = i64::MAX / 8;

/// Truncated Laurent series `Σ_{k=offset}^{order-1} c_k s^k + O(s^order)` over Q_p.
///
/// `tail` bounds from below the valuation of the omitted part when the series
/// is evaluated at `|s| ≤ 1`; disk series are kept in a parameter normalized
/// to the closed unit disk, where the omitted coefficients grow in valuation
/// at least linearly with the index.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    p: u64,
    offset: i64,
    coeffs: Vec<Padic>,
    tail: i64,
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a >= NO_TAIL || b >= NO_TAIL {
        NO_TAIL
    } else {
        a + b
    }
}

fn floor_log(p: u64, k: u64) -> i64 {
    let mut n = 0;
    let mut q = p;
    while q <= k {
        n += 1;
        q = q.saturating_mul(p);
    }
    n
}

impl Series {
    pub fn new(p: u64, offset: i64, coeffs: Vec<Padic>, tail: i64) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.p() == p));
        Series { p, offset, coeffs, tail }
    }

    /// Power series (offset 0) without a tail bound.
    pub fn from_coeffs(p: u64, coeffs: Vec<Padic>) -> Self {
        Series::new(p, 0, coeffs, NO_TAIL)
    }

    /// Zero series of the given order.
    pub fn zero(p: u64, order: i64, prec: i64) -> Self {
        let n = order.max(0) as usize;
        Series::new(p, 0, vec![Padic::zero(p, prec); n], NO_TAIL)
    }

    /// Constant `c` truncated at `order`.
    pub fn constant(c: &Padic, order: i64) -> Self {
        let mut coeffs = vec![c.zero_like(); order.max(1) as usize];
        coeffs[0] = c.clone();
        Series::new(c.p(), 0, coeffs, NO_TAIL)
    }

    /// The parameter `s` itself, truncated at `order`.
    pub fn variable(p: u64, order: i64, prec: i64) -> Self {
        let mut coeffs = vec![Padic::zero(p, prec); order.max(2) as usize];
        coeffs[1] = Padic::one(p, prec);
        Series::new(p, 0, coeffs, NO_TAIL)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Exclusive truncation order.
    pub fn order(&self) -> i64 {
        self.offset + self.coeffs.len() as i64
    }

    pub fn tail(&self) -> i64 {
        self.tail
    }

    pub fn with_tail(mut self, tail: i64) -> Self {
        self.tail = tail;
        self
    }

    pub fn coeffs(&self) -> &[Padic] {
        &self.coeffs
    }

    /// Coefficient of `s^k`; indices below the offset are zero.
    pub fn coeff(&self, k: i64) -> Padic {
        assert!(k < self.order(), "coefficient beyond truncation order");
        if k < self.offset {
            let prec = self.coeffs.first().map(|c| c.precision()).unwrap_or(NO_TAIL);
            return Padic::zero(self.p, prec);
        }
        self.coeffs[(k - self.offset) as usize].clone()
    }

    /// Smallest valuation among the stored coefficients.
    pub fn min_valuation(&self) -> i64 {
        self.coeffs.iter().map(|c| c.valuation()).min().unwrap_or(NO_TAIL)
    }

    /// Smallest absolute precision among the stored coefficients.
    pub fn min_precision(&self) -> i64 {
        self.coeffs.iter().map(|c| c.precision()).min().unwrap_or(NO_TAIL)
    }

    /// Drops leading coefficients that are zero at their precision.
    pub fn strip_leading(&self) -> Series {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Series::new(self.p, self.offset + skip as i64, self.coeffs[skip..].to_vec(), self.tail)
    }

    pub fn truncate(&self, order: i64) -> Series {
        if order >= self.order() {
            return self.clone();
        }
        let keep = (order - self.offset).max(0) as usize;
        Series::new(self.p, self.offset, self.coeffs[..keep].to_vec(), self.tail)
    }

    fn aligned(&self, other: &Series) -> (i64, i64) {
        (self.offset.min(other.offset), self.order().min(other.order()))
    }

    fn combine(&self, other: &Series, negate: bool) -> Series {
        assert_eq!(self.p, other.p, "prime mismatch");
        let (lo, hi) = self.aligned(other);
        let prec_floor = self.min_precision().min(other.min_precision());
        let coeffs = (lo..hi)
            .map(|k| {
                let a = if k >= self.offset { Some(&self.coeffs[(k - self.offset) as usize]) } else { None };
                let b = if k >= other.offset { Some(&other.coeffs[(k - other.offset) as usize]) } else { None };
                match (a, b) {
                    (Some(a), Some(b)) => {
                        if negate {
                            a - b
                        } else {
                            a + b
                        }
                    }
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => {
                        if negate {
                            -b
                        } else {
                            b.clone()
                        }
                    }
                    (None, None) => Padic::zero(self.p, prec_floor),
                }
            })
            .collect();
        Series::new(self.p, lo, coeffs, self.tail.min(other.tail))
    }

    pub fn add(&self, other: &Series) -> Series {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Series {
        Series::new(self.p, self.offset, self.coeffs.iter().map(|c| -c).collect(), self.tail)
    }

    pub fn scale(&self, c: &Padic) -> Series {
        let tail = sat_add(self.tail, c.valuation());
        Series::new(self.p, self.offset, self.coeffs.iter().map(|a| a * c).collect(), tail)
    }

    /// Adds a constant to the `s^0` coefficient.
    pub fn add_constant(&self, c: &Padic) -> Series {
        self.add(&Series::new(self.p, 0, vec![c.clone()], NO_TAIL).pad_to(self.order()))
    }

    fn pad_to(&self, order: i64) -> Series {
        let mut s = self.clone();
        let prec = self.min_precision();
        while s.order() < order {
            s.coeffs.push(Padic::zero(self.p, prec));
        }
        s
    }

    pub fn mul(&self, other: &Series) -> Series {
        assert_eq!(self.p, other.p, "prime mismatch");
        let off = self.offset + other.offset;
        let order = (self.order() + other.offset).min(other.order() + self.offset);
        let n = (order - off).max(0) as usize;
        let prec = self.min_precision().min(other.min_precision());
        let mut out: Vec<Option<Padic>> = vec![None; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() && a.precision() >= NO_TAIL {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= n {
                    break;
                }
                let t = a * b;
                out[k] = Some(match out[k].take() {
                    None => t,
                    Some(acc) => acc + t,
                });
            }
        }
        let coeffs = out.into_iter().map(|c| c.unwrap_or_else(|| Padic::zero(self.p, prec))).collect();
        let mut tail = sat_add(self.tail, other.min_valuation().min(0))
            .min(sat_add(other.tail, self.min_valuation().min(0)));
        if self.tail < NO_TAIL || other.tail < NO_TAIL {
            tail = tail.min(self.dropped_bound(other, n));
        }
        Series::new(self.p, off, coeffs, tail)
    }

    /// Lower bound on the valuation of product terms beyond the truncation.
    fn dropped_bound(&self, other: &Series, n: usize) -> i64 {
        let mut suffix = vec![NO_TAIL; other.coeffs.len() + 1];
        for j in (0..other.coeffs.len()).rev() {
            suffix[j] = suffix[j + 1].min(other.coeffs[j].valuation());
        }
        let mut best = NO_TAIL;
        for (i, a) in self.coeffs.iter().enumerate() {
            let start = n.saturating_sub(i);
            if start < suffix.len() {
                best = best.min(sat_add(a.valuation(), suffix[start]));
            }
        }
        best
    }

    /// Multiplicative inverse; the leading stored coefficient must be nonzero.
    pub fn inverse(&self) -> Result<Series, PadicError> {
        let s = self.strip_leading();
        let lead = s
            .coeffs
            .first()
            .ok_or_else(|| PadicError::Precision("inverse of a series indistinguishable from 0".into()))?;
        let n = s.coeffs.len();
        let inv0 = lead.inv()?;
        let mut out: Vec<Padic> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = Padic::zero(self.p, NO_TAIL);
            for j in 1..=k {
                acc = acc + &s.coeffs[j] * &out[k - j];
            }
            out.push(-(&acc * &inv0));
        }
        let tail = sat_add(s.tail, -2 * lead.valuation());
        Ok(Series::new(self.p, -s.offset, out, tail))
    }

    pub fn derivative(&self) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.mul_int(self.offset + i as i64))
            .collect::<Vec<_>>();
        let mut out = Series::new(self.p, self.offset - 1, coeffs, self.tail);
        if self.offset == 0 && !out.coeffs.is_empty() {
            out.coeffs.remove(0);
            out.offset = 0;
        }
        out
    }

    /// Term-wise antiderivative with zero constant term.
    ///
    /// Fails when the `s^-1` coefficient is nonzero at its precision.
    pub fn integrate(&self) -> Result<Series, PadicError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.offset + i as i64;
            if k == -1 {
                if !c.is_zero() {
                    return Err(PadicError::Domain(format!("nonzero residue {c}")));
                }
                coeffs.push(Padic::zero(self.p, c.precision()));
            } else {
                coeffs.push(c.div_int(k + 1));
            }
        }
        let tail = if self.tail >= NO_TAIL {
            NO_TAIL
        } else {
            self.tail - floor_log(self.p, (self.order() + 1).max(1) as u64) - 1
        };
        Ok(Series::new(self.p, self.offset + 1, coeffs, tail))
    }

    /// Value at `s`; negative exponents need a nonzero `s`.
    pub fn eval(&self, s: &Padic) -> Result<Padic, PadicError> {
        let mut acc: Option<Padic> = None;
        for c in self.coeffs.iter().rev() {
            acc = Some(match acc {
                None => c.clone(),
                Some(a) => &a * s + c,
            });
        }
        let base = acc.unwrap_or_else(|| Padic::zero(self.p, NO_TAIL));
        let scaled = if self.offset == 0 { base } else { &base * &s.pow(self.offset)? };
        let cap = if self.tail < NO_TAIL && s.valuation() >= 0 { self.tail } else { NO_TAIL };
        Ok(scaled.with_prec(cap))
    }

    /// `f(c·s)` for a power series.
    pub fn rescale(&self, c: &Padic) -> Result<Series, PadicError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut power = c.pow(self.offset)?;
        for a in &self.coeffs {
            coeffs.push(a * &power);
            power = &power * c;
        }
        let tail = if c.valuation() >= 0 { self.tail } else { NO_TAIL };
        Ok(Series::new(self.p, self.offset, coeffs, tail))
    }

    /// `f(g)` where `g` has positive order at 0 (offset ≥ 1 after stripping).
    pub fn compose(&self, g: &Series) -> Result<Series, PadicError> {
        let g = g.strip_leading();
        if g.offset < 1 {
            return Err(PadicError::Domain("inner series must vanish at 0".into()));
        }
        let e = g.offset;
        let order = if self.offset >= 0 {
            (e * self.order()).min(g.order())
        } else {
            (e * self.order()).min(g.order() + (self.offset - 1) * e)
        };
        let mut acc = Series::zero(self.p, order, NO_TAIL);
        let top = self.order() - 1;
        for k in (0..=top).rev() {
            acc = acc.mul(&g).truncate(order).add(&Series::constant(&self.coeff(k), order));
        }
        if self.offset < 0 {
        let ginv = g.inverse()?;
            let mut neg = Series::zero(self.p, order, NO_TAIL);
            for k in self.offset..0 {
                neg = neg.add(&Series::constant(&self.coeff(k), order)).mul(&ginv).truncate(order);
            }
            acc = acc.add(&neg);
        }
        Ok(acc.truncate(order).with_tail(self.tail.min(g.tail)))
    }
}
