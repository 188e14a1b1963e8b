//! The algebra `A = Q_p[t]/(t³ + a·t + b)`, étale when the cubic has unit discriminant.

use frobenius::poly::solve_linear;
use num_bigint::BigInt;
use padic::{Padic, PadicError};

#[derive(Clone, Debug)]
pub struct Cubic {
    pub a: Padic,
    pub b: Padic,
}

/// `c0 + c1·t + c2·t²`.
pub type Elem = [Padic; 3];

impl Cubic {
    pub fn new(a: &Padic, b: &Padic) -> Self {
        Cubic { a: a.clone(), b: b.clone() }
    }

    pub fn scalar(&self, c: &Padic) -> Elem {
        [c.clone(), c.zero_like(), c.zero_like()]
    }

    pub fn add(&self, u: &Elem, v: &Elem) -> Elem {
        [&u[0] + &v[0], &u[1] + &v[1], &u[2] + &v[2]]
    }

    pub fn scale(&self, u: &Elem, c: &Padic) -> Elem {
        [&u[0] * c, &u[1] * c, &u[2] * c]
    }

    pub fn mul(&self, u: &Elem, v: &Elem) -> Elem {
        let mut w: Vec<Padic> = vec![u[0].zero_like(); 5];
        for i in 0..3 {
            for j in 0..3 {
                w[i + j] = &w[i + j] + &(&u[i] * &v[j]);
            }
        }
        // t⁴ = −a t² − b t, t³ = −a t − b
        let t4 = w[4].clone();
        w[2] = &w[2] - &(&t4 * &self.a);
        w[1] = &w[1] - &(&t4 * &self.b);
        let t3 = w[3].clone();
        w[1] = &w[1] - &(&t3 * &self.a);
        w[0] = &w[0] - &(&t3 * &self.b);
        [w[0].clone(), w[1].clone(), w[2].clone()]
    }

    pub fn inv(&self, u: &Elem) -> Result<Elem, PadicError> {
        // Columns of the multiplication-by-u matrix are u·1, u·t, u·t².
        let z = u[0].zero_like();
        let t = [z.clone(), z.one_like(), z.clone()];
        let c0 = u.clone();
        let c1 = self.mul(u, &t);
        let c2 = self.mul(&c1, &t);
        let mat = (0..3).map(|r| vec![c0[r].clone(), c1[r].clone(), c2[r].clone()]).collect();
        let sol = solve_linear(mat, vec![z.one_like(), z.clone(), z])?;
        Ok([sol[0].clone(), sol[1].clone(), sol[2].clone()])
    }

    pub fn pow(&self, u: &Elem, mut e: u128) -> Elem {
        let one = u[0].one_like();
        let mut acc = self.scalar(&one);
        let mut base = u.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Trace to Q_p, using the power sums `3, 0, −2a` of the roots.
    pub fn trace(&self, u: &Elem) -> Padic {
        u[0].mul_int(3) - (&u[2] * &self.a).mul_int(2)
    }

    /// Logarithm of a unit: `log(u^(p⁶−1))/(p⁶−1)`, since every residue field
    /// of `A` has degree dividing 6.
    pub fn log_unit(&self, u: &Elem, prec: i64) -> Result<Elem, PadicError> {
        let p = u[0].p();
        let n = (p as u128).pow(6) - 1;
        let w = self.pow(u, n);
        let one = w[0].one_like();
        let d = [&w[0] - &one, w[1].clone(), w[2].clone()];
        if d.iter().any(|c| !c.is_zero() && c.valuation() < 1) {
            return Err(PadicError::Domain("logarithm of a non-unit in the étale algebra".into()));
        }
        let mut acc = self.scalar(&one.zero_like());
        let mut power = d.clone();
        let mut k: i64 = 1;
        loop {
            let bound = k - crate::floor_log(p, k as u64);
            if bound >= prec + 2 {
                break;
            }
            let term = self.scale(&power, &Padic::from_int(p, if k % 2 == 1 { 1 } else { -1 }, prec + 4));
            let term = [term[0].div_int(k), term[1].div_int(k), term[2].div_int(k)];
            acc = self.add(&acc, &term);
            power = self.mul(&power, &d);
            k += 1;
        }
        let m = Padic::from_ratio(p, &BigInt::from(1), &BigInt::from(n), prec + 4);
        Ok(self.scale(&acc, &m))
    }
}
