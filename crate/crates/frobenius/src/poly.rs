//! Dense polynomials over Q_p, lowest degree first.

use padic::{Padic, PadicError};

pub type Poly = Vec<Padic>;

/// Precision of a zero that is exact; arithmetic with it never normalizes.
pub const EXACT: i64 = padic::NO_TAIL;

pub fn exact_zero(p: u64) -> Padic {
    Padic::zero(p, EXACT)
}

pub fn zero_poly(p: u64, len: usize, prec: i64) -> Poly {
    vec![Padic::zero(p, prec); len]
}

pub fn add(a: &[Padic], b: &[Padic]) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, c) in out.iter_mut().zip(short) {
        *o = &*o + c;
    }
    out
}

pub fn sub(a: &[Padic], b: &[Padic]) -> Poly {
    let neg: Poly = b.iter().map(|c| -c).collect();
    add(a, &neg)
}

/// In-place `a += c·x^shift·b`.
pub fn add_scaled(a: &mut Poly, b: &[Padic], c: &Padic, shift: usize) {
    if a.len() < b.len() + shift {
        let z = c.zero_like();
        a.resize(b.len() + shift, z);
    }
    for (i, bi) in b.iter().enumerate() {
        let t = bi * c;
        a[i + shift] = &a[i + shift] + &t;
    }
}

pub fn scale(a: &[Padic], c: &Padic) -> Poly {
    a.iter().map(|x| x * c).collect()
}

pub fn mul(a: &[Padic], b: &[Padic]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![exact_zero(a[0].p()); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() && x.precision() >= EXACT {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

pub fn derivative(a: &[Padic]) -> Poly {
    a.iter().enumerate().skip(1).map(|(k, c)| c.mul_int(k as i64)).collect()
}

pub fn eval(a: &[Padic], x: &Padic) -> Padic {
    let mut acc: Option<Padic> = None;
    for c in a.iter().rev() {
        acc = Some(match acc {
            None => c.clone(),
            Some(v) => &(&v * x) + c,
        });
    }
    acc.unwrap_or_else(|| x.zero_like())
}

/// Quotient and remainder by a monic polynomial.
pub fn divrem_monic(a: &[Padic], f: &[Padic]) -> (Poly, Poly) {
    let d = f.len() - 1;
    if a.len() <= d {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![a[0].zero_like(); a.len() - d];
    for k in (0..q.len()).rev() {
        let c = r[k + d].clone();
        for j in 0..d {
            r[k + j] = &r[k + j] - &(&c * &f[j]);
        }
        r[k + d] = c.zero_like();
        q[k] = c;
    }
    r.truncate(d);
    (q, r)
}

/// Solves `A·x = b` by Gaussian elimination with minimal-valuation pivots.
pub fn solve_linear(mut a: Vec<Vec<Padic>>, mut b: Vec<Padic>) -> Result<Vec<Padic>, PadicError> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].valuation())
            .ok_or_else(|| PadicError::Precision("singular linear system at working precision".into()))?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].inv()?;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let t = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
            let t = &factor * &b[col];
            b[r] = &b[r] - &t;
        }
    }
    Ok((0..n).map(|i| &b[i] * &a[i][i].inv().expect("pivot checked")).collect())
}

/// Splitting data for a separable monic cubic `f` with unit discriminant.
#[derive(Clone, Debug)]
pub struct CubicSplit {
    pub f: Poly,
    pub df: Poly,
    /// `x^j = U_j f + V_j f'` for `j = 0, 1, 2`.
    basis: Vec<(Poly, Poly)>,
}

impl CubicSplit {
    pub fn new(f: &[Padic]) -> Result<Self, PadicError> {
        assert_eq!(f.len(), 4, "cubic expected");
        let df = derivative(f);
        let z = f[0].zero_like();
        // Unknowns u0, u1, v0, v1, v2; equations are the coefficients of x^0..x^4.
        let mut mat = vec![vec![z.clone(); 5]; 5];
        for (i, fi) in f.iter().enumerate() {
            mat[i][0] = fi.clone();
            mat[i + 1][1] = fi.clone();
        }
        for (i, di) in df.iter().enumerate() {
            for s in 0..3 {
                mat[i + s][2 + s] = di.clone();
            }
        }
        let mut basis = Vec::new();
        for j in 0..3 {
            let mut rhs = vec![z.clone(); 5];
            rhs[j] = z.one_like();
            let sol = solve_linear(mat.clone(), rhs)?;
            basis.push((sol[0..2].to_vec(), sol[2..5].to_vec()));
        }
        Ok(CubicSplit { f: f.to_vec(), df, basis })
    }

    /// `(U, V)` with `r = U·f + V·f'`, `deg U ≤ 1`, `deg V ≤ 2`, for `deg r ≤ 2`.
    pub fn split(&self, r: &[Padic]) -> (Poly, Poly) {
        let z = exact_zero(self.f[0].p());
        let mut u = vec![z.clone(); 2];
        let mut v = vec![z; 3];
        for (j, c) in r.iter().enumerate().take(3) {
            let (uj, vj) = &self.basis[j];
            for (k, x) in uj.iter().enumerate() {
                u[k] = &u[k] + &(c * x);
            }
            for (k, x) in vj.iter().enumerate() {
                v[k] = &v[k] + &(c * x);
            }
        }
        (u, v)
    }
}
