use crate::fp::FpPoly;
use crate::number::{pow_p, Padic};
use crate::series::Series;
use crate::PadicError;

/// Zeros of a disk series together with the Strassman bound that limits them.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    pub zeros: Vec<Padic>,
    pub strassman_bound: usize,
}

/// Content valuation and dominant index of a power series on the closed unit disk.
fn content(g: &Series) -> Result<(i64, usize), PadicError> {
    assert!(g.offset() >= 0, "zero finding needs a power series");
    let shift = g.offset() as usize;
    let mut m = i64::MAX;
    let mut dom = 0usize;
    for (i, c) in g.coeffs().iter().enumerate() {
        if !c.is_zero() && c.valuation() <= m {
            if c.valuation() < m {
                m = c.valuation();
            }
            dom = i + shift;
        }
    }
    if m == i64::MAX {
        return Err(PadicError::Precision(
            "series indistinguishable from 0 at working precision".into(),
        ));
    }
    if let Some(c) = g.coeffs().iter().find(|c| c.is_zero() && c.precision() <= m) {
        return Err(PadicError::Precision(format!(
            "coefficient known only to O(p^{}) may dominate content {m}",
            c.precision()
        )));
    }
    if g.tail() <= m {
        return Err(PadicError::Truncation(format!(
            "tail bound {} does not exceed content {m}; Strassman index beyond order {}",
            g.tail(),
            g.order()
        )));
    }
    Ok((m, dom))
}

fn reduction(g: &Series, m: i64) -> FpPoly {
    let p = g.p();
    let mut coeffs = vec![0u64; g.order() as usize];
    for (i, c) in g.coeffs().iter().enumerate() {
        if !c.is_zero() && c.valuation() == m {
            coeffs[i + g.offset() as usize] = c.residue_unit();
        }
    }
    FpPoly::new(p, coeffs)
}

/// `g(a + p·w)` as a series in `w`.
fn recenter(g: &Series, a: u64) -> Series {
    let p = g.p();
    let n = g.order() as usize;
    let mut c: Vec<Padic> = (0..n as i64).map(|k| g.coeff(k)).collect();
    let prec = g.min_precision();
    let a = Padic::from_int(p, a as i64, prec.max(1));
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &c[j + 1] * &a;
            c[j] = &c[j] + &t;
        }
    }
    let mut scale = Padic::one(p, prec.max(1) + n as i64);
    for coeff in c.iter_mut() {
        *coeff = &*coeff * &scale;
        scale = scale.shift(1);
    }
    Series::new(p, 0, c, g.tail())
}

fn newton(g: &Series, a: u64, m: i64) -> Result<Padic, PadicError> {
    let p = g.p();
    let dg = g.derivative();
    let target = g.min_precision().min(g.tail()) - m;
    let mut u = Padic::from_int(p, a as i64, target.max(1));
    for _ in 0..128 {
        let num = g.eval(&u)?;
        let den = dg.eval(&u)?;
        if den.valuation() != m {
            return Err(PadicError::Precision("derivative lost its content during lifting".into()));
        }
        let step = num.try_div(&den)?;
        let next = &u - &step;
        let done = step.is_zero();
        u = next;
        if done {
            return Ok(u);
        }
    }
    Err(PadicError::Convergence("Newton iteration did not settle".into()))
}

fn solve(g: &Series, depth: usize) -> Result<Vec<Padic>, PadicError> {
    let p = g.p();
    let (m, _) = content(g)?;
    let gbar = reduction(g, m);
    if gbar.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let dgbar = gbar.derivative();
    let mut out = Vec::new();
    for a in gbar.roots() {
        if dgbar.eval(a) != 0 {
            out.push(newton(g, a, m)?);
        } else {
            if depth > 4 * g.min_precision().max(8) as usize {
                return Err(PadicError::Precision("repeated root not separated at working precision".into()));
            }
            let h = recenter(g, a);
            let base = Padic::from_int(p, a as i64, g.min_precision().max(1) + depth as i64 + 2);
            for w in solve(&h, depth + 1)? {
                out.push(&base + &w.shift(1));
            }
        }
    }
    Ok(out)
}

/// All zeros `s` with `v(s) ≥ radius` of a power series given on the closed unit disk.
///
/// Zeros come from mod-p root enumeration of the content-stripped reduction and
/// Newton lifting, with subdivision into sub-disks at repeated residues.
pub fn series_zeros_in_disk(f: &Series, radius: i64) -> Result<ZeroSet, PadicError> {
    let p = f.p();
    let big = f.min_precision().max(1) + radius.max(0) + 2;
    let scale = Padic::from_bigint(p, &pow_p(p, radius.max(0) as u32), big);
    let g = if radius > 0 { f.rescale(&scale)? } else { f.clone() };
    let (_, bound) = content(&g)?;
    let mut zeros: Vec<Padic> = solve(&g, 0)?.into_iter().map(|u| u.shift(radius.max(0))).collect();
    if zeros.len() > bound {
        return Err(PadicError::Precision(format!(
            "{} zeros exceed the Strassman bound {bound}",
            zeros.len()
        )));
    }
    zeros.sort_by(|x, y| {
        let kx = x.to_bigint().map(|b| b.to_string()).unwrap_or_default();
        let ky = y.to_bigint().map(|b| b.to_string()).unwrap_or_default();
        (kx.len(), kx).cmp(&(ky.len(), ky))
    });
    Ok(ZeroSet { zeros, strassman_bound: bound })
}
