/// Arithmetic in the prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    #[inline]
    pub fn reduce(&self, a: i128) -> u64 {
        a.rem_euclid(self.p as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero in F_p");
        self.pow(a, self.p - 2)
    }

    /// Legendre symbol as 0, 1 or −1.
    pub fn legendre(&self, a: u64) -> i32 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if self.pow(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// A square root by Tonelli–Shanks, if one exists.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.legendre(z) != -1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r.min(p - r))
    }

    /// Elements of exact multiplicative order `n` (n | p − 1), ascending.
    pub fn elements_of_order(&self, n: u64) -> Vec<u64> {
        if (self.p - 1) % n != 0 {
            return Vec::new();
        }
        let g = self.generator();
        let step = (self.p - 1) / n;
        let h = self.pow(g, step);
        let mut out: Vec<u64> = (1..n)
            .filter(|k| num_integer::gcd(*k, n) == 1)
            .map(|k| self.pow(h, k))
            .collect();
        if n == 1 {
            out.push(1);
        }
        out.sort_unstable();
        out
    }

    /// Smallest primitive root.
    pub fn generator(&self) -> u64 {
        let p = self.p;
        if p == 2 {
            return 1;
        }
        let mut factors = Vec::new();
        let mut n = p - 1;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                factors.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            factors.push(n);
        }
        (2..p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (p - 1) / q) != 1))
            .expect("prime field has a generator")
    }
}

/// Dense polynomial over F_p, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub field: Fp,
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let field = Fp::new(p);
        let mut c: Vec<u64> = coeffs.into_iter().map(|a| a % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { field, coeffs: c }
    }

    pub fn p(&self) -> u64 {
        self.field.p
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        let x = x % f.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> FpPoly {
        let f = self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| f.mul(a, k as u64 % f.p))
            .collect();
        FpPoly::new(f.p, c)
    }

    /// All roots in F_p by exhaustive evaluation.
    pub fn roots(&self) -> Vec<u64> {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        (0..self.field.p).filter(|&x| self.eval(x) == 0).collect()
    }
}
