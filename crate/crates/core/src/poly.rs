//! Univariate polynomials over a [`Field`].

use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};

/// Dense polynomial, low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Self {
        Poly::new(vec![c])
    }

    /// `x + c`
    pub fn linear(f: &Field, c: Elem) -> Self {
        Poly::new(vec![c, f.one()])
    }

    pub fn x(f: &Field) -> Self {
        Poly::new(vec![Elem::ZERO, f.one()])
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: Elem, f: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Quotient and remainder.
    pub fn divrem(&self, d: &Poly, f: &Field) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(d.lead())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![Elem::ZERO; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], lead_inv);
            q[k] = c;
            if c.is_zero() {
                continue;
            }
            for (i, &di) in d.coeffs.iter().enumerate() {
                r[k + i] = f.sub(r[k + i], f.mul(c, di));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, d: &Poly, f: &Field) -> Result<Poly> {
        Ok(self.divrem(d, f)?.1)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        match f.inv(self.lead()) {
            Ok(li) => self.scale(li, f),
            Err(_) => Poly::zero(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly, f: &Field) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Poly, f: &Field) -> Result<Poly> {
        let mut result = Poly::constant(f.one()).rem(m, f)?;
        let mut base = self.rem(m, f)?;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, f).rem(m, f)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f).rem(m, f)?;
            }
        }
        Ok(result)
    }

    pub fn map_coeffs(&self, g: impl Fn(Elem) -> Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| g(c)).collect())
    }

    /// Distinct roots in `f`, ascending by ordinal.
    pub fn roots(&self, f: &Field) -> Vec<Elem> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let x = Poly::x(f);
        let m = self.monic(f);
        let xq = x.powmod(f.size(), &m, f).expect("nonzero modulus");
        let split = m.gcd(&xq.sub(&x, f), f);
        let mut out = Vec::new();
        split_linear(&split, f, &mut out);
        out.sort();
        out
    }

    /// Irreducibility over `f` (Ben-Or: `gcd(g, x^(q^i) - x) = 1` for `i <= deg/2`).
    pub fn is_irreducible(&self, f: &Field) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let m = self.monic(f);
        let x = Poly::x(f);
        let mut xp = x.clone();
        for _ in 0..d / 2 {
            xp = xp.powmod(f.size(), &m, f).expect("nonzero modulus");
            if m.gcd(&xp.sub(&x, f), f).degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

/// Equal-degree splitting of a monic product of distinct linear factors.
fn split_linear(g: &Poly, f: &Field, out: &mut Vec<Elem>) {
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            out.push(f.neg(g.coeff(0)));
            return;
        }
        _ => {}
    }
    let q = f.size();
    let one = Poly::constant(f.one());
    for delta in f.enumerate() {
        let h = if f.characteristic() == 2 {
            if delta.is_zero() {
                continue;
            }
            // absolute trace of delta*x
            let bx = Poly::new(vec![Elem::ZERO, delta]);
            let mut acc = Poly::zero();
            let mut cur = bx.rem(g, f).expect("nonzero");
            for _ in 0..f.degree() {
                acc = acc.add(&cur, f);
                cur = cur.mul(&cur, f).rem(g, f).expect("nonzero");
            }
            acc
        } else {
            Poly::linear(f, delta).powmod((q - 1) / 2, g, f).expect("nonzero").sub(&one, f)
        };
        let d = g.gcd(&h, f);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && Some(dd) < g.degree() {
            let (other, _) = g.divrem(&d, f).expect("nonzero");
            split_linear(&d, f, out);
            split_linear(&other.monic(f), f, out);
            return;
        }
    }
    unreachable!("distinct roots are always separated by some shift")
}

/// Monic polynomial `t^n + c_{n-1} t^{n-1} + .. + c_0`, stored without the
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    lower: Vec<Elem>,
}

impl MonicPoly {
    /// From the non-leading coefficients `c_0, .., c_{n-1}`.
    pub fn new(lower: Vec<Elem>) -> Self {
        MonicPoly { lower }
    }

    pub fn from_poly(p: &Poly, f: &Field) -> Result<Self> {
        let d = p.degree().ok_or(Error::Precondition("zero polynomial".into()))?;
        let m = p.monic(f);
        Ok(MonicPoly { lower: m.coeffs()[..d].to_vec() })
    }

    pub fn degree(&self) -> usize {
        self.lower.len()
    }

    /// `c_i` for `i < n`.
    pub fn lower(&self) -> &[Elem] {
        &self.lower
    }

    pub fn to_poly(&self, f: &Field) -> Poly {
        let mut c = self.lower.clone();
        c.push(f.one());
        Poly::new(c)
    }

    pub fn is_irreducible(&self, f: &Field) -> bool {
        self.to_poly(f).is_irreducible(f)
    }

    pub fn map(&self, g: impl Fn(Elem) -> Elem) -> MonicPoly {
        MonicPoly { lower: self.lower.iter().map(|&c| g(c)).collect() }
    }

    /// `t^n + ...` rendered with element encodings, highest degree first.
    pub fn format(&self, f: &Field) -> String {
        let n = self.degree();
        let mut parts = vec![format!("t^{n}")];
        for i in (0..n).rev() {
            let c = self.lower[i];
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "*t".to_string(),
                _ => format!("*t^{i}"),
            };
            parts.push(format!("{}{}", f.format(c), mono));
        }
        parts.join("+")
    }

    /// Parses a comma-separated list `c_0,..,c_{n-1}` of element encodings.
    pub fn parse(f: &Field, s: &str) -> Result<Self> {
        let lower = split_top_level(s).iter().map(|t| f.parse(t)).collect::<Result<Vec<_>>>()?;
        if lower.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        Ok(MonicPoly { lower })
    }
}

/// Splits on commas that are not inside `[...]`.
pub fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur).trim().to_string()),
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}
