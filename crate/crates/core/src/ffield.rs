//! Finite fields `F_{p^d} = F_p[t]/(m(t))` with table-driven arithmetic.
//!
//! An element is an [`Elem`], a plain ordinal into the owning [`Field`]. The
//! ordinal encodes the little-endian coefficient vector `(c0, .., c_{d-1})`
//! read as a base-`p` number with `c0` most significant, so ordinal order is
//! the lexicographic order of coefficient tuples and `Elem(0)` is zero.
//!
//! Multiplication uses discrete log tables over a primitive element and
//! addition uses Zech logarithms (plain XOR in characteristic 2). A field may
//! carry a `base` subfield together with the image of the subfield's
//! generator, which is how `F_q ⊂ F_{q^m}` towers are represented.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, prime_factors, prime_power};

const NONE: u32 = u32::MAX;
const MAX_FIELD_SIZE: u64 = 1 << 22;

/// An element of some [`Field`], as an ordinal in enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn ordinal(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct Subfield {
    field: Arc<Field>,
    generator_image: Elem,
    /// Image of every subfield element, indexed by its ordinal.
    table: Vec<Elem>,
    /// Preimage by ordinal of this field, `NONE` outside the subfield.
    preimage: Vec<u32>,
}

/// A finite field context. Immutable after construction.
#[derive(Debug)]
pub struct Field {
    p: u32,
    degree: usize,
    modulus: Vec<u32>,
    size: u32,
    /// Ordinal weight of coefficient `c_i`, i.e. `p^(d-1-i)`.
    weights: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    primitive: Elem,
    base: Option<Subfield>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl Field {
    /// Creates `F_{p^d}`. Without a modulus, the lexicographically smallest
    /// monic irreducible of degree `d` is used.
    pub fn new(p: u32, d: usize, modulus: Option<&[u32]>) -> Result<Arc<Field>> {
        Ok(Arc::new(Self::build(p, d, modulus)?))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Arc<Field>> {
        Self::new(p, 1, None)
    }

    /// `F_q` for a prime power `q`, with the default modulus.
    pub fn with_order(q: u64) -> Result<Arc<Field>> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p as u32, e as usize, None)
    }

    /// `F_{q^m}` as a single extension of `F_p` of degree `e*m`, with `base`
    /// located as the subfield generated by the first root (in enumeration
    /// order) of the base modulus.
    pub fn extension(base: &Arc<Field>, m: usize) -> Result<Arc<Field>> {
        if m == 0 {
            return Err(Error::Precondition("extension degree must be positive".into()));
        }
        let mut field = Self::build(base.p, base.degree * m, None)?;
        let image =
            field.enumerate().find(|&x| field.eval_fp_poly(&base.modulus, x).is_zero()).ok_or(Error::NoEmbedding)?;
        let mut table = Vec::with_capacity(base.size as usize);
        let mut preimage = vec![NONE; field.size as usize];
        for a in base.enumerate() {
            let coeffs = base.coeffs(a);
            let mut acc = Elem::ZERO;
            let mut pw = field.one();
            for &c in &coeffs {
                acc = field.add(acc, field.mul(field.from_int(c as i64), pw));
                pw = field.mul(pw, image);
            }
            preimage[acc.0 as usize] = a.0;
            table.push(acc);
        }
        field.base = Some(Subfield { field: Arc::clone(base), generator_image: image, table, preimage });
        Ok(Arc::new(field))
    }

    fn build(p: u32, d: usize, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if d == 0 {
            return Err(Error::InvalidModulus("degree must be positive".into()));
        }
        let size = (p as u64)
            .checked_pow(d as u32)
            .filter(|&s| s <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge((p as f64).powi(d as i32) as u64))?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != d + 1 || m[d] != 1 {
                    return Err(Error::InvalidModulus(format!("expected a monic polynomial of degree {d}")));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus("coefficients must lie in [0, p)".into()));
                }
                if !fp::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => default_modulus(p, d),
        };
        let mut weights = vec![1u32; d];
        for i in (0..d.saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * p;
        }
        let n = size - 1;
        let mut field = Field {
            p,
            degree: d,
            modulus,
            size: size as u32,
            weights,
            exp: Vec::new(),
            log: Vec::new(),
            zech: Vec::new(),
            primitive: Elem::ZERO,
            base: None,
        };

        let factors = prime_factors(n);
        let primitive = (1..size as u32)
            .map(Elem)
            .find(|&g| {
                let v = field.coeffs(g);
                factors.iter().all(|&l| !fp::is_one(&fp::powmod(&v, n / l, &field.modulus, p)))
            })
            .expect("multiplicative group is cyclic");
        let g = field.coeffs(primitive);

        let mut exp = vec![0u32; n as usize];
        let mut log = vec![NONE; size as usize];
        let mut cur = vec![0u32; d];
        cur[0] = 1;
        for (k, slot) in exp.iter_mut().enumerate() {
            let ord = field.ordinal_of(&cur);
            *slot = ord;
            log[ord as usize] = k as u32;
            cur = fp::mulmod(&cur, &g, &field.modulus, p);
        }
        let w0 = field.weights[0];
        let zech = exp
            .iter()
            .map(|&v| {
                let c0 = v / w0;
                let w = if c0 == p - 1 { v - (p - 1) * w0 } else { v + w0 };
                if w == 0 {
                    NONE
                } else {
                    log[w as usize]
                }
            })
            .collect();
        field.exp = exp;
        field.log = log;
        field.zech = zech;
        field.primitive = primitive;
        Ok(field)
    }

    fn ordinal_of(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().zip(&self.weights).map(|(c, w)| c * w).sum()
    }

    fn eval_fp_poly(&self, poly: &[u32], x: Elem) -> Elem {
        poly.iter().rev().fold(Elem::ZERO, |acc, &c| self.add(self.mul(acc, x), self.from_int(c as i64)))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> u64 {
        self.size as u64
    }

    /// Monic modulus, low degree first, length `degree + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn base(&self) -> Option<&Arc<Field>> {
        self.base.as_ref().map(|b| &b.field)
    }

    /// Image in this field of the base field's generator `t`.
    pub fn base_generator_image(&self) -> Option<Elem> {
        self.base.as_ref().map(|b| b.generator_image)
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem(self.weights[0])
    }

    /// The class of `t` in `F_p[t]/(m)`.
    pub fn t(&self) -> Elem {
        if self.degree == 1 {
            self.from_int(-(self.modulus[0] as i64))
        } else {
            Elem(self.weights[1])
        }
    }

    /// Integer constant reduced mod `p`.
    pub fn from_int(&self, k: i64) -> Elem {
        let c = k.rem_euclid(self.p as i64) as u32;
        Elem(c * self.weights[0])
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.degree || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!("expected at most {} coefficients in [0, {})", self.degree, self.p)));
        }
        Ok(Elem(self.ordinal_of(coeffs)))
    }

    /// Little-endian coefficient vector of length `degree`.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        self.weights.iter().map(|&w| (a.0 / w) % self.p).collect()
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.size - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let k = if lb >= la { lb - la } else { lb + n - la };
        match self.zech[k as usize] {
            NONE => Elem::ZERO,
            z => Elem(self.exp[((la + z) % n) as usize]),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        let n = self.size - 1;
        Elem(self.exp[((self.log[a.0 as usize] + n / 2) % n) as usize])
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let n = self.size - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.size - 1;
        let l = self.log[a.0 as usize];
        Ok(Elem(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k`; negative `k` inverts first.
    pub fn pow(&self, a: Elem, k: i64) -> Result<Elem> {
        if k == 0 {
            return Ok(self.one());
        }
        if a.0 == 0 {
            return if k > 0 { Ok(Elem::ZERO) } else { Err(Error::DivisionByZero) };
        }
        let n = (self.size - 1) as i128;
        let l = self.log[a.0 as usize] as i128;
        let e = (l * k as i128).rem_euclid(n);
        Ok(Elem(self.exp[e as usize]))
    }

    /// Power with a non-negative exponent; never fails.
    pub fn pow_u(&self, a: Elem, k: u64) -> Elem {
        self.pow(a, k as i64).unwrap_or(Elem::ZERO)
    }

    /// Discrete log to the base of [`Field::primitive_element`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Option<u64> {
        let n = (self.size - 1) as u64;
        self.log(a).map(|l| n / gcd(n, l as u64))
    }

    /// First element in enumeration order generating the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        self.primitive
    }

    /// All elements in enumeration order.
    pub fn enumerate(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        (0..self.size).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        (1..self.size).map(Elem)
    }

    /// Degree `e` over `F_p` of the subfield of order `q`, if it exists.
    pub fn subfield_degree(&self, q: u64) -> Result<usize> {
        match prime_power(q) {
            Some((p, e)) if p == self.p as u64 && self.degree.is_multiple_of(e as usize) => Ok(e as usize),
            _ => Err(Error::NotSubfield(q)),
        }
    }

    /// `a^q` for a subfield order `q`.
    pub fn frobenius(&self, a: Elem, q: u64) -> Result<Elem> {
        self.subfield_degree(q)?;
        Ok(self.pow_u(a, q))
    }

    /// `a^(1 + q + .. + q^(m-1))`, which lies in `F_q`.
    pub fn norm(&self, a: Elem, q: u64) -> Result<Elem> {
        let e = self.subfield_degree(q)?;
        let m = (self.degree / e) as u32;
        let exponent = (q.pow(m) - 1) / (q - 1);
        let r = self.pow_u(a, exponent);
        debug_assert_eq!(self.pow_u(r, q), r);
        Ok(r)
    }

    /// `a + a^q + .. + a^(q^(m-1))`, which lies in `F_q`.
    pub fn trace(&self, a: Elem, q: u64) -> Result<Elem> {
        let e = self.subfield_degree(q)?;
        let m = self.degree / e;
        let mut acc = Elem::ZERO;
        let mut cur = a;
        for _ in 0..m {
            acc = self.add(acc, cur);
            cur = self.pow_u(cur, q);
        }
        debug_assert_eq!(self.pow_u(acc, q), acc);
        Ok(acc)
    }

    /// Is `a` fixed by `x -> x^q`?
    pub fn in_subfield(&self, a: Elem, q: u64) -> bool {
        self.pow_u(a, q) == a
    }

    /// Maps `a` from `sub` into this field along the base chain.
    pub fn embed(&self, sub: &Field, a: Elem) -> Result<Elem> {
        if sub == self {
            return Ok(a);
        }
        let base = self.base.as_ref().ok_or(Error::NoEmbedding)?;
        let inner = base.field.embed(sub, a)?;
        Ok(base.table[inner.0 as usize])
    }

    /// Embedding of all of `sub`, indexed by ordinal.
    pub fn embedding_table(&self, sub: &Field) -> Result<Vec<Elem>> {
        sub.enumerate().map(|a| self.embed(sub, a)).collect()
    }

    /// Inverse of [`Field::embed`] for the direct base field.
    pub fn restrict(&self, sub: &Field, a: Elem) -> Option<Elem> {
        if sub == self {
            return Some(a);
        }
        let base = self.base.as_ref()?;
        if *base.field != *sub {
            return None;
        }
        match base.preimage[a.0 as usize] {
            NONE => None,
            v => Some(Elem(v)),
        }
    }

    /// Text encoding: bare integer in a prime field, `[c0,c1,..]` otherwise.
    pub fn format(&self, a: Elem) -> String {
        let c = self.coeffs(a);
        if self.degree == 1 {
            c[0].to_string()
        } else {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }

    /// Parses `[c0,c1,..]`, a bare integer in `[0, p)`, or the generator
    /// written as `t`, `w` or `ω`, optionally raised to a power (`w^2`).
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs = inner
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{s}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            return self.from_coeffs(&coeffs);
        }
        for g in ["t", "w", "ω"] {
            if let Some(rest) = s.strip_prefix(g) {
                let k = match rest.strip_prefix('^') {
                    Some(e) => e.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{s}: {e}")))?,
                    None if rest.is_empty() => 1,
                    None => continue,
                };
                return self.pow(self.t(), k);
            }
        }
        let k: u32 = s.parse().map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        if k >= self.p {
            return Err(Error::Parse(format!("{k} is not reduced mod {}", self.p)));
        }
        Ok(self.from_int(k as i64))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.size)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest monic irreducible of degree `d`, comparing `(c0, .., c_{d-1})`
/// lexicographically.
pub fn default_modulus(p: u32, d: usize) -> Vec<u32> {
    let count = (p as u64).pow(d as u32);
    for ord in 0..count {
        let mut m = vec![0u32; d + 1];
        let mut r = ord;
        for i in (0..d).rev() {
            m[i] = (r % p as u64) as u32;
            r /= p as u64;
        }
        m[d] = 1;
        if fp::is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Binary operation selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// A field element bound to its field, for checked mixed-field arithmetic.
#[derive(Clone, Debug)]
pub struct FieldElem {
    field: Arc<Field>,
    elem: Elem,
}

impl FieldElem {
    pub fn new(field: &Arc<Field>, elem: Elem) -> Self {
        FieldElem { field: Arc::clone(field), elem }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.elem)
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.elem == other.elem
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.elem))
    }
}

/// Checked field arithmetic; unary operations ignore `b`.
pub fn arith(a: &FieldElem, b: &FieldElem, op: ArithOp) -> Result<FieldElem> {
    if a.field != b.field {
        return Err(Error::ContextMismatch);
    }
    let f = &a.field;
    let r = match op {
        ArithOp::Add => f.add(a.elem, b.elem),
        ArithOp::Sub => f.sub(a.elem, b.elem),
        ArithOp::Mul => f.mul(a.elem, b.elem),
        ArithOp::Div => f.div(a.elem, b.elem)?,
        ArithOp::Neg => f.neg(a.elem),
        ArithOp::Inv => f.inv(a.elem)?,
    };
    Ok(FieldElem::new(f, r))
}

/// Dense polynomials over `F_p` as little-endian `u32` vectors; only used
/// while constructing fields.
mod fp {
    fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        let mut m = m.to_vec();
        trim(&mut r);
        trim(&mut m);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        while r.len() > dm {
            let k = r.len() - 1 - dm;
            let c = r[r.len() - 1] as u64 * lead_inv % p as u64;
            for (i, &mi) in m.iter().enumerate() {
                let sub = c * mi as u64 % p as u64;
                r[k + i] = ((r[k + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut v: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut v);
        v
    }

    /// Product modulo `m`, returned padded to `deg m` coefficients.
    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = rem(&mul(a, b, p), m, p);
        r.resize(m.len() - 1, 0);
        r
    }

    pub fn powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let d = m.len() - 1;
        let mut result = vec![0u32; d];
        result[0] = 1;
        let mut base = rem(a, m, p);
        base.resize(d, 0);
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        result
    }

    pub fn is_one(v: &[u32]) -> bool {
        v.first() == Some(&1) && v[1..].iter().all(|&c| c == 0)
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or: `m` is irreducible iff `gcd(m, t^(p^i) - t) = 1` for
    /// `1 <= i <= deg/2`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let d = m.len() - 1;
        if d == 1 {
            return true;
        }
        if m[0] == 0 {
            return false;
        }
        let t = vec![0, 1];
        let mut x = t.clone();
        for _ in 0..d / 2 {
            x = powmod(&x, p as u64, m, p);
            let mut diff = x.clone();
            diff.resize(d.max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            let g = gcd(m, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(Field::new(2, 1, None).unwrap().modulus(), &[0, 1]);
        assert_eq!(Field::new(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        // (1,0,1) precedes (1,1,0) low-degree-first.
        assert_eq!(Field::new(2, 3, None).unwrap().modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn supplied_modulus_validation() {
        // t^3 - t + 1 = t^3 + 2t + 1 has no root mod 3.
        assert!(Field::new(3, 3, Some(&[1, 2, 0, 1])).is_ok());
        // t^3 + 2 has root 1 mod 3.
        assert_eq!(Field::new(3, 3, Some(&[2, 0, 0, 1])).unwrap_err(), Error::ReducibleModulus(3));
        assert!(matches!(Field::new(3, 2, Some(&[1, 0, 2])), Err(Error::InvalidModulus(_))));
        // (t^2+t+1)^2 has no root over F_2 but is reducible.
        assert!(Field::new(2, 4, Some(&[1, 0, 1, 0, 1])).is_err());
        assert_eq!(Field::new(6, 1, None).unwrap_err(), Error::NotPrime(6));
    }

    #[test]
    fn small_arithmetic() {
        let f4 = Field::new(2, 2, None).unwrap();
        let w = f4.t();
        assert_eq!(f4.mul(w, w), f4.add(w, f4.one()));
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.add(f3.from_int(2), f3.from_int(2)), f3.one());
        assert_eq!(f3.inv(f3.one()).unwrap(), f3.one());
        assert_eq!(f3.inv(Elem::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f3.pow(Elem::ZERO, -1), Err(Error::DivisionByZero));
    }

    #[test]
    fn powers_and_frobenius() {
        let f8 = Field::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        let l = f8.t();
        // repeated multiplication, not pow
        let mut acc = f8.one();
        for _ in 0..7 {
            acc = f8.mul(acc, l);
        }
        assert_eq!(acc, f8.one());
        assert_eq!(f8.pow(l, 0).unwrap(), f8.one());

        let f9 = Field::new(3, 2, None).unwrap();
        let t = f9.t();
        assert_eq!(f9.frobenius(t, 3).unwrap(), f9.mul(f9.from_int(2), t));
        assert_eq!(f9.frobenius(t, 2), Err(Error::NotSubfield(2)));
        assert_eq!(f9.frobenius(f9.frobenius(t, 3).unwrap(), 3).unwrap(), t);
    }

    #[test]
    fn norm_and_trace_of_cubic_root() {
        // t^3 + t + 1 over F_2 is t^3 - (0 t^2 + 1 t + 1): c = 0, a = 1.
        let f8 = Field::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        let l = f8.t();
        assert_eq!(f8.norm(l, 2).unwrap(), f8.one());
        assert_eq!(f8.trace(l, 2).unwrap(), Elem::ZERO);
        assert_eq!(f8.norm(f8.one(), 2).unwrap(), f8.one());
        assert_eq!(f8.trace(Elem::ZERO, 2).unwrap(), Elem::ZERO);
    }

    #[test]
    fn enumeration_and_primitive() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.enumerate().collect::<Vec<_>>(), vec![Elem(0), Elem(1)]);
        assert_eq!(f2.primitive_element(), f2.one());
        let f4 = Field::new(2, 2, None).unwrap();
        assert_eq!(f4.enumerate().count(), 4);
        assert_eq!(f4.enumerate().next(), Some(Elem::ZERO));
        assert_eq!(f4.primitive_element(), f4.t());
        assert_eq!(f4.order(f4.t()), Some(3));
    }

    #[test]
    fn tower_embedding() {
        let f4 = Field::new(2, 2, None).unwrap();
        let f64 = Field::extension(&f4, 3).unwrap();
        assert_eq!(f64.size(), 64);
        assert_eq!(f64.embed(&f4, Elem::ZERO).unwrap(), Elem::ZERO);
        assert_eq!(f64.embed(&f4, f4.one()).unwrap(), f64.one());
        let w = f64.embed(&f4, f4.t()).unwrap();
        // w^2 + w + 1 = 0
        let v = f64.add(f64.add(f64.mul(w, w), w), f64.one());
        assert!(v.is_zero());
        assert_eq!(f64.restrict(&f4, w), Some(f4.t()));
        let f9 = Field::new(3, 2, None).unwrap();
        assert_eq!(f64.embed(&f9, f9.one()), Err(Error::NoEmbedding));
    }

    #[test]
    fn text_format() {
        let f4 = Field::new(2, 2, None).unwrap();
        assert_eq!(f4.format(f4.t()), "[0,1]");
        assert_eq!(f4.parse("[0,1]").unwrap(), f4.t());
        assert_eq!(f4.parse("ω").unwrap(), f4.t());
        assert_eq!(f4.parse("w^2").unwrap(), f4.add(f4.t(), f4.one()));
        assert_eq!(f4.parse("1").unwrap(), f4.one());
        assert!(f4.parse("2").is_err());
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.format(f5.from_int(-1)), "4");
    }

    #[test]
    fn checked_arith() {
        let f3 = Field::prime(3).unwrap();
        let f5 = Field::prime(5).unwrap();
        let a = FieldElem::new(&f3, f3.from_int(2));
        let b = FieldElem::new(&f5, f5.from_int(2));
        assert_eq!(arith(&a, &b, ArithOp::Add).unwrap_err(), Error::ContextMismatch);
        assert_eq!(arith(&a, &a, ArithOp::Add).unwrap().elem(), f3.one());
        let z = FieldElem::new(&f3, Elem::ZERO);
        assert_eq!(arith(&a, &z, ArithOp::Div).unwrap_err(), Error::DivisionByZero);
    }
}
