//! Sparse homogeneous forms in `x, y, z`, the generators `U, V, W` of the
//! ideal of `P^2(F_q)`, and the curve family `F_A`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::linalg::{proj_points, rank, Mat, ProjPoint};

pub type Exps = [u32; 3];

/// Homogeneous form of a fixed degree; only nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomForm {
    degree: u32,
    terms: BTreeMap<Exps, Elem>,
}

impl HomForm {
    pub fn zero(degree: u32) -> Self {
        HomForm { degree, terms: BTreeMap::new() }
    }

    pub fn monomial(c: Elem, e: Exps) -> Self {
        let mut h = HomForm::zero(e.iter().sum());
        if !c.is_zero() {
            h.terms.insert(e, c);
        }
        h
    }

    /// `l0 x + l1 y + l2 z`
    pub fn linear(l: [Elem; 3]) -> Self {
        let mut h = HomForm::zero(1);
        for (i, &c) in l.iter().enumerate() {
            if !c.is_zero() {
                let mut e = [0; 3];
                e[i] = 1;
                h.terms.insert(e, c);
            }
        }
        h
    }

    /// The coordinate form `x`, `y` or `z` for `i = 0, 1, 2`.
    pub fn var(f: &Field, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        HomForm::monomial(f.one(), e)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: Exps) -> Elem {
        self.terms.get(&e).copied().unwrap_or(Elem::ZERO)
    }

    fn add_term(&mut self, e: Exps, c: Elem, f: &Field) {
        if c.is_zero() {
            return;
        }
        let v = f.add(self.coeff(e), c);
        if v.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    fn check_degree(&self, other: &HomForm) -> Result<()> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DimensionMismatch(format!("degrees {} and {}", self.degree, other.degree)));
        }
        Ok(())
    }

    pub fn add(&self, other: &HomForm, f: &Field) -> Result<HomForm> {
        self.check_degree(other)?;
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for (&e, &c) in &other.terms {
            out.add_term(e, c, f);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomForm, f: &Field) -> Result<HomForm> {
        self.add(&other.scale(f.neg(f.one()), f), f)
    }

    pub fn scale(&self, c: Elem, f: &Field) -> HomForm {
        if c.is_zero() {
            return HomForm::zero(self.degree);
        }
        HomForm { degree: self.degree, terms: self.terms.iter().map(|(&e, &v)| (e, f.mul(v, c))).collect() }
    }

    pub fn mul(&self, other: &HomForm, f: &Field) -> HomForm {
        let mut out = HomForm::zero(self.degree + other.degree);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, f.mul(ca, cb), f);
            }
        }
        out
    }

    pub fn pow(&self, k: u32, f: &Field) -> HomForm {
        let mut acc = HomForm::monomial(f.one(), [0, 0, 0]);
        for _ in 0..k {
            acc = acc.mul(self, f);
        }
        acc
    }

    /// Coordinatewise image of the coefficients, e.g. an embedding into an
    /// extension field.
    pub fn map_coeffs(&self, g: impl Fn(Elem) -> Elem) -> HomForm {
        HomForm {
            degree: self.degree,
            terms: self.terms.iter().map(|(&e, &c)| (e, g(c))).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Lifts the coefficients from `sub` into `ext`.
    pub fn embed(&self, sub: &Field, ext: &Field) -> Result<HomForm> {
        let table = ext.embedding_table(sub)?;
        Ok(self.map_coeffs(|c| table[c.ordinal() as usize]))
    }

    /// Value at the coordinate vector `p`, coefficients and point in `f`.
    pub fn eval(&self, f: &Field, p: &[Elem]) -> Elem {
        let mut pows: [Vec<Elem>; 3] = Default::default();
        for (i, pw) in pows.iter_mut().enumerate() {
            pw.push(f.one());
            for _ in 0..self.degree {
                let last = *pw.last().unwrap();
                pw.push(f.mul(last, p[i]));
            }
        }
        self.terms.iter().fold(Elem::ZERO, |acc, (e, &c)| {
            let m = f.mul(f.mul(pows[0][e[0] as usize], pows[1][e[1] as usize]), pows[2][e[2] as usize]);
            f.add(acc, f.mul(c, m))
        })
    }

    /// Formal partial derivative in variable `i`.
    pub fn partial(&self, i: usize, f: &Field) -> HomForm {
        let mut out = HomForm::zero(self.degree.saturating_sub(1));
        for (&e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let k = f.from_int(e[i] as i64);
            let mut ne = e;
            ne[i] -= 1;
            out.add_term(ne, f.mul(c, k), f);
        }
        out
    }

    pub fn partials(&self, f: &Field) -> [HomForm; 3] {
        [self.partial(0, f), self.partial(1, f), self.partial(2, f)]
    }

    /// Substitutes the forms `subs[i]` for the variables, expanding every
    /// monomial by direct multiplication.
    pub fn substitute(&self, subs: &[HomForm; 3], f: &Field) -> HomForm {
        let sub_deg = subs.iter().map(|s| s.degree).max().unwrap_or(0);
        let mut pows: [Vec<HomForm>; 3] = Default::default();
        for (i, pw) in pows.iter_mut().enumerate() {
            pw.push(HomForm::monomial(f.one(), [0, 0, 0]));
            for _ in 0..self.degree {
                let next = pw.last().unwrap().mul(&subs[i], f);
                pw.push(next);
            }
        }
        let mut out = HomForm::zero(self.degree * sub_deg);
        for (e, &c) in &self.terms {
            let m = pows[0][e[0] as usize].mul(&pows[1][e[1] as usize], f).mul(&pows[2][e[2] as usize], f);
            for (&me, &mc) in &m.terms {
                out.add_term(me, f.mul(c, mc), f);
            }
        }
        out
    }

    /// Pullback along `(x, y, z) = B (x', y', z')`.
    pub fn pullback(&self, b: &Mat, f: &Field) -> HomForm {
        let row = |i: usize| HomForm::linear([b.get(i, 0), b.get(i, 1), b.get(i, 2)]);
        self.substitute(&[row(0), row(1), row(2)], f)
    }

    /// Exact quotient by a nonzero linear form, or `None` if it does not divide.
    pub fn divide_linear(&self, l: [Elem; 3], f: &Field) -> Option<HomForm> {
        let v = l.iter().position(|c| !c.is_zero())?;
        let lead_inv = f.inv(l[v]).ok()?;
        let mut rem = self.clone();
        let mut quot = HomForm::zero(self.degree.saturating_sub(1));
        loop {
            // term of highest exponent in the pivot variable
            let Some((&e, &c)) = rem.terms.iter().filter(|(e, _)| e[v] > 0).max_by_key(|(e, _)| (e[v], **e)) else {
                break;
            };
            let mut qe = e;
            qe[v] -= 1;
            let qc = f.mul(c, lead_inv);
            quot.add_term(qe, qc, f);
            for (j, &lj) in l.iter().enumerate() {
                if lj.is_zero() {
                    continue;
                }
                let mut te = qe;
                te[j] += 1;
                rem.add_term(te, f.neg(f.mul(qc, lj)), f);
            }
        }
        rem.is_zero().then_some(quot)
    }

    /// Terms `coeff*x^i*y^j*z^k` in decreasing lexicographic exponent order.
    pub fn format(&self, f: &Field) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, &c)| {
                let mut s = f.format(c);
                for (name, &k) in ["x", "y", "z"].iter().zip(e) {
                    match k {
                        0 => {}
                        1 => s.push_str(&format!("*{name}")),
                        _ => s.push_str(&format!("*{name}^{k}")),
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

/// `U = y^q z - y z^q`, `V = z^q x - z x^q`, `W = x^q y - x y^q`.
pub fn uvw(q: u32, f: &Field) -> [HomForm; 3] {
    let one = f.one();
    let m1 = f.neg(one);
    let gen = |a: usize, b: usize| {
        // v_a^q v_b - v_a v_b^q
        let mut e1 = [0; 3];
        e1[a] += q;
        e1[b] += 1;
        let mut e2 = [0; 3];
        e2[a] += 1;
        e2[b] += q;
        HomForm::monomial(one, e1).add(&HomForm::monomial(m1, e2), f).expect("same degree")
    };
    [gen(1, 2), gen(2, 0), gen(0, 1)]
}

/// `F_A = (x, y, z) A (U, V, W)^t`.
pub fn build_fa(a: &Mat, q: u32, f: &Field) -> HomForm {
    let g = uvw(q, f);
    let mut out = HomForm::zero(q + 2);
    for i in 0..3 {
        let xi = HomForm::var(f, i);
        for (j, gj) in g.iter().enumerate() {
            let c = a.get(i, j);
            if !c.is_zero() {
                out = out.add(&xi.mul(gj, f).scale(c, f), f).expect("same degree");
            }
        }
    }
    out
}

/// `F_A` vanishes identically exactly for scalar `A`.
pub fn is_zero_form(a: &Mat) -> bool {
    a.is_scalar()
}

/// Covariance of `(U, V, W)` under a linear substitution.
#[derive(Clone, Debug)]
pub struct Pullback {
    /// `(det B) B^{-t}`, equal to the cofactor matrix of `B`.
    pub matrix: Mat,
    /// Whether substituting `B` into `U, V, W` reproduced `matrix (U, V, W)^t`.
    pub verified: bool,
}

pub fn pullback_uvw(b: &Mat, q: u32, f: &Field) -> Result<Pullback> {
    let det = b.det(f);
    let m = b.inv(f)?.transpose().scale(det, f);
    let g = uvw(q, f);
    let verified = (0..3).all(|i| {
        let lhs = g[i].pullback(b, f);
        let rhs = (0..3).fold(HomForm::zero(q + 1), |acc, j| acc.add(&g[j].scale(m.get(i, j), f), f).unwrap());
        lhs == rhs
    });
    Ok(Pullback { matrix: m, verified })
}

/// All monomial exponents of degree `d`, in increasing lexicographic order.
pub fn monomials(d: u32) -> Vec<Exps> {
    let mut out = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// `(dim of the part of (U, V, W) in degree d, dim of forms of degree d
/// vanishing on P^2(F_q))`.
pub fn hd_dimension(q: u32, d: u32, f: &Field) -> (usize, usize) {
    let mons = monomials(d);
    let index: BTreeMap<Exps, usize> = mons.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let pts = proj_points(3, f);
    let eval_rows: Vec<Vec<Elem>> =
        pts.iter().map(|p| mons.iter().map(|&e| HomForm::monomial(f.one(), e).eval(f, p.coords())).collect()).collect();
    let vanishing = mons.len() - rank(f, &eval_rows, mons.len());
    let ideal = if d < q + 1 {
        0
    } else {
        let mut rows = Vec::new();
        for g in uvw(q, f) {
            for e in monomials(d - q - 1) {
                let h = g.mul(&HomForm::monomial(f.one(), e), f);
                let mut row = vec![Elem::ZERO; mons.len()];
                for (te, &c) in h.terms() {
                    row[index[te]] = c;
                }
                rows.push(row);
            }
        }
        rank(f, &rows, mons.len())
    };
    (ideal, vanishing)
}

/// Decomposition of `a1 U + a2 V + a3 W` into `F_q`-lines.
#[derive(Clone, Debug)]
pub struct Pencil {
    pub singular_point: ProjPoint,
    /// Coefficient vectors of the lines, normalized.
    pub lines: Vec<ProjPoint>,
    /// `form = scalar * prod(lines)`.
    pub scalar: Elem,
}

pub fn pencil_form(a: [Elem; 3], q: u32, f: &Field) -> HomForm {
    let g = uvw(q, f);
    (0..3).fold(HomForm::zero(q + 1), |acc, i| acc.add(&g[i].scale(a[i], f), f).unwrap())
}

pub fn pencil_analysis(a: [Elem; 3], q: u32, f: &Field) -> Result<Pencil> {
    let singular_point = ProjPoint::normalize(&a, f).ok_or(Error::ZeroForm)?;
    let form = pencil_form(a, q, f);
    let mut rest = form;
    let mut lines = Vec::new();
    for l in proj_points(3, f) {
        let c = l.coords();
        let dot = (0..3).fold(Elem::ZERO, |acc, i| f.add(acc, f.mul(c[i], a[i])));
        if !dot.is_zero() {
            continue;
        }
        rest = rest
            .divide_linear([c[0], c[1], c[2]], f)
            .ok_or_else(|| Error::Precondition(format!("line {} does not divide the pencil member", l.format(f))))?;
        lines.push(l);
    }
    if rest.degree() != 0 || rest.num_terms() != 1 {
        return Err(Error::Precondition("pencil member is not a product of lines".into()));
    }
    let scalar = rest.coeff([0, 0, 0]);
    Ok(Pencil { singular_point, lines, scalar })
}

impl Pencil {
    pub fn product(&self, f: &Field) -> HomForm {
        self.lines.iter().fold(HomForm::monomial(self.scalar, [0, 0, 0]), |acc, l| {
            let c = l.coords();
            acc.mul(&HomForm::linear([c[0], c[1], c[2]]), f)
        })
    }
}

/// `F_{q^m}` with `F_q` as its base; `m = 1` returns `base` itself.
pub fn tower(base: &Arc<Field>, m: usize) -> Result<Arc<Field>> {
    if m == 1 {
        Ok(Arc::clone(base))
    } else {
        Field::extension(base, m)
    }
}
