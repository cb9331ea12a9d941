//! Irreducible cubics up to the substitution `f(t) -> rho^3 f((t - mu)/rho)`,
//! Tallini's normal-form labels, and projective equivalence of curves.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::linalg::{companion, general_linear, CompanionShape, Mat};
use crate::numtheory::is_power_of_three;
use crate::poly::{split_top_level, MonicPoly, Poly};

/// `t^3 - (c t^2 + b t + a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cubic {
    pub c: Elem,
    pub b: Elem,
    pub a: Elem,
}

impl Cubic {
    pub fn new(c: Elem, b: Elem, a: Elem) -> Self {
        Cubic { c, b, a }
    }

    pub fn from_ints(f: &Field, c: i64, b: i64, a: i64) -> Self {
        Cubic::new(f.from_int(c), f.from_int(b), f.from_int(a))
    }

    pub fn to_monic(self, f: &Field) -> MonicPoly {
        MonicPoly::new(vec![f.neg(self.a), f.neg(self.b), f.neg(self.c)])
    }

    pub fn from_monic(p: &MonicPoly, f: &Field) -> Result<Self> {
        if p.degree() != 3 {
            return Err(Error::DimensionMismatch(format!("degree {} is not 3", p.degree())));
        }
        let l = p.lower();
        Ok(Cubic::new(f.neg(l[2]), f.neg(l[1]), f.neg(l[0])))
    }

    pub fn to_poly(self, f: &Field) -> Poly {
        self.to_monic(f).to_poly(f)
    }

    /// A cubic is irreducible iff it has no root in the field.
    pub fn is_irreducible(self, f: &Field) -> bool {
        let p = self.to_poly(f);
        f.enumerate().all(|x| !p.eval(f, x).is_zero())
    }

    /// Companion matrix `[[0,0,a],[1,0,b],[0,1,c]]`.
    pub fn companion(self, f: &Field) -> Mat {
        companion(f, &self.to_monic(f), CompanionShape::Curve3).expect("degree 3")
    }

    /// Every monic cubic, ordered by `(c, b, a)`.
    pub fn all(f: &Field) -> Vec<Cubic> {
        let mut out = Vec::new();
        for c in f.enumerate() {
            for b in f.enumerate() {
                for a in f.enumerate() {
                    out.push(Cubic::new(c, b, a));
                }
            }
        }
        out
    }

    pub fn irreducible(f: &Field) -> Vec<Cubic> {
        Cubic::all(f).into_iter().filter(|c| c.is_irreducible(f)).collect()
    }

    /// `t^3-(c*t^2+b*t+a)` with element encodings.
    pub fn format(self, f: &Field) -> String {
        format!("t^3-({}*t^2+{}*t+{})", f.format(self.c), f.format(self.b), f.format(self.a))
    }

    /// The triple `c,b,a`.
    pub fn format_triple(self, f: &Field) -> String {
        format!("{},{},{}", f.format(self.c), f.format(self.b), f.format(self.a))
    }

    /// Parses `c,b,a`.
    pub fn parse(f: &Field, s: &str) -> Result<Cubic> {
        let parts = split_top_level(s);
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected c,b,a, got {s:?}")));
        }
        Ok(Cubic::new(f.parse(&parts[0])?, f.parse(&parts[1])?, f.parse(&parts[2])?))
    }
}

/// `rho^3 f((t - mu) / rho)`.
pub fn substitute(cubic: Cubic, rho: Elem, mu: Elem, f: &Field) -> Result<Cubic> {
    let rinv = f.inv(rho)?;
    // (t - mu)/rho as a polynomial
    let arg = Poly::new(vec![f.neg(f.mul(mu, rinv)), rinv]);
    let p = cubic.to_poly(f);
    let mut acc = Poly::zero();
    for &c in p.coeffs().iter().rev() {
        acc = acc.mul(&arg, f).add(&Poly::constant(c), f);
    }
    let acc = acc.scale(f.pow_u(rho, 3), f);
    Cubic::from_monic(&MonicPoly::from_poly(&acc, f)?, f)
}

/// A witness `(rho, mu)` with `substitute(g, rho, mu) = f`.
pub fn equivalent(fc: Cubic, gc: Cubic, f: &Field) -> Option<(Elem, Elem)> {
    for rho in f.nonzero() {
        for mu in f.enumerate() {
            if substitute(gc, rho, mu, f).ok() == Some(fc) {
                return Some((rho, mu));
            }
        }
    }
    None
}

pub fn orbit(cubic: Cubic, f: &Field) -> BTreeSet<Cubic> {
    let mut out = BTreeSet::new();
    for rho in f.nonzero() {
        for mu in f.enumerate() {
            out.insert(substitute(cubic, rho, mu, f).expect("rho nonzero"));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TalliniLabel {
    FormI,
    FormIi,
    FormIii,
    Generic,
}

impl fmt::Display for TalliniLabel {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TalliniLabel::FormI => "form_i",
            TalliniLabel::FormIi => "form_ii",
            TalliniLabel::FormIii => "form_iii",
            TalliniLabel::Generic => "generic",
        };
        fmt.write_str(s)
    }
}

/// Which of Tallini's three polynomial shapes occur in the orbit of `cubic`:
/// (i) `t^3 - a t - a`, (ii) `t^3 - a` when `q = 1 mod 3`,
/// (iii) `t^3 + alpha t^2 + 1` when `q` is a power of 3.
pub fn tallini_label(cubic: Cubic, f: &Field) -> Result<BTreeSet<TalliniLabel>> {
    if !cubic.is_irreducible(f) {
        return Err(Error::ReduciblePoly);
    }
    let q = f.size();
    let orb = orbit(cubic, f);
    let minus_one = f.neg(f.one());
    let mut labels = BTreeSet::new();
    if orb.iter().any(|g| g.c.is_zero() && g.b == g.a) {
        labels.insert(TalliniLabel::FormI);
    }
    if q % 3 == 1 && orb.iter().any(|g| g.c.is_zero() && g.b.is_zero()) {
        labels.insert(TalliniLabel::FormIi);
    }
    if is_power_of_three(q) && orb.iter().any(|g| g.b.is_zero() && g.a == minus_one) {
        labels.insert(TalliniLabel::FormIii);
    }
    if labels.is_empty() {
        labels.insert(TalliniLabel::Generic);
    }
    Ok(labels)
}

#[derive(Clone, Debug)]
pub struct CubicClass {
    pub representative: Cubic,
    pub members: Vec<Cubic>,
    pub labels: BTreeSet<TalliniLabel>,
}

#[derive(Clone, Debug)]
pub struct ClassReport {
    pub q: u64,
    pub classes: Vec<CubicClass>,
}

impl ClassReport {
    pub fn total(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }
}

/// Orbits of the irreducible cubics, ordered by their (lexicographically
/// least) representatives.
pub fn classes(f: &Field) -> ClassReport {
    let mut seen = BTreeSet::new();
    let mut classes = Vec::new();
    for cubic in Cubic::irreducible(f) {
        if seen.contains(&cubic) {
            continue;
        }
        let orb = orbit(cubic, f);
        seen.extend(orb.iter().copied());
        let representative = *orb.iter().next().expect("orbit contains the seed");
        let labels = tallini_label(representative, f).expect("irreducible");
        classes.push(CubicClass { representative, members: orb.into_iter().collect(), labels });
    }
    ClassReport { q: f.size(), classes }
}

fn irreducible_char_cubic(a: &Mat, f: &Field) -> Result<Cubic> {
    let cubic = Cubic::from_monic(&a.char_poly(f), f)?;
    if !cubic.is_irreducible(f) {
        return Err(Error::ReducibleCharPoly);
    }
    Ok(cubic)
}

/// Projective equivalence of `C_A` and `C_B`, decided on characteristic polynomials.
pub fn curves_equivalent(a: &Mat, b: &Mat, f: &Field) -> Result<bool> {
    let fa = irreducible_char_cubic(a, f)?;
    let fb = irreducible_char_cubic(b, f)?;
    Ok(equivalent(fa, fb, f).is_some())
}

/// Searches `GL(3, F_q)` for `T` with `T^t A T^{-t} = rho B + mu E`.
pub fn curves_equivalent_brute(a: &Mat, b: &Mat, f: &Field) -> bool {
    general_linear(3, f).any(|t| {
        let tt = t.transpose();
        let m = tt.mul(a, f).unwrap().mul(&tt.inv(f).unwrap(), f).unwrap();
        f.nonzero().any(|rho| m.sub(&b.scale(rho, f), f).unwrap().is_scalar())
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialCases {
    /// `q = 1 mod 3` and the orbit contains some `t^3 - a`.
    pub case_i: bool,
    /// `q = 3^e`, `c = 0` and `b` a nonzero square.
    pub case_ii: bool,
}

pub fn special_case_detect(cubic: Cubic, f: &Field) -> Result<SpecialCases> {
    if !cubic.is_irreducible(f) {
        return Err(Error::ReduciblePoly);
    }
    let q = f.size();
    let case_i = q % 3 == 1 && orbit(cubic, f).iter().any(|g| g.c.is_zero() && g.b.is_zero());
    let is_square = |x: Elem| f.enumerate().any(|y| f.mul(y, y) == x);
    let case_ii = is_power_of_three(q) && cubic.c.is_zero() && !cubic.b.is_zero() && is_square(cubic.b);
    Ok(SpecialCases { case_i, case_ii })
}
