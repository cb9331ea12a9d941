//! Smoothness of `C_A`: the characteristic-polynomial criterion, an exact
//! singular-point scan over `P^2(F_{q^m})`, the auxiliary curve `G`, and the
//! local identities at the points `Q_lambda`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::classify::Cubic;
use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::forms::{build_fa, hd_dimension, pencil_form, tower, uvw, HomForm};
use crate::linalg::{proj_points, Mat, ProjPoint};
use crate::poly::Poly;

/// `C_A` is smooth iff `det(tE - A)` is irreducible over `F_q`.
pub fn is_smooth_criterion(a: &Mat, f: &Field) -> bool {
    a.char_poly(f).is_irreducible(f)
}

/// Extension degrees scanned by default. Every `q` handled here is small
/// enough for `F_{q^6}`.
pub fn default_scan_degrees(_q: u64) -> Vec<usize> {
    vec![1, 2, 3, 6]
}

/// The fields `F_{q^m}` a scan runs over, built once and reused.
#[derive(Clone, Debug)]
pub struct ScanFields {
    pub base: Arc<Field>,
    pub layers: Vec<(usize, Arc<Field>)>,
}

impl ScanFields {
    pub fn new(base: &Arc<Field>, degrees: &[usize]) -> Result<Self> {
        let mut layers = Vec::new();
        for &m in degrees {
            if ![1, 2, 3, 6].contains(&m) {
                return Err(Error::Unsupported(format!("scan degree {m}")));
            }
            layers.push((m, tower(base, m)?));
        }
        Ok(ScanFields { base: Arc::clone(base), layers })
    }
}

/// Singular points of `form = 0` found in one layer, formatted over `F_{q^m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanLayer {
    pub m: usize,
    pub points: Vec<String>,
}

/// Flattened term list for fast restriction to lines.
struct Terms {
    degree: usize,
    terms: Vec<([usize; 3], Elem)>,
}

impl Terms {
    fn new(h: &HomForm) -> Self {
        Terms {
            degree: h.degree() as usize,
            terms: h.terms().map(|(e, &c)| ([e[0] as usize, e[1] as usize, e[2] as usize], c)).collect(),
        }
    }

    /// `h(x, y0, 1)` as a polynomial in `x`, given the powers of `y0`.
    fn on_affine_line(&self, ypow: &[Elem], f: &Field) -> Poly {
        let mut c = vec![Elem::ZERO; self.degree + 1];
        for &(e, v) in &self.terms {
            c[e[0]] = f.add(c[e[0]], f.mul(v, ypow[e[1]]));
        }
        Poly::new(c)
    }

    /// `h(x, 1, 0)`.
    fn on_line_at_infinity(&self, f: &Field) -> Poly {
        let mut c = vec![Elem::ZERO; self.degree + 1];
        for &(e, v) in &self.terms {
            if e[2] == 0 {
                c[e[0]] = f.add(c[e[0]], v);
            }
        }
        Poly::new(c)
    }
}

/// Singular points of `form` (which must vanish together with all three
/// partials) over `ext`, in [`proj_points`] order.
///
/// Each line `y = y0, z = 1` and the line `z = 0` is handled by restricting
/// the form and its partials to univariate polynomials and extracting the
/// roots of their gcd; `(1, 0, 0)` is evaluated directly.
pub fn singular_points(form: &HomForm, ext: &Field) -> Vec<ProjPoint> {
    let one = ext.one();
    let [fx, fy, fz] = form.partials(ext);
    let all = [form, &fx, &fy, &fz].map(Terms::new);
    let deg = form.degree() as usize;
    let mut out = Vec::new();
    let collect = |g: Poly, point: &dyn Fn(Elem) -> [Elem; 3], out: &mut Vec<ProjPoint>| {
        let xs: Vec<Elem> = if g.is_zero() { ext.enumerate().collect() } else { g.roots(ext) };
        for x in xs {
            out.push(ProjPoint::normalize(&point(x), ext).expect("nonzero point"));
        }
    };
    let gcd_all = |polys: [Poly; 4]| polys.iter().fold(Poly::zero(), |acc, p| acc.gcd(p, ext));
    let mut ypow = vec![one; deg + 1];
    for y0 in ext.enumerate() {
        for k in 1..=deg {
            ypow[k] = ext.mul(ypow[k - 1], y0);
        }
        let g = gcd_all([0, 1, 2, 3].map(|i| all[i].on_affine_line(&ypow, ext)));
        collect(g, &|x| [x, y0, one], &mut out);
    }
    let g = gcd_all([0, 1, 2, 3].map(|i| all[i].on_line_at_infinity(ext)));
    collect(g, &|x| [x, one, Elem::ZERO], &mut out);
    let e100 = [one, Elem::ZERO, Elem::ZERO];
    if [form, &fx, &fy, &fz].iter().all(|h| h.eval(ext, &e100).is_zero()) {
        out.push(ProjPoint::normalize(&e100, ext).unwrap());
    }
    out.sort();
    out
}

/// Reference scan: evaluates the form and its partials at every point.
pub fn singular_points_brute(form: &HomForm, ext: &Field) -> Vec<ProjPoint> {
    let parts = form.partials(ext);
    proj_points(3, ext)
        .into_iter()
        .filter(|p| form.eval(ext, p.coords()).is_zero() && parts.iter().all(|h| h.eval(ext, p.coords()).is_zero()))
        .collect()
}

/// Singular points of a form over `F_q`, layer by layer.
pub fn singular_scan(form: &HomForm, fields: &ScanFields) -> Result<Vec<(usize, ProjPoint)>> {
    let mut out = Vec::new();
    for (m, ext) in &fields.layers {
        let lifted = form.embed(&fields.base, ext)?;
        out.extend(singular_points(&lifted, ext).into_iter().map(|p| (*m, p)));
    }
    Ok(out)
}

/// `y U + z V + (a x + b y + c z) W`.
pub fn canonical_form(cubic: Cubic, q: u32, f: &Field) -> HomForm {
    build_fa(&cubic.companion(f), q, f)
}

/// `G = x^q F_x + y^q F_y + z^q F_z`.
pub fn build_g(form: &HomForm, q: u32, f: &Field) -> HomForm {
    let parts = form.partials(f);
    (0..3).fold(HomForm::zero(2 * q + 1), |acc, i| {
        let xq = HomForm::var(f, i).pow(q, f);
        acc.add(&xq.mul(&parts[i], f), f).expect("degree 2q+1")
    })
}

/// `y^q U + z^q V + (a x + b y + c z)^q W`.
pub fn g_closed_form(cubic: Cubic, q: u32, f: &Field) -> HomForm {
    let [u, v, w] = uvw(q, f);
    let l = HomForm::linear([cubic.a, cubic.b, cubic.c]);
    let y = HomForm::var(f, 1).pow(q, f);
    let z = HomForm::var(f, 2).pow(q, f);
    y.mul(&u, f).add(&z.mul(&v, f), f).and_then(|s| s.add(&l.pow(q, f).mul(&w, f), f)).expect("degree 2q+1")
}

/// Checks the local computation at `Q_lambda = (lambda^-2, lambda^-1, 1)`
/// for a root `lambda` of the cubic in `F_{q^3}`. Coefficients are read
/// off a literal expansion of `F` and `G` around `Q_lambda` and compared
/// with the closed forms.
pub fn proof_identities(cubic: Cubic, q: u32, f: &Arc<Field>) -> Result<BTreeMap<String, bool>> {
    if !cubic.is_irreducible(f) {
        return Err(Error::ReduciblePoly);
    }
    let ext = Field::extension(f, 3)?;
    let e = &*ext;
    let lift = |x: Elem| e.embed(f, x).expect("base embeds");
    let (a, b) = (lift(cubic.a), lift(cubic.b));
    let lambda = cubic.to_poly(f).map_coeffs(lift).roots(e)[0];
    let qi = q as i64;
    let lp = |k: i64| e.pow(lambda, k).expect("lambda nonzero");
    let sub = |x: Elem, y: Elem| e.sub(x, y);
    let one = e.one();
    let two = e.from_int(2);
    let qpow = |x: Elem| e.pow_u(x, q as u64);

    let form = canonical_form(cubic, q, f);
    let g = build_g(&form, q, f);
    let form_e = form.embed(f, e)?;
    let g_e = g.embed(f, e)?;
    let pt = [lp(-2), lp(-1), one];

    let mut out = BTreeMap::new();
    out.insert("F(Q)=0".to_string(), form_e.eval(e, &pt).is_zero());
    out.insert("G(Q)=0".to_string(), g_e.eval(e, &pt).is_zero());
    out.insert("G=x^qFx+y^qFy+z^qFz".to_string(), g == g_closed_form(cubic, q, f));

    // partials of G are q-th powers of the quadrics cutting out the orbit of Q
    let l = HomForm::linear([cubic.a, cubic.b, cubic.c]);
    let var = |i| HomForm::var(f, i);
    let quad = [
        var(2).pow(2, f).sub(&l.mul(&var(1), f), f)?,
        l.mul(&var(0), f).sub(&var(1).mul(&var(2), f), f)?,
        var(1).pow(2, f).sub(&var(2).mul(&var(0), f), f)?,
    ];
    let gp = g.partials(f);
    for (i, name) in ["Gx", "Gy", "Gz"].iter().enumerate() {
        out.insert(format!("{name}=quadric^q"), gp[i] == quad[i].pow(q, f));
    }

    // local coordinates: x = s + lambda^-2 u, y = t + lambda^-1 u, z = u
    let shift = [
        HomForm::linear([one, Elem::ZERO, pt[0]]),
        HomForm::linear([Elem::ZERO, one, pt[1]]),
        HomForm::linear([Elem::ZERO, Elem::ZERO, one]),
    ];
    let fl = form_e.substitute(&shift, e);
    let gl = g_e.substitute(&shift, e);
    let (df, dg) = (q + 2, 2 * q + 1);
    let cs_f = fl.coeff([1, 0, df - 1]);
    let ct_f = fl.coeff([0, 1, df - 1]);
    let csq_g = gl.coeff([q, 0, dg - q]);
    let ctq_g = gl.coeff([0, q, dg - q]);

    let fx = form_e.partial(0, e).eval(e, &pt);
    let fy = form_e.partial(1, e).eval(e, &pt);
    let factor = sub(lp(1 - qi), one);
    let cs_f_closed = e.mul(factor, sub(e.mul(a, lp(-qi - 2)), one));
    let ct_f_closed = e.mul(factor, e.add(e.add(e.mul(b, lp(-qi - 2)), lp(-qi)), e.mul(two, lp(-1))));
    let cs_g_closed = e.mul(factor, sub(e.mul(a, lp(-qi - 2)), lp(qi - 1)));
    let cs_g_expanded = e.add(e.mul(qpow(a), sub(lp(-2 * qi - 1), lp(-qi - 2))), sub(lp(qi - 1), one));
    let ct_g_closed = e.mul(factor, e.add(e.add(e.mul(b, lp(-qi - 2)), lp(qi - 2)), e.mul(two, lp(-1))));
    out.insert("Coeff_s F".to_string(), cs_f == fx && cs_f == cs_f_closed);
    out.insert("Coeff_t F".to_string(), ct_f == fy && ct_f == ct_f_closed);
    out.insert("Coeff_s^q G".to_string(), csq_g == cs_g_closed && csq_g == cs_g_expanded);
    out.insert("Coeff_t^q G".to_string(), ctq_g == ct_g_closed);

    // F has no constant term and G has nothing of local degree < q, and only
    // s^q, t^q in degree q
    let f_local_ok = fl.coeff([0, 0, df]).is_zero();
    let g_local_ok = gl.terms().all(|(ex, _)| {
        let local = ex[0] + ex[1];
        local > q || (local == q && (ex[0] == q || ex[1] == q))
    });
    out.insert("local shape".to_string(), f_local_ok && g_local_ok);

    let det = sub(e.mul(qpow(cs_f), ctq_g), e.mul(qpow(ct_f), csq_g));
    let inner = e.mul(
        e.mul(sub(one, lp(qi * qi - 1)), lp(-qi * qi - 1)),
        qpow(e.add(e.add(e.mul(two, e.mul(a, lp(-2))), e.mul(b, lp(-1))), lambda)),
    );
    out.insert("det".to_string(), det == e.mul(e.pow_u(factor, q as u64 + 1), inner));
    out.insert("det nonzero".to_string(), !det.is_zero());
    Ok(out)
}

/// The three facts behind "the least degree of a smooth curve containing
/// `P^2(F_q)` is `q + 2`".
#[derive(Clone, Debug, Serialize)]
pub struct MinDegreeCertificate {
    pub q: u64,
    pub degree: u32,
    /// Irreducible cubic whose canonical form has no singular point.
    pub smooth_member: Option<String>,
    /// No nonzero form of degree `<= q` vanishes on `P^2(F_q)`.
    pub no_low_degree_forms: bool,
    /// Every `a1 U + a2 V + a3 W` is singular exactly at `(a1, a2, a3)` over `F_q`.
    pub pencil_all_singular: bool,
    pub passed: bool,
}

pub fn min_degree_certificate(f: &Arc<Field>, fields: &ScanFields) -> Result<MinDegreeCertificate> {
    let q = f.size();
    let qu = q as u32;
    let mut smooth_member = None;
    if let Some(cubic) = Cubic::irreducible(f).into_iter().next() {
        if singular_scan(&canonical_form(cubic, qu, f), fields)?.is_empty() {
            smooth_member = Some(cubic.format(f));
        }
    }
    let no_low_degree_forms = (1..=qu).all(|d| hd_dimension(qu, d, f).1 == 0);
    let pencil_all_singular = proj_points(3, f).iter().all(|a| {
        let c = a.coords();
        let form = pencil_form([c[0], c[1], c[2]], qu, f);
        singular_points(&form, f) == vec![a.clone()]
    });
    let passed = smooth_member.is_some() && no_low_degree_forms && pencil_all_singular;
    Ok(MinDegreeCertificate { q, degree: qu + 2, smooth_member, no_low_degree_forms, pencil_all_singular, passed })
}

/// The four conditions of the equivalence theorem for `C_A`. Condition (b)
/// (absolute irreducibility) is only tested through its linear-factor part.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceConditions {
    pub a_smooth: bool,
    pub b_no_linear_factor: bool,
    pub c_smooth_at_rational_points: bool,
    pub d_irreducible_charpoly: bool,
    /// A linear factor over `F_{q^3}`, if one was found.
    pub linear_factor: Option<String>,
    pub b_is_partial: bool,
}

/// A linear form over `F_{q^3}` dividing `form`, if any.
pub fn linear_factor(form: &HomForm, f: &Arc<Field>) -> Result<Option<String>> {
    let ext = Field::extension(f, 3)?;
    let lifted = form.embed(f, &ext)?;
    for l in proj_points(3, &ext) {
        let c = l.coords();
        if lifted.divide_linear([c[0], c[1], c[2]], &ext).is_some() {
            return Ok(Some(l.format(&ext)));
        }
    }
    Ok(None)
}

pub fn equivalence_conditions(a: &Mat, f: &Arc<Field>, fields: &ScanFields) -> Result<EquivalenceConditions> {
    if a.is_scalar() {
        return Err(Error::ZeroForm);
    }
    let q = f.size() as u32;
    let form = build_fa(a, q, f);
    let scan = singular_scan(&form, fields)?;
    let linear_factor = linear_factor(&form, f)?;
    Ok(EquivalenceConditions {
        a_smooth: scan.is_empty(),
        b_no_linear_factor: linear_factor.is_none(),
        c_smooth_at_rational_points: singular_points(&form, f).is_empty(),
        d_irreducible_charpoly: is_smooth_criterion(a, f),
        linear_factor,
        b_is_partial: true,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessReport {
    pub q: u64,
    pub cubic: String,
    pub criterion: bool,
    pub scan: Vec<ScanLayer>,
    pub identities: Option<BTreeMap<String, bool>>,
    pub consistent: bool,
    pub limitations: String,
}

pub const SCAN_LIMITATION: &str =
    "the scan covers points of degree dividing the scanned extension degrees; points of other degrees are not examined";

pub fn smoothness_report(cubic: Cubic, f: &Arc<Field>, fields: &ScanFields) -> Result<SmoothnessReport> {
    let q = f.size();
    let qu = q as u32;
    let companion = cubic.companion(f);
    let criterion = is_smooth_criterion(&companion, f);
    let form = canonical_form(cubic, qu, f);
    let mut scan = Vec::new();
    for (m, ext) in &fields.layers {
        let lifted = form.embed(f, ext)?;
        let points = singular_points(&lifted, ext).iter().map(|p| p.format(ext)).collect();
        scan.push(ScanLayer { m: *m, points });
    }
    let none_found = scan.iter().all(|l| l.points.is_empty());
    let identities = if criterion { Some(proof_identities(cubic, qu, f)?) } else { None };
    let identities_ok = identities.as_ref().is_none_or(|m| m.values().all(|&v| v));
    Ok(SmoothnessReport {
        q,
        cubic: cubic.format(f),
        criterion,
        scan,
        identities,
        consistent: criterion == none_found && identities_ok,
        limitations: SCAN_LIMITATION.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_examples() {
        let f = Field::prime(2).unwrap();
        assert!(is_smooth_criterion(&Cubic::from_ints(&f, 0, 1, 1).companion(&f), &f));
        assert!(!is_smooth_criterion(&Cubic::from_ints(&f, 0, 0, 1).companion(&f), &f));
        assert!(!is_smooth_criterion(&Mat::identity(3, &f), &f));
    }

    #[test]
    fn fast_scan_matches_brute_force() {
        for q in [2u64, 3] {
            let f = Field::with_order(q).unwrap();
            for m in [1, 2, 3] {
                let ext = tower(&f, m).unwrap();
                for cubic in Cubic::all(&f).into_iter().step_by(3) {
                    let form = canonical_form(cubic, q as u32, &f).embed(&f, &ext).unwrap();
                    assert_eq!(singular_points(&form, &ext), singular_points_brute(&form, &ext), "q={q} m={m}");
                }
            }
        }
    }

    #[test]
    fn pencil_member_singular_only_at_its_point() {
        let f = Field::prime(2).unwrap();
        let z = Elem::ZERO;
        let w = pencil_form([z, z, f.one()], 2, &f);
        let fields = ScanFields::new(&f, &[1, 2]).unwrap();
        let hits = singular_scan(&w, &fields).unwrap();
        let layers: Vec<usize> = hits.iter().map(|(m, _)| *m).collect();
        assert_eq!(layers, vec![1, 2]);
        assert!(hits.iter().all(|(_, p)| p.coords()[0].is_zero() && p.coords()[1].is_zero()));
    }

    #[test]
    fn identities_q2() {
        let f = Field::prime(2).unwrap();
        let ids = proof_identities(Cubic::from_ints(&f, 0, 1, 1), 2, &f).unwrap();
        for (k, v) in &ids {
            assert!(v, "{k}");
        }
    }

    #[test]
    fn g_partials_match_closed_form_q2() {
        let f = Field::prime(2).unwrap();
        let cubic = Cubic::from_ints(&f, 0, 1, 1);
        let g = build_g(&canonical_form(cubic, 2, &f), 2, &f);
        assert_eq!(g.degree(), 5);
        assert_eq!(g, g_closed_form(cubic, 2, &f));
    }
}
