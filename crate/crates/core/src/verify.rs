//! Verification suites: every check is exhaustive or seeded, and reports a
//! witness when it fails.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::autgroup::{
    aut_elements, aut_elements_brute, enumerate_aut, fixed_points, harmonic_witness_holds, pgl_centralizer, pi_map,
    shift_realizing_aut,
};
use crate::centralizer::{centralizer_order_brute, centralizer_report, gl_order, irreducible_polys, twisted_commutant};
use crate::classify::{classes, curves_equivalent, curves_equivalent_brute, equivalent, orbit, Cubic};
use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::forms::{build_fa, hd_dimension, pencil_analysis, pencil_form, pullback_uvw};
use crate::linalg::{companion, eigen_points, general_linear, proj_points, CompanionShape, Mat};
use crate::numtheory::{is_power_of_three, prime_power};
use crate::poly::MonicPoly;
use crate::smooth::{
    canonical_form, equivalence_conditions, is_smooth_criterion, min_degree_certificate, proof_identities,
    singular_points, singular_scan, ScanFields,
};

pub const SCHEMA: &str = "fillcurve/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Option<String>,
}

impl Check {
    /// Passes iff `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        let status = if witness.is_none() { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, witness }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Counts {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub schema: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<serde_json::Value>,
    pub checks: Vec<Check>,
    pub counts: Counts,
    pub exit_status: i32,
}

impl SuiteResult {
    pub fn new(command: String, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.passed()).count();
        let failed = checks.len() - passed;
        SuiteResult {
            schema: SCHEMA,
            command,
            report: None,
            counts: Counts { total: checks.len(), passed, failed },
            exit_status: if failed == 0 { 0 } else { 1 },
            checks,
        }
    }

    pub fn with_report(mut self, report: impl Serialize) -> Self {
        self.report = Some(serde_json::to_value(report).expect("serializable"));
        self
    }
}

/// `q` values `verify` accepts: prime powers up to 5, and 7 for the
/// automorphism checks only.
pub fn check_supported(q: u64) -> Result<()> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if q > 5 && q != 7 {
        return Err(Error::Unsupported(format!("q = {q} (supported: 2, 3, 4, 5, and 7 for automorphism checks)")));
    }
    Ok(())
}

pub fn scan_degrees(deep: bool) -> Vec<usize> {
    if deep {
        vec![1, 2, 3, 6]
    } else {
        vec![1, 2, 3]
    }
}

/// Seeded source for the randomized checks; fixed per `q` so reports are
/// reproducible.
pub fn rng_for(q: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(q.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
}

pub fn random_matrix(n: usize, f: &Field, rng: &mut impl Rng) -> Mat {
    let q = f.size();
    Mat::from_flat((0..n * n).map(|_| f.enumerate().nth(rng.gen_range(0..q) as usize).unwrap()).collect())
        .expect("n*n entries")
}

pub fn random_invertible(n: usize, f: &Field, rng: &mut impl Rng) -> Mat {
    loop {
        let m = random_matrix(n, f, rng);
        if m.is_invertible(f) {
            return m;
        }
    }
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, fails: impl Fn(&T) -> Option<String>) -> Option<String> {
    items.into_iter().find_map(|x| fails(&x))
}

/// The companion of the cubic the tests single out for each `q`.
pub fn named_cubic(f: &Field) -> Option<Cubic> {
    match f.size() {
        2 => Some(Cubic::from_ints(f, 0, 1, 1)),
        3 => Some(Cubic::from_ints(f, 0, 1, 1)),
        4 => Some(Cubic::new(Elem::ZERO, Elem::ZERO, f.t())),
        7 => Some(Cubic::from_ints(f, 0, 0, 3)),
        _ => None,
    }
}

// ---- smoothness -----------------------------------------------------------

/// Criterion vs scan over every monic cubic; reducible cubics must show a
/// singular point already over `F_q`.
pub fn check_criterion_vs_scan(f: &Arc<Field>, fields: &ScanFields) -> Option<String> {
    let q = f.size() as u32;
    let cubics = Cubic::all(f);
    let bad: Vec<Option<String>> = cubics
        .par_iter()
        .map(|&cubic| {
            let a = cubic.companion(f);
            let crit = is_smooth_criterion(&a, f);
            let scan = singular_scan(&canonical_form(cubic, q, f), fields).expect("scan fields");
            let rational = scan.iter().any(|(m, _)| *m == 1);
            if crit != scan.is_empty() || (!crit && !rational) {
                Some(format!("cubic {} criterion={} singular points={}", cubic.format(f), crit, scan.len()))
            } else {
                None
            }
        })
        .collect();
    bad.into_iter().flatten().next()
}

/// Same biconditional for random `GL(3, F_q)` conjugates of each companion.
pub fn check_criterion_conjugates(f: &Arc<Field>, fields: &ScanFields, per_cubic: usize) -> Option<String> {
    let q = f.size() as u32;
    let mut rng = rng_for(f.size(), 5);
    let mut jobs = Vec::new();
    for cubic in Cubic::all(f) {
        for _ in 0..per_cubic {
            jobs.push((cubic, random_invertible(3, f, &mut rng)));
        }
    }
    let bad: Vec<Option<String>> = jobs
        .par_iter()
        .map(|(cubic, t)| {
            let a = t.mul(&cubic.companion(f), f).unwrap().mul(&t.inv(f).unwrap(), f).unwrap();
            let crit = is_smooth_criterion(&a, f);
            let scan = singular_scan(&build_fa(&a, q, f), fields).expect("scan fields");
            (crit != scan.is_empty())
                .then(|| format!("A={} criterion={} singular points={}", a.format(f), crit, scan.len()))
        })
        .collect();
    bad.into_iter().flatten().next()
}

pub fn check_min_degree(f: &Arc<Field>, fields: &ScanFields) -> Option<String> {
    match min_degree_certificate(f, fields) {
        Ok(c) if c.passed => None,
        Ok(c) => Some(serde_json::to_string(&c).expect("serializable")),
        Err(e) => Some(e.to_string()),
    }
}

pub fn check_identities(f: &Arc<Field>) -> Option<String> {
    let q = f.size() as u32;
    first_failure(Cubic::irreducible(f), |&cubic| match proof_identities(cubic, q, f) {
        Ok(ids) => ids.iter().find(|(_, &v)| !v).map(|(k, _)| format!("cubic {}: {k}", cubic.format(f))),
        Err(e) => Some(e.to_string()),
    })
}

/// (a), (c), (d) agree on every companion, and (b) never contradicts them.
pub fn check_equivalence_conditions(f: &Arc<Field>, fields: &ScanFields) -> Option<String> {
    first_failure(Cubic::all(f), |&cubic| {
        let e = equivalence_conditions(&cubic.companion(f), f, fields).ok()?;
        let d = e.d_irreducible_charpoly;
        let agree = e.a_smooth == d && e.c_smooth_at_rational_points == d && (!d || e.b_no_linear_factor);
        (!agree).then(|| format!("cubic {}: {:?}", cubic.format(f), e))
    })
}

// ---- forms ----------------------------------------------------------------

pub fn check_ideal_generation(f: &Field) -> Option<String> {
    let q = f.size() as u32;
    first_failure(1..=q + 4, |&d| {
        let (ideal, vanishing) = hd_dimension(q, d, f);
        (ideal != vanishing || (d <= q && vanishing != 0))
            .then(|| format!("d={d}: ideal {ideal}, vanishing {vanishing}"))
    })
}

/// Exhaustive over `GL(3, F_2)`, 100 seeded matrices otherwise.
pub fn check_covariance(f: &Field) -> Option<String> {
    let q = f.size();
    let mats: Vec<Mat> = if q == 2 {
        general_linear(3, f).collect()
    } else {
        let mut rng = rng_for(q, 2);
        (0..100).map(|_| random_invertible(3, f, &mut rng)).collect()
    };
    first_failure(mats, |b| {
        let p = pullback_uvw(b, q as u32, f).ok()?;
        let cof = b.cofactor(f);
        (!p.verified || p.matrix != cof).then(|| format!("B={}", b.format(f)))
    })
}

/// `F_A = 0` exactly for scalar `A`: exhaustive for `q <= 3`, seeded above.
pub fn check_zero_forms(f: &Field) -> Option<String> {
    let q = f.size();
    let check = |a: &Mat| (build_fa(a, q as u32, f).is_zero() != a.is_scalar()).then(|| format!("A={}", a.format(f)));
    if q <= 3 {
        let n = q.pow(9);
        (0..n).find_map(|mut idx| {
            let data = (0..9)
                .map(|_| {
                    let e = f.enumerate().nth((idx % q) as usize).unwrap();
                    idx /= q;
                    e
                })
                .collect();
            check(&Mat::from_flat(data).unwrap())
        })
    } else {
        let mut rng = rng_for(q, 3);
        let mut mats: Vec<Mat> = (0..500).map(|_| random_matrix(3, f, &mut rng)).collect();
        mats.extend(f.enumerate().map(|mu| Mat::scalar(3, mu)));
        first_failure(mats, |a| check(a))
    }
}

/// Each pencil member factors into `q + 1` lines through its singular
/// point, which is its only singular point over `F_{q^2}`.
pub fn check_pencil(f: &Arc<Field>) -> Option<String> {
    let q = f.size() as u32;
    let f2 = Field::extension(f, 2).ok()?;
    first_failure(proj_points(3, f), |a| {
        let c = a.coords();
        let coeffs = [c[0], c[1], c[2]];
        let form = pencil_form(coeffs, q, f);
        let fail = || Some(format!("a={}", a.format(f)));
        let Ok(pen) = pencil_analysis(coeffs, q, f) else { return fail() };
        if pen.lines.len() != q as usize + 1 || pen.product(f) != form || pen.singular_point != *a {
            return fail();
        }
        let lifted = form.embed(f, &f2).ok()?;
        let sing = singular_points(&lifted, &f2);
        let expected = a.map(|x| f2.embed(f, x).unwrap());
        (sing != vec![expected]).then(|| format!("a={} singular over F_q^2: {}", a.format(f), sing.len()))
    })
}

// ---- classification -------------------------------------------------------

pub fn check_classes(f: &Field) -> Option<String> {
    let q = f.size() as usize;
    let r = classes(f);
    if r.total() != (q * q * q - q) / 3 {
        return Some(format!("classes cover {} cubics", r.total()));
    }
    let mut seen = BTreeSet::new();
    for c in &r.classes {
        if !(q * (q - 1)).is_multiple_of(c.members.len()) {
            return Some(format!("class of {} has size {}", c.representative.format(f), c.members.len()));
        }
        for m in &c.members {
            if !seen.insert(*m) || !m.is_irreducible(f) {
                return Some(format!("cubic {} misplaced", m.format(f)));
            }
        }
    }
    None
}

/// For `q = 1 mod 3` and a non-cube `a`, `t^3 - a` and `t^3 - a^{-1}` lie in
/// different orbits.
pub fn check_pure_cubic_separation(f: &Field) -> Option<String> {
    if f.size() % 3 != 1 {
        return None;
    }
    let cubes: BTreeSet<Elem> = f.nonzero().map(|x| f.pow_u(x, 3)).collect();
    first_failure(f.nonzero().filter(|a| !cubes.contains(a)), |&a| {
        let ainv = f.inv(a).unwrap();
        let x = Cubic::new(Elem::ZERO, Elem::ZERO, a);
        let y = Cubic::new(Elem::ZERO, Elem::ZERO, ainv);
        equivalent(x, y, f).map(|_| format!("t^3-{} ~ t^3-{}", f.format(a), f.format(ainv)))
    })
}

/// For `q = 3^e`, all irreducible `t^3 - (mu^2 t + a)` form one orbit.
pub fn check_harmonic_single_orbit(f: &Field) -> Option<String> {
    if !is_power_of_three(f.size()) {
        return None;
    }
    let mut members = BTreeSet::new();
    for mu in f.nonzero() {
        for a in f.nonzero() {
            let c = Cubic::new(Elem::ZERO, f.mul(mu, mu), a);
            if c.is_irreducible(f) {
                members.insert(c);
            }
        }
    }
    let first = *members.iter().next()?;
    let orb = orbit(first, f);
    first_failure(members.iter(), |c| (!orb.contains(c)).then(|| c.format(f)))
}

/// The characteristic-polynomial test agrees with a search over `GL(3, F_q)`:
/// all pairs at `q = 2`, pairs involving the first cubic at `q = 3`.
pub fn check_curves_equivalent(f: &Field) -> Option<String> {
    let irr = Cubic::irreducible(f);
    let pairs: Vec<(Cubic, Cubic)> = match f.size() {
        2 => irr.iter().flat_map(|&x| irr.iter().map(move |&y| (x, y))).collect(),
        3 => irr.iter().map(|&y| (irr[0], y)).collect(),
        _ => return None,
    };
    first_failure(pairs, |&(x, y)| {
        let (a, b) = (x.companion(f), y.companion(f));
        let fast = curves_equivalent(&a, &b, f).ok()?;
        (fast != curves_equivalent_brute(&a, &b, f)).then(|| format!("{} vs {}", x.format(f), y.format(f)))
    })
}

// ---- automorphisms --------------------------------------------------------

pub fn expected_aut_order(f: &Field, cubic: Cubic) -> Option<u64> {
    match f.size() {
        5 => Some(31),
        _ if Some(cubic) == named_cubic(f) => Some(match f.size() {
            2 => 7,
            3 => 39,
            4 => 63,
            _ => 171,
        }),
        _ => None,
    }
}

/// Orders of the named curves, with a `GL(3, F_q)` scan for `q <= 3`.
pub fn check_aut_orders(f: &Field) -> Option<String> {
    let cubics: Vec<Cubic> = match f.size() {
        5 => Cubic::irreducible(f),
        _ => named_cubic(f).into_iter().collect(),
    };
    first_failure(cubics, |&cubic| {
        let a = cubic.companion(f);
        let r = enumerate_aut(&a, f, false).ok()?;
        let expect = expected_aut_order(f, cubic)?;
        if r.order != expect {
            return Some(format!("cubic {}: order {} expected {expect}", cubic.format(f), r.order));
        }
        if f.size() == 3 && (!r.tallini_corrected || r.order == 78) {
            return Some("harmonic order is not 3(q^2+q+1)".into());
        }
        if f.size() <= 3 && aut_elements_brute(&a, f) != aut_elements(&a, f) {
            return Some(format!("cubic {}: GL scan disagrees", cubic.format(f)));
        }
        None
    })
}

pub fn check_aut_structure(f: &Field) -> Option<String> {
    let cubics = Cubic::irreducible(f);
    let bad: Vec<Option<String>> = cubics
        .par_iter()
        .map(|&cubic| {
            let r = enumerate_aut(&cubic.companion(f), f, false).ok()?;
            (!r.structure_holds()).then(|| serde_json::to_string(&r).expect("serializable"))
        })
        .collect();
    bad.into_iter().flatten().next()
}

/// `pi` never produces a transposition and its kernel is the image of the
/// centralizer of `A^t`.
pub fn check_pi(f: &Arc<Field>) -> Option<String> {
    let ext = Field::extension(f, 3).ok()?;
    first_failure(Cubic::irreducible(f), |&cubic| {
        let a = cubic.companion(f);
        let group = aut_elements(&a, f);
        let mut kernel = BTreeSet::new();
        for b in &group {
            let s = pi_map(b, &a, f, &ext).ok()?;
            let fixed = (0..3).filter(|&i| s[i] == i).count();
            if fixed == 1 {
                return Some(format!("cubic {}: transposition {:?}", cubic.format(f), s));
            }
            if fixed == 3 {
                kernel.insert(b.clone());
            }
        }
        (kernel != twisted_commutant(&a.transpose(), f.one(), f))
            .then(|| format!("cubic {}: kernel of pi differs from the centralizer", cubic.format(f)))
    })
}

/// For all `s`, the fixed points of `B0^s` over `F_{q^3}` are the eigen-points.
pub fn check_fixed_points(f: &Arc<Field>) -> Option<String> {
    let q = f.size();
    let ext = Field::extension(f, 3).ok()?;
    first_failure(Cubic::irreducible(f), |&cubic| {
        let a = cubic.companion(f);
        let mut eig = eigen_points(f, &a, &ext).ok()?;
        eig.sort();
        (1..q * q + q + 1).find_map(|s| {
            let fp = fixed_points(&a, s, f, &ext).ok()?;
            (fp != eig).then(|| format!("cubic {}, s={s}: {} fixed points", cubic.format(f), fp.len()))
        })
    })
}

/// Harmonic case: the explicit witness is an automorphism, and `Z_PGL(A^t)`
/// is only the Singer cycle. Every other case with a larger group has a shift
/// `A + kappa E` whose `PGL` centralizer is the whole group.
pub fn check_shift_and_harmonic(f: &Field) -> Option<String> {
    let q = f.size();
    if is_power_of_three(q) {
        for a in f.nonzero() {
            for mu in f.enumerate() {
                if !harmonic_witness_holds(a, mu, f) {
                    return Some(format!("witness fails for a={}, mu={}", f.format(a), f.format(mu)));
                }
            }
        }
    }
    let n = q * q + q + 1;
    first_failure(Cubic::irreducible(f), |&cubic| {
        let a = cubic.companion(f);
        let order = aut_elements(&a, f).len() as u64;
        if order == n {
            return None;
        }
        let harmonic = is_power_of_three(q) && cubic.c.is_zero();
        if harmonic {
            let z = pgl_centralizer(&a, f).len() as u64;
            (z != n || shift_realizing_aut(&a, f).is_some())
                .then(|| format!("cubic {}: PGL centralizer of order {z}", cubic.format(f)))
        } else {
            shift_realizing_aut(&a, f).is_none().then(|| format!("cubic {}: no realizing shift", cubic.format(f)))
        }
    })
}

// ---- centralizer ----------------------------------------------------------

/// Every centralizer claim for one monic irreducible polynomial, with a
/// `GL(n, F_q)` scan when the group has at most a million elements.
pub fn centralizer_witness(p: &MonicPoly, f: &Field) -> Option<String> {
    let q = f.size();
    let n = p.degree();
    let r = match centralizer_report(p, f) {
        Ok(r) => r,
        Err(e) => return Some(e.to_string()),
    };
    let qn1 = q.pow(n as u32) - 1;
    let ok = r.z_gl_order == qn1
        && r.generator_order == qn1
        && r.pgl_image_order == qn1 / (q - 1)
        && (r.pi_image_order > 1) == r.support_condition_holds
        && r.support_k.is_none_or(|k| k as u64 == r.pi_image_order)
        && r.z_pgl_order == r.pgl_image_order * r.pi_image_order
        && r.support_condition_holds == r.diag_witness.is_some();
    if !ok {
        return Some(serde_json::to_string(&r).expect("serializable"));
    }
    if gl_order(n, q) <= 1_000_000 {
        let a0 = companion(f, p, CompanionShape::Appendix).ok()?;
        if centralizer_order_brute(&a0, f) != qn1 {
            return Some(format!("{}: GL scan disagrees", p.format(f)));
        }
    }
    None
}

/// [`centralizer_witness`] for every monic irreducible polynomial of degree `n`.
pub fn check_centralizers(f: &Field, n: usize) -> Option<String> {
    first_failure(irreducible_polys(n, f), |p| centralizer_witness(p, f))
}

// ---- suites ---------------------------------------------------------------

/// Every check for one `q`.
pub fn suite_for_q(q: u64, deep: bool) -> Result<Vec<Check>> {
    check_supported(q)?;
    let f = Field::with_order(q)?;
    let name = |s: &str| format!("q={q}/{s}");
    let mut checks = Vec::new();
    if q <= 5 {
        let degrees = scan_degrees(deep);
        let fields = ScanFields::new(&f, &degrees)?;
        let layers = degrees.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",");
        checks.push(Check::from_witness(
            name(&format!("smooth/criterion_vs_scan[m={layers}]")),
            check_criterion_vs_scan(&f, &fields),
        ));
        let conj_fields = if q <= 3 { fields.clone() } else { ScanFields::new(&f, &[1, 2, 3])? };
        checks.push(Check::from_witness(
            name("smooth/random_conjugates"),
            check_criterion_conjugates(&f, &conj_fields, 50),
        ));
        checks.push(Check::from_witness(name("smooth/min_degree"), check_min_degree(&f, &fields)));
        checks.push(Check::from_witness(name("smooth/proof_identities"), check_identities(&f)));
        if q <= 3 {
            checks.push(Check::from_witness(
                name("smooth/equivalence_conditions"),
                check_equivalence_conditions(&f, &fields),
            ));
        }
        checks.push(Check::from_witness(name("forms/ideal_generation"), check_ideal_generation(&f)));
        checks.push(Check::from_witness(name("forms/covariance"), check_covariance(&f)));
        checks.push(Check::from_witness(name("forms/zero_forms"), check_zero_forms(&f)));
        checks.push(Check::from_witness(name("forms/pencil"), check_pencil(&f)));
        checks.push(Check::from_witness(name("classify/classes"), check_classes(&f)));
        checks.push(Check::from_witness(name("classify/pure_cubic_separation"), check_pure_cubic_separation(&f)));
        checks.push(Check::from_witness(name("classify/harmonic_single_orbit"), check_harmonic_single_orbit(&f)));
        if q <= 3 {
            checks.push(Check::from_witness(name("classify/curves_equivalent_vs_gl"), check_curves_equivalent(&f)));
        }
    }
    checks.push(Check::from_witness(name("autgroup/orders"), check_aut_orders(&f)));
    checks.push(Check::from_witness(name("autgroup/structure"), check_aut_structure(&f)));
    checks.push(Check::from_witness(name("autgroup/pi"), check_pi(&f)));
    if q <= 3 {
        checks.push(Check::from_witness(name("autgroup/fixed_points"), check_fixed_points(&f)));
    }
    checks.push(Check::from_witness(name("autgroup/shift_and_harmonic_witness"), check_shift_and_harmonic(&f)));
    if q <= 5 {
        for n in [2, 3] {
            checks.push(Check::from_witness(name(&format!("centralizer/n={n}")), check_centralizers(&f, n)));
        }
    }
    Ok(checks)
}

/// Runs [`suite_for_q`] for each `q`, keeping the order of `qs`.
pub fn cmd_verify(qs: &[u64], deep: bool, command: String) -> Result<SuiteResult> {
    for &q in qs {
        check_supported(q)?;
    }
    let per_q: Vec<Result<Vec<Check>>> = qs.par_iter().map(|&q| suite_for_q(q, deep)).collect();
    let mut checks = Vec::new();
    for r in per_q {
        checks.extend(r?);
    }
    Ok(SuiteResult::new(command, checks))
}
