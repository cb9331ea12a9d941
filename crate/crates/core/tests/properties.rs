use std::sync::Arc;

use fillcurve::autgroup::{aut_elements, b0_generator, is_closed};
use fillcurve::centralizer::{centralizer_generator, pgl_order};
use fillcurve::classify::{substitute, Cubic};
use fillcurve::forms::{build_fa, pullback_uvw};
use fillcurve::linalg::{eigen_points, proj_points, Mat, ProjPoint};
use fillcurve::smooth::{build_g, canonical_form, is_smooth_criterion, singular_scan, ScanFields};
use fillcurve::verify::{random_invertible, rng_for};
use fillcurve::{Elem, Field};
use proptest::prelude::*;

fn el(f: &Field, i: u64) -> Elem {
    f.enumerate().nth((i % f.size()) as usize).unwrap()
}

fn nz(f: &Field, i: u64) -> Elem {
    f.nonzero().nth((i % (f.size() - 1)) as usize).unwrap()
}

fn mat(f: &Field, seeds: &[u64]) -> Mat {
    Mat::from_flat(seeds.iter().map(|&s| el(f, s)).collect()).unwrap()
}

/// Fields used by the arithmetic properties: prime, prime-power and towers.
fn sample_field(idx: usize) -> Arc<Field> {
    match idx % 10 {
        0 => Field::with_order(2),
        1 => Field::with_order(3),
        2 => Field::with_order(4),
        3 => Field::with_order(5),
        4 => Field::with_order(7),
        5 => Field::with_order(9),
        6 => Field::with_order(16),
        7 => Field::with_order(27),
        8 => Field::extension(&Field::with_order(4).unwrap(), 3),
        _ => Field::extension(&Field::with_order(5).unwrap(), 2),
    }
    .unwrap()
}

/// (extension, subfield order) pairs.
fn sample_tower(idx: usize) -> (Arc<Field>, Arc<Field>) {
    let (q, m) = [(2, 2), (2, 3), (2, 6), (3, 2), (3, 3), (4, 3), (5, 2), (5, 3)][idx % 8];
    let base = Field::with_order(q).unwrap();
    (Field::extension(&base, m).unwrap(), base)
}

fn small_field(idx: usize) -> Arc<Field> {
    Field::with_order([2, 3, 4, 5][idx % 4]).unwrap()
}

fn invertible(f: &Field, seeds: &[u64]) -> Mat {
    let n = (seeds.len() as f64).sqrt() as usize;
    let seed = seeds.iter().fold(0u64, |h, &s| h.rotate_left(7) ^ s);
    random_invertible(n, f, &mut rng_for(f.size(), seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(fi in 0usize..10, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = sample_field(fi);
        let (a, b, c) = (el(&f, a), el(&f, b), el(&f, c));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        prop_assert_eq!(f.pow_u(a, f.size()), a);
    }

    #[test]
    fn frobenius_norm_trace(ti in 0usize..8, a in any::<u64>(), b in any::<u64>()) {
        let (e, sub) = sample_tower(ti);
        let q = sub.size();
        let (a, b) = (el(&e, a), el(&e, b));
        prop_assert_eq!(e.frobenius(e.add(a, b), q).unwrap(), e.add(e.frobenius(a, q).unwrap(), e.frobenius(b, q).unwrap()));
        prop_assert_eq!(e.frobenius(e.mul(a, b), q).unwrap(), e.mul(e.frobenius(a, q).unwrap(), e.frobenius(b, q).unwrap()));
        let n = e.norm(a, q).unwrap();
        let t = e.trace(a, q).unwrap();
        prop_assert!(e.in_subfield(n, q) && e.in_subfield(t, q));
        if !a.is_zero() {
            prop_assert_eq!(n, e.pow_u(a, (e.size() - 1) / (q - 1)));
        }
    }

    #[test]
    fn embedding_is_injective_homomorphism(ti in 0usize..8, a in any::<u64>(), b in any::<u64>()) {
        let (e, sub) = sample_tower(ti);
        let (a, b) = (el(&sub, a), el(&sub, b));
        let emb = |x| e.embed(&sub, x).unwrap();
        prop_assert_eq!(emb(sub.add(a, b)), e.add(emb(a), emb(b)));
        prop_assert_eq!(emb(sub.mul(a, b)), e.mul(emb(a), emb(b)));
        prop_assert_eq!(e.restrict(&sub, emb(a)), Some(a));
        prop_assert_eq!(a == b, emb(a) == emb(b));
    }

    #[test]
    fn field_construction_is_deterministic(fi in 0usize..10, a in any::<u64>()) {
        let f = sample_field(fi);
        let g = sample_field(fi);
        prop_assert_eq!(f.modulus(), g.modulus());
        prop_assert_eq!(f.format(el(&f, a)), g.format(el(&g, a)));
    }

    #[test]
    fn det_is_multiplicative(fi in 0usize..4, n in 2usize..5, s in prop::collection::vec(any::<u64>(), 32)) {
        let f = small_field(fi);
        let a = mat(&f, &s[..n * n]);
        let b = mat(&f, &s[16..16 + n * n]);
        prop_assert_eq!(a.mul(&b, &f).unwrap().det(&f), f.mul(a.det(&f), b.det(&f)));
        if let Ok(inv) = a.inv(&f) {
            prop_assert_eq!(a.mul(&inv, &f).unwrap(), Mat::identity(n, &f));
        } else {
            prop_assert!(a.det(&f).is_zero());
        }
    }

    #[test]
    fn char_poly_is_conjugation_invariant(fi in 0usize..4, n in 2usize..5, s in prop::collection::vec(any::<u64>(), 32)) {
        let f = small_field(fi);
        let a = mat(&f, &s[..n * n]);
        let t = invertible(&f, &s[16..16 + n * n]);
        let conj = t.mul(&a, &f).unwrap().mul(&t.inv(&f).unwrap(), &f).unwrap();
        prop_assert_eq!(conj.char_poly(&f), a.char_poly(&f));
    }

    #[test]
    fn eigen_points_are_frobenius_cycle(fi in 0usize..4, i in any::<usize>(), s in prop::collection::vec(any::<u64>(), 9)) {
        let f = small_field(fi);
        let q = f.size();
        let irr = Cubic::irreducible(&f);
        let t = invertible(&f, &s);
        let a = t.mul(&irr[i % irr.len()].companion(&f), &f).unwrap().mul(&t.inv(&f).unwrap(), &f).unwrap();
        let ext = Field::extension(&f, 3).unwrap();
        let pts = eigen_points(&f, &a, &ext).unwrap();
        prop_assert_eq!(pts.len(), 3);
        for k in 0..3 {
            let image = pts[k].map(|x| ext.frobenius(x, q).unwrap());
            prop_assert_eq!(&image, &pts[(k + 1) % 3]);
        }
        for p in &pts {
            let lifted = a.transpose().map(|x| ext.embed(&f, x).unwrap());
            let img = ProjPoint::normalize(&lifted.apply(p.coords(), &ext), &ext).unwrap();
            prop_assert_eq!(&img, p);
        }
    }

    #[test]
    fn build_fa_is_linear(fi in 0usize..4, s in prop::collection::vec(any::<u64>(), 20)) {
        let f = small_field(fi);
        let q = f.size() as u32;
        let (a, b) = (mat(&f, &s[..9]), mat(&f, &s[9..18]));
        let (al, be) = (el(&f, s[18]), el(&f, s[19]));
        let lhs = build_fa(&a.scale(al, &f).add(&b.scale(be, &f), &f).unwrap(), q, &f);
        let rhs = build_fa(&a, q, &f).scale(al, &f).add(&build_fa(&b, q, &f).scale(be, &f), &f).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(build_fa(&Mat::scalar(3, al), q, &f).is_zero());
    }

    #[test]
    fn uvw_pullback_is_cofactor(fi in 1usize..4, s in prop::collection::vec(any::<u64>(), 9)) {
        let f = small_field(fi);
        let b = invertible(&f, &s);
        let p = pullback_uvw(&b, f.size() as u32, &f).unwrap();
        prop_assert!(p.verified);
        prop_assert_eq!(p.matrix, b.cofactor(&f));
    }

    #[test]
    fn substitution_is_group_action(fi in 0usize..4, c in any::<u64>(), b in any::<u64>(), a in any::<u64>(),
                                    r1 in any::<u64>(), m1 in any::<u64>(), r2 in any::<u64>(), m2 in any::<u64>()) {
        let f = small_field(fi);
        let cubic = Cubic::new(el(&f, c), el(&f, b), el(&f, a));
        let (r1, m1, r2, m2) = (nz(&f, r1), el(&f, m1), nz(&f, r2), el(&f, m2));
        prop_assert_eq!(substitute(cubic, f.one(), f.zero(), &f).unwrap(), cubic);
        let two_steps = substitute(substitute(cubic, r1, m1, &f).unwrap(), r2, m2, &f).unwrap();
        let composed = substitute(cubic, f.mul(r2, r1), f.add(f.mul(r2, m1), m2), &f).unwrap();
        prop_assert_eq!(two_steps, composed);
        let image = substitute(cubic, r1, m1, &f).unwrap();
        let rinv = f.inv(r1).unwrap();
        let back = substitute(image, rinv, f.neg(f.mul(m1, rinv)), &f).unwrap();
        prop_assert_eq!(back, cubic);
        prop_assert_eq!(image.is_irreducible(&f), cubic.is_irreducible(&f));
    }

    #[test]
    fn intersection_budget(q in 1u64..1_000_000) {
        prop_assert_eq!((q + 2) * (2 * q + 1), 3 * q + 2 * (q * q + q + 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn criterion_survives_conjugation(fi in 0usize..2, ci in any::<u64>(), s in prop::collection::vec(any::<u64>(), 9)) {
        let f = small_field(fi);
        let q = f.size() as u32;
        let all = Cubic::all(&f);
        let cubic = all[(ci % all.len() as u64) as usize];
        let t = invertible(&f, &s);
        let a = t.mul(&cubic.companion(&f), &f).unwrap().mul(&t.inv(&f).unwrap(), &f).unwrap();
        let fields = ScanFields::new(&f, &[1, 2, 3]).unwrap();
        let scan = singular_scan(&build_fa(&a, q, &f), &fields).unwrap();
        prop_assert_eq!(is_smooth_criterion(&a, &f), cubic.is_irreducible(&f));
        prop_assert_eq!(is_smooth_criterion(&a, &f), scan.is_empty());
    }

    #[test]
    fn g_vanishes_on_curve_points(fi in 0usize..3, ci in any::<u64>()) {
        let f = small_field(fi);
        let q = f.size() as u32;
        let irr = Cubic::irreducible(&f);
        let form = canonical_form(irr[(ci % irr.len() as u64) as usize], q, &f);
        let g = build_g(&form, q, &f);
        for p in proj_points(3, &f) {
            prop_assert!(form.eval(&f, p.coords()).is_zero());
            prop_assert!(g.eval(&f, p.coords()).is_zero());
        }
    }

    #[test]
    fn aut_group_is_closed_and_sized(fi in 0usize..4, ci in any::<u64>()) {
        let f = small_field(fi);
        let q = f.size();
        let n = q * q + q + 1;
        let irr = Cubic::irreducible(&f);
        let a = irr[(ci % irr.len() as u64) as usize].companion(&f);
        let group = aut_elements(&a, &f);
        prop_assert!(group.len() as u64 == n || group.len() as u64 == 3 * n);
        prop_assert!(is_closed(&group, &f));
        let b0 = b0_generator(&a, &f).unwrap();
        prop_assert_eq!(&b0, &centralizer_generator(&a.transpose(), &f).unwrap());
        prop_assert!(group.contains(&b0.projective_normalize(&f)));
        prop_assert_eq!(pgl_order(&b0, &f), n);
    }
}
