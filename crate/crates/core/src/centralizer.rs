//! Centralizers in `GL(n, F_q)` of a matrix whose characteristic polynomial
//! is irreducible, their images in `PGL(n, F_q)`, and the scalar twists
//! `A0 B = rho B A0`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::linalg::{companion, general_linear, span_matrices, sylvester_kernel, CompanionShape, Mat};
use crate::numtheory::prime_factors;
use crate::poly::{MonicPoly, Poly};

fn irreducible_char_poly(a0: &Mat, f: &Field) -> Result<MonicPoly> {
    let cp = a0.char_poly(f);
    if !cp.is_irreducible(f) {
        return Err(Error::ReducibleCharPoly);
    }
    Ok(cp)
}

/// `g(A)` by Horner's rule.
pub fn poly_of_matrix(g: &Poly, a: &Mat, f: &Field) -> Mat {
    let n = a.n();
    g.coeffs()
        .iter()
        .rev()
        .fold(Mat::zero(n), |acc, &c| acc.mul(a, f).expect("same size").add(&Mat::scalar(n, c), f).expect("same size"))
}

/// `g(A0)` for the first (in enumeration order) polynomial `g` of degree
/// `< n` whose class generates `(F_q[t]/(f))^x`, `f` the characteristic
/// polynomial.
pub fn centralizer_generator(a0: &Mat, f: &Field) -> Result<Mat> {
    let cp = irreducible_char_poly(a0, f)?.to_poly(f);
    let n = a0.n();
    let q = f.size();
    let order = q.pow(n as u32) - 1;
    let exps: Vec<u64> = prime_factors(order).into_iter().map(|l| order / l).collect();
    let one = Poly::constant(f.one());
    for idx in 1..q.pow(n as u32) {
        let mut coeffs = vec![Elem::ZERO; n];
        let mut r = idx;
        for slot in coeffs.iter_mut() {
            *slot = Elem((r % q) as u32);
            r /= q;
        }
        let g = Poly::new(coeffs);
        if exps.iter().all(|&e| g.powmod(e, &cp, f).expect("nonzero modulus") != one) {
            return Ok(poly_of_matrix(&g, a0, f));
        }
    }
    unreachable!("a finite field has a primitive element")
}

/// Multiplicative order of an invertible matrix.
pub fn matrix_order(b: &Mat, f: &Field) -> u64 {
    let e = Mat::identity(b.n(), f);
    let mut cur = b.clone();
    let mut k = 1;
    while cur != e {
        cur = cur.mul(b, f).expect("same size");
        k += 1;
    }
    k
}

/// Order of the image of `b` in `PGL`.
pub fn pgl_order(b: &Mat, f: &Field) -> u64 {
    let mut cur = b.clone();
    let mut k = 1;
    while !cur.is_scalar() {
        cur = cur.mul(b, f).expect("same size");
        k += 1;
    }
    k
}

/// Invertible `B` with `A0 B = rho B A0`, as normalized `PGL` representatives.
pub fn twisted_commutant(a0: &Mat, rho: Elem, f: &Field) -> BTreeSet<Mat> {
    let basis = sylvester_kernel(a0, &a0.scale(rho, f), f);
    span_matrices(f, &basis, a0.n()).filter(|b| b.is_invertible(f)).map(|b| b.projective_normalize(f)).collect()
}

/// `|Z_GL(A0)|`, counted over the solution space of `A0 X = X A0`.
pub fn centralizer_order(a0: &Mat, f: &Field) -> Result<u64> {
    irreducible_char_poly(a0, f)?;
    let basis = sylvester_kernel(a0, a0, f);
    Ok(span_matrices(f, &basis, a0.n()).filter(|b| b.is_invertible(f)).count() as u64)
}

/// `|Z_GL(A0)|` by scanning all of `GL(n, F_q)`.
pub fn centralizer_order_brute(a0: &Mat, f: &Field) -> u64 {
    general_linear(a0.n(), f).filter(|b| a0.mul(b, f).unwrap() == b.mul(a0, f).unwrap()).count() as u64
}

/// `|GL(n, F_q)|`.
pub fn gl_order(n: usize, q: u64) -> u64 {
    let qn = q.pow(n as u32);
    (0..n as u32).map(|i| qn - q.pow(i)).product()
}

/// Order of the image of `Z_GL(A0)` in `PGL(n, F_q)`.
pub fn pgl_image_order(a0: &Mat, f: &Field) -> Result<u64> {
    irreducible_char_poly(a0, f)?;
    Ok(twisted_commutant(a0, f.one(), f).len() as u64)
}

/// The `rho in F_q^x` for which `A0 B = rho B A0` has an invertible solution.
pub fn twist_scalars(a0: &Mat, f: &Field) -> Result<Vec<Elem>> {
    irreducible_char_poly(a0, f)?;
    Ok(f.nonzero().filter(|&rho| !twisted_commutant(a0, rho, f).is_empty()).collect())
}

/// Order of the image of `Z_PGL(A0)` in the scalars, `k` in the text.
pub fn pi_image_order(a0: &Mat, f: &Field) -> Result<u64> {
    Ok(twist_scalars(a0, f)?.len() as u64)
}

/// `|Z_PGL(A0)|`: the union over all `rho` of the twisted commutants.
pub fn z_pgl_order(a0: &Mat, f: &Field) -> Result<u64> {
    irreducible_char_poly(a0, f)?;
    let all: BTreeSet<Mat> = f.nonzero().flat_map(|rho| twisted_commutant(a0, rho, f)).collect();
    Ok(all.len() as u64)
}

/// The largest `k > 1` with `k | n`, `q = 1 mod k` and `f` supported on
/// exponents divisible by `k` (below the leading term).
pub fn support_condition(poly: &MonicPoly, q: u64) -> Option<usize> {
    let n = poly.degree();
    let lower = poly.lower();
    (2..=n).rev().find(|&k| {
        n.is_multiple_of(k)
            && (q - 1).is_multiple_of(k as u64)
            && (1..=n).filter(|j| j % k != 0).all(|j| lower[n - j].is_zero())
    })
}

/// `diag(1, rho, .., rho^{n-1})`, checked to satisfy `A0 B = rho B A0`.
pub fn diag_witness(rho: Elem, k: u64, a0: &Mat, f: &Field) -> Result<Mat> {
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k} must exceed 1")));
    }
    if f.order(rho) != Some(k) {
        return Err(Error::Precondition("rho is not a primitive k-th root of unity".into()));
    }
    let n = a0.n();
    let entries: Vec<Elem> = (0..n).map(|i| f.pow_u(rho, i as u64)).collect();
    let b = Mat::diag(&entries);
    if a0.mul(&b, f)? != b.mul(a0, f)?.scale(rho, f) {
        return Err(Error::Precondition("A0 B = rho B A0 fails for the diagonal witness".into()));
    }
    Ok(b)
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralizerReport {
    pub n: usize,
    pub q: u64,
    pub poly: String,
    pub z_gl_order: u64,
    pub pgl_image_order: u64,
    pub pi_image_order: u64,
    pub z_pgl_order: u64,
    pub support_k: Option<usize>,
    pub support_condition_holds: bool,
    pub generator: String,
    pub generator_order: u64,
    pub diag_witness: Option<String>,
}

pub fn centralizer_report(poly: &MonicPoly, f: &Field) -> Result<CentralizerReport> {
    if !poly.is_irreducible(f) {
        return Err(Error::ReduciblePoly);
    }
    let a0 = companion(f, poly, CompanionShape::Appendix)?;
    let gen = centralizer_generator(&a0, f)?;
    let support_k = support_condition(poly, f.size());
    let pi = pi_image_order(&a0, f)?;
    let diag = match support_k {
        Some(k) => {
            let rho = f.nonzero().find(|&r| f.order(r) == Some(k as u64)).expect("k divides q - 1");
            Some(diag_witness(rho, k as u64, &a0, f)?.format(f))
        }
        None => None,
    };
    Ok(CentralizerReport {
        n: poly.degree(),
        q: f.size(),
        poly: poly.format(f),
        z_gl_order: centralizer_order(&a0, f)?,
        pgl_image_order: pgl_image_order(&a0, f)?,
        pi_image_order: pi,
        z_pgl_order: z_pgl_order(&a0, f)?,
        support_k,
        support_condition_holds: support_k.is_some(),
        generator: gen.format(f),
        generator_order: matrix_order(&gen, f),
        diag_witness: diag,
    })
}

/// Every monic irreducible polynomial of degree `n` over `f`.
pub fn irreducible_polys(n: usize, f: &Field) -> Vec<MonicPoly> {
    let q = f.size();
    (0..q.pow(n as u32))
        .map(|mut idx| {
            let mut lower = vec![Elem::ZERO; n];
            for slot in lower.iter_mut().rev() {
                *slot = Elem((idx % q) as u32);
                idx /= q;
            }
            MonicPoly::new(lower)
        })
        .filter(|p| p.is_irreducible(f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn appendix(f: &Field, lower: &[i64]) -> (MonicPoly, Mat) {
        let p = MonicPoly::new(lower.iter().map(|&c| f.from_int(c)).collect());
        let a = companion(f, &p, CompanionShape::Appendix).unwrap();
        (p, a)
    }

    #[test]
    fn small_orders() {
        let f2 = Field::prime(2).unwrap();
        let (_, a) = appendix(&f2, &[1, 1, 0]);
        assert_eq!(centralizer_order(&a, &f2).unwrap(), 7);
        assert_eq!(centralizer_order_brute(&a, &f2), 7);
        assert_eq!(pgl_image_order(&a, &f2).unwrap(), 7);
        assert_eq!(pi_image_order(&a, &f2).unwrap(), 1);
        let (_, a) = appendix(&f2, &[1, 1]);
        assert_eq!(centralizer_order_brute(&a, &f2), 3);
        let f3 = Field::prime(3).unwrap();
        let (p, a) = appendix(&f3, &[1, 0]);
        assert_eq!(centralizer_order(&a, &f3).unwrap(), 8);
        assert_eq!(centralizer_order_brute(&a, &f3), 8);
        assert_eq!(pgl_image_order(&a, &f3).unwrap(), 4);
        assert_eq!(pi_image_order(&a, &f3).unwrap(), 2);
        assert_eq!(support_condition(&p, 3), Some(2));
    }

    #[test]
    fn generator_has_full_order() {
        let f3 = Field::prime(3).unwrap();
        let (_, a) = appendix(&f3, &[1, 0]);
        let b = centralizer_generator(&a, &f3).unwrap();
        assert_eq!(matrix_order(&b, &f3), 8);
        assert_eq!(a.mul(&b, &f3).unwrap(), b.mul(&a, &f3).unwrap());
    }

    #[test]
    fn diag_witness_examples() {
        let f3 = Field::prime(3).unwrap();
        let (_, a) = appendix(&f3, &[1, 0]);
        let b = diag_witness(f3.from_int(2), 2, &a, &f3).unwrap();
        assert_eq!(a.mul(&b, &f3).unwrap().format(&f3), "0,2;2,0");
        assert!(diag_witness(f3.one(), 1, &a, &f3).is_err());
        let f4 = Field::with_order(4).unwrap();
        let w = f4.t();
        let p = MonicPoly::new(vec![f4.neg(w), Elem::ZERO, Elem::ZERO]);
        let a = companion(&f4, &p, CompanionShape::Appendix).unwrap();
        assert!(diag_witness(w, 3, &a, &f4).is_ok());
        assert_eq!(support_condition(&p, 4), Some(3));
        assert_eq!(pi_image_order(&a, &f4).unwrap(), 3);
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(3, 2), 168);
        assert_eq!(gl_order(2, 3), 48);
        assert_eq!(gl_order(3, 5), 1_488_000);
    }
}
