//! Matrices over a [`Field`], characteristic polynomials, companion matrices,
//! eigen-points and projective point sets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::poly::{split_top_level, MonicPoly, Poly};

/// Square `n x n` matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: usize,
    data: Vec<Elem>,
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        Mat { n, data: vec![Elem::ZERO; n * n] }
    }

    pub fn identity(n: usize, f: &Field) -> Self {
        Self::scalar(n, f.one())
    }

    pub fn scalar(n: usize, c: Elem) -> Self {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn diag(entries: &[Elem]) -> Self {
        let n = entries.len();
        let mut m = Mat::zero(n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("rows must form a square matrix".into()));
        }
        Ok(Mat { n, data: rows.into_iter().flatten().collect() })
    }

    /// Row-major entries; `data.len()` must be a perfect square.
    pub fn from_flat(data: Vec<Elem>) -> Result<Self> {
        let n = (data.len() as f64).sqrt().round() as usize;
        if n * n != data.len() {
            return Err(Error::DimensionMismatch(format!("{} entries", data.len())));
        }
        Ok(Mat { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn map(&self, g: impl Fn(Elem) -> Elem) -> Mat {
        Mat { n: self.n, data: self.data.iter().map(|&e| g(e)).collect() }
    }

    fn check_dim(&self, other: &Mat) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat, f: &Field) -> Result<Mat> {
        self.check_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Mat { n: self.n, data })
    }

    pub fn sub(&self, other: &Mat, f: &Field) -> Result<Mat> {
        self.check_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Mat { n: self.n, data })
    }

    pub fn scale(&self, c: Elem, f: &Field) -> Mat {
        self.map(|e| f.mul(e, c))
    }

    pub fn mul(&self, other: &Mat, f: &Field) -> Result<Mat> {
        self.check_dim(other)?;
        let n = self.n;
        let mut data = vec![Elem::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    data[idx] = f.add(data[idx], f.mul(a, other.data[k * n + j]));
                }
            }
        }
        Ok(Mat { n, data })
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let mut m = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.data[j * n + i] = self.data[i * n + j];
            }
        }
        m
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Elem], f: &Field) -> Vec<Elem> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn det(&self, f: &Field) -> Elem {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Elem::ZERO;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).expect("nonzero pivot");
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                }
            }
        }
        det
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        !self.det(f).is_zero()
    }

    pub fn inv(&self, f: &Field) -> Result<Mat> {
        let n = self.n;
        let w = 2 * n;
        let mut a = vec![Elem::ZERO; n * w];
        for i in 0..n {
            for j in 0..n {
                a[i * w + j] = self.data[i * n + j];
            }
            a[i * w + n + i] = f.one();
        }
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r * w + col].is_zero()).ok_or(Error::SingularMatrix)?;
            if piv != col {
                for j in 0..w {
                    a.swap(piv * w + j, col * w + j);
                }
            }
            let pinv = f.inv(a[col * w + col])?;
            for j in 0..w {
                a[col * w + j] = f.mul(a[col * w + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * w + col];
                if factor.is_zero() {
                    continue;
                }
                for j in 0..w {
                    a[r * w + j] = f.sub(a[r * w + j], f.mul(factor, a[col * w + j]));
                }
            }
        }
        let mut m = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = a[i * w + n + j];
            }
        }
        Ok(m)
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> Mat {
        let n = self.n;
        let data = (0..n)
            .filter(|&i| i != skip_r)
            .flat_map(|i| (0..n).filter(move |&j| j != skip_c).map(move |j| (i, j)))
            .map(|(i, j)| self.data[i * n + j])
            .collect();
        Mat { n: n - 1, data }
    }

    /// Matrix of signed `(i, j)` cofactors, computed from minors.
    pub fn cofactor(&self, f: &Field) -> Mat {
        let n = self.n;
        if n == 1 {
            return Mat::identity(1, f);
        }
        let mut m = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let d = self.minor(i, j).det(f);
                m.data[i * n + j] = if (i + j) % 2 == 0 { d } else { f.neg(d) };
            }
        }
        m
    }

    pub fn pow(&self, mut k: u64, f: &Field) -> Mat {
        let mut result = Mat::identity(self.n, f);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base, f).expect("same dimension");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, f).expect("same dimension");
            }
        }
        result
    }

    pub fn is_scalar(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| if i == j { self.get(i, j) == self.get(0, 0) } else { self.get(i, j).is_zero() }))
    }

    /// Representative of the class in `PGL`: first nonzero entry (row-major) scaled to 1.
    pub fn projective_normalize(&self, f: &Field) -> Mat {
        match self.data.iter().find(|e| !e.is_zero()) {
            Some(&lead) => self.scale(f.inv(lead).expect("nonzero"), f),
            None => self.clone(),
        }
    }

    /// `det(tE - A)`, by Laplace expansion along rows with memoisation on
    /// the set of columns still available.
    pub fn char_poly(&self, f: &Field) -> MonicPoly {
        let n = self.n;
        let entry = |i: usize, j: usize| -> Poly {
            let a = f.neg(self.get(i, j));
            if i == j {
                Poly::new(vec![a, f.one()])
            } else {
                Poly::constant(a)
            }
        };
        fn expand(
            row: usize,
            cols: u32,
            n: usize,
            f: &Field,
            entry: &dyn Fn(usize, usize) -> Poly,
            memo: &mut HashMap<u32, Poly>,
        ) -> Poly {
            if row == n {
                return Poly::constant(f.one());
            }
            if let Some(p) = memo.get(&cols) {
                return p.clone();
            }
            let mut acc = Poly::zero();
            let mut sign_pos = true;
            for j in 0..n {
                if cols & (1 << j) == 0 {
                    continue;
                }
                let e = entry(row, j);
                if !e.is_zero() {
                    let sub = expand(row + 1, cols & !(1 << j), n, f, entry, memo);
                    let term = e.mul(&sub, f);
                    acc = if sign_pos { acc.add(&term, f) } else { acc.sub(&term, f) };
                }
                sign_pos = !sign_pos;
            }
            memo.insert(cols, acc.clone());
            acc
        }
        let mut memo = HashMap::new();
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let p = expand(0, full, n, f, &entry, &mut memo);
        MonicPoly::from_poly(&p, f).expect("characteristic polynomial is monic of degree n")
    }

    /// Rows separated by `;`, entries by `,`.
    pub fn format(&self, f: &Field) -> String {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|&e| f.format(e)).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse(f: &Field, s: &str) -> Result<Mat> {
        let rows = s
            .split(';')
            .map(|r| split_top_level(r).iter().map(|t| f.parse(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Mat::from_rows(rows)
    }
}

/// Which companion layout to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompanionShape {
    /// `[[0,0,a],[1,0,b],[0,1,c]]` for `t^3 - (c t^2 + b t + a)`.
    Curve3,
    /// Superdiagonal ones with last row `(a_0, .., a_{n-1})` for
    /// `t^n - (a_{n-1} t^{n-1} + .. + a_0)`.
    Appendix,
}

pub fn companion(f: &Field, poly: &MonicPoly, shape: CompanionShape) -> Result<Mat> {
    let n = poly.degree();
    if n < 2 {
        return Err(Error::Precondition("companion needs degree >= 2".into()));
    }
    // a_i with poly = t^n - sum a_i t^i
    let a: Vec<Elem> = poly.lower().iter().map(|&c| f.neg(c)).collect();
    let mut m = Mat::zero(n);
    match shape {
        CompanionShape::Curve3 => {
            if n != 3 {
                return Err(Error::DimensionMismatch("curve3 companion requires n = 3".into()));
            }
            m.set(1, 0, f.one());
            m.set(2, 1, f.one());
            for (i, &ai) in a.iter().enumerate() {
                m.set(i, 2, ai);
            }
        }
        CompanionShape::Appendix => {
            for i in 0..n - 1 {
                m.set(i, i + 1, f.one());
            }
            for (j, &aj) in a.iter().enumerate() {
                m.set(n - 1, j, aj);
            }
        }
    }
    Ok(m)
}

/// A point of projective space, first nonzero coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Vec<Elem>);

impl ProjPoint {
    /// Normalizes `coords`; `None` for the zero vector.
    pub fn normalize(coords: &[Elem], f: &Field) -> Option<ProjPoint> {
        let lead = *coords.iter().find(|c| !c.is_zero())?;
        let inv = f.inv(lead).ok()?;
        Some(ProjPoint(coords.iter().map(|&c| f.mul(c, inv)).collect()))
    }

    pub fn coords(&self) -> &[Elem] {
        &self.0
    }

    pub fn map(&self, g: impl Fn(Elem) -> Elem) -> ProjPoint {
        ProjPoint(self.0.iter().map(|&c| g(c)).collect())
    }

    pub fn format(&self, f: &Field) -> String {
        let parts: Vec<String> = self.0.iter().map(|&c| f.format(c)).collect();
        format!("({})", parts.join(","))
    }
}

/// All points of `P^{n-1}` over `f` in lexicographic order of normalized
/// coordinates.
pub fn proj_points(n: usize, f: &Field) -> Vec<ProjPoint> {
    let q = f.size() as usize;
    let mut out = Vec::new();
    for lead in (0..n).rev() {
        let tail = n - lead - 1;
        let count = q.pow(tail as u32);
        for idx in 0..count {
            let mut coords = vec![Elem::ZERO; n];
            coords[lead] = f.one();
            let mut r = idx;
            for k in (0..tail).rev() {
                coords[lead + 1 + k] = Elem((r % q) as u32);
                r /= q;
            }
            out.push(ProjPoint(coords));
        }
    }
    out
}

/// The eigen-points of `transpose(A)` over `ext`, ordered so that each point
/// is the coordinatewise `q`-power of the previous one.
pub fn eigen_points(f: &Field, a: &Mat, ext: &Field) -> Result<Vec<ProjPoint>> {
    let cp = a.char_poly(f);
    if !cp.is_irreducible(f) {
        return Err(Error::ReducibleCharPoly);
    }
    let n = a.n();
    let emb = ext.embedding_table(f)?;
    let lift = |e: Elem| emb[e.0 as usize];
    let roots = cp.map(lift).to_poly(ext).roots(ext);
    let Some(&lambda) = roots.first() else {
        return Err(Error::Precondition(format!("{ext} does not split the characteristic polynomial")));
    };
    let at = a.transpose().map(lift);
    let shifted = at.sub(&Mat::scalar(n, lambda), ext)?;
    let rows: Vec<Vec<Elem>> = (0..n).map(|i| shifted.row(i).to_vec()).collect();
    let kernel = nullspace(ext, &rows, n);
    if kernel.len() != 1 {
        return Err(Error::Precondition("eigenspace is not one-dimensional".into()));
    }
    let q = f.size();
    let mut pts = Vec::with_capacity(n);
    let mut cur = ProjPoint::normalize(&kernel[0], ext).expect("nonzero kernel vector");
    for _ in 0..n {
        let next = cur.map(|c| ext.pow_u(c, q));
        pts.push(cur);
        cur = next;
    }
    Ok(pts)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(f: &Field, rows: &mut [Vec<Elem>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][col]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i == r {
                continue;
            }
            let factor = rows[i][col];
            if factor.is_zero() {
                continue;
            }
            for j in col..ncols {
                let v = f.mul(factor, rows[r][j]);
                rows[i][j] = f.sub(rows[i][j], v);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Field, rows: &[Vec<Elem>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m, ncols).len()
}

/// Basis of `{v : M v = 0}`.
pub fn nullspace(f: &Field, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Elem::ZERO; ncols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[r][fc]);
            }
            v
        })
        .collect()
}

/// Basis of `{X : P X - X Q = 0}` for square `P`, `Q` of the same size.
pub fn sylvester_kernel(p: &Mat, q: &Mat, f: &Field) -> Vec<Mat> {
    let n = p.n();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // (P X)_ij - (X Q)_ij in the unknowns X_kl, indexed k * n + l
            let mut row = vec![Elem::ZERO; n * n];
            for k in 0..n {
                row[k * n + j] = f.add(row[k * n + j], p.get(i, k));
                row[i * n + k] = f.sub(row[i * n + k], q.get(k, j));
            }
            rows.push(row);
        }
    }
    nullspace(f, &rows, n * n).into_iter().map(|v| Mat::from_flat(v).expect("n*n entries")).collect()
}

/// All linear combinations of `basis`, coefficient tuples in enumeration order.
pub fn span_matrices<'a>(f: &'a Field, basis: &'a [Mat], n: usize) -> impl Iterator<Item = Mat> + 'a {
    let q = f.size();
    (0..q.pow(basis.len() as u32)).map(move |mut idx| {
        let mut m = Mat::zero(n);
        for b in basis.iter().rev() {
            let c = Elem((idx % q) as u32);
            idx /= q;
            if c.is_zero() {
                continue;
            }
            for (x, &y) in m.data.iter_mut().zip(&b.data) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        m
    })
}

/// Every vector of the span of `basis`, coefficient tuples in enumeration order.
pub fn span_vectors<'a>(f: &'a Field, basis: &'a [Vec<Elem>], len: usize) -> impl Iterator<Item = Vec<Elem>> + 'a {
    let q = f.size();
    let k = basis.len() as u32;
    (0..q.pow(k)).map(move |mut idx| {
        let mut v = vec![Elem::ZERO; len];
        for b in basis.iter().rev() {
            let c = Elem((idx % q) as u32);
            idx /= q;
            if c.is_zero() {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        v
    })
}

/// All invertible `n x n` matrices over `f`, in enumeration order.
pub fn general_linear(n: usize, f: &Field) -> impl Iterator<Item = Mat> + '_ {
    let q = f.size();
    let total = q.pow((n * n) as u32);
    (0..total).filter_map(move |mut idx| {
        let mut data = vec![Elem::ZERO; n * n];
        for slot in data.iter_mut().rev() {
            *slot = Elem((idx % q) as u32);
            idx /= q;
        }
        let m = Mat { n, data };
        m.is_invertible(f).then_some(m)
    })
}
