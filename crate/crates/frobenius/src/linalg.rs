//! Exact dense linear algebra over prime fields `F_p` and the rationals.
//!
//! Everything downstream (algebra bases, syzygies, cohomology) reduces to
//! rank / kernel / solve over an exact field, so elimination here is fully
//! deterministic: the pivot is always the first nonzero entry in column
//! order, and free variables are always set to zero.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::Error;

/// Field tag: a prime field `F_p` with `p < 2^31`, or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Fp(u32),
    Rational,
}

impl Field {
    pub fn zero(self) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp { p, v: 0 },
            Field::Rational => Scalar::Rat(Box::new(BigRational::zero())),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp { p, v: 1 % p },
            Field::Rational => Scalar::Rat(Box::new(BigRational::one())),
        }
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Fp(p) => {
                let m = n.rem_euclid(p as i64) as u32;
                Scalar::Fp { p, v: m }
            }
            Field::Rational => Scalar::Rat(Box::new(BigRational::from_integer(BigInt::from(n)))),
        }
    }

    pub fn from_fraction(self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self {
            Field::Fp(_) => {
                let d = self.from_i64(den);
                self.from_i64(num).mul(&d.inv().expect("denominator divisible by p"))
            }
            Field::Rational => Scalar::Rat(Box::new(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
        }
    }

    /// Characteristic of the field: `p` or `0`.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Fp(p) => p as u64,
            Field::Rational => 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Fp(p) => write!(f, "F_{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

/// An exact field element. Residues live in `[0, p)`; rationals are kept in
/// lowest terms with positive denominator by `BigRational`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { p: u32, v: u32 },
    Rat(Box<BigRational>),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Fp { p, .. } => Field::Fp(*p),
            Scalar::Rat(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp { p: *p, v: ((*v as u64 + *w as u64) % *p as u64) as u32 }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(Box::new(&**a + &**b)),
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: if *v == 0 { 0 } else { p - v } },
            Scalar::Rat(r) => Scalar::Rat(Box::new(-&**r)),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp { p: *p, v: ((*v as u64 * *w as u64) % *p as u64) as u32 }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(Box::new(&**a * &**b)),
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Fp { p, v } => {
                if *v == 0 {
                    return None;
                }
                // extended Euclid on (v, p)
                let (mut r0, mut r1) = (*v as i64, *p as i64);
                let (mut s0, mut s1) = (1i64, 0i64);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                debug_assert_eq!(r0, 1, "p must be prime");
                Some(Scalar::Fp { p: *p, v: s0.rem_euclid(*p as i64) as u32 })
            }
            Scalar::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(Box::new(r.recip())))
                }
            }
        }
    }

    /// The value as a signed integer in `(-p/2, p/2]` for prime fields,
    /// or the exact rational rendered as a string otherwise.
    pub fn display_balanced(&self) -> String {
        match self {
            Scalar::Fp { p, v } => {
                if *v as u64 * 2 > *p as u64 {
                    format!("-{}", p - v)
                } else {
                    format!("{v}")
                }
            }
            Scalar::Rat(r) => format!("{r}"),
        }
    }

    /// Small-field enumeration support: the `i`-th element of `F_p`.
    pub fn fp_element(p: u32, i: u32) -> Scalar {
        Scalar::Fp { p, v: i % p }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{r}")
                }
            }
        }
    }
}

/// Dense row-major matrix over a single exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Build from row-major entries, checking that every entry carries the
    /// same field tag.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Matrix, Error> {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let field = entries
            .first()
            .map(Scalar::field)
            .ok_or_else(|| Error::Shape("empty matrix needs an explicit field".into()))?;
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::MixedFields);
        }
        Ok(Matrix { rows, cols, field, data: entries })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        if data.iter().any(|e| e.field() != field) {
            return Err(Error::MixedFields);
        }
        Ok(Matrix { rows: r, cols: c, field, data })
    }

    /// Convenience constructor from signed integers.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            field,
            data: entries.iter().map(|&n| field.from_i64(n)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let mut out = self.clone();
        for e in &mut out.data {
            *e = e.mul(s);
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if self.field != rhs.field {
            return Err(Error::MixedFields);
        }
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Shape(format!(
                "add {}x{} + {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, field: self.field, data })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        self.add(&rhs.scale(&self.field.from_i64(-1)))
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if self.field != rhs.field {
            return Err(Error::MixedFields);
        }
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "mul {}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, cur);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product on a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![self.field.zero(); self.rows];
        for r in 0..self.rows {
            let mut acc = self.field.zero();
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !a.is_zero() && !v[c].is_zero() {
                    acc = acc.add(&a.mul(&v[c]));
                }
            }
            out[r] = acc;
        }
        out
    }

    /// Standard Kronecker block layout, row-major: `(a ⊗ b)[(i·rb+k), (j·cb+l)] = a[i,j]·b[k,l]`.
    pub fn kronecker(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if self.field != rhs.field {
            return Err(Error::MixedFields);
        }
        let mut out = Matrix::zeros(self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a.mul(b));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if self.field != rhs.field {
            return Err(Error::MixedFields);
        }
        if self.rows != rhs.rows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if self.field != rhs.field {
            return Err(Error::MixedFields);
        }
        if self.cols != rhs.cols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(Matrix { rows: self.rows + rhs.rows, cols: self.cols, field: self.field, data })
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    /// Pivot choice is deterministic: first nonzero entry scanning rows top
    /// to bottom within the leftmost unfinished column.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            if next_row >= self.rows {
                break;
            }
            let Some(piv) = (next_row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.data.swap_chunks(piv, next_row, self.cols);
            let inv = self.get(next_row, col).inv().expect("nonzero pivot");
            for c in col..self.cols {
                let v = self.get(next_row, c).mul(&inv);
                self.set(next_row, c, v);
            }
            for r in 0..self.rows {
                if r == next_row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c).sub(&factor.mul(self.get(next_row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right null space `{x : self·x = 0}` as a `Subspace` of
    /// the column coordinate space, in reduced echelon form with leftmost
    /// pivots. Kernel vectors are normalized so the free coordinate carries 1.
    pub fn kernel_basis(&self) -> Subspace {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut rows = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut vec = vec![self.field.zero(); self.cols];
            vec[free] = self.field.one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                vec[pcol] = m.get(prow, free).neg();
            }
            rows.push(vec);
        }
        let n = rows.len();
        let basis = if n == 0 {
            Matrix::zeros(self.field, 0, self.cols)
        } else {
            let data = rows.into_iter().flatten().collect();
            Matrix { rows: n, cols: self.cols, field: self.field, data }
        };
        // Rows indexed by increasing free column are already in echelon
        // position; one more pass makes them fully reduced and canonical.
        Subspace::from_span(basis)
    }

    /// Solve `self · x = b` columnwise. Free variables are set to zero.
    /// Returns `None` when the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>, Error> {
        if self.field != b.field {
            return Err(Error::MixedFields);
        }
        if self.rows != b.rows {
            return Err(Error::Shape(format!(
                "solve: {} equations vs rhs with {} rows",
                self.rows, b.rows
            )));
        }
        let mut aug = self.hstack(b)?;
        let pivots = aug.rref_in_place();
        // A pivot landing in the rhs block means inconsistency.
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (prow, &pcol) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(pcol, c, aug.get(prow, self.cols + c).clone());
            }
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        match self.solve(&id).expect("shapes agree") {
            Some(x) => {
                // solve() gives a right inverse; for square full-rank it is
                // two-sided, but a rank-deficient square system can still be
                // consistent, so check.
                if self.mul(&x).expect("shapes agree") == id {
                    Some(x)
                } else {
                    None
                }
            }
            None => None,
        }
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl SwapChunks for Vec<Scalar> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (left, right) = self.split_at_mut(hi * width);
        left[lo * width..(lo + 1) * width].swap_with_slice(&mut right[..width]);
    }
}

/// A subspace of `k^n`, stored as a reduced-echelon row basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient) }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(field, ambient) }
    }

    /// Canonical subspace spanned by the rows of `m`.
    pub fn from_span(mut m: Matrix) -> Subspace {
        let ambient = m.cols();
        let rank = m.rref_in_place().len();
        let field = m.field();
        let mut basis = Matrix::zeros(field, rank, ambient);
        for r in 0..rank {
            for c in 0..ambient {
                basis.set(r, c, m.get(r, c).clone());
            }
        }
        Subspace { ambient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_row(&self, i: usize) -> &[Scalar] {
        self.basis.row(i)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Residue of `v` after reducing by the echelon basis.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for r in 0..self.basis.rows() {
            let pivot = (0..self.ambient)
                .find(|&c| !self.basis.get(r, c).is_zero())
                .expect("echelon rows are nonzero");
            if !w[pivot].is_zero() {
                let f = w[pivot].clone();
                for c in pivot..self.ambient {
                    w[c] = w[c].sub(&f.mul(self.basis.get(r, c)));
                }
            }
        }
        w
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut w = v.to_vec();
        let mut coords = Vec::with_capacity(self.dim());
        for r in 0..self.basis.rows() {
            let pivot = (0..self.ambient)
                .find(|&c| !self.basis.get(r, c).is_zero())
                .expect("echelon rows are nonzero");
            let f = w[pivot].clone();
            coords.push(f.clone());
            if !f.is_zero() {
                for c in pivot..self.ambient {
                    w[c] = w[c].sub(&f.mul(self.basis.get(r, c)));
                }
            }
        }
        if w.iter().all(Scalar::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let stacked = self.basis.vstack(&other.basis).expect("same ambient");
        Subspace::from_span(stacked)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|r| other.contains(self.basis_row(r)))
    }
}

/// Incrementally built reduced-echelon row space. Inserting rows one at a
/// time keeps only `rank` rows in memory, which matters when a spanning set
/// is much larger than the space it spans (e.g. the two-sided ideal closure
/// of quiver relations). The result is the same canonical basis
/// [`Subspace::from_span`] produces.
#[derive(Debug, Clone)]
pub struct EchelonBuilder {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(field: Field, ambient: usize) -> EchelonBuilder {
        EchelonBuilder { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current rows; the residue is zero iff `v` is
    /// already in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for c in p..self.ambient {
                    if !row[c].is_zero() {
                        w[c] = w[c].sub(&f.mul(&row[c]));
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Insert a vector; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut w = self.reduce(&v);
        let Some(p) = w.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero entry");
        for e in &mut w[p..] {
            if !e.is_zero() {
                *e = e.mul(&inv);
            }
        }
        // Keep existing rows fully reduced against the new pivot.
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for c in p..self.ambient {
                    if !w[c].is_zero() {
                        row[c] = row[c].sub(&f.mul(&w[c]));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn into_subspace(self) -> Subspace {
        let n = self.rows.len();
        let basis = if n == 0 {
            Matrix::zeros(self.field, 0, self.ambient)
        } else {
            let data = self.rows.into_iter().flatten().collect();
            Matrix { rows: n, cols: self.ambient, field: self.field, data }
        };
        Subspace { ambient: basis.cols(), basis }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> Field {
        Field::Fp(3)
    }

    #[test]
    fn rank_identity_f3() {
        assert_eq!(Matrix::identity(f3(), 2).rank(), 2);
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(Matrix::zeros(Field::Rational, 3, 4).rank(), 0);
    }

    #[test]
    fn rank_proportional_rows_over_q() {
        let m = Matrix::from_i64(Field::Rational, 2, 2, &[1, 2, 2, 4]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = Matrix::identity(f3(), 4).kernel_basis();
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn kernel_of_zero_is_full() {
        let k = Matrix::zeros(f3(), 5, 5).kernel_basis();
        assert_eq!(k.dim(), 5);
    }

    #[test]
    fn kernel_forced_f2() {
        let m = Matrix::from_i64(Field::Fp(2), 1, 2, &[1, 1]);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis_row(0), &[Field::Fp(2).one(), Field::Fp(2).one()]);
    }

    #[test]
    fn solve_identity() {
        let a = Matrix::identity(f3(), 3);
        let b = Matrix::from_i64(f3(), 3, 1, &[1, 2, 0]);
        assert_eq!(a.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn solve_inconsistent() {
        let a = Matrix::from_i64(f3(), 1, 1, &[0]);
        let b = Matrix::from_i64(f3(), 1, 1, &[1]);
        assert!(a.solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_scalar_mod_3() {
        let a = Matrix::from_i64(f3(), 1, 1, &[2]);
        let b = Matrix::from_i64(f3(), 1, 1, &[1]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x, Matrix::from_i64(f3(), 1, 1, &[2]));
    }

    #[test]
    fn kronecker_identities() {
        let i2 = Matrix::identity(f3(), 2);
        let i3 = Matrix::identity(f3(), 3);
        assert_eq!(i2.kronecker(&i3).unwrap(), Matrix::identity(f3(), 6));
        let z = Matrix::zeros(f3(), 2, 2);
        assert!(Matrix::from_i64(f3(), 2, 2, &[1, 2, 0, 1]).kronecker(&z).unwrap().is_zero());
    }

    #[test]
    fn mixed_field_rejected() {
        let a = Matrix::identity(f3(), 2);
        let b = Matrix::identity(Field::Fp(5), 2);
        assert!(matches!(a.mul(&b), Err(Error::MixedFields)));
        assert!(matches!(
            Matrix::from_entries(1, 2, vec![f3().one(), Field::Rational.one()]),
            Err(Error::MixedFields)
        ));
    }

    fn arb_matrix_f5(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(0i64..5, rows * cols)
            .prop_map(move |v| Matrix::from_i64(Field::Fp(5), rows, cols, &v))
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix_f5(3, 4)) {
            prop_assert_eq!(m.rank() + m.kernel_basis().dim(), m.cols());
        }

        #[test]
        fn solve_is_exact(a in arb_matrix_f5(3, 3), b in arb_matrix_f5(3, 2)) {
            if let Some(x) = a.solve(&b).unwrap() {
                prop_assert_eq!(a.mul(&x).unwrap(), b);
            }
        }

        #[test]
        fn kronecker_rank_multiplicative(a in arb_matrix_f5(3, 3), b in arb_matrix_f5(3, 3)) {
            let k = a.kronecker(&b).unwrap();
            prop_assert_eq!(k.rank(), a.rank() * b.rank());
        }

        #[test]
        fn elimination_deterministic(m in arb_matrix_f5(4, 5)) {
            let (mut a, mut b) = (m.clone(), m);
            a.rref_in_place();
            b.rref_in_place();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn echelon_builder_matches_from_span(m in arb_matrix_f5(5, 4)) {
            let mut b = EchelonBuilder::new(Field::Fp(5), 4);
            for r in 0..m.rows() {
                b.insert(m.row(r).to_vec());
            }
            prop_assert_eq!(b.into_subspace(), Subspace::from_span(m));
        }

        #[test]
        fn kernel_vectors_annihilate(m in arb_matrix_f5(3, 5)) {
            let k = m.kernel_basis();
            for r in 0..k.dim() {
                let out = m.apply(k.basis_row(r));
                prop_assert!(out.iter().all(Scalar::is_zero));
            }
        }
    }
}
