//! Square matrices over GF(q), the classical groups built from them, and their
//! permutation actions on points.
//!
//! Vectors are rows and matrices act on the right: `v -> v M`. A matrix `g`
//! preserves a form with Gram matrix `B` when `g B g^T = B` (bilinear) or
//! `g B conj(g)^T = B` (Hermitian, conjugation `x -> x^q` over GF(q^2)).

mod action;
mod classical;
pub(crate) mod special;

use std::fmt;

use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};

pub use action::{LinearAction, PointSpace};
pub use classical::{
    gl_generators, gl_order, gu_generators, gu_order, hermitian_gram, sl_generators, sl_order,
    sp4_generators, sp4_order, su_generators, su_order, symplectic_gram, FormKind,
};
pub use special::{
    frobenius_twist_perm, jordan_partition, semisimple_type, torus_order3_rep, unipotent_rep,
    SemisimpleType, TorusFamily, TorusLabel,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("matrices are over different fields")]
    FieldMismatch,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("matrix does not preserve the {0} form")]
    FormViolation(&'static str),
    #[error("matrix does not act on the point set")]
    NotOnPoints,
    #[error("{0}")]
    NoOrderThree(String),
    #[error("partition {partition:?} does not fit dimension {n} in characteristic 3")]
    BadPartition { partition: Vec<usize>, n: usize },
}

/// An `n x n` matrix; entries are stored as packed field codes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    n: usize,
    e: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<GF({})>", self.field.order())?;
        f.debug_list()
            .entries(self.e.chunks(self.n.max(1)))
            .finish()
    }
}

impl Matrix {
    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.e[i * n + i] = 1;
        }
        m
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        Self {
            field: field.clone(),
            n,
            e: vec![0; n * n],
        }
    }

    /// Row-major entries.
    pub fn from_entries(
        field: &FieldSpec,
        n: usize,
        entries: &[FieldElement],
    ) -> Result<Self, MatrixError> {
        if entries.len() != n * n {
            return Err(MatrixError::Dimension(n * n, entries.len()));
        }
        let mut e = Vec::with_capacity(n * n);
        for &x in entries {
            if x.field_order() != field.order() {
                return Err(MatrixError::FieldMismatch);
            }
            e.push(x.code());
        }
        Ok(Self {
            field: field.clone(),
            n,
            e,
        })
    }

    pub(crate) fn from_codes(field: &FieldSpec, n: usize, e: Vec<u32>) -> Self {
        debug_assert_eq!(e.len(), n * n);
        Self {
            field: field.clone(),
            n,
            e,
        }
    }

    pub fn diagonal(field: &FieldSpec, diag: &[u32]) -> Self {
        let n = diag.len();
        let mut m = Self::zero(field, n);
        for (i, &d) in diag.iter().enumerate() {
            m.e[i * n + i] = d;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.field.from_code(self.e[i * self.n + j]).unwrap()
    }

    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> u32 {
        self.e[i * self.n + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, c: u32) {
        self.e[i * self.n + j] = c;
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::Dimension(self.n, other.n));
        }
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.n;
        let f = &self.field;
        let mut e = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = f.add_c(acc, f.mul_c(self.at(i, k), other.at(k, j)));
                }
                e[i * n + j] = acc;
            }
        }
        Self::from_codes(f, n, e)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::identity(&self.field, self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = self.clone();
        for i in 0..n {
            for j in 0..n {
                t.e[j * n + i] = self.at(i, j);
            }
        }
        t
    }

    /// Entrywise `x -> x^(p^i)`.
    pub fn frobenius(&self, i: u32) -> Self {
        let f = &self.field;
        Self::from_codes(f, self.n, self.e.iter().map(|&c| f.frob_c(c, i)).collect())
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        self.scale_c(c.code())
    }

    pub(crate) fn scale_c(&self, c: u32) -> Self {
        let f = &self.field;
        Self::from_codes(f, self.n, self.e.iter().map(|&x| f.mul_c(x, c)).collect())
    }

    pub(crate) fn sub_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            let c = m.at(i, i);
            m.set(i, i, self.field.sub_c(c, 1));
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.field, self.n)
    }

    /// Whether the matrix is `c I` for some `c`.
    pub fn is_scalar(&self) -> bool {
        let c = self.at(0, 0);
        (0..self.n).all(|i| (0..self.n).all(|j| self.at(i, j) == if i == j { c } else { 0 }))
    }

    /// The scalar `c` when the matrix is `c I`.
    pub(crate) fn scalar_value(&self) -> Option<u32> {
        self.is_scalar().then(|| self.at(0, 0))
    }

    /// Row reduction; returns (rank, determinant).
    fn eliminate(&self) -> (usize, u32) {
        let f = &self.field;
        let n = self.n;
        let mut a = self.e.clone();
        let mut rank = 0;
        let mut det = 1u32;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    a.swap(piv * n + j, rank * n + j);
                }
                det = f.neg_c(det);
            }
            let pv = a[rank * n + col];
            det = f.mul_c(det, pv);
            let inv = f.inv_c(pv);
            for r in 0..n {
                if r != rank && a[r * n + col] != 0 {
                    let factor = f.mul_c(a[r * n + col], inv);
                    for j in 0..n {
                        let v = f.mul_c(factor, a[rank * n + j]);
                        a[r * n + j] = f.sub_c(a[r * n + j], v);
                    }
                }
            }
            rank += 1;
        }
        (rank, if rank < n { 0 } else { det })
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn det(&self) -> FieldElement {
        self.field.from_code(self.eliminate().1).unwrap()
    }

    pub(crate) fn det_c(&self) -> u32 {
        self.eliminate().1
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Option<Self> {
        let f = &self.field;
        let n = self.n;
        let mut a = self.e.clone();
        let mut b = Self::identity(f, n).e;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0)?;
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
                b.swap(piv * n + j, col * n + j);
            }
            let inv = f.inv_c(a[col * n + col]);
            for j in 0..n {
                a[col * n + j] = f.mul_c(a[col * n + j], inv);
                b[col * n + j] = f.mul_c(b[col * n + j], inv);
            }
            for r in 0..n {
                let factor = a[r * n + col];
                if r != col && factor != 0 {
                    for j in 0..n {
                        a[r * n + j] = f.sub_c(a[r * n + j], f.mul_c(factor, a[col * n + j]));
                        b[r * n + j] = f.sub_c(b[r * n + j], f.mul_c(factor, b[col * n + j]));
                    }
                }
            }
        }
        Some(Self::from_codes(f, n, b))
    }

    /// `v M` for a row vector of codes.
    pub(crate) fn apply_row(&self, v: &[u32], out: &mut [u32]) {
        let f = &self.field;
        for (j, o) in out.iter_mut().enumerate() {
            let mut acc = 0;
            for (k, &vk) in v.iter().enumerate() {
                if vk != 0 {
                    acc = f.add_c(acc, f.mul_c(vk, self.at(k, j)));
                }
            }
            *o = acc;
        }
    }

    /// Characteristic polynomial `det(tI - M)`, low-degree-first, monic.
    pub fn charpoly(&self) -> Vec<u32> {
        let f = &self.field;
        let n = self.n;
        // Entries of tI - M as polynomials, then Laplace expansion (n <= 4 in practice).
        let entries: Vec<Vec<u32>> = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let c = f.neg_c(self.e[idx]);
                if i == j {
                    vec![c, 1]
                } else {
                    vec![c]
                }
            })
            .collect();
        let cols: Vec<usize> = (0..n).collect();
        poly_trim(laplace(f, &entries, n, 0, &cols))
    }

    /// Multiplicative order, by repeated multiplication up to `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul_unchecked(self);
        }
        None
    }
}

fn laplace(f: &FieldSpec, m: &[Vec<u32>], n: usize, row: usize, cols: &[usize]) -> Vec<u32> {
    if cols.len() == 1 {
        return m[row * n + cols[0]].clone();
    }
    let mut acc = vec![0u32];
    for (k, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = laplace(f, m, n, row + 1, &rest);
        let mut term = poly_mul(f, &m[row * n + c], &minor);
        if k % 2 == 1 {
            term = term.iter().map(|&x| f.neg_c(x)).collect();
        }
        acc = poly_add(f, &acc, &term);
    }
    acc
}

pub(crate) fn poly_mul(f: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add_c(out[i + j], f.mul_c(x, y));
        }
    }
    out
}

pub(crate) fn poly_add(f: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = f.add_c(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0));
    }
    out
}

pub(crate) fn poly_trim(mut p: Vec<u32>) -> Vec<u32> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

pub(crate) fn poly_eval(f: &FieldSpec, p: &[u32], x: u32) -> u32 {
    p.iter()
        .rev()
        .fold(0, |acc, &c| f.add_c(f.mul_c(acc, x), c))
}

/// Divides by `t - r`, assuming `r` is a root.
pub(crate) fn poly_div_linear(f: &FieldSpec, p: &[u32], r: u32) -> Vec<u32> {
    let deg = p.len() - 1;
    let mut q = vec![0u32; deg];
    let mut carry = 0;
    for i in (1..=deg).rev() {
        carry = f.add_c(p[i], f.mul_c(carry, r));
        q[i - 1] = carry;
    }
    q
}
