//! Generating sets for SL, GL, SU, GU and Sp4, with the classical order formulas.
//!
//! Unitary groups live over GF(q^2) and preserve the antidiagonal Hermitian
//! form; Sp4 preserves the alternating form with `B(e0, e3) = B(e1, e2) = 1`.

use super::{Matrix, MatrixError};
use crate::field::{field_of_order, prime_power, FieldSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    Linear,
    Unitary,
    Symplectic,
}

fn field(q: u64) -> Result<FieldSpec, MatrixError> {
    Ok(field_of_order(q)?)
}

fn check_n(n: usize, allowed: &[usize], what: &str) -> Result<(), MatrixError> {
    if allowed.contains(&n) {
        Ok(())
    } else {
        Err(MatrixError::Unsupported(format!("{what} in dimension {n}")))
    }
}

/// `I + c E_ij` (plus any further entries), over `f`.
fn elementary(f: &FieldSpec, n: usize, entries: &[(usize, usize, u32)]) -> Matrix {
    let mut m = Matrix::identity(f, n);
    for &(i, j, c) in entries {
        m.set(i, j, c);
    }
    m
}

/// Codes of an F_p-basis of GF(p^k): the powers x^0, ..., x^(k-1).
fn prime_basis(f: &FieldSpec) -> Vec<u32> {
    let p = f.characteristic();
    (0..f.degree()).map(|j| p.pow(j)).collect()
}

pub fn sl_generators(n: usize, q: u64) -> Result<Vec<Matrix>, MatrixError> {
    check_n(n, &[2, 3, 4], "SL")?;
    let f = field(q)?;
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        for &a in &prime_basis(&f) {
            gens.push(elementary(&f, n, &[(i, i + 1, a)]));
            gens.push(elementary(&f, n, &[(i + 1, i, a)]));
        }
    }
    Ok(gens)
}

pub fn gl_generators(n: usize, q: u64) -> Result<Vec<Matrix>, MatrixError> {
    let mut gens = sl_generators(n, q)?;
    let f = gens[0].field().clone();
    let mut d = vec![1u32; n];
    d[0] = f.primitive().code();
    gens.push(Matrix::diagonal(&f, &d));
    Ok(gens)
}

/// Antidiagonal identity over `f`.
pub fn hermitian_gram(f: &FieldSpec, n: usize) -> Matrix {
    let mut m = Matrix::zero(f, n);
    for i in 0..n {
        m.set(i, n - 1 - i, 1);
    }
    m
}

/// Gram matrix of the alternating form on GF(q)^4.
pub fn symplectic_gram(f: &FieldSpec) -> Matrix {
    let mut m = Matrix::zero(f, 4);
    let minus = f.neg_c(1);
    m.set(0, 3, 1);
    m.set(1, 2, 1);
    m.set(2, 1, minus);
    m.set(3, 0, minus);
    m
}

/// `x -> x^q` on GF(q^2), where `f` is GF(q^2).
pub(crate) fn conj_c(f: &FieldSpec, a: u32) -> u32 {
    f.frob_c(a, f.degree() / 2)
}

pub(crate) fn preserves_hermitian(m: &Matrix) -> bool {
    let f = m.field();
    let j = hermitian_gram(f, m.n());
    let mbar_t = m.frobenius(f.degree() / 2).transpose();
    m.mul_unchecked(&j).mul_unchecked(&mbar_t) == j
}

pub(crate) fn preserves_symplectic(m: &Matrix) -> bool {
    let omega = symplectic_gram(m.field());
    m.mul_unchecked(&omega).mul_unchecked(&m.transpose()) == omega
}

/// An F_p-basis of GF(q) embedded in GF(q^2).
fn subfield_basis(f2: &FieldSpec) -> Vec<u32> {
    let k = f2.degree() / 2;
    let q = u64::from(f2.characteristic()).pow(k);
    let w = f2.exp_c(q + 1);
    (0..k).map(|j| f2.pow_c(w, u64::from(j))).collect()
}

/// An F_p-basis of `{b : b + b^q = 0}`, which is `b0 * GF(q)` for any nonzero member b0.
fn trace_zero_basis(f2: &FieldSpec) -> Vec<u32> {
    let b0 = (1..f2.order())
        .find(|&b| f2.add_c(b, conj_c(f2, b)) == 0)
        .expect("trace-zero elements exist");
    subfield_basis(f2)
        .into_iter()
        .map(|w| f2.mul_c(b0, w))
        .collect()
}

/// Least code `b` with `b + b^q = t`.
fn trace_preimage(f2: &FieldSpec, t: u32) -> u32 {
    (0..f2.order())
        .find(|&b| f2.add_c(b, conj_c(f2, b)) == t)
        .expect("the trace map is onto the subfield")
}

fn antidiagonal_conjugate(m: &Matrix) -> Matrix {
    let j = hermitian_gram(m.field(), m.n());
    j.mul_unchecked(m).mul_unchecked(&j)
}

pub fn su_generators(n: usize, q: u64) -> Result<Vec<Matrix>, MatrixError> {
    check_n(n, &[3, 4], "SU")?;
    prime_power(q).ok_or(crate::field::FieldError::NotPrimePower(q))?;
    let f = field(q * q)?;
    let mut upper = Vec::new();
    let tz = trace_zero_basis(&f);
    let basis2 = prime_basis(&f);
    if n == 3 {
        for &a in &basis2 {
            let na = f.mul_c(a, conj_c(&f, a));
            let b = trace_preimage(&f, f.neg_c(na));
            upper.push(elementary(
                &f,
                3,
                &[(0, 1, a), (0, 2, b), (1, 2, f.neg_c(conj_c(&f, a)))],
            ));
        }
        for &b in &tz {
            upper.push(elementary(&f, 3, &[(0, 2, b)]));
        }
    } else {
        for &a in &basis2 {
            upper.push(elementary(
                &f,
                4,
                &[(0, 1, a), (2, 3, f.neg_c(conj_c(&f, a)))],
            ));
        }
        for &b in &tz {
            upper.push(elementary(&f, 4, &[(1, 2, b)]));
            upper.push(elementary(&f, 4, &[(0, 3, b)]));
        }
    }
    let mut gens = upper.clone();
    gens.extend(upper.iter().map(antidiagonal_conjugate));
    let lambda = f.primitive().code();
    let qm1 = f.pow_c(lambda, q - 1);
    let mq = f.inv_c(f.pow_c(lambda, q));
    if n == 3 {
        gens.push(Matrix::diagonal(&f, &[lambda, qm1, mq]));
    } else {
        gens.push(Matrix::diagonal(
            &f,
            &[lambda, f.inv_c(lambda), f.pow_c(lambda, q), mq],
        ));
    }
    for g in &gens {
        if !preserves_hermitian(g) || g.det_c() != 1 {
            return Err(MatrixError::FormViolation("Hermitian"));
        }
    }
    Ok(gens)
}

pub fn gu_generators(n: usize, q: u64) -> Result<Vec<Matrix>, MatrixError> {
    let mut gens = su_generators(n, q)?;
    let f = gens[0].field().clone();
    let lambda = f.primitive().code();
    let mut d = vec![1u32; n];
    d[0] = lambda;
    d[n - 1] = f.inv_c(f.pow_c(lambda, q));
    let dil = Matrix::diagonal(&f, &d);
    if !preserves_hermitian(&dil) {
        return Err(MatrixError::FormViolation("Hermitian"));
    }
    gens.push(dil);
    Ok(gens)
}

pub fn sp4_generators(q: u64) -> Result<Vec<Matrix>, MatrixError> {
    let f = field(q)?;
    let mut gens = Vec::new();
    for &a in &prime_basis(&f) {
        let na = f.neg_c(a);
        gens.push(elementary(&f, 4, &[(0, 1, a), (2, 3, na)]));
        gens.push(elementary(&f, 4, &[(1, 0, a), (3, 2, na)]));
        gens.push(elementary(&f, 4, &[(1, 2, a)]));
        gens.push(elementary(&f, 4, &[(2, 1, a)]));
        gens.push(elementary(&f, 4, &[(0, 3, a)]));
        gens.push(elementary(&f, 4, &[(3, 0, a)]));
    }
    for g in &gens {
        if !preserves_symplectic(g) {
            return Err(MatrixError::FormViolation("alternating"));
        }
    }
    Ok(gens)
}

pub fn sl_order(n: u32, q: u64) -> u128 {
    let q = u128::from(q);
    let mut o = q.pow(n * (n - 1) / 2);
    for i in 2..=n {
        o *= q.pow(i) - 1;
    }
    o
}

pub fn gl_order(n: u32, q: u64) -> u128 {
    sl_order(n, q) * (u128::from(q) - 1)
}

pub fn su_order(n: u32, q: u64) -> u128 {
    let q = u128::from(q);
    let mut o = q.pow(n * (n - 1) / 2);
    for i in 2..=n {
        o *= if i % 2 == 0 {
            q.pow(i) - 1
        } else {
            q.pow(i) + 1
        };
    }
    o
}

pub fn gu_order(n: u32, q: u64) -> u128 {
    su_order(n, q) * (u128::from(q) + 1)
}

pub fn sp4_order(q: u64) -> u128 {
    let q = u128::from(q);
    q.pow(4) * (q * q - 1) * (q.pow(4) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas() {
        assert_eq!(sl_order(2, 4), 60);
        assert_eq!(sl_order(3, 2), 168);
        assert_eq!(su_order(3, 3), 6048);
        assert_eq!(su_order(4, 3) / 4, 3_265_920);
        assert_eq!(sp4_order(3), 51840);
        assert_eq!(sp4_order(2), 720);
        assert_eq!(gu_order(3, 8) / 9, 16_547_328);
    }

    #[test]
    fn generators_preserve_forms() {
        for q in [2, 3, 4, 5, 8] {
            for g in su_generators(3, q).unwrap() {
                assert!(preserves_hermitian(&g));
                assert_eq!(g.det().code(), 1);
            }
            for g in gu_generators(3, q).unwrap() {
                assert!(preserves_hermitian(&g));
            }
            for g in sp4_generators(q).unwrap() {
                assert!(preserves_symplectic(&g));
            }
        }
        for g in su_generators(4, 3).unwrap() {
            assert!(preserves_hermitian(&g));
        }
    }

    #[test]
    fn unsupported_dimensions() {
        assert!(sl_generators(5, 2).is_err());
        assert!(su_generators(2, 3).is_err());
    }
}
