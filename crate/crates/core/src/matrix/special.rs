//! Distinguished elements: Jordan-form unipotents, order-3 torus elements, the
//! field twist of PGammaL2(8), and the invariants used to label classes.

use super::classical::conj_c;
use super::{poly_div_linear, poly_eval, LinearAction, Matrix, MatrixError, PointSpace};
use crate::field::{field_of_order, FieldSpec};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TorusFamily {
    PSL2,
    PSL3,
    PSU3,
    PGL3,
    PGU3,
}

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
pub enum TorusLabel {
    Split,
    PartiallySplit,
    Irreducible,
}

/// Eigenvalue pattern of a semisimple 3x3 matrix, invariant under scalars.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemisimpleType {
    Torus(TorusLabel),
    /// A repeated eigenvalue.
    NonRegular,
}

/// Block-diagonal Jordan matrix over GF(q), characteristic 3.
pub fn unipotent_rep(partition: &[usize], n: usize, q: u64) -> Result<Matrix, MatrixError> {
    let f = field_of_order(q)?;
    let bad = || MatrixError::BadPartition {
        partition: partition.to_vec(),
        n,
    };
    if f.characteristic() != 3
        || partition.iter().sum::<usize>() != n
        || partition.iter().any(|&s| s == 0 || s > 3)
    {
        return Err(bad());
    }
    let mut m = Matrix::identity(&f, n);
    let mut at = 0;
    for &s in partition {
        for i in at..at + s - 1 {
            m.set(i, i + 1, 1);
        }
        at += s;
    }
    Ok(m)
}

/// Jordan block sizes (descending) of a unipotent matrix; `None` if `m - I` is not nilpotent.
pub fn jordan_partition(m: &Matrix) -> Option<Vec<usize>> {
    let n = m.n();
    let nil = m.sub_identity();
    let mut ranks = vec![n];
    let mut power = nil.clone();
    loop {
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
        if ranks.len() > n + 1 {
            return None;
        }
        power = power.mul_unchecked(&nil);
    }
    // ranks[j-1] - ranks[j] blocks have size >= j.
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for j in (0..at_least.len()).rev() {
        let exactly = at_least[j] - at_least.get(j + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat(j + 1).take(exactly));
    }
    Some(parts)
}

/// Rescales a matrix whose cube is scalar so that its cube is the identity.
/// In characteristic 3 the result is unipotent.
pub(crate) fn normalize_cube(m: &Matrix) -> Option<Matrix> {
    let f = m.field();
    let c = m.pow(3).scalar_value()?;
    // Cubing is a bijection in characteristic 3; its inverse is x -> x^(3^(k-1)).
    if f.characteristic() != 3 {
        return None;
    }
    let s = f.frob_c(f.inv_c(c), f.degree() - 1);
    Some(m.scale_c(s))
}

/// Classifies a semisimple 3x3 matrix by its characteristic polynomial over
/// its field. `unitary_q` is `Some(q)` for matrices over GF(q^2) in a unitary
/// group, where split means every eigenvalue ratio has norm 1.
pub fn semisimple_type(m: &Matrix, unitary_q: Option<u64>) -> Option<SemisimpleType> {
    let f = m.field();
    let mut cp = m.charpoly();
    let mut roots = Vec::new();
    let mut r = 0;
    while r < f.order() && cp.len() > 1 {
        if poly_eval(f, &cp, r) == 0 {
            roots.push(r);
            cp = poly_div_linear(f, &cp, r);
        } else {
            r += 1;
        }
    }
    let mut distinct = roots.clone();
    distinct.dedup();
    if distinct.len() < roots.len() {
        return Some(SemisimpleType::NonRegular);
    }
    let label = match roots.len() {
        3 => match unitary_q {
            None => TorusLabel::Split,
            Some(q) => {
                let norm_one = |a: u32, b: u32| {
                    let ratio = f.mul_c(a, f.inv_c(b));
                    f.pow_c(ratio, q + 1) == 1
                };
                if norm_one(roots[0], roots[1]) && norm_one(roots[0], roots[2]) {
                    TorusLabel::Split
                } else {
                    TorusLabel::PartiallySplit
                }
            }
        },
        1 if unitary_q.is_none() => TorusLabel::PartiallySplit,
        0 => TorusLabel::Irreducible,
        _ => return None,
    };
    Some(SemisimpleType::Torus(label))
}

fn no_order3(family: TorusFamily, label: TorusLabel, q: u64) -> MatrixError {
    MatrixError::NoOrderThree(format!(
        "the {label:?} torus of {family:?}({q}) contains no element of order 3"
    ))
}

/// Hermitian product for the antidiagonal form.
fn herm(f: &FieldSpec, u: &[u32], v: &[u32]) -> u32 {
    let n = u.len();
    (0..n).fold(0, |acc, i| {
        f.add_c(acc, f.mul_c(u[i], conj_c(f, v[n - 1 - i])))
    })
}

/// Rows form an orthonormal basis for the antidiagonal Hermitian form.
fn orthonormal_basis(f: &FieldSpec, n: usize, q: u64) -> Matrix {
    let fq = u64::from(f.order());
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut v = vec![0u32; n];
    for code in 1..fq.pow(n as u32) {
        if rows.len() == n {
            break;
        }
        let mut c = code;
        for x in v.iter_mut() {
            *x = (c % fq) as u32;
            c /= fq;
        }
        let h = herm(f, &v, &v);
        if h == 0 || rows.iter().any(|r| herm(f, &v, r) != 0) {
            continue;
        }
        let target = f.inv_c(h);
        let s = (1..f.order())
            .find(|&s| f.pow_c(s, q + 1) == target)
            .expect("the norm map is onto");
        rows.push(v.iter().map(|&x| f.mul_c(x, s)).collect());
    }
    let mut b = Matrix::zero(f, n);
    for (i, r) in rows.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            b.set(i, j, x);
        }
    }
    b
}

/// `B^-1 D B`: the matrix acting as `d` in the orthonormal basis `B`.
fn in_orthonormal_basis(d: &Matrix, q: u64) -> Matrix {
    let b = orthonormal_basis(d.field(), d.n(), q);
    b.inverse().unwrap().mul_unchecked(d).mul_unchecked(&b)
}

/// An explicit matrix whose projective image has order 3 and lies in the
/// requested torus type.
pub fn torus_order3_rep(
    family: TorusFamily,
    label: TorusLabel,
    q: u64,
) -> Result<Matrix, MatrixError> {
    use TorusFamily::*;
    use TorusLabel::*;
    let r = q % 3;
    if r == 0 {
        return Err(MatrixError::NoOrderThree(format!(
            "order-3 elements of {family:?}({q}) are unipotent, not toral"
        )));
    }
    let inner = match family {
        PGL3 => PSL3,
        PGU3 => PSU3,
        f => f,
    };
    match (family, label) {
        (PGL3, Irreducible) | (PGU3, Irreducible) => {}
        (_, Irreducible) if inner != PSL2 => return Err(no_order3(family, label, q)),
        _ => {}
    }
    match (family, inner, label) {
        (PGL3, _, Irreducible) => {
            if r != 1 {
                return Err(no_order3(family, label, q));
            }
            // Companion matrix of t^3 - g, g primitive: cubes to g I, three distinct eigenvalues.
            let f = field_of_order(q)?;
            let g = f.primitive().code();
            Ok(Matrix::from_codes(&f, 3, vec![0, 1, 0, 0, 0, 1, g, 0, 0]))
        }
        (PGU3, _, Irreducible) => {
            if r != 2 {
                return Err(no_order3(family, label, q));
            }
            // Cyclic shift of an orthonormal basis, twisted by a norm-1 non-cube.
            let f = field_of_order(q * q)?;
            let c = f.pow_c(f.primitive().code(), q - 1);
            let p = Matrix::from_codes(&f, 3, vec![0, 1, 0, 0, 0, 1, c, 0, 0]);
            Ok(in_orthonormal_basis(&p, q))
        }
        (_, PSL2, Split) => {
            if r != 1 {
                return Err(no_order3(family, label, q));
            }
            let f = field_of_order(q)?;
            let w = f.elements_of_order(3)[0];
            Ok(Matrix::diagonal(&f, &[w, f.inv_c(w)]))
        }
        (_, PSL2, Irreducible) => {
            if r != 2 {
                return Err(no_order3(family, label, q));
            }
            let f = field_of_order(q)?;
            let m1 = f.neg_c(1);
            Ok(Matrix::from_codes(&f, 2, vec![0, 1, m1, m1]))
        }
        (_, PSL3, Split) => {
            if r != 1 {
                return Err(no_order3(family, label, q));
            }
            let f = field_of_order(q)?;
            let w = f.elements_of_order(3)[0];
            Ok(Matrix::diagonal(&f, &[1, w, f.mul_c(w, w)]))
        }
        (_, PSL3, PartiallySplit) => {
            if r != 2 {
                return Err(no_order3(family, label, q));
            }
            let f = field_of_order(q)?;
            let m1 = f.neg_c(1);
            Ok(Matrix::from_codes(&f, 3, vec![1, 0, 0, 0, 0, 1, 0, m1, m1]))
        }
        (_, PSU3, Split) => {
            if r != 2 {
                return Err(no_order3(family, label, q));
            }
            let f = field_of_order(q * q)?;
            let w = f.elements_of_order(3)[0];
            let d = Matrix::diagonal(&f, &[1, w, f.mul_c(w, w)]);
            Ok(in_orthonormal_basis(&d, q))
        }
        (_, PSU3, PartiallySplit) => {
            if r != 1 {
                return Err(no_order3(family, label, q));
            }
            let f = field_of_order(q * q)?;
            let w = f.elements_of_order(3)[0];
            Ok(Matrix::diagonal(&f, &[w, 1, f.mul_c(w, w)]))
        }
        _ => Err(no_order3(family, label, q)),
    }
}

/// The permutation of the points of the projective line over GF(8) induced
/// by `x -> x^2`, in the point order used for PSL(2,8).
pub fn frobenius_twist_perm(q: u64) -> Result<Permutation, MatrixError> {
    if q != 8 {
        return Err(MatrixError::Unsupported(format!("field twist for q = {q}")));
    }
    let f = field_of_order(8)?;
    let action = LinearAction::new(super::FormKind::Linear, PointSpace::Projective, 2, 8, &f);
    Ok(action.frobenius_perm(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::classical::{preserves_hermitian, preserves_symplectic};
    use crate::matrix::{sp4_generators, FormKind};

    #[test]
    fn unipotent_reps() {
        let j2 = unipotent_rep(&[2], 2, 9).unwrap();
        assert_eq!(j2.order(10), Some(3));
        let j31 = unipotent_rep(&[3, 1], 4, 3).unwrap();
        assert_eq!(j31.order(10), Some(3));
        assert_eq!(jordan_partition(&j31), Some(vec![3, 1]));
        assert!(unipotent_rep(&[1, 1, 1], 3, 3).unwrap().is_identity());
        assert!(unipotent_rep(&[3], 4, 3).is_err());
        assert!(unipotent_rep(&[2], 2, 4).is_err());
        assert_eq!(
            jordan_partition(&unipotent_rep(&[2, 2], 4, 9).unwrap()),
            Some(vec![2, 2])
        );
    }

    #[test]
    fn j2_plus_j2_is_symplectic() {
        // I + E01 - E23 is a generator of Sp4(q) with Jordan type [2, 2].
        let g = &sp4_generators(3).unwrap()[0];
        assert!(preserves_symplectic(g));
        assert_eq!(jordan_partition(g), Some(vec![2, 2]));
    }

    #[test]
    fn torus_reps_have_projective_order_three() {
        use TorusFamily::*;
        use TorusLabel::*;
        let cases = [
            (PSL3, Split, 4),
            (PSL3, PartiallySplit, 5),
            (PSL3, PartiallySplit, 2),
            (PGL3, Irreducible, 4),
            (PGL3, Irreducible, 7),
            (PSU3, Split, 8),
            (PSU3, Split, 5),
            (PSU3, PartiallySplit, 4),
            (PGU3, Irreducible, 8),
            (PGU3, Irreducible, 2),
            (PSL2, Split, 7),
            (PSL2, Irreducible, 5),
        ];
        for (fam, label, q) in cases {
            let m = torus_order3_rep(fam, label, q).unwrap();
            assert!(m.pow(3).is_scalar(), "{fam:?} {label:?} {q}");
            assert!(!m.is_scalar());
            let unitary = matches!(fam, PSU3 | PGU3);
            if unitary {
                assert!(preserves_hermitian(&m));
            }
            if m.n() == 3 {
                let t = semisimple_type(&m, unitary.then_some(q)).unwrap();
                assert_eq!(t, SemisimpleType::Torus(label), "{fam:?} {label:?} {q}");
            }
            if matches!(fam, PSL2 | PSL3 | PSU3) {
                assert_eq!(m.det().code(), 1);
            }
        }
    }

    #[test]
    fn torus_rep_errors() {
        use TorusFamily::*;
        use TorusLabel::*;
        assert!(torus_order3_rep(PSL3, Irreducible, 4).is_err());
        assert!(torus_order3_rep(PSL3, Split, 5).is_err());
        assert!(torus_order3_rep(PGL3, Irreducible, 5).is_err());
        assert!(torus_order3_rep(PSL3, Split, 9).is_err());
    }

    #[test]
    fn twist_of_pgl28() {
        let t = frobenius_twist_perm(8).unwrap();
        assert_eq!(t.order(), 3);
        // The three points over GF(2): (0:1), (1:0), (1:1).
        let f = field_of_order(8).unwrap();
        let a = LinearAction::new(FormKind::Linear, PointSpace::Projective, 2, 8, &f);
        for v in [[0u32, 1], [1, 0], [1, 1]] {
            let i = a.locate(&v).unwrap();
            assert_eq!(t.image(i), i);
        }
        assert!(frobenius_twist_perm(4).is_err());
    }
}
