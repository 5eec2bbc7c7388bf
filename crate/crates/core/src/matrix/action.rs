use std::fmt;

use rustc_hash::FxHashMap;

use super::classical::conj_c;
use super::{FormKind, Matrix, MatrixError};
use crate::field::FieldSpec;
use crate::perm::Permutation;

/// The set a matrix group is made to act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointSpace {
    /// All 1-spaces, each represented by the vector whose first nonzero coordinate is 1.
    Projective,
    /// 1-spaces isotropic for the antidiagonal Hermitian form.
    IsotropicProjective,
    /// Nonzero vectors; the action is then faithful on the matrix group itself.
    Vectors,
}

/// A matrix action on points, with enough structure to recover a matrix
/// (up to scalars in the projective cases) from a permutation.
#[derive(Clone)]
pub struct LinearAction {
    kind: FormKind,
    space: PointSpace,
    n: usize,
    q: u64,
    field: FieldSpec,
    points: Vec<Vec<u32>>,
    index: FxHashMap<u64, u32>,
    /// Point indices of the frame: `n` basis points, then (projective only) their scaled sum.
    frame: Vec<usize>,
    /// Inverse of the matrix whose rows are the scaled frame vectors.
    frame_inv: Matrix,
}

impl fmt::Debug for LinearAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearAction")
            .field("kind", &self.kind)
            .field("space", &self.space)
            .field("n", &self.n)
            .field("q", &self.q)
            .field("degree", &self.points.len())
            .finish()
    }
}

impl LinearAction {
    /// `q` is the defining parameter; `field` is GF(q), or GF(q^2) for unitary groups.
    pub fn new(kind: FormKind, space: PointSpace, n: usize, q: u64, field: &FieldSpec) -> Self {
        let fq = u64::from(field.order());
        let total = fq.pow(n as u32);
        let mut points = Vec::new();
        let mut index = FxHashMap::default();
        let mut v = vec![0u32; n];
        for code in 1..total {
            let mut c = code;
            for x in v.iter_mut() {
                *x = (c % fq) as u32;
                c /= fq;
            }
            let keep = match space {
                PointSpace::Vectors => true,
                PointSpace::Projective => v.iter().find(|&&x| x != 0) == Some(&1),
                PointSpace::IsotropicProjective => {
                    v.iter().find(|&&x| x != 0) == Some(&1) && hermitian_norm(field, &v) == 0
                }
            };
            if keep {
                index.insert(code, points.len() as u32);
                points.push(v.clone());
            }
        }
        let (frame, frame_inv) = find_frame(field, n, space, &points);
        Self {
            kind,
            space,
            n,
            q,
            field: field.clone(),
            points,
            index,
            frame,
            frame_inv,
        }
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn space(&self) -> PointSpace {
        self.space
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The defining parameter q (the matrices are over GF(q^2) for unitary groups).
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, i: usize) -> &[u32] {
        &self.points[i]
    }

    fn encode(&self, v: &[u32]) -> u64 {
        let fq = u64::from(self.field.order());
        v.iter().rev().fold(0, |acc, &x| acc * fq + u64::from(x))
    }

    fn normalize(&self, v: &mut [u32]) {
        if self.space == PointSpace::Vectors {
            return;
        }
        if let Some(&lead) = v.iter().find(|&&x| x != 0) {
            let inv = self.field.inv_c(lead);
            for x in v.iter_mut() {
                *x = self.field.mul_c(*x, inv);
            }
        }
    }

    pub fn locate(&self, v: &[u32]) -> Option<usize> {
        let mut w = v.to_vec();
        self.normalize(&mut w);
        self.index.get(&self.encode(&w)).map(|&i| i as usize)
    }

    /// The permutation induced by `m` on the points.
    pub fn perm_of(&self, m: &Matrix) -> Result<Permutation, MatrixError> {
        if m.n() != self.n {
            return Err(MatrixError::Dimension(self.n, m.n()));
        }
        if m.field() != &self.field {
            return Err(MatrixError::FieldMismatch);
        }
        let mut w = vec![0u32; self.n];
        let mut images = Vec::with_capacity(self.points.len());
        for v in &self.points {
            m.apply_row(v, &mut w);
            images.push(self.locate(&w).ok_or(MatrixError::NotOnPoints)?);
        }
        Permutation::from_images(images).map_err(|_| MatrixError::NotOnPoints)
    }

    /// A matrix inducing `g`: exact on vectors, up to a scalar on projective points.
    pub fn lift(&self, g: &Permutation) -> Matrix {
        let f = &self.field;
        let n = self.n;
        let w: Vec<&[u32]> = self.frame.iter().map(|&i| self.point(g.image(i))).collect();
        let mut wm = Matrix::zero(f, n);
        for (i, row) in w.iter().take(n).enumerate() {
            for (j, &x) in row.iter().enumerate() {
                wm.set(i, j, x);
            }
        }
        if self.space != PointSpace::Vectors {
            // Scale rows so that the last frame point maps to the sum of the images.
            let winv = wm.inverse().expect("frame images are independent");
            let mut c = vec![0u32; n];
            winv.apply_row(w[n], &mut c);
            for (i, &ci) in c.iter().enumerate() {
                for j in 0..n {
                    let x = wm.at(i, j);
                    wm.set(i, j, f.mul_c(x, ci));
                }
            }
        }
        self.frame_inv.mul_unchecked(&wm)
    }

    /// The permutation induced by `x -> x^(p^i)` on coordinates.
    pub fn frobenius_perm(&self, i: u32) -> Permutation {
        let images = self
            .points
            .iter()
            .map(|v| {
                let w: Vec<u32> = v.iter().map(|&x| self.field.frob_c(x, i)).collect();
                self.locate(&w).expect("the point set is Frobenius-stable")
            })
            .collect();
        Permutation::from_images(images).unwrap()
    }
}

pub(crate) fn hermitian_norm(f: &FieldSpec, v: &[u32]) -> u32 {
    let n = v.len();
    (0..n).fold(0, |acc, i| {
        f.add_c(acc, f.mul_c(v[i], conj_c(f, v[n - 1 - i])))
    })
}

fn find_frame(
    f: &FieldSpec,
    n: usize,
    space: PointSpace,
    points: &[Vec<u32>],
) -> (Vec<usize>, Matrix) {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..points.len() {
        if chosen.len() == n {
            break;
        }
        let mut m = Matrix::zero(f, n);
        for (r, &c) in chosen.iter().chain(std::iter::once(&i)).enumerate() {
            for (j, &x) in points[c].iter().enumerate() {
                m.set(r, j, x);
            }
        }
        if m.rank() == chosen.len() + 1 {
            chosen.push(i);
        }
    }
    assert_eq!(chosen.len(), n, "points span the space");
    let mut basis = Matrix::zero(f, n);
    for (r, &c) in chosen.iter().enumerate() {
        for (j, &x) in points[c].iter().enumerate() {
            basis.set(r, j, x);
        }
    }
    if space == PointSpace::Vectors {
        return (chosen, basis.inverse().unwrap());
    }
    let binv = basis.inverse().unwrap();
    let mut coeffs = vec![0u32; n];
    let last = points
        .iter()
        .position(|v| {
            binv.apply_row(v, &mut coeffs);
            coeffs.iter().all(|&c| c != 0)
        })
        .expect("a point in general position exists");
    binv.apply_row(&points[last], &mut coeffs);
    for (r, &c) in coeffs.iter().enumerate() {
        for j in 0..n {
            let x = basis.at(r, j);
            basis.set(r, j, f.mul_c(x, c));
        }
    }
    chosen.push(last);
    (chosen, basis.inverse().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_of_order;
    use crate::matrix::{sl_generators, su_generators};

    #[test]
    fn point_counts() {
        let f3 = field_of_order(3).unwrap();
        assert_eq!(
            LinearAction::new(FormKind::Linear, PointSpace::Projective, 3, 3, &f3).degree(),
            13
        );
        let f8 = field_of_order(8).unwrap();
        assert_eq!(
            LinearAction::new(FormKind::Linear, PointSpace::Projective, 2, 8, &f8).degree(),
            9
        );
        let f9 = field_of_order(9).unwrap();
        let u = LinearAction::new(
            FormKind::Unitary,
            PointSpace::IsotropicProjective,
            3,
            3,
            &f9,
        );
        assert_eq!(u.degree(), 28);
        let u4 = LinearAction::new(
            FormKind::Unitary,
            PointSpace::IsotropicProjective,
            4,
            3,
            &f9,
        );
        assert_eq!(u4.degree(), 280);
    }

    #[test]
    fn scalars_act_trivially() {
        let f4 = field_of_order(4).unwrap();
        let a = LinearAction::new(FormKind::Linear, PointSpace::Projective, 3, 4, &f4);
        let alpha = f4.primitive().code();
        let s = Matrix::diagonal(&f4, &[alpha, alpha, alpha]);
        assert!(a.perm_of(&s).unwrap().is_identity());
    }

    #[test]
    fn lift_recovers_matrix_up_to_scalar() {
        let f9 = field_of_order(9).unwrap();
        let a = LinearAction::new(
            FormKind::Unitary,
            PointSpace::IsotropicProjective,
            3,
            3,
            &f9,
        );
        for m in su_generators(3, 3).unwrap() {
            let p = a.perm_of(&m).unwrap();
            let l = a.lift(&p);
            let ratio = l.mul(&m.inverse().unwrap()).unwrap();
            assert!(ratio.is_scalar(), "{m:?} vs {l:?}");
            assert_eq!(a.perm_of(&l).unwrap(), p);
        }
        let f5 = field_of_order(5).unwrap();
        let v = LinearAction::new(FormKind::Linear, PointSpace::Vectors, 2, 5, &f5);
        for m in sl_generators(2, 5).unwrap() {
            assert_eq!(v.lift(&v.perm_of(&m).unwrap()), m);
        }
    }
}
