use crate::lie::{ClassLabel, Family};
use crate::matrix::{
    jordan_partition, semisimple_type, special::normalize_cube, FormKind, SemisimpleType,
};
use crate::perm::{GroupHandle, Permutation};

/// Structural label of an order-3 element, read from its cycle type (natural
/// Alt/Sym) or from a matrix lift (matrix families). `None` when the handle
/// carries no such metadata. Unipotent labels need only the lift; semisimple
/// ones also need the family.
pub fn class_label(handle: &GroupHandle, x: &Permutation) -> Option<ClassLabel> {
    let info = handle.info();
    if info.natural {
        let threes = x.cycle_type().iter().filter(|&&c| c == 3).count();
        return Some(ClassLabel::Cycle {
            fixed: x.degree() - 3 * threes,
            threes,
        });
    }
    let action = info.linear.as_ref()?;
    let m = action.lift(x);
    let char3 = m.field().characteristic() == 3;
    if char3 {
        let u = normalize_cube(&m)?;
        return Some(ClassLabel::Jordan(jordan_partition(&u)?));
    }
    Some(match info.kind?.family {
        Family::PSL2 => ClassLabel::Unique,
        Family::PSL3 | Family::PGL3 | Family::PSU3 | Family::PGU3 => {
            let unitary_q = (action.kind() == FormKind::Unitary).then_some(action.q());
            match semisimple_type(&m, unitary_q)? {
                SemisimpleType::Torus(l) => ClassLabel::Torus(l),
                SemisimpleType::NonRegular => ClassLabel::NonRegular,
            }
        }
        _ => ClassLabel::Semisimple,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::order3_class_records;
    use crate::groups::{construct, GroupName};
    use crate::matrix::TorusLabel;
    use crate::perm::DEFAULT_CAP;

    fn labels(name: GroupName) -> Vec<ClassLabel> {
        let h = construct(&name).unwrap();
        order3_class_records(&h, DEFAULT_CAP)
            .unwrap()
            .iter()
            .map(|r| class_label(&h, &r.representative).unwrap())
            .collect()
    }

    #[test]
    fn labels_of_small_groups() {
        assert_eq!(labels(GroupName::PSL(2, 7)), vec![ClassLabel::Unique]);
        assert_eq!(
            labels(GroupName::PSL(2, 9)),
            vec![ClassLabel::Jordan(vec![2]); 2]
        );
        assert_eq!(
            labels(GroupName::PSL(3, 4)),
            vec![ClassLabel::Torus(TorusLabel::Split)]
        );
        let mut pgl = labels(GroupName::PGL(3, 4));
        pgl.sort();
        pgl.dedup();
        assert_eq!(
            pgl,
            vec![
                ClassLabel::Torus(TorusLabel::Split),
                ClassLabel::Torus(TorusLabel::Irreducible),
                ClassLabel::NonRegular
            ]
        );
        let mut a6 = labels(GroupName::Alt(6));
        a6.sort();
        assert_eq!(
            a6,
            vec![
                ClassLabel::Cycle {
                    fixed: 0,
                    threes: 2
                },
                ClassLabel::Cycle {
                    fixed: 3,
                    threes: 1
                }
            ]
        );
    }
}
