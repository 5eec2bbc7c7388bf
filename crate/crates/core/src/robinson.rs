//! Robinson's lower bound on 2-blocks of defect zero, checked against
//! ingested character degrees.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{order3_class_records, ClassifyError};
use crate::perm::GroupHandle;

#[derive(Debug, Error)]
pub enum RobinsonError {
    #[error("degree file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("sum of squared degrees is {sum}, but the group order is {order}")]
    SumOfSquares { sum: u128, order: u128 },
    #[error("degree {degree} does not divide the group order {order}")]
    NonDivisor { degree: u64, order: u128 },
    #[error("degree data is for a group of order {data}, but {group} has order {handle}")]
    OrderMismatch {
        group: String,
        data: u128,
        handle: u128,
    },
    #[error("bound violated for {group}: {lower} order-3 classes but only {blocks} blocks of defect zero")]
    Violated {
        group: String,
        lower: usize,
        blocks: usize,
    },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Irreducible character degrees of a group, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeData {
    order: u128,
    degrees: Vec<u64>,
}

impl DegreeData {
    pub fn new(order: u128, mut degrees: Vec<u64>) -> Result<Self, RobinsonError> {
        degrees.sort_unstable();
        let sum: u128 = degrees.iter().map(|&d| d as u128 * d as u128).sum();
        if sum != order {
            return Err(RobinsonError::SumOfSquares { sum, order });
        }
        if let Some(&degree) = degrees.iter().find(|&&d| d == 0 || order % d as u128 != 0) {
            return Err(RobinsonError::NonDivisor { degree, order });
        }
        Ok(DegreeData { order, degrees })
    }

    /// Parses `order <N>` and `degrees <d1> <d2> ...`, ignoring `#` comments.
    pub fn parse(text: &str) -> Result<Self, RobinsonError> {
        let mut order = None;
        let mut degrees = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| RobinsonError::Parse { line: i + 1, msg };
            let mut words = line.split_whitespace();
            match words.next() {
                Some("order") => {
                    let w = words.next().ok_or_else(|| err("missing order".into()))?;
                    order = Some(
                        w.parse::<u128>()
                            .map_err(|e| err(format!("bad order {w:?}: {e}")))?,
                    );
                    if words.next().is_some() {
                        return Err(err("trailing tokens after order".into()));
                    }
                }
                Some("degrees") => {
                    let list = words
                        .map(|w| {
                            w.parse::<u64>()
                                .map_err(|e| err(format!("bad degree {w:?}: {e}")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    degrees.get_or_insert_with(Vec::new).extend(list);
                }
                Some(other) => return Err(err(format!("unknown keyword {other:?}"))),
                None => {}
            }
        }
        let order = order.ok_or(RobinsonError::Parse {
            line: 0,
            msg: "no order line".into(),
        })?;
        let degrees = degrees.ok_or(RobinsonError::Parse {
            line: 0,
            msg: "no degrees line".into(),
        })?;
        DegreeData::new(order, degrees)
    }

    pub fn read(path: &Path) -> Result<Self, RobinsonError> {
        let text = std::fs::read_to_string(path).map_err(|source| RobinsonError::Io {
            path: path.display().to_string(),
            source,
        })?;
        DegreeData::parse(&text)
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }
}

fn nu2(n: u128) -> u32 {
    n.trailing_zeros()
}

/// Number of 2-blocks of defect zero: degrees with full 2-part.
pub fn defect_zero_count(data: &DegreeData) -> usize {
    let full = nu2(data.order);
    data.degrees
        .iter()
        .filter(|&&d| nu2(d as u128) == full)
        .count()
}

/// Number of order-3 classes normalizing no nontrivial 2-subgroup.
pub fn robinson_lower_bound(handle: &GroupHandle, cap: u64) -> Result<usize, RobinsonError> {
    Ok(order3_class_records(handle, cap)?
        .iter()
        .filter(|r| !r.normalizes)
        .count())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub group: String,
    pub order: u128,
    pub lower_bound: usize,
    pub defect_zero_blocks: usize,
    pub pass: bool,
}

/// Compares both sides of the bound; a violation is an error.
pub fn check_bound(
    handle: &GroupHandle,
    data: &DegreeData,
    cap: u64,
) -> Result<BoundReport, RobinsonError> {
    if handle.order() != data.order {
        return Err(RobinsonError::OrderMismatch {
            group: handle.name().to_string(),
            data: data.order,
            handle: handle.order(),
        });
    }
    let lower = robinson_lower_bound(handle, cap)?;
    let blocks = defect_zero_count(data);
    if lower > blocks {
        return Err(RobinsonError::Violated {
            group: handle.name().to_string(),
            lower,
            blocks,
        });
    }
    Ok(BoundReport {
        group: handle.name().to_string(),
        order: data.order,
        lower_bound: lower,
        defect_zero_blocks: blocks,
        pass: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{construct, GroupName};
    use crate::perm::DEFAULT_CAP;
    use proptest::prelude::*;

    fn data(order: u128, d: &[u64]) -> DegreeData {
        DegreeData::new(order, d.to_vec()).unwrap()
    }

    #[test]
    fn defect_zero_examples() {
        assert_eq!(defect_zero_count(&data(60, &[1, 3, 3, 4, 5])), 1);
        assert_eq!(
            defect_zero_count(&data(504, &[1, 7, 7, 7, 7, 8, 9, 9, 9])),
            1
        );
        assert_eq!(defect_zero_count(&data(168, &[1, 3, 3, 6, 7, 8])), 1);
        // Alt4: degrees 1,1,1,3 and no degree divisible by 4.
        assert_eq!(defect_zero_count(&data(12, &[1, 1, 1, 3])), 0);
    }

    #[test]
    fn parse_and_reject() {
        let ok = DegreeData::parse("# Alt5\norder 60\ndegrees 1 3 3 4 5 # table\n").unwrap();
        assert_eq!(ok.degrees(), &[1, 3, 3, 4, 5]);
        assert!(matches!(
            DegreeData::parse("order 60\ndegrees 1 3 3 4 4\n"),
            Err(RobinsonError::SumOfSquares { sum: 51, order: 60 })
        ));
        assert!(matches!(
            DegreeData::parse("order 60\n"),
            Err(RobinsonError::Parse { .. })
        ));
        assert!(matches!(
            DegreeData::parse("order x\ndegrees 1\n"),
            Err(RobinsonError::Parse { line: 1, .. })
        ));
        // 1 + 49 = 50 but 7 does not divide 50.
        assert!(matches!(
            DegreeData::new(50, vec![1, 7]),
            Err(RobinsonError::NonDivisor { degree: 7, .. })
        ));
    }

    #[test]
    fn lower_bounds() {
        // PGL(3,4): x and x^-1 in the irreducible torus are not conjugate.
        for (name, want) in [
            (GroupName::PSL(2, 8), 1),
            (GroupName::Alt(5), 0),
            (GroupName::PGL(3, 4), 2),
        ] {
            let h = construct(&name).unwrap();
            assert_eq!(
                robinson_lower_bound(&h, DEFAULT_CAP).unwrap(),
                want,
                "{name}"
            );
        }
    }

    #[test]
    fn bound_holds_on_fixtures() {
        let cases = [
            (GroupName::Alt(5), data(60, &[1, 3, 3, 4, 5]), 0),
            (
                GroupName::PSL(2, 8),
                data(504, &[1, 7, 7, 7, 7, 8, 9, 9, 9]),
                1,
            ),
            (GroupName::PSL(2, 7), data(168, &[1, 3, 3, 6, 7, 8]), 0),
        ];
        for (name, d, lower) in cases {
            let r = check_bound(&construct(&name).unwrap(), &d, DEFAULT_CAP).unwrap();
            assert_eq!(
                (r.lower_bound, r.defect_zero_blocks, r.pass),
                (lower, 1, true),
                "{name}"
            );
        }
        let err = check_bound(
            &construct(&GroupName::Alt(5)).unwrap(),
            &data(168, &[1, 3, 3, 6, 7, 8]),
            DEFAULT_CAP,
        );
        assert!(matches!(err, Err(RobinsonError::OrderMismatch { .. })));
    }

    proptest! {
        #[test]
        fn defect_zero_counts_full_two_parts(degrees in proptest::collection::vec(1u64..64, 1..12)) {
            let order: u128 = degrees.iter().map(|&d| d as u128 * d as u128).sum();
            match DegreeData::new(order, degrees.clone()) {
                Ok(d) => {
                    let full = order.trailing_zeros();
                    let n = defect_zero_count(&d);
                    prop_assert!(n <= degrees.len());
                    prop_assert_eq!(n, degrees.iter().filter(|&&x| (x as u128).trailing_zeros() == full).count());
                }
                Err(e) => prop_assert!(matches!(e, RobinsonError::NonDivisor { .. }), "{e}"),
            }
        }
    }
}
