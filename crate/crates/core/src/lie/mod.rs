//! Symbolic verdicts: torus orders, congruence rules and Jordan-form rules
//! deciding, for an order-3 class of an almost simple group, whether it
//! centralizes an involution and whether it normalizes a nontrivial 2-subgroup.
//!
//! Every rule carries a short identifier that is reported as provenance.

mod tables;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::prime_power;
pub use crate::matrix::TorusLabel;
pub use tables::{emit_exception_tables, render_table, TableFormat, TableRow};

include!(concat!(env!("OUT_DIR"), "/alt_table.rs"));

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("{group} is excluded: {reason}")]
    Excluded { group: String, reason: &'static str },
    #[error("inadmissible descriptor: {0}")]
    Inadmissible(String),
    #[error("unknown family or case: {0}")]
    Unknown(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Alt,
    Sym,
    PSL2,
    PSL3,
    PSL4,
    PSU3,
    PSU4,
    PGL3,
    PGU3,
    Sp4,
    G2,
    #[serde(rename = "2G2")]
    Ree,
    J3,
    #[serde(rename = "J3:2")]
    J3Aut,
}

impl Family {
    pub const ALL: [Family; 14] = [
        Family::Alt,
        Family::Sym,
        Family::PSL2,
        Family::PSL3,
        Family::PSL4,
        Family::PSU3,
        Family::PSU4,
        Family::PGL3,
        Family::PGU3,
        Family::Sp4,
        Family::G2,
        Family::Ree,
        Family::J3,
        Family::J3Aut,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Alt => "Alt",
            Family::Sym => "Sym",
            Family::PSL2 => "PSL2",
            Family::PSL3 => "PSL3",
            Family::PSL4 => "PSL4",
            Family::PSU3 => "PSU3",
            Family::PSU4 => "PSU4",
            Family::PGL3 => "PGL3",
            Family::PGU3 => "PGU3",
            Family::Sp4 => "Sp4",
            Family::G2 => "G2",
            Family::Ree => "2G2",
            Family::J3 => "J3",
            Family::J3Aut => "J3:2",
        }
    }

    fn is_sporadic(self) -> bool {
        matches!(self, Family::J3 | Family::J3Aut)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| LieError::Unknown(s.to_string()))
    }
}

/// A family together with its parameter: `n` for Alt/Sym, `q` for groups of
/// Lie type, `q^2 = 3^(2f+1)` for 2G2, and 0 for the sporadic rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupKind {
    pub family: Family,
    pub param: u64,
}

impl GroupKind {
    pub fn new(family: Family, param: u64) -> Result<Self, LieError> {
        let k = Self { family, param };
        k.validate()?;
        Ok(k)
    }

    fn validate(&self) -> Result<(), LieError> {
        let bad = |m: &str| Err(LieError::Inadmissible(format!("{self}: {m}")));
        match self.family {
            Family::Alt | Family::Sym => {
                if self.param < 3 {
                    return bad("degree must be at least 3");
                }
            }
            Family::J3 | Family::J3Aut => {}
            Family::Ree => match prime_power(self.param) {
                Some((3, k)) if k % 2 == 1 => {}
                _ => return bad("parameter must be an odd power of 3"),
            },
            _ => {
                if prime_power(self.param).is_none() {
                    return bad("q must be a prime power");
                }
            }
        }
        Ok(())
    }

    pub fn characteristic(&self) -> Option<u64> {
        match self.family {
            Family::Alt | Family::Sym | Family::J3 | Family::J3Aut => None,
            _ => prime_power(self.param).map(|(p, _)| p),
        }
    }

    fn exponent(&self) -> u32 {
        prime_power(self.param).map_or(0, |(_, k)| k)
    }

    /// Reason the group falls outside the almost simple setting, if it does.
    pub fn exclusion(&self) -> Option<&'static str> {
        use Family::*;
        match (self.family, self.param) {
            (Alt | Sym, n) if n < 5 => Some("the group is solvable"),
            (PSL2, 2 | 3) | (PSU3 | PGU3, 2) => Some("the group is solvable"),
            (Sp4 | G2, 2) | (Ree, 3) => {
                Some("the group is not simple; its derived subgroup is simple")
            }
            _ => None,
        }
    }

    /// Whether the brute-force tier can reach the group.
    pub fn desk_verifiable(&self) -> bool {
        match self.family {
            Family::J3 | Family::J3Aut => false,
            Family::Ree => self.param < 27,
            Family::G2 => self.param < 9,
            _ => true,
        }
    }

    /// Every class label that occurs for order-3 elements of this group.
    pub fn labels(&self) -> Vec<ClassLabel> {
        use ClassLabel::*;
        use Family::*;
        let q = self.param;
        let char3 = self.characteristic() == Some(3);
        let r = q % 3;
        match self.family {
            Alt | Sym => (1..=q as usize / 3)
                .map(|c| Cycle {
                    fixed: q as usize - 3 * c,
                    threes: c,
                })
                .collect(),
            PSL2 if char3 => vec![Jordan(vec![2])],
            PSL2 => vec![Unique],
            PSL3 | PSU3 | PGL3 | PGU3 if char3 => vec![Jordan(vec![2, 1]), Jordan(vec![3])],
            PSL3 | PGL3 | PSU3 | PGU3 => {
                let unitary = matches!(self.family, PSU3 | PGU3);
                let good = if unitary { 2 } else { 1 };
                let nine = if unitary { 8 } else { 1 };
                let outer = matches!(self.family, PGL3 | PGU3);
                if r != good {
                    return vec![Torus(TorusLabel::PartiallySplit)];
                }
                let mut v = vec![Torus(TorusLabel::Split)];
                if outer || q % 9 == nine {
                    v.push(NonRegular);
                }
                if outer {
                    v.push(Torus(TorusLabel::Irreducible));
                }
                v
            }
            PSL4 | PSU4 if char3 => vec![
                Jordan(vec![2, 1, 1]),
                Jordan(vec![2, 2]),
                Jordan(vec![3, 1]),
            ],
            Sp4 if char3 => vec![Jordan(vec![2, 1, 1]), Jordan(vec![2, 2])],
            PSL4 | PSU4 | Sp4 => vec![Semisimple],
            G2 if char3 => vec![A1t3, Other],
            G2 => vec![Semisimple],
            Ree => vec![A1t3, Other],
            J3 | J3Aut => vec![Named("3A".into()), Named("3B".into())],
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_sporadic() {
            write!(f, "{}", self.family)
        } else {
            write!(f, "{}({})", self.family, self.param)
        }
    }
}

/// The structural label of an order-3 class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    /// The only order-3 class type (PSL2 away from characteristic 3).
    Unique,
    /// Any semisimple class where no finer label is needed.
    Semisimple,
    Torus(TorusLabel),
    /// Semisimple with a repeated eigenvalue.
    NonRegular,
    /// Jordan block sizes of a unipotent preimage, descending.
    Jordan(Vec<usize>),
    /// `threes` disjoint 3-cycles and `fixed` fixed points.
    Cycle {
        fixed: usize,
        threes: usize,
    },
    /// The class (A~1)3 of G2(3^f) and 2G2(3^(2f+1)).
    A1t3,
    /// Any other unipotent class of G2 or 2G2.
    Other,
    /// A class named in sporadic group tables.
    Named(String),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Unique => f.write_str("unique"),
            ClassLabel::Semisimple => f.write_str("semisimple"),
            ClassLabel::Torus(TorusLabel::Split) => f.write_str("split"),
            ClassLabel::Torus(TorusLabel::PartiallySplit) => f.write_str("partially-split"),
            ClassLabel::Torus(TorusLabel::Irreducible) => f.write_str("irreducible"),
            ClassLabel::NonRegular => f.write_str("non-regular"),
            ClassLabel::Jordan(p) => {
                let parts: Vec<String> = p.iter().map(|s| format!("J{s}")).collect();
                f.write_str(&parts.join("+"))
            }
            ClassLabel::Cycle { threes, .. } => {
                for c in 0..*threes {
                    write!(f, "({} {} {})", 3 * c + 1, 3 * c + 2, 3 * c + 3)?;
                }
                Ok(())
            }
            ClassLabel::A1t3 => f.write_str("A1t3"),
            ClassLabel::Other => f.write_str("other"),
            ClassLabel::Named(s) => f.write_str(s),
        }
    }
}

impl ClassLabel {
    /// Parses a label in the context of `kind` (cycle labels need the degree).
    pub fn parse(s: &str, kind: &GroupKind) -> Result<Self, LieError> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        let bad = || LieError::Inadmissible(format!("cannot parse class label {t:?}"));
        let label = match lower.as_str() {
            "unique" => ClassLabel::Unique,
            "semisimple" => ClassLabel::Semisimple,
            "split" => ClassLabel::Torus(TorusLabel::Split),
            "partially-split" | "partially_split" | "partial" => {
                ClassLabel::Torus(TorusLabel::PartiallySplit)
            }
            "irreducible" => ClassLabel::Torus(TorusLabel::Irreducible),
            "non-regular" | "nonregular" => ClassLabel::NonRegular,
            "a1t3" | "(a1~)3" | "(a1~)^3" => ClassLabel::A1t3,
            "other" => ClassLabel::Other,
            _ if t.starts_with('(') => {
                let threes = t.matches('(').count();
                if t.matches(')').count() != threes {
                    return Err(bad());
                }
                let n = kind.param as usize;
                if 3 * threes > n {
                    return Err(LieError::Inadmissible(format!(
                        "{t} does not fit on {n} points"
                    )));
                }
                ClassLabel::Cycle {
                    fixed: n - 3 * threes,
                    threes,
                }
            }
            _ if lower.starts_with('j') => {
                let sizes: Result<Vec<usize>, _> = lower
                    .split(['j', '+'])
                    .filter(|p| !p.is_empty())
                    .map(str::parse)
                    .collect();
                let mut sizes = sizes.map_err(|_| bad())?;
                sizes.sort_unstable_by(|a, b| b.cmp(a));
                ClassLabel::Jordan(sizes)
            }
            _ if kind.family.is_sporadic() => ClassLabel::Named(t.to_ascii_uppercase()),
            _ => return Err(bad()),
        };
        Ok(label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassDescriptor {
    pub kind: GroupKind,
    pub label: ClassLabel,
}

impl ClassDescriptor {
    pub fn new(kind: GroupKind, label: ClassLabel) -> Self {
        Self { kind, label }
    }

    fn check(&self) -> Result<(), LieError> {
        if let Some(reason) = self.kind.exclusion() {
            return Err(LieError::Excluded {
                group: self.kind.to_string(),
                reason,
            });
        }
        self.kind.validate()?;
        let admissible = self.kind.labels();
        let ok = match &self.label {
            ClassLabel::Named(_) if self.kind.family.is_sporadic() => {
                admissible.contains(&self.label)
            }
            l => admissible.contains(l),
        };
        if ok {
            Ok(())
        } else {
            Err(LieError::Inadmissible(format!(
                "{} has no order-3 class labelled {}",
                self.kind, self.label
            )))
        }
    }
}

impl fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.kind, self.label)
    }
}

/// One boolean answer and the rule that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ruling {
    pub value: bool,
    pub rule: &'static str,
}

const fn ruling(value: bool, rule: &'static str) -> Ruling {
    Ruling { value, rule }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub centralizes: Ruling,
    pub normalizes: Ruling,
    pub desk_verifiable: bool,
}

/// Whether an order-3 element of the class centralizes an involution.
pub fn centralizer_verdict(d: &ClassDescriptor) -> Result<Ruling, LieError> {
    d.check()?;
    use ClassLabel::*;
    use Family::*;
    let q = d.kind.param;
    let a = d.kind.exponent();
    let even = d.kind.characteristic() == Some(2);
    let r = match (d.kind.family, &d.label) {
        (Alt, Cycle { fixed, threes }) => return alt_centralizes(q as usize, *fixed, *threes),
        (Sym, _) => ruling(true, "sym-odd-centralizer-element"),
        (PSL2, Unique) if even => ruling(false, "psl2-even-q"),
        (PSL2, Unique) if q % 12 == 5 => ruling(false, "psl2-q-5-mod-12"),
        (PSL2, Unique) if q % 12 == 7 => ruling(false, "psl2-q-7-mod-12"),
        (PSL2, Jordan(_)) => ruling(false, "psl2-char3-J2"),
        (PSL3 | PGL3, Torus(TorusLabel::Split)) if even && a % 2 == 0 => {
            ruling(false, "psl3-even-q-regular-torus")
        }
        (PSL3 | PGL3, Torus(TorusLabel::PartiallySplit)) if even && a % 2 == 1 => {
            ruling(false, "psl3-even-q-regular-torus")
        }
        (PSU3 | PGU3, Torus(TorusLabel::Split)) if even && a % 2 == 1 => {
            ruling(false, "psu3-even-q-regular-torus")
        }
        (PSU3 | PGU3, Torus(TorusLabel::PartiallySplit)) if even && a % 2 == 0 => {
            ruling(false, "psu3-even-q-regular-torus")
        }
        (PGL3, Torus(TorusLabel::Irreducible)) => ruling(false, "pgl3-irreducible-outer-diagonal"),
        (PGU3, Torus(TorusLabel::Irreducible)) => ruling(false, "pgu3-irreducible-outer-diagonal"),
        (PSL3 | PGL3, Jordan(p)) if p == &[3] => ruling(false, "psl3-char3-J3"),
        (PSU3 | PGU3, Jordan(p)) if p == &[3] => ruling(false, "psu3-char3-J3"),
        (PSL4, Jordan(p)) if p == &[3, 1] && a % 2 == 1 => {
            ruling(false, "psl4-char3-odd-exponent-J3+J1")
        }
        (PSU4, Jordan(p)) if p == &[3, 1] => ruling(false, "psu4-char3-J3+J1"),
        (J3, Named(n)) if n == "3B" => ruling(false, "j3-class-3B"),
        (G2, A1t3) => ruling(false, "g2-char3-A1t3"),
        (Ree, A1t3) => ruling(false, "ree-A1t3"),
        (_, NonRegular) => ruling(true, "non-regular-semisimple"),
        _ => ruling(true, "even-centralizer"),
    };
    Ok(r)
}

/// Whether an order-3 element of the class normalizes a nontrivial 2-subgroup.
pub fn normalizer_verdict(d: &ClassDescriptor) -> Result<Ruling, LieError> {
    d.check()?;
    use ClassLabel::*;
    use Family::*;
    let a = d.kind.exponent();
    let even = d.kind.characteristic() == Some(2);
    let r = match (d.kind.family, &d.label) {
        (PSL2, Unique) if even && a % 2 == 1 => ruling(false, "psl2-even-q-odd-exponent"),
        (PGL3, Torus(TorusLabel::Irreducible)) if even && a % 2 == 0 => {
            ruling(false, "pgl3-even-q-even-exponent-irreducible")
        }
        (PGU3, Torus(TorusLabel::Irreducible)) if even && a % 2 == 1 && a >= 3 => {
            ruling(false, "pgu3-even-q-odd-exponent-irreducible")
        }
        (Ree, A1t3) => ruling(false, "ree-A1t3"),
        (Alt, _) => ruling(true, "alt-four-group"),
        _ => {
            if centralizer_verdict(d)?.value {
                ruling(true, "centralizes-involution")
            } else {
                ruling(true, "normalizes-larger-2-group")
            }
        }
    };
    Ok(r)
}

pub fn verdict(d: &ClassDescriptor) -> Result<Verdict, LieError> {
    Ok(Verdict {
        centralizes: centralizer_verdict(d)?,
        normalizes: normalizer_verdict(d)?,
        desk_verifiable: d.kind.desk_verifiable(),
    })
}

fn alt_centralizes(n: usize, fixed: usize, threes: usize) -> Result<Ruling, LieError> {
    if fixed + 3 * threes != n || threes == 0 {
        return Err(LieError::Inadmissible(format!(
            "{fixed} fixed points and {threes} three-cycles is not an order-3 type on {n} points"
        )));
    }
    if n > 12 {
        return Ok(ruling(true, "alt-large-degree"));
    }
    ALT_TABLE
        .iter()
        .find(|&&(m, f, c, _)| (m, f, c) == (n, fixed, threes))
        .map(|&(_, _, _, v)| ruling(v, "alt-small-degree-table"))
        .ok_or_else(|| LieError::Inadmissible(format!("Alt({n}) is below the table range")))
}

/// Verdict for a cycle type in Alt(n).
pub fn alt_class_verdict(n: usize, fixed: usize, threes: usize) -> Result<Verdict, LieError> {
    let kind = GroupKind::new(Family::Alt, n as u64)?;
    let d = ClassDescriptor::new(kind, ClassLabel::Cycle { fixed, threes });
    if fixed + 3 * threes != n || threes == 0 {
        return alt_centralizes(n, fixed, threes).map(|_| unreachable!());
    }
    verdict(&d)
}

/// Families whose maximal tori are tabulated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusGroup {
    PSL2,
    PSL3,
    PSU3,
}

fn gcd(a: u64, b: u64) -> u64 {
    crate::field::gcd(a, b)
}

/// Maximal torus orders, labelled.
pub fn torus_orders(family: TorusGroup, q: u64) -> Vec<(TorusLabel, u64)> {
    use TorusLabel::*;
    match family {
        TorusGroup::PSL2 => {
            let d = gcd(2, q - 1);
            vec![(Split, (q - 1) / d), (Irreducible, (q + 1) / d)]
        }
        TorusGroup::PSL3 => {
            let d = gcd(3, q - 1);
            vec![
                (Split, (q - 1) * (q - 1) / d),
                (PartiallySplit, (q * q - 1) / d),
                (Irreducible, (q * q + q + 1) / d),
            ]
        }
        TorusGroup::PSU3 => {
            let d = gcd(3, q + 1);
            vec![
                (Split, (q + 1) * (q + 1) / d),
                (PartiallySplit, (q * q - 1) / d),
                (Irreducible, (q * q - q + 1) / d),
            ]
        }
    }
}

/// Whether the torus contains elements of order 3 (3 not dividing q).
pub fn torus_has_order3(family: TorusGroup, label: TorusLabel, q: u64) -> Result<bool, LieError> {
    use TorusLabel::*;
    if q % 3 == 0 {
        return Err(LieError::Inadmissible(format!(
            "q = {q}: order-3 elements are unipotent"
        )));
    }
    let r = q % 3;
    Ok(match (family, label) {
        (TorusGroup::PSL2, Split) => r == 1,
        (TorusGroup::PSL2, Irreducible) => r == 2,
        (TorusGroup::PSL2, PartiallySplit) => {
            return Err(LieError::Inadmissible(
                "PSL2 has no partially split torus".into(),
            ))
        }
        (TorusGroup::PSL3, Split) | (TorusGroup::PSU3, PartiallySplit) => r == 1,
        (TorusGroup::PSL3, PartiallySplit) | (TorusGroup::PSU3, Split) => r == 2,
        (_, Irreducible) => false,
    })
}

/// Groups whose unipotent Jordan forms are constrained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JordanGroup {
    SL,
    Sp,
    O,
}

/// Whether a unipotent with these Jordan block sizes exists in the group:
/// in Sp each odd size has even multiplicity, in O each even size does.
pub fn jordan_valid(group: JordanGroup, partition: &[usize]) -> bool {
    let mult = |s: usize| partition.iter().filter(|&&x| x == s).count();
    match group {
        JordanGroup::SL => true,
        JordanGroup::Sp => partition.iter().all(|&s| s % 2 == 0 || mult(s) % 2 == 0),
        JordanGroup::O => partition.iter().all(|&s| s % 2 == 1 || mult(s) % 2 == 0),
    }
}

/// Tabulated centralizer orders of order-3 unipotent classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotedCase {
    Sp4J2J2,
    SO7J3J3J1,
    SO8PlusJ3J3J1J1,
    SO8MinusJ3J3J1J1,
}

impl FromStr for QuotedCase {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sp4-j2j2" => Ok(Self::Sp4J2J2),
            "so7-j3j3j1" => Ok(Self::SO7J3J3J1),
            "so8plus-j3j3j1j1" | "so8-plus" => Ok(Self::SO8PlusJ3J3J1J1),
            "so8minus-j3j3j1j1" | "so8-minus" => Ok(Self::SO8MinusJ3J3J1J1),
            _ => Err(LieError::Unknown(s.to_string())),
        }
    }
}

/// `2q^3(q+1), 2q^3(q-1)` and the orthogonal analogues, evaluated at `q`.
pub fn quoted_centralizer_orders(case: QuotedCase, q: u64) -> Vec<u128> {
    let q = u128::from(q);
    match case {
        QuotedCase::Sp4J2J2 => vec![2 * q.pow(3) * (q + 1), 2 * q.pow(3) * (q - 1)],
        QuotedCase::SO7J3J3J1 => vec![2 * q.pow(6) * (q + 1), 2 * q.pow(6) * (q - 1)],
        QuotedCase::SO8PlusJ3J3J1J1 => {
            vec![2 * q.pow(8) * (q + 1).pow(2), 2 * q.pow(8) * (q - 1).pow(2)]
        }
        QuotedCase::SO8MinusJ3J3J1J1 => vec![2 * q.pow(8) * (q * q - 1)],
    }
}
