//! Line-based generator bundles:
//!
//! ```text
//! # comment
//! name Alt(5)
//! degree 5
//! order 60
//! family Alt 5
//! gen 1 2 3 4 0
//! gen 1 2 0 3 4
//! class (123) 1 2 0 3 4
//! ```
//!
//! `order`, `family` and `class` lines are optional. A `class` line names an
//! order-3 class by its label and gives a representative.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::GroupError;
use crate::lie::{ClassLabel, Family, GroupKind};
use crate::perm::{GroupHandle, GroupInfo, Permutation, StabilizerChain};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleClass {
    pub label: String,
    pub representative: Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub name: String,
    pub degree: usize,
    pub order: Option<u128>,
    pub kind: Option<GroupKind>,
    pub generators: Vec<Permutation>,
    pub classes: Vec<BundleClass>,
    text: String,
}

fn images(fields: &[&str], degree: usize, line: usize) -> Result<Permutation, String> {
    let imgs: Result<Vec<usize>, _> = fields.iter().map(|s| s.parse::<usize>()).collect();
    let imgs = imgs.map_err(|e| format!("line {line}: {e}"))?;
    if imgs.len() != degree {
        return Err(format!(
            "line {line}: expected {degree} images, found {}",
            imgs.len()
        ));
    }
    Permutation::from_images(imgs).map_err(|e| format!("line {line}: {e}"))
}

/// Parses bundle text; errors carry the offending line number.
pub fn parse_bundle(text: &str) -> Result<Bundle, String> {
    let mut name = None;
    let mut degree = None;
    let mut order = None;
    let mut kind = None;
    let mut generators = Vec::new();
    let mut classes = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        let rest = rest.trim();
        let fields: Vec<&str> = rest.split_whitespace().collect();
        match key {
            "name" => name = Some(rest.to_string()),
            "degree" => {
                degree = Some(
                    rest.parse::<usize>()
                        .map_err(|e| format!("line {line}: {e}"))?,
                )
            }
            "order" => {
                order = Some(
                    rest.parse::<u128>()
                        .map_err(|e| format!("line {line}: {e}"))?,
                )
            }
            "family" => {
                let [fam, param] = fields.as_slice() else {
                    return Err(format!("line {line}: expected `family <name> <parameter>`"));
                };
                let fam: Family = fam.parse().map_err(|e| format!("line {line}: {e}"))?;
                let param: u64 = param.parse().map_err(|e| format!("line {line}: {e}"))?;
                kind = Some(GroupKind::new(fam, param).map_err(|e| format!("line {line}: {e}"))?);
            }
            "gen" | "class" => {
                let d =
                    degree.ok_or_else(|| format!("line {line}: `degree` must precede `{key}`"))?;
                if key == "gen" {
                    generators.push(images(&fields, d, line)?);
                } else {
                    let (label, imgs) = fields
                        .split_first()
                        .ok_or_else(|| format!("line {line}: missing class label"))?;
                    classes.push(BundleClass {
                        label: (*label).to_string(),
                        representative: images(imgs, d, line)?,
                    });
                }
            }
            other => return Err(format!("line {line}: unknown keyword {other:?}")),
        }
    }
    let degree = degree.ok_or("missing `degree` line")?;
    if let Some(k) = kind {
        for c in &classes {
            ClassLabel::parse(&c.label, &k).map_err(|e| e.to_string())?;
        }
    }
    Ok(Bundle {
        name: name.unwrap_or_else(|| "bundle".into()),
        degree,
        order,
        kind,
        generators,
        classes,
        text: text.to_string(),
    })
}

pub fn read_bundle(path: &Path) -> Result<Bundle, GroupError> {
    let err = |msg: String| GroupError::Bundle {
        path: path.display().to_string(),
        msg,
    };
    let text = fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    parse_bundle(&text).map_err(err)
}

impl Bundle {
    /// Hex SHA-256 of the bundle text.
    pub fn digest(&self) -> String {
        let h = Sha256::digest(self.text.as_bytes());
        h.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn info(&self) -> GroupInfo {
        GroupInfo {
            kind: self.kind,
            excluded: self.kind.and_then(|k| k.exclusion()).map(str::to_string),
            ..GroupInfo::default()
        }
    }

    fn finish(&self, handle: GroupHandle) -> Result<GroupHandle, GroupError> {
        if let Some(claimed) = self.order {
            if claimed != handle.order() {
                return Err(GroupError::OrderMismatch {
                    computed: handle.order(),
                    claimed,
                });
            }
        }
        for c in &self.classes {
            if c.representative.order() != 3 || !handle.contains(&c.representative)? {
                return Err(GroupError::Bundle {
                    path: self.name.clone(),
                    msg: format!(
                        "class {} representative is not an order-3 group element",
                        c.label
                    ),
                });
            }
        }
        Ok(handle)
    }

    pub(crate) fn to_handle(&self) -> Result<GroupHandle, GroupError> {
        let h = GroupHandle::new(
            self.name.clone(),
            self.degree,
            self.generators.clone(),
            self.info(),
        )?;
        self.finish(h)
    }

    pub(crate) fn to_handle_with(&self, chain: StabilizerChain) -> Result<GroupHandle, GroupError> {
        if chain.degree() != self.degree {
            return self.to_handle();
        }
        let h = GroupHandle::with_chain(
            self.name.clone(),
            self.generators.clone(),
            chain,
            self.info(),
        )?;
        self.finish(h)
    }
}

/// Reads a bundle, builds and verifies its chain, and enforces any claimed order.
pub fn ingest_bundle(path: &Path) -> Result<GroupHandle, GroupError> {
    read_bundle(path)?.to_handle()
}

#[cfg(test)]
mod tests {
    use super::*;

    const A5: &str = "# Alt(5) by a 5-cycle and a 3-cycle\nname Alt(5)\ndegree 5\norder 60\ngen 1 2 3 4 0\ngen 1 2 0 3 4\n";

    #[test]
    fn alt5_bundle() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a5.bundle");
        fs::write(&p, A5).unwrap();
        assert_eq!(ingest_bundle(&p).unwrap().order(), 60);
    }

    #[test]
    fn order_mismatch_names_both_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.bundle");
        fs::write(&p, A5.replace("order 60", "order 61")).unwrap();
        let e = ingest_bundle(&p).unwrap_err();
        let msg = e.to_string();
        assert!(matches!(
            e,
            GroupError::OrderMismatch {
                computed: 60,
                claimed: 61
            }
        ));
        assert!(msg.contains("60") && msg.contains("61"), "{msg}");
    }

    #[test]
    fn parse_errors() {
        assert!(parse_bundle("gen 0 1").is_err());
        assert!(parse_bundle("degree 3\ngen 0 0 1").is_err());
        assert!(parse_bundle("degree 3\ngen 0 1").is_err());
        assert!(parse_bundle("degree 3\nfoo 1").is_err());
        let b = parse_bundle("degree 3\nfamily Alt 3\nclass (123) 1 2 0\n").unwrap();
        assert_eq!(b.classes.len(), 1);
    }
}
