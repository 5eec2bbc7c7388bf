use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::{verdict, ClassDescriptor, Family, GroupKind, LieError};
use crate::field::prime_power;

/// One exception row: a class failing at least one of the two properties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub family: String,
    pub parameter: u64,
    pub label: String,
    pub centralizes: bool,
    pub normalizes: bool,
    pub provenance: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(Self::Markdown),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(LieError::Unknown(format!("table format {s}"))),
        }
    }
}

fn params(family: Family, q_max: u64) -> Vec<u64> {
    match family {
        Family::Alt | Family::Sym => (5..=12).collect(),
        Family::J3 | Family::J3Aut => vec![0],
        Family::Ree => (1..)
            .step_by(2)
            .map(|k| 3u64.pow(k))
            .take_while(|&q| q <= q_max)
            .collect(),
        _ => (2..=q_max).filter(|&q| prime_power(q).is_some()).collect(),
    }
}

/// Every admissible class up to `q_max` (Alt/Sym up to degree 12, where the
/// exceptions end) failing either property, in family/parameter/label order.
pub fn emit_exception_tables(q_max: u64) -> Result<Vec<TableRow>, LieError> {
    if q_max > 1 << 10 {
        return Err(LieError::Inadmissible(format!(
            "q_max = {q_max} exceeds 1024"
        )));
    }
    let mut rows = Vec::new();
    for family in Family::ALL {
        for p in params(family, q_max) {
            let kind = GroupKind { family, param: p };
            if kind.exclusion().is_some() {
                continue;
            }
            let mut labels = kind.labels();
            labels.sort();
            for label in labels {
                let d = ClassDescriptor::new(kind, label);
                let v = verdict(&d)?;
                if v.centralizes.value && v.normalizes.value {
                    continue;
                }
                let mut provenance =
                    if v.normalizes.value || v.centralizes.rule == v.normalizes.rule {
                        v.centralizes.rule.to_string()
                    } else {
                        format!("{}; {}", v.centralizes.rule, v.normalizes.rule)
                    };
                if !v.desk_verifiable {
                    provenance.push_str("; not desk-verifiable");
                }
                rows.push(TableRow {
                    family: family.to_string(),
                    parameter: p,
                    label: d.label.to_string(),
                    centralizes: v.centralizes.value,
                    normalizes: v.normalizes.value,
                    provenance,
                });
            }
        }
    }
    Ok(rows)
}

pub fn render_table(rows: &[TableRow], format: TableFormat) -> String {
    let mut out = String::new();
    match format {
        TableFormat::Markdown => {
            out.push_str(
                "| family | parameter | label | centralizes | normalizes | provenance |\n",
            );
            out.push_str("|---|---|---|---|---|---|\n");
            for r in rows {
                writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} |",
                    r.family, r.parameter, r.label, r.centralizes, r.normalizes, r.provenance
                )
                .unwrap();
            }
        }
        TableFormat::Csv => {
            out.push_str("family,parameter,label,centralizes,normalizes,provenance\n");
            for r in rows {
                writeln!(
                    out,
                    "{},{},\"{}\",{},{},\"{}\"",
                    r.family, r.parameter, r.label, r.centralizes, r.normalizes, r.provenance
                )
                .unwrap();
            }
        }
        TableFormat::Json => {
            out = serde_json::to_string_pretty(rows).expect("rows serialize");
            out.push('\n');
        }
    }
    out
}
