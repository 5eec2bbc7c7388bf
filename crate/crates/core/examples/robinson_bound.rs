//! Defect-zero blocks from a degree file against the order-3 lower bound.

use std::path::Path;

use order3::groups::{construct, GroupName};
use order3::perm::DEFAULT_CAP;
use order3::robinson::{check_bound, DegreeData};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for (name, file) in [
        (GroupName::Alt(5), "a5.deg"),
        (GroupName::PSL(2, 7), "psl27.deg"),
        (GroupName::PSL(2, 8), "psl28.deg"),
    ] {
        let data = DegreeData::read(&dir.join(file))?;
        let r = check_bound(&construct(&name)?, &data, DEFAULT_CAP)?;
        println!(
            "{}: {} <= {} ({})",
            r.group,
            r.lower_bound,
            r.defect_zero_blocks,
            if r.pass { "holds" } else { "violated" }
        );
    }
    let bad = DegreeData::read(&dir.join("corrupt.deg"));
    println!("corrupt.deg: {}", bad.unwrap_err());
    Ok(())
}
