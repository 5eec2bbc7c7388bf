//! Order-3 classes of PSL(2,8) and PSU(3,3) with both verdicts and witnesses.

use order3::classify::{class_label, oracle_normalizes_2subgroup, order3_class_records};
use order3::groups::{construct, GroupName};
use order3::perm::DEFAULT_CAP;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in [GroupName::PSL(2, 8), GroupName::PSU(3, 3)] {
        let h = construct(&name)?;
        println!("{name} (order {})", h.order());
        for r in order3_class_records(&h, DEFAULT_CAP)? {
            let label = class_label(&h, &r.representative).map_or("?".into(), |l| l.to_string());
            println!(
                "  {label:<12} |C(x)| = {:<4} centralizes {:<5} normalizes {:<5} oracle {}",
                r.centralizer_order,
                r.centralizes,
                r.normalizes,
                oracle_normalizes_2subgroup(&h, &r.representative)?
            );
            if let Some(w) = &r.normalizer_witness {
                println!(
                    "    2-group of order {} from {}",
                    w.two_group_order, w.involution
                );
            }
        }
    }
    Ok(())
}
