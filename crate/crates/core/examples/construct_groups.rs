//! Named groups and a generator bundle read from disk.

use std::path::Path;

use order3::groups::{construct, ingest_bundle, GroupError, GroupName};

fn main() -> Result<(), GroupError> {
    for name in [
        "Alt(7)",
        "PSL(2,27)",
        "PSU(3,4)",
        "PGL(3,4)",
        "Sp4(3)",
        "PGammaL2(8)",
        "FrobA4",
    ] {
        let name: GroupName = name.parse()?;
        let h = construct(&name)?;
        println!(
            "{:<12} degree {:>4}  order {:>8}  excluded {:?}",
            h.name(),
            h.degree(),
            h.order(),
            h.info().excluded
        );
    }
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/a5.bundle");
    let h = ingest_bundle(&path)?;
    println!("bundle {}: order {}", h.name(), h.order());
    Ok(())
}
