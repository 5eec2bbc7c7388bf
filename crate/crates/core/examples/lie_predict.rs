//! Symbolic verdicts without building any group, and the exception table.

use order3::lie::{
    emit_exception_tables, render_table, verdict, ClassDescriptor, Family, GroupKind, LieError,
    TableFormat,
};

fn main() -> Result<(), LieError> {
    for (family, q) in [
        (Family::PSL2, 8),
        (Family::PSL3, 4),
        (Family::PSU3, 8),
        (Family::G2, 9),
    ] {
        let kind = GroupKind::new(family, q)?;
        for label in kind.labels() {
            let v = verdict(&ClassDescriptor::new(kind, label.clone()))?;
            println!(
                "{kind} {label}: centralizes {} [{}], normalizes {} [{}]{}",
                v.centralizes.value,
                v.centralizes.rule,
                v.normalizes.value,
                v.normalizes.rule,
                if v.desk_verifiable {
                    ""
                } else {
                    " (not desk-verifiable)"
                }
            );
        }
    }
    print!(
        "{}",
        render_table(&emit_exception_tables(16)?, TableFormat::Markdown)
    );
    Ok(())
}
