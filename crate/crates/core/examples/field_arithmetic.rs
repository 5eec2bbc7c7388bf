//! Arithmetic in GF(9) and GF(8) through log/Zech tables.

use order3::field::{field_of_order, FieldError};

fn main() -> Result<(), FieldError> {
    let f = field_of_order(9)?;
    let z = f.primitive();
    println!(
        "GF(9): characteristic {}, modulus {:?}",
        f.characteristic(),
        f.modulus()
    );
    for e in 0..8 {
        let a = f.pow(z, e)?;
        println!("z^{e} = {:?} (order {})", f.coeffs(a), f.element_order(a)?);
    }
    let a = f.add(z, f.one())?;
    println!(
        "(z + 1) * (z + 1)^-1 = {:?}",
        f.coeffs(f.mul(a, f.inv(a)?)?)
    );

    let g = field_of_order(8)?;
    let w = g.primitive();
    println!(
        "GF(8): frobenius(w) = {:?}, w^2 = {:?}",
        g.coeffs(g.frobenius(w, 1)?),
        g.coeffs(g.pow(w, 2)?)
    );
    Ok(())
}
