//! SL(3,4) acting on the 21 points of the projective plane over GF(4).

use order3::field::field_of_order;
use order3::matrix::{sl_generators, sl_order, FormKind, LinearAction, PointSpace};
use order3::perm::StabilizerChain;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = field_of_order(4)?;
    let action = LinearAction::new(FormKind::Linear, PointSpace::Projective, 3, 4, &f);
    let mats = sl_generators(3, 4)?;
    let perms = mats
        .iter()
        .map(|m| action.perm_of(m))
        .collect::<Result<Vec<_>, _>>()?;
    for (m, p) in mats.iter().zip(&perms) {
        println!(
            "det {:?}, charpoly {:?} -> {p}",
            f.coeffs(m.det()),
            m.charpoly()
        );
    }
    let chain = StabilizerChain::build(action.degree(), &perms)?;
    // SL(3,4) has centre of order 3, so the image is PSL(3,4).
    println!(
        "degree {}, |image| = {}, |SL(3,4)| = {}",
        action.degree(),
        chain.order(),
        sl_order(3, 4)
    );
    let back = action.lift(&perms[0]);
    println!(
        "lifted generator is scalar multiple: {}",
        back.inverse()
            .is_some_and(|b| b.mul(&mats[0]).is_ok_and(|m| m.is_scalar()))
    );
    Ok(())
}
