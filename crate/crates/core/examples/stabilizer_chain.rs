//! Schreier-Sims for Alt(5) and a stream scan over its elements.

use order3::perm::{
    element_search, PermError, Permutation, SearchMode, SearchResult, StabilizerChain, DEFAULT_CAP,
};

fn main() -> Result<(), PermError> {
    let a = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]])?;
    let b = Permutation::from_cycles(5, &[&[0, 1, 2]])?;
    let chain = StabilizerChain::build(5, &[a.clone(), b.clone()])?;
    println!("base {:?}, order {}", chain.base(), chain.order());
    for level in chain.levels() {
        println!("  point {} orbit {:?}", level.base_point(), level.orbit());
    }

    let ab = a.compose(&b)?;
    println!("a then b = {ab}, order {}", ab.order());
    let odd = Permutation::from_cycles(5, &[&[0, 1]])?;
    println!("(0 1) in group: {}", chain.contains(&odd)?);

    let cube = |g: &[u16]| {
        (0..g.len()).any(|i| usize::from(g[i]) != i)
            && (0..g.len()).all(|i| usize::from(g[usize::from(g[usize::from(g[i])])]) == i)
    };
    if let SearchResult::Count(n) = element_search(&chain, DEFAULT_CAP, cube, SearchMode::Count)? {
        println!("elements of order 3: {n}");
    }
    Ok(())
}
