//! PGU(3,8) on its 513 isotropic points has order-3 classes that normalize
//! no nontrivial 2-subgroup. This checks that verdict by a fixed-point count
//! that does not use the classifier's 2-group closure.
//!
//! Every involution fixes exactly one point, so a nontrivial 2-subgroup P
//! fixes exactly one point (P has a fixed point since 513 is odd, and the
//! fixed set of P lies inside that of any involution in P). Anything
//! normalizing P preserves that point. A fixed-point-free element of order 3
//! therefore normalizes no such P. Each such class is fixed-point-free.

use order3::classify::order3_class_records;
use order3::groups::{construct, GroupName};
use order3::perm::{element_search, SearchMode, SearchResult, DEFAULT_CAP};

fn fixed_points(g: &[u16]) -> usize {
    g.iter()
        .enumerate()
        .filter(|&(i, &v)| usize::from(v) == i)
        .count()
}

fn is_involution(g: &[u16]) -> bool {
    g.iter().enumerate().any(|(i, &v)| usize::from(v) != i)
        && g.iter()
            .enumerate()
            .all(|(i, &v)| usize::from(g[usize::from(v)]) == i)
}

#[test]
fn pgu38_split_class_normalizes_no_2subgroup() {
    let h = construct(&GroupName::PGU(3, 8)).unwrap();
    assert_eq!(h.degree(), 513);

    let count =
        |p: fn(&[u16]) -> bool| match element_search(h.chain(), DEFAULT_CAP, p, SearchMode::Count)
            .unwrap()
        {
            SearchResult::Count(n) => n,
            other => panic!("{other:?}"),
        };
    assert!(count(is_involution) > 0);
    assert_eq!(count(|g| is_involution(g) && fixed_points(g) != 1), 0);

    let recs = order3_class_records(&h, DEFAULT_CAP).unwrap();
    let lonely: Vec<_> = recs.iter().filter(|r| !r.normalizes).collect();
    assert!(!lonely.is_empty());
    for r in lonely {
        println!(
            "class size {}, centralizer {}",
            r.class_size, r.centralizer_order
        );
        assert_eq!(fixed_points(r.representative.images()), 0);
    }
}
