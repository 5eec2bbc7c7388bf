//! Randomized invariants across modules.

use std::sync::OnceLock;

use order3::classify::{
    centralizes_involution, normalizes_nontrivial_2subgroup, order3_class_records, two_group_order,
    ClassRecord, TwoGroupOrder,
};
use order3::cli::{CheckOutcome, Report};
use order3::field::prime_power;
use order3::groups::{construct, GroupName};
use order3::lie::{
    centralizer_verdict, normalizer_verdict, torus_orders, ClassDescriptor, ClassLabel, Family,
    GroupKind, TableFormat, TorusGroup, TorusLabel,
};
use order3::perm::{GroupHandle, Permutation, DEFAULT_CAP};
use proptest::prelude::*;

fn corpus() -> &'static [(GroupHandle, Vec<ClassRecord>)] {
    static C: OnceLock<Vec<(GroupHandle, Vec<ClassRecord>)>> = OnceLock::new();
    C.get_or_init(|| {
        [
            GroupName::Alt(6),
            GroupName::Alt(7),
            GroupName::PSL(2, 8),
            GroupName::PSL(2, 13),
            GroupName::PSL(3, 4),
            GroupName::PGL(3, 4),
            GroupName::PSU(3, 3),
            GroupName::FrobA4,
        ]
        .iter()
        .map(|n| {
            let h = construct(n).unwrap();
            let r = order3_class_records(&h, DEFAULT_CAP).unwrap();
            (h, r)
        })
        .collect()
    })
}

/// Product of generators chosen by `word`.
fn element(h: &GroupHandle, word: &[usize]) -> Permutation {
    let gens = h.generators();
    word.iter()
        .fold(Permutation::identity(h.degree()), |acc, &i| {
            acc.compose(&gens[i % gens.len()]).unwrap()
        })
}

fn prime_powers() -> impl Strategy<Value = u64> {
    (2u64..=1024).prop_filter("prime power", |&q| prime_power(q).is_some())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdicts_are_conjugation_invariant(g in 0..8usize, c in 0..8usize, word in prop::collection::vec(0..8usize, 0..24)) {
        let (h, recs) = &corpus()[g];
        let rec = &recs[c % recs.len()];
        let y = element(h, &word);
        let x = rec.representative.conjugate(&y).unwrap();
        prop_assert!(h.contains(&x).unwrap());
        prop_assert_eq!(centralizes_involution(h, &x, DEFAULT_CAP).unwrap().0, rec.centralizes);
        prop_assert_eq!(normalizes_nontrivial_2subgroup(h, &x, DEFAULT_CAP).unwrap().0, rec.normalizes);
    }

    #[test]
    fn random_words_are_members(g in 0..8usize, word in prop::collection::vec(0..8usize, 0..40)) {
        let (h, _) = &corpus()[g];
        prop_assert!(h.contains(&element(h, &word)).unwrap());
    }

    #[test]
    fn verdict_coherence(f in 0..Family::ALL.len(), q in prime_powers(), l in 0..16usize) {
        let family = Family::ALL[f];
        let param = match family {
            Family::Alt | Family::Sym => 5 + q % 12,
            Family::Ree => 27,
            Family::J3 | Family::J3Aut => 0,
            _ => q,
        };
        let kind = GroupKind::new(family, param).unwrap();
        prop_assume!(kind.exclusion().is_none());
        let labels = kind.labels();
        let d = ClassDescriptor::new(kind, labels[l % labels.len()].clone());
        if !normalizer_verdict(&d).unwrap().value {
            prop_assert!(!centralizer_verdict(&d).unwrap().value, "{d}");
        }
    }

    #[test]
    fn labels_round_trip(f in 0..Family::ALL.len(), q in prime_powers()) {
        let family = Family::ALL[f];
        let param = match family {
            Family::Alt | Family::Sym => 5 + q % 12,
            Family::Ree => 243,
            Family::J3 | Family::J3Aut => 0,
            _ => q,
        };
        let kind = GroupKind::new(family, param).unwrap();
        for l in kind.labels() {
            prop_assert_eq!(ClassLabel::parse(&l.to_string(), &kind).unwrap(), l);
        }
    }

    #[test]
    fn split_linear_torus_parity(q in prime_powers()) {
        let split = torus_orders(TorusGroup::PSL3, q)
            .into_iter()
            .find(|(l, _)| *l == TorusLabel::Split)
            .unwrap()
            .1;
        prop_assert_eq!(split % 2 == 1, q % 2 == 0);
    }

    #[test]
    fn reports_round_trip(
        cmd in "[ -~]{0,20}",
        cells in prop::collection::vec(prop::collection::vec("[ -~\n]{0,8}", 2), 0..5),
        checks in prop::collection::vec(("[a-z ]{1,8}", 0..3u8, 0..3u8), 0..4),
    ) {
        let mut r = Report::new(cmd).columns(&["a", "b"]);
        for row in cells {
            r.row(row);
        }
        for (n, e, a) in checks {
            r.check(CheckOutcome::new(n, e, a));
        }
        let back = Report::from_json(&r.render(TableFormat::Json)).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(r.pass, r.checks.iter().all(|c| c.pass));
    }
}

#[test]
fn records_obey_class_equation_and_monotonicity() {
    for (h, recs) in corpus() {
        for r in recs {
            assert_eq!(
                u128::from(r.class_size) * u128::from(r.centralizer_order),
                h.order(),
                "{}",
                h.name()
            );
            assert!(!r.centralizes || r.normalizes, "{}", h.name());
            if let Some(t) = &r.centralizer_witness {
                assert_eq!(t.order(), 2);
                assert!(t.commutes_with(&r.representative));
            }
            if let Some(w) = &r.normalizer_witness {
                let t = &w.involution;
                assert_eq!(t.order(), 2);
                let x = &r.representative;
                let xi = x.inverse();
                let trio = [
                    t.clone(),
                    t.conjugate(x).unwrap(),
                    t.conjugate(&xi).unwrap(),
                ];
                match two_group_order(&trio, 1 << 20) {
                    TwoGroupOrder::Order(n) => {
                        assert!(n >= 2 && n.is_power_of_two() && n == w.two_group_order)
                    }
                    other => panic!("{}: witness generates {other:?}", h.name()),
                }
            }
        }
    }
}
