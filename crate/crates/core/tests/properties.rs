//! Randomized invariants: parsing, bijections, species counting and
//! transport, and the presentation file format.

use proptest::prelude::*;

use cyclic_operads::cli::export_zoo;
use cyclic_operads::format::PresentationFile;
use cyclic_operads::labels::atom_pool;
use cyclic_operads::zoo::{Signature, ZooModel};
use cyclic_operads::{Bijection, FiniteSet, Label, Species, Structure};

fn atom() -> impl Strategy<Value = Label> {
    "[a-z][a-z0-9_]{0,3}".prop_map(|s| Label::atom(&s).unwrap())
}

fn label() -> impl Strategy<Value = Label> {
    atom().prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..3)
                .prop_map(|v| Label::star(&FiniteSet::new(v))),
            prop::collection::vec(inner, 1..3)
                .prop_map(|v| Label::block(&FiniteSet::new(v)).unwrap()),
        ]
    })
}

fn finite_set() -> impl Strategy<Value = FiniteSet> {
    prop::collection::vec(label(), 0..5).prop_map(FiniteSet::new)
}

/// A permutation of the first `n` atoms, as a bijection onto them.
fn permutation(n: usize) -> impl Strategy<Value = Bijection> {
    Just(atom_pool(n))
        .prop_shuffle()
        .prop_map(move |image| Bijection::from_pairs(atom_pool(n).into_iter().zip(image)).unwrap())
}

fn species() -> impl Strategy<Value = Species> {
    (0usize..4)
        .prop_map(Species::cardinality)
        .prop_recursive(3, 8, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(s, t)| Species::sum(vec![s, t])),
                (inner.clone(), inner.clone()).prop_map(|(s, t)| Species::product(&s, &t)),
                inner.clone().prop_map(|s| s.derivative()),
                inner.prop_map(|s| s.pointing()),
            ]
        })
}

fn set(n: usize) -> FiniteSet {
    FiniteSet::new(atom_pool(n))
}

proptest! {
    #[test]
    fn labels_round_trip(l in label()) {
        prop_assert_eq!(Label::parse(&l.to_string()).unwrap(), l);
    }

    #[test]
    fn sets_round_trip_and_stay_sorted(x in finite_set()) {
        prop_assert_eq!(FiniteSet::parse(&x.to_string()).unwrap(), x.clone());
        prop_assert!(x.as_slice().windows(2).all(|w| w[0] < w[1]));
        prop_assert!(!x.contains(&x.star()));
    }

    #[test]
    fn bijection_laws((s, t) in (0usize..6).prop_flat_map(|n| (permutation(n), permutation(n)))) {
        let id = Bijection::identity(s.domain());
        prop_assert_eq!(s.compose(&s.inverse()).unwrap(), id.clone());
        prop_assert_eq!(s.inverse().compose(&s).unwrap(), id.clone());
        prop_assert_eq!(s.compose(&id).unwrap(), s.clone());
        let st = s.compose(&t).unwrap();
        for y in t.domain().iter() {
            prop_assert_eq!(st.apply(y), s.apply(t.apply(y).unwrap()));
            prop_assert_eq!(s.preimage(s.apply(y).unwrap()), Some(y));
        }
    }

    #[test]
    fn counting_identities(s in species(), t in species(), n in 0usize..4) {
        let x = set(n);
        let by_split: usize = x.subsets().iter().map(|x1| s.count(x1) * t.count(&x.difference(x1))).sum();
        prop_assert_eq!(Species::product(&s, &t).count(&x), by_split);
        prop_assert_eq!(Species::sum(vec![s.clone(), t.clone()]).count(&x), s.count(&x) + t.count(&x));
        prop_assert_eq!(s.derivative().count(&x), s.count(&x.with_star()));
        prop_assert_eq!(s.pointing().count(&x), n * s.count(&x));
    }

    #[test]
    fn transport_is_functorial(
        s in species(),
        (sigma, tau) in (0usize..4).prop_flat_map(|n| (permutation(n), permutation(n))),
    ) {
        let x = sigma.codomain().clone();
        let values = s.eval(&x);
        let mut images = Vec::new();
        for f in values.iter() {
            let moved = s.transport(&sigma, f).unwrap();
            prop_assert!(s.contains(&x, &moved));
            prop_assert_eq!(s.transport(&Bijection::identity(&x), f).unwrap(), f.clone());
            let both = s.transport(&sigma.compose(&tau).unwrap(), f).unwrap();
            prop_assert_eq!(both, s.transport(&tau, &moved).unwrap());
            images.push(moved);
        }
        images.sort();
        images.dedup();
        prop_assert_eq!(images.len(), values.len());
    }

    #[test]
    fn structures_round_trip(s in species(), n in 0usize..4) {
        for f in s.eval(&set(n)).iter() {
            prop_assert_eq!(Structure::parse(&f.to_string()).unwrap(), f.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn presentation_files_round_trip(which in 0usize..3, cap in 2usize..=4) {
        let model = match which {
            0 => ZooModel::Comm,
            1 => ZooModel::CyclicOrders,
            _ => ZooModel::FreeCyclic(Signature::ternary(cap)),
        };
        let text = export_zoo(&model, cap).unwrap().render();
        let parsed = PresentationFile::parse(&text).unwrap();
        prop_assert_eq!(parsed.render(), text);
        prop_assert!(parsed.load().is_ok());
    }
}
