use cayley_runs::bijections::{decode_partition, encode_partition, phi, phi_inverse, MarkedTree};
use cayley_runs::runs::{count_ascents, count_runs, run_starts_mapping, run_starts_tree};
use cayley_runs::Mapping;
use proptest::prelude::*;

fn mapping() -> impl Strategy<Value = Mapping> {
    (1usize..300).prop_flat_map(|n| {
        proptest::collection::vec(0..n as u32, n)
            .prop_map(|img| Mapping::from_zero_based(img).unwrap())
    })
}

proptest! {
    #[test]
    fn phi_inverts_phi_inverse(m in mapping()) {
        let marked = phi_inverse(&m);
        prop_assert_eq!(phi(&marked), m);
    }

    #[test]
    fn phi_inverse_inverts_phi(m in mapping(), w in any::<prop::sample::Index>()) {
        let tree = phi_inverse(&m).tree;
        let mark = w.index(tree.len()) + 1;
        let marked = MarkedTree::new(tree, mark).unwrap();
        prop_assert_eq!(phi_inverse(&phi(&marked)), marked);
    }

    #[test]
    fn phi_preserves_starts(m in mapping()) {
        let marked = phi_inverse(&m);
        prop_assert_eq!(run_starts_tree(&marked.tree), run_starts_mapping(&m));
        prop_assert_eq!(count_ascents(&marked.tree.to_mapping()), count_ascents(&m));
    }

    #[test]
    fn partition_round_trip(m in mapping()) {
        let (s, x) = encode_partition(&m);
        prop_assert_eq!(s.len(), count_runs(&m));
        prop_assert!(s.check_links(&x).is_ok());
        prop_assert_eq!(decode_partition(&s, &x).unwrap(), m);
    }
}
