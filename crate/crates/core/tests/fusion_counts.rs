use qkernel::fusion_basis::{
    build_alternative_graph, build_lollipop_tree, count_colorings, enumerate_colorings,
    transfer_count_lollipop,
};
use qkernel::Prime;

#[test]
fn graph_independence_of_counts() {
    for g in 2..=5 {
        for p in [5u32, 7, 11] {
            let p = Prime::new(p).unwrap();
            let tree = build_lollipop_tree(g).unwrap();
            let alt = build_alternative_graph(g).unwrap();
            let plain_tree = count_colorings(&tree, p, false).unwrap();
            let plain_alt = count_colorings(&alt, p, false).unwrap();
            let small = count_colorings(&tree, p, true).unwrap();
            let oracle = transfer_count_lollipop(g, p).unwrap();
            assert_eq!(plain_tree, plain_alt, "g={g} p={p}");
            assert_eq!(plain_tree, small, "g={g} p={p}");
            assert_eq!(u128::from(plain_tree), oracle, "g={g} p={p}");
        }
    }
}

#[test]
fn counts_grow_with_p() {
    for g in 2..=4 {
        let counts: Vec<u64> = [5u32, 7, 11, 13]
            .iter()
            .map(|&p| count_colorings(&build_lollipop_tree(g).unwrap(), Prime::new(p).unwrap(), true).unwrap())
            .collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{counts:?}");
    }
}

#[test]
fn parity_split_partitions() {
    for g in 2..=5 {
        for p in [5u32, 7] {
            let b = enumerate_colorings(&build_lollipop_tree(g).unwrap(), Prime::new(p).unwrap(), true)
                .unwrap();
            let (odd, even) = b.parity_split().unwrap();
            assert_eq!(odd.len() + even.len(), b.len());
            let mut all: Vec<usize> = odd.iter().chain(&even).copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..b.len()).collect::<Vec<_>>());
            if g == 2 {
                assert!(odd.is_empty());
            }
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let t = build_lollipop_tree(4).unwrap();
    let p = Prime::new(7).unwrap();
    assert_eq!(
        enumerate_colorings(&t, p, true).unwrap(),
        enumerate_colorings(&t, p, true).unwrap()
    );
}
