//! Property tests of the graph, symmetry, colouring, reduction and oracle
//! layers against the exhaustive oracles in `common`.

mod common;

use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;

use choicegraph::colouring::{is_proper, Colour, Colouring, Kind};
use choicegraph::graph::Graph;
use choicegraph::oracle::{chromatic_index, chromatic_number, distinguishing_number};
use choicegraph::reduction::{enumerate_chain, PropertyTag};
use choicegraph::symmetry::automorphisms;

use common::{brute_force_automorphisms, distinguishing_by_group, proper_by_oracle, rgs_colourings};

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &p)| p)
        .collect();
    Graph::from_indices((0..n).map(|i| format!("v{i}")).collect(), edges).unwrap()
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, mask)| graph_from_mask(n, mask))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn automorphisms_match_brute_force(g in small_graph(7)) {
        let group = automorphisms(&g).unwrap();
        let elements: BTreeSet<Vec<usize>> =
            group.elements().unwrap().iter().cloned().collect();
        let expected = brute_force_automorphisms(&g);
        prop_assert_eq!(group.order_u64(), Some(expected.len() as u64));
        prop_assert_eq!(elements, expected);
    }

    #[test]
    fn degree_sum_is_twice_edge_count(g in small_graph(9)) {
        let sum: usize = (0..g.vertex_count()).map(|v| g.degree_of(v)).sum();
        prop_assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn balls_grow_with_radius(g in small_graph(8), r in 0usize..4) {
        for v in 0..g.vertex_count() {
            let inner: BTreeSet<usize> = g.ball_of(v, r).into_iter().collect();
            let outer: BTreeSet<usize> = g.ball_of(v, r + 1).into_iter().collect();
            prop_assert!(inner.contains(&v));
            prop_assert!(inner.is_subset(&outer));
        }
    }

    #[test]
    fn properness_ignores_colour_names(g in small_graph(7), seed in any::<u64>(), shift in 1u32..50) {
        let colours: Vec<Colour> = (0..g.vertex_count()).map(|v| ((seed >> (2 * v)) & 3) as Colour).collect();
        let c = Colouring::new(Kind::Vertex, colours);
        let renamed = c.map_colours(|x| 3 * x + shift);
        let proper = is_proper(&g, &c).unwrap();
        prop_assert_eq!(proper, proper_by_oracle(&g, &c));
        prop_assert_eq!(proper, is_proper(&g, &renamed).unwrap());
    }

    #[test]
    fn oracle_witnesses_reverify(g in small_graph(6)) {
        let chi = chromatic_number(&g).unwrap();
        prop_assert_eq!(chi.witness.colour_count(), chi.value);
        prop_assert!(proper_by_oracle(&g, &chi.witness));
        let d = distinguishing_number(&g).unwrap();
        prop_assert_eq!(d.witness.colour_count(), d.value);
        prop_assert!(distinguishing_by_group(&g, &d.witness));
        // no colouring with fewer colours does the job
        if chi.value > 1 {
            prop_assert!(rgs_colourings(g.vertex_count(), chi.value as u32 - 1)
                .into_iter()
                .all(|c| !proper_by_oracle(&g, &Colouring::new(Kind::Vertex, c))));
        }
        if d.value > 1 {
            prop_assert!(rgs_colourings(g.vertex_count(), d.value as u32 - 1)
                .into_iter()
                .all(|c| !distinguishing_by_group(&g, &Colouring::new(Kind::Vertex, c))));
        }
        if g.edge_count() > 0 {
            let idx = chromatic_index(&g).unwrap();
            prop_assert!(proper_by_oracle(&g, &idx.witness));
            prop_assert_eq!(idx.witness.colour_count(), idx.value);
        }
    }
}

/// The chain of `c` is every recolouring by an idempotent map of its image.
fn chain_by_idempotents(c: &Colouring) -> BTreeSet<Vec<Colour>> {
    let image: Vec<Colour> = c.image().into_iter().collect();
    let n = image.len();
    (0..n)
        .map(|_| 0..n)
        .multi_cartesian_product()
        .filter(|f| (0..n).all(|i| f[f[i]] == f[i]))
        .map(|f| {
            c.colours()
                .iter()
                .map(|x| image[f[image.iter().position(|y| y == x).unwrap()]])
                .collect()
        })
        .collect()
}

#[test]
fn chains_are_the_idempotent_recolourings() {
    for n in 1..=6 {
        for colours in rgs_colourings(n, 5) {
            let base = Colouring::new(Kind::Vertex, colours.iter().map(|x| 2 * x + 1).collect());
            let chain: BTreeSet<Vec<Colour>> = enumerate_chain(&base)
                .unwrap()
                .into_iter()
                .map(|e| e.colouring.into_colours())
                .collect();
            assert_eq!(chain, chain_by_idempotents(&base), "base {:?}", base.colours());
        }
    }
}

#[test]
fn property_tags_agree_with_oracles() {
    for mask in 0..64u64 {
        let g = graph_from_mask(4, mask);
        for colours in rgs_colourings(4, 3) {
            let c = Colouring::new(Kind::Vertex, colours);
            assert_eq!(PropertyTag::PV.holds(&g, &c).unwrap(), proper_by_oracle(&g, &c));
            assert_eq!(PropertyTag::DV.holds(&g, &c).unwrap(), distinguishing_by_group(&g, &c));
        }
    }
}
