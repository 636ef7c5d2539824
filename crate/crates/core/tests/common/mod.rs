//! Independent oracles shared by the integration tests. They only use the
//! library's graph representation and (for groups) its element list; every
//! property is re-evaluated here from first principles.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;

use choicegraph::colouring::{Colour, Colouring, Kind};
use choicegraph::graph::Graph;
use choicegraph::reduction::{PropertyTag, Target};
use choicegraph::symmetry::automorphisms;

/// All restricted growth strings of length `n` using at most `max_colours`
/// colours.
pub fn rgs_colourings(n: usize, max_colours: u32) -> Vec<Vec<Colour>> {
    fn extend(prefix: &mut Vec<Colour>, n: usize, max: u32, out: &mut Vec<Vec<Colour>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for c in 0..=next.min(max - 1) {
            prefix.push(c);
            extend(prefix, n, max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), n, max_colours, &mut out);
    out
}

fn edge_set(g: &Graph) -> BTreeSet<(usize, usize)> {
    g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
}

/// Every vertex permutation preserving adjacency, by exhaustive search.
pub fn brute_force_automorphisms(g: &Graph) -> BTreeSet<Vec<usize>> {
    let n = g.vertex_count();
    let edges = edge_set(g);
    (0..n)
        .permutations(n)
        .filter(|p| {
            edges
                .iter()
                .all(|&(u, v)| edges.contains(&(p[u].min(p[v]), p[u].max(p[v]))))
        })
        .collect()
}

/// Whether vertex permutation `p` maps every element to one of equal colour.
pub fn preserves(g: &Graph, p: &[usize], c: &Colouring) -> bool {
    match c.kind() {
        Kind::Vertex => (0..g.vertex_count()).all(|v| c.get(v) == c.get(p[v])),
        Kind::Edge => {
            let index: std::collections::BTreeMap<(usize, usize), usize> = g
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(u, v))| ((u.min(v), u.max(v)), e))
                .collect();
            g.edges().iter().enumerate().all(|(e, &(u, v))| {
                let image = (p[u].min(p[v]), p[u].max(p[v]));
                c.get(e) == c.get(index[&image])
            })
        }
    }
}

/// Distinguishing iff no non-identity automorphism preserves `c`, checked
/// against every element of the enumerated group.
pub fn distinguishing_by_group(g: &Graph, c: &Colouring) -> bool {
    let group = automorphisms(g).unwrap();
    let elements = group.elements().expect("group small enough to enumerate");
    let identity: Vec<usize> = (0..g.vertex_count()).collect();
    elements
        .iter()
        .filter(|p| **p != identity)
        .all(|p| !preserves(g, p, c))
}

pub fn proper_by_oracle(g: &Graph, c: &Colouring) -> bool {
    match c.kind() {
        Kind::Vertex => g.edges().iter().all(|&(u, v)| c.get(u) != c.get(v)),
        Kind::Edge => {
            let edges = g.edges();
            (0..edges.len()).all(|e| {
                (e + 1..edges.len()).all(|f| {
                    let (a, b) = edges[e];
                    let (x, y) = edges[f];
                    let incident = a == x || a == y || b == x || b == y;
                    !incident || c.get(e) != c.get(f)
                })
            })
        }
    }
}

pub fn property_by_oracle(g: &Graph, c: &Colouring, phi: PropertyTag) -> bool {
    assert_eq!(c.kind(), phi.kind);
    match phi.target {
        Target::Proper => proper_by_oracle(g, c),
        Target::Distinguishing => distinguishing_by_group(g, c),
    }
}

/// Irreducible iff recolouring any one colour class into any other used
/// colour loses `phi`.
pub fn irreducible_by_oracle(g: &Graph, c: &Colouring, phi: PropertyTag) -> bool {
    let image: BTreeSet<Colour> = c.colours().iter().copied().collect();
    image.iter().all(|&b| {
        image.iter().filter(|&&a| a != b).all(|&a| {
            let merged: Vec<Colour> = c.colours().iter().map(|&x| if x == b { a } else { x }).collect();
            !property_by_oracle(g, &Colouring::new(c.kind(), merged), phi)
        })
    })
}
