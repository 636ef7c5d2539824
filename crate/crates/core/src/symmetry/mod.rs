//! Automorphism groups, colour-preserving subgroups, orbits, fixed and
//! stabilized vertex sets.

mod search;
mod union_find;

use num_bigint::BigUint;

use crate::colouring::{Colouring, Kind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::options::Options;

pub use search::Perm;
pub use union_find::UnionFind;

use search::{compose, transversal, Search};

/// A group of vertex permutations of one graph.
///
/// Always carries a generating set (a strong generating set relative to
/// `base`); when the order is at most the enumeration cap the elements are
/// listed too, sorted lexicographically by image vector so the identity comes
/// first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGroup {
    vertex_count: usize,
    base: Vec<usize>,
    generators: Vec<Perm>,
    order: BigUint,
    elements: Option<Vec<Perm>>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> Option<&[Perm]> {
        self.elements.as_deref()
    }

    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }

    /// Orbits under the group, each sorted, ordered by least member.
    pub fn orbit_partition(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertex_count);
        for g in &self.generators {
            for (v, &w) in g.iter().enumerate() {
                uf.union(v, w);
            }
        }
        uf.into_blocks()
    }

    /// Every element acts as the identity on `set`.
    pub fn is_fixed(&self, set: &[usize]) -> bool {
        self.generators
            .iter()
            .all(|g| set.iter().all(|&v| g[v] == v))
    }

    /// Every element maps `set` onto itself.
    pub fn is_stabilized(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.vertex_count];
        for &v in set {
            member[v] = true;
        }
        self.generators
            .iter()
            .all(|g| set.iter().all(|&v| member[g[v]]))
    }

    /// Vertices fixed by every element.
    pub fn fixed_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count)
            .filter(|&v| self.generators.iter().all(|g| g[v] == v))
            .collect()
    }
}

fn check_size(g: &Graph, opts: &Options) -> Result<()> {
    if g.vertex_count() > opts.caps.aut_vertices {
        return Err(Error::TooLarge(format!(
            "{} vertices exceeds the automorphism cap {}",
            g.vertex_count(),
            opts.caps.aut_vertices
        )));
    }
    Ok(())
}

fn build_group(search: &Search<'_>, n: usize, opts: &Options) -> AutomorphismGroup {
    let chain = search.chain(false);
    let order: BigUint = chain
        .orbit_sizes
        .iter()
        .fold(BigUint::from(1u32), |acc, &s| acc * BigUint::from(s));
    let elements = (order <= BigUint::from(opts.caps.enumeration)).then(|| {
        let mut elements: Vec<Perm> = vec![(0..n).collect()];
        for i in (0..chain.base.len()).rev() {
            // levels are processed bottom-up, so the stabilizer of the first `i`
            // base points is generated by the first `level_gens[i]` generators
            let gens = &chain.generators[..chain.level_gens[i]];
            let reps = transversal(chain.base[i], gens, n);
            elements = reps
                .iter()
                .flat_map(|u| elements.iter().map(move |h| compose(u, h)))
                .collect();
        }
        elements.sort_unstable();
        elements
    });
    AutomorphismGroup {
        vertex_count: n,
        base: chain.base,
        generators: chain.generators,
        order,
        elements,
    }
}

pub fn automorphisms(g: &Graph) -> Result<AutomorphismGroup> {
    automorphisms_with(g, &Options::default())
}

pub fn automorphisms_with(g: &Graph, opts: &Options) -> Result<AutomorphismGroup> {
    check_size(g, opts)?;
    Ok(build_group(&Search::new(g, None, None), g.vertex_count(), opts))
}

fn search_for<'g>(g: &'g Graph, c: &'g Colouring) -> Search<'g> {
    match c.kind() {
        Kind::Vertex => Search::new(g, Some(c.colours()), None),
        Kind::Edge => Search::new(g, None, Some(c.colours())),
    }
}

/// The subgroup of Aut(G) mapping every vertex (edge) to one of the same
/// colour.
pub fn preserving_automorphisms(g: &Graph, c: &Colouring) -> Result<AutomorphismGroup> {
    preserving_automorphisms_with(g, c, &Options::default())
}

pub fn preserving_automorphisms_with(
    g: &Graph,
    c: &Colouring,
    opts: &Options,
) -> Result<AutomorphismGroup> {
    c.check_on(g)?;
    check_size(g, opts)?;
    Ok(build_group(&search_for(g, c), g.vertex_count(), opts))
}

/// True iff the identity is the only automorphism preserving `c`.
pub fn is_distinguishing(g: &Graph, c: &Colouring) -> Result<bool> {
    is_distinguishing_with(g, c, &Options::default())
}

pub fn is_distinguishing_with(g: &Graph, c: &Colouring, opts: &Options) -> Result<bool> {
    c.check_on(g)?;
    check_size(g, opts)?;
    Ok(search_for(g, c).chain(true).generators.is_empty())
}

/// Whether `perm` preserves the colouring `c` of `g`.
pub fn preserves(g: &Graph, perm: &[usize], c: &Colouring) -> bool {
    match c.kind() {
        Kind::Vertex => (0..g.vertex_count()).all(|v| c.get(v) == c.get(perm[v])),
        Kind::Edge => g.edges().iter().enumerate().all(|(e, &(u, v))| {
            g.edge_id(perm[u], perm[v])
                .is_some_and(|f| c.get(e) == c.get(f))
        }),
    }
}

/// Whether `perm` is an automorphism of `g`.
pub fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    perm.len() == g.vertex_count() && Search::new(g, None, None).is_automorphism(perm)
}

/// The permutation of edge indices induced by a vertex automorphism.
pub fn edge_image(g: &Graph, perm: &[usize]) -> Vec<usize> {
    g.edges()
        .iter()
        .map(|&(u, v)| g.edge_id(perm[u], perm[v]).expect("not an automorphism"))
        .collect()
}
