//! Reductions, the closure chain of a colouring, its well-ordering, and
//! irreducible colourings for a property.
//!
//! A reduction recolours every element of colour `b` with another colour `a`
//! already in use. Repeated reductions only merge colour classes, so every
//! member of the chain of `c` is a coarsening of the classes of `c` in which
//! each merged block carries the colour of one of its base classes.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::colouring::{is_proper, Colour, Colouring, Kind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::options::Options;
use crate::symmetry::is_distinguishing_with;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Proper,
    Distinguishing,
}

/// A property of colourings: proper or distinguishing, of vertices or edges.
/// Short codes: `pv`, `pe`, `dv`, `de`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropertyTag {
    pub target: Target,
    pub kind: Kind,
}

impl PropertyTag {
    pub const DV: PropertyTag = PropertyTag {
        target: Target::Distinguishing,
        kind: Kind::Vertex,
    };
    pub const DE: PropertyTag = PropertyTag {
        target: Target::Distinguishing,
        kind: Kind::Edge,
    };
    pub const PV: PropertyTag = PropertyTag {
        target: Target::Proper,
        kind: Kind::Vertex,
    };
    pub const PE: PropertyTag = PropertyTag {
        target: Target::Proper,
        kind: Kind::Edge,
    };

    pub fn new(target: Target, kind: Kind) -> Self {
        PropertyTag { target, kind }
    }

    pub fn holds(&self, g: &Graph, c: &Colouring) -> Result<bool> {
        self.holds_with(g, c, &Options::default())
    }

    pub fn holds_with(&self, g: &Graph, c: &Colouring, opts: &Options) -> Result<bool> {
        c.check_domain(g, self.kind)?;
        match self.target {
            Target::Proper => is_proper(g, c),
            Target::Distinguishing => is_distinguishing_with(g, c, opts),
        }
    }
}

impl fmt::Display for PropertyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.target {
            Target::Proper => 'p',
            Target::Distinguishing => 'd',
        };
        let k = match self.kind {
            Kind::Vertex => 'v',
            Kind::Edge => 'e',
        };
        write!(f, "{t}{k}")
    }
}

impl FromStr for PropertyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dv" => Ok(PropertyTag::DV),
            "de" => Ok(PropertyTag::DE),
            "pv" => Ok(PropertyTag::PV),
            "pe" => Ok(PropertyTag::PE),
            other => Err(Error::Parse(format!("unknown property `{other}`"))),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proper" => Ok(Target::Proper),
            "distinguishing" => Ok(Target::Distinguishing),
            other => Err(Error::Parse(format!("unknown target `{other}`"))),
        }
    }
}

/// Recolours every `b`-coloured element with `a`.
pub fn reduce(c: &Colouring, b: Colour, a: Colour) -> Result<Colouring> {
    if a == b {
        return Err(Error::SameColour(a));
    }
    let image = c.image();
    for colour in [b, a] {
        if !image.contains(&colour) {
            return Err(Error::ColourNotInImage(colour));
        }
    }
    let colours = c
        .colours()
        .iter()
        .map(|&x| if x == b { a } else { x })
        .collect();
    Colouring::with_alpha(c.kind(), colours, c.alpha())
}

/// All ordered pairs `(b, a)` of distinct image colours, lexicographic.
pub fn reduction_pairs(c: &Colouring) -> Vec<(Colour, Colour)> {
    let image: Vec<Colour> = c.image().into_iter().collect();
    let mut out = Vec::with_capacity(image.len() * image.len().saturating_sub(1));
    for &b in &image {
        for &a in &image {
            if a != b {
                out.push((b, a));
            }
        }
    }
    out
}

/// A member of the chain of a base colouring, with the base colours merged
/// into each of its live colours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainElement {
    pub colouring: Colouring,
    pub merge_partition: BTreeMap<Colour, BTreeSet<Colour>>,
}

impl ChainElement {
    /// Errors with `DifferentBase` unless `colouring` coarsens `base`.
    pub fn new(colouring: Colouring, base: &Colouring) -> Result<ChainElement> {
        if colouring.len() != base.len() || colouring.kind() != base.kind() {
            return Err(Error::DifferentBase);
        }
        let mut class_colour: BTreeMap<Colour, Colour> = BTreeMap::new();
        for (&b, &d) in base.colours().iter().zip(colouring.colours()) {
            if *class_colour.entry(b).or_insert(d) != d {
                return Err(Error::DifferentBase);
            }
        }
        let mut merge_partition: BTreeMap<Colour, BTreeSet<Colour>> = BTreeMap::new();
        for (b, d) in class_colour {
            merge_partition.entry(d).or_default().insert(b);
        }
        Ok(ChainElement {
            colouring,
            merge_partition,
        })
    }

}

fn check_chain_caps(c: &Colouring, opts: &Options) -> Result<()> {
    let image = c.colour_count();
    if image > opts.caps.chain_colours || c.len() > opts.caps.chain_domain {
        return Err(Error::TooLarge(format!(
            "chain of a colouring with {image} colours on {} elements (caps {} / {})",
            c.len(),
            opts.caps.chain_colours,
            opts.caps.chain_domain
        )));
    }
    Ok(())
}

/// The closure of `c` under reductions, deduplicated by assignment, in
/// breadth-first discovery order (so `c` comes first).
pub fn enumerate_chain(c: &Colouring) -> Result<Vec<ChainElement>> {
    enumerate_chain_with(c, &Options::default())
}

pub fn enumerate_chain_with(c: &Colouring, opts: &Options) -> Result<Vec<ChainElement>> {
    check_chain_caps(c, opts)?;
    let mut seen: HashSet<Vec<Colour>> = HashSet::new();
    let mut order: Vec<Colouring> = vec![c.clone()];
    seen.insert(c.colours().to_vec());
    let mut frontier = 0;
    while frontier < order.len() {
        let d = order[frontier].clone();
        frontier += 1;
        for (b, a) in reduction_pairs(&d) {
            let r = reduce(&d, b, a)?;
            if seen.insert(r.colours().to_vec()) {
                order.push(r);
            }
        }
    }
    order
        .into_iter()
        .map(|d| ChainElement::new(d, c))
        .collect()
}

/// The well-ordering of the chain.
///
/// Different images: scanning colours upward, at the first colour used by
/// exactly one of the two, the one lacking it is smaller. Equal images: at
/// the least colour whose preimages differ, compare the least base colour in
/// each block that the other block lacks; a missing witness counts as larger
/// than every colour.
pub fn compare(e1: &ChainElement, e2: &ChainElement, base: &Colouring) -> Result<Ordering> {
    for e in [e1, e2] {
        if ChainElement::new(e.colouring.clone(), base)?.merge_partition != e.merge_partition {
            return Err(Error::DifferentBase);
        }
    }
    Ok(compare_unchecked(e1, e2))
}

pub(crate) fn compare_unchecked(e1: &ChainElement, e2: &ChainElement) -> Ordering {
    let mut keys1 = e1.merge_partition.keys().peekable();
    let mut keys2 = e2.merge_partition.keys().peekable();
    loop {
        match (keys1.peek(), keys2.peek()) {
            (Some(a), Some(b)) if a == b => {
                keys1.next();
                keys2.next();
            }
            // the smaller colour is used by exactly one side; the other
            // side lacks it and is smaller
            (Some(a), Some(b)) => return if a < b { Ordering::Greater } else { Ordering::Less },
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (None, None) => break,
        }
    }
    for (b1, b2) in e1.merge_partition.values().zip(e2.merge_partition.values()) {
        if b1 == b2 {
            continue;
        }
        let delta1 = b1.difference(b2).next();
        let delta2 = b2.difference(b1).next();
        return match (delta1, delta2) {
            (Some(d1), Some(d2)) => d1.cmp(d2),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!("distinct blocks"),
        };
    }
    Ordering::Equal
}

/// `c` satisfies `phi` and no single reduction of it does.
pub fn is_irreducible(g: &Graph, c: &Colouring, phi: PropertyTag) -> Result<bool> {
    is_irreducible_with(g, c, phi, &Options::default())
}

pub fn is_irreducible_with(
    g: &Graph,
    c: &Colouring,
    phi: PropertyTag,
    opts: &Options,
) -> Result<bool> {
    if !phi.holds_with(g, c, opts)? {
        return Err(Error::PropertyNotSatisfied(phi.to_string()));
    }
    let pairs = reduction_pairs(c);
    let found = opts.exec.position_first(&pairs, |&(b, a)| {
        let d = reduce(c, b, a).expect("pair from image");
        phi.holds_with(g, &d, opts).unwrap_or(false)
    });
    Ok(found.is_none())
}

/// Result of greedy reduction: the irreducible colouring and the `(b, a)`
/// reductions applied, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub colouring: Colouring,
    pub steps: Vec<(Colour, Colour)>,
}

/// Applies the lexicographically least `phi`-preserving reduction until none
/// is left.
pub fn find_irreducible_greedy(g: &Graph, c: &Colouring, phi: PropertyTag) -> Result<Reduced> {
    find_irreducible_greedy_with(g, c, phi, &Options::default())
}

pub fn find_irreducible_greedy_with(
    g: &Graph,
    c: &Colouring,
    phi: PropertyTag,
    opts: &Options,
) -> Result<Reduced> {
    if !phi.holds_with(g, c, opts)? {
        return Err(Error::PropertyNotSatisfied(phi.to_string()));
    }
    let mut current = c.clone();
    let mut steps = Vec::new();
    loop {
        let pairs = reduction_pairs(&current);
        let next = opts.exec.find_map_first(&pairs, |&(b, a)| {
            let d = reduce(&current, b, a).expect("pair from image");
            phi.holds_with(g, &d, opts)
                .unwrap_or(false)
                .then_some((b, a, d))
        });
        match next {
            Some((b, a, d)) => {
                steps.push((b, a));
                current = d;
            }
            None => {
                return Ok(Reduced {
                    colouring: current,
                    steps,
                })
            }
        }
    }
}

/// The least member of the chain of `c` that satisfies `phi`.
pub fn find_least_in_chain(g: &Graph, c: &Colouring, phi: PropertyTag) -> Result<ChainElement> {
    find_least_in_chain_with(g, c, phi, &Options::default())
}

pub fn find_least_in_chain_with(
    g: &Graph,
    c: &Colouring,
    phi: PropertyTag,
    opts: &Options,
) -> Result<ChainElement> {
    if !phi.holds_with(g, c, opts)? {
        return Err(Error::PropertyNotSatisfied(phi.to_string()));
    }
    let chain = enumerate_chain_with(c, opts)?;
    let mask = opts
        .exec
        .map(&chain, |e| phi.holds_with(g, &e.colouring, opts).unwrap_or(false));
    chain
        .into_iter()
        .zip(mask)
        .filter_map(|(e, ok)| ok.then_some(e))
        .min_by(compare_unchecked)
        .ok_or_else(|| Error::Invariant("base colouring vanished from its chain".into()))
}
