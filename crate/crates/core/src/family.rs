//! Finite truncations of the spine-ray family graphs and the double stars.
//!
//! A family graph has a spine `z0 - z1 - ... - z(n-1)`, a rung `zi - z'i` at
//! every spine vertex and the members of `A_i` hanging off `z'i` (as pendant
//! leaves in G_A, as a pendant clique in H_A). The infinite ray beyond
//! `z(n-1)` is emulated by a tail path `z(n-1) - t0 - t1 - ...`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::options::Options;
use crate::symmetry::{automorphisms_with, AutomorphismGroup};

pub const DEFAULT_TAIL: usize = 3;

pub fn z_name(i: usize) -> String {
    format!("z{i}")
}

pub fn z_prime_name(i: usize) -> String {
    format!("z'{i}")
}

pub fn tail_name(j: usize) -> String {
    format!("t{j}")
}

pub const X_PRIME: &str = "x'";
pub const Y_PRIME: &str = "y'";

/// `z<digits>`, `z'<digits>`, `t<digits>`, `x'` and `y'` are generated names.
pub fn is_reserved(id: &str) -> bool {
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    id == X_PRIME
        || id == Y_PRIME
        || id.strip_prefix("z'").is_some_and(digits)
        || id.strip_prefix('z').is_some_and(digits)
        || id.strip_prefix('t').is_some_and(digits)
}

/// An ordered truncation `A_0, ..., A_(n-1)` of an acceptable family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AcceptableFamilySpec {
    pub sets: Vec<Vec<String>>,
    #[serde(default = "default_tail")]
    pub tail_length: usize,
}

fn default_tail() -> usize {
    DEFAULT_TAIL
}

impl AcceptableFamilySpec {
    pub fn new(sets: Vec<Vec<String>>, tail_length: usize) -> Result<Self> {
        let spec = AcceptableFamilySpec { sets, tail_length };
        spec.validate()?;
        Ok(spec)
    }

    /// Sets named `a{i}_{j}` with the given sizes.
    pub fn from_sizes(sizes: &[usize], tail_length: usize) -> Result<Self> {
        let sets = sizes
            .iter()
            .enumerate()
            .map(|(i, &s)| (0..s).map(|j| format!("a{i}_{j}")).collect())
            .collect();
        AcceptableFamilySpec::new(sets, tail_length)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sets.is_empty() {
            return Err(Error::InvalidSpec("family has no sets".into()));
        }
        let mut seen = BTreeSet::new();
        for (i, set) in self.sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidSpec(format!("set {i} is empty")));
            }
            for id in set {
                if is_reserved(id) {
                    return Err(Error::InvalidSpec(format!("`{id}` is a reserved name")));
                }
                if !seen.insert(id.as_str()) {
                    return Err(Error::InvalidSpec(format!("`{id}` appears twice")));
                }
            }
        }
        Ok(())
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Largest member size; the family is k-acceptable iff this is at most k.
    pub fn max_size(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_k_acceptable(&self, k: usize) -> bool {
        self.max_size() <= k
    }

    /// Short key like `[1,2,3]/t2`, used to sort reports.
    pub fn key(&self) -> String {
        let sizes: Vec<String> = self.sizes().iter().map(usize::to_string).collect();
        format!("[{}]/t{}", sizes.join(","), self.tail_length)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyVariant {
    GA,
    HA,
}

impl fmt::Display for FamilyVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyVariant::GA => "GA",
            FamilyVariant::HA => "HA",
        })
    }
}

impl FromStr for FamilyVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "GA" | "ga" | "G" => Ok(FamilyVariant::GA),
            "HA" | "ha" | "H" => Ok(FamilyVariant::HA),
            other => Err(Error::Parse(format!("unknown family variant `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Family(usize),
    Z(usize),
    ZPrime(usize),
    Tail(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyGraph {
    pub graph: Graph,
    pub spec: AcceptableFamilySpec,
    pub variant: FamilyVariant,
    pub roles: Vec<Role>,
    /// Vertex indices of each `A_i`, in spec order.
    pub family: Vec<Vec<usize>>,
    pub z: Vec<usize>,
    pub z_prime: Vec<usize>,
    pub tail: Vec<usize>,
}

impl FamilyGraph {
    /// Spine followed by tail: the path coloured alternately by the transfers.
    pub fn ray(&self) -> Vec<usize> {
        self.z.iter().chain(&self.tail).copied().collect()
    }

    /// Edge ids along the ray, in order.
    pub fn ray_edges(&self) -> Vec<usize> {
        self.ray()
            .windows(2)
            .map(|w| self.graph.edge_id(w[0], w[1]).unwrap())
            .collect()
    }

    /// Edge id of `a - z'i` for every member `a` of `A_i`.
    pub fn pendant_edge(&self, a: usize) -> usize {
        match self.roles[a] {
            Role::Family(i) => self.graph.edge_id(a, self.z_prime[i]).unwrap(),
            other => panic!("vertex {a} has role {other:?}, not a family member"),
        }
    }
}

fn build_family(spec: &AcceptableFamilySpec, variant: FamilyVariant) -> Result<FamilyGraph> {
    spec.validate()?;
    let n = spec.len();
    let mut names = Vec::new();
    let mut roles = Vec::new();
    let mut family = Vec::with_capacity(n);
    for (i, set) in spec.sets.iter().enumerate() {
        let mut ids = Vec::with_capacity(set.len());
        for id in set {
            ids.push(names.len());
            names.push(id.clone());
            roles.push(Role::Family(i));
        }
        family.push(ids);
    }
    let mut push = |name: String, role: Role, names: &mut Vec<String>| {
        names.push(name);
        roles.push(role);
        names.len() - 1
    };
    let z: Vec<usize> = (0..n).map(|i| push(z_name(i), Role::Z(i), &mut names)).collect();
    let z_prime: Vec<usize> = (0..n)
        .map(|i| push(z_prime_name(i), Role::ZPrime(i), &mut names))
        .collect();
    let tail: Vec<usize> = (0..spec.tail_length)
        .map(|j| push(tail_name(j), Role::Tail(j), &mut names))
        .collect();

    let mut edges = Vec::new();
    edges.extend(z.windows(2).map(|w| (w[0], w[1])));
    edges.extend((0..n).map(|i| (z[i], z_prime[i])));
    for (i, members) in family.iter().enumerate() {
        edges.extend(members.iter().map(|&a| (a, z_prime[i])));
    }
    let mut prev = z[n - 1];
    for &t in &tail {
        edges.push((prev, t));
        prev = t;
    }
    if variant == FamilyVariant::HA {
        for members in &family {
            for (p, &a) in members.iter().enumerate() {
                edges.extend(members[p + 1..].iter().map(|&b| (a, b)));
            }
        }
    }
    let graph = Graph::from_indices(names, edges)?;
    Ok(FamilyGraph {
        graph,
        spec: spec.clone(),
        variant,
        roles,
        family,
        z,
        z_prime,
        tail,
    })
}

pub fn build_ga(spec: &AcceptableFamilySpec) -> Result<FamilyGraph> {
    build_family(spec, FamilyVariant::GA)
}

pub fn build_ha(spec: &AcceptableFamilySpec) -> Result<FamilyGraph> {
    build_family(spec, FamilyVariant::HA)
}

pub fn build_family_graph(spec: &AcceptableFamilySpec, variant: FamilyVariant) -> Result<FamilyGraph> {
    build_family(spec, variant)
}

/// `max{3, max_i |A_i| + 1}`.
pub fn expected_max_degree(spec: &AcceptableFamilySpec) -> usize {
    3.max(spec.max_size() + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub holds: bool,
    pub orbits: Vec<Vec<usize>>,
    /// Orbits the truncation predicts: every `A_i` with two or more members,
    /// everything else a singleton.
    pub expected: Vec<Vec<usize>>,
}

pub fn predicted_orbits(fg: &FamilyGraph) -> Vec<Vec<usize>> {
    let n = fg.graph.vertex_count();
    let mut blocks: Vec<Vec<usize>> = fg
        .family
        .iter()
        .filter(|m| m.len() >= 2)
        .cloned()
        .collect();
    let grouped: BTreeSet<usize> = blocks.iter().flatten().copied().collect();
    blocks.extend((0..n).filter(|v| !grouped.contains(v)).map(|v| vec![v]));
    blocks.sort_by_key(|b| b[0]);
    blocks
}

/// Compares the orbit partition of the truncation against the prediction.
/// `holds == false` is a finding about the truncation, not an error.
pub fn verify_claim1(fg: &FamilyGraph) -> Result<OrbitReport> {
    verify_claim1_with(fg, &Options::default())
}

pub fn verify_claim1_with(fg: &FamilyGraph, opts: &Options) -> Result<OrbitReport> {
    let group = automorphisms_with(&fg.graph, opts)?;
    Ok(orbit_report(fg, &group))
}

pub fn orbit_report(fg: &FamilyGraph, group: &AutomorphismGroup) -> OrbitReport {
    let orbits = group.orbit_partition();
    let expected = predicted_orbits(fg);
    OrbitReport {
        holds: orbits == expected,
        orbits,
        expected,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwoStarVariant {
    DS,
    DC,
}

impl fmt::Display for TwoStarVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwoStarVariant::DS => "DS",
            TwoStarVariant::DC => "DC",
        })
    }
}

impl FromStr for TwoStarVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "DS" | "ds" => Ok(TwoStarVariant::DS),
            "DC" | "dc" => Ok(TwoStarVariant::DC),
            other => Err(Error::Parse(format!("unknown two-star variant `{other}`"))),
        }
    }
}

/// Double star on `X`, `Y` with centres `x'`, `y'`. Vertex order is
/// `X, Y, x', y'`; edge order is `x'y'`, the `x'x`, the `y'y`, then (DC only)
/// the clique on `X` and the clique on `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoStarGraph {
    pub graph: Graph,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub x_prime: usize,
    pub y_prime: usize,
    pub variant: TwoStarVariant,
}

impl TwoStarGraph {
    pub fn x_ids(&self) -> Vec<String> {
        self.x.iter().map(|&v| self.graph.name(v).to_string()).collect()
    }

    pub fn y_ids(&self) -> Vec<String> {
        self.y.iter().map(|&v| self.graph.name(v).to_string()).collect()
    }

    pub fn centre_edge(&self) -> usize {
        self.graph.edge_id(self.x_prime, self.y_prime).unwrap()
    }

    /// The same vertex set under the other variant.
    pub fn sibling(&self, variant: TwoStarVariant) -> TwoStarGraph {
        if variant == self.variant {
            return self.clone();
        }
        build_two_star(&self.x_ids(), &self.y_ids(), variant).expect("rebuilding valid sets")
    }
}

pub fn build_two_star<S: AsRef<str>>(x: &[S], y: &[S], variant: TwoStarVariant) -> Result<TwoStarGraph> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::InvalidSets("X and Y must be non-empty".into()));
    }
    let mut names: Vec<String> = Vec::with_capacity(x.len() + y.len() + 2);
    let mut seen = BTreeSet::new();
    for id in x.iter().chain(y) {
        let id = id.as_ref();
        if id == X_PRIME || id == Y_PRIME {
            return Err(Error::InvalidSets(format!("`{id}` is reserved")));
        }
        if !seen.insert(id.to_string()) {
            return Err(Error::InvalidSets(format!("`{id}` appears twice")));
        }
        names.push(id.to_string());
    }
    let xs: Vec<usize> = (0..x.len()).collect();
    let ys: Vec<usize> = (x.len()..x.len() + y.len()).collect();
    let x_prime = names.len();
    let y_prime = x_prime + 1;
    names.push(X_PRIME.into());
    names.push(Y_PRIME.into());
    let mut edges = vec![(x_prime, y_prime)];
    edges.extend(xs.iter().map(|&v| (x_prime, v)));
    edges.extend(ys.iter().map(|&v| (y_prime, v)));
    if variant == TwoStarVariant::DC {
        for side in [&xs, &ys] {
            for (p, &a) in side.iter().enumerate() {
                edges.extend(side[p + 1..].iter().map(|&b| (a, b)));
            }
        }
    }
    Ok(TwoStarGraph {
        graph: Graph::from_indices(names, edges)?,
        x: xs,
        y: ys,
        x_prime,
        y_prime,
        variant,
    })
}

pub fn build_ds<S: AsRef<str>>(x: &[S], y: &[S]) -> Result<TwoStarGraph> {
    build_two_star(x, y, TwoStarVariant::DS)
}

pub fn build_dc<S: AsRef<str>>(x: &[S], y: &[S]) -> Result<TwoStarGraph> {
    build_two_star(x, y, TwoStarVariant::DC)
}

/// `X = {x0..}`, `Y = {y0..}` of the given sizes.
pub fn two_star_from_sizes(nx: usize, ny: usize, variant: TwoStarVariant) -> Result<TwoStarGraph> {
    let x: Vec<String> = (0..nx).map(|i| format!("x{i}")).collect();
    let y: Vec<String> = (0..ny).map(|i| format!("y{i}")).collect();
    build_two_star(&x, &y, variant)
}
