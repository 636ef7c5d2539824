//! Explicit choice functions with an audit log, the colouring-driven choice
//! extraction, the level-by-level distinguishing construction on `G_A`, and
//! the injection-driven irreducible colouring of `DS(X, Y)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, Colouring, Kind};
use crate::error::{Error, Result};
use crate::family::{build_ds, build_ga, AcceptableFamilySpec, FamilyGraph, TwoStarGraph};

/// One logged invocation: family index, chosen element, caller tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceEntry(pub String, pub String, pub String);

impl ChoiceEntry {
    pub fn family(&self) -> usize {
        self.0.parse().expect("family index")
    }

    pub fn element(&self) -> &str {
        &self.1
    }

    pub fn tag(&self) -> &str {
        &self.2
    }
}

/// A map from family index to chosen element together with the log of every
/// choice made while building it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceFunction {
    pub mapping: BTreeMap<usize, String>,
    #[serde(default)]
    pub log: Vec<ChoiceEntry>,
}

impl ChoiceFunction {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a choice; the first choice for a family becomes its mapping.
    pub fn record(&mut self, family: usize, element: &str, tag: &str) {
        self.mapping.entry(family).or_insert_with(|| element.to_string());
        self.log
            .push(ChoiceEntry(family.to_string(), element.to_string(), tag.to_string()));
    }

    pub fn get(&self, family: usize) -> Option<&str> {
        self.mapping.get(&family).map(String::as_str)
    }

    /// Every set of `spec` has a chosen element and every chosen element
    /// belongs to its set.
    pub fn is_valid_for(&self, spec: &AcceptableFamilySpec) -> bool {
        self.mapping.len() == spec.len()
            && spec
                .sets
                .iter()
                .enumerate()
                .all(|(i, set)| self.get(i).is_some_and(|e| set.iter().any(|m| m == e)))
    }
}

/// Chooses one member from a non-empty residual set of a family.
pub trait ChoiceRule {
    /// `members` is the residual set in spec order; `None` if undefined.
    fn choose(&self, family: usize, members: &[String]) -> Option<String>;
}

/// Always the first member in spec order.
#[derive(Debug, Clone, Copy, Default)]
pub struct IndexMin;

impl ChoiceRule for IndexMin {
    fn choose(&self, _family: usize, members: &[String]) -> Option<String> {
        members.first().cloned()
    }
}

/// Per-family preference lists: the first listed element still present.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Preference(pub Vec<Vec<String>>);

impl ChoiceRule for Preference {
    fn choose(&self, family: usize, members: &[String]) -> Option<String> {
        self.0
            .get(family)?
            .iter()
            .find(|p| members.contains(p))
            .cloned()
    }
}

/// A fixed choice function used as a rule: defined on a residual set only if
/// its chosen element is still present.
impl ChoiceRule for ChoiceFunction {
    fn choose(&self, family: usize, members: &[String]) -> Option<String> {
        self.get(family)
            .filter(|e| members.iter().any(|m| m == e))
            .map(str::to_string)
    }
}

/// For each set, the member with the least colour (ties: earliest in spec
/// order).
pub fn derive_choice(spec: &AcceptableFamilySpec, c: &Colouring) -> Result<ChoiceFunction> {
    let fg = build_ga(spec)?;
    c.check_domain(&fg.graph, Kind::Vertex)?;
    let mut f = ChoiceFunction::new();
    for (i, members) in fg.family.iter().enumerate() {
        let &best = members
            .iter()
            .min_by_key(|&&a| (c.get(a), a))
            .expect("sets are non-empty");
        f.record(i, fg.graph.name(best), "min-colour");
    }
    Ok(f)
}

/// Result of the level-by-level construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub graph: FamilyGraph,
    pub colouring: Colouring,
    /// Every choice made, level by level.
    pub choice: ChoiceFunction,
}

/// Number of choices the construction makes for `k`: at every level below
/// the last, one per set that is still non-empty.
pub fn choice_cost(spec: &AcceptableFamilySpec, k: usize) -> usize {
    (0..k.saturating_sub(1))
        .map(|level| spec.sizes().iter().filter(|&&s| s > level).count())
        .sum()
}

/// Colours `G_A` with at most `k` colours: at level `j` the element chosen
/// from every remaining set gets colour `k - 1 - j` and is removed; at the
/// last level everything left (including the spine, rungs and tail) gets 0.
pub fn construct_distinguishing(
    spec: &AcceptableFamilySpec,
    rule: &dyn ChoiceRule,
    k: usize,
) -> Result<Construction> {
    spec.validate()?;
    if k == 0 || !spec.is_k_acceptable(k) {
        return Err(Error::NotKAcceptable {
            k,
            size: spec.max_size(),
        });
    }
    let fg = build_ga(spec)?;
    let mut colours = vec![0; fg.graph.vertex_count()];
    let mut residual: Vec<Vec<String>> = spec.sets.clone();
    let mut choice = ChoiceFunction::new();
    for level in 0..k - 1 {
        let colour = (k - 1 - level) as Colour;
        let tag = format!("distinguish/level{level}");
        for (i, members) in residual.iter_mut().enumerate() {
            if members.is_empty() {
                continue;
            }
            let chosen = rule
                .choose(i, members)
                .filter(|e| members.contains(e))
                .ok_or(Error::ChoiceUndefined { family: i, level })?;
            let v = fg.graph.vertex(&chosen)?;
            colours[v] = colour;
            members.retain(|m| *m != chosen);
            choice.record(i, &chosen, &tag);
        }
    }
    Ok(Construction {
        graph: fg,
        colouring: Colouring::new(Kind::Vertex, colours),
        choice,
    })
}

/// The irreducible distinguishing vertex colouring of `DS(X, Y)` induced by
/// an injection `f: X → Y`, with colours indexing `Y`.
pub fn construct_irreducible_ds<S: AsRef<str>>(
    x: &[S],
    y: &[S],
    f: &BTreeMap<String, String>,
) -> Result<(TwoStarGraph, Colouring)> {
    if x.len() > y.len() {
        return Err(Error::SizeOrder {
            x: x.len(),
            y: y.len(),
        });
    }
    let ts = build_ds(x, y)?;
    let y_index: BTreeMap<&str, usize> = y.iter().enumerate().map(|(j, id)| (id.as_ref(), j)).collect();
    let mut images = BTreeSet::new();
    let mut colours = vec![0; ts.graph.vertex_count()];
    for (&v, id) in ts.x.iter().zip(x) {
        let id = id.as_ref();
        let target = f
            .get(id)
            .ok_or_else(|| Error::NotInjective(format!("`{id}` has no image")))?;
        let &j = y_index
            .get(target.as_str())
            .ok_or_else(|| Error::NotInjective(format!("`{target}` is not in Y")))?;
        if !images.insert(j) {
            return Err(Error::NotInjective(format!("`{target}` is hit twice")));
        }
        colours[v] = j as Colour;
    }
    if let Some(extra) = f.keys().find(|k| !x.iter().any(|id| id.as_ref() == k.as_str())) {
        return Err(Error::NotInjective(format!("`{extra}` is not in X")));
    }
    for (j, &v) in ts.y.iter().enumerate() {
        colours[v] = j as Colour;
    }
    let (xp, yp) = match (x.len(), y.len()) {
        // P4 x - x' - y' - y: ends share a colour, one centre differs
        (1, 1) => (0, 1),
        (nx, ny) if nx == ny => (0, 1),
        _ => (0, 0),
    };
    colours[ts.x_prime] = xp;
    colours[ts.y_prime] = yp;
    Ok((ts, Colouring::new(Kind::Vertex, colours)))
}

/// `x_i ↦ y_i`.
pub fn index_injection(nx: usize, ny: usize) -> Result<BTreeMap<String, String>> {
    if nx > ny {
        return Err(Error::SizeOrder { x: nx, y: ny });
    }
    Ok((0..nx).map(|i| (format!("x{i}"), format!("y{i}"))).collect())
}
