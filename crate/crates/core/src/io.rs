//! JSON encodings of graphs, colourings, family specs, two-star sets,
//! automorphism groups, chain elements and oracle results. Every encoding
//! reports original vertex ids, never dense indices.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::colouring::{Colour, Colouring, Kind};
use crate::error::{Error, Result};
use crate::family::{build_two_star, TwoStarGraph, TwoStarVariant};
use crate::graph::{make_graph, Graph};
use crate::oracle::OracleResult;
use crate::reduction::ChainElement;
use crate::symmetry::AutomorphismGroup;

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

pub fn graph_to_json(g: &Graph) -> Value {
    let doc = GraphJson {
        vertices: g.names().to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|&(u, v)| [g.name(u).to_string(), g.name(v).to_string()])
            .collect(),
    };
    serde_json::to_value(doc).expect("plain data")
}

pub fn graph_from_json(value: &Value) -> Result<Graph> {
    let doc: GraphJson = serde_json::from_value(value.clone()).map_err(parse_err)?;
    let edges: Vec<(String, String)> = doc.edges.into_iter().map(|[u, v]| (u, v)).collect();
    make_graph(&doc.vertices, &edges)
}

pub fn colouring_to_json(g: &Graph, c: &Colouring) -> Value {
    let mut colours = Map::new();
    for (i, &colour) in c.colours().iter().enumerate() {
        let key = match c.kind() {
            Kind::Vertex => g.name(i).to_string(),
            Kind::Edge => g.edge_label(i),
        };
        colours.insert(key, json!(colour));
    }
    json!({ "kind": c.kind(), "colours": colours })
}

/// Resolves an edge key `u|v` (either orientation). Ids may themselves
/// contain `|`, so every split point is tried.
fn edge_from_key(g: &Graph, key: &str) -> Result<usize> {
    key.match_indices('|')
        .find_map(|(at, _)| {
            let (u, v) = (&key[..at], &key[at + 1..]);
            let (u, v) = (g.vertex(u).ok()?, g.vertex(v).ok()?);
            g.edge_id(u, v)
        })
        .ok_or_else(|| Error::DomainMismatch(format!("`{key}` is not an edge")))
}

pub fn colouring_from_json(g: &Graph, value: &Value) -> Result<Colouring> {
    #[derive(Deserialize)]
    struct Doc {
        kind: Kind,
        colours: BTreeMap<String, Colour>,
    }
    let doc: Doc = serde_json::from_value(value.clone()).map_err(parse_err)?;
    let size = doc.kind.domain_size(g);
    let mut colours: Vec<Option<Colour>> = vec![None; size];
    for (key, colour) in &doc.colours {
        let i = match doc.kind {
            Kind::Vertex => g
                .vertex(key)
                .map_err(|_| Error::DomainMismatch(format!("`{key}` is not a vertex")))?,
            Kind::Edge => edge_from_key(g, key)?,
        };
        if colours[i].replace(*colour).is_some() {
            return Err(Error::DomainMismatch(format!("`{key}` is coloured twice")));
        }
    }
    let colours = colours
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            c.ok_or_else(|| {
                let name = match doc.kind {
                    Kind::Vertex => g.name(i).to_string(),
                    Kind::Edge => g.edge_label(i),
                };
                Error::DomainMismatch(format!("`{name}` has no colour"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Colouring::new(doc.kind, colours))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoStarJson {
    #[serde(rename = "X")]
    pub x: Vec<String>,
    #[serde(rename = "Y")]
    pub y: Vec<String>,
    #[serde(default = "default_variant")]
    pub variant: TwoStarVariant,
}

fn default_variant() -> TwoStarVariant {
    TwoStarVariant::DS
}

pub fn two_star_from_json(value: &Value) -> Result<TwoStarGraph> {
    let doc: TwoStarJson = serde_json::from_value(value.clone()).map_err(parse_err)?;
    build_two_star(&doc.x, &doc.y, doc.variant)
}

fn order_value(group: &AutomorphismGroup) -> Value {
    match group.order_u64() {
        Some(n) => json!(n),
        None => json!(group.order().to_string()),
    }
}

fn perm_to_json(g: &Graph, perm: &[usize]) -> Value {
    let map: Map<String, Value> = perm
        .iter()
        .enumerate()
        .map(|(v, &w)| (g.name(v).to_string(), json!(g.name(w))))
        .collect();
    Value::Object(map)
}

fn vertex_sets_to_json(g: &Graph, sets: &[Vec<usize>]) -> Value {
    json!(sets
        .iter()
        .map(|s| s.iter().map(|&v| g.name(v)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

pub fn group_to_json(g: &Graph, group: &AutomorphismGroup) -> Value {
    let mut doc = Map::new();
    doc.insert("order".into(), order_value(group));
    match group.elements() {
        Some(elements) => {
            doc.insert(
                "elements".into(),
                Value::Array(elements.iter().map(|p| perm_to_json(g, p)).collect()),
            );
        }
        None => {
            doc.insert(
                "generators".into(),
                Value::Array(group.generators().iter().map(|p| perm_to_json(g, p)).collect()),
            );
        }
    }
    doc.insert("orbits".into(), vertex_sets_to_json(g, &group.orbit_partition()));
    Value::Object(doc)
}

pub fn vertex_sets_json(g: &Graph, sets: &[Vec<usize>]) -> Value {
    vertex_sets_to_json(g, sets)
}

pub fn chain_element_to_json(g: &Graph, e: &ChainElement) -> Value {
    let partition: Map<String, Value> = e
        .merge_partition
        .iter()
        .map(|(live, block)| (live.to_string(), json!(block)))
        .collect();
    json!({
        "colouring": colouring_to_json(g, &e.colouring),
        "merge_partition": partition,
    })
}

pub fn chain_element_from_json(g: &Graph, value: &Value) -> Result<ChainElement> {
    let colouring = colouring_from_json(
        g,
        value
            .get("colouring")
            .ok_or_else(|| Error::Parse("missing `colouring`".into()))?,
    )?;
    let partition: BTreeMap<String, BTreeSet<Colour>> = serde_json::from_value(
        value
            .get("merge_partition")
            .cloned()
            .ok_or_else(|| Error::Parse("missing `merge_partition`".into()))?,
    )
    .map_err(parse_err)?;
    let merge_partition = partition
        .into_iter()
        .map(|(k, v)| {
            k.parse::<Colour>()
                .map(|k| (k, v))
                .map_err(|_| Error::Parse(format!("`{k}` is not a colour")))
        })
        .collect::<Result<_>>()?;
    Ok(ChainElement {
        colouring,
        merge_partition,
    })
}

pub fn oracle_result_to_json(g: &Graph, r: &OracleResult) -> Value {
    json!({ "value": r.value, "witness": colouring_to_json(g, &r.witness) })
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
