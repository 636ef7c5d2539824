use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Colours are naturals with their usual order.
pub type Colour = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Vertex,
    Edge,
}

impl Kind {
    /// Size of the coloured domain of `g`.
    pub fn domain_size(self, g: &Graph) -> usize {
        match self {
            Kind::Vertex => g.vertex_count(),
            Kind::Edge => g.edge_count(),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Vertex => "vertex",
            Kind::Edge => "edge",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertex" | "v" => Ok(Kind::Vertex),
            "edge" | "e" => Ok(Kind::Edge),
            other => Err(Error::Parse(format!("unknown colouring kind `{other}`"))),
        }
    }
}

/// A total colouring of the vertices or the edges of some graph, indexed
/// like that graph's vertex (or edge) list. Every colour is below `alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Colouring {
    kind: Kind,
    colours: Vec<Colour>,
    alpha: Colour,
}

impl Colouring {
    /// `alpha` is taken as one more than the largest colour.
    pub fn new(kind: Kind, colours: Vec<Colour>) -> Colouring {
        let alpha = colours.iter().max().map_or(0, |&m| m + 1);
        Colouring {
            kind,
            colours,
            alpha,
        }
    }

    pub fn with_alpha(kind: Kind, colours: Vec<Colour>, alpha: Colour) -> Result<Colouring> {
        if let Some(&bad) = colours.iter().find(|&&c| c >= alpha) {
            return Err(Error::ColourOutOfRange { colour: bad, alpha });
        }
        Ok(Colouring {
            kind,
            colours,
            alpha,
        })
    }

    pub fn constant(kind: Kind, len: usize, colour: Colour) -> Colouring {
        Colouring::new(kind, vec![colour; len])
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn into_colours(self) -> Vec<Colour> {
        self.colours
    }

    pub fn get(&self, i: usize) -> Colour {
        self.colours[i]
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn alpha(&self) -> Colour {
        self.alpha
    }

    pub fn max_colour(&self) -> Option<Colour> {
        self.colours.iter().copied().max()
    }

    /// The colour set c(Ω).
    pub fn image(&self) -> BTreeSet<Colour> {
        self.colours.iter().copied().collect()
    }

    pub fn colour_count(&self) -> usize {
        self.image().len()
    }

    /// Same assignment under another kind tag (used when moving a colouring
    /// between graphs that share a vertex set).
    pub fn rekind(&self, kind: Kind) -> Colouring {
        Colouring {
            kind,
            colours: self.colours.clone(),
            alpha: self.alpha,
        }
    }

    pub fn map_colours(&self, f: impl Fn(Colour) -> Colour) -> Colouring {
        Colouring::new(self.kind, self.colours.iter().map(|&c| f(c)).collect())
    }

    /// Errors unless this colouring is total on the `kind` domain of `g`.
    pub fn check_domain(&self, g: &Graph, kind: Kind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::DomainMismatch(format!(
                "expected a {kind} colouring, got a {} colouring",
                self.kind
            )));
        }
        let want = kind.domain_size(g);
        if self.colours.len() != want {
            return Err(Error::DomainMismatch(format!(
                "{} colours for a domain of size {want}",
                self.colours.len()
            )));
        }
        Ok(())
    }

    pub fn check_on(&self, g: &Graph) -> Result<()> {
        self.check_domain(g, self.kind)
    }
}

/// Vertex kind: no monochromatic edge. Edge kind: no two incident edges share
/// a colour.
pub fn is_proper(g: &Graph, c: &Colouring) -> Result<bool> {
    c.check_on(g)?;
    Ok(match c.kind() {
        Kind::Vertex => g.edges().iter().all(|&(u, v)| c.get(u) != c.get(v)),
        Kind::Edge => (0..g.vertex_count()).all(|v| {
            let mut seen = BTreeSet::new();
            g.neighbours(v)
                .iter()
                .all(|&w| seen.insert(c.get(g.edge_id(v, w).unwrap())))
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_graph;

    #[test]
    fn k2_properness() {
        let k2 = make_graph(&["a", "b"], &[("a", "b")]).unwrap();
        assert!(!is_proper(&k2, &Colouring::new(Kind::Vertex, vec![0, 0])).unwrap());
        assert!(is_proper(&k2, &Colouring::new(Kind::Vertex, vec![0, 1])).unwrap());
    }

    #[test]
    fn c5_edge_colouring() {
        let g = make_graph(
            &["0", "1", "2", "3", "4"],
            &[("0", "1"), ("1", "2"), ("2", "3"), ("3", "4"), ("4", "0")],
        )
        .unwrap();
        // around the cycle 0,1,0,1,2: edge 4 meets edge 0 at vertex 0 (2 vs 0)
        // and edge 3 at vertex 4 (2 vs 1), the rest alternate
        let c = Colouring::new(Kind::Edge, vec![0, 1, 0, 1, 2]);
        assert!(is_proper(&g, &c).unwrap());
        let bad = Colouring::new(Kind::Edge, vec![0, 1, 0, 1, 0]);
        assert!(!is_proper(&g, &bad).unwrap());
    }

    #[test]
    fn domain_mismatch() {
        let k2 = make_graph(&["a", "b"], &[("a", "b")]).unwrap();
        let c = Colouring::new(Kind::Vertex, vec![0]);
        assert!(matches!(is_proper(&k2, &c), Err(Error::DomainMismatch(_))));
        let e = Colouring::new(Kind::Edge, vec![0]);
        assert!(e.check_domain(&k2, Kind::Vertex).is_err());
    }

    #[test]
    fn alpha_bounds() {
        assert_eq!(Colouring::new(Kind::Vertex, vec![0, 3]).alpha(), 4);
        assert!(Colouring::with_alpha(Kind::Vertex, vec![0, 3], 3).is_err());
        assert!(Colouring::with_alpha(Kind::Vertex, vec![0, 2], 3).is_ok());
    }
}
