use std::env;

use crate::error::{Error, Result};
use crate::exec::Exec;

/// Size limits for the exhaustive procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest graph accepted by the automorphism search.
    pub aut_vertices: usize,
    /// Groups up to this order are stored element by element.
    pub enumeration: u64,
    /// Largest image accepted by chain enumeration.
    pub chain_colours: usize,
    /// Largest domain accepted by chain enumeration.
    pub chain_domain: usize,
    /// Largest graph accepted by the colouring oracles.
    pub oracle_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            aut_vertices: 500,
            enumeration: 1_000_000,
            chain_colours: 6,
            chain_domain: 12,
            oracle_vertices: 48,
        }
    }
}

impl Caps {
    pub const ENV_VAR: &'static str = "CHOICEGRAPH_CAPS";

    /// Parses `key=value` pairs separated by commas, e.g.
    /// `aut=200,enum=5000,chain_colours=5,chain_domain=10,oracle=30`.
    pub fn parse(text: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for pair in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap `{pair}` is not key=value")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("cap `{pair}` has a non-numeric value")))?;
            match key.trim() {
                "aut" => caps.aut_vertices = value as usize,
                "enum" => caps.enumeration = value,
                "chain_colours" => caps.chain_colours = value as usize,
                "chain_domain" => caps.chain_domain = value as usize,
                "oracle" => caps.oracle_vertices = value as usize,
                other => return Err(Error::Parse(format!("unknown cap `{other}`"))),
            }
        }
        Ok(caps)
    }

    pub fn from_env() -> Result<Caps> {
        match env::var(Self::ENV_VAR) {
            Ok(text) => Caps::parse(&text),
            Err(_) => Ok(Caps::default()),
        }
    }
}

/// Caps plus execution strategy, threaded through the `*_with` entry points.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    pub caps: Caps,
    pub exec: Exec,
}

impl Options {
    pub fn sequential() -> Self {
        Options {
            caps: Caps::default(),
            exec: Exec::Sequential,
        }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_overrides() {
        let caps = Caps::parse("aut=10, oracle=20").unwrap();
        assert_eq!(caps.aut_vertices, 10);
        assert_eq!(caps.oracle_vertices, 20);
        assert_eq!(caps.chain_colours, 6);
        assert!(Caps::parse("bogus=1").is_err());
        assert!(Caps::parse("aut").is_err());
    }
}
