//! Colouring transformations between the four colouring kinds on the family
//! graphs `G_A`/`H_A` and on the two-star graphs `DS`/`DC`.
//!
//! Fresh colours are always allocated as consecutive naturals above the
//! largest colour of the input, so every stage is deterministic.

use crate::colouring::{is_proper, Colour, Colouring, Kind};
use crate::error::{Error, Result};
use crate::family::{FamilyGraph, FamilyVariant, TwoStarGraph, TwoStarVariant};
use crate::options::Options;
use crate::reduction::{find_irreducible_greedy_with, PropertyTag, Target};
use crate::symmetry::is_distinguishing_with;

fn require_variant(fg: &FamilyGraph, expected: FamilyVariant) -> Result<()> {
    if fg.variant != expected {
        return Err(Error::VariantMismatch {
            expected: expected.to_string(),
            found: fg.variant.to_string(),
        });
    }
    Ok(())
}

fn fresh_base(c: &Colouring) -> Colour {
    c.max_colour().map_or(0, |m| m + 1)
}

/// Distinguishing vertex colouring of `G_A` → edge colouring: each pendant
/// edge `a z'i` takes the colour of `a`, every other edge one fresh colour.
pub fn dv_to_de(fg: &FamilyGraph, c: &Colouring) -> Result<Colouring> {
    require_variant(fg, FamilyVariant::GA)?;
    c.check_domain(&fg.graph, Kind::Vertex)?;
    let bottom = fresh_base(c);
    let mut colours = vec![bottom; fg.graph.edge_count()];
    for &a in fg.family.iter().flatten() {
        colours[fg.pendant_edge(a)] = c.get(a);
    }
    Ok(Colouring::new(Kind::Edge, colours))
}

/// Distinguishing edge colouring of `G_A` → proper edge colouring: pendant
/// edges keep their colour, rungs share one fresh colour and the spine plus
/// tail alternate two more.
pub fn de_to_pe(fg: &FamilyGraph, c: &Colouring) -> Result<Colouring> {
    require_variant(fg, FamilyVariant::GA)?;
    c.check_domain(&fg.graph, Kind::Edge)?;
    let m = fresh_base(c);
    let mut colours = vec![m; fg.graph.edge_count()];
    for &a in fg.family.iter().flatten() {
        let e = fg.pendant_edge(a);
        colours[e] = c.get(e);
    }
    for (step, e) in fg.ray_edges().into_iter().enumerate() {
        colours[e] = m + 1 + (step % 2) as Colour;
    }
    let out = Colouring::new(Kind::Edge, colours);
    if !is_proper(&fg.graph, &out)? {
        let clash = fg
            .family
            .iter()
            .position(|members| {
                let mut seen: Vec<Colour> = members.iter().map(|&a| out.get(fg.pendant_edge(a))).collect();
                seen.sort_unstable();
                seen.windows(2).any(|w| w[0] == w[1])
            })
            .map_or_else(String::new, |i| format!("pendant edges at {}", fg.graph.name(fg.z_prime[i])));
        return Err(Error::NotProperResult(clash));
    }
    Ok(out)
}

fn require_same_spec(a: &FamilyGraph, b: &FamilyGraph) -> Result<()> {
    if a.spec != b.spec {
        return Err(Error::SpecMismatch);
    }
    Ok(())
}

/// Proper edge colouring of `G_A` → proper vertex colouring of `H_A`: each
/// `a ∈ A_i` takes the colour of `a z'i`, `Z'` one fresh colour, the spine
/// plus tail alternate two more.
pub fn pe_to_pv(fg_ga: &FamilyGraph, fg_ha: &FamilyGraph, c: &Colouring) -> Result<Colouring> {
    require_variant(fg_ga, FamilyVariant::GA)?;
    require_variant(fg_ha, FamilyVariant::HA)?;
    require_same_spec(fg_ga, fg_ha)?;
    c.check_domain(&fg_ga.graph, Kind::Edge)?;
    let m = fresh_base(c);
    let mut colours = vec![m; fg_ha.graph.vertex_count()];
    for &a in fg_ga.family.iter().flatten() {
        colours[a] = c.get(fg_ga.pendant_edge(a));
    }
    for (step, v) in fg_ha.ray().into_iter().enumerate() {
        colours[v] = m + 1 + (step % 2) as Colour;
    }
    Ok(Colouring::new(Kind::Vertex, colours))
}

/// Proper vertex colouring of `H_A` → the same assignment on `G_A`.
pub fn pv_to_dv(fg_ha: &FamilyGraph, fg_ga: &FamilyGraph, c: &Colouring) -> Result<Colouring> {
    require_variant(fg_ha, FamilyVariant::HA)?;
    require_variant(fg_ga, FamilyVariant::GA)?;
    require_same_spec(fg_ga, fg_ha)?;
    c.check_domain(&fg_ha.graph, Kind::Vertex)?;
    if !is_proper(&fg_ha.graph, c)? {
        return Err(Error::NotProperInput);
    }
    Ok(c.clone())
}

/// One stage of the `G_A`/`H_A` round trip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineStage {
    /// `"dv->de"` and so on.
    pub name: String,
    pub colouring: Colouring,
    /// Colours of the output absent from the stage's input.
    pub fresh: usize,
    /// Whether the output has the property the stage promises.
    pub holds: bool,
}

/// Runs dv→de→pe→pv→dv from a vertex colouring of `G_A` and checks every
/// stage output by oracle.
pub fn run_pipeline(
    fg_ga: &FamilyGraph,
    fg_ha: &FamilyGraph,
    c: &Colouring,
    opts: &Options,
) -> Result<Vec<PipelineStage>> {
    let fresh = |input: &Colouring, output: &Colouring| output.image().difference(&input.image()).count();
    let de = dv_to_de(fg_ga, c)?;
    let de_ok = is_distinguishing_with(&fg_ga.graph, &de, opts)?;
    let pe = de_to_pe(fg_ga, &de)?;
    let pe_ok = is_proper(&fg_ga.graph, &pe)?;
    let pv = pe_to_pv(fg_ga, fg_ha, &pe)?;
    let pv_ok = is_proper(&fg_ha.graph, &pv)?;
    let dv = pv_to_dv(fg_ha, fg_ga, &pv)?;
    let dv_ok = is_distinguishing_with(&fg_ga.graph, &dv, opts)?;
    Ok(vec![
        PipelineStage {
            name: "dv->de".into(),
            fresh: fresh(c, &de),
            colouring: de.clone(),
            holds: de_ok,
        },
        PipelineStage {
            name: "de->pe".into(),
            fresh: fresh(&de, &pe),
            colouring: pe.clone(),
            holds: pe_ok,
        },
        PipelineStage {
            name: "pe->pv".into(),
            fresh: fresh(&pe, &pv),
            colouring: pv.clone(),
            holds: pv_ok,
        },
        PipelineStage {
            name: "pv->dv".into(),
            fresh: fresh(&pv, &dv),
            colouring: dv,
            holds: dv_ok,
        },
    ])
}

/// Which two-star variant carries colourings with property `tag`: proper
/// vertex colourings live on `DC`, the other three kinds on `DS`.
pub fn two_star_variant_for(tag: PropertyTag) -> TwoStarVariant {
    if tag == PropertyTag::PV {
        TwoStarVariant::DC
    } else {
        TwoStarVariant::DS
    }
}

/// Result of a two-star transfer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DsTransfer {
    /// The irreducible output colouring.
    pub colouring: Colouring,
    /// The graph variant the output lives on.
    pub variant: TwoStarVariant,
    /// The colouring built before re-irreducibilization.
    pub constructed: Colouring,
    /// Reductions `(b, a)` applied after construction.
    pub steps: Vec<(Colour, Colour)>,
}

fn least_or_fresh(candidates: impl Iterator<Item = Colour>, fresh: Colour) -> Colour {
    candidates.min().unwrap_or(fresh)
}

/// Transfers an irreducible colouring with property `from` on the two-star
/// graph to an irreducible colouring with property `to`, by the direct
/// construction followed by greedy re-irreducibilization.
///
/// Supported pairs: dv↔pv, pv↔pe, pe↔de.
pub fn ds_transfer(
    ts: &TwoStarGraph,
    c: &Colouring,
    from: PropertyTag,
    to: PropertyTag,
    opts: &Options,
) -> Result<DsTransfer> {
    let source = ts.sibling(two_star_variant_for(from));
    let target = ts.sibling(two_star_variant_for(to));
    let unsupported = || Error::UnsupportedPair {
        from: from.to_string(),
        to: to.to_string(),
    };
    c.check_domain(&source.graph, from.kind)?;
    let m = fresh_base(c);
    let g = &target.graph;
    let (xp, yp) = (target.x_prime, target.y_prime);
    let pendant = |v: usize, centre: usize| g.edge_id(v, centre).unwrap();

    let constructed = match (from, to) {
        (PropertyTag::DV, PropertyTag::PV) => {
            let mut colours = c.colours().to_vec();
            colours[xp] = m;
            colours[yp] = m + 1;
            Colouring::new(Kind::Vertex, colours)
        }
        (PropertyTag::PV, PropertyTag::DV) => c.clone(),
        (PropertyTag::PV, PropertyTag::PE) => {
            let mut colours = vec![m; g.edge_count()];
            for &x in &target.x {
                colours[pendant(x, xp)] = c.get(x);
            }
            for &y in &target.y {
                colours[pendant(y, yp)] = c.get(y);
            }
            colours[target.centre_edge()] = m;
            Colouring::new(Kind::Edge, colours)
        }
        (PropertyTag::PE, PropertyTag::PV) => {
            let mut colours = vec![0; g.vertex_count()];
            for &x in &target.x {
                colours[x] = c.get(pendant(x, xp));
            }
            for &y in &target.y {
                colours[y] = c.get(pendant(y, yp));
            }
            let cx: Vec<Colour> = target.x.iter().map(|&x| colours[x]).collect();
            let cy: Vec<Colour> = target.y.iter().map(|&y| colours[y]).collect();
            let x_colour = least_or_fresh(cy.iter().copied().filter(|k| !cx.contains(k)), m);
            let y_colour = least_or_fresh(
                cx.iter().copied().filter(|k| !cy.contains(k)),
                if x_colour == m { m + 1 } else { m },
            );
            colours[xp] = x_colour;
            colours[yp] = y_colour;
            Colouring::new(Kind::Vertex, colours)
        }
        (PropertyTag::DE, PropertyTag::PE) => {
            let mut colours = c.colours().to_vec();
            colours[target.centre_edge()] = m;
            Colouring::new(Kind::Edge, colours)
        }
        (PropertyTag::PE, PropertyTag::DE) => {
            // Recolouring x'y' alone cannot break the side swap when both
            // sides carry the same pendant colours; in that case the first
            // pendant at x' takes the (unique) colour of x'y' instead.
            let mut colours = c.colours().to_vec();
            let centre = target.centre_edge();
            let first_x = pendant(target.x[0], xp);
            let mut cx: Vec<Colour> = target.x.iter().map(|&x| c.get(pendant(x, xp))).collect();
            let mut cy: Vec<Colour> = target.y.iter().map(|&y| c.get(pendant(y, yp))).collect();
            cx.sort_unstable();
            cy.sort_unstable();
            if cx == cy {
                colours[first_x] = colours[centre];
            } else {
                colours[centre] = colours[first_x];
            }
            Colouring::new(Kind::Edge, colours)
        }
        _ => return Err(unsupported()),
    };

    if !to.holds_with(g, &constructed, opts)? {
        return Err(Error::PropertyLost(format!(
            "{from}->{to} construction is not {}",
            describe(to)
        )));
    }
    let reduced = find_irreducible_greedy_with(g, &constructed, to, opts)?;
    Ok(DsTransfer {
        colouring: reduced.colouring,
        variant: target.variant,
        constructed,
        steps: reduced.steps,
    })
}

fn describe(tag: PropertyTag) -> String {
    let target = match tag.target {
        Target::Proper => "proper",
        Target::Distinguishing => "distinguishing",
    };
    format!("a {target} {} colouring", tag.kind)
}
