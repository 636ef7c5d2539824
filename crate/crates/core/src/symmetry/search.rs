//! Backtracking automorphism search pruned by colour refinement.
//!
//! Both sides of a partial map are refined in lockstep; cells are relabelled
//! by the sorted list of signatures so that labels agree across sides and a
//! signature-multiset mismatch prunes the branch. The group is assembled as a
//! stabilizer chain along the leftmost path of the search tree: levels are
//! processed bottom-up and a candidate image is only searched when it is not
//! already in the orbit generated by what has been found.

use std::collections::VecDeque;

use crate::graph::Graph;

pub type Perm = Vec<usize>;

type Signature = (u32, Vec<(u32, u32)>);

pub(crate) struct Search<'g> {
    graph: &'g Graph,
    vertex_colours: Vec<u32>,
    edge_labels: Option<&'g [u32]>,
}

/// Raw output of a stabilizer-chain run.
pub(crate) struct Chain {
    pub base: Vec<usize>,
    pub generators: Vec<Perm>,
    /// `level_gens[i]` = number of generators fixing `base[..i]`; they are the
    /// tail `generators[generators.len() - level_gens[i]..]`.
    pub level_gens: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
}

struct Level {
    point: usize,
    cell: Vec<usize>,
    state: Vec<u32>,
}

fn class_count(colours: &[u32]) -> usize {
    let mut seen: Vec<u32> = colours.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn cells(colours: &[u32]) -> Vec<Vec<usize>> {
    let k = colours.iter().max().map_or(0, |&m| m as usize + 1);
    let mut out = vec![Vec::new(); k];
    for (v, &c) in colours.iter().enumerate() {
        out[c as usize].push(v);
    }
    out
}

/// First smallest non-singleton cell.
fn target_cell(cells: &[Vec<usize>]) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

fn individualize(colours: &mut [u32], v: usize) {
    let fresh = colours.iter().max().map_or(0, |&m| m + 1);
    colours[v] = fresh;
}

impl<'g> Search<'g> {
    pub fn new(graph: &'g Graph, vertex_colours: Option<&[u32]>, edge_labels: Option<&'g [u32]>) -> Self {
        let vertex_colours = match vertex_colours {
            Some(c) => c.to_vec(),
            None => vec![0; graph.vertex_count()],
        };
        Search {
            graph,
            vertex_colours,
            edge_labels,
        }
    }

    fn edge_label(&self, u: usize, v: usize) -> u32 {
        match self.edge_labels {
            Some(labels) => labels[self.graph.edge_id(u, v).unwrap()],
            None => 0,
        }
    }

    fn signature(&self, colours: &[u32], v: usize) -> Signature {
        let mut around: Vec<(u32, u32)> = self
            .graph
            .neighbours(v)
            .iter()
            .map(|&w| (colours[w], self.edge_label(v, w)))
            .collect();
        around.sort_unstable();
        (colours[v], around)
    }

    /// Refines both colourings to their coarsest common equitable form.
    /// Returns false when the two sides cannot correspond.
    fn refine(&self, left: &mut [u32], right: &mut [u32]) -> bool {
        let n = left.len();
        let mut classes = class_count(left);
        loop {
            let sig_l: Vec<Signature> = (0..n).map(|v| self.signature(left, v)).collect();
            let sig_r: Vec<Signature> = (0..n).map(|v| self.signature(right, v)).collect();
            let mut sorted_l = sig_l.clone();
            let mut sorted_r = sig_r.clone();
            sorted_l.sort_unstable();
            sorted_r.sort_unstable();
            if sorted_l != sorted_r {
                return false;
            }
            sorted_l.dedup();
            for v in 0..n {
                left[v] = sorted_l.binary_search(&sig_l[v]).unwrap() as u32;
                right[v] = sorted_l.binary_search(&sig_r[v]).unwrap() as u32;
            }
            if sorted_l.len() == classes {
                return true;
            }
            classes = sorted_l.len();
        }
    }

    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let g = self.graph;
        if (0..g.vertex_count()).any(|v| self.vertex_colours[v] != self.vertex_colours[perm[v]]) {
            return false;
        }
        g.edges().iter().enumerate().all(|(e, &(u, v))| {
            match g.edge_id(perm[u], perm[v]) {
                Some(f) => self.edge_labels.is_none_or(|l| l[e] == l[f]),
                None => false,
            }
        })
    }

    /// Completes the correspondence `left -> right` to an automorphism.
    fn extend(&self, mut left: Vec<u32>, mut right: Vec<u32>) -> Option<Perm> {
        if !self.refine(&mut left, &mut right) {
            return None;
        }
        let left_cells = cells(&left);
        match target_cell(&left_cells) {
            None => {
                let right_cells = cells(&right);
                let mut perm = vec![0; left.len()];
                for (c, cell) in left_cells.iter().enumerate() {
                    perm[cell[0]] = right_cells[c][0];
                }
                self.is_automorphism(&perm).then_some(perm)
            }
            Some(c) => {
                let v = left_cells[c][0];
                let candidates: Vec<usize> =
                    (0..right.len()).filter(|&w| right[w] == c as u32).collect();
                candidates.into_iter().find_map(|w| {
                    let mut l = left.clone();
                    let mut r = right.clone();
                    individualize(&mut l, v);
                    individualize(&mut r, w);
                    self.extend(l, r)
                })
            }
        }
    }

    fn leftmost_path(&self) -> Vec<Level> {
        let mut state = self.vertex_colours.clone();
        let mut copy = state.clone();
        self.refine(&mut state, &mut copy);
        let mut levels = Vec::new();
        loop {
            let cs = cells(&state);
            let Some(c) = target_cell(&cs) else { break };
            let point = cs[c][0];
            levels.push(Level {
                point,
                cell: cs[c].clone(),
                state: state.clone(),
            });
            individualize(&mut state, point);
            let mut copy = state.clone();
            self.refine(&mut state, &mut copy);
        }
        levels
    }

    /// Builds the stabilizer chain. With `stop_at_first`, returns as soon as
    /// one non-identity automorphism is known (orbit sizes are then partial).
    pub fn chain(&self, stop_at_first: bool) -> Chain {
        let levels = self.leftmost_path();
        let k = levels.len();
        let mut generators: Vec<Perm> = Vec::new();
        let mut orbit_sizes = vec![1; k];
        let mut level_gens = vec![0; k];
        for i in (0..k).rev() {
            let level = &levels[i];
            let mut orbit = orbit_of(level.point, &generators, self.graph.vertex_count());
            for &c in &level.cell {
                if orbit.contains(&c) {
                    continue;
                }
                let mut left = level.state.clone();
                let mut right = level.state.clone();
                individualize(&mut left, level.point);
                individualize(&mut right, c);
                if let Some(p) = self.extend(left, right) {
                    generators.push(p);
                    if stop_at_first {
                        return Chain {
                            base: levels.iter().map(|l| l.point).collect(),
                            generators,
                            level_gens,
                            orbit_sizes,
                        };
                    }
                    orbit = orbit_of(level.point, &generators, self.graph.vertex_count());
                }
            }
            orbit_sizes[i] = orbit.len();
            level_gens[i] = generators.len();
        }
        Chain {
            base: levels.iter().map(|l| l.point).collect(),
            generators,
            level_gens,
            orbit_sizes,
        }
    }
}

/// Orbit of `point` under the group generated by `gens`, sorted.
pub(crate) fn orbit_of(point: usize, gens: &[Perm], n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut queue = VecDeque::from([point]);
    let mut out = vec![point];
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g[p];
            if !seen[q] {
                seen[q] = true;
                out.push(q);
                queue.push_back(q);
            }
        }
    }
    out.sort_unstable();
    out
}

pub(crate) fn compose(outer: &[usize], inner: &[usize]) -> Perm {
    inner.iter().map(|&x| outer[x]).collect()
}

/// For each orbit point `q` of `point`, an element mapping `point` to `q`.
pub(crate) fn transversal(point: usize, gens: &[Perm], n: usize) -> Vec<Perm> {
    let identity: Perm = (0..n).collect();
    let mut reps: Vec<Option<Perm>> = vec![None; n];
    reps[point] = Some(identity);
    let mut queue = VecDeque::from([point]);
    let mut order = vec![point];
    while let Some(p) = queue.pop_front() {
        let u = reps[p].clone().unwrap();
        for g in gens {
            let q = g[p];
            if reps[q].is_none() {
                reps[q] = Some(compose(g, &u));
                order.push(q);
                queue.push_back(q);
            }
        }
    }
    order.sort_unstable();
    order.into_iter().map(|q| reps[q].take().unwrap()).collect()
}
