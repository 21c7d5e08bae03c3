use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::graph::{LollipopLayout, TrivalentGraph};
use crate::error::{Error, Result};
use crate::prime::Prime;

/// Per-edge colors, indexed like the graph's edge list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(pub Vec<u32>);

/// Fusion rule at a vertex with incident colors `x, y, z`.
pub fn admissible_triple(x: u32, y: u32, z: u32, p: u32) -> bool {
    let s = x + y + z;
    s.is_multiple_of(2) && s <= 2 * p - 4 && x <= y + z && y <= x + z && z <= x + y
}

/// Largest loop color allowed in the small basis.
pub fn small_bound(p: Prime) -> u32 {
    (p.get() - 3) / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// Ordered colorings of a fixed graph, with the lollipop-derived data when present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisIndex {
    pub p: u32,
    pub small: bool,
    pub colorings: Vec<Coloring>,
    #[serde(skip)]
    layout: Option<LollipopLayout>,
}

impl BasisIndex {
    pub fn len(&self) -> usize {
        self.colorings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colorings.is_empty()
    }

    fn layout(&self) -> Result<&LollipopLayout> {
        self.layout
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("basis is not indexed by a lollipop tree".into()))
    }

    /// `a_i` = half the stick color of lollipop i.
    pub fn a_values(&self, i: usize) -> Result<Vec<u32>> {
        let l = self.layout()?;
        Ok(l.sticks.iter().map(|&e| self.colorings[i].0[e] / 2).collect())
    }

    /// `b_i` = loop color minus `a_i` (meaningful for small colorings).
    pub fn b_values(&self, i: usize) -> Result<Vec<i64>> {
        let l = self.layout()?;
        let c = &self.colorings[i].0;
        Ok(l.loops
            .iter()
            .zip(&l.sticks)
            .map(|(&lp, &st)| c[lp] as i64 - (c[st] / 2) as i64)
            .collect())
    }

    pub fn parity(&self, i: usize) -> Result<Parity> {
        let s: u32 = self.a_values(i)?.iter().sum();
        Ok(if s % 2 == 1 { Parity::Odd } else { Parity::Even })
    }

    /// Exponent `floor((a_1 + ... + a_g) / 2)` of the h-rescaling.
    pub fn scaling_exponent(&self, i: usize) -> Result<u32> {
        Ok(self.a_values(i)?.iter().sum::<u32>() / 2)
    }

    /// Indices of odd and even elements, each in basis order.
    pub fn parity_split(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        let mut odd = Vec::new();
        let mut even = Vec::new();
        for i in 0..self.len() {
            match self.parity(i)? {
                Parity::Odd => odd.push(i),
                Parity::Even => even.push(i),
            }
        }
        Ok((odd, even))
    }
}

/// Materialisation limit for [`enumerate_colorings`].
pub const DEFAULT_ENUMERATION_CAP: usize = 5_000_000;

/// Search plan: edges in an order that completes vertices early.
struct Plan {
    p: u32,
    order: Vec<usize>,
    candidates: Vec<Vec<u32>>,
    /// For each step, the vertices (as edge-index triples) completed by it.
    checks: Vec<Vec<[usize; 3]>>,
}

impl Plan {
    fn new(g: &TrivalentGraph, p: Prime, small: bool) -> Result<Self> {
        let pv = p.get();
        let layout = if small {
            Some(g.lollipop_layout().ok_or_else(|| {
                Error::InvalidArgument("small colorings require a lollipop tree".into())
            })?)
        } else {
            None
        };
        let even: Vec<u32> = (0..=pv - 3).step_by(2).collect();
        let ne = g.edges().len();
        let mut candidates = vec![even; ne];
        if let Some(l) = &layout {
            for &lp in &l.loops {
                candidates[lp] = (0..=small_bound(p)).collect();
            }
        }
        // vertex-by-vertex BFS order so that fusion checks fire early
        let mut order = Vec::with_capacity(ne);
        let mut placed = vec![false; ne];
        let mut visited = vec![false; g.vertex_count()];
        let mut queue = std::collections::VecDeque::from([0usize]);
        visited[0] = true;
        while let Some(v) = queue.pop_front() {
            for e in g.incident(v) {
                if !placed[e] {
                    placed[e] = true;
                    order.push(e);
                }
                let edge = g.edges()[e];
                let w = if edge.u == v { edge.v } else { edge.u };
                if !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let position: Vec<usize> = {
            let mut pos = vec![0; ne];
            for (i, &e) in order.iter().enumerate() {
                pos[e] = i;
            }
            pos
        };
        let mut checks = vec![Vec::new(); ne];
        for v in 0..g.vertex_count() {
            let inc = g.incident(v);
            let last = inc.iter().map(|&e| position[e]).max().expect("trivalent");
            checks[last].push([inc[0], inc[1], inc[2]]);
        }
        Ok(Plan {
            p: pv,
            order,
            candidates,
            checks,
        })
    }

    fn ok_at(&self, step: usize, colors: &[u32]) -> bool {
        self.checks[step]
            .iter()
            .all(|t| admissible_triple(colors[t[0]], colors[t[1]], colors[t[2]], self.p))
    }

    fn walk(&self, step: usize, colors: &mut [u32], visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if step == self.order.len() {
            return visit(colors);
        }
        let e = self.order[step];
        for &c in &self.candidates[e] {
            colors[e] = c;
            if self.ok_at(step, colors) && !self.walk(step + 1, colors, visit) {
                return false;
            }
        }
        true
    }

    /// Run the search in parallel over the first edge's colors.
    fn par_roots<T: Send>(&self, leaf: impl Fn(u32) -> T + Sync + Send) -> Vec<T> {
        let first = self.order[0];
        self.candidates[first].par_iter().map(|&c| leaf(c)).collect()
    }

    fn count(&self) -> u64 {
        let ne = self.order.len();
        self.par_roots(|c| {
            let mut colors = vec![0u32; ne];
            colors[self.order[0]] = c;
            if !self.ok_at(0, &colors) {
                return 0;
            }
            let mut n = 0u64;
            self.walk(1, &mut colors, &mut |_| {
                n += 1;
                true
            });
            n
        })
        .into_iter()
        .sum()
    }

    fn collect(&self, cap: usize) -> Result<Vec<Coloring>> {
        let ne = self.order.len();
        let parts = self.par_roots(|c| {
            let mut colors = vec![0u32; ne];
            colors[self.order[0]] = c;
            let mut out = Vec::new();
            if !self.ok_at(0, &colors) {
                return Some(out);
            }
            let complete = self.walk(1, &mut colors, &mut |cs| {
                out.push(Coloring(cs.to_vec()));
                out.len() <= cap
            });
            complete.then_some(out)
        });
        let mut all = Vec::new();
        for part in parts {
            let part = part.ok_or_else(|| cap_error(cap))?;
            all.extend(part);
            if all.len() > cap {
                return Err(cap_error(cap));
            }
        }
        all.sort_unstable();
        Ok(all)
    }
}

fn cap_error(cap: usize) -> Error {
    Error::ResourceCap(format!("more than {cap} colorings"))
}

/// All p-admissible colorings of `g` (small: the lollipop small-coloring basis),
/// sorted lexicographically by edge colors.
pub fn enumerate_colorings(g: &TrivalentGraph, p: Prime, small: bool) -> Result<BasisIndex> {
    enumerate_colorings_capped(g, p, small, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_colorings_capped(
    g: &TrivalentGraph,
    p: Prime,
    small: bool,
    cap: usize,
) -> Result<BasisIndex> {
    let plan = Plan::new(g, p, small)?;
    Ok(BasisIndex {
        p: p.get(),
        small,
        colorings: plan.collect(cap)?,
        layout: g.lollipop_layout(),
    })
}

/// Number of colorings without materialising them.
pub fn count_colorings(g: &TrivalentGraph, p: Prime, small: bool) -> Result<u64> {
    Ok(Plan::new(g, p, small)?.count())
}

/// Whether `c` is p-admissible on `g` (small: also the small-basis constraints).
pub fn is_admissible(g: &TrivalentGraph, c: &Coloring, p: Prime, small: bool) -> Result<bool> {
    let plan = Plan::new(g, p, small)?;
    if c.0.len() != g.edges().len() {
        return Err(Error::DimensionMismatch("coloring length differs from edge count".into()));
    }
    let in_range = c.0.iter().zip(&plan.candidates).all(|(x, cand)| cand.contains(x));
    let fusion = (0..g.vertex_count()).all(|v| {
        let inc = g.incident(v);
        admissible_triple(c.0[inc[0]], c.0[inc[1]], c.0[inc[2]], p.get())
    });
    Ok(in_range && fusion)
}
