use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    #[serde(rename = "loop")]
    pub is_loop: bool,
}

impl Edge {
    fn new(u: usize, v: usize) -> Self {
        Edge { u, v, is_loop: u == v }
    }
}

/// Connected trivalent multigraph; a loop counts twice towards the degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivalentGraph {
    vertices: usize,
    edges: Vec<Edge>,
}

#[derive(Deserialize)]
struct RawGraph {
    vertices: usize,
    edges: Vec<Edge>,
}

impl<'de> Deserialize<'de> for TrivalentGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawGraph::deserialize(d)?;
        TrivalentGraph::new(raw.vertices, raw.edges).map_err(serde::de::Error::custom)
    }
}

/// Loops and their attaching edges in a graph whose only cycles are loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LollipopLayout {
    /// Loop edge of lollipop i.
    pub loops: Vec<usize>,
    /// Non-loop edge at the loop vertex of lollipop i (the stick).
    pub sticks: Vec<usize>,
}

impl TrivalentGraph {
    pub fn new(vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut degree = vec![0usize; vertices];
        for e in &edges {
            if e.u >= vertices || e.v >= vertices {
                return Err(Error::InvalidArgument(format!(
                    "edge ({}, {}) outside {vertices} vertices",
                    e.u, e.v
                )));
            }
            if e.is_loop != (e.u == e.v) {
                return Err(Error::InvalidArgument(format!(
                    "edge ({}, {}) has inconsistent loop flag",
                    e.u, e.v
                )));
            }
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        if let Some(v) = degree.iter().position(|&d| d != 3) {
            return Err(Error::InvalidArgument(format!(
                "vertex {v} has degree {}",
                degree[v]
            )));
        }
        let g = TrivalentGraph { vertices, edges };
        if !g.is_connected() {
            return Err(Error::InvalidArgument("graph is not connected".into()));
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// First Betti number `E - V + 1`.
    pub fn genus(&self) -> usize {
        self.edges.len() + 1 - self.vertices
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop).count()
    }

    /// Indices of edges at `v`, a loop listed twice.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(3);
        for (i, e) in self.edges.iter().enumerate() {
            if e.u == v {
                out.push(i);
            }
            if e.v == v {
                out.push(i);
            }
        }
        out
    }

    fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return false;
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                    if a == x && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Present when every cycle is a loop edge, i.e. loops number the genus.
    pub fn lollipop_layout(&self) -> Option<LollipopLayout> {
        if self.loop_count() != self.genus() {
            return None;
        }
        let mut loops = Vec::new();
        let mut sticks = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if !e.is_loop {
                continue;
            }
            let stick = self
                .incident(e.u)
                .into_iter()
                .find(|&j| !self.edges[j].is_loop)?;
            loops.push(i);
            sticks.push(stick);
        }
        Some(LollipopLayout { loops, sticks })
    }

    pub fn is_lollipop_tree(&self) -> bool {
        self.lollipop_layout().is_some()
    }

    /// Multigraph isomorphism by backtracking over vertex maps.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        if self.vertices != other.vertices
            || self.edges.len() != other.edges.len()
            || self.loop_count() != other.loop_count()
        {
            return false;
        }
        let a = self.multiplicities();
        let b = other.multiplicities();
        let n = self.vertices;
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn extend(
            i: usize,
            n: usize,
            a: &[Vec<usize>],
            b: &[Vec<usize>],
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if i == n {
                return true;
            }
            for t in 0..n {
                if used[t] || a[i][i] != b[t][t] {
                    continue;
                }
                if (0..i).any(|j| a[i][j] != b[t][map[j]]) {
                    continue;
                }
                map[i] = t;
                used[t] = true;
                if extend(i + 1, n, a, b, map, used) {
                    return true;
                }
                used[t] = false;
            }
            false
        }
        extend(0, n, &a, &b, &mut map, &mut used)
    }

    fn multiplicities(&self) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; self.vertices]; self.vertices];
        for e in &self.edges {
            m[e.u][e.v] += 1;
            if e.u != e.v {
                m[e.v][e.u] += 1;
            }
        }
        m
    }
}

fn require_genus(g: usize) -> Result<()> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!("genus {g} < 2")));
    }
    Ok(())
}

/// Caterpillar with `g` lollipops: loop vertices `0..g`, spine vertices after.
/// Edges are listed loop, stick per lollipop, then the spine path.
pub fn build_lollipop_tree(g: usize) -> Result<TrivalentGraph> {
    require_genus(g)?;
    let mut edges = Vec::new();
    if g == 2 {
        edges.push(Edge::new(0, 0));
        edges.push(Edge::new(0, 1));
        edges.push(Edge::new(1, 1));
        return TrivalentGraph::new(2, edges);
    }
    let spine = |i: usize| g + i;
    let last = g - 3;
    for i in 0..g {
        let attach = match i {
            0 | 1 => spine(0),
            _ if i >= g - 2 => spine(last),
            _ => spine(i - 1),
        };
        edges.push(Edge::new(i, i));
        edges.push(Edge::new(i, attach));
    }
    for i in 0..last {
        edges.push(Edge::new(spine(i), spine(i + 1)));
    }
    TrivalentGraph::new(2 * g - 2, edges)
}

/// Two vertices joined by three edges.
pub fn build_theta_graph() -> TrivalentGraph {
    TrivalentGraph::new(2, vec![Edge::new(0, 1), Edge::new(0, 1), Edge::new(0, 1)])
        .expect("theta graph is trivalent")
}

/// Theta graph with `g - 2` lollipops grafted onto its edges in turn.
pub fn build_alternative_graph(g: usize) -> Result<TrivalentGraph> {
    require_genus(g)?;
    let mut vertices = 2;
    let mut edges = build_theta_graph().edges;
    for i in 0..g - 2 {
        let target = i % 3;
        let Edge { u, v, .. } = edges[target];
        let s = vertices;
        let l = vertices + 1;
        vertices += 2;
        edges[target] = Edge::new(u, s);
        edges.push(Edge::new(s, v));
        edges.push(Edge::new(s, l));
        edges.push(Edge::new(l, l));
    }
    TrivalentGraph::new(vertices, edges)
}
