//! Exact chromatic and clique numbers, the local parameter `χᵏ`, and
//! vertex-criticality.
//!
//! Colouring is decided by a DSATUR backtracking search with a fixed colour
//! budget: the uncoloured vertex with the most distinct neighbouring colours is
//! branched on first (ties: higher degree, then lower id), and a fresh colour is
//! only ever opened as the next unused one. `chromatic_number` walks the budget
//! up from a greedy clique bound until the search succeeds.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{Graph, Radius, Vertex, VertexSet};

/// Proper vertex colouring; colours are `1..=color_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    assignment: Vec<u32>,
    color_count: usize,
}

impl Coloring {
    pub fn new(assignment: Vec<u32>, color_count: usize) -> Result<Self> {
        if let Some(&c) = assignment.iter().find(|&&c| c == 0 || c as usize > color_count) {
            return Err(Error::arg(format!("colour {c} outside 1..={color_count}")));
        }
        Ok(Coloring {
            assignment,
            color_count,
        })
    }

    pub fn color(&self, v: Vertex) -> u32 {
        self.assignment[v]
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    /// True iff this colours every vertex of `g` and no edge is monochromatic.
    pub fn is_proper_for(&self, g: &Graph) -> bool {
        self.assignment.len() == g.vertex_count() && g.edges().all(|(u, v)| self.assignment[u] != self.assignment[v])
    }

    pub fn used_colors(&self) -> usize {
        let mut seen = vec![false; self.color_count + 1];
        for &c in &self.assignment {
            seen[c as usize] = true;
        }
        seen.iter().filter(|&&b| b).count()
    }
}

impl Serialize for Coloring {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_map(self.assignment.iter().enumerate().map(|(v, c)| (v.to_string(), c)))
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let map = BTreeMap::<String, u32>::deserialize(deserializer)?;
        let mut assignment = vec![0; map.len()];
        for (k, c) in map {
            let v: usize = k.parse().map_err(D::Error::custom)?;
            *assignment
                .get_mut(v)
                .ok_or_else(|| D::Error::custom("vertex ids must be 0..n"))? = c;
        }
        let t = assignment.iter().copied().max().unwrap_or(0) as usize;
        Coloring::new(assignment, t).map_err(D::Error::custom)
    }
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<u32>,
    // blocked[v * (k + 1) + c] counts neighbours of v coloured c
    blocked: Vec<u32>,
    saturation: Vec<u32>,
    budget: &'a Budget,
    out_of_budget: bool,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, k: usize, budget: &'a Budget) -> Self {
        let n = g.vertex_count();
        Dsatur {
            g,
            k,
            color: vec![0; n],
            blocked: vec![0; n * (k + 1)],
            saturation: vec![0; n],
            budget,
            out_of_budget: false,
        }
    }

    fn assign(&mut self, v: Vertex, c: u32) {
        self.color[v] = c;
        let stride = self.k + 1;
        for w in self.g.neighbors(v).iter() {
            let slot = &mut self.blocked[w * stride + c as usize];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: Vertex) {
        let c = self.color[v];
        self.color[v] = 0;
        let stride = self.k + 1;
        for w in self.g.neighbors(v).iter() {
            let slot = &mut self.blocked[w * stride + c as usize];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn pick(&self) -> Option<Vertex> {
        let mut best: Option<(u32, usize, Vertex)> = None;
        for v in self.g.vertices() {
            if self.color[v] != 0 {
                continue;
            }
            let key = (self.saturation[v], self.g.degree(v));
            if best.is_none_or(|(s, d, _)| key > (s, d)) {
                best = Some((key.0, key.1, v));
            }
        }
        best.map(|(_, _, v)| v)
    }

    /// `open` is the number of colours in use; with `symmetric` only colours
    /// `1..=open+1` are tried for the next vertex.
    fn search(&mut self, open: usize, symmetric: bool) -> bool {
        if !self.budget.tick() {
            self.out_of_budget = true;
            return false;
        }
        let Some(v) = self.pick() else {
            return true;
        };
        if self.saturation[v] as usize >= self.k {
            return false;
        }
        let limit = if symmetric { (open + 1).min(self.k) } else { self.k };
        let stride = self.k + 1;
        for c in 1..=limit as u32 {
            if self.blocked[v * stride + c as usize] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.search(open.max(c as usize), symmetric) {
                return true;
            }
            self.unassign(v);
            if self.out_of_budget {
                return false;
            }
        }
        false
    }
}

/// Colouring with at most `k` colours, if one exists.
pub fn is_k_colorable(g: &Graph, k: usize) -> Option<Coloring> {
    is_k_colorable_with_budget(g, k, &Budget::unbounded()).expect("unbounded search cannot time out")
}

pub fn is_k_colorable_with_budget(g: &Graph, k: usize, budget: &Budget) -> Result<Option<Coloring>> {
    if g.vertex_count() == 0 {
        return Ok(Some(Coloring::new(vec![], k).unwrap()));
    }
    if k == 0 {
        return Ok(None);
    }
    let mut s = Dsatur::new(g, k, budget);
    if s.search(0, true) {
        Ok(Some(Coloring::new(s.color, k).unwrap()))
    } else if s.out_of_budget {
        Err(Error::ChiTimeout {
            lower: 0,
            upper: g.vertex_count(),
        })
    } else {
        Ok(None)
    }
}

/// Extends a partial colouring (`0` = uncoloured) to a proper `k`-colouring.
pub fn extend_coloring(g: &Graph, k: usize, partial: &[u32]) -> Result<Option<Coloring>> {
    if partial.len() != g.vertex_count() {
        return Err(Error::arg("partial colouring must cover every vertex slot"));
    }
    if partial.iter().any(|&c| c as usize > k) {
        return Err(Error::arg(format!("precoloured vertex uses a colour above {k}")));
    }
    if g.vertex_count() == 0 {
        return Ok(Some(Coloring::new(vec![], k).unwrap()));
    }
    if k == 0 {
        return Ok(None);
    }
    let budget = Budget::unbounded();
    let mut s = Dsatur::new(g, k, &budget);
    for (v, &c) in partial.iter().enumerate() {
        if c != 0 {
            if s.blocked[v * (k + 1) + c as usize] != 0 {
                return Ok(None);
            }
            s.assign(v, c);
        }
    }
    Ok(s.search(k, false).then(|| Coloring::new(s.color, k).unwrap()))
}

/// Greedy DSATUR colouring, used as the starting upper bound.
pub fn greedy_coloring(g: &Graph) -> Coloring {
    let n = g.vertex_count();
    let budget = Budget::unbounded();
    let mut s = Dsatur::new(g, n.max(1), &budget);
    let mut used = 0;
    while let Some(v) = s.pick() {
        let c = (1..=n as u32)
            .find(|&c| s.blocked[v * (n + 1) + c as usize] == 0)
            .unwrap();
        used = used.max(c as usize);
        s.assign(v, c);
    }
    Coloring::new(s.color, used).unwrap()
}

/// Best clique among greedy extensions from every start vertex.
fn greedy_clique(g: &Graph) -> VertexSet {
    let mut best = g.empty_set();
    for start in g.vertices() {
        let mut clique = g.set_of([start]);
        let mut cand = g.neighbors(start).clone();
        while !cand.is_empty() {
            let v = cand
                .iter()
                .max_by_key(|&v| (g.neighbors(v).intersection_count(&cand), std::cmp::Reverse(v)))
                .unwrap();
            clique.insert(v);
            cand.intersect_with(g.neighbors(v));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// Exact chromatic number; the returned colouring uses exactly `χ` colours.
pub fn chromatic_number(g: &Graph) -> Coloring {
    chromatic_number_with_budget(g, &Budget::unbounded()).expect("unbounded search cannot time out")
}

pub fn chromatic_number_with_budget(g: &Graph, budget: &Budget) -> Result<Coloring> {
    if g.vertex_count() == 0 {
        return Ok(Coloring::new(vec![], 0).unwrap());
    }
    let greedy = greedy_coloring(g);
    let upper = greedy.color_count();
    let mut lower = greedy_clique(g).len();
    while lower < upper {
        match is_k_colorable_with_budget(g, lower, budget) {
            Ok(Some(c)) => return Ok(c),
            Ok(None) => lower += 1,
            Err(_) => return Err(Error::ChiTimeout { lower, upper }),
        }
    }
    Ok(greedy)
}

/// χ of the subgraph induced on `s`.
pub fn chi_of(g: &Graph, s: &VertexSet) -> usize {
    let (h, _) = g.induced_unchecked(s);
    chromatic_number(&h).color_count()
}

/// Whether `χ(G[s]) >= t`, decided with a single colourability query.
pub(crate) fn chi_at_least(g: &Graph, s: &VertexSet, t: usize) -> bool {
    if t == 0 {
        return true;
    }
    let (h, _) = g.induced_unchecked(s);
    is_k_colorable(&h, t - 1).is_none()
}

/// Maximum clique, found by branch and bound with a greedy-colouring bound.
pub fn clique_number(g: &Graph) -> (usize, VertexSet) {
    clique_number_with_budget(g, &Budget::unbounded()).expect("unbounded search cannot time out")
}

pub fn clique_number_with_budget(g: &Graph, budget: &Budget) -> Result<(usize, VertexSet)> {
    let mut best = greedy_clique(g);
    let mut current = Vec::new();
    if !expand_clique(g, &mut current, g.all_vertices(), &mut best, budget) {
        return Err(Error::Indeterminate { search: "clique" });
    }
    Ok((best.len(), best))
}

fn expand_clique(g: &Graph, current: &mut Vec<Vertex>, cand: VertexSet, best: &mut VertexSet, budget: &Budget) -> bool {
    if !budget.tick() {
        return false;
    }
    if cand.is_empty() {
        if current.len() > best.len() {
            *best = g.set_of(current.iter().copied());
        }
        return true;
    }
    // greedy colour classes bound the clique size inside cand
    let order = cand.to_vec();
    let mut class_of = vec![0usize; g.vertex_count()];
    let mut classes: Vec<VertexSet> = Vec::new();
    for &v in &order {
        let idx = classes
            .iter()
            .position(|cls| g.neighbors(v).is_disjoint(cls))
            .unwrap_or_else(|| {
                classes.push(g.empty_set());
                classes.len() - 1
            });
        classes[idx].insert(v);
        class_of[v] = idx + 1;
    }
    let mut by_bound = order;
    by_bound.sort_by_key(|&v| (class_of[v], v));
    let mut cand = cand;
    while let Some(&v) = by_bound.last() {
        if current.len() + class_of[v] <= best.len() {
            return true;
        }
        by_bound.pop();
        current.push(v);
        let next = cand.intersection(g.neighbors(v));
        if !expand_clique(g, current, next, best, budget) {
            return false;
        }
        current.pop();
        cand.remove(v);
    }
    true
}

/// `χᵏ(G)`: the largest chromatic number of a closed ball of radius `k`; 0 for the null graph.
pub fn chi_local(g: &Graph, k: usize) -> usize {
    g.vertices()
        .map(|v| chi_of(g, &g.neighborhood(v, k, Radius::Ball).unwrap()))
        .max()
        .unwrap_or(0)
}

/// A vertex-minimal subset of `s` with chromatic number at least `t`.
///
/// Vertices are tried for deletion in ascending order; one pass suffices since
/// χ can only drop as the set shrinks.
pub fn minimal_subset_with_chi(g: &Graph, s: &VertexSet, t: usize) -> Result<VertexSet> {
    g.check_set(s)?;
    if !chi_at_least(g, s, t) {
        return Err(Error::Precondition(format!("χ(s) < {t}")));
    }
    let mut keep = s.clone();
    for v in s.iter() {
        let without = keep.without(v);
        if chi_at_least(g, &without, t) {
            keep = without;
        }
    }
    Ok(keep)
}

/// True iff deleting any single vertex lowers χ.
pub fn is_vertex_critical(g: &Graph) -> bool {
    let chi = chromatic_number(g).color_count();
    g.vertices().all(|v| {
        let (h, _) = g.delete_vertex(v);
        chi > 0 && is_k_colorable(&h, chi - 1).is_some()
    })
}

/// Calls `visit` on every proper colouring with colours `1..=k` (labelled, not up to permutation).
/// Stops early when `visit` returns false; returns the number of colourings visited.
pub fn for_each_k_coloring(g: &Graph, k: usize, mut visit: impl FnMut(&[u32]) -> bool) -> u64 {
    fn rec(
        g: &Graph,
        k: usize,
        v: usize,
        color: &mut Vec<u32>,
        count: &mut u64,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if v == g.vertex_count() {
            *count += 1;
            return visit(color);
        }
        for c in 1..=k as u32 {
            if g.neighbors(v).iter().filter(|&w| w < v).all(|w| color[w] != c) {
                color[v] = c;
                if !rec(g, k, v + 1, color, count, visit) {
                    return false;
                }
            }
        }
        color[v] = 0;
        true
    }
    let mut color = vec![0; g.vertex_count()];
    let mut count = 0;
    rec(g, k, 0, &mut color, &mut count, &mut visit);
    count
}
