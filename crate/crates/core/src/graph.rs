//! Simple undirected graphs on dense vertex ids `0..n`, with the
//! neighbourhood, distance and component operations everything else uses.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A set of vertex ids, stored as a bitset sized to its graph.
///
/// Equality and hashing depend only on the members, not on the capacity.
#[derive(Clone)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.iter().eq(other.iter())
    }
}

impl Eq for VertexSet {}

impl std::hash::Hash for VertexSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for v in self.iter() {
            v.hash(state);
        }
    }
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(capacity),
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        s.bits.insert_range(..);
        s
    }

    /// Builds a set, growing the capacity to fit the largest member.
    pub fn from_iter_with_capacity(capacity: usize, members: impl IntoIterator<Item = Vertex>) -> Self {
        let mut s = Self::new(capacity);
        for v in members {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: Vertex) {
        if v >= self.bits.len() {
            self.bits.grow(v + 1);
        }
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: Vertex) {
        if v < self.bits.len() {
            self.bits.remove(v);
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.bits.len() && self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.bits.minimum()
    }

    pub fn max(&self) -> Option<Vertex> {
        self.bits.maximum()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn intersection_count(&self, other: &VertexSet) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn without(&self, v: Vertex) -> VertexSet {
        let mut s = self.clone();
        s.remove(v);
        s
    }

    pub fn with(&self, v: Vertex) -> VertexSet {
        let mut s = self.clone();
        s.insert(v);
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<Vertex>::deserialize(deserializer)?;
        let cap = members.iter().max().map_or(0, |m| m + 1);
        Ok(VertexSet::from_iter_with_capacity(cap, members))
    }
}

/// Finite simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    edge_count: usize,
}

/// Whether `neighborhood` returns the sphere or the closed ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Radius {
    /// Vertices at distance exactly r.
    Exact,
    /// Vertices at distance at most r.
    Ball,
}

/// Distance classes around a source vertex; `levels[i]` holds the vertices at distance `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelDecomposition {
    pub source: Vertex,
    pub levels: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::new(n); n],
            edge_count: 0,
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.insert_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::arg(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let mut g = Graph::path(n);
        g.insert_edge(0, n - 1);
        Ok(g)
    }

    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.insert_edge(0, v);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.vertex_count())
    }

    pub fn set_of(&self, members: impl IntoIterator<Item = Vertex>) -> VertexSet {
        VertexSet::from_iter_with_capacity(self.vertex_count(), members)
    }

    /// Adds a vertex and returns its id.
    pub fn add_vertex(&mut self) -> Vertex {
        let n = self.adj.len() + 1;
        for row in &mut self.adj {
            row.bits.grow(n);
        }
        self.adj.push(VertexSet::new(n));
        n - 1
    }

    /// Adds edge `uv`; rejects loops and out-of-range endpoints. Re-adding an edge is an error.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::arg(format!("edge {u}-{v} out of range for {n} vertices")));
        }
        if u == v {
            return Err(Error::arg(format!("self-loop at vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::arg(format!("duplicate edge {u}-{v}")));
        }
        self.insert_edge(u, v);
        Ok(())
    }

    pub(crate) fn insert_edge(&mut self, u: Vertex, v: Vertex) {
        debug_assert!(u != v);
        if !self.adj[u].contains(v) {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
            self.edge_count += 1;
        }
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices()
            .flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.vertex_count() {
            Err(Error::arg(format!(
                "vertex {v} out of range for graph on {} vertices",
                self.vertex_count()
            )))
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.max() {
            Some(m) if m >= self.vertex_count() => self.check_vertex(m),
            _ => Ok(()),
        }
    }

    /// Vertices of `s` adjacent to `v`.
    pub fn neighbors_in(&self, v: Vertex, s: &VertexSet) -> VertexSet {
        self.adj[v].intersection(s)
    }

    pub fn has_neighbor_in(&self, v: Vertex, s: &VertexSet) -> bool {
        !self.adj[v].is_disjoint(s)
    }

    /// Vertices outside `s` with a neighbour in `s`.
    pub fn open_neighborhood_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut out = self.empty_set();
        for v in s.iter() {
            out.union_with(&self.adj[v]);
        }
        out.difference_with(s);
        out
    }

    pub fn is_stable(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].intersection_count(s) + 1 == s.len())
    }

    /// Exact (`Nʳ(v)`) or closed-ball (`Nʳ[v]`) neighbourhood of radius `r`.
    pub fn neighborhood(&self, v: Vertex, r: usize, mode: Radius) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let levels = self.bfs_levels_within(v, &self.all_vertices(), Some(r));
        Ok(match mode {
            Radius::Exact => levels.get(r).cloned().unwrap_or_else(|| self.empty_set()),
            Radius::Ball => {
                let mut ball = self.empty_set();
                for l in &levels {
                    ball.union_with(l);
                }
                ball
            }
        })
    }

    /// BFS levels from `source` inside `within` (the source is always level 0).
    pub(crate) fn bfs_levels_within(
        &self,
        source: Vertex,
        within: &VertexSet,
        max_depth: Option<usize>,
    ) -> Vec<VertexSet> {
        let mut seen = self.empty_set();
        seen.insert(source);
        let mut frontier = self.set_of([source]);
        let mut levels = vec![frontier.clone()];
        while max_depth.is_none_or(|m| levels.len() <= m) {
            let mut next = self.empty_set();
            for u in frontier.iter() {
                next.union_with(&self.adj[u]);
            }
            next.intersect_with(within);
            next.difference_with(&seen);
            if next.is_empty() {
                break;
            }
            seen.union_with(&next);
            levels.push(next.clone());
            frontier = next;
        }
        levels
    }

    /// Shortest-path length, or `None` when `v` is unreachable from `u`.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<Option<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.distances_from(u)[v])
    }

    pub fn distances_from(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for w in self.adj[u].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn level_decomposition(&self, v: Vertex) -> Result<LevelDecomposition> {
        self.check_vertex(v)?;
        Ok(LevelDecomposition {
            source: v,
            levels: self.bfs_levels_within(v, &self.all_vertices(), None),
        })
    }

    /// Connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.all_vertices())
    }

    /// Components of the subgraph induced on `s`, ordered by smallest member.
    pub fn components_within(&self, s: &VertexSet) -> Vec<VertexSet> {
        let mut rest = s.clone();
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = self.empty_set();
            for level in self.bfs_levels_within(start, s, None) {
                comp.union_with(&level);
            }
            rest.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    /// True iff `G[s]` is connected. The empty set is not connected.
    pub fn is_connected_set(&self, s: &VertexSet) -> bool {
        match s.first() {
            None => false,
            Some(start) => {
                let reached: usize = self.bfs_levels_within(start, s, None).iter().map(|l| l.len()).sum();
                reached == s.len()
            }
        }
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.is_connected_set(&self.all_vertices())
    }

    /// Induced subgraph on `s`. Vertex `i` of the result is the `i`-th smallest member of `s`;
    /// the returned map sends result ids back to ids of `self`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        self.check_set(s)?;
        Ok(self.induced_unchecked(s))
    }

    pub(crate) fn induced_unchecked(&self, s: &VertexSet) -> (Graph, Vec<Vertex>) {
        let map: Vec<Vertex> = s.to_vec();
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut h = Graph::empty(map.len());
        for (i, &v) in map.iter().enumerate() {
            for w in self.adj[v].iter() {
                let j = index[w];
                if j != usize::MAX && j > i {
                    h.insert_edge(i, j);
                }
            }
        }
        (h, map)
    }

    /// `self` minus one vertex, relabelled as in `induced_subgraph`.
    pub fn delete_vertex(&self, v: Vertex) -> (Graph, Vec<Vertex>) {
        self.induced_unchecked(&self.all_vertices().without(v))
    }

    /// `A` covers `B`: every vertex of `B` has a neighbour in `A`. The sets must be disjoint.
    pub fn covers(&self, a: &VertexSet, b: &VertexSet) -> Result<bool> {
        self.check_set(a)?;
        self.check_set(b)?;
        if !a.is_disjoint(b) {
            return Err(Error::Precondition("covers requires disjoint sets".into()));
        }
        Ok(b.iter().all(|v| self.has_neighbor_in(v, a)))
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.vertex_count();
        let mut g = Graph::empty(n + other.vertex_count());
        for (u, v) in self.edges() {
            g.insert_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.insert_edge(n + u, n + v);
        }
        g
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| self.adj[u].is_disjoint(&self.adj[v]))
    }

    /// True iff the graph is a tree (connected with `n - 1` edges).
    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0 && self.edge_count + 1 == self.vertex_count() && self.is_connected()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.vertex_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
