//! Proof objects around stable sets of critical vertices: X-splits, Gyárfás
//! paths, equipment, spires, cathedrals and bands. Each has a validator that
//! reports the first failed clause, and the searchable ones have a searcher.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{require, Error, Result, Verdict, Violation};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::invariants::{chi_local, chromatic_number_with_budget, is_k_colorable_with_budget};
use crate::iso::Embedding;
use crate::tree_zoo::superstar;

fn indeterminate(search: &'static str) -> impl Fn(Error) -> Error {
    move |e| {
        if e.is_timeout() {
            Error::Indeterminate { search }
        } else {
            e
        }
    }
}

/// Whether `χ(G[s]) > t`.
fn chi_exceeds(g: &Graph, s: &VertexSet, t: usize, budget: &Budget, search: &'static str) -> Result<bool> {
    let (h, _) = g.induced_unchecked(s);
    Ok(is_k_colorable_with_budget(&h, t, budget)
        .map_err(indeterminate(search))?
        .is_none())
}

fn chi_with(g: &Graph, s: &VertexSet, budget: &Budget, search: &'static str) -> Result<usize> {
    let (h, _) = g.induced_unchecked(s);
    Ok(chromatic_number_with_budget(&h, budget)
        .map_err(indeterminate(search))?
        .color_count())
}

fn chi(g: &Graph, s: &VertexSet) -> usize {
    crate::invariants::chi_of(g, s)
}

fn sets_in_range(g: &Graph, sets: &[(&str, &VertexSet)]) -> Verdict {
    for (name, s) in sets {
        if let Some(v) = s.iter().find(|&v| v >= g.vertex_count()) {
            return Err(Violation::new("vertices are in range", format!("{name} contains {v}")));
        }
    }
    Ok(())
}

fn vertices_in_range(g: &Graph, name: &str, vs: &[Vertex]) -> Verdict {
    match vs.iter().find(|&&v| v >= g.vertex_count()) {
        Some(v) => Err(Violation::new("vertices are in range", format!("{name} contains {v}"))),
        None => Ok(()),
    }
}

/// Distinct vertices forming an induced path in the listed order.
fn is_induced_path(g: &Graph, path: &[Vertex]) -> bool {
    let distinct = path.iter().collect::<std::collections::BTreeSet<_>>().len() == path.len();
    distinct && (0..path.len()).all(|i| (i + 1..path.len()).all(|j| g.has_edge(path[i], path[j]) == (j == i + 1)))
}

// ---------------------------------------------------------------- stable sets

/// Outcome of testing the stable-set degree property on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum StableSetOutcome {
    /// X is not stable, `χ(G) ≤ d`, or deleting X does not lower χ.
    HypothesesFail,
    /// The lowest-id vertex of X with at least `d` neighbours outside X.
    Holds { vertex: Vertex, outside_degree: usize },
    /// No vertex of X has `d` neighbours outside X although the hypotheses hold.
    Violated,
}

/// For stable `X` with `χ(G) > d` and `χ(G∖X) < χ(G)`, some `x ∈ X` has `d` neighbours outside `X`.
pub fn check_stable_set_degree(g: &Graph, x_set: &VertexSet, d: usize) -> Result<StableSetOutcome> {
    g.check_set(x_set)?;
    if !g.is_stable(x_set) {
        return Ok(StableSetOutcome::HypothesesFail);
    }
    let chi_g = chi(g, &g.all_vertices());
    if chi_g <= d || chi(g, &g.all_vertices().difference(x_set)) >= chi_g {
        return Ok(StableSetOutcome::HypothesesFail);
    }
    Ok(x_set
        .iter()
        .map(|x| (x, g.neighbors(x).difference(x_set).len()))
        .find(|&(_, deg)| deg >= d)
        .map_or(StableSetOutcome::Violated, |(vertex, outside_degree)| {
            StableSetOutcome::Holds { vertex, outside_degree }
        }))
}

// ---------------------------------------------------------------- X-splits

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XSplit {
    pub x: Vertex,
    pub y: Vertex,
    pub z_set: VertexSet,
}

pub fn validate_x_split(g: &Graph, x_ground: &VertexSet, cand: &XSplit) -> Verdict {
    vertices_in_range(g, "split", &[cand.x, cand.y])?;
    sets_in_range(g, &[("X", x_ground), ("Z", &cand.z_set)])?;
    let (x, y, z) = (cand.x, cand.y, &cand.z_set);
    require(x_ground.contains(x), "x is in X", || format!("x = {x}"))?;
    require(!x_ground.contains(y), "y is outside X", || format!("y = {y}"))?;
    require(z.is_disjoint(&x_ground.with(y)), "Z avoids X and y", || {
        format!("{:?}", z.intersection(&x_ground.with(y)))
    })?;
    require(g.has_edge(x, y), "x is adjacent to y", String::new)?;
    require(g.has_neighbor_in(x, z), "x has a neighbour in Z", String::new)?;
    require(!g.has_neighbor_in(y, z), "y has no neighbours in Z", || {
        format!("{:?}", g.neighbors_in(y, z))
    })?;
    require(g.is_connected_set(z), "G[Z] is connected", String::new)
}

/// First X-split with `χ(Z) > min_chi`, searching `x` then `y` ascending and taking `Z` as a
/// whole component of `G ∖ (X ∪ N[y])` that meets `N(x)`. Every valid `Z` sits inside such a
/// component, so absence is conclusive.
pub fn find_x_split(g: &Graph, x_ground: &VertexSet, min_chi: usize) -> Result<Option<XSplit>> {
    find_x_split_with_budget(g, x_ground, min_chi, &Budget::unbounded())
}

pub fn find_x_split_with_budget(
    g: &Graph,
    x_ground: &VertexSet,
    min_chi: usize,
    budget: &Budget,
) -> Result<Option<XSplit>> {
    g.check_set(x_ground)?;
    for x in x_ground.iter() {
        for y in g.neighbors(x).difference(x_ground).iter() {
            let mut rest = g.all_vertices().difference(x_ground);
            rest.remove(y);
            rest.difference_with(g.neighbors(y));
            for comp in g.components_within(&rest) {
                if g.has_neighbor_in(x, &comp) && chi_exceeds(g, &comp, min_chi, budget, "x-split")? {
                    return Ok(Some(XSplit { x, y, z_set: comp }));
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------- Gyárfás paths

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GyarfasResult {
    /// `x₀, …, x_k`.
    pub path: Vec<Vertex>,
    /// `C′`.
    pub residue: VertexSet,
}

/// Induced path `x₀…x_k` into `C` leaving a connected residue of large χ, with the
/// preconditions (including `χ(C) > k·χ¹(G)`) checked exactly.
pub fn gyarfas_path(g: &Graph, c_set: &VertexSet, x0: Vertex, k: usize) -> Result<GyarfasResult> {
    g.check_set(c_set)?;
    g.check_vertex(x0)?;
    if !g.is_connected_set(c_set) {
        return Err(Error::arg("G[C] must be connected"));
    }
    if c_set.contains(x0) {
        return Err(Error::arg("x0 must lie outside C"));
    }
    if !g.has_neighbor_in(x0, c_set) {
        return Err(Error::arg("x0 must have a neighbour in C"));
    }
    if k > 0 {
        let bound = k * chi_local(g, 1);
        if !chi_exceeds(g, c_set, bound, &Budget::unbounded(), "gyarfas")? {
            return Err(Error::arg(format!("χ(C) must exceed k·χ¹(G) = {bound}")));
        }
    }
    gyarfas_path_unchecked(g, c_set, x0, k)
}

/// The same walk without the precondition gate; fails only if the walk runs out of vertices.
///
/// Each step deletes the endpoint's neighbours from the working set, descends into a
/// component of maximum χ (lowest member on ties), and steps to the lowest-id neighbour of
/// the endpoint that sees that component.
pub fn gyarfas_path_unchecked(g: &Graph, c_set: &VertexSet, x0: Vertex, k: usize) -> Result<GyarfasResult> {
    g.check_set(c_set)?;
    g.check_vertex(x0)?;
    let mut path = vec![x0];
    let mut work = c_set.clone();
    for _ in 0..k {
        let end = *path.last().expect("path is nonempty");
        let near = g.neighbors_in(end, &work);
        let far = work.difference(&near);
        let mut best: Option<(usize, VertexSet)> = None;
        for comp in g.components_within(&far) {
            let c = chi(g, &comp);
            if best.as_ref().is_none_or(|(b, _)| c > *b) {
                best = Some((c, comp));
            }
        }
        let Some((_, next_work)) = best else {
            return Err(Error::Precondition(
                "working set exhausted before the path was complete".into(),
            ));
        };
        let next = near
            .iter()
            .find(|&v| g.has_neighbor_in(v, &next_work))
            .ok_or_else(|| Error::Precondition("no neighbour of the endpoint sees the chosen component".into()))?;
        path.push(next);
        work = next_work;
    }
    Ok(GyarfasResult { path, residue: work })
}

/// `(χ(C), χ¹(G), χ(C′))`, the numbers behind the residue bound.
pub fn gyarfas_bound(g: &Graph, c_set: &VertexSet, r: &GyarfasResult) -> (usize, usize, usize) {
    (chi(g, c_set), chi_local(g, 1), chi(g, &r.residue))
}

pub fn validate_gyarfas(g: &Graph, c_set: &VertexSet, x0: Vertex, k: usize, r: &GyarfasResult) -> Verdict {
    vertices_in_range(g, "path", &r.path)?;
    vertices_in_range(g, "x0", &[x0])?;
    sets_in_range(g, &[("C", c_set), ("C′", &r.residue)])?;
    let p = &r.path;
    require(p.len() == k + 1 && p[0] == x0, "path is x0 … x_k", || {
        format!("{p:?}")
    })?;
    require(is_induced_path(g, p), "path is induced", String::new)?;
    require(
        p[1..].iter().all(|&v| c_set.contains(v)),
        "x1 … x_k lie in C",
        String::new,
    )?;
    require(r.residue.is_subset(c_set), "C′ is a subset of C", String::new)?;
    require(p.iter().all(|&v| !r.residue.contains(v)), "path avoids C′", String::new)?;
    require(g.is_connected_set(&r.residue), "G[C′] is connected", String::new)?;
    require(
        g.has_neighbor_in(p[k], &r.residue),
        "x_k has a neighbour in C′",
        String::new,
    )?;
    require(
        p[..k].iter().all(|&v| !g.has_neighbor_in(v, &r.residue)),
        "x0 … x_(k-1) have no neighbours in C′",
        String::new,
    )?;
    let (chi_c, chi1, chi_r) = gyarfas_bound(g, c_set, r);
    require(chi_r + k * chi1 >= chi_c, "χ(C′) ≥ χ(C) − k·χ¹(G)", || {
        format!("χ(C′) = {chi_r}, χ(C) = {chi_c}, χ¹(G) = {chi1}")
    })
}

// ---------------------------------------------------------------- equipment

/// The parts of the equipment of `center`. `witness` is absent for proper equipment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equipment {
    pub center: Vertex,
    pub independent_neighbors: VertexSet,
    /// Induced path of length `d`; `path[0]` is the center.
    pub path: Vec<Vertex>,
    pub witness: Option<Vertex>,
}

fn check_equipment_common(g: &Graph, y: &VertexSet, d: usize, e: &Equipment) -> Verdict {
    vertices_in_range(g, "equipment", &[e.center])?;
    vertices_in_range(g, "path", &e.path)?;
    sets_in_range(g, &[("Y", y), ("neighbours", &e.independent_neighbors)])?;
    let nb = &e.independent_neighbors;
    require(!y.contains(e.center), "center lies outside Y", String::new)?;
    require(nb.len() == d, "d independent neighbours", || {
        format!("{} given", nb.len())
    })?;
    require(nb.is_subset(y), "neighbours lie in Y", String::new)?;
    require(
        nb.iter().all(|v| g.has_edge(e.center, v)),
        "neighbours are adjacent to the center",
        String::new,
    )?;
    require(g.is_stable(nb), "neighbours are pairwise nonadjacent", String::new)?;
    require(e.path.len() == d + 1, "path has length d", || {
        format!("{} vertices", e.path.len())
    })?;
    require(e.path[0] == e.center, "path starts at the center", String::new)?;
    require(
        e.path[1..].iter().all(|&v| y.contains(v)),
        "path lies in Y apart from the center",
        String::new,
    )?;
    require(is_induced_path(g, &e.path), "path is induced", String::new)
}

/// `center` is d-equipped in `y`.
pub fn validate_equipment(g: &Graph, y: &VertexSet, d: usize, e: &Equipment) -> Verdict {
    check_equipment_common(g, y, d, e)?;
    let w = e.witness.ok_or_else(|| Violation::new("witness is present", ""))?;
    vertices_in_range(g, "witness", &[w])?;
    require(
        y.contains(w) && !e.path.contains(&w),
        "witness lies in Y off the path",
        String::new,
    )?;
    require(
        g.has_edge(e.center, w),
        "witness is adjacent to the center",
        String::new,
    )?;
    require(
        e.path[1..].iter().all(|&p| !g.has_edge(w, p)),
        "witness has no other neighbour on the path",
        String::new,
    )
}

/// `center` is properly d-equipped in `y`: the neighbours are off the path and see none of
/// it apart from the center.
pub fn validate_proper_equipment(g: &Graph, y: &VertexSet, d: usize, e: &Equipment) -> Verdict {
    check_equipment_common(g, y, d, e)?;
    let rest = g.set_of(e.path[1..].iter().copied());
    require(
        e.independent_neighbors.is_disjoint(&rest),
        "neighbours are off the path",
        String::new,
    )?;
    require(
        e.independent_neighbors.iter().all(|v| !g.has_neighbor_in(v, &rest)),
        "neighbours have no neighbours on the path besides the center",
        String::new,
    )
}

/// Lexicographically first stable subset of `cand` of size `size`.
fn stable_subset(g: &Graph, cand: &[Vertex], size: usize) -> Option<Vec<Vertex>> {
    fn rec(g: &Graph, cand: &[Vertex], size: usize, from: usize, chosen: &mut Vec<Vertex>) -> bool {
        if chosen.len() == size {
            return true;
        }
        for i in from..cand.len() {
            if cand.len() - i < size - chosen.len() {
                break;
            }
            let v = cand[i];
            if chosen.iter().all(|&u| !g.has_edge(u, v)) {
                chosen.push(v);
                if rec(g, cand, size, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(size);
    rec(g, cand, size, 0, &mut chosen).then_some(chosen)
}

/// Visits induced paths with `length` edges from `start` whose other vertices lie in `within`,
/// in lexicographic order, until `visit` returns a value.
fn first_induced_path<T>(
    g: &Graph,
    start: Vertex,
    within: &VertexSet,
    length: usize,
    mut visit: impl FnMut(&[Vertex]) -> Option<T>,
) -> Option<T> {
    fn rec<T>(
        g: &Graph,
        within: &VertexSet,
        length: usize,
        path: &mut Vec<Vertex>,
        visit: &mut dyn FnMut(&[Vertex]) -> Option<T>,
    ) -> Option<T> {
        if path.len() == length + 1 {
            return visit(path);
        }
        let end = *path.last().unwrap();
        for next in g.neighbors_in(end, within).iter() {
            let ok = path[..path.len() - 1]
                .iter()
                .all(|&u| u != next && !g.has_edge(u, next))
                && next != end;
            if ok {
                path.push(next);
                if let Some(t) = rec(g, within, length, path, visit) {
                    return Some(t);
                }
                path.pop();
            }
        }
        None
    }
    rec(g, within, length, &mut vec![start], &mut visit)
}

fn check_equipment_args(g: &Graph, center: Vertex, y: &VertexSet, d: usize) -> Result<()> {
    g.check_vertex(center)?;
    g.check_set(y)?;
    if d == 0 {
        return Err(Error::arg("d must be at least 1"));
    }
    if y.contains(center) {
        return Err(Error::arg("the center must lie outside Y"));
    }
    Ok(())
}

/// Exhaustive search for d-equipment of `center` in `y`.
pub fn d_equipment(g: &Graph, center: Vertex, y: &VertexSet, d: usize) -> Result<Option<Equipment>> {
    check_equipment_args(g, center, y, d)?;
    let nbrs = g.neighbors_in(center, y).to_vec();
    let Some(independent) = stable_subset(g, &nbrs, d) else {
        return Ok(None);
    };
    Ok(first_induced_path(g, center, y, d, |path| {
        let witness = nbrs
            .iter()
            .copied()
            .find(|&w| !path.contains(&w) && path[1..].iter().all(|&p| !g.has_edge(w, p)))?;
        Some(Equipment {
            center,
            independent_neighbors: g.set_of(independent.iter().copied()),
            path: path.to_vec(),
            witness: Some(witness),
        })
    }))
}

/// Exhaustive search for proper d-equipment of `center` in `y`.
pub fn properly_d_equipped(g: &Graph, center: Vertex, y: &VertexSet, d: usize) -> Result<Option<Equipment>> {
    check_equipment_args(g, center, y, d)?;
    let nbrs = g.neighbors_in(center, y).to_vec();
    Ok(first_induced_path(g, center, y, d, |path| {
        let rest = g.set_of(path[1..].iter().copied());
        let cand: Vec<Vertex> = nbrs
            .iter()
            .copied()
            .filter(|&v| !rest.contains(v) && !g.has_neighbor_in(v, &rest))
            .collect();
        let chosen = stable_subset(g, &cand, d)?;
        Some(Equipment {
            center,
            independent_neighbors: g.set_of(chosen),
            path: path.to_vec(),
            witness: None,
        })
    }))
}

/// An induced path on `2r + 1` vertices with `v` in the middle position.
pub fn induced_path_centered(g: &Graph, v: Vertex, r: usize) -> Result<Option<Vec<Vertex>>> {
    g.check_vertex(v)?;
    if r == 0 {
        return Err(Error::arg("r must be at least 1"));
    }
    let all = g.all_vertices();
    Ok(first_induced_path(g, v, &all, r, |left| {
        // second arm: must avoid the first arm and its neighbourhood, apart from v itself
        let arm = g.set_of(left[1..].iter().copied());
        let mut blocked = g.open_neighborhood_of_set(&arm);
        blocked.union_with(&arm);
        blocked.remove(v);
        let mut within = all.difference(&blocked);
        within.remove(v);
        first_induced_path(g, v, &within, r, |right| {
            let mut out: Vec<Vertex> = left.iter().rev().copied().collect();
            out.extend_from_slice(&right[1..]);
            Some(out)
        })
    }))
}

// ---------------------------------------------------------------- spires, cathedrals, bands

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spire {
    /// The path `P`; one of its ends is the vertex `z` it shares with `A`.
    pub path: Vec<Vertex>,
    pub a_set: VertexSet,
    pub b_set: VertexSet,
}

impl Spire {
    pub fn height(&self) -> usize {
        self.path.len().saturating_sub(1)
    }

    /// `V(S) = A ∪ B ∪ V(P)`.
    pub fn vertex_set(&self, g: &Graph) -> VertexSet {
        let mut s = self.a_set.union(&self.b_set);
        s.union_with(&g.set_of(self.path.iter().copied()));
        s
    }

    fn path_set(&self, g: &Graph) -> VertexSet {
        g.set_of(self.path.iter().copied())
    }
}

pub fn validate_spire(g: &Graph, s: &Spire, dominated: Option<&VertexSet>) -> Verdict {
    vertices_in_range(g, "P", &s.path)?;
    sets_in_range(g, &[("A", &s.a_set), ("B", &s.b_set)])?;
    if let Some(c) = dominated {
        sets_in_range(g, &[("C", c)])?;
    }
    let (a, b) = (&s.a_set, &s.b_set);
    require(
        !s.path.is_empty() && is_induced_path(g, &s.path),
        "P is an induced path",
        String::new,
    )?;
    require(g.is_connected_set(a), "G[A] is connected", String::new)?;
    require(a.is_disjoint(b), "A and B are disjoint", || {
        format!("{:?}", a.intersection(b))
    })?;
    require(b.iter().all(|v| g.has_neighbor_in(v, a)), "A covers B", String::new)?;
    let p = s.path_set(g);
    require(p.is_disjoint(b), "P avoids B", String::new)?;
    let ends = [s.path[0], s.path[s.path.len() - 1]];
    let z = ends.into_iter().find(|&e| a.contains(e));
    let z = match z {
        Some(z) if p.intersection(a) == g.set_of([z]) => z,
        _ => return Err(Violation::new("an end z of P has V(P) ∩ A = {z}", "")),
    };
    let mut ab = a.union(b);
    ab.remove(z);
    require(
        p.iter().filter(|&v| v != z).all(|v| !g.has_neighbor_in(v, &ab)),
        "no vertex of P − z has a neighbour in (A ∪ B) − z",
        String::new,
    )?;
    if let Some(c) = dominated {
        require(
            c.is_disjoint(&s.vertex_set(g)),
            "C is disjoint from the spire",
            String::new,
        )?;
        let ap = a.union(&p);
        require(
            c.iter().all(|v| !g.has_neighbor_in(v, &ap)),
            "no edges between A ∪ V(P) and C",
            String::new,
        )?;
        require(c.iter().all(|v| g.has_neighbor_in(v, b)), "B covers C", String::new)?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cathedral {
    pub spires: Vec<Spire>,
}

pub fn validate_cathedral(g: &Graph, c: &Cathedral, free: bool, dominated: &VertexSet) -> Verdict {
    for (i, s) in c.spires.iter().enumerate() {
        validate_spire(g, s, None).map_err(|v| v.within(&format!("spire {}", i + 1)))?;
    }
    let vs: Vec<VertexSet> = c.spires.iter().map(|s| s.vertex_set(g)).collect();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            require(vs[i].is_disjoint(&vs[j]), "spires are pairwise disjoint", || {
                format!("spires {} and {}", i + 1, j + 1)
            })?;
        }
    }
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let (si, sj) = (&c.spires[i], &c.spires[j]);
            let allowed_j = if free {
                sj.b_set.clone()
            } else {
                sj.a_set.union(&sj.b_set)
            };
            for u in vs[i].iter() {
                for v in g.neighbors_in(u, &vs[j]).iter() {
                    require(si.b_set.contains(u), "cross edges leave from B_i", || {
                        format!("edge {u}-{v} between spires {} and {}", i + 1, j + 1)
                    })?;
                    let clause = if free {
                        "cross edges land in B_j"
                    } else {
                        "cross edges land in A_j ∪ B_j"
                    };
                    require(allowed_j.contains(v), clause, || {
                        format!("edge {u}-{v} between spires {} and {}", i + 1, j + 1)
                    })?;
                }
            }
        }
    }
    for (i, s) in c.spires.iter().enumerate() {
        validate_spire(g, s, Some(dominated)).map_err(|v| v.within(&format!("spire {}", i + 1)))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Band {
    pub d: usize,
    /// Embedding of `superstar(d)`; pattern vertex 0 is its root.
    pub superstar_embedding: Embedding,
    pub center: Vertex,
    pub b_set: VertexSet,
}

pub fn validate_band(g: &Graph, b: &Band, dominated: Option<&VertexSet>) -> Verdict {
    let star = superstar(b.d).map_err(|e| Violation::new("d is positive", e.to_string()))?;
    b.superstar_embedding
        .validate(g, &star.graph)
        .map_err(|v| v.within("H is an induced d-superstar"))?;
    vertices_in_range(g, "z", &[b.center])?;
    sets_in_range(g, &[("B", &b.b_set)])?;
    if let Some(c) = dominated {
        sets_in_range(g, &[("C", c)])?;
    }
    let z = b.center;
    let h = g.set_of(b.superstar_embedding.images());
    require(
        b.superstar_embedding.image(star.root) == z,
        "H is rooted at z",
        String::new,
    )?;
    require(h.is_disjoint(&b.b_set), "B avoids V(H)", String::new)?;
    require(
        b.b_set.iter().all(|v| g.has_edge(z, v)),
        "z is adjacent to every vertex of B",
        String::new,
    )?;
    require(
        h.iter().filter(|&v| v != z).all(|v| !g.has_neighbor_in(v, &b.b_set)),
        "no vertex of H − z has a neighbour in B",
        String::new,
    )?;
    if let Some(c) = dominated {
        require(h.is_disjoint(c), "V(H) avoids C", String::new)?;
        require(
            c.iter().all(|v| g.has_neighbor_in(v, &b.b_set)),
            "B covers C",
            String::new,
        )?;
        require(
            c.iter().all(|v| !g.has_neighbor_in(v, &h)),
            "no edges between V(H) and C",
            String::new,
        )?;
    }
    Ok(())
}

/// Builds a spire of height `d` dominating a level of large χ.
///
/// From each start vertex `x₀` (descending degree, then ascending id) take the max-χ component
/// `C₁` of `G − x₀` next to `x₀`, run the Gyárfás walk for `d` steps, split the residue into
/// distance levels `L₀ = {x_d}, L₁, …`, and pick `i ≥ 2` maximising `χ(Lᵢ)` (smallest `i` on
/// ties). The spire is `(P, L₀ ∪ … ∪ L_{i−2}, L_{i−1})`, returned with `Lᵢ` when `χ(Lᵢ) > min_chi`.
pub fn find_spire(g: &Graph, d: usize, min_chi: usize) -> Result<Option<(Spire, VertexSet)>> {
    find_spire_with_budget(g, d, min_chi, &Budget::unbounded())
}

pub fn find_spire_with_budget(
    g: &Graph,
    d: usize,
    min_chi: usize,
    budget: &Budget,
) -> Result<Option<(Spire, VertexSet)>> {
    if d == 0 {
        return Err(Error::arg("d must be at least 1"));
    }
    let mut starts: Vec<Vertex> = g.vertices().collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for x0 in starts {
        let rest = g.all_vertices().without(x0);
        let mut c1: Option<(usize, VertexSet)> = None;
        for comp in g.components_within(&rest) {
            if g.has_neighbor_in(x0, &comp) {
                let c = chi_with(g, &comp, budget, "spire")?;
                if c1.as_ref().is_none_or(|(b, _)| c > *b) {
                    c1 = Some((c, comp));
                }
            }
        }
        let Some((_, c1)) = c1 else { continue };
        let Ok(walk) = gyarfas_path_unchecked(g, &c1, x0, d) else {
            continue;
        };
        let xd = *walk.path.last().unwrap();
        let levels = g.bfs_levels_within(xd, &walk.residue, None);
        let mut best: Option<(usize, usize)> = None;
        for (i, level) in levels.iter().enumerate().skip(2) {
            let c = chi_with(g, level, budget, "spire")?;
            if best.is_none_or(|(_, b)| c > b) {
                best = Some((i, c));
            }
        }
        let Some((i, c)) = best else { continue };
        if c <= min_chi {
            continue;
        }
        let mut a_set = g.empty_set();
        for level in &levels[..i - 1] {
            a_set.union_with(level);
        }
        let spire = Spire {
            path: walk.path,
            a_set,
            b_set: levels[i - 1].clone(),
        };
        return Ok(Some((spire, levels[i].clone())));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{grotzsch, kneser, random_graph, random_triangle_free};
    use crate::invariants::chi_of;
    use crate::iso::find_induced_embedding;
    use proptest::prelude::*;

    fn star_with_leaves(leaves: usize) -> Graph {
        Graph::star(leaves)
    }

    #[test]
    fn x_split_examples() {
        // star: centre 0, leaves 1..=3
        let g = star_with_leaves(3);
        let x = g.set_of([0]);
        let ok = XSplit {
            x: 0,
            y: 1,
            z_set: g.set_of([2]),
        };
        assert_eq!(validate_x_split(&g, &x, &ok), Ok(()));
        let mut g2 = g.clone();
        let y2 = g2.add_vertex();
        g2.add_edge(1, y2).unwrap();
        g2.add_edge(2, y2).unwrap();
        let x2 = g2.set_of([0]);
        let bad = XSplit {
            x: 0,
            y: 1,
            z_set: g2.set_of([2, y2]),
        };
        assert_eq!(
            validate_x_split(&g2, &x2, &bad).unwrap_err().clause,
            "y has no neighbours in Z"
        );
        let p = Graph::path(5);
        let split = XSplit {
            x: 2,
            y: 1,
            z_set: p.set_of([3, 4]),
        };
        assert_eq!(validate_x_split(&p, &p.set_of([2]), &split), Ok(()));
        let far = XSplit {
            x: 2,
            y: 3,
            z_set: p.set_of([4]),
        };
        assert_eq!(
            validate_x_split(&p, &p.set_of([2]), &far).unwrap_err().clause,
            "x has a neighbour in Z"
        );
        let disconnected = XSplit {
            x: 0,
            y: 1,
            z_set: g.set_of([2, 3]),
        };
        assert_eq!(
            validate_x_split(&g, &x, &disconnected).unwrap_err().clause,
            "G[Z] is connected"
        );
    }

    #[test]
    fn x_split_search_examples() {
        let g = star_with_leaves(3);
        let found = find_x_split(&g, &g.set_of([0]), 0).unwrap().unwrap();
        assert_eq!(
            found,
            XSplit {
                x: 0,
                y: 1,
                z_set: g.set_of([2])
            }
        );
        let k3 = Graph::complete(3);
        assert_eq!(find_x_split(&k3, &k3.set_of([0]), 0).unwrap(), None);
        assert_eq!(find_x_split(&g, &g.set_of([0]), 1).unwrap(), None);
    }

    /// All (x, y, Z) triples, for the completeness oracle.
    fn brute_force_x_split_chi(g: &Graph, x_ground: &VertexSet) -> Option<usize> {
        let n = g.vertex_count();
        let mut best = None;
        for mask in 1u32..(1 << n) {
            let z = g.set_of((0..n).filter(|&v| mask >> v & 1 == 1));
            for x in x_ground.iter() {
                for y in g.vertices() {
                    let cand = XSplit { x, y, z_set: z.clone() };
                    if validate_x_split(g, x_ground, &cand).is_ok() {
                        let c = chi_of(g, &z);
                        best = best.max(Some(c));
                    }
                }
            }
        }
        best
    }

    #[test]
    fn x_split_search_is_complete_on_small_graphs() {
        for seed in 0..60 {
            let g = random_graph(7, 0.4, seed).unwrap();
            let x_ground = g.set_of((0..7).filter(|v| (seed as usize + v).is_multiple_of(3)));
            let best = brute_force_x_split_chi(&g, &x_ground);
            for t in 0..4 {
                let found = find_x_split(&g, &x_ground, t).unwrap();
                assert_eq!(found.is_some(), best.is_some_and(|b| b > t), "seed {seed} t {t}");
                if let Some(s) = found {
                    assert_eq!(validate_x_split(&g, &x_ground, &s), Ok(()));
                }
            }
        }
    }

    #[test]
    fn gyarfas_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let c = c5.all_vertices();
        let mut g = c5.clone();
        let x0 = g.add_vertex();
        g.add_edge(0, x0).unwrap();
        let c = g.set_of(c.iter());
        let zero = gyarfas_path(&g, &c, x0, 0).unwrap();
        assert_eq!((zero.path.clone(), zero.residue.clone()), (vec![x0], c.clone()));
        assert_eq!(validate_gyarfas(&g, &c, x0, 0, &zero), Ok(()));
        let one = gyarfas_path(&g, &c, x0, 1).unwrap();
        assert_eq!(one.path, vec![x0, 0]);
        assert_eq!(one.residue, g.set_of([1, 2, 3, 4]));
        assert_eq!(validate_gyarfas(&g, &c, x0, 1, &one), Ok(()));
        assert_eq!(gyarfas_bound(&g, &c, &one), (3, 2, 2));
        assert!(matches!(gyarfas_path(&g, &c, x0, 2), Err(Error::Argument(_))));
    }

    #[test]
    fn gyarfas_validator_catches_each_clause() {
        let c5 = Graph::cycle(5).unwrap();
        let mut g = c5.clone();
        let x0 = g.add_vertex();
        g.add_edge(0, x0).unwrap();
        let c = g.set_of(0..5);
        let good = gyarfas_path(&g, &c, x0, 1).unwrap();
        let mut r = good.clone();
        r.residue.insert(0);
        assert_eq!(
            validate_gyarfas(&g, &c, x0, 1, &r).unwrap_err().clause,
            "path avoids C′"
        );
        let mut r = good.clone();
        r.residue = g.set_of([1, 4]);
        assert_eq!(
            validate_gyarfas(&g, &c, x0, 1, &r).unwrap_err().clause,
            "G[C′] is connected"
        );
        let mut r = good;
        r.path = vec![x0, 1];
        assert_eq!(
            validate_gyarfas(&g, &c, x0, 1, &r).unwrap_err().clause,
            "path is induced"
        );
    }

    /// x = 0; n₁ = 1, n₂ = 2 leaves; path 0-3-4; witness 5.
    fn equipment_fixture() -> (Graph, VertexSet) {
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (0, 5)]).unwrap();
        let y = g.set_of(1..6);
        (g, y)
    }

    #[test]
    fn equipment_examples() {
        let (g, y) = equipment_fixture();
        let e = d_equipment(&g, 0, &y, 2).unwrap().unwrap();
        assert_eq!(validate_equipment(&g, &y, 2, &e), Ok(()));
        let p = properly_d_equipped(&g, 0, &y, 2).unwrap().unwrap();
        assert_eq!(validate_proper_equipment(&g, &y, 2, &p), Ok(()));
        let k3 = Graph::complete(3);
        assert_eq!(d_equipment(&k3, 0, &k3.set_of([1, 2]), 2).unwrap(), None);
        assert!(d_equipment(&g, 0, &g.set_of([0, 1]), 1).is_err());
    }

    #[test]
    fn equipment_validator_clauses() {
        let (g, y) = equipment_fixture();
        let e = Equipment {
            center: 0,
            independent_neighbors: g.set_of([1, 2]),
            path: vec![0, 3, 4],
            witness: Some(5),
        };
        assert_eq!(validate_equipment(&g, &y, 2, &e), Ok(()));
        let bad = Equipment {
            witness: Some(3),
            ..e.clone()
        };
        assert_eq!(
            validate_equipment(&g, &y, 2, &bad).unwrap_err().clause,
            "witness lies in Y off the path"
        );
        let bad = Equipment {
            path: vec![0, 3],
            ..e.clone()
        };
        assert_eq!(
            validate_equipment(&g, &y, 2, &bad).unwrap_err().clause,
            "path has length d"
        );
        let mut h = g.clone();
        h.add_edge(1, 2).unwrap();
        assert_eq!(
            validate_equipment(&h, &y, 2, &e).unwrap_err().clause,
            "neighbours are pairwise nonadjacent"
        );
        let mut h = g.clone();
        h.add_edge(1, 4).unwrap();
        assert_eq!(validate_equipment(&h, &y, 2, &e), Ok(()));
        assert_eq!(
            validate_proper_equipment(&h, &y, 2, &Equipment { witness: None, ..e })
                .unwrap_err()
                .clause,
            "neighbours have no neighbours on the path besides the center"
        );
    }

    #[test]
    fn centered_path_examples() {
        let p5 = Graph::path(5);
        assert_eq!(induced_path_centered(&p5, 2, 2).unwrap(), Some(vec![0, 1, 2, 3, 4]));
        let c5 = Graph::cycle(5).unwrap();
        assert!(c5
            .vertices()
            .all(|v| induced_path_centered(&c5, v, 2).unwrap().is_none()));
        let star = Graph::star(3);
        let p = induced_path_centered(&star, 0, 1).unwrap().unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p[1], 0);
        assert!(induced_path_centered(&p5, 0, 2).unwrap().is_none());
    }

    /// P = v₀v₁, A = {v₁, v₂}, B = {v₃}, C = {v₄} on the path v₀…v₄.
    fn spire_fixture() -> (Graph, Spire, VertexSet) {
        let g = Graph::path(5);
        let s = Spire {
            path: vec![0, 1],
            a_set: g.set_of([1, 2]),
            b_set: g.set_of([3]),
        };
        let c = g.set_of([4]);
        (g, s, c)
    }

    #[test]
    fn spire_examples() {
        let (g, s, c) = spire_fixture();
        assert_eq!(validate_spire(&g, &s, Some(&c)), Ok(()));
        assert_eq!(s.height(), 1);
        let v = validate_spire(&g, &s, Some(&g.set_of([2]))).unwrap_err();
        assert_eq!(v.clause, "C is disjoint from the spire");
        let overlap = Spire {
            b_set: g.set_of([2, 3]),
            ..s.clone()
        };
        assert_eq!(
            validate_spire(&g, &overlap, None).unwrap_err().clause,
            "A and B are disjoint"
        );
    }

    #[test]
    fn spire_domination_edge_clause() {
        // C = {v₂} with A = {v₁}: C touches A
        let g = Graph::path(5);
        let s = Spire {
            path: vec![0, 1],
            a_set: g.set_of([1]),
            b_set: g.set_of([]),
        };
        let v = validate_spire(&g, &s, Some(&g.set_of([2]))).unwrap_err();
        assert_eq!(v.clause, "no edges between A ∪ V(P) and C");
    }

    fn two_fixture_cathedral() -> (Graph, Cathedral, VertexSet) {
        // two copies of v₀…v₃ (ids 0..4 and 4..8) sharing C = {8}, joined to both B's
        let mut g = Graph::path(4).disjoint_union(&Graph::path(4));
        let c = g.add_vertex();
        g.add_edge(3, c).unwrap();
        g.add_edge(7, c).unwrap();
        let spire = |o: usize| Spire {
            path: vec![o, o + 1],
            a_set: g.set_of([o + 1, o + 2]),
            b_set: g.set_of([o + 3]),
        };
        let cath = Cathedral {
            spires: vec![spire(0), spire(4)],
        };
        let cs = g.set_of([c]);
        (g, cath, cs)
    }

    #[test]
    fn cathedral_examples() {
        let (g, cath, c) = two_fixture_cathedral();
        assert_eq!(validate_cathedral(&g, &cath, true, &c), Ok(()));
        let single = Cathedral {
            spires: vec![cath.spires[0].clone()],
        };
        assert_eq!(validate_cathedral(&g, &single, false, &c), Ok(()));
        let mut g2 = g.clone();
        g2.add_edge(2, 6).unwrap();
        let v = validate_cathedral(&g2, &cath, false, &c).unwrap_err();
        assert_eq!(v.clause, "cross edges leave from B_i");
        let mut g3 = g.clone();
        g3.add_edge(3, 6).unwrap();
        assert_eq!(validate_cathedral(&g3, &cath, false, &c), Ok(()));
        assert_eq!(
            validate_cathedral(&g3, &cath, true, &c).unwrap_err().clause,
            "cross edges land in B_j"
        );
    }

    #[test]
    fn band_examples() {
        let g = Graph::star(3);
        let band = Band {
            d: 1,
            superstar_embedding: Embedding { mapping: vec![0, 1] },
            center: 0,
            b_set: g.set_of([2]),
        };
        assert_eq!(validate_band(&g, &band, None), Ok(()));
        let bad = Band {
            b_set: g.set_of([1]),
            ..band.clone()
        };
        assert_eq!(validate_band(&g, &bad, None).unwrap_err().clause, "B avoids V(H)");
        // dominated set touched by a non-root superstar vertex
        let mut h = Graph::path(2);
        let b = h.add_vertex();
        let c = h.add_vertex();
        h.add_edge(0, b).unwrap();
        h.add_edge(b, c).unwrap();
        h.add_edge(1, c).unwrap();
        let band = Band {
            d: 1,
            superstar_embedding: Embedding { mapping: vec![0, 1] },
            center: 0,
            b_set: h.set_of([b]),
        };
        assert_eq!(validate_band(&h, &band, None), Ok(()));
        let v = validate_band(&h, &band, Some(&h.set_of([c]))).unwrap_err();
        assert_eq!(v.clause, "no edges between V(H) and C");
    }

    #[test]
    fn spire_search_examples() {
        let p5 = Graph::path(5);
        let (s, c) = find_spire(&p5, 1, 0).unwrap().unwrap();
        assert_eq!(validate_spire(&p5, &s, Some(&c)), Ok(()));
        assert_eq!(s.path, vec![1, 2]);
        assert_eq!(
            (s.a_set.to_vec(), s.b_set.to_vec(), c.to_vec()),
            (vec![2], vec![3], vec![4])
        );
        let g = grotzsch();
        let (s, c) = find_spire(&g, 1, 1).unwrap().unwrap();
        assert_eq!(validate_spire(&g, &s, Some(&c)), Ok(()));
        assert!(chi_of(&g, &c) >= 2);
        assert_eq!(find_spire(&Graph::complete(2), 1, 0).unwrap(), None);
    }

    #[test]
    fn stable_set_degree_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let out = check_stable_set_degree(&c5, &c5.set_of([0]), 2).unwrap();
        assert_eq!(
            out,
            StableSetOutcome::Holds {
                vertex: 0,
                outside_degree: 2
            }
        );
        assert_eq!(
            check_stable_set_degree(&c5, &c5.set_of([0, 1]), 1).unwrap(),
            StableSetOutcome::HypothesesFail
        );
        assert_eq!(
            check_stable_set_degree(&c5, &c5.set_of([0]), 3).unwrap(),
            StableSetOutcome::HypothesesFail
        );
    }

    #[test]
    fn petersen_has_rooted_claws_and_splits() {
        let g = kneser(5, 2).unwrap();
        let x = g.set_of([0]);
        let s = find_x_split(&g, &x, 1).unwrap().unwrap();
        assert_eq!(validate_x_split(&g, &x, &s), Ok(()));
        let claw = crate::tree_zoo::broom(1, 2).unwrap();
        assert!(find_induced_embedding(&g, &claw.graph, Some((claw.root, 0)))
            .unwrap()
            .is_some());
    }

    fn arb_seed() -> impl Strategy<Value = (usize, u64, u8)> {
        (4usize..=12, any::<u64>(), 1u8..=6)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn searchers_close_the_loop((n, seed, p) in arb_seed()) {
            let g = random_graph(n, p as f64 / 10.0, seed).unwrap();
            let x_ground = g.set_of(g.vertices().filter(|v| v % 3 == 0));
            if let Some(s) = find_x_split(&g, &x_ground, 0).unwrap() {
                prop_assert_eq!(validate_x_split(&g, &x_ground, &s), Ok(()));
            }
            if let Some((s, c)) = find_spire(&g, 1, 0).unwrap() {
                prop_assert_eq!(validate_spire(&g, &s, Some(&c)), Ok(()));
            }
            for v in g.vertices() {
                let y = g.all_vertices().without(v);
                let plain = d_equipment(&g, v, &y, 2).unwrap();
                let proper = properly_d_equipped(&g, v, &y, 2).unwrap();
                if let Some(e) = &plain {
                    prop_assert_eq!(validate_equipment(&g, &y, 2, e), Ok(()));
                }
                if let Some(e) = &proper {
                    prop_assert_eq!(validate_proper_equipment(&g, &y, 2, e), Ok(()));
                    prop_assert!(plain.is_some());
                }
                if let Some(p) = induced_path_centered(&g, v, 2).unwrap() {
                    prop_assert_eq!(p[2], v);
                    prop_assert!(is_induced_path(&g, &p));
                }
            }
        }

        #[test]
        fn gyarfas_closes_the_loop((n, seed, p) in arb_seed(), k in 0usize..=1) {
            let g = random_triangle_free(n, p as f64 / 10.0, seed).unwrap();
            for x0 in g.vertices() {
                let rest = g.all_vertices().without(x0);
                for comp in g.components_within(&rest) {
                    if let Ok(r) = gyarfas_path(&g, &comp, x0, k) {
                        prop_assert_eq!(validate_gyarfas(&g, &comp, x0, k, &r), Ok(()));
                    }
                }
            }
        }

        #[test]
        fn stable_set_degree_never_fails((n, seed, p) in arb_seed(), d in 0usize..4) {
            let g = random_graph(n.min(9), p as f64 / 10.0, seed).unwrap();
            let x = g.set_of(g.vertices().filter(|&v| v % 2 == 0 && g.neighbors(v).iter().all(|w| w % 2 == 1 || w > v)));
            let x = g.set_of(x.iter().filter(|&v| g.neighbors(v).intersection(&x).is_empty()));
            let out = check_stable_set_degree(&g, &x, d).unwrap();
            prop_assert_ne!(out, StableSetOutcome::Violated);
        }
    }
}
