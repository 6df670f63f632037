//! Host generators (Mycielski, Kneser, shift, seeded random graphs) and the
//! gadget constructions that refute two strengthenings of the equipment lemmas.

use std::fmt;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::invariants::{chromatic_number, extend_coloring, for_each_k_coloring, is_k_colorable, is_vertex_critical};
use crate::machinery::{d_equipment, induced_path_centered, properly_d_equipped};

/// Mycielski graph: originals `0..n`, shadows `n..2n`, apex `2n`.
pub fn mycielski(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut m = Graph::empty(2 * n + 1);
    for (u, v) in g.edges() {
        m.insert_edge(u, v);
        m.insert_edge(u, n + v);
        m.insert_edge(n + u, v);
    }
    for i in 0..n {
        m.insert_edge(n + i, 2 * n);
    }
    m
}

/// The Grötzsch graph, `mycielski(C₅)`; its apex is vertex 10.
pub fn grotzsch() -> Graph {
    mycielski(&Graph::cycle(5).expect("C5 exists"))
}

/// Kneser graph `K(n, k)`: `k`-subsets of `0..n` in lexicographic order, adjacent when disjoint.
pub fn kneser(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n < 2 * k {
        return Err(Error::arg(format!("kneser needs n >= 2k >= 2, got n={n}, k={k}")));
    }
    if n > 64 {
        return Err(Error::arg("kneser ground set is limited to 64 elements"));
    }
    let subsets: Vec<u64> = (0..n)
        .combinations(k)
        .map(|c| c.into_iter().fold(0u64, |m, i| m | 1 << i))
        .collect();
    let mut g = Graph::empty(subsets.len());
    for (i, a) in subsets.iter().enumerate() {
        for (j, b) in subsets.iter().enumerate().skip(i + 1) {
            if a & b == 0 {
                g.insert_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// Shift graph on pairs `i < j` from `1..=n` (lexicographic), with `(i,j) ~ (j,l)`.
pub fn shift_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::arg(format!("shift graph needs n >= 2, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (1..=n).tuple_combinations().collect();
    let mut g = Graph::empty(pairs.len());
    for (x, &(_, j)) in pairs.iter().enumerate() {
        for (y, &(i2, _)) in pairs.iter().enumerate() {
            if i2 == j {
                g.insert_edge(x, y);
            }
        }
    }
    Ok(g)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::arg(format!("edge probability must lie in [0, 1], got {p}")))
    }
}

/// `G(n, p)` driven by ChaCha8 seeded from `seed`; pairs are drawn in `(u < v)` column order.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for v in 1..n {
        for u in 0..v {
            if rng.random_bool(p) {
                g.insert_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Like [`random_graph`], but an edge is skipped whenever it would close a triangle.
pub fn random_triangle_free(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for v in 1..n {
        for u in 0..v {
            if rng.random_bool(p) && g.neighbors(u).is_disjoint(g.neighbors(v)) {
                g.insert_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// `H = base - u` with `I = N(u)`, ready for gadgets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalBase {
    pub h: Graph,
    pub i_set: VertexSet,
    /// The deleted vertex, as an id of the base graph.
    pub removed: Vertex,
    pub k: usize,
}

/// Deletes a maximum-degree vertex (lowest id on ties) from a triangle-free vertex-critical
/// graph of chromatic number `k + 1`, and checks every property the gadgets rely on.
pub fn critical_base(k: usize, base: Option<&Graph>) -> Result<CriticalBase> {
    let default;
    let base = match (base, k) {
        (Some(b), _) => b,
        (None, 2) => {
            default = Graph::cycle(5)?;
            &default
        }
        (None, 3) => {
            default = grotzsch();
            &default
        }
        (None, _) => return Err(Error::arg(format!("no default base for k={k}; supply one"))),
    };
    let fail = |property: &str| Err(Error::Construction(format!("base graph is not {property}")));
    if k == 0 {
        return Err(Error::arg("k must be at least 1"));
    }
    if !base.is_triangle_free() {
        return fail("triangle-free");
    }
    if chromatic_number(base).color_count() != k + 1 {
        return fail(&format!("of chromatic number {}", k + 1));
    }
    if !is_vertex_critical(base) {
        return fail("vertex-critical");
    }
    let u = base
        .vertices()
        .max_by_key(|&v| (base.degree(v), std::cmp::Reverse(v)))
        .expect("base has vertices");
    let (h, map) = base.delete_vertex(u);
    let i_set = h.set_of(
        map.iter()
            .enumerate()
            .filter(|&(_, &old)| base.has_edge(u, old))
            .map(|(new, _)| new),
    );

    if !h.is_triangle_free() {
        return fail("triangle-free after deletion");
    }
    if chromatic_number(&h).color_count() != k {
        return fail(&format!("{k}-chromatic after deletion"));
    }
    if !h.is_stable(&i_set) {
        return fail("giving a stable neighbourhood");
    }
    let mut rainbow = true;
    for_each_k_coloring(&h, k, |c| {
        let used: std::collections::BTreeSet<u32> = i_set.iter().map(|v| c[v]).collect();
        rainbow = used.len() == k;
        rainbow
    });
    if !rainbow {
        return fail("forcing every colour onto the neighbourhood");
    }
    Ok(CriticalBase {
        h,
        i_set,
        removed: u,
        k,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetVariant {
    /// Pairs `aᵢ, bᵢ` joined to `s_j` for `i ≤ j ≤ k−1`, plus cross edges; used with `|S| = k−1`.
    SplitPairs,
    /// A single row `aᵢ` joined to every `s_j` with `j ≠ i`; used with `|S| = k`.
    SingleRow,
}

impl std::str::FromStr for GadgetVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "split-pairs" => Ok(GadgetVariant::SplitPairs),
            "single-row" => Ok(GadgetVariant::SingleRow),
            other => Err(Error::arg(format!("unknown gadget variant '{other}'"))),
        }
    }
}

/// Upper end of the cross-edge range `1 ≤ i < j ≤ r` in the split-pairs gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum CrossRange {
    #[serde(rename = "k-1")]
    KMinusOne,
    #[default]
    #[serde(rename = "k")]
    K,
}

impl CrossRange {
    pub fn upper(self, k: usize) -> usize {
        match self {
            CrossRange::KMinusOne => k.saturating_sub(1),
            CrossRange::K => k,
        }
    }
}

impl std::str::FromStr for CrossRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k-1" => Ok(CrossRange::KMinusOne),
            "k" => Ok(CrossRange::K),
            other => Err(Error::arg(format!("cross range must be 'k' or 'k-1', got '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetSpec {
    pub variant: GadgetVariant,
    pub k: usize,
    /// `s₁, s₂, …` in ascending id order.
    pub s_list: Vec<Vertex>,
    pub cross_range: CrossRange,
}

impl fmt::Display for GadgetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} k={} S={:?}", self.variant, self.k, self.s_list)
    }
}

/// Vertices added by one gadget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttachedGadget {
    pub spec: GadgetSpec,
    /// `a₁, b₁, …, a_k, b_k` (split-pairs) or `a₁, …, a_k` (single-row).
    pub rows: Vec<Vertex>,
    pub special: Vertex,
}

/// Appends the gadget `B^S` to `g`; `i_set` is the designated stable set `S` must come from.
pub fn attach_gadget(g: &Graph, i_set: &VertexSet, spec: &GadgetSpec) -> Result<(Graph, AttachedGadget)> {
    let k = spec.k;
    let want = match spec.variant {
        GadgetVariant::SplitPairs => k.checked_sub(1).ok_or_else(|| Error::arg("k must be at least 1"))?,
        GadgetVariant::SingleRow => k,
    };
    if k == 0 || spec.s_list.len() != want {
        return Err(Error::arg(format!(
            "{:?} gadget with k={k} needs |S|={want}",
            spec.variant
        )));
    }
    if !spec.s_list.iter().all_unique() {
        return Err(Error::arg("gadget vertices s_j must be distinct"));
    }
    if let Some(&s) = spec
        .s_list
        .iter()
        .find(|&&s| !i_set.contains(s) || s >= g.vertex_count())
    {
        return Err(Error::arg(format!(
            "gadget vertex {s} is not in the designated stable set"
        )));
    }
    let s = &spec.s_list;
    let mut out = g.clone();
    let mut rows = Vec::new();
    match spec.variant {
        GadgetVariant::SplitPairs => {
            let (mut a, mut b) = (Vec::with_capacity(k), Vec::with_capacity(k));
            for _ in 0..k {
                a.push(out.add_vertex());
                b.push(out.add_vertex());
                rows.extend([a[a.len() - 1], b[b.len() - 1]]);
            }
            // 0-based: row i meets s_j for i ≤ j < k−1
            for i in 0..k {
                for sj in s.iter().skip(i) {
                    out.insert_edge(a[i], *sj);
                    out.insert_edge(b[i], *sj);
                }
            }
            let r = spec.cross_range.upper(k);
            for i in 0..r {
                for j in i + 1..r {
                    out.insert_edge(a[i], b[j]);
                    out.insert_edge(b[i], a[j]);
                }
            }
        }
        GadgetVariant::SingleRow => {
            for _ in 0..k {
                rows.push(out.add_vertex());
            }
            for (i, &ai) in rows.iter().enumerate() {
                for (j, &sj) in s.iter().enumerate() {
                    if i != j {
                        out.insert_edge(ai, sj);
                    }
                }
            }
        }
    }
    let special = out.add_vertex();
    for &r in &rows {
        out.insert_edge(special, r);
    }
    Ok((
        out,
        AttachedGadget {
            spec: spec.clone(),
            rows,
            special,
        },
    ))
}

/// Every assignment of at most `k` colours to `S` extends over the gadget rows.
pub fn gadget_extends_all(g: &Graph, gadget: &AttachedGadget) -> bool {
    let k = gadget.spec.k;
    let local = g.set_of(gadget.spec.s_list.iter().chain(&gadget.rows).copied());
    let (h, map) = g.induced_unchecked(&local);
    let s_pos: Vec<usize> = gadget
        .spec
        .s_list
        .iter()
        .map(|s| map.iter().position(|m| m == s).expect("s in local graph"))
        .collect();
    (0..s_pos.len())
        .map(|_| 1..=k as u32)
        .multi_cartesian_product()
        .all(|colours| {
            let mut partial = vec![0; h.vertex_count()];
            for (&p, &c) in s_pos.iter().zip(&colours) {
                partial[p] = c;
            }
            matches!(extend_coloring(&h, k, &partial), Ok(Some(_)))
        })
}

/// With `S` coloured by `|S|` distinct colours, every extension over the rows
/// puts all `k` colours on the special vertex's neighbourhood.
pub fn gadget_forces_rainbow(g: &Graph, gadget: &AttachedGadget) -> bool {
    let k = gadget.spec.k;
    let local = g.set_of(gadget.spec.s_list.iter().chain(&gadget.rows).copied());
    let (h, map) = g.induced_unchecked(&local);
    let pos = |v: Vertex| map.iter().position(|&m| m == v).expect("vertex in local graph");
    let s_pos: Vec<usize> = gadget.spec.s_list.iter().map(|&s| pos(s)).collect();
    let row_pos: Vec<usize> = gadget.rows.iter().map(|&r| pos(r)).collect();
    let mut forced = true;
    for_each_k_coloring(&h, k, |c| {
        let on_s: std::collections::BTreeSet<u32> = s_pos.iter().map(|&p| c[p]).collect();
        if on_s.len() == s_pos.len() {
            let on_rows: std::collections::BTreeSet<u32> = row_pos.iter().map(|&p| c[p]).collect();
            forced = on_rows.len() == k;
        }
        forced
    });
    forced
}

/// Checks recorded after a construction, each decided by exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleChecks {
    pub chi_drops_at_special: bool,
    pub every_gadget_extends: bool,
    /// Single-row only.
    pub rainbow_forcing: Option<bool>,
    pub centered_five_path: bool,
    pub properly_2_equipped: bool,
    pub plain_2_equipped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleResult {
    #[serde(with = "crate::io::graph6_serde")]
    pub graph: Graph,
    pub special_vertex: Vertex,
    pub base_vertex_count: usize,
    pub i_set: VertexSet,
    pub gadgets_added: Vec<GadgetSpec>,
    #[serde(skip)]
    pub gadgets: Vec<AttachedGadget>,
    pub chi_before: usize,
    pub chi_after: usize,
    pub log: Vec<String>,
    pub checks: CounterexampleChecks,
}

/// Adds gadgets for the `S ⊆ I` in lexicographic order until the graph stops being
/// `k`-colourable, then verifies the construction's claims.
pub fn build_counterexample(
    variant: GadgetVariant,
    k: usize,
    base: Option<&Graph>,
    cross_range: CrossRange,
) -> Result<CounterexampleResult> {
    let cb = critical_base(k, base)?;
    let size = match variant {
        GadgetVariant::SplitPairs => k - 1,
        GadgetVariant::SingleRow => k,
    };
    let mut g = cb.h.clone();
    let mut log = vec![format!(
        "base: {} vertices after deleting vertex {}; |I| = {}",
        cb.h.vertex_count(),
        cb.removed,
        cb.i_set.len()
    )];
    let mut gadgets = Vec::new();
    let subsets: Vec<Vec<Vertex>> = cb.i_set.iter().combinations(size).collect();
    for s_list in subsets {
        let spec = GadgetSpec {
            variant,
            k,
            s_list,
            cross_range,
        };
        let (next, gadget) = attach_gadget(&g, &cb.i_set, &spec)?;
        g = next;
        let colourable = is_k_colorable(&g, k).is_some();
        log.push(format!(
            "gadget {}: S={:?} v={} n={} {}-colourable={}",
            gadgets.len() + 1,
            spec.s_list,
            gadget.special,
            g.vertex_count(),
            k,
            colourable
        ));
        gadgets.push(gadget);
        if !colourable {
            return finish(g, cb, gadgets, log);
        }
    }
    Err(Error::ConstructionRefuted {
        gadgets: gadgets.len(),
        log,
    })
}

fn finish(
    g: Graph,
    cb: CriticalBase,
    gadgets: Vec<AttachedGadget>,
    mut log: Vec<String>,
) -> Result<CounterexampleResult> {
    let k = cb.k;
    let last = gadgets.last().expect("at least one gadget");
    let v = last.special;
    let chi_after = chromatic_number(&g).color_count();
    let (minus_v, _) = g.delete_vertex(v);
    let chi_before = chromatic_number(&minus_v).color_count();
    let chi_drops_at_special = chi_before == k && chi_after == k + 1;
    if !chi_drops_at_special {
        return Err(Error::Construction(format!(
            "expected χ(G−v) = {k} < χ(G) = {}, found {chi_before} and {chi_after}",
            k + 1
        )));
    }
    let every_gadget_extends = gadgets.iter().all(|gd| gadget_extends_all(&g, gd));
    let rainbow_forcing =
        (last.spec.variant == GadgetVariant::SingleRow).then(|| gadgets.iter().all(|gd| gadget_forces_rainbow(&g, gd)));
    let others = g.all_vertices().without(v);
    let checks = CounterexampleChecks {
        chi_drops_at_special,
        every_gadget_extends,
        rainbow_forcing,
        centered_five_path: induced_path_centered(&g, v, 2)?.is_some(),
        properly_2_equipped: properly_d_equipped(&g, v, &others, 2)?.is_some(),
        plain_2_equipped: d_equipment(&g, v, &others, 2)?.is_some(),
    };
    log.push(format!("checks: {checks:?}"));
    Ok(CounterexampleResult {
        special_vertex: v,
        base_vertex_count: cb.h.vertex_count(),
        i_set: cb.i_set,
        gadgets_added: gadgets.iter().map(|gd| gd.spec.clone()).collect(),
        gadgets,
        chi_before,
        chi_after,
        log,
        checks,
        graph: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{clique_number, oracle::brute_force_chi};

    #[test]
    fn mycielski_examples() {
        let c5 = mycielski(&Graph::complete(2));
        assert_eq!((c5.vertex_count(), c5.edge_count()), (5, 5));
        assert!(c5.vertices().all(|v| c5.degree(v) == 2) && c5.is_connected());
        let g = grotzsch();
        assert_eq!((g.vertex_count(), g.edge_count()), (11, 20));
        assert_eq!(brute_force_chi(&g), 4);
        let e = mycielski(&Graph::empty(3));
        assert_eq!(e.vertex_count(), 7);
        assert_eq!(brute_force_chi(&e), 2);
    }

    #[test]
    fn grotzsch_properties() {
        let g = grotzsch();
        assert_eq!(clique_number(&g).0, 2);
        assert_eq!(chromatic_number(&g).color_count(), 4);
        assert!(is_vertex_critical(&g));
    }

    #[test]
    fn kneser_and_shift_examples() {
        let p = kneser(5, 2).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert!(p.vertices().all(|v| p.degree(v) == 3));
        assert!(kneser(3, 2).is_err());
        assert!(kneser(4, 0).is_err());
        let s = shift_graph(4).unwrap();
        assert_eq!(s.vertex_count(), 6);
        // (1,2)-(2,3), (1,2)-(2,4), (1,3)-(3,4), (2,3)-(3,4)
        assert_eq!(s.edge_count(), 4);
        assert_eq!(brute_force_chi(&s), 2);
        assert!(shift_graph(1).is_err());
    }

    #[test]
    fn random_graph_is_seeded() {
        assert_eq!(random_graph(12, 0.0, 7).unwrap().edge_count(), 0);
        assert_eq!(random_graph(6, 1.0, 7).unwrap(), Graph::complete(6));
        assert_eq!(random_graph(20, 0.3, 42).unwrap(), random_graph(20, 0.3, 42).unwrap());
        assert_ne!(random_graph(20, 0.3, 42).unwrap(), random_graph(20, 0.3, 43).unwrap());
        assert!(random_graph(3, 1.5, 0).is_err());
        let t = random_triangle_free(15, 0.5, 3).unwrap();
        assert!(t.is_triangle_free());
    }

    #[test]
    fn random_graph_stream_is_pinned() {
        // guards the generator contract: same seed, same graph on every platform
        let g = random_graph(10, 0.5, 2024).unwrap();
        let again = crate::io::parse_graph6(&crate::io::write_graph6(&g)).unwrap();
        assert_eq!(g, again);
        assert_eq!(
            crate::io::graph_hash(&g),
            crate::io::graph_hash(&random_graph(10, 0.5, 2024).unwrap())
        );
    }

    #[test]
    fn critical_base_k2() {
        let cb = critical_base(2, None).unwrap();
        assert_eq!(cb.h, Graph::path(4));
        assert_eq!(cb.i_set.to_vec(), vec![0, 3]);
        let mut seen = 0;
        for_each_k_coloring(&cb.h, 2, |c| {
            seen += 1;
            assert_ne!(c[0], c[3]);
            true
        });
        assert_eq!(seen, 2);
    }

    #[test]
    fn critical_base_k3() {
        let cb = critical_base(3, None).unwrap();
        assert_eq!(cb.removed, 10);
        assert_eq!(cb.h.vertex_count(), 10);
        assert_eq!(cb.i_set.to_vec(), vec![5, 6, 7, 8, 9]);
        let mut all = true;
        let count = for_each_k_coloring(&cb.h, 3, |c| {
            let used: std::collections::BTreeSet<u32> = cb.i_set.iter().map(|v| c[v]).collect();
            all &= used.len() == 3;
            true
        });
        assert!(count > 0 && all);
    }

    #[test]
    fn critical_base_rejects_bad_bases() {
        let err = critical_base(2, Some(&Graph::complete(3))).unwrap_err();
        assert!(matches!(err, Error::Construction(ref m) if m.contains("triangle-free")));
        let err = critical_base(2, Some(&Graph::cycle(7).unwrap().disjoint_union(&Graph::empty(1)))).unwrap_err();
        assert!(matches!(err, Error::Construction(ref m) if m.contains("vertex-critical")));
        assert!(critical_base(3, Some(&Graph::cycle(5).unwrap())).is_err());
        assert!(critical_base(5, None).is_err());
    }

    #[test]
    fn split_pairs_gadget_edges() {
        let h = Graph::path(4);
        let i = h.set_of([0, 3]);
        let spec = GadgetSpec {
            variant: GadgetVariant::SplitPairs,
            k: 2,
            s_list: vec![0],
            cross_range: CrossRange::K,
        };
        let (g, gd) = attach_gadget(&h, &i, &spec).unwrap();
        let [a1, b1, a2, b2] = gd.rows[..] else { panic!() };
        assert_eq!(g.vertex_count(), 9);
        assert!(g.has_edge(a1, 0) && g.has_edge(b1, 0));
        assert_eq!((g.degree(a2), g.degree(b2)), (2, 2));
        assert!(g.has_edge(a1, b2) && g.has_edge(b1, a2));
        assert!(!g.has_edge(a1, a2) && !g.has_edge(a1, b1));
        assert!(gd.rows.iter().all(|&r| g.has_edge(gd.special, r)));
        let verbatim = GadgetSpec {
            cross_range: CrossRange::KMinusOne,
            ..spec
        };
        let (g2, gd2) = attach_gadget(&h, &i, &verbatim).unwrap();
        assert_eq!(g2.edge_count(), h.edge_count() + 2 + 4);
        assert_eq!(g2.degree(gd2.rows[2]), 1);
    }

    #[test]
    fn single_row_gadget_edges() {
        let cb = critical_base(3, None).unwrap();
        let spec = GadgetSpec {
            variant: GadgetVariant::SingleRow,
            k: 3,
            s_list: vec![5, 6, 7],
            cross_range: CrossRange::K,
        };
        let (g, gd) = attach_gadget(&cb.h, &cb.i_set, &spec).unwrap();
        let [a1, a2, a3] = gd.rows[..] else { panic!() };
        assert_eq!(g.neighbors(a1).to_vec(), vec![6, 7, gd.special]);
        assert_eq!(g.neighbors(a2).to_vec(), vec![5, 7, gd.special]);
        assert_eq!(g.neighbors(a3).to_vec(), vec![5, 6, gd.special]);
        assert_eq!(g.degree(gd.special), 3);
        assert!(gadget_extends_all(&g, &gd));
        assert!(gadget_forces_rainbow(&g, &gd));
    }

    #[test]
    fn gadget_spec_is_validated() {
        let h = Graph::path(4);
        let i = h.set_of([0, 3]);
        let mut spec = GadgetSpec {
            variant: GadgetVariant::SplitPairs,
            k: 2,
            s_list: vec![1],
            cross_range: CrossRange::K,
        };
        assert!(attach_gadget(&h, &i, &spec).is_err());
        spec.s_list = vec![0, 3];
        assert!(attach_gadget(&h, &i, &spec).is_err());
        spec.variant = GadgetVariant::SingleRow;
        spec.s_list = vec![0, 0];
        assert!(attach_gadget(&h, &i, &spec).is_err());
    }

    #[test]
    fn split_pairs_k2() {
        let r = build_counterexample(GadgetVariant::SplitPairs, 2, None, CrossRange::K).unwrap();
        assert_eq!((r.chi_before, r.chi_after), (2, 3));
        assert!(!r.checks.centered_five_path);
        assert!(r.checks.every_gadget_extends);
        assert_eq!(brute_force_chi(&r.graph), 3);
    }

    #[test]
    fn verbatim_cross_range_never_raises_chi_at_k2() {
        match build_counterexample(GadgetVariant::SplitPairs, 2, None, CrossRange::KMinusOne) {
            Err(Error::ConstructionRefuted { gadgets, log }) => {
                assert_eq!(gadgets, 2);
                assert_eq!(log.len(), 3);
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn single_row_k2() {
        let r = build_counterexample(GadgetVariant::SingleRow, 2, None, CrossRange::K).unwrap();
        assert_eq!((r.chi_before, r.chi_after), (2, 3));
        assert_eq!(r.checks.rainbow_forcing, Some(true));
    }

    #[test]
    fn result_json_has_graph6() {
        let r = build_counterexample(GadgetVariant::SplitPairs, 2, None, CrossRange::K).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let g6 = v["graph"].as_str().unwrap();
        assert_eq!(crate::io::parse_graph6(g6).unwrap(), r.graph);
        assert_eq!(v["gadgets_added"][0]["variant"], "split-pairs");
        assert_eq!(v["gadgets_added"][0]["cross_range"], "k");
    }
}
