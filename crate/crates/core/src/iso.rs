//! Induced subgraph isomorphism for small patterns, and the starry test.
//!
//! Embeddings are labelled maps: automorphic images count separately.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::budget::Budget;
use crate::error::{require, Error, Result, Verdict, Violation};
use crate::graph::{Graph, Vertex};
use crate::tree_zoo::{binary_star, bristled_star};

/// Injective map from pattern vertices to host vertices; `mapping[p]` is the image of `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub mapping: Vec<Vertex>,
}

impl Embedding {
    pub fn image(&self, p: Vertex) -> Vertex {
        self.mapping[p]
    }

    pub fn images(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.mapping.iter().copied()
    }

    /// Checks the map is an induced embedding of `pattern` into `host`, pair by pair.
    pub fn validate(&self, host: &Graph, pattern: &Graph) -> Verdict {
        let n = pattern.vertex_count();
        require(self.mapping.len() == n, "mapping covers every pattern vertex", || {
            format!("{} images for {n} pattern vertices", self.mapping.len())
        })?;
        if let Some(p) = self.mapping.iter().position(|&h| h >= host.vertex_count()) {
            return Err(Violation::new(
                "images are host vertices",
                format!("pattern vertex {p}"),
            ));
        }
        for p in 0..n {
            for q in p + 1..n {
                let h = self.mapping[p];
                require(h != self.mapping[q], "mapping is injective", || {
                    format!("{p} and {q} both map to {h}")
                })?;
            }
        }
        for p in 0..n {
            for q in p + 1..n {
                let (hp, hq) = (self.mapping[p], self.mapping[q]);
                if pattern.has_edge(p, q) {
                    require(host.has_edge(hp, hq), "edges are preserved", || {
                        format!("pattern edge {p}-{q}")
                    })?;
                } else {
                    require(!host.has_edge(hp, hq), "non-edges are preserved", || {
                        format!("pattern non-edge {p}-{q}")
                    })?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Embedding {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.mapping.iter().enumerate().map(|(p, &h)| [p, h]))
    }
}

impl<'de> Deserialize<'de> for Embedding {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let mut pairs = Vec::<[usize; 2]>::deserialize(deserializer)?;
        pairs.sort_unstable();
        for (i, [p, _]) in pairs.iter().enumerate() {
            if *p != i {
                return Err(D::Error::custom(
                    "embedding must list pattern vertices 0..n exactly once",
                ));
            }
        }
        Ok(Embedding {
            mapping: pairs.into_iter().map(|[_, h]| h).collect(),
        })
    }
}

/// Search plan: pattern vertices in DFS order with an already-placed neighbour for each.
struct Plan {
    order: Vec<Vertex>,
    parent: Vec<Option<Vertex>>,
    /// Pattern distance from the anchor vertex, where reachable.
    anchor_dist: Vec<Option<usize>>,
}

fn plan(pattern: &Graph, anchor: Option<Vertex>) -> Plan {
    let n = pattern.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut next_root = anchor;
    while order.len() < n {
        let root = next_root.take().unwrap_or_else(|| {
            // max degree among unplaced vertices, lowest id on ties
            (0..n)
                .filter(|&v| !seen[v])
                .max_by_key(|&v| (pattern.degree(v), std::cmp::Reverse(v)))
                .expect("unplaced vertex exists")
        });
        let mut stack = vec![(root, None)];
        while let Some((v, par)) = stack.pop() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            parent[v] = par;
            order.push(v);
            let nbrs: Vec<Vertex> = pattern.neighbors(v).iter().filter(|&w| !seen[w]).collect();
            for &w in nbrs.iter().rev() {
                stack.push((w, Some(v)));
            }
        }
    }
    let anchor_dist = match anchor {
        Some(a) => pattern.distances_from(a),
        None => vec![None; n],
    };
    Plan {
        order,
        parent,
        anchor_dist,
    }
}

struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    plan: Plan,
    host_anchor_dist: Option<Vec<Option<usize>>>,
    mapping: Vec<Option<Vertex>>,
    used: Vec<bool>,
    budget: &'a Budget,
}

impl Matcher<'_> {
    fn consistent(&self, p: Vertex, h: Vertex) -> bool {
        if self.used[h] || self.host.degree(h) < self.pattern.degree(p) {
            return false;
        }
        if let (Some(hd), Some(pd)) = (&self.host_anchor_dist, self.plan.anchor_dist[p]) {
            // an induced path in the pattern maps to a walk in the host
            match hd[h] {
                Some(d) if d <= pd => {}
                _ => return false,
            }
        }
        for (q, &img) in self.mapping.iter().enumerate() {
            if let Some(hq) = img {
                if self.pattern.has_edge(p, q) != self.host.has_edge(h, hq) {
                    return false;
                }
            }
        }
        true
    }

    fn search(&mut self, depth: usize) -> Result<bool> {
        if depth == self.plan.order.len() {
            return Ok(true);
        }
        if !self.budget.tick() {
            return Err(Error::Indeterminate {
                search: "induced embedding",
            });
        }
        let p = self.plan.order[depth];
        if self.mapping[p].is_some() {
            // pre-placed anchor
            return self.search(depth + 1);
        }
        let candidates: Vec<Vertex> = match self.plan.parent[p] {
            Some(par) => self.host.neighbors(self.mapping[par].expect("parent placed")).to_vec(),
            None => self.host.vertices().collect(),
        };
        for h in candidates {
            if self.consistent(p, h) {
                self.mapping[p] = Some(h);
                self.used[h] = true;
                if self.search(depth + 1)? {
                    return Ok(true);
                }
                self.mapping[p] = None;
                self.used[h] = false;
            }
        }
        Ok(false)
    }
}

/// Finds an induced copy of `pattern` in `host`, optionally forcing `anchor.0 ↦ anchor.1`.
pub fn find_induced_embedding(
    host: &Graph,
    pattern: &Graph,
    anchor: Option<(Vertex, Vertex)>,
) -> Result<Option<Embedding>> {
    find_induced_embedding_with_budget(host, pattern, anchor, &Budget::unbounded())
}

/// As [`find_induced_embedding`]; budget exhaustion is [`Error::Indeterminate`], never absence.
pub fn find_induced_embedding_with_budget(
    host: &Graph,
    pattern: &Graph,
    anchor: Option<(Vertex, Vertex)>,
    budget: &Budget,
) -> Result<Option<Embedding>> {
    if let Some((p, h)) = anchor {
        pattern.check_vertex(p)?;
        host.check_vertex(h)?;
    }
    if pattern.vertex_count() > host.vertex_count() {
        return Ok(None);
    }
    let mut m = Matcher {
        host,
        pattern,
        plan: plan(pattern, anchor.map(|a| a.0)),
        host_anchor_dist: anchor.map(|(_, h)| host.distances_from(h)),
        mapping: vec![None; pattern.vertex_count()],
        used: vec![false; host.vertex_count()],
        budget,
    };
    if let Some((p, h)) = anchor {
        if !m.consistent(p, h) {
            return Ok(None);
        }
        m.mapping[p] = Some(h);
        m.used[h] = true;
    }
    if m.search(0)? {
        let mapping = m.mapping.into_iter().map(|h| h.expect("complete mapping")).collect();
        Ok(Some(Embedding { mapping }))
    } else {
        Ok(None)
    }
}

/// Counts labelled induced embeddings by extending injections in pattern-id order,
/// with no pruning beyond adjacency to earlier images.
pub fn count_induced_embeddings(host: &Graph, pattern: &Graph) -> Result<u64> {
    count_induced_embeddings_with_budget(host, pattern, &Budget::unbounded())
}

pub fn count_induced_embeddings_with_budget(host: &Graph, pattern: &Graph, budget: &Budget) -> Result<u64> {
    fn extend(host: &Graph, pattern: &Graph, image: &mut Vec<Vertex>, budget: &Budget) -> Result<u64> {
        let p = image.len();
        if p == pattern.vertex_count() {
            return Ok(1);
        }
        if !budget.tick() {
            return Err(Error::Indeterminate {
                search: "embedding count",
            });
        }
        let mut total = 0;
        for h in host.vertices() {
            let ok = image
                .iter()
                .enumerate()
                .all(|(q, &hq)| hq != h && pattern.has_edge(p, q) == host.has_edge(h, hq));
            if ok {
                image.push(h);
                total += extend(host, pattern, image, budget)?;
                image.pop();
            }
        }
        Ok(total)
    }
    extend(host, pattern, &mut Vec::with_capacity(pattern.vertex_count()), budget)
}

/// Witness that a host contains both a (k,d)-binary star and a (k,d)-bristled star.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarryCertificate {
    pub binary_embedding: Embedding,
    pub bristled_embedding: Embedding,
}

/// Searches for both star patterns; absent as soon as either one is missing.
pub fn is_kd_starry(host: &Graph, k: usize, d: usize) -> Result<Option<StarryCertificate>> {
    is_kd_starry_with_budget(host, k, d, &Budget::unbounded())
}

pub fn is_kd_starry_with_budget(
    host: &Graph,
    k: usize,
    d: usize,
    budget: &Budget,
) -> Result<Option<StarryCertificate>> {
    let binary = binary_star(k, d)?;
    let Some(binary_embedding) = find_induced_embedding_with_budget(host, &binary, None, budget)? else {
        return Ok(None);
    };
    let bristled = bristled_star(k, d)?;
    let Some(bristled_embedding) = find_induced_embedding_with_budget(host, &bristled, None, budget)? else {
        return Ok(None);
    };
    Ok(Some(StarryCertificate {
        binary_embedding,
        bristled_embedding,
    }))
}

pub fn validate_starry(host: &Graph, k: usize, d: usize, cert: &StarryCertificate) -> Verdict {
    let binary = binary_star(k, d).map_err(|e| Violation::new("parameters are positive", e.to_string()))?;
    let bristled = bristled_star(k, d).map_err(|e| Violation::new("parameters are positive", e.to_string()))?;
    cert.binary_embedding
        .validate(host, &binary)
        .map_err(|v| v.within("binary star"))?;
    cert.bristled_embedding
        .validate(host, &bristled)
        .map_err(|v| v.within("bristled star"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::kneser;
    use crate::tree_zoo::broom;
    use proptest::prelude::*;

    /// Independent oracle: every injection, checked in full at the leaves.
    fn brute_force_count(host: &Graph, pattern: &Graph) -> u64 {
        let (n, p) = (host.vertex_count(), pattern.vertex_count());
        let mut count = 0;
        let mut image = vec![0; p];
        fn rec(host: &Graph, pattern: &Graph, image: &mut Vec<usize>, i: usize, n: usize, count: &mut u64) {
            if i == image.len() {
                let ok = (0..i).all(|a| {
                    (a + 1..i)
                        .all(|b| image[a] != image[b] && pattern.has_edge(a, b) == host.has_edge(image[a], image[b]))
                });
                *count += ok as u64;
                return;
            }
            for h in 0..n {
                image[i] = h;
                rec(host, pattern, image, i + 1, n, count);
            }
        }
        rec(host, pattern, &mut image, 0, n, &mut count);
        count
    }

    #[test]
    fn embedding_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let e = find_induced_embedding(&c5, &Graph::path(4), None).unwrap().unwrap();
        assert_eq!(e.validate(&c5, &Graph::path(4)), Ok(()));
        assert!(find_induced_embedding(&Graph::complete(4), &Graph::path(3), None)
            .unwrap()
            .is_none());
        let petersen = kneser(5, 2).unwrap();
        let claw = broom(1, 2).unwrap();
        for h in petersen.vertices() {
            let e = find_induced_embedding(&petersen, &claw.graph, Some((claw.root, h)))
                .unwrap()
                .unwrap();
            assert_eq!(e.image(claw.root), h);
            assert_eq!(e.validate(&petersen, &claw.graph), Ok(()));
        }
        assert!(brute_force_count(&petersen, &claw.graph) > 0);
    }

    #[test]
    fn anchor_ids_are_checked() {
        let g = Graph::path(3);
        assert!(matches!(
            find_induced_embedding(&g, &g, Some((5, 0))),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            find_induced_embedding(&g, &g, Some((0, 7))),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn count_examples() {
        let g = kneser(5, 2).unwrap();
        assert_eq!(count_induced_embeddings(&g, &Graph::empty(1)).unwrap(), 10);
        assert_eq!(count_induced_embeddings(&g, &Graph::complete(2)).unwrap(), 30);
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(count_induced_embeddings(&c5, &Graph::path(3)).unwrap(), 10);
        assert_eq!(brute_force_count(&c5, &Graph::path(3)), 10);
        assert_eq!(count_induced_embeddings(&c5, &Graph::empty(0)).unwrap(), 1);
    }

    #[test]
    fn budget_exhaustion_is_indeterminate() {
        let host = kneser(7, 3).unwrap();
        let pattern = Graph::cycle(7).unwrap();
        let r = find_induced_embedding_with_budget(&host, &pattern, None, &Budget::nodes(3));
        assert!(matches!(r, Err(Error::Indeterminate { .. })));
    }

    #[test]
    fn starry_examples() {
        assert!(is_kd_starry(&Graph::cycle(7).unwrap(), 1, 1).unwrap().is_none());
        let host = binary_star(1, 1).unwrap().disjoint_union(&bristled_star(1, 1).unwrap());
        let cert = is_kd_starry(&host, 1, 1).unwrap().unwrap();
        assert_eq!(validate_starry(&host, 1, 1, &cert), Ok(()));
        let petersen = kneser(5, 2).unwrap();
        let cert = is_kd_starry(&petersen, 1, 1).unwrap().unwrap();
        assert_eq!(validate_starry(&petersen, 1, 1, &cert), Ok(()));
        assert!(brute_force_count(&petersen, &binary_star(1, 1).unwrap()) > 0);
        assert!(brute_force_count(&petersen, &bristled_star(1, 1).unwrap()) > 0);
    }

    #[test]
    fn validator_rejects_broken_embeddings() {
        let host = Graph::cycle(5).unwrap();
        let p3 = Graph::path(3);
        let bad = Embedding { mapping: vec![0, 1, 1] };
        assert_eq!(bad.validate(&host, &p3).unwrap_err().clause, "mapping is injective");
        let chord = Embedding { mapping: vec![0, 1, 4] };
        // 4 is adjacent to 0 in C5, so the non-edge 0-2 is not preserved
        assert_eq!(
            chord.validate(&host, &p3).unwrap_err().clause,
            "non-edges are preserved"
        );
        let short = Embedding { mapping: vec![0, 1] };
        assert!(short.validate(&host, &p3).is_err());
    }

    #[test]
    fn embedding_json_is_pair_list() {
        let e = Embedding { mapping: vec![4, 2] };
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, "[[0,4],[1,2]]");
        assert_eq!(serde_json::from_str::<Embedding>(&s).unwrap(), e);
        assert!(serde_json::from_str::<Embedding>("[[0,1],[0,2]]").is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut g = Graph::empty(n);
                let mut it = bits.into_iter();
                for v in 1..n {
                    for u in 0..v {
                        if it.next().unwrap() {
                            g.add_edge(u, v).unwrap();
                        }
                    }
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn presence_matches_oracle(host in arb_graph(7), pattern in arb_graph(4)) {
            let found = find_induced_embedding(&host, &pattern, None).unwrap();
            let count = brute_force_count(&host, &pattern);
            prop_assert_eq!(found.is_some(), count > 0);
            prop_assert_eq!(count_induced_embeddings(&host, &pattern).unwrap(), count);
            if let Some(e) = found {
                prop_assert_eq!(e.validate(&host, &pattern), Ok(()));
            }
        }

        #[test]
        fn anchored_absence_is_exhaustive(host in arb_graph(7), pattern in arb_graph(4), a in 0usize..4, b in 0usize..7) {
            prop_assume!(a < pattern.vertex_count() && b < host.vertex_count());
            let anchored = find_induced_embedding(&host, &pattern, Some((a, b))).unwrap();
            match anchored {
                Some(e) => {
                    prop_assert_eq!(e.image(a), b);
                    prop_assert_eq!(e.validate(&host, &pattern), Ok(()));
                }
                None => {
                    // brute force over injections fixing a ↦ b
                    let n = host.vertex_count();
                    let p = pattern.vertex_count();
                    let mut any = false;
                    let mut image = vec![0usize; p];
                    let total = n.pow(p as u32);
                    for code in 0..total {
                        let mut c = code;
                        for x in image.iter_mut() {
                            *x = c % n;
                            c /= n;
                        }
                        if image[a] != b {
                            continue;
                        }
                        let e = Embedding { mapping: image.clone() };
                        if e.validate(&host, &pattern).is_ok() {
                            any = true;
                            break;
                        }
                    }
                    prop_assert!(!any);
                }
            }
        }

        #[test]
        fn embeddings_survive_host_growth(host in arb_graph(6), pattern in arb_graph(4), extra in arb_graph(3)) {
            let bigger = host.disjoint_union(&extra);
            if find_induced_embedding(&host, &pattern, None).unwrap().is_some() {
                prop_assert!(find_induced_embedding(&bigger, &pattern, None).unwrap().is_some());
            }
        }
    }
}
