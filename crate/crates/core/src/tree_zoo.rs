//! The tree families: superstars, brooms, bristles, binary and bristled
//! stars, two-legged caterpillars, double brooms, and rooted sums.
//!
//! Vertices are numbered in construction order: the superstar centre first,
//! then each leg from the centre outwards, then connecting paths in order.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A tree with a distinguished root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub graph: Graph,
    pub root: Vertex,
}

impl RootedTree {
    pub fn new(graph: Graph, root: Vertex) -> Result<Self> {
        if !graph.is_tree() {
            return Err(Error::arg("rooted tree must be connected with n - 1 edges"));
        }
        graph.check_vertex(root)?;
        Ok(RootedTree { graph, root })
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }
}

fn positive(name: &str, x: usize) -> Result<()> {
    if x == 0 {
        Err(Error::arg(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

/// Appends a path of `len` new vertices hanging off `from`; returns the last vertex.
fn hang_path(g: &mut Graph, from: Vertex, len: usize) -> Vertex {
    let mut prev = from;
    for _ in 0..len {
        let v = g.add_vertex();
        g.insert_edge(prev, v);
        prev = v;
    }
    prev
}

fn superstar_graph(d: usize) -> Graph {
    let mut g = Graph::empty(1);
    for _ in 0..d {
        hang_path(&mut g, 0, d);
    }
    g
}

/// `K₁,d` with every edge subdivided into a path of length `d`, rooted at the centre.
pub fn superstar(d: usize) -> Result<RootedTree> {
    positive("d", d)?;
    RootedTree::new(superstar_graph(d), 0)
}

/// Path `v₀..v_k` plus `d` leaves on `v_k`, rooted at `v₀`.
pub fn broom(k: usize, d: usize) -> Result<RootedTree> {
    positive("k", k)?;
    positive("d", d)?;
    let mut g = Graph::path(k + 1);
    for _ in 0..d {
        hang_path(&mut g, k, 1);
    }
    RootedTree::new(g, 0)
}

/// Path `v₀..v_{k+d}` plus one leaf on `v_k`, rooted at `v₀`.
pub fn bristle(k: usize, d: usize) -> Result<RootedTree> {
    positive("k", k)?;
    positive("d", d)?;
    let mut g = Graph::path(k + d + 1);
    hang_path(&mut g, k, 1);
    RootedTree::new(g, 0)
}

/// A `d`-superstar and a `d`-star with centres joined by a path of length `k`.
/// The superstar centre is vertex 0.
pub fn binary_star(k: usize, d: usize) -> Result<Graph> {
    positive("k", k)?;
    positive("d", d)?;
    let mut g = superstar_graph(d);
    let star_centre = hang_path(&mut g, 0, k);
    for _ in 0..d {
        hang_path(&mut g, star_centre, 1);
    }
    Ok(g)
}

/// A `d`-superstar and a path `T` of length `d + 1`, with the superstar centre
/// joined to the second vertex of `T` by a path of length `k`.
/// The superstar centre is vertex 0.
pub fn bristled_star(k: usize, d: usize) -> Result<Graph> {
    positive("k", k)?;
    positive("d", d)?;
    let mut g = superstar_graph(d);
    // connecting path ends at t₁; t₀ hangs off it and t₂..t_{d+1} continue the path
    let t1 = hang_path(&mut g, 0, k);
    hang_path(&mut g, t1, 1);
    hang_path(&mut g, t1, d);
    Ok(g)
}

/// Path on `path_len + 1` vertices plus two leaves attached at positions `p1` and `p2`.
pub fn two_legged_caterpillar(path_len: usize, p1: usize, p2: usize) -> Result<Graph> {
    positive("path_len", path_len)?;
    if p1 > path_len || p2 > path_len {
        return Err(Error::arg(format!("leg positions must lie in 0..={path_len}")));
    }
    let mut g = Graph::path(path_len + 1);
    hang_path(&mut g, p1, 1);
    hang_path(&mut g, p2, 1);
    Ok(g)
}

/// Stars with `a` and `b` leaves whose centres are joined by a path of length `k`.
pub fn double_broom(a: usize, k: usize, b: usize) -> Result<Graph> {
    positive("a", a)?;
    positive("k", k)?;
    positive("b", b)?;
    let mut g = Graph::path(k + 1);
    for _ in 0..a {
        hang_path(&mut g, 0, 1);
    }
    for _ in 0..b {
        hang_path(&mut g, k, 1);
    }
    Ok(g)
}

/// Disjoint union of the trees with all roots identified. The first tree keeps its
/// labels; later trees' non-root vertices follow in order.
pub fn rooted_sum(trees: &[RootedTree]) -> Result<RootedTree> {
    let (first, rest) = trees
        .split_first()
        .ok_or_else(|| Error::arg("rooted sum of an empty list"))?;
    let mut g = first.graph.clone();
    let root = first.root;
    for t in rest {
        let mut map = vec![root; t.vertex_count()];
        for v in t.graph.vertices() {
            if v != t.root {
                map[v] = g.add_vertex();
            }
        }
        for (u, v) in t.graph.edges() {
            g.insert_edge(map[u], map[v]);
        }
    }
    RootedTree::new(g, root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::count_induced_embeddings;

    fn degrees(g: &Graph) -> Vec<usize> {
        let mut d: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    }

    fn isomorphic(a: &Graph, b: &Graph) -> bool {
        a.vertex_count() == b.vertex_count()
            && a.edge_count() == b.edge_count()
            && count_induced_embeddings(a, b).unwrap() > 0
    }

    #[test]
    fn superstar_shapes() {
        let s1 = superstar(1).unwrap();
        assert_eq!((s1.vertex_count(), s1.root, s1.graph.degree(0)), (2, 0, 1));
        let s2 = superstar(2).unwrap();
        assert!(isomorphic(&s2.graph, &Graph::path(5)));
        assert_eq!(s2.graph.degree(s2.root), 2);
        let s3 = superstar(3).unwrap();
        assert_eq!(s3.vertex_count(), 10);
        assert_eq!(degrees(&s3.graph), vec![1, 1, 1, 2, 2, 2, 2, 2, 2, 3]);
        assert!(superstar(0).is_err());
    }

    #[test]
    fn broom_shapes() {
        assert!(isomorphic(&broom(1, 1).unwrap().graph, &Graph::path(3)));
        let b = broom(2, 3).unwrap();
        assert_eq!(b.vertex_count(), 6);
        assert_eq!(degrees(&b.graph).last(), Some(&4));
        let claw = broom(1, 2).unwrap();
        assert!(isomorphic(&claw.graph, &Graph::star(3)));
        assert_eq!(claw.graph.degree(claw.root), 1);
        assert!(broom(0, 1).is_err());
    }

    #[test]
    fn bristle_shapes() {
        assert!(isomorphic(&bristle(1, 1).unwrap().graph, &Graph::star(3)));
        let chair = bristle(2, 1).unwrap();
        assert_eq!(chair.vertex_count(), 5);
        assert_eq!(degrees(&chair.graph), vec![1, 1, 1, 2, 3]);
        assert_eq!(bristle(2, 2).unwrap().vertex_count(), 6);
        assert!(bristle(1, 0).is_err());
    }

    #[test]
    fn binary_star_shapes() {
        assert!(isomorphic(&binary_star(1, 1).unwrap(), &Graph::path(4)));
        assert_eq!(binary_star(3, 2).unwrap().vertex_count(), 10);
        let b = binary_star(2, 2).unwrap();
        assert_eq!(b.vertex_count(), 9);
        assert_eq!(degrees(&b).iter().filter(|&&d| d == 3).count(), 2);
    }

    #[test]
    fn bristled_star_shapes() {
        let b = bristled_star(1, 1).unwrap();
        assert_eq!(b.vertex_count(), 5);
        assert_eq!(degrees(&b), vec![1, 1, 1, 2, 3]);
        assert_eq!(bristled_star(3, 2).unwrap().vertex_count(), 11);
        assert_eq!(bristled_star(1, 2).unwrap().vertex_count(), 9);
    }

    #[test]
    fn caterpillar_shapes() {
        // six-vertex path with a leg on each of its two middle vertices
        let c = two_legged_caterpillar(5, 2, 3).unwrap();
        assert_eq!(c.vertex_count(), 8);
        assert_eq!(degrees(&c), vec![1, 1, 1, 1, 2, 2, 3, 3]);
        assert!(isomorphic(&two_legged_caterpillar(1, 0, 1).unwrap(), &Graph::path(4)));
        let spider = two_legged_caterpillar(2, 1, 1).unwrap();
        assert!(isomorphic(&spider, &Graph::star(4)));
        assert!(two_legged_caterpillar(2, 3, 0).is_err());
    }

    #[test]
    fn drawn_caterpillar_and_double_broom() {
        // eight-vertex path with legs on its 3rd and 5th vertices
        let left = Graph::from_edges(
            10,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 8), (4, 9)],
        )
        .unwrap();
        assert!(isomorphic(&left, &two_legged_caterpillar(7, 2, 4).unwrap()));
        // two 3-leaf stars joined by a path of length 3
        let right = Graph::from_edges(
            10,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (6, 1), (7, 1), (8, 4), (9, 4)],
        )
        .unwrap();
        assert!(isomorphic(&right, &double_broom(3, 3, 3).unwrap()));
    }

    #[test]
    fn double_broom_shapes() {
        let db = double_broom(2, 5, 2).unwrap();
        assert_eq!(db.vertex_count(), 10);
        assert_eq!(degrees(&db).iter().filter(|&&d| d > 2).count(), 2);
        assert!(isomorphic(&double_broom(1, 1, 1).unwrap(), &Graph::path(4)));
        assert!(isomorphic(&double_broom(3, 2, 1).unwrap(), &broom(3, 3).unwrap().graph));
        assert!(double_broom(0, 1, 1).is_err());
    }

    #[test]
    fn rooted_sum_shapes() {
        let b = broom(1, 1).unwrap();
        assert_eq!(rooted_sum(std::slice::from_ref(&b)).unwrap(), b);
        let two = rooted_sum(&[b.clone(), b]).unwrap();
        assert!(isomorphic(&two.graph, &Graph::path(5)));
        assert_eq!(two.graph.degree(two.root), 2);
        let edge = RootedTree::new(Graph::path(2), 0).unwrap();
        let star = rooted_sum(&vec![edge; 4]).unwrap();
        assert!(isomorphic(&star.graph, &Graph::star(4)));
        assert_eq!(star.root, 0);
        assert!(rooted_sum(&[]).is_err());
    }

    #[test]
    fn vertex_count_formulas() {
        for k in 1..=4 {
            for d in 1..=4 {
                assert_eq!(superstar(d).unwrap().vertex_count(), 1 + d * d);
                assert_eq!(broom(k, d).unwrap().vertex_count(), k + 1 + d);
                assert_eq!(bristle(k, d).unwrap().vertex_count(), k + d + 2);
                let bs = binary_star(k, d).unwrap();
                assert!(bs.is_tree());
                assert_eq!(bs.vertex_count(), d * d + d + k + 1);
                let br = bristled_star(k, d).unwrap();
                assert!(br.is_tree());
                assert_eq!(br.vertex_count(), d * d + d + k + 2);
                assert!(double_broom(k, d, k).unwrap().is_tree());
            }
        }
    }

    #[test]
    fn caterpillars_and_double_brooms_embed_in_the_star_families() {
        // every two-legged caterpillar embeds in some bristled star, every double broom in some binary star
        for (len, p1, p2) in [(1, 0, 1), (3, 1, 2), (4, 1, 3), (5, 2, 3), (4, 0, 2)] {
            let cat = two_legged_caterpillar(len, p1, p2).unwrap();
            let found = (1..=4)
                .any(|k| (1..=3).any(|d| count_induced_embeddings(&bristled_star(k, d).unwrap(), &cat).unwrap() > 0));
            assert!(found, "caterpillar ({len},{p1},{p2})");
        }
        for (a, k, b) in [(1, 1, 1), (2, 2, 2), (2, 3, 1), (3, 1, 2)] {
            let db = double_broom(a, k, b).unwrap();
            let found = (1..=4)
                .any(|kk| (1..=3).any(|d| count_induced_embeddings(&binary_star(kk, d).unwrap(), &db).unwrap() > 0));
            assert!(found, "double broom ({a},{k},{b})");
        }
    }
}
