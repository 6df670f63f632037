//! Fixed benchmark inputs shared by the criterion targets.

use chibound::constructions::{grotzsch, kneser, mycielski, random_graph, random_triangle_free};
use chibound::Graph;

/// Named hosts ordered roughly by colouring difficulty.
pub fn coloring_hosts() -> Vec<(&'static str, Graph)> {
    let m3 = mycielski(&grotzsch());
    vec![
        ("grotzsch", grotzsch()),
        ("kneser-7-2", kneser(7, 2).unwrap()),
        ("mycielski-23", m3),
        ("random-30", random_graph(30, 0.5, 7).unwrap()),
    ]
}

/// Triangle-free hosts for the induced-tree searches.
pub fn search_hosts() -> Vec<(&'static str, Graph)> {
    vec![
        ("grotzsch", grotzsch()),
        ("random-tf-20", random_triangle_free(20, 0.3, 3).unwrap()),
        ("random-tf-40", random_triangle_free(40, 0.2, 5).unwrap()),
    ]
}
