//! Shared fixtures for the integration suites.

use adiasearch::graph::Graph;
use nalgebra::DVector;

/// Cycle graph C_k from its edge list.
pub fn cycle_graph(k: usize) -> Graph {
    assert!(k >= 3);
    let mut text = String::new();
    for i in 0..k {
        text.push_str(&format!("{} {}\n", i, (i + 1) % k));
    }
    Graph::load_edge_list(&text).unwrap()
}

/// The 3-cube, hand-listed: vertices are bit patterns, edges flip one bit.
pub fn three_cube() -> Graph {
    Graph::load_edge_list("0 1\n0 2\n0 4\n1 3\n1 5\n2 3\n2 6\n3 7\n4 5\n4 6\n5 7\n6 7").unwrap()
}

/// Closed-walk count `(A^m)_{marked,marked}` by repeated matrix-vector
/// products; independent of the spectral pipeline.
pub fn walk_count(g: &Graph, marked: usize, m: usize) -> f64 {
    let mut v = DVector::<f64>::zeros(g.vertex_count());
    v[marked] = 1.0;
    for _ in 0..m {
        v = g.adjacency() * v;
    }
    v[marked]
}
