//! Named cubic test graphs.
//!
//! Connected cubic graphs are automatically twin-free once they contain no
//! K4 or K_{3,3} component, which makes them a convenient stress corpus for
//! the solver and for the distance-5 packing construction.

use crate::graph::{lcf, Graph};

/// Circular ladder CL_k = C_k x K_2 (the k-prism), 2k vertices.
pub fn prism(k: usize) -> Graph {
    assert!(k >= 3);
    let mut edges = Vec::with_capacity(3 * k);
    for i in 0..k {
        let j = (i + 1) % k;
        edges.push((i, j)); // outer cycle
        edges.push((k + i, k + j)); // inner cycle
        edges.push((i, k + i)); // rungs
    }
    Graph::new(2 * k, &edges).unwrap()
}

/// Moebius ladder ML_n: C_n plus all n/2 main diagonals (n even).
pub fn moebius_ladder(n: usize) -> Graph {
    assert!(n >= 6 && n % 2 == 0);
    lcf(n, &[n as i64 / 2]).unwrap()
}

/// 3-cube graph Q3.
pub fn cube() -> Graph {
    lcf(8, &[3, -3]).unwrap()
}

/// Franklin graph (12 vertices, girth 4).
pub fn franklin() -> Graph {
    lcf(12, &[5, -5]).unwrap()
}

/// Frucht graph (12 vertices, trivial automorphism group).
pub fn frucht() -> Graph {
    lcf(12, &[-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2]).unwrap()
}

/// Truncated tetrahedron (12 vertices, girth 3).
pub fn truncated_tetrahedron() -> Graph {
    lcf(12, &[2, 6, -2]).unwrap()
}

/// All corpus graphs with their names, ascending by order.
pub fn cubic_corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("prism_3", prism(3)),
        ("cube_q3", cube()),
        ("moebius_ladder_8", moebius_ladder(8)),
        ("petersen", crate::graph::petersen()),
        ("prism_5", prism(5)),
        ("moebius_ladder_10", moebius_ladder(10)),
        ("franklin", franklin()),
        ("frucht", frucht()),
        ("truncated_tetrahedron", truncated_tetrahedron()),
        ("prism_6", prism(6)),
        ("moebius_ladder_12", moebius_ladder(12)),
    ]
}
