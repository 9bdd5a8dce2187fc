//! Fixed example patterns.

use super::gadgets::all_a_lift;
use crate::rgp::Rgp;

fn build(alphabet: &str, vertices: &[&str], arcs: &[(&str, &str, &str)]) -> Rgp {
    Rgp::build(alphabet, vertices, arcs).expect("fixture is well formed")
}

/// Both arcs as opposite pairs.
fn symmetric(alphabet: &str, vertices: &[&str], edges: &[(&str, &str, &str)]) -> Rgp {
    let mut arcs = Vec::with_capacity(2 * edges.len());
    for &(u, v, l) in edges {
        arcs.push((u, v, l));
        if u != v {
            arcs.push((v, u, l));
        }
    }
    build(alphabet, vertices, &arcs)
}

/// A pair with no n-homomorphism either way: a `b`-arc and an `a+`-arc into
/// one vertex, against a single `a`-arc.
pub fn figure_one() -> (Rgp, Rgp) {
    let p = build("ab", &["x", "y", "s"], &[("x", "s", "b"), ("y", "s", "a+")]);
    let q = build("ab", &["u", "v"], &[("v", "u", "a")]);
    (p, q)
}

/// The 5-vertex directed path `e -> d -> c -> b -> a` labelled
/// `a+, a, a+, a`.
pub fn figure_two() -> Rgp {
    build("a", &["a", "b", "c", "d", "e"], &[("e", "d", "a+"), ("d", "c", "a"), ("c", "b", "a+"), ("b", "a", "a")])
}

const GROETZSCH_EDGES: [(usize, usize); 20] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 0),
    (5, 4),
    (5, 1),
    (6, 0),
    (6, 2),
    (7, 1),
    (7, 3),
    (8, 2),
    (8, 4),
    (9, 3),
    (9, 0),
    (10, 5),
    (10, 6),
    (10, 7),
    (10, 8),
    (10, 9),
];

/// The Grötzsch graph as an all-`a` symmetric pattern: outer cycle `0..5`,
/// vertex `5 + i` adjacent to the outer neighbours of `i`, centre `10`.
pub fn groetzsch() -> Rgp {
    all_a_lift(11, &GROETZSCH_EDGES)
}

/// An undirected n-core: the Grötzsch graph, an `a+`-edge to a lone vertex,
/// and an `a+`-edge from there to an `a`-triangle.
pub fn figure_three() -> Rgp {
    let mut names: Vec<String> = (0..5).map(|i| format!("x{i}")).collect();
    names.extend((0..5).map(|i| format!("y{i}")));
    names.push("c".into());
    names.extend(["p0", "t0", "t1", "t2"].map(String::from));
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut edges: Vec<(&str, &str, &str)> = GROETZSCH_EDGES.iter().map(|&(u, v)| (refs[u], refs[v], "a")).collect();
    edges.extend([("x0", "p0", "a+"), ("p0", "t0", "a+"), ("t0", "t1", "a"), ("t1", "t2", "a"), ("t2", "t0", "a")]);
    symmetric("a", &refs, &edges)
}

/// The pattern simplified in two steps by the directed-path pipeline:
/// `a`-components X (a path), Y (eight vertices on four levels) and Z (one
/// arc), joined by seven `a+`-arcs.
pub fn figure_four() -> Rgp {
    build(
        "a",
        &["x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3", "y4", "y5", "y6", "y7", "z0", "z1"],
        &[
            ("x3", "x2", "a"),
            ("x2", "x1", "a"),
            ("x1", "x0", "a"),
            ("y2", "y1", "a"),
            ("y1", "y0", "a"),
            ("y3", "y2", "a"),
            ("y6", "y2", "a"),
            ("y6", "y5", "a"),
            ("y7", "y5", "a"),
            ("y5", "y4", "a"),
            ("y4", "y0", "a"),
            ("z1", "z0", "a"),
            ("y7", "x2", "a+"),
            ("y2", "x0", "a+"),
            ("x3", "y3", "a+"),
            ("x3", "y6", "a+"),
            ("y5", "y1", "a+"),
            ("y7", "z1", "a+"),
            ("y4", "z0", "a+"),
        ],
    )
}

/// A 9-vertex directed tree with labels `a` and `a+` that is an n-core.
pub fn figure_five() -> Rgp {
    build("a", &["x", "y", "z", "u", "v", "w", "s", "t", "p"], &[
        ("x", "y", "a+"),
        ("u", "s", "a"),
        ("z", "v", "a"),
        ("z", "w", "a+"),
        ("w", "p", "a"),
        ("v", "t", "a+"),
        ("y", "u", "a"),
        ("x", "z", "a"),
    ])
}

/// A directed cycle of `n` arcs, all labelled `label`.
pub fn cycle(n: usize, label: &str) -> Rgp {
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let arcs: Vec<(&str, &str, &str)> = (0..n).map(|i| (refs[i], refs[(i + 1) % n], label)).collect();
    build("a", &refs, &arcs)
}

/// A directed path on `n` vertices with the given labels, `q0 -> q1 -> ...`.
pub fn path(labels: &[&str]) -> Rgp {
    let names: Vec<String> = (0..=labels.len()).map(|i| format!("q{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let arcs: Vec<(&str, &str, &str)> = labels.iter().enumerate().map(|(i, &l)| (refs[i], refs[i + 1], l)).collect();
    build("a", &refs, &arcs)
}

/// `a+`-cycles of lengths 2 and 3 sharing the vertex `o`.
pub fn glued_plus_cycles() -> Rgp {
    build("a", &["o", "b1", "c1", "c2"], &[
        ("o", "b1", "a+"),
        ("b1", "o", "a+"),
        ("o", "c1", "a+"),
        ("c1", "c2", "a+"),
        ("c2", "o", "a+"),
    ])
}

/// Two `a`-triangles joined by one `a+`-edge.
pub fn triangle_plus_triangle() -> Rgp {
    symmetric("a", &["a", "b", "c", "x", "y", "z"], &[
        ("a", "b", "a"),
        ("b", "c", "a"),
        ("c", "a", "a"),
        ("x", "y", "a"),
        ("y", "z", "a"),
        ("z", "x", "a"),
        ("a", "x", "a+"),
    ])
}
