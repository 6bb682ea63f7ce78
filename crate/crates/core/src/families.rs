//! Graph generators: the figure graphs, the `H_r` ordered family, the
//! two-parameter ordered construction built on it, and a few standard shapes.
//!
//! Figure vertices without a printed label are numbered after the labelled
//! ones, following the order in which the drawing lists them.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexOrdering};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters for {family}: {reason}")]
    Parameters { family: &'static str, reason: String },
    #[error("unknown family {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph together with the order its vertices are to be coloured in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedGraph {
    pub graph: Graph,
    pub ordering: VertexOrdering,
}

fn params(family: &'static str, reason: impl Into<String>) -> FamilyError {
    FamilyError::Parameters { family, reason: reason.into() }
}

/// Edges of `H_r` on labels `1..=2r+7`, shifted by `offset`.
fn h_r_edges(r: usize, offset: usize) -> Vec<(usize, usize)> {
    let top = 2 * r + 7;
    let mut edges = vec![(1, 2)];
    for i in 1..=r {
        edges.extend([(1, 2 * i + 1), (2 * i + 1, 2 * i + 2), (2 * i + 2, top)]);
    }
    edges.extend([
        (1, 2 * r + 4),
        (1, 2 * r + 6),
        (1, top),
        (2, 2 * r + 5),
        (2, top),
        (2 * r + 3, 2 * r + 4),
        (2 * r + 4, 2 * r + 6),
        (2 * r + 6, top),
    ]);
    edges.into_iter().map(|(u, v)| (u + offset, v + offset)).collect()
}

/// `H_r`: `2r + 7` vertices, `3r + 9` edges, ordered by label.
///
/// Vertex `2r + 7` is adjacent to `1`, `2`, the even vertices `4, 6, ..., 2r + 2`
/// and `2r + 6`; every other vertex has at most two earlier neighbours.
pub fn h_r(r: usize) -> Result<OrderedGraph, FamilyError> {
    if r < 1 {
        return Err(params("h_r", "r must be at least 1"));
    }
    let n = 2 * r + 7;
    Ok(OrderedGraph { graph: Graph::new(n, &h_r_edges(r, 0))?, ordering: VertexOrdering::identity(n) })
}

/// Ordered graph on which Maker wins the ordered vertex game with `k`
/// colours but Breaker wins with `l`.
///
/// For `k = 3` this is `H_{l-3}`. Otherwise `2(k-3)` vertices `u_1, u_2, ...`
/// come first (labels `1..=2(k-3)`): the odd ones isolated, the even ones a
/// clique joined to every vertex of a copy of `H_{l-k}` that follows them.
pub fn theorem14_graph(k: usize, l: usize) -> Result<OrderedGraph, FamilyError> {
    if k < 3 {
        return Err(params("theorem14", "k must be at least 3"));
    }
    if l <= k {
        return Err(params("theorem14", "l must exceed k"));
    }
    if k == 3 {
        return h_r(l - 3);
    }
    let us = 2 * (k - 3);
    let r = l - k;
    let vs = 2 * r + 7;
    let n = us + vs;
    let mut edges = h_r_edges(r, us);
    let even_us: Vec<usize> = (1..=k - 3).map(|i| 2 * i).collect();
    for (a, &x) in even_us.iter().enumerate() {
        for &y in &even_us[a + 1..] {
            edges.push((x, y));
        }
        edges.extend((us + 1..=n).map(|v| (x, v)));
    }
    Ok(OrderedGraph { graph: Graph::new(n, &edges)?, ordering: VertexOrdering::identity(n) })
}

/// Graph with `χ_g = 4 < χ_cg = 5`. Vertex 3 has degree 2 and sees neither 1 nor 2.
pub fn fig3_graph() -> Graph {
    Graph::new(
        7,
        &[
            (1, 2),
            (1, 4),
            (1, 5),
            (1, 6),
            (1, 7),
            (2, 5),
            (2, 6),
            (2, 7),
            (3, 5),
            (3, 7),
            (4, 6),
            (5, 7),
            (6, 7),
        ],
    )
    .expect("valid edge list")
}

/// Graph with `col_cg = 3` whose connected game colouring number rises to 4
/// when the returned edge `{1, 3}` is deleted.
pub fn fig4_graph() -> (Graph, (usize, usize)) {
    let g = Graph::new(
        8,
        &[
            (4, 7),
            (4, 5),
            (5, 6),
            (5, 8),
            (2, 6),
            (1, 2),
            (3, 8),
            (1, 3),
            (6, 7),
            (1, 6),
            (7, 8),
            (1, 8),
        ],
    )
    .expect("valid edge list");
    (g, (1, 3))
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v, v + 1)).collect();
    Graph::new(n, &edges).expect("path fits")
}

pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (1..n).map(|v| (v, v + 1)).collect();
    if n >= 3 {
        edges.push((1, n));
    }
    Graph::new(n, &edges).expect("cycle fits")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    Graph::new(n, &edges).expect("clique fits")
}

/// Star on `n` vertices: centre 1 joined to `2..=n`.
pub fn star(n: usize) -> Graph {
    let edges: Vec<_> = (2..=n).map(|v| (1, v)).collect();
    Graph::new(n, &edges).expect("star fits")
}

pub fn edgeless(n: usize) -> Graph {
    Graph::empty(n).expect("edgeless graph fits")
}

/// Standard families by name: `path`, `cycle`, `complete`, `star`, `edgeless`.
pub fn standard(name: &str, n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(params("standard", "n must be at least 1"));
    }
    if n > crate::graph::MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    match name {
        "path" => Ok(path(n)),
        "cycle" => Ok(cycle(n)),
        "complete" => Ok(complete(n)),
        "star" => Ok(star(n)),
        "edgeless" => Ok(edgeless(n)),
        _ => Err(FamilyError::Unknown(name.to_string())),
    }
}

/// A named graph as accepted on the command line, e.g. `h_r:2`, `fig3`,
/// `fig4`, `fig4-e`, `theorem14:4,5`, `complete:5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyGraph {
    pub name: String,
    pub graph: Graph,
    /// Set for the ordered families.
    pub ordering: Option<VertexOrdering>,
}

impl fmt::Display for FamilyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

pub fn by_name(spec: &str) -> Result<FamilyGraph, FamilyError> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums = || -> Result<Vec<usize>, FamilyError> {
        args.split(',')
            .filter(|s| !s.is_empty())
            .map(|s| s.trim().parse().map_err(|_| params("family", format!("bad number {s:?} in {spec:?}"))))
            .collect()
    };
    let one = || -> Result<usize, FamilyError> {
        match nums()?.as_slice() {
            &[x] => Ok(x),
            _ => Err(params("family", format!("{name} takes one parameter"))),
        }
    };
    let (graph, ordering) = match name {
        "h_r" | "hr" => {
            let og = h_r(one()?)?;
            (og.graph, Some(og.ordering))
        }
        "theorem14" => match nums()?.as_slice() {
            &[k, l] => {
                let og = theorem14_graph(k, l)?;
                (og.graph, Some(og.ordering))
            }
            _ => return Err(params("theorem14", "expected theorem14:K,L")),
        },
        "fig3" => (fig3_graph(), None),
        "fig4" => (fig4_graph().0, None),
        "fig4-e" => {
            let (g, (u, v)) = fig4_graph();
            (g.delete_edge(u, v)?, None)
        }
        other => (standard(other, one()?)?, None),
    };
    Ok(FamilyGraph { name: spec.to_string(), graph, ordering })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn earlier_neighbours(g: &Graph, v: usize) -> usize {
        g.neighbours(v).into_iter().filter(|&w| w < v).count()
    }

    #[test]
    fn h_r_structure() {
        for r in 1..=4 {
            let og = h_r(r).unwrap();
            let g = &og.graph;
            let top = 2 * r + 7;
            assert_eq!((g.n(), g.m()), (top, 3 * r + 9));
            assert_eq!(og.ordering, VertexOrdering::identity(top));
            for v in 1..top {
                assert!(earlier_neighbours(g, v) <= 2, "r={r} v={v}");
            }
            assert_eq!(g.degree(top), r + 3);
            assert_eq!(earlier_neighbours(g, top), r + 3);
            assert_eq!(g.neighbours(2 * r + 5), vec![2]);
        }
        assert!(h_r(0).is_err());
    }

    #[test]
    fn theorem14_construction() {
        for l in 4..=6 {
            assert_eq!(theorem14_graph(3, l).unwrap(), h_r(l - 3).unwrap());
        }
        let g = theorem14_graph(4, 5).unwrap().graph;
        assert_eq!(g.n(), 11);
        let g = theorem14_graph(5, 7).unwrap().graph;
        assert_eq!(g.n(), 4 + 11);
        assert!(g.has_edge(2, 4));
        for u in [2, 4] {
            assert_eq!(g.degree(u), 1 + 11);
        }
        for u in [1, 3] {
            assert_eq!(g.degree(u), 0);
        }
        assert!(theorem14_graph(2, 5).is_err());
        assert!(theorem14_graph(4, 4).is_err());
    }

    #[test]
    fn theorem14_restricts_to_h_r() {
        for (k, l) in [(4, 5), (5, 7), (6, 8)] {
            let g = theorem14_graph(k, l).unwrap().graph;
            let us = 2 * (k - 3);
            let expected = h_r(l - k).unwrap().graph;
            let restricted: Vec<_> = g
                .edges()
                .into_iter()
                .filter(|&(u, _)| u > us)
                .map(|(u, v)| (u - us, v - us))
                .collect();
            assert_eq!(Graph::new(expected.n(), &restricted).unwrap(), expected);
        }
    }

    #[test]
    fn fig3_guards() {
        let g = fig3_graph();
        assert_eq!((g.n(), g.m()), (7, 13));
        assert_eq!(g.degree(3), 2);
        assert!(!g.has_edge(3, 1) && !g.has_edge(3, 2));
        assert_eq!((1..=7).map(|v| g.degree(v)).sum::<usize>(), 26);
    }

    #[test]
    fn fig4_guards() {
        let (g, e) = fig4_graph();
        assert_eq!((g.n(), g.m()), (8, 12));
        assert_eq!(e, (1, 3));
        assert!(g.has_edge(1, 3) && g.has_edge(1, 2));
        let minus = g.delete_edge(1, 3).unwrap();
        assert_eq!(minus.m(), 11);
        assert!(minus.is_connected());
        // 3 is reachable from 1 only through e once 1 and 2 are taken
        assert_eq!(minus.neighbours(3), vec![8]);
    }

    #[test]
    fn standard_families() {
        assert_eq!(standard("complete", 3).unwrap().m(), 3);
        assert_eq!(standard("star", 4).unwrap().max_degree(), 3);
        assert_eq!(standard("cycle", 5).unwrap().m(), 5);
        assert_eq!(standard("edgeless", 5).unwrap().m(), 0);
        assert!(standard("wheel", 5).is_err());
        assert!(standard("path", 0).is_err());
    }

    #[test]
    fn names_resolve() {
        assert_eq!(by_name("h_r:2").unwrap().graph.n(), 11);
        assert!(by_name("h_r:2").unwrap().ordering.is_some());
        assert_eq!(by_name("fig4-e").unwrap().graph.m(), 11);
        assert_eq!(by_name("complete:5").unwrap().graph.m(), 10);
        assert_eq!(by_name("theorem14:4,5").unwrap().graph.n(), 11);
        assert!(by_name("complete").is_err());
        assert!(by_name("nope:3").is_err());
    }
}
