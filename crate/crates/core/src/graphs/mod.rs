//! Directed graphs and the analytic cyclic homology of their Leavitt and
//! Cohn path algebras, via the matrix `N_E`.

mod snf;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

pub use snf::{identity, int_matrix, matmul, smith_normal_form, IntMatrix, Smith};

use crate::error::{Error, Result};
use crate::scalars::PrimeConfig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub s: String,
    pub r: String,
}

/// Finite directed graph; parallel edges and loops allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl DirectedGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let g = DirectedGraph { vertices, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let g: DirectedGraph = serde_json::from_str(s)
            .map_err(|e| Error::InvalidPresentation(format!("graph file: {e}")))?;
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v) {
                return Err(Error::InvalidPresentation(format!("duplicate vertex {v}")));
            }
        }
        for e in &self.edges {
            for end in [&e.s, &e.r] {
                if !seen.contains(end) {
                    return Err(Error::InvalidPresentation(format!("edge endpoint {end} is not a vertex")));
                }
            }
        }
        Ok(())
    }

    /// One vertex with `n` loops.
    pub fn rose(n: usize) -> Self {
        DirectedGraph {
            vertices: vec!["v".into()],
            edges: (0..n).map(|_| Edge { s: "v".into(), r: "v".into() }).collect(),
        }
    }

    /// Random graph on `n` vertices with each ordered pair carrying up to
    /// `max_parallel` edges.
    pub fn random<R: Rng>(rng: &mut R, n: usize, density: f64, max_parallel: usize) -> Self {
        let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for s in &vertices {
            for r in &vertices {
                if rng.gen_bool(density) {
                    for _ in 0..rng.gen_range(1..=max_parallel) {
                        edges.push(Edge { s: s.clone(), r: r.clone() });
                    }
                }
            }
        }
        DirectedGraph { vertices, edges }
    }

    fn index(&self) -> BTreeMap<&str, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect()
    }
}

/// Vertices emitting at least one edge, in vertex order.
pub fn regular_vertices(g: &DirectedGraph) -> Vec<String> {
    g.vertices
        .iter()
        .filter(|v| g.edges.iter().any(|e| &e.s == *v))
        .cloned()
        .collect()
}

/// `N_E(v, w) = δ_{v,w} − #{e : s(e) = w, r(e) = v}`, rows `E⁰`, columns `reg(E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceNE {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub matrix: IntMatrix,
}

pub fn incidence_ne(g: &DirectedGraph) -> IncidenceNE {
    let idx = g.index();
    let cols = regular_vertices(g);
    let mut matrix: IntMatrix = vec![vec![BigInt::from(0); cols.len()]; g.vertices.len()];
    for (j, w) in cols.iter().enumerate() {
        matrix[idx[w.as_str()]][j] += 1;
        for e in g.edges.iter().filter(|e| &e.s == w) {
            matrix[idx[e.r.as_str()]][j] -= 1;
        }
    }
    IncidenceNE {
        rows: g.vertices.clone(),
        cols,
        matrix,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HAResult {
    pub dim_ha0: usize,
    pub dim_ha1: usize,
    pub snf_invariants: Vec<BigInt>,
}

/// `HA(L(E)) ≅ coker(N_E) ⊕ ker(N_E)[1]`, dimensions over a field of characteristic 0.
pub fn ha_leavitt(g: &DirectedGraph, _cfg: &PrimeConfig) -> HAResult {
    let ne = incidence_ne(g);
    let s = smith_normal_form(&ne.matrix);
    let rank = s.rank();
    HAResult {
        dim_ha0: ne.rows.len() - rank,
        dim_ha1: ne.cols.len() - rank,
        snf_invariants: s.invariants(),
    }
}

/// `HA(C(E)) ≅ V^{(E⁰)}`.
pub fn ha_cohn(g: &DirectedGraph, _cfg: &PrimeConfig) -> HAResult {
    HAResult {
        dim_ha0: g.vertices.len(),
        dim_ha1: 0,
        snf_invariants: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrimeConfig {
        PrimeConfig::new(5, 4).unwrap()
    }

    fn line() -> DirectedGraph {
        DirectedGraph::from_json(r#"{"vertices":["v","w"],"edges":[{"s":"v","r":"w"}]}"#).unwrap()
    }

    #[test]
    fn regular() {
        assert_eq!(regular_vertices(&DirectedGraph::rose(1)), vec!["v"]);
        assert_eq!(regular_vertices(&line()), vec!["v"]);
        assert!(regular_vertices(&DirectedGraph::rose(0)).is_empty());
    }

    #[test]
    fn incidence() {
        assert_eq!(incidence_ne(&DirectedGraph::rose(1)).matrix, int_matrix(&[vec![0]]));
        assert_eq!(incidence_ne(&DirectedGraph::rose(3)).matrix, int_matrix(&[vec![-2]]));
        assert_eq!(incidence_ne(&line()).matrix, int_matrix(&[vec![1], vec![-1]]));
    }

    #[test]
    fn leavitt_and_cohn() {
        let r = ha_leavitt(&DirectedGraph::rose(1), &cfg());
        assert_eq!((r.dim_ha0, r.dim_ha1), (1, 1));
        let r = ha_leavitt(&DirectedGraph::rose(0), &cfg());
        assert_eq!((r.dim_ha0, r.dim_ha1), (1, 0));
        let r = ha_leavitt(&DirectedGraph::rose(2), &cfg());
        assert_eq!((r.dim_ha0, r.dim_ha1), (0, 0));
        let r = ha_leavitt(&line(), &cfg());
        assert_eq!((r.dim_ha0, r.dim_ha1), (1, 0));
        assert_eq!(ha_cohn(&DirectedGraph::rose(1), &cfg()).dim_ha0, 1);
        assert_eq!(ha_cohn(&line(), &cfg()).dim_ha0, 2);
    }

    #[test]
    fn bad_graph_files() {
        assert!(DirectedGraph::from_json(r#"{"vertices":["v"],"edges":[{"s":"v","r":"w"}]}"#).is_err());
        assert!(DirectedGraph::from_json("not json").is_err());
    }
}
