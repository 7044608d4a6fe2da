//! Crisp graph analog: one fixed vertex joined to a bridge vertex of an
//! oriented triangle on the three permuting vertices.

mod graph;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use graph::{Edge, ExportFormat, Graph, Membership, Node, Weight};

use crate::symcore::{pair_count, IndexQuad, PairBasis, RiemannComponents, DIM, INDEX_LETTERS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex ids must be distinct and below 4, got fixed {fixed} and permuting {permuting:?}")]
    InvalidSpec { fixed: usize, permuting: [usize; 3] },
    #[error("(r + 1) = {0} is odd, so the pair vertices cannot be formed")]
    OddParity(u64),
    #[error("the K6 structure needs a four-dimensional tensor, got n = {0}")]
    Dimension(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Cw,
    Ccw,
}

impl Orientation {
    /// Counter-clockwise counts positive.
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Ccw => 1,
            Orientation::Cw => -1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Cw => Orientation::Ccw,
            Orientation::Ccw => Orientation::Cw,
        }
    }
}

/// Node id for vertex `v` (`v1` .. `v4`).
pub fn vertex_id(v: usize) -> String {
    format!("v{}", v + 1)
}

/// Fixed vertex plus the ordered permuting triple. `orientation` is the
/// cycle direction of the odd-numbered variants G1, G3, G5; the even ones
/// carry the reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RiemannGraphSpec {
    fixed: usize,
    permuting: [usize; 3],
    orientation: Orientation,
}

impl RiemannGraphSpec {
    pub fn new(fixed: usize, permuting: [usize; 3], orientation: Orientation) -> Result<Self, GraphError> {
        let mut all = [fixed, permuting[0], permuting[1], permuting[2]];
        all.sort_unstable();
        let distinct = all.windows(2).all(|w| w[0] != w[1]);
        if !distinct || all[3] >= DIM {
            return Err(GraphError::InvalidSpec { fixed, permuting });
        }
        Ok(Self {
            fixed,
            permuting,
            orientation,
        })
    }

    /// `v1` fixed, `v2 v3 v4` permuting, G1 drawn clockwise.
    pub fn standard() -> Self {
        Self {
            fixed: 0,
            permuting: [1, 2, 3],
            orientation: Orientation::Cw,
        }
    }

    pub fn fixed(&self) -> usize {
        self.fixed
    }

    pub fn permuting(&self) -> [usize; 3] {
        self.permuting
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// The permuting vertex joined to the fixed vertex.
    pub fn bridge(&self) -> usize {
        self.permuting[0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphVariant {
    /// 1..=6
    pub label: u8,
    pub quad: IndexQuad,
    pub orientation: Orientation,
}

impl GraphVariant {
    pub fn sign(&self) -> i8 {
        self.orientation.sign()
    }

    pub fn name(&self) -> String {
        format!("G{}", self.label)
    }

    /// Fixed vertex, bridge edge, and the oriented triangle `B -> C -> D`.
    pub fn to_graph(&self) -> Graph {
        let [a, b, c, d] = self.quad.0;
        let mut g = Graph::new(self.name());
        let mut verts = [a, b, c, d];
        verts.sort_unstable();
        for v in verts {
            g.add_node(vertex_id(v), INDEX_LETTERS[v].to_string(), None);
        }
        g.add_edge(vertex_id(a), vertex_id(b), None, false);
        let cycle = match self.orientation {
            Orientation::Ccw => [b, c, d],
            Orientation::Cw => [b, d, c],
        };
        for k in 0..3 {
            g.add_edge(vertex_id(cycle[k]), vertex_id(cycle[(k + 1) % 3]), None, true);
        }
        g
    }
}

/// The six labelled variants `G_iklm, G_ikml, G_ilmk, G_ilkm, G_imkl, G_imlk`.
pub fn enumerate_variants(spec: &RiemannGraphSpec) -> [GraphVariant; 6] {
    let i = spec.fixed;
    let [k, l, m] = spec.permuting;
    let quads = [
        [i, k, l, m],
        [i, k, m, l],
        [i, l, m, k],
        [i, l, k, m],
        [i, m, k, l],
        [i, m, l, k],
    ];
    std::array::from_fn(|n| GraphVariant {
        label: n as u8 + 1,
        quad: IndexQuad(quads[n]),
        orientation: if n % 2 == 0 {
            spec.orientation
        } else {
            spec.orientation.reversed()
        },
    })
}

/// `1 + alpha(alpha-1)/2`: the bridge edge plus a complete graph on the permuting vertices.
pub fn edge_count(alpha: u64) -> u64 {
    1 + pair_count(alpha as usize) as u64
}

/// `C(r+1, 2)` pair vertices; defined only when `r + 1` is even.
pub fn pair_vertex_count(r: u64) -> Result<u64, GraphError> {
    if !(r + 1).is_multiple_of(2) {
        return Err(GraphError::OddParity(r + 1));
    }
    Ok(pair_count(r as usize + 1) as u64)
}

/// Node id for pair slot `s` (`u1` .. `u6`).
pub fn slot_id(s: usize) -> String {
    format!("u{}", s + 1)
}

/// Complete graph on the six lexicographic pair slots, edge `{u_a, u_b}`
/// weighted by the slot-matrix entry. Diagonal entries are not edges.
pub fn k6_structure(r: &RiemannComponents) -> Result<Graph, GraphError> {
    if r.dim() != DIM {
        return Err(GraphError::Dimension(r.dim()));
    }
    let pairs = PairBasis::Lex.pairs(DIM);
    let mut g = Graph::new("K6");
    for (s, &(a, b)) in pairs.iter().enumerate() {
        g.add_node(slot_id(s), format!("{}{}", INDEX_LETTERS[a], INDEX_LETTERS[b]), None);
    }
    for x in 0..pairs.len() {
        for y in x + 1..pairs.len() {
            g.add_edge(slot_id(x), slot_id(y), Some(Weight::Real(r.slot_entry(x, y))), false);
        }
    }
    Ok(g)
}

/// Edge weight between two slot vertices, read in either order.
pub fn k6_weight(g: &Graph, a: usize, b: usize) -> Option<f64> {
    match g.edge(&slot_id(a), &slot_id(b))?.weight? {
        Weight::Real(x) => Some(x),
        Weight::Membership(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_variants() {
        let v = enumerate_variants(&RiemannGraphSpec::standard());
        assert_eq!(v[0].quad, IndexQuad::new(0, 1, 2, 3));
        assert_eq!(v[4].quad, IndexQuad::new(0, 3, 1, 2));
        assert_eq!(v[1].quad, IndexQuad::new(0, 1, 3, 2));
        for pair in v.chunks(2) {
            assert_eq!(pair[0].sign(), -pair[1].sign());
        }
        assert_eq!(v[0].sign(), -1);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(RiemannGraphSpec::new(0, [0, 1, 2], Orientation::Ccw).is_err());
        assert!(RiemannGraphSpec::new(0, [1, 2, 4], Orientation::Ccw).is_err());
        assert!(RiemannGraphSpec::new(3, [0, 1, 2], Orientation::Ccw).is_ok());
    }

    #[test]
    fn edge_counts() {
        assert_eq!(edge_count(3), 4);
        assert_eq!(edge_count(1), 1);
        assert_eq!(edge_count(5), 11);
    }

    #[test]
    fn pair_vertices() {
        assert_eq!(pair_vertex_count(3), Ok(6));
        assert_eq!(pair_vertex_count(5), Ok(15));
        assert_eq!(pair_vertex_count(4), Err(GraphError::OddParity(5)));
    }

    #[test]
    fn variant_graph_shape() {
        let v = enumerate_variants(&RiemannGraphSpec::standard());
        let g = v[0].to_graph();
        assert_eq!(g.nodes.len(), 4);
        assert_eq!(g.edges.len(), 4);
        assert!(g.edge("v1", "v2").is_some());
        assert!(g.edge("v1", "v3").is_none());
        let dot = g.to_dot();
        assert_eq!(dot.matches("->").count(), 4);
    }

    #[test]
    fn k6_edges_match_components() {
        let r = RiemannComponents::random(9, false);
        let g = k6_structure(&r).unwrap();
        assert_eq!(g.nodes.len(), 6);
        assert_eq!(g.edges.len(), 15);
        assert_eq!(k6_weight(&g, 0, 5), Some(r.get(IndexQuad::new(0, 1, 2, 3))));
        assert_eq!(k6_weight(&g, 5, 0), k6_weight(&g, 0, 5));
        assert_eq!(g.to_dot().matches("->").count(), 15);

        let z = k6_structure(&RiemannComponents::zero(4)).unwrap();
        assert!(z.edges.iter().all(|e| e.weight == Some(Weight::Real(0.0))));
        assert!(k6_structure(&RiemannComponents::zero(3)).is_err());
    }
}
