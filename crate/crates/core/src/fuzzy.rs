//! Fuzzy-graph analog with exact rational memberships.
//!
//! The fixed vertex has membership 1, each permuting vertex 1/3, and every
//! arc carries the minimum of its endpoint memberships.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::graphana::{vertex_id, Graph, Membership, RiemannGraphSpec, Weight};
use crate::symcore::INDEX_LETTERS;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuzzyError {
    #[error("arc ({0}, {1}) membership {2} exceeds the smaller vertex membership")]
    MembershipBound(Vertex, Vertex, Membership),
    #[error("membership {0} is outside [0, 1]")]
    OutOfUnitInterval(Membership),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("self-pair ({0}, {0}) must be stored as a loop")]
    SelfArc(Vertex),
    #[error("loop vertex {loop_vertex} is not the bridge vertex {bridge:?}")]
    BridgeMismatch {
        loop_vertex: Vertex,
        bridge: Option<Vertex>,
    },
    #[error("graph has no fixed vertex")]
    NoFixedVertex,
    #[error("the number of permuting vertices must be positive")]
    InvalidAlpha,
    #[error("vertex {0} is not in the Levi-Civita universe")]
    NotInUniverse(Vertex),
    #[error("Levi-Civita reference order must list three distinct vertices")]
    InvalidReference,
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FuzzyGraph {
    sigma: BTreeMap<Vertex, Membership>,
    mu: BTreeMap<(Vertex, Vertex), Membership>,
    loops: BTreeMap<Vertex, Membership>,
    fixed: Option<Vertex>,
}

impl FuzzyGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: Vertex, sigma: Membership) -> Result<(), FuzzyError> {
        check_unit(sigma)?;
        self.sigma.insert(v, sigma);
        Ok(())
    }

    /// Adds or replaces the arc `{u, v}`; the membership must not exceed
    /// `sigma(u) ∧ sigma(v)`.
    pub fn add_arc(&mut self, u: Vertex, v: Vertex, mu: Membership) -> Result<(), FuzzyError> {
        if u == v {
            return Err(FuzzyError::SelfArc(u));
        }
        check_unit(mu)?;
        let bound = self.sigma_of(u)?.min(self.sigma_of(v)?);
        if mu > bound {
            return Err(FuzzyError::MembershipBound(u, v, mu));
        }
        if mu.is_zero() {
            self.mu.remove(&key(u, v));
        } else {
            self.mu.insert(key(u, v), mu);
        }
        Ok(())
    }

    fn sigma_of(&self, v: Vertex) -> Result<Membership, FuzzyError> {
        self.sigma.get(&v).copied().ok_or(FuzzyError::UnknownVertex(v))
    }

    pub fn sigma(&self, v: Vertex) -> Option<Membership> {
        self.sigma.get(&v).copied()
    }

    /// Zero for absent arcs.
    pub fn mu(&self, u: Vertex, v: Vertex) -> Membership {
        self.mu.get(&key(u, v)).copied().unwrap_or_else(Membership::zero)
    }

    pub fn loop_membership(&self, v: Vertex) -> Option<Membership> {
        self.loops.get(&v).copied()
    }

    pub fn fixed(&self) -> Option<Vertex> {
        self.fixed
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.sigma.keys().copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = ((Vertex, Vertex), Membership)> + '_ {
        self.mu.iter().map(|(&k, &m)| (k, m))
    }

    /// True when every arc (and loop) respects the vertex-membership bound.
    pub fn respects_bound(&self) -> bool {
        self.mu
            .iter()
            .all(|(&(u, v), &m)| m <= self.sigma[&u].min(self.sigma[&v]))
            && self.loops.iter().all(|(v, m)| *m <= self.sigma[v])
    }

    pub fn to_graph(&self, name: &str) -> Graph {
        let mut g = Graph::new(name);
        for (&v, &s) in &self.sigma {
            let label = INDEX_LETTERS.get(v).map_or_else(|| vertex_id(v), char::to_string);
            g.add_node(vertex_id(v), label, Some(Weight::Membership(s)));
        }
        for (&(u, v), &m) in &self.mu {
            g.add_edge(vertex_id(u), vertex_id(v), Some(Weight::Membership(m)), false);
        }
        for (&v, &m) in &self.loops {
            g.add_edge(vertex_id(v), vertex_id(v), Some(Weight::Membership(m)), false);
        }
        g
    }
}

fn check_unit(m: Membership) -> Result<(), FuzzyError> {
    if m > Membership::one() {
        Err(FuzzyError::OutOfUnitInterval(m))
    } else {
        Ok(())
    }
}

/// Fuzzy analog of a graph spec: bridge arc plus the permuting triangle.
pub fn fuzzy_riemann_graph(spec: &RiemannGraphSpec) -> FuzzyGraph {
    let third = Membership::new(1, 3);
    let mut g = FuzzyGraph::new();
    g.fixed = Some(spec.fixed());
    g.sigma.insert(spec.fixed(), Membership::one());
    let p = spec.permuting();
    for v in p {
        g.sigma.insert(v, third);
    }
    let mut arcs = vec![(spec.fixed(), spec.bridge())];
    arcs.extend([(p[0], p[1]), (p[1], p[2]), (p[2], p[0])]);
    for (u, v) in arcs {
        let m = g.sigma[&u].min(g.sigma[&v]);
        g.add_arc(u, v, m).expect("memberships are within bounds");
    }
    g
}

/// Every pair in `on` has `mu(u,v) == sigma(u) ∧ sigma(v)`.
pub fn is_complete(g: &FuzzyGraph, on: &[Vertex]) -> bool {
    on.iter().enumerate().all(|(k, &u)| {
        on[k + 1..].iter().all(|&v| match (g.sigma(u), g.sigma(v)) {
            (Some(su), Some(sv)) => u == v || g.mu(u, v) == su.min(sv),
            _ => false,
        })
    })
}

/// Arcs with positive membership equal to the smaller vertex membership.
pub fn strong_arcs(g: &FuzzyGraph) -> BTreeSet<(Vertex, Vertex)> {
    g.arcs()
        .filter(|&((u, v), m)| !m.is_zero() && m == g.sigma[&u].min(g.sigma[&v]))
        .map(|(k, _)| k)
        .collect()
}

/// Vertices adjacent to the fixed vertex and to every other non-fixed vertex.
pub fn domination_set(g: &FuzzyGraph, fixed: Vertex) -> BTreeSet<Vertex> {
    let others: Vec<Vertex> = g.vertices().filter(|&v| v != fixed).collect();
    others
        .iter()
        .copied()
        .filter(|&v| !g.mu(fixed, v).is_zero() && others.iter().all(|&w| w == v || !g.mu(v, w).is_zero()))
        .collect()
}

/// Number of cycles traversed around the permuting triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclePar(pub u64);

/// `(-1)^m`.
pub fn cycle_sign(m: CyclePar) -> i8 {
    if m.0.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LeviCivitaValue {
    Minus,
    Zero,
    Plus,
}

impl LeviCivitaValue {
    pub fn as_i8(self) -> i8 {
        match self {
            LeviCivitaValue::Minus => -1,
            LeviCivitaValue::Zero => 0,
            LeviCivitaValue::Plus => 1,
        }
    }
}

/// Levi-Civita graph over a three-vertex universe with a reference cyclic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeviCivita {
    reference: [Vertex; 3],
}

impl LeviCivita {
    pub fn new(reference: [Vertex; 3]) -> Result<Self, FuzzyError> {
        let [a, b, c] = reference;
        if a == b || b == c || a == c {
            return Err(FuzzyError::InvalidReference);
        }
        Ok(Self { reference })
    }

    /// `+1` on cyclic rotations of the reference, `-1` on the reversed
    /// rotations, `0` whenever two arguments coincide.
    pub fn value(&self, i: Vertex, x: Vertex, y: Vertex) -> Result<LeviCivitaValue, FuzzyError> {
        let pos = |v: Vertex| {
            self.reference
                .iter()
                .position(|&r| r == v)
                .ok_or(FuzzyError::NotInUniverse(v))
        };
        let (pi, px, py) = (pos(i)?, pos(x)?, pos(y)?);
        if pi == px || px == py || py == pi {
            return Ok(LeviCivitaValue::Zero);
        }
        if (pi + 1) % 3 == px {
            Ok(LeviCivitaValue::Plus)
        } else {
            Ok(LeviCivitaValue::Minus)
        }
    }
}

/// Levi-Civita value over the universe `{1, 2, 3}` in that cyclic order.
pub fn levi_civita(i: Vertex, x: Vertex, y: Vertex) -> Result<LeviCivitaValue, FuzzyError> {
    LeviCivita { reference: [1, 2, 3] }.value(i, x, y)
}

/// The loop graph `ε(v1, x, x)` sitting at vertex `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeviCivitaLoop {
    pub vertex: Vertex,
}

/// Union of a Levi-Civita loop with the fuzzy graph at its bridge vertex.
///
/// The bridge membership is divided by `alpha` and a loop of that membership
/// is attached. Arcs at the bridge are capped at the reduced bound; all other
/// memberships are untouched.
pub fn fuzzy_union(eps: &LeviCivitaLoop, g: &FuzzyGraph, alpha: u32) -> Result<FuzzyGraph, FuzzyError> {
    if alpha == 0 {
        return Err(FuzzyError::InvalidAlpha);
    }
    let fixed = g.fixed.ok_or(FuzzyError::NoFixedVertex)?;
    let dom = domination_set(g, fixed);
    let bridge = (dom.len() == 1).then(|| *dom.iter().next().unwrap());
    if bridge != Some(eps.vertex) {
        return Err(FuzzyError::BridgeMismatch {
            loop_vertex: eps.vertex,
            bridge,
        });
    }
    let x = eps.vertex;
    let mut out = g.clone();
    let reduced = g.sigma[&x] / alpha;
    out.sigma.insert(x, reduced);
    for (&(u, v), m) in out.mu.iter_mut() {
        if u == x || v == x {
            *m = (*m).min(out.sigma[&u].min(out.sigma[&v]));
        }
    }
    out.loops.insert(x, reduced);
    Ok(out)
}

/// The three summands `ε(i,x,x) ∪ G(...)` of the fuzzy trace of the B block,
/// for `x` running over `k, l, m`. Each carries a repeated vertex inside ε.
pub fn fuzzy_trace_b_terms() -> [i8; 3] {
    let (i, k, l, m) = (0, 1, 2, 3);
    [(k, l), (l, m), (m, k)].map(|(x, other)| {
        LeviCivita::new([i, x, other])
            .and_then(|eps| eps.value(i, x, x))
            .expect("reference is distinct")
            .as_i8()
    })
}

pub fn fuzzy_trace_b() -> f64 {
    fuzzy_trace_b_terms().iter().map(|&t| f64::from(t)).sum()
}
