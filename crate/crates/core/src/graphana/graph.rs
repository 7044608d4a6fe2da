//! Small labelled graph used for rendering, plus DOT and JSON export.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Exact membership value in `[0, 1]`.
pub type Membership = Ratio<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum Weight {
    Real(f64),
    Membership(Membership),
}

impl Weight {
    fn render(&self) -> String {
        match self {
            Weight::Real(x) => format!("{x}"),
            Weight::Membership(m) => m.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Weight>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Weight>,
    /// Oriented edges are drawn with an arrow; the rest with `dir=none`.
    #[serde(default)]
    pub oriented: bool,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Graph {
    pub name: String,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Structured,
}

impl Graph {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub fn add_node(&mut self, id: impl Into<String>, label: impl Into<String>, weight: Option<Weight>) {
        self.nodes.push(Node {
            id: id.into(),
            label: label.into(),
            weight,
        });
    }

    pub fn add_edge(&mut self, from: impl Into<String>, to: impl Into<String>, weight: Option<Weight>, oriented: bool) {
        self.edges.push(Edge {
            from: from.into(),
            to: to.into(),
            weight,
            oriented,
        });
    }

    pub fn edge(&self, a: &str, b: &str) -> Option<&Edge> {
        self.edges
            .iter()
            .find(|e| (e.from == a && e.to == b) || (e.from == b && e.to == a))
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => self.to_dot(),
            ExportFormat::Structured => self.to_structured(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let name = if self.name.is_empty() { "G" } else { &self.name };
        writeln!(out, "digraph {} {{", quote(name)).unwrap();
        for n in &self.nodes {
            let mut label = n.label.clone();
            if let Some(w) = &n.weight {
                label = format!("{label} ({})", w.render());
            }
            writeln!(out, "  {} [label={}];", quote(&n.id), quote(&label)).unwrap();
        }
        for e in &self.edges {
            let mut attrs = Vec::new();
            if let Some(w) = &e.weight {
                attrs.push(format!("label={}", quote(&w.render())));
                if let Weight::Real(x) = w {
                    attrs.push(format!("value={}", quote(&x.to_string())));
                }
            }
            if !e.oriented {
                attrs.push("dir=none".to_owned());
            }
            let attrs = if attrs.is_empty() {
                String::new()
            } else {
                format!(" [{}]", attrs.join(", "))
            };
            writeln!(out, "  {} -> {}{};", quote(&e.from), quote(&e.to), attrs).unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_structured(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn from_structured(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            q.push('\\');
        }
        q.push(c);
    }
    q.push('"');
    q
}
