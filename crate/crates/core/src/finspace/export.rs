//! JSON, DOT and plain-text renderings of finite posets.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{FinitePoset, PosetError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub id: usize,
    pub label: String,
}

/// `{"points":[{"id":0,"label":"V"},…],"covers":[[lo,hi],…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub points: Vec<PointJson>,
    pub covers: Vec<[usize; 2]>,
}

impl PosetJson {
    pub fn from_poset(p: &FinitePoset) -> Self {
        PosetJson {
            points: p.labels().iter().enumerate().map(|(id, l)| PointJson { id, label: l.clone() }).collect(),
            covers: p.hasse().into_iter().map(|(lo, hi)| [lo, hi]).collect(),
        }
    }

    /// Rebuilds the poset; ids must be exactly `0..n` in order.
    pub fn to_poset(&self) -> Result<FinitePoset, PosetError> {
        if let Some(bad) = self.points.iter().enumerate().find(|(i, pt)| pt.id != *i) {
            return Err(PosetError::UnknownPoint(bad.1.id));
        }
        let labels = self.points.iter().map(|pt| pt.label.clone()).collect();
        let covers: Vec<(usize, usize)> = self.covers.iter().map(|c| (c[0], c[1])).collect();
        FinitePoset::from_covers(labels, &covers)
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl FinitePoset {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PosetJson::from_poset(self)).expect("poset JSON is always serializable")
    }

    /// Undirected DOT graph, one edge per cover, with points of equal height
    /// on one rank and minimal points at the bottom.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph \"{}\" {{", dot_escape(name)).unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        for (x, l) in self.labels().iter().enumerate() {
            writeln!(out, "  p{x} [label=\"{}\"];", dot_escape(l)).unwrap();
        }
        let heights = self.heights();
        let top = heights.iter().copied().max().unwrap_or(0);
        for h in 0..=top {
            let level: Vec<String> = (0..self.len()).filter(|&x| heights[x] == h).map(|x| format!("p{x}")).collect();
            if !level.is_empty() {
                writeln!(out, "  {{ rank=same; {}; }}", level.join("; ")).unwrap();
            }
        }
        for (lo, hi) in self.hasse() {
            writeln!(out, "  p{lo} -- p{hi};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// One line per point: `U_label = {l1, l2, ...}`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for x in 0..self.len() {
            let members: Vec<&str> = self.down_set(x).iter().map(|y| self.label(y)).collect();
            writeln!(out, "U_{} = {{{}}}", self.label(x), members.join(", ")).unwrap();
        }
        out
    }
}
