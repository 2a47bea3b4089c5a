//! Symbolic orbit-space model built directly from a reduced presentation.
//!
//! Every orbit of chains under the group action has a representative
//! containing the identity vertex, the edge `(e, s)` or the face `(e, r)`.
//! The nine families below enumerate those representatives; the order
//! between them comes from chain inclusion after translating by a group
//! element. No word problem has to be solved, so the model exists for
//! infinite groups as well.

mod iso;

use serde::Serialize;

use crate::finspace::FinitePoset;
use crate::presentation::{Presentation, ReducedPresentation};

pub use iso::{isomorphic, isomorphic_with_budget, IsoError, DEFAULT_ISO_BUDGET};

/// An orbit of chains. `gen` indexes a generator, `relator` a relator and
/// `i` a letter position, `0 ≤ i < length(r)`, all 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind")]
pub enum OrbitPoint {
    /// `{e}`
    V,
    /// `{(e,s)}`
    EdgeOnly { gen: usize },
    /// `{(e,s), e}`
    EdgeTail { gen: usize },
    /// `{(e,s), s}`
    EdgeHead { gen: usize },
    /// `{(e,r)}`
    FaceOnly { relator: usize },
    /// `{(e,r), r[0,i]}`
    FaceVertex { relator: usize, i: usize },
    /// `{(e,r), i-th boundary edge}`
    FaceEdge { relator: usize, i: usize },
    /// `{(e,r), i-th boundary edge, r[0,i]}`
    FaceEdgeLo { relator: usize, i: usize },
    /// `{(e,r), i-th boundary edge, r[0,i+1]}`
    FaceEdgeHi { relator: usize, i: usize },
}

impl OrbitPoint {
    /// Label used in JSON and DOT output, e.g. `E-(a)` or `Fel(0,2)`.
    pub fn label(self, p: &Presentation) -> String {
        let name = |g: usize| p.generators()[g].as_str().to_string();
        match self {
            OrbitPoint::V => "V".into(),
            OrbitPoint::EdgeOnly { gen } => format!("E({})", name(gen)),
            OrbitPoint::EdgeTail { gen } => format!("E-({})", name(gen)),
            OrbitPoint::EdgeHead { gen } => format!("E+({})", name(gen)),
            OrbitPoint::FaceOnly { relator } => format!("F({relator})"),
            OrbitPoint::FaceVertex { relator, i } => format!("Fv({relator},{i})"),
            OrbitPoint::FaceEdge { relator, i } => format!("Fe({relator},{i})"),
            OrbitPoint::FaceEdgeLo { relator, i } => format!("Fel({relator},{i})"),
            OrbitPoint::FaceEdgeHi { relator, i } => format!("Feh({relator},{i})"),
        }
    }
}

/// The orbit space as a finite poset whose points are [`OrbitPoint`]s.
#[derive(Clone, Debug)]
pub struct SpaceModel {
    presentation: ReducedPresentation,
    points: Vec<OrbitPoint>,
    poset: FinitePoset,
}

impl SpaceModel {
    pub fn presentation(&self) -> &ReducedPresentation {
        &self.presentation
    }

    pub fn points(&self) -> &[OrbitPoint] {
        &self.points
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn index_of(&self, x: OrbitPoint) -> Option<usize> {
        self.points.iter().position(|&y| y == x)
    }
}

/// `1 + 3|S| + Σ_r (4·length(r) + 1)`.
pub fn predicted_cardinality(p: &Presentation) -> usize {
    1 + 3 * p.num_generators() + p.relators().iter().map(|r| 4 * r.len() + 1).sum::<usize>()
}

/// Points are numbered `V`, then `E, E-, E+` per generator, then per relator
/// `F` followed by `Fv, Fe, Fel, Feh` for each letter position.
pub fn quotient_model(rp: &ReducedPresentation) -> SpaceModel {
    let p = rp.presentation();
    let mut points = vec![OrbitPoint::V];
    for gen in 0..p.num_generators() {
        points.extend([OrbitPoint::EdgeOnly { gen }, OrbitPoint::EdgeTail { gen }, OrbitPoint::EdgeHead { gen }]);
    }
    for (relator, r) in p.relators().iter().enumerate() {
        points.push(OrbitPoint::FaceOnly { relator });
        for i in 0..r.len() {
            points.extend([
                OrbitPoint::FaceVertex { relator, i },
                OrbitPoint::FaceEdge { relator, i },
                OrbitPoint::FaceEdgeLo { relator, i },
                OrbitPoint::FaceEdgeHi { relator, i },
            ]);
        }
    }
    let id = |x: OrbitPoint| points.iter().position(|&y| y == x).expect("point was enumerated");

    let mut covers = Vec::new();
    for gen in 0..p.num_generators() {
        for end in [OrbitPoint::EdgeTail { gen }, OrbitPoint::EdgeHead { gen }] {
            covers.push((id(end), id(OrbitPoint::V)));
            covers.push((id(end), id(OrbitPoint::EdgeOnly { gen })));
        }
    }
    for (relator, r) in p.relators().iter().enumerate() {
        let len = r.len();
        let face = id(OrbitPoint::FaceOnly { relator });
        for i in 0..len {
            let letter = r.letters()[i];
            let gen = letter.generator;
            let (at_tail, at_head) = if letter.is_positive() {
                (OrbitPoint::EdgeTail { gen }, OrbitPoint::EdgeHead { gen })
            } else {
                (OrbitPoint::EdgeHead { gen }, OrbitPoint::EdgeTail { gen })
            };
            let fv = id(OrbitPoint::FaceVertex { relator, i });
            let fv_next = id(OrbitPoint::FaceVertex { relator, i: (i + 1) % len });
            let fe = id(OrbitPoint::FaceEdge { relator, i });
            let lo = id(OrbitPoint::FaceEdgeLo { relator, i });
            let hi = id(OrbitPoint::FaceEdgeHi { relator, i });
            covers.extend([(fv, id(OrbitPoint::V)), (fv, face)]);
            covers.extend([(fe, id(OrbitPoint::EdgeOnly { gen })), (fe, face)]);
            covers.extend([(lo, fe), (lo, fv), (lo, id(at_tail))]);
            covers.extend([(hi, fe), (hi, fv_next), (hi, id(at_head))]);
        }
    }
    let labels = points.iter().map(|x| x.label(p)).collect();
    let poset = FinitePoset::from_covers(labels, &covers).expect("model covers are acyclic");
    SpaceModel { presentation: rp.clone(), points, poset }
}
