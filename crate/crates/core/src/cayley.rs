//! Cayley complexes of finite presented groups.
//!
//! Vertices are group elements, 1-cells are pairs `(g, s)` running from `g`
//! to `g·s`, and 2-cells are pairs `(g, r)` attached along the walk that
//! reads `r` from `g`. Group elements are coset indices of a complete coset
//! table.

use serde::Serialize;
use thiserror::Error;

use crate::finspace::{ActionTable, FinitePoset};
use crate::group::CosetTable;
use crate::presentation::{Presentation, ReducedPresentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cell {
    Vertex { element: usize },
    Edge { base: usize, gen: usize },
    Face { base: usize, relator: usize },
}

impl Cell {
    pub fn dimension(self) -> usize {
        match self {
            Cell::Vertex { .. } => 0,
            Cell::Edge { .. } => 1,
            Cell::Face { .. } => 2,
        }
    }
}

/// One step of a face boundary walk. `cell` is always an edge cell; when
/// `reversed` the walk traverses it from its head to its tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrientedBoundaryEdge {
    pub cell: Cell,
    pub reversed: bool,
    /// Traversal tail `base·r[0,i]`.
    pub tail: usize,
    /// Traversal head `base·r[0,i+1]`.
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AttachingViolation {
    DegenerateEdge { edge: Cell },
    RepeatedVertex { face: Cell, vertex: usize },
    RepeatedEdge { face: Cell, edge: Cell },
    OpenWalk { face: Cell },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttachingReport {
    pub violations: Vec<AttachingViolation>,
}

impl AttachingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("letter index {index} out of range for a relator of length {length}")]
    IndexOutOfRange { index: usize, length: usize },
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("coset table was built for a different presentation")]
    PresentationMismatch,
    #[error("attaching maps are not injective: {0:?}")]
    InvalidAttaching(Vec<AttachingViolation>),
    #[error("cell {0:?} is not in the complex")]
    UnknownCell(Cell),
}

/// The `i`-th (0-based) edge of the boundary walk of `Face(base, r)`.
pub fn boundary_edge(t: &CosetTable, base: usize, r: &Word, i: usize) -> Result<OrientedBoundaryEdge, CayleyError> {
    let letter = r.letter(i + 1).ok_or(CayleyError::IndexOutOfRange { index: i, length: r.len() })?;
    let tail = t.trace(base, r.prefix(i));
    let head = t.act(tail, letter);
    let (start, reversed) = if letter.is_positive() { (tail, false) } else { (head, true) };
    Ok(OrientedBoundaryEdge { cell: Cell::Edge { base: start, gen: letter.generator }, reversed, tail, head })
}

#[derive(Clone, Debug)]
pub struct CayleyComplex {
    table: CosetTable,
    boundaries: Vec<Vec<OrientedBoundaryEdge>>,
}

impl CayleyComplex {
    /// Builds the complex without checking the attaching maps.
    pub fn build_unchecked(table: CosetTable) -> Result<Self, CayleyError> {
        if !table.is_complete() {
            return Err(CayleyError::IncompleteTable);
        }
        let mut boundaries = Vec::with_capacity(table.size() * table.presentation().relators().len());
        for g in 0..table.size() {
            for r in table.presentation().relators() {
                let walk = (0..r.len()).map(|i| boundary_edge(&table, g, r, i)).collect::<Result<_, _>>()?;
                boundaries.push(walk);
            }
        }
        Ok(CayleyComplex { table, boundaries })
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn presentation(&self) -> &Presentation {
        self.table.presentation()
    }

    pub fn num_vertices(&self) -> usize {
        self.table.size()
    }

    pub fn num_edges(&self) -> usize {
        self.table.size() * self.presentation().num_generators()
    }

    pub fn num_faces(&self) -> usize {
        self.table.size() * self.presentation().relators().len()
    }

    pub fn num_cells(&self) -> usize {
        self.num_vertices() + self.num_edges() + self.num_faces()
    }

    /// Cells in id order: vertices, then edges by (base, generator), then
    /// faces by (base, relator).
    pub fn cells(&self) -> Vec<Cell> {
        (0..self.num_cells()).map(|id| self.cell(id)).collect()
    }

    pub fn cell(&self, id: usize) -> Cell {
        let (nv, ne) = (self.num_vertices(), self.num_edges());
        let ns = self.presentation().num_generators();
        let nr = self.presentation().relators().len();
        if id < nv {
            Cell::Vertex { element: id }
        } else if id < nv + ne {
            let k = id - nv;
            Cell::Edge { base: k / ns, gen: k % ns }
        } else {
            let k = id - nv - ne;
            Cell::Face { base: k / nr, relator: k % nr }
        }
    }

    pub fn cell_id(&self, c: Cell) -> Option<usize> {
        let n = self.num_vertices();
        let ns = self.presentation().num_generators();
        let nr = self.presentation().relators().len();
        match c {
            Cell::Vertex { element } if element < n => Some(element),
            Cell::Edge { base, gen } if base < n && gen < ns => Some(n + base * ns + gen),
            Cell::Face { base, relator } if base < n && relator < nr => {
                Some(n + self.num_edges() + base * nr + relator)
            }
            _ => None,
        }
    }

    /// Intrinsic `(tail, head) = (g, g·s)` of an edge cell.
    pub fn endpoints(&self, edge: Cell) -> Result<(usize, usize), CayleyError> {
        match edge {
            Cell::Edge { base, gen } if self.cell_id(edge).is_some() => {
                Ok((base, self.table.act(base, crate::presentation::Letter::pos(gen))))
            }
            _ => Err(CayleyError::UnknownCell(edge)),
        }
    }

    /// Boundary walk of a face cell.
    pub fn face_boundary(&self, face: Cell) -> Result<&[OrientedBoundaryEdge], CayleyError> {
        match face {
            Cell::Face { base, relator } if self.cell_id(face).is_some() => {
                Ok(&self.boundaries[base * self.presentation().relators().len() + relator])
            }
            _ => Err(CayleyError::UnknownCell(face)),
        }
    }

    /// All cells in the boundary of `x`, sorted by id.
    pub fn cell_boundary(&self, x: Cell) -> Result<Vec<Cell>, CayleyError> {
        let mut out = match x {
            Cell::Vertex { .. } => {
                self.cell_id(x).ok_or(CayleyError::UnknownCell(x))?;
                Vec::new()
            }
            Cell::Edge { .. } => {
                let (t, h) = self.endpoints(x)?;
                vec![Cell::Vertex { element: t }, Cell::Vertex { element: h }]
            }
            Cell::Face { .. } => self
                .face_boundary(x)?
                .iter()
                .flat_map(|e| [e.cell, Cell::Vertex { element: e.tail }, Cell::Vertex { element: e.head }])
                .collect(),
        };
        out.sort_by_key(|&c| self.cell_id(c));
        out.dedup();
        Ok(out)
    }

    /// Left translation `g·x`.
    pub fn act(&self, g: usize, x: Cell) -> Cell {
        match x {
            Cell::Vertex { element } => Cell::Vertex { element: self.table.multiply(g, element) },
            Cell::Edge { base, gen } => Cell::Edge { base: self.table.multiply(g, base), gen },
            Cell::Face { base, relator } => Cell::Face { base: self.table.multiply(g, base), relator },
        }
    }

    /// Injectivity of the attaching maps: edges have distinct endpoints and
    /// each face walk closes up without repeating a vertex or an edge.
    pub fn validate_attaching(&self) -> AttachingReport {
        let mut violations = Vec::new();
        for id in self.num_vertices()..self.num_vertices() + self.num_edges() {
            let edge = self.cell(id);
            let (t, h) = self.endpoints(edge).expect("edge ids are in range");
            if t == h {
                violations.push(AttachingViolation::DegenerateEdge { edge });
            }
        }
        for id in self.num_vertices() + self.num_edges()..self.num_cells() {
            let face = self.cell(id);
            let walk = self.face_boundary(face).expect("face ids are in range");
            let Cell::Face { base, .. } = face else { unreachable!() };
            if walk.last().map_or(base, |e| e.head) != base {
                violations.push(AttachingViolation::OpenWalk { face });
            }
            let mut vertices: Vec<usize> = walk.iter().map(|e| e.tail).collect();
            vertices.sort_unstable();
            if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
                violations.push(AttachingViolation::RepeatedVertex { face, vertex: w[0] });
            }
            let mut edges: Vec<Cell> = walk.iter().map(|e| e.cell).collect();
            edges.sort();
            if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
                violations.push(AttachingViolation::RepeatedEdge { face, edge: w[0] });
            }
        }
        AttachingReport { violations }
    }

    /// The cells ordered by "is in the boundary of", with labels `v(g)`,
    /// `e(g,s)` and `f(g,k)`.
    pub fn face_poset(&self) -> FinitePoset {
        let p = self.presentation();
        let labels = self
            .cells()
            .into_iter()
            .map(|c| match c {
                Cell::Vertex { element } => format!("v({element})"),
                Cell::Edge { base, gen } => format!("e({base},{})", p.generators()[gen]),
                Cell::Face { base, relator } => format!("f({base},{relator})"),
            })
            .collect();
        let mut covers = Vec::new();
        for (id, c) in self.cells().into_iter().enumerate() {
            for b in self.cell_boundary(c).expect("cells of the complex") {
                covers.push((self.cell_id(b).unwrap(), id));
            }
        }
        FinitePoset::from_covers(labels, &covers).expect("boundary order is acyclic")
    }

    /// Left translation as a permutation action on cell ids.
    pub fn group_action(&self) -> ActionTable {
        let cells = self.cells();
        let perms = (0..self.table.size())
            .map(|g| cells.iter().map(|&c| self.cell_id(self.act(g, c)).unwrap()).collect())
            .collect();
        ActionTable::new(perms, self.table.multiplication_table()).expect("left translations are permutations")
    }
}

/// Builds and validates the Cayley complex of `rp` over the complete table
/// `t` of the same presentation.
pub fn build_cayley_complex(rp: &ReducedPresentation, t: &CosetTable) -> Result<CayleyComplex, CayleyError> {
    if t.presentation() != rp.presentation() {
        return Err(CayleyError::PresentationMismatch);
    }
    let c = CayleyComplex::build_unchecked(t.clone())?;
    let report = c.validate_attaching();
    if !report.is_valid() {
        return Err(CayleyError::InvalidAttaching(report.violations));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{todd_coxeter, CosetTableOracle};
    use crate::presentation::{parse_presentation, Letter};

    fn complex(text: &str) -> CayleyComplex {
        let p = parse_presentation(text).unwrap();
        let t = todd_coxeter(&p, 1000).unwrap();
        let rp = ReducedPresentation::certify(p, &CosetTableOracle::new(t.clone())).unwrap();
        build_cayley_complex(&rp, &t).unwrap()
    }

    fn counts(c: &CayleyComplex) -> (usize, usize, usize) {
        (c.num_vertices(), c.num_edges(), c.num_faces())
    }

    #[test]
    fn cell_counts() {
        assert_eq!(counts(&complex("<a|a^2>")), (2, 2, 2));
        assert_eq!(counts(&complex("<a|a^3>")), (3, 3, 3));
        assert_eq!(counts(&complex("<a,b|a^2,b^2,(a b)^3>")), (6, 12, 18));
    }

    #[test]
    fn boundary_edges_z2() {
        let c = complex("<a|a^2>");
        let r = &c.presentation().relators()[0];
        let e0 = boundary_edge(c.table(), 0, r, 0).unwrap();
        assert_eq!((e0.cell, e0.reversed), (Cell::Edge { base: 0, gen: 0 }, false));
        let e1 = boundary_edge(c.table(), 0, r, 1).unwrap();
        assert_eq!((e1.cell, e1.reversed), (Cell::Edge { base: 1, gen: 0 }, false));
        assert_eq!((e1.tail, e1.head), (1, 0));
        assert!(boundary_edge(c.table(), 0, r, 2).is_err());
    }

    #[test]
    fn inverse_letters_are_reversed() {
        let p = parse_presentation("<a,b|a^2,b^2,a b a^-1 b^-1>").unwrap();
        let t = todd_coxeter(&p, 100).unwrap();
        let r = &p.relators()[2];
        let e = boundary_edge(&t, 0, r, 2).unwrap();
        let head = t.trace(0, &[Letter::pos(0), Letter::pos(1), Letter::neg(0)]);
        assert_eq!((e.cell, e.reversed), (Cell::Edge { base: head, gen: 0 }, true));
        assert_eq!(e.head, head);
    }

    #[test]
    fn cell_boundaries() {
        let c = complex("<a|a^2>");
        assert_eq!(
            c.cell_boundary(Cell::Edge { base: 0, gen: 0 }).unwrap(),
            vec![Cell::Vertex { element: 0 }, Cell::Vertex { element: 1 }]
        );
        assert_eq!(
            c.cell_boundary(Cell::Face { base: 0, relator: 0 }).unwrap(),
            vec![
                Cell::Vertex { element: 0 },
                Cell::Vertex { element: 1 },
                Cell::Edge { base: 0, gen: 0 },
                Cell::Edge { base: 1, gen: 0 }
            ]
        );
        assert!(c.cell_boundary(Cell::Vertex { element: 0 }).unwrap().is_empty());
        assert!(c.cell_boundary(Cell::Vertex { element: 5 }).is_err());
    }

    #[test]
    fn attaching_maps_valid_for_reduced_presentations() {
        assert!(complex("<a|a^2>").validate_attaching().is_valid());
        assert!(complex("<a|a^3>").validate_attaching().is_valid());
        assert!(complex("<a,b|a^2,b^2,(a b)^3>").validate_attaching().is_valid());
    }

    #[test]
    fn degenerate_edge_detected() {
        // In <a | a> the generator is trivial, so Edge(e,a) is a loop at e.
        let p = parse_presentation("<a|a>").unwrap();
        let c = CayleyComplex::build_unchecked(todd_coxeter(&p, 10).unwrap()).unwrap();
        let report = c.validate_attaching();
        assert!(report
            .violations
            .contains(&AttachingViolation::DegenerateEdge { edge: Cell::Edge { base: 0, gen: 0 } }));
    }

    #[test]
    fn non_reduced_relator_repeats_a_vertex() {
        let p = parse_presentation("<a|a^4,a^2>").unwrap();
        let c = CayleyComplex::build_unchecked(todd_coxeter(&p, 10).unwrap()).unwrap();
        let report = c.validate_attaching();
        assert!(report.violations.iter().any(|v| matches!(v, AttachingViolation::RepeatedVertex { .. })));
    }

    #[test]
    fn action_is_free_and_commutes_with_boundary() {
        let c = complex("<a,b|a^2,b^2,(a b)^3>");
        let action = c.group_action();
        let poset = c.face_poset();
        action.validate(&poset).unwrap();
        for g in 1..c.num_vertices() {
            for x in c.cells() {
                let gx = c.act(g, x);
                assert_ne!(gx, x);
                assert_eq!(gx.dimension(), x.dimension());
                let mut image: Vec<Cell> = c.cell_boundary(x).unwrap().into_iter().map(|b| c.act(g, b)).collect();
                image.sort_by_key(|&b| c.cell_id(b));
                assert_eq!(image, c.cell_boundary(gx).unwrap());
            }
        }
    }
}
