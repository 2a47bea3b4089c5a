//! The explicit spaces for cyclic groups: `n` disks whose boundary circles
//! are identified, subdivided into a finite cover space on which `Z_n`
//! acts freely, its orbit space, and products of such spaces for finitely
//! generated abelian groups.

use serde::Serialize;
use thiserror::Error;

use crate::finspace::{ActionTable, FinitePoset, PosetError};
use crate::group::AbelianOracle;
use crate::model::quotient_model;
use crate::presentation::{parse_presentation, ReducedPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZnError {
    #[error("n must be at least 2, got {0}")]
    OrderTooSmall(u64),
    #[error("order 1 gives a trivial factor; leave it out")]
    TrivialFactor,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// A point of the cover space. Indices are 1-based: `i` ranges over the
/// `n` disks, `j` over the `2n` boundary points and arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind")]
pub enum ZnPoint {
    /// `a_i`, the interior of disk `i`.
    Center { i: usize },
    /// `a'_j`, a point of the common boundary circle.
    Boundary { j: usize },
    /// `b'_j`, the boundary arc between `a'_j` and `a'_{j+1}`.
    Arc { j: usize },
    /// `b_{i,j}`, the spoke from the centre of disk `i` to `a'_j`.
    Spoke { i: usize, j: usize },
    /// `c_{i,j}`, the sector of disk `i` between spokes `j` and `j+1`.
    Sector { i: usize, j: usize },
}

impl ZnPoint {
    pub fn label(self) -> String {
        match self {
            ZnPoint::Center { i } => format!("a{i}"),
            ZnPoint::Boundary { j } => format!("a'{j}"),
            ZnPoint::Arc { j } => format!("b'{j}"),
            ZnPoint::Spoke { i, j } => format!("b{i},{j}"),
            ZnPoint::Sector { i, j } => format!("c{i},{j}"),
        }
    }
}

/// A point of the orbit space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind")]
pub enum ZnQuotientPoint {
    QCenter,
    QBoundary { parity: usize },
    QArc { parity: usize },
    QSpoke { k: usize },
    QSector { k: usize },
}

impl ZnQuotientPoint {
    pub fn label(self) -> String {
        match self {
            ZnQuotientPoint::QCenter => "a".into(),
            ZnQuotientPoint::QBoundary { parity } => format!("a'{parity}"),
            ZnQuotientPoint::QArc { parity } => format!("b'{parity}"),
            ZnQuotientPoint::QSpoke { k } => format!("b{k}"),
            ZnQuotientPoint::QSector { k } => format!("c{k}"),
        }
    }
}

/// A space together with the named points it was built from.
#[derive(Clone, Debug)]
pub struct ZnSpace<P> {
    pub n: usize,
    pub points: Vec<P>,
    pub poset: FinitePoset,
}

impl<P: PartialEq + Copy> ZnSpace<P> {
    pub fn index_of(&self, x: P) -> Option<usize> {
        self.points.iter().position(|&y| y == x)
    }
}

fn check_n(n: u64) -> Result<usize, ZnError> {
    if n < 2 {
        Err(ZnError::OrderTooSmall(n))
    } else {
        Ok(n as usize)
    }
}

/// `1 + ((x - 1) mod m)`, wrapping a 1-based index.
fn wrap(x: i64, m: usize) -> usize {
    (x - 1).rem_euclid(m as i64) as usize + 1
}

fn cover_points(n: usize) -> Vec<ZnPoint> {
    let mut points: Vec<ZnPoint> = (1..=n).map(|i| ZnPoint::Center { i }).collect();
    points.extend((1..=2 * n).map(|j| ZnPoint::Boundary { j }));
    points.extend((1..=2 * n).map(|j| ZnPoint::Arc { j }));
    for i in 1..=n {
        points.extend((1..=2 * n).map(|j| ZnPoint::Spoke { i, j }));
    }
    for i in 1..=n {
        points.extend((1..=2 * n).map(|j| ZnPoint::Sector { i, j }));
    }
    points
}

fn cover_id(n: usize, x: ZnPoint) -> usize {
    match x {
        ZnPoint::Center { i } => i - 1,
        ZnPoint::Boundary { j } => n + j - 1,
        ZnPoint::Arc { j } => 3 * n + j - 1,
        ZnPoint::Spoke { i, j } => 5 * n + (i - 1) * 2 * n + j - 1,
        ZnPoint::Sector { i, j } => 5 * n + 2 * n * n + (i - 1) * 2 * n + j - 1,
    }
}

/// Covers `(lo, hi)` of the cover space, by point.
fn cover_relations(n: usize) -> Vec<(ZnPoint, ZnPoint)> {
    let m = 2 * n;
    let mut covers = Vec::new();
    for i in 1..=n {
        for j in 1..=m {
            let next = wrap(j as i64 + 1, m);
            let c = ZnPoint::Sector { i, j };
            covers.push((c, ZnPoint::Spoke { i, j }));
            covers.push((c, ZnPoint::Spoke { i, j: next }));
            covers.push((c, ZnPoint::Arc { j }));
            let b = ZnPoint::Spoke { i, j };
            covers.push((b, ZnPoint::Center { i }));
            covers.push((b, ZnPoint::Boundary { j }));
        }
    }
    for j in 1..=m {
        covers.push((ZnPoint::Arc { j: wrap(j as i64 - 1, m) }, ZnPoint::Boundary { j }));
        covers.push((ZnPoint::Arc { j }, ZnPoint::Boundary { j }));
    }
    covers
}

/// The cover space, with `4n² + 5n` points whose minimal open sets are
/// `U_c = {c}`, `U_{b_{i,j}} = {b_{i,j}, c_{i,j-1}, c_{i,j}}`,
/// `U_{b'_j} = {b'_j} ∪ {c_{i,j}}`, `U_{a_i}` the closed disk `i` minus its
/// boundary, and `U_{a'_j}` the spokes and arcs meeting `a'_j`.
pub fn build_zn_cover(n: u64) -> Result<ZnSpace<ZnPoint>, ZnError> {
    let n = check_n(n)?;
    let points = cover_points(n);
    let labels = points.iter().map(|x| x.label()).collect();
    let covers: Vec<(usize, usize)> =
        cover_relations(n).into_iter().map(|(lo, hi)| (cover_id(n, lo), cover_id(n, hi))).collect();
    let poset = FinitePoset::from_covers(labels, &covers)?;
    Ok(ZnSpace { n, points, poset })
}

/// The generator `g`: rotates disks by one and the boundary by two steps.
pub fn zn_generator(n: usize, x: ZnPoint) -> ZnPoint {
    let (di, dj) = (|i: usize| wrap(i as i64 + 1, n), |j: usize| wrap(j as i64 + 2, 2 * n));
    match x {
        ZnPoint::Center { i } => ZnPoint::Center { i: di(i) },
        ZnPoint::Boundary { j } => ZnPoint::Boundary { j: dj(j) },
        ZnPoint::Arc { j } => ZnPoint::Arc { j: dj(j) },
        ZnPoint::Spoke { i, j } => ZnPoint::Spoke { i: di(i), j: dj(j) },
        ZnPoint::Sector { i, j } => ZnPoint::Sector { i: di(i), j: dj(j) },
    }
}

/// `Z_n` acting on the cover; element `k` is `g^k`.
pub fn zn_generator_action(n: u64) -> Result<ActionTable, ZnError> {
    let n = check_n(n)?;
    let perm = cover_points(n).into_iter().map(|x| cover_id(n, zn_generator(n, x))).collect();
    Ok(ActionTable::cyclic(perm)?)
}

/// The orbit of a cover point. Spokes and sectors are classed by
/// `k = 1 + ((j - 2i - 1) mod 2n)`, boundary points and arcs by parity, and
/// all centres are identified.
pub fn zn_class(n: usize, x: ZnPoint) -> ZnQuotientPoint {
    let k = |i: usize, j: usize| wrap(j as i64 - 2 * i as i64, 2 * n);
    match x {
        ZnPoint::Center { .. } => ZnQuotientPoint::QCenter,
        ZnPoint::Boundary { j } => ZnQuotientPoint::QBoundary { parity: wrap(j as i64, 2) },
        ZnPoint::Arc { j } => ZnQuotientPoint::QArc { parity: wrap(j as i64, 2) },
        ZnPoint::Spoke { i, j } => ZnQuotientPoint::QSpoke { k: k(i, j) },
        ZnPoint::Sector { i, j } => ZnQuotientPoint::QSector { k: k(i, j) },
    }
}

/// The `4n + 5` point orbit space, listed as `a'1, a'2, a, b'1, b'2,
/// b1..b2n, c1..c2n` with the order induced from the cover.
pub fn build_zn_quotient(n: u64) -> Result<ZnSpace<ZnQuotientPoint>, ZnError> {
    let n = check_n(n)?;
    let mut points = vec![
        ZnQuotientPoint::QBoundary { parity: 1 },
        ZnQuotientPoint::QBoundary { parity: 2 },
        ZnQuotientPoint::QCenter,
        ZnQuotientPoint::QArc { parity: 1 },
        ZnQuotientPoint::QArc { parity: 2 },
    ];
    points.extend((1..=2 * n).map(|k| ZnQuotientPoint::QSpoke { k }));
    points.extend((1..=2 * n).map(|k| ZnQuotientPoint::QSector { k }));
    let id = |q: ZnQuotientPoint| points.iter().position(|&p| p == q).expect("every class is listed");
    let mut covers: Vec<(usize, usize)> =
        cover_relations(n).into_iter().map(|(lo, hi)| (id(zn_class(n, lo)), id(zn_class(n, hi)))).collect();
    covers.sort_unstable();
    covers.dedup();
    let labels = points.iter().map(|q| q.label()).collect();
    let poset = FinitePoset::from_covers(labels, &covers)?;
    Ok(ZnSpace { n, points, poset })
}

/// The four-point circle: the orbit-space model of `< a | >`.
pub fn circle_model() -> FinitePoset {
    let p = parse_presentation("<a|>").expect("valid presentation");
    let oracle = AbelianOracle::new(&p).expect("no overflow on a 0x1 matrix");
    let rp = ReducedPresentation::certify(p, &oracle).expect("<a|> is reduced");
    quotient_model(&rp).poset().clone()
}

/// A space with fundamental group `Z_{d1} × ... × Z_{dk}`, one factor per
/// entry, where an entry `0` stands for `Z`. The empty list gives a point.
pub fn abelian_space(orders: &[u64]) -> Result<FinitePoset, ZnError> {
    let mut space = FinitePoset::point("*");
    for (k, &d) in orders.iter().enumerate() {
        let factor = match d {
            0 => circle_model(),
            1 => return Err(ZnError::TrivialFactor),
            _ => build_zn_quotient(d)?.poset,
        };
        space = if k == 0 { factor } else { space.product(&factor) };
    }
    Ok(space)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cover_sizes() {
        for n in 2..6u64 {
            let c = build_zn_cover(n).unwrap();
            assert_eq!(c.poset.len() as u64, 4 * n * n + 5 * n);
        }
        assert_eq!(build_zn_cover(3).unwrap().poset.len(), 51);
        assert_eq!(build_zn_cover(1).unwrap_err(), ZnError::OrderTooSmall(1));
    }

    #[test]
    fn cover_minimal_opens() {
        let c = build_zn_cover(2).unwrap();
        let u = |x: ZnPoint| {
            let mut v: Vec<String> = c
                .poset
                .minimal_open(c.index_of(x).unwrap())
                .unwrap()
                .into_iter()
                .map(|y| c.poset.label(y).to_string())
                .collect();
            v.sort();
            v
        };
        assert_eq!(u(ZnPoint::Spoke { i: 1, j: 1 }), ["b1,1", "c1,1", "c1,4"]);
        assert_eq!(u(ZnPoint::Center { i: 1 }).len(), 9);
        assert_eq!(u(ZnPoint::Arc { j: 1 }), ["b'1", "c1,1", "c2,1"]);
    }

    #[test]
    fn generator() {
        assert_eq!(zn_generator(2, ZnPoint::Spoke { i: 1, j: 1 }), ZnPoint::Spoke { i: 2, j: 3 });
        let a = zn_generator_action(2).unwrap();
        assert_eq!(a.group_order(), 2);
        a.validate(&build_zn_cover(2).unwrap().poset).unwrap();
        let a3 = zn_generator_action(3).unwrap();
        let orbit: Vec<usize> = (0..3).map(|g| a3.apply(g, 0)).collect();
        assert_eq!(orbit, vec![0, 1, 2]);
    }

    #[test]
    fn class_map_is_orbit_map() {
        for n in 2..5u64 {
            let c = build_zn_cover(n).unwrap();
            let nn = n as usize;
            for &x in &c.points {
                assert_eq!(zn_class(nn, x), zn_class(nn, zn_generator(nn, x)));
            }
        }
    }

    #[test]
    fn quotient_sizes_and_labels() {
        let q = build_zn_quotient(2).unwrap();
        assert_eq!(q.poset.len(), 13);
        assert_eq!(q.poset.labels()[..5], ["a'1", "a'2", "a", "b'1", "b'2"]);
        assert_eq!(q.poset.hasse().len(), 24);
        assert_eq!(build_zn_quotient(4).unwrap().poset.len(), 21);
    }

    #[test]
    fn abelian_spaces() {
        assert_eq!(abelian_space(&[2]).unwrap().len(), 13);
        assert_eq!(abelian_space(&[2, 3]).unwrap().len(), 221);
        assert_eq!(abelian_space(&[0]).unwrap().len(), 4);
        assert_eq!(abelian_space(&[]).unwrap().len(), 1);
        assert_eq!(abelian_space(&[1]).unwrap_err(), ZnError::TrivialFactor);
    }
}
