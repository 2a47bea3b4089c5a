//! Worked examples, each checked against a computation done here from first
//! principles rather than through the library routine under test.

mod common;

use std::collections::{BTreeSet, HashSet};

use common::*;
use fintop::cayley::Cell;
use fintop::finspace::{chain_space, order_complex, FinitePoset};
use fintop::group::{abelian_invariants, smith_normal_form, todd_coxeter, CosetTableOracle, IntMatrix};
use fintop::pi1::{
    edge_path_presentation, tietze_simplify, tietze_simplify_traced, verify_pi1, VerificationStatus, VerifyLimits,
};
use fintop::pipeline::explicit_from_presentation;
use fintop::presentation::{is_reduced, ReducedStatus, Violation};
use fintop::zn::{abelian_space, build_zn_cover, build_zn_quotient, circle_model, zn_generator, ZnPoint};
use fintop::{isomorphic, quotient_model, reduce, AbelianInvariants};

fn pseudocircle() -> FinitePoset {
    FinitePoset::from_covers(labels(4), &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
}

fn open_labels(p: &FinitePoset, label: &str) -> BTreeSet<String> {
    let x = p.index_of(label).unwrap_or_else(|| panic!("no point {label}"));
    p.minimal_open(x).unwrap().into_iter().map(|y| p.label(y).to_string()).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// All subsets of `p` that are totally ordered, by exhaustive enumeration.
fn brute_force_chains(p: &FinitePoset) -> usize {
    let n = p.len();
    assert!(n < 20);
    (1u32..1 << n)
        .filter(|mask| {
            let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            members.iter().all(|&x| members.iter().all(|&y| p.comparable(x, y)))
        })
        .count()
}

/// Permutations of `{0,1,2}` composed as functions.
fn compose(f: [usize; 3], g: [usize; 3]) -> [usize; 3] {
    [f[g[0]], f[g[1]], f[g[2]]]
}

#[test]
fn s3_order_matches_permutation_closure() {
    let (a, b) = ([1, 0, 2], [0, 2, 1]);
    let mut group: HashSet<[usize; 3]> = HashSet::from([[0, 1, 2]]);
    loop {
        let next: HashSet<_> =
            group.iter().flat_map(|&x| [compose(x, a), compose(x, b)]).chain(group.iter().copied()).collect();
        if next.len() == group.len() {
            break;
        }
        group = next;
    }
    let t = todd_coxeter(&pres("<a,b|a^2,b^2,(a b)^3>"), 100).unwrap();
    assert_eq!(t.size(), group.len());
    assert_eq!(t.size(), 6);
}

#[test]
fn s3_word_identity() {
    let p = pres("<a,b|a^2,b^2,(a b)^3>");
    let t = todd_coxeter(&p, 100).unwrap();
    let abab = pres("<a,b|a b a b>").relators()[0].clone();
    let ab_inv = pres("<a,b|b^-1 a^-1>").relators()[0].clone();
    assert_eq!(t.word_to_element(&abab).unwrap(), t.word_to_element(&ab_inv).unwrap());
}

#[test]
fn smith_form_of_small_matrix() {
    let m = IntMatrix::from_rows(2, &[vec![2, 4], vec![6, 8]]);
    let s = smith_normal_form(&m).unwrap();
    assert_eq!(s.diagonal, vec![2, 4]);
    // Divisibility and |det| are the invariants that pin the diagonal.
    assert_eq!(s.diagonal[1] % s.diagonal[0], 0);
    assert_eq!(determinant(&m).abs(), 8);
    assert_eq!(s.diagonal.iter().product::<i64>() as i128, determinant(&m).abs());
}

#[test]
fn s3_abelianization_by_hand() {
    // Exponent rows [2,0],[0,2],[3,3]: subtracting gives [1,1], then the
    // lattice is spanned by [1,1] and [2,0], so the quotient is Z2.
    assert_eq!(
        abelian_invariants(&pres("<a,b|a^2,b^2,(a b)^3>")).unwrap(),
        AbelianInvariants { torsion: vec![2], free_rank: 0 }
    );
}

#[test]
fn reducedness_examples() {
    let z2 = CosetTableOracle::new(todd_coxeter(&pres("<a|a^2>"), 100).unwrap());
    assert_eq!(is_reduced(&pres("<a|a^2>"), &z2).status, ReducedStatus::Reduced);

    let p = pres("<a|a^6,a^2>");
    let oracle = CosetTableOracle::new(todd_coxeter(&p, 100).unwrap());
    let report = is_reduced(&p, &oracle);
    assert!(report.violations.contains(&Violation::TrivialSubword { relator: 0, start: 1, end: 2 }));

    let rp = reduce(&p, &oracle, 100).unwrap();
    assert_eq!(rp.presentation().to_string(), "< a | a^2 >");
    assert_eq!(todd_coxeter(rp.presentation(), 100).unwrap().size(), 2);
}

#[test]
fn cayley_complexes_of_cyclic_groups() {
    for n in [2usize, 3] {
        let e = explicit_from_presentation(&pres(&format!("<a|a^{n}>")), 100).unwrap();
        let c = &e.complex;
        assert_eq!((c.num_vertices(), c.num_edges(), c.num_faces()), (n, n, n));
        assert!(c.validate_attaching().is_valid());
    }
}

#[test]
fn z2_face_boundary() {
    let e = explicit_from_presentation(&pres("<a|a^2>"), 100).unwrap();
    let c = &e.complex;
    let g = c.table().word_to_element(&pres("<a|a>").relators()[0]).unwrap();
    let expected: BTreeSet<Cell> = [
        Cell::Edge { base: 0, gen: 0 },
        Cell::Edge { base: g, gen: 0 },
        Cell::Vertex { element: 0 },
        Cell::Vertex { element: g },
    ]
    .into();
    let got: BTreeSet<Cell> = c.cell_boundary(Cell::Face { base: 0, relator: 0 }).unwrap().into_iter().collect();
    assert_eq!(got, expected);
}

#[test]
fn z2_chain_count_by_enumeration() {
    let e = explicit_from_presentation(&pres("<a|a^2>"), 100).unwrap();
    let face_poset = e.complex.face_poset();
    let brute = brute_force_chains(&face_poset);
    assert_eq!(brute, 26);
    assert_eq!(e.chains.len(), brute);
    assert_eq!(brute, 13 * 2);
    let g = 1;
    assert!((0..brute).all(|x| e.action.apply(g, x) != x));
    assert!((0..brute).all(|x| e.action.apply(g, e.action.apply(g, x)) == x));
}

#[test]
fn single_edge_chains() {
    let edge = FinitePoset::from_covers(labels(3), &[(0, 2), (1, 2)]).unwrap();
    assert_eq!(chain_space(&edge).len(), 5);
    assert_eq!(brute_force_chains(&edge), 5);
}

#[test]
fn zn_quotient_minimal_opens() {
    let q = build_zn_quotient(2).unwrap().poset;
    assert_eq!(open_labels(&q, "b1"), set(&["b1", "c1", "c4"]));
    assert_eq!(open_labels(&q, "b'1"), set(&["b'1", "c1", "c3"]));
    assert!(q.is_connected());
    assert!(q.beat_points().is_empty());
}

#[test]
fn zn_cover_examples() {
    let cover = build_zn_cover(2).unwrap();
    assert_eq!(cover.poset.len(), 26);
    assert_eq!(open_labels(&cover.poset, "b1,1"), set(&["b1,1", "c1,4", "c1,1"]));
    assert_eq!(open_labels(&cover.poset, "a1").len(), 1 + 4 + 4);
    assert_eq!(zn_generator(2, ZnPoint::Spoke { i: 1, j: 1 }), ZnPoint::Spoke { i: 2, j: 3 });
    assert!(cover.points.iter().all(|&x| zn_generator(2, zn_generator(2, x)) == x));

    let cover3 = build_zn_cover(3).unwrap();
    let orbit: BTreeSet<ZnPoint> = (0..3)
        .scan(ZnPoint::Center { i: 1 }, |x, _| {
            let here = *x;
            *x = zn_generator(3, here);
            Some(here)
        })
        .collect();
    assert_eq!(orbit, (1..=3).map(|i| ZnPoint::Center { i }).collect());
    assert_eq!(cover3.poset.len(), 3 + 6 + 6 + 18 + 18);
}

#[test]
fn pseudocircle_examples() {
    let c = pseudocircle();
    assert!(c.beat_points().is_empty());
    let k = order_complex(&c);
    assert_eq!((k.vertices, k.edges.len(), k.triangles.len()), (4, 4, 0));
    let ep = edge_path_presentation(&c).unwrap();
    assert_eq!((ep.presentation.num_generators(), ep.presentation.relators().len()), (1, 0));
    assert!(isomorphic(&c, &circle_model()).unwrap().is_some());
    assert!(isomorphic(&c, &abelian_space(&[0]).unwrap()).unwrap().is_some());
}

/// Comparable pairs in the transitive closure of the golden `Z_2` cover list.
#[test]
fn z2_order_complex_edges_from_golden_closure() {
    let lines = golden_lines(2);
    let names: BTreeSet<&str> = lines.iter().flat_map(|(u, l)| [u.as_str(), l.as_str()]).collect();
    let mut below: BTreeSet<(&str, &str)> = lines.iter().map(|(u, l)| (l.as_str(), u.as_str())).collect();
    loop {
        let extra: Vec<_> = below
            .iter()
            .flat_map(|&(a, b)| below.iter().filter(move |&&(c, _)| c == b).map(move |&(_, d)| (a, d)))
            .filter(|pair| !below.contains(pair))
            .collect();
        if extra.is_empty() {
            break;
        }
        below.extend(extra);
    }
    let k = order_complex(&build_zn_quotient(2).unwrap().poset);
    assert_eq!(names.len(), 13);
    assert_eq!(k.vertices, 13);
    assert_eq!(k.edges.len(), below.len());
    assert_eq!(below.len(), 36);
}

#[test]
fn model_matches_zn_construction() {
    for n in [2u64, 3] {
        let model = quotient_model(&reduced(&format!("<a|a^{n}>")));
        let zn = build_zn_quotient(n).unwrap();
        assert!(isomorphic(model.poset(), &zn.poset).unwrap().is_some(), "n={n}");
    }
}

#[test]
fn circle_and_wedge_models() {
    let circle = quotient_model(&reduced("<a|>"));
    let p = circle.poset();
    assert_eq!(p.len(), 4);
    assert_eq!(p.hasse().len(), 4);
    assert_eq!(p.minimal_points().len(), 2);
    assert_eq!(p.maximal_points().len(), 2);

    let wedge = quotient_model(&reduced("<a,b|>"));
    let ep = edge_path_presentation(wedge.poset()).unwrap();
    let simple = tietze_simplify(&ep.presentation, 1000).presentation;
    assert_eq!((simple.num_generators(), simple.relators().len()), (2, 0));
}

#[test]
fn z4_simplification_keeps_abelianization() {
    let model = quotient_model(&reduced("<a|a^4>"));
    let ep = edge_path_presentation(model.poset()).unwrap();
    let out = tietze_simplify_traced(&ep.presentation, 1000);
    let z4 = AbelianInvariants { torsion: vec![4], free_rank: 0 };
    assert!(out.trace.iter().all(|t| t.as_ref().unwrap() == &z4));
    let p = out.presentation;
    assert_eq!((p.num_generators(), p.relators().len()), (1, 1));
    assert_eq!(p.relators()[0].exponent_sums(1)[0].abs(), 4);
}

#[test]
fn verification_statuses() {
    let limits = VerifyLimits::default();
    let z4 = verify_pi1(quotient_model(&reduced("<a|a^4>")).poset(), &pres("<a|a^4>"), limits).unwrap();
    assert_eq!(z4.status, VerificationStatus::Verified);
    assert_eq!(z4.space_order, Some(4));

    let z = verify_pi1(&circle_model(), &pres("<a|>"), limits).unwrap();
    assert_eq!(z.status, VerificationStatus::Verified);

    let wrong = verify_pi1(&circle_model(), &pres("<a|a^3>"), limits).unwrap();
    assert_eq!(wrong.status, VerificationStatus::Refuted);
}

#[test]
fn product_space_of_z2_and_z3() {
    let space = abelian_space(&[2, 3]).unwrap();
    let m2 = quotient_model(&reduced("<a|a^2>")).poset().len();
    let m3 = quotient_model(&reduced("<a|a^3>")).poset().len();
    assert_eq!(space.len(), m2 * m3);
    assert_eq!(space.len(), 221);
    let r = verify_pi1(&space, &pres("<a,b|a^2,b^3,a b a^-1 b^-1>"), VerifyLimits::default()).unwrap();
    assert_eq!(r.space_order, Some(6));
    assert_eq!(r.space_abelianization, Some(AbelianInvariants { torsion: vec![6], free_rank: 0 }));
}
