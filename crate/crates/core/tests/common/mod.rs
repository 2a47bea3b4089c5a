#![allow(dead_code)]

use std::collections::BTreeSet;

use fintop::finspace::FinitePoset;
use fintop::group::{best_oracle, IntMatrix};
use fintop::presentation::{Letter, Presentation, ReducedPresentation, Word};
use proptest::prelude::*;

pub fn pres(text: &str) -> Presentation {
    fintop::parse_presentation(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Certifies with the exact oracle when the group enumerates, else with the
/// abelianization oracle.
pub fn reduced(text: &str) -> ReducedPresentation {
    let p = pres(text);
    let oracle = best_oracle(&p, 10_000).unwrap();
    ReducedPresentation::certify(p, oracle.as_ref()).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// `(upper, lower)` label pairs of the Hasse diagram.
pub fn hasse_labels(p: &FinitePoset) -> BTreeSet<(String, String)> {
    p.hasse().into_iter().map(|(lo, hi)| (p.label(hi).to_string(), p.label(lo).to_string())).collect()
}

/// Golden cover list for the `Z_n` orbit space, as transcribed (possibly
/// with repeated lines).
pub fn golden_lines(n: usize) -> Vec<(String, String)> {
    let path = format!("{}/tests/data/zn_hasse_{n}.txt", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{path}: {e}"))
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace();
            (it.next().unwrap().to_string(), it.next().unwrap().to_string())
        })
        .collect()
}

/// Random acyclic cover lists on up to `max_n` points; edges only go from
/// lower to higher ids.
pub fn random_covers(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let k = pairs.len();
        (Just(n), proptest::collection::vec(proptest::bool::weighted(0.3), k))
            .prop_map(move |(n, keep)| (n, pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| *p).collect()))
    })
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Independent check of the partial-order axioms from `leq` alone.
pub fn axioms_hold(p: &FinitePoset) -> bool {
    let n = p.len();
    (0..n).all(|x| p.leq(x, x))
        && (0..n).all(|x| (0..n).all(|y| x == y || !(p.leq(x, y) && p.leq(y, x))))
        && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(p.leq(x, y) && p.leq(y, z)) || p.leq(x, z))))
}

/// Random presentations on up to 3 generators with up to 4 relators.
pub fn random_presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=3).prop_flat_map(|g| {
        let letter = (0..g, any::<bool>()).prop_map(|(generator, inverse)| Letter { generator, inverse });
        let word = proptest::collection::vec(letter, 0..7).prop_map(Word);
        proptest::collection::vec(word, 0..5)
            .prop_map(move |rels| Presentation::from_names(&["a", "b", "c"][..g], rels).unwrap())
    })
}

/// Finite groups with known orders.
pub fn finite_family() -> impl Strategy<Value = (Presentation, usize)> {
    prop_oneof![
        (1usize..12).prop_map(|n| (pres(&format!("<a|a^{n}>")), n)),
        (2usize..8).prop_map(|n| (pres(&format!("<a,b|a^{n},b^2,(a b)^2>")), 2 * n)),
        (1usize..6, 1usize..6).prop_map(|(m, n)| (pres(&format!("<a,b|a^{m},b^{n},a b a^-1 b^-1>")), m * n)),
    ]
}

pub fn random_matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-20i64..=20, c), r)
            .prop_map(move |rows| IntMatrix::from_rows(c, &rows))
    })
}

/// Determinant by fraction-free elimination, exact in i128.
pub fn determinant(m: &IntMatrix) -> i128 {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut a: Vec<Vec<i128>> = (0..n).map(|i| m.row(i).iter().map(|&v| v as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}
