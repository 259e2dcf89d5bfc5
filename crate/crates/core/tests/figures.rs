//! Quivers transcribed arrow by arrow from the drawn figures.

use std::collections::BTreeMap;

use cluster_core::models::{rectangles_seed, special_wiring_seed, ModelSeed};

fn arrows_of(ms: &ModelSeed) -> BTreeMap<(String, String), i64> {
    ms.labeled_arrows()
}

fn expected(pairs: &[(&str, &str)]) -> BTreeMap<(String, String), i64> {
    pairs.iter().map(|&(a, b)| ((format!("P{a}"), format!("P{b}")), 1)).collect()
}

#[test]
fn rectangles_3_7_matches_figure() {
    let ms = rectangles_seed(3, 7).unwrap();
    let fig = expected(&[
        ("457", "456"),
        ("457", "347"),
        ("467", "457"),
        ("467", "367"),
        ("367", "347"),
        ("367", "267"),
        ("267", "237"),
        ("267", "167"),
        ("347", "237"),
        ("347", "345"),
        ("347", "467"),
        ("237", "127"),
        ("237", "234"),
        ("237", "367"),
        ("567", "467"),
        ("345", "457"),
        ("234", "347"),
        ("123", "237"),
        ("127", "267"),
    ]);
    assert_eq!(arrows_of(&ms), fig);
    let mut frozen: Vec<&str> = ms.labels[ms.rank()..].iter().map(String::as_str).collect();
    frozen.sort_unstable();
    assert_eq!(frozen, ["P123", "P127", "P167", "P234", "P345", "P456", "P567"]);
}

#[test]
fn special_wiring_7_matches_figure() {
    let ms = special_wiring_seed(7).unwrap();
    let fig = expected(&[
        ("1", "2"),
        ("12", "23"),
        ("123", "234"),
        ("1234", "2345"),
        ("12345", "23456"),
        ("2", "12"),
        ("2", "3"),
        ("23", "123"),
        ("23", "2"),
        ("23", "34"),
        ("234", "1234"),
        ("234", "23"),
        ("234", "345"),
        ("2345", "12345"),
        ("2345", "234"),
        ("2345", "3456"),
        ("23456", "123456"),
        ("23456", "2345"),
        ("23456", "34567"),
        ("234567", "23456"),
        ("3", "23"),
        ("3", "4"),
        ("34", "234"),
        ("34", "3"),
        ("34", "45"),
        ("345", "2345"),
        ("345", "34"),
        ("345", "456"),
        ("3456", "23456"),
        ("3456", "345"),
        ("3456", "4567"),
        ("34567", "3456"),
        ("4", "34"),
        ("4", "5"),
        ("45", "345"),
        ("45", "4"),
        ("45", "56"),
        ("456", "3456"),
        ("456", "45"),
        ("456", "567"),
        ("4567", "456"),
        ("5", "45"),
        ("5", "6"),
        ("56", "456"),
        ("56", "5"),
        ("56", "67"),
        ("567", "56"),
        ("6", "56"),
        ("6", "7"),
        ("67", "6"),
    ]);
    assert_eq!(arrows_of(&ms), fig);
    assert_eq!((ms.rank(), ms.frozen_count()), (15, 12));
}
