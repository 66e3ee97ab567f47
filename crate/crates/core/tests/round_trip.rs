use seqlab_core::holonomy::{default_holdout, extend, guess, verify, PRecurrence};
use seqlab_core::tableau::avoiders_sequence;

fn round_trip(d: usize, r: usize, k: usize, n_max: usize, max_order: usize, max_degree: usize) {
    let terms = avoiders_sequence(d, r, n_max);
    let train = &terms[..k];
    let rec = guess(train, max_order, max_degree, default_holdout(k))
        .unwrap()
        .unwrap_or_else(|| panic!("no recurrence for ({d},{r})"));
    let text = rec.to_text();
    let parsed: PRecurrence = text.parse().unwrap();
    assert_eq!(parsed, rec);
    let seed = &train[..rec.offset() + rec.order()];
    let ext = extend(&rec, seed, n_max).unwrap();
    assert_eq!(ext, terms, "({d},{r}) with {rec}");
    assert!(verify(&rec, &ext));
}

#[test]
fn two_letter_pattern() {
    round_trip(2, 3, 12, 30, 1, 0);
}

#[test]
fn catalan() {
    round_trip(3, 1, 20, 60, 2, 2);
}

#[test]
fn avoiding_1234() {
    round_trip(4, 1, 40, 70, 3, 4);
}

#[test]
fn doubled_letters() {
    round_trip(3, 2, 40, 60, 3, 4);
}
