//! Ultimately periodic sets: parsing, normal forms, boolean operations.
//!
//! ```text
//! cargo run --example upset_algebra
//! ```

use inferlab::upset::{SetOp, UpSet};

fn show(name: &str, s: &UpSet) {
    println!("{name:<24} {s:<12} {:?}...", s.elements_upto(20));
}

fn main() {
    let evens = UpSet::progression(0, 2);
    let threes = UpSet::progression(0, 3);
    show("2N", &evens);
    show("3N", &threes);
    show("2N ∩ 3N", &evens.intersection(&threes));
    show("2N ∪ 3N", &evens.union(&threes));
    show("complement of 2N", &evens.complement());

    // Redundant forms collapse.
    let raw: UpSet = "110010|1010".parse().unwrap();
    show("110010|1010", &raw);

    let cofinite = UpSet::cofinite([1, 4]);
    let segment = UpSet::segment(3);
    show("N \\ {1,4}", &cofinite);
    show("{0..3}", &segment);
    println!("relate                   {:?}", segment.relate(&cofinite));
    println!("least of {{0..3}} \\ N\\{{1,4}} {:?}", segment.first_difference(&cofinite));
    println!("finite elements          {:?}", UpSet::combine(SetOp::Difference, &segment, &cofinite).finite_elements());

    match "1|".parse::<UpSet>() {
        Ok(s) => println!("parsed {s}"),
        Err(e) => println!("rejected \"1|\": {e}"),
    }
}
