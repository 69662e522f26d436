//! The fixed test corpus: small named families plus seeded random graphs.

use crate::graph::{generate, Family, Graph};

pub const PALEY_PRIMES: [usize; 4] = [5, 13, 17, 29];

/// Family specifications of the standard corpus, in a fixed order.
pub fn corpus_families() -> Vec<Family> {
    let mut out = Vec::new();
    out.extend((1..=8).map(Family::Complete));
    out.extend((3..=30).map(Family::Cycle));
    out.extend((1..=20).map(Family::Path));
    out.extend((2..=5).map(Family::Hypercube));
    out.extend((1..=8).map(Family::Star));
    out.extend([Family::Empty(1), Family::Empty(5)]);
    out.extend(PALEY_PRIMES.map(Family::Paley));
    for n in [12, 20, 30, 50, 80, 100] {
        for d in [3, 4, 6, 8, 10].into_iter().filter(|&d| d < n) {
            out.extend((0..3).map(|seed| Family::RandomRegular { n, d, seed }));
        }
    }
    for n in [10, 20, 40, 70, 100] {
        for p in [0.05, 0.1, 0.15] {
            out.extend((0..4).map(|seed| Family::ErdosRenyi { n, p, seed }));
        }
    }
    out
}

/// Every corpus family together with its graph.
pub fn corpus() -> Vec<(Family, Graph)> {
    corpus_families()
        .into_iter()
        .map(|f| {
            let g = generate(&f).expect("corpus parameters are valid");
            (f, g)
        })
        .collect()
}
