//! Shared inputs for the benchmarks in `benches/`.

use betanum::{evaluate, DigitString, FinElem, Params};

/// The parameter pairs benchmarked: a small and a larger non-unit base and
/// a unit.
pub fn bench_params() -> [Params; 3] {
    [
        Params::new(5, 2).expect("valid"),
        Params::new(12, 5).expect("valid"),
        Params::new(4, 3).expect("valid"),
    ]
}

/// Non-admissible representations with digits up to `2p + 2`, built by a
/// fixed linear congruential walk so runs are comparable.
pub fn representations(params: &Params, count: usize) -> Vec<DigitString> {
    let top = 2 * u64::from(params.p()) + 3;
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = move || {
        state = state
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        state >> 33
    };
    (0..count)
        .map(|_| {
            let len = 1 + (next() % 8) as usize;
            let digits = (0..len).map(|_| next() % top).collect();
            DigitString::new(digits, (next() % 10) as i64 - 2)
        })
        .collect()
}

pub fn values(params: &Params, count: usize) -> Vec<FinElem> {
    representations(params, count)
        .iter()
        .map(|d| evaluate(d, params))
        .collect()
}
