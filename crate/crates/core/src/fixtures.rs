//! Small named complexes used across tests, benches and the CLI.

use crate::complex::Complex;

/// `⟨1246, 13, 15, 23, 25, 34, 35, 36⟩` on `1 < … < 6`: a 3-near-cone with
/// apex `1, 2, 3` whose apex set is not a face.
pub fn nonface_apex_example() -> Complex {
    Complex::from_index_facets(
        6,
        &[
            &[1, 2, 4, 6],
            &[1, 3],
            &[1, 5],
            &[2, 3],
            &[2, 5],
            &[3, 4],
            &[3, 5],
            &[3, 6],
        ],
    )
    .expect("valid fixture")
}

pub fn hollow_triangle() -> Complex {
    Complex::from_index_facets(3, &[&[1, 2], &[1, 3], &[2, 3]]).expect("valid fixture")
}

/// Cycle `12, 23, 34, 14`.
pub fn four_cycle() -> Complex {
    Complex::from_index_facets(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]).expect("valid fixture")
}

pub fn two_disjoint_edges() -> Complex {
    Complex::from_index_facets(4, &[&[1, 2], &[3, 4]]).expect("valid fixture")
}

/// Text form of [`nonface_apex_example`] in the facet-list format.
pub const NONFACE_APEX_EXAMPLE_TEXT: &str = "\
# 3-near-cone with apex 1 2 3
vertices: 1 2 3 4 5 6
1 2 4 6
1 3
1 5
2 3
2 5
3 4
3 5
3 6
";
