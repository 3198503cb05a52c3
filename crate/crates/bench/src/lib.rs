//! Fixtures shared by the benchmarks.

use knotkit::families::Templates;
use knotkit::{BraidWord, PlanarDiagram};

/// Named knot diagrams of increasing size.
pub fn fixtures() -> Vec<(&'static str, PlanarDiagram)> {
    let t = Templates::builtin();
    vec![
        ("trefoil", BraidWord::new(2, &[1, 1, 1]).unwrap().closure().unwrap()),
        ("R[0]", t.knot_r(0).unwrap()),
        ("K[1,0]", t.knot_k(1, 0).unwrap()),
        ("K[3,2]", t.knot_k(3, 2).unwrap()),
    ]
}

/// A long braid on four strands.
pub fn long_braid() -> BraidWord {
    let w: Vec<i64> = (0..63).map(|i| [1, -2, 3][i % 3]).collect();
    BraidWord::new(4, &w).unwrap()
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixtures_are_knots() {
        for (name, d) in super::fixtures() {
            assert_eq!(d.component_count(), 1, "{name}");
        }
        assert_eq!(super::long_braid().closure_components(), 1);
    }
}
