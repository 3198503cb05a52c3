use knotkit::diagram::Crossing;
use knotkit::families::{Templates, Variant};
use knotkit::invariants::{alexander, alexander_burau, alexander_from_seifert, signature, summarize};
use knotkit::seifert::seifert_matrix;
use knotkit::{BraidWord, PlanarDiagram};
use proptest::prelude::*;

fn braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(|s| {
        let letter = (1..s as i64).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        proptest::collection::vec(letter, 1..=8).prop_map(move |w| BraidWord::new(s, &w).unwrap())
    })
}

fn knot_braid() -> impl Strategy<Value = BraidWord> {
    braid().prop_filter("knot closure", |b| b.closure_components() == 1)
}

/// Renames edges by `perm` and reorders the crossing list.
fn shuffled(d: &PlanarDiagram, perm: &[usize], rotate: usize) -> PlanarDiagram {
    let mut crossings: Vec<Crossing> = d
        .crossings()
        .iter()
        .map(|c| Crossing { edges: c.edges.map(|e| perm[e as usize - 1] as _), sign: c.sign })
        .collect();
    let k = rotate % crossings.len().max(1);
    crossings.rotate_left(k);
    PlanarDiagram::new(crossings, d.free_loops()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabel_invariance(b in knot_braid(), seed in any::<u64>(), rotate in 0usize..16) {
        let d = b.closure().unwrap().relabeled();
        let n = 2 * d.crossing_count();
        let mut perm: Vec<usize> = (1..=n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let e = shuffled(&d, &perm, rotate);
        let (a, c) = (summarize(&d, &[2, 3]).unwrap(), summarize(&e, &[2, 3]).unwrap());
        prop_assert_eq!(a.alexander, c.alexander);
        prop_assert_eq!(a.signature, c.signature);
        prop_assert_eq!(a.branched, c.branched);
        if d.crossing_count() > 0 {
            let (v, w) = (seifert_matrix(&d).unwrap(), seifert_matrix(&e).unwrap());
            prop_assert_eq!(alexander_from_seifert(&v).unwrap(), alexander_from_seifert(&w).unwrap());
        }
    }

    #[test]
    fn mirror_negates_signature(b in knot_braid()) {
        let d = b.closure().unwrap();
        let m = d.mirror();
        prop_assert_eq!(signature(&m).unwrap(), -signature(&d).unwrap());
        prop_assert_eq!(m.writhe(), -d.writhe());
        prop_assert_eq!(alexander(&m).unwrap(), alexander(&d).unwrap());
        prop_assert_eq!(b.mirror().closure().unwrap().writhe(), m.writhe());
    }

    #[test]
    fn closure_components_match_permutation(b in braid()) {
        prop_assert_eq!(b.closure().unwrap().component_count(), b.closure_components());
    }

    #[test]
    fn burau_matches_wirtinger(b in knot_braid()) {
        prop_assert_eq!(alexander_burau(&b), alexander(&b.closure().unwrap()).unwrap());
    }

    #[test]
    fn reverse_preserves_invariants(b in knot_braid()) {
        let d = b.closure().unwrap();
        let r = d.reverse();
        prop_assert_eq!(alexander(&r).unwrap(), alexander(&d).unwrap());
        prop_assert_eq!(signature(&r).unwrap(), signature(&d).unwrap());
    }
}

#[test]
fn family_members_are_knots() {
    let t = Templates::builtin();
    for n in -3..=3 {
        for m in 0..=2 {
            assert_eq!(t.knot_k(n, m).unwrap().component_count(), 1, "K[{n},{m}]");
        }
    }
    for m in 0..=3 {
        assert_eq!(t.knot_r(m).unwrap().component_count(), 1);
    }
    for m in 1..=3 {
        for v in [Variant::Left, Variant::Right] {
            let bp = t.band_presentation_j(m, v).unwrap();
            assert_eq!(bp.knot().unwrap().component_count(), 1);
            assert_eq!(bp.annulus_twist(1).unwrap().component_count(), 1);
        }
    }
}

#[test]
fn annulus_twist_zero_is_identity() {
    let bp = Templates::builtin().band_presentation_j(1, Variant::Left).unwrap();
    assert_eq!(alexander(&bp.annulus_twist(0).unwrap()).unwrap(), alexander(&bp.knot().unwrap()).unwrap());
}
