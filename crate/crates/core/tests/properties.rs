use std::sync::Arc;

use proptest::prelude::*;

use mincodes::codes::CodeCf;
use mincodes::search::{min_blocking_search, min_theorem_set_search, SearchStatus};
use mincodes::sets::{self, construct_tight, PointSet};
use mincodes::{Point, Space};

fn random_set(q: usize, n: usize) -> impl Strategy<Value = PointSet> {
    let size = q.pow(n as u32);
    proptest::collection::btree_set(1..size, 1..size.min(40)).prop_map(move |idx| {
        let space = Arc::new(Space::new(q, n).unwrap());
        PointSet::from_indices(space, idx.into_iter().collect(), false).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn binary_checker_agrees_with_general(set in prop_oneof![random_set(2, 5), random_set(2, 6)]) {
        let a = sets::check_conditions(&set).unwrap();
        let b = sets::check_conditions_binary(&set).unwrap();
        prop_assert_eq!(a.all_hold, b.all_hold);
    }

    #[test]
    fn fast_checker_agrees_with_enumeration(set in prop_oneof![random_set(3, 3), random_set(4, 2), random_set(2, 5)]) {
        prop_assert_eq!(sets::check_conditions(&set).unwrap(), sets::check_conditions_by_enumeration(&set).unwrap());
    }

    #[test]
    fn dimension_is_n_plus_one_unless_linear(set in prop_oneof![random_set(2, 4), random_set(3, 3), random_set(5, 2)]) {
        let code = CodeCf::new(set).unwrap();
        let want = if code.is_linear() { code.n() } else { code.n() + 1 };
        prop_assert_eq!(code.dimension(), want);
    }

    #[test]
    fn conditions_imply_minimal_and_ab_violated(set in prop_oneof![random_set(2, 5), random_set(2, 6)]) {
        if sets::check_conditions(&set).unwrap().all_hold {
            let code = CodeCf::new(set).unwrap();
            prop_assert!(code.is_minimal().is_minimal);
            prop_assert!(!code.ab_condition().unwrap().holds);
        }
    }
}

#[test]
fn every_tight_set_in_range_is_a_theorem_witness() {
    for (q, n) in [(2, 5), (2, 6), (3, 4)] {
        let space = Arc::new(Space::new(q, n).unwrap());
        let mut anchor = vec![0u8; n];
        anchor[0] = 1;
        anchor[1] = 1;
        let set = construct_tight(space, &Point::new(anchor)).unwrap();
        assert!(sets::check_conditions(&set).unwrap().all_hold, "q={q} n={n}");
        let code = CodeCf::new(set).unwrap();
        assert!(code.is_minimal().is_minimal);
        assert!(!code.ab_condition().unwrap().holds);
    }
}

#[test]
fn blocking_minimum_meets_the_lower_bound() {
    for (q, n) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)] {
        let want = n * (q - 1) + 1;
        let r = min_blocking_search(q, n, want).unwrap();
        assert_eq!(r.min_size, Some(want), "q={q} n={n}");
        assert!(sets::is_affine_blocking(r.witness.as_ref().unwrap()));
    }
}

#[test]
fn theorem_search_finds_the_lower_bound_where_the_window_is_open() {
    let r = min_theorem_set_search(2, 5).unwrap();
    assert_eq!(r.status, SearchStatus::Found);
    assert_eq!(r.min_size, Some(6));
    let w = r.witness.unwrap();
    assert!(sets::check_conditions_by_enumeration(&w).unwrap().all_hold);
}
