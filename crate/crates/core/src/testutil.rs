use proptest::prelude::*;

use crate::lattice::Matrix2;

fn elementary() -> impl Strategy<Value = Matrix2> {
    prop_oneof![
        (-5i64..=5).prop_map(|t| Matrix2::new(1, t, 0, 1)),
        (-5i64..=5).prop_map(|t| Matrix2::new(1, 0, t, 1)),
        Just(Matrix2::new(0, 1, 1, 0)),
        Just(Matrix2::new(-1, 0, 0, 1)),
    ]
}

/// Products of elementary integer matrices; every result is unimodular.
pub(crate) fn unimodular() -> impl Strategy<Value = Matrix2> {
    prop::collection::vec(elementary(), 1..8)
        .prop_map(|ms| ms.iter().fold(Matrix2::identity(), |acc, m| acc.compose(m)))
}

/// Unimodular matrices with determinant +1.
pub(crate) fn special_unimodular() -> impl Strategy<Value = Matrix2> {
    unimodular().prop_map(|m| {
        if m.det() == 1.into() {
            m
        } else {
            m.compose(&Matrix2::new(0, 1, 1, 0))
        }
    })
}
