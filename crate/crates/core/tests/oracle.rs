//! Prolongation dimensions against a brute-force solve of the tangency
//! equations over all weighted-homogeneous polynomial fields.

mod common;

use tanaka_core::catalog::{extend_codim, make_heisenberg};
use tanaka_core::linalg::ExactMatrix;
use tanaka_core::model::QuadricModel;
use tanaka_core::prolong::prolong_full;
use tanaka_core::scalar::GaussianRational;

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}

fn model(n: usize, mats: Vec<Vec<Vec<GaussianRational>>>) -> QuadricModel {
    let k = mats.len();
    QuadricModel::new(n, k, mats.into_iter().map(|m| ExactMatrix::from_rows(m).unwrap()).collect()).unwrap()
}

fn agree(m: &QuadricModel) -> Vec<usize> {
    let dims = prolong_full(m, 12).unwrap().dims_vec();
    assert_eq!(common::brute_force_dims(m, 8), dims);
    dims
}

#[test]
fn sphere_in_c2() {
    assert_eq!(agree(&make_heisenberg().model), vec![1, 2, 2, 2, 1]);
}

#[test]
fn sphere_in_c3() {
    // su(3,1): dimension 15
    let m = model(2, vec![vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0), g(1, 0)]]]);
    assert_eq!(agree(&m), vec![1, 4, 5, 4, 1]);
}

#[test]
fn indefinite_hypersurface_in_c3() {
    // su(2,2): dimension 15, same grading as the sphere
    let m = model(2, vec![vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0), g(-1, 0)]]]);
    assert_eq!(agree(&m), vec![1, 4, 5, 4, 1]);
}

#[test]
fn product_of_spheres() {
    let m = extend_codim(&make_heisenberg(), 1).model;
    assert_eq!(agree(&m), vec![2, 4, 4, 4, 2]);
}

#[test]
fn codimension_two_with_off_diagonal_form() {
    let m = model(
        2,
        vec![
            vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0), g(0, 0)]],
            vec![vec![g(0, 0), g(0, 1)], vec![g(0, -1), g(1, 0)]],
        ],
    );
    agree(&m);
}
