//! The symbolic verdict against direct evaluation at random points of the model.

mod common;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tanaka_core::catalog::{all_small, make_heisenberg};
use tanaka_core::model::QuadricModel;
use tanaka_core::poly::{Poly, PolyVectorField, VarSpace};
use tanaka_core::prolong::prolong_full;
use tanaka_core::realize::realize_basis;
use tanaka_core::scalar::{ratio, GaussianRational, Rational};
use tanaka_core::verify::verify_hol;

const POINTS: usize = 200;

fn random_rational(rng: &mut StdRng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn random_point(rng: &mut StdRng, n: usize, k: usize) -> (Vec<GaussianRational>, Vec<Rational>) {
    let z = (0..n).map(|_| GaussianRational::new(random_rational(rng), random_rational(rng))).collect();
    let u = (0..k).map(|_| random_rational(rng)).collect();
    (z, u)
}

fn vanishes_everywhere(f: &PolyVectorField, m: &QuadricModel, rng: &mut StdRng) -> bool {
    (0..POINTS).all(|_| {
        let (z, u) = random_point(rng, m.n(), m.k());
        common::pointwise_residuals(f, m, &z, &u).iter().all(Zero::is_zero)
    })
}

#[test]
fn tangent_fields_vanish_at_random_points() {
    let mut rng = StdRng::seed_from_u64(7);
    for e in all_small() {
        let mut fields: Vec<PolyVectorField> = e.known_fields.iter().map(|(_, f)| f.clone()).collect();
        let r = prolong_full(&e.model, 12).unwrap();
        fields.extend(realize_basis(&r, r.top_degree as i32).unwrap());
        fields.extend(realize_basis(&r, 1).unwrap());
        for f in fields {
            if verify_hol(&f, &e.model).unwrap().verdict {
                assert!(vanishes_everywhere(&f, &e.model, &mut rng), "{}: {f}", e.name);
            }
        }
    }
}

#[test]
fn rejected_field_is_witnessed_by_some_point() {
    let mut rng = StdRng::seed_from_u64(11);
    let m = make_heisenberg().model;
    let f = PolyVectorField::d_dz(1, 1, 0).mul_poly(&Poly::z(VarSpace::new(1, 1), 0));
    assert!(!verify_hol(&f, &m).unwrap().verdict);
    assert!(!vanishes_everywhere(&f, &m, &mut rng));
}
