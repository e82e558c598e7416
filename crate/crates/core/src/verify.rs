//! Symbolic tangency test for holomorphic polynomial vector fields.
//!
//! With `ρ_j = (w_j − w̄_j)/(2i) − z H_j z*`, a holomorphic field `X` is an
//! infinitesimal automorphism when `Re(X ρ_j)` vanishes on the model for every
//! `j`. The residual is computed in independent variables `z, z̄, u` after
//! substituting `w_j = u_j + i z H_j z*`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::codim5_linear_fields;
use crate::error::{Error, Result};
use crate::model::QuadricModel;
use crate::poly::{FieldJson, Poly, PolyVectorField, Target, VarSpace};
use crate::scalar::{ratio, GaussianRational};

#[derive(Clone, Debug, PartialEq)]
pub struct TangencyCertificate {
    pub n: usize,
    pub k: usize,
    pub field: PolyVectorField,
    /// One residual per defining equation, in `z, z̄, u`.
    pub residuals: Vec<Poly>,
    pub verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub n: usize,
    pub k: usize,
    pub field: FieldJson,
    pub residuals: Vec<String>,
    pub verdict: bool,
}

impl TangencyCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            n: self.n,
            k: self.k,
            field: self.field.to_json(),
            residuals: self.residuals.iter().map(|p| p.to_string()).collect(),
            verdict: self.verdict,
        }
    }
}

/// `X ρ_j` before taking real parts.
fn derivative_of_defining_function(x: &PolyVectorField, m: &QuadricModel, j: usize) -> Poly {
    let s = x.space();
    let minus_half_i = GaussianRational::new(ratio(0, 1), ratio(-1, 2));
    // 1/(2i) = −i/2
    let mut out = x.component(Target::W(j)).scale(&minus_half_i);
    let h = m.matrix(j);
    for a in 0..m.n() {
        let xa = x.component(Target::Z(a));
        if xa.is_zero() {
            continue;
        }
        let mut dq = Poly::zero(s);
        for b in 0..m.n() {
            let c = &h[(a, b)];
            if !c.is_zero() {
                dq.add_scaled(c, &Poly::zb(s, b));
            }
        }
        out = out - xa * &dq;
    }
    out
}

/// Residual polynomials of `Re(X ρ_j)` restricted to the model.
pub fn tangency_residuals(x: &PolyVectorField, m: &QuadricModel) -> Result<Vec<Poly>> {
    if x.n() != m.n() || x.k() != m.k() {
        return Err(Error::Input(format!(
            "field lives in (n, k) = ({}, {}) but the model has ({}, {})",
            x.n(),
            x.k(),
            m.n(),
            m.k()
        )));
    }
    if !x.is_holomorphic() {
        return Err(Error::Input("field is not holomorphic".into()));
    }
    let s = x.space();
    let i = GaussianRational::i();
    let forms: Vec<Poly> = m.matrices().iter().map(|h| Poly::hermitian_form(s, h)).collect();
    Ok((0..m.k())
        .into_par_iter()
        .map(|j| {
            let mut re = derivative_of_defining_function(x, m, j).real_part();
            for (l, q) in forms.iter().enumerate() {
                let iq = q.scale(&i);
                re = re.substitute(s.w(l), &(&Poly::u(s, l) + &iq));
                re = re.substitute(s.wb(l), &(&Poly::u(s, l) - &iq));
            }
            re
        })
        .collect())
}

/// Tangency certificate; the verdict holds iff every residual is zero.
pub fn verify_hol(x: &PolyVectorField, m: &QuadricModel) -> Result<TangencyCertificate> {
    let residuals = tangency_residuals(x, m)?;
    let verdict = residuals.iter().all(Poly::is_zero);
    Ok(TangencyCertificate { n: m.n(), k: m.k(), field: x.clone(), residuals, verdict })
}

/// A nonzero tangent field vanishing to order at least `j + 1` at the origin.
pub fn certify_jet_counterexample(x: &PolyVectorField, m: &QuadricModel, j: u32) -> bool {
    if x.is_zero() {
        return false;
    }
    let Ok(cert) = verify_hol(x, m) else { return false };
    cert.verdict && x.ordinary_vanishing_order().is_ok_and(|o| o > j)
}

/// Images `(V(P_1), …, V(P_k))` of the Hermitian forms under a field.
pub fn apply_to_forms(v: &PolyVectorField, m: &QuadricModel) -> Vec<Poly> {
    let s = v.space();
    m.matrices().iter().map(|h| v.apply(&Poly::hermitian_form(s, h))).collect()
}

/// The eight relations between `X, Y, Z, U` and the forms `P_1..P_5` of the
/// codimension-5 model, each with its verdict.
pub fn weight_zero_relations(m: &QuadricModel, fields: &[PolyVectorField; 4]) -> Vec<(String, bool)> {
    if m.n() != 4 || m.k() != 5 {
        return vec![("model shape".into(), false)];
    }
    let s = VarSpace::new(4, 5);
    let p: Vec<Poly> = m.matrices().iter().map(|h| Poly::hermitian_form(s, h)).collect();
    let images: Vec<Vec<Poly>> = fields.iter().map(|f| apply_to_forms(f, m)).collect();
    let i = GaussianRational::i();
    let only_third = |q: &Poly| {
        let mut v = vec![Poly::zero(s); 5];
        v[2] = q.scale(&i);
        v
    };
    let combo = |terms: &[(&Poly, i64, usize)]| -> bool {
        (0..5).all(|e| {
            let mut acc = Poly::zero(s);
            for (coef, factor, f) in terms {
                acc = acc + (*coef * &images[*f][e]).scale(&GaussianRational::from(*factor));
            }
            acc.is_zero()
        })
    };
    let (x, y, z, u) = (0, 1, 2, 3);
    vec![
        ("X(P) = (0, 0, iP1, 0, 0)".into(), images[x] == only_third(&p[0])),
        ("Y(P) = (0, 0, iP2, 0, 0)".into(), images[y] == only_third(&p[1])),
        ("Z(P) = (0, 0, iP4, 0, 0)".into(), images[z] == only_third(&p[3])),
        ("U(P) = (0, 0, iP5, 0, 0)".into(), images[u] == only_third(&p[4])),
        ("P1(-Y(P)) + P2 X(P) = 0".into(), combo(&[(&p[0], -1, y), (&p[1], 1, x)])),
        ("P1 X(P) + P2 Y(P) + P5(-2Z(P)) + P4(-2U(P)) = 0".into(), combo(&[(&p[0], 1, x), (&p[1], 1, y), (&p[4], -2, z), (&p[3], -2, u)])),
        ("P2(-2Z(P)) + P4(2Y(P)) = 0".into(), combo(&[(&p[1], -2, z), (&p[3], 2, y)])),
        ("P2(-2U(P)) + P5(2Y(P)) = 0".into(), combo(&[(&p[1], -2, u), (&p[4], 2, y)])),
    ]
}

/// All eight relations hold for the catalog fields `X, Y, Z, U`.
pub fn check_weight_zero_relations(m: &QuadricModel) -> bool {
    weight_zero_relations(m, &codim5_linear_fields()).iter().all(|(_, ok)| *ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_codim5, make_heisenberg};
    use crate::scalar::rat;

    fn heisenberg_field(c: GaussianRational) -> PolyVectorField {
        PolyVectorField::d_dz(1, 1, 0).mul_poly(&Poly::z(VarSpace::new(1, 1), 0)).scale(&c)
    }

    #[test]
    fn rotation_is_tangent() {
        let m = make_heisenberg().model;
        assert!(verify_hol(&heisenberg_field(GaussianRational::i()), &m).unwrap().verdict);
    }

    #[test]
    fn dilation_of_z_alone_is_not() {
        let m = make_heisenberg().model;
        let cert = verify_hol(&heisenberg_field(GaussianRational::from(1)), &m).unwrap();
        assert!(!cert.verdict);
        let s = VarSpace::new(1, 1);
        assert_eq!(cert.residuals[0], (&Poly::z(s, 0) * &Poly::zb(s, 0)).scale(&GaussianRational::from(-1)));
    }

    #[test]
    fn zero_field_is_tangent() {
        let m = make_codim5().model;
        assert!(verify_hol(&PolyVectorField::zero(4, 5), &m).unwrap().verdict);
        assert!(!certify_jet_counterexample(&PolyVectorField::zero(4, 5), &m, 2));
    }

    #[test]
    fn shape_mismatch_is_input_error() {
        let m = make_codim5().model;
        assert!(matches!(verify_hol(&PolyVectorField::zero(1, 1), &m), Err(Error::Input(_))));
    }

    #[test]
    fn euler_field_is_no_jet_counterexample() {
        let m = make_codim5().model;
        let e = PolyVectorField::euler(4, 5);
        assert!(verify_hol(&e, &m).unwrap().verdict);
        assert!(!certify_jet_counterexample(&e, &m, 1));
    }

    #[test]
    fn real_scaling_preserves_verdict() {
        let m = make_codim5().model;
        let t = make_codim5().field("T").unwrap().clone();
        assert!(verify_hol(&t.scale(&GaussianRational::real(rat(-7))), &m).unwrap().verdict);
    }

    #[test]
    fn weight_zero_relations_hold() {
        let m = make_codim5().model;
        let checks = weight_zero_relations(&m, &codim5_linear_fields());
        assert_eq!(checks.len(), 8);
        assert!(checks.iter().all(|(_, ok)| *ok), "{checks:?}");
        assert!(check_weight_zero_relations(&m));
    }

    #[test]
    fn perturbed_x_breaks_relations() {
        let m = make_codim5().model;
        let mut fields = codim5_linear_fields();
        let s = VarSpace::new(4, 5);
        fields[0].add_component(Target::Z(2), &Poly::z(s, 0));
        let checks = weight_zero_relations(&m, &fields);
        assert!(!checks.iter().all(|(_, ok)| *ok));
    }
}
