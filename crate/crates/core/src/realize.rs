//! Holomorphic realization of prolongation elements.
//!
//! With `ε_a = (X_a − i J X_a)/2` spanning the `i`-eigenspace of `J` and `η_j`
//! the basis of `g_{-2}`, an element `β` is sent to
//! `Σ_{c,d} (−1)^{c+d}/(c! d!) · proj(ad(z)^c ad(w)^d β)` where
//! `ad(z) = Σ z_a ad(ε_a)` and `ad(w) = Σ w_j ad(η_j)` commute. The projection
//! keeps the `ε` part of degree −1 terms (as `∂/∂z`) and the degree −2 part (as
//! `∂/∂w`). Realization reverses brackets: see [`REALIZATION_BRACKET_SIGN`].

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{solve_columns, SparseVec};
use crate::poly::{Monomial, Poly, PolyVectorField, Target, VarSpace};
use crate::prolong::{GradedLieAlgebra, ProlongationResult};
use crate::scalar::{GaussianRational, Rational};

/// `[R(A), R(B)] = σ R([A, B])` for every pair of basis elements.
pub const REALIZATION_BRACKET_SIGN: i64 = -1;

/// Element of `g ⊗ C` with polynomial coefficients, keyed by global basis index.
type PolyElement = BTreeMap<usize, Poly>;

/// Brackets of the complex generators `ε_a`, `η_j` with every real basis element.
#[derive(Clone, Debug)]
pub struct ComplexifiedAlgebra {
    algebra: GradedLieAlgebra,
    /// `eps[a][g] = [ε_a, e_g]`
    eps: Vec<Vec<SparseVec<GaussianRational>>>,
    /// `eta[j][g] = [η_j, e_g]`
    eta: Vec<Vec<SparseVec<GaussianRational>>>,
}

impl ComplexifiedAlgebra {
    pub fn new(algebra: &GradedLieAlgebra) -> Self {
        let (n, k) = (algebra.n(), algebra.k());
        let gm1 = algebra.range(-1).start;
        let gm2 = algebra.range(-2).start;
        let total = algebra.total_dim();
        let half = GaussianRational::real(Rational::new(1.into(), 2.into()));
        let minus_half_i = GaussianRational::new(Rational::zero(), Rational::new((-1).into(), 2.into()));
        let cplx = |v: &SparseVec<Rational>| v.map_values(|x| GaussianRational::real(x.clone()));
        let eps = (0..n)
            .map(|a| {
                (0..total)
                    .map(|g| {
                        let re = cplx(algebra.basis_bracket(gm1 + a, g));
                        let im = cplx(algebra.basis_bracket(gm1 + n + a, g));
                        re.scaled(&half).add_scaled(&minus_half_i, &im)
                    })
                    .collect()
            })
            .collect();
        let eta = (0..k).map(|j| (0..total).map(|g| cplx(algebra.basis_bracket(gm2 + j, g))).collect()).collect();
        Self { algebra: algebra.clone(), eps, eta }
    }

    pub fn algebra(&self) -> &GradedLieAlgebra {
        &self.algebra
    }

    fn space(&self) -> VarSpace {
        VarSpace::new(self.algebra.n(), self.algebra.k())
    }

    /// `Σ_a z_a [ε_a, V]` or `Σ_j w_j [η_j, V]`.
    fn ad(&self, v: &PolyElement, holomorphic_z: bool) -> PolyElement {
        let space = self.space();
        let gens = if holomorphic_z { &self.eps } else { &self.eta };
        let mut out = PolyElement::new();
        for (idx, table) in gens.iter().enumerate() {
            let var = if holomorphic_z { Poly::z(space, idx) } else { Poly::w(space, idx) };
            for (&g, p) in v {
                let bracket = &table[g];
                if bracket.is_zero() {
                    continue;
                }
                let coeff = &var * p;
                for (h, c) in bracket.iter() {
                    out.entry(h).or_insert_with(|| Poly::zero(space)).add_scaled(c, &coeff);
                }
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn degree_of_element(&self, v: &PolyElement) -> Option<i32> {
        v.keys().next().map(|&g| self.algebra.degree_of(g))
    }

    /// Realizes an element given by global real coordinates; all of them must
    /// lie in `degree`.
    pub fn realize(&self, degree: i32, element: &SparseVec<Rational>) -> Result<PolyVectorField> {
        if degree < -2 || degree > self.algebra.top_degree() {
            return Err(Error::Degree(degree));
        }
        if let Some((g, _)) = element.iter().find(|(g, _)| self.algebra.degree_of(*g) != degree) {
            return Err(Error::Degree(self.algebra.degree_of(g)));
        }
        let (n, k) = (self.algebra.n(), self.algebra.k());
        let space = self.space();
        let gm1 = self.algebra.range(-1).start;
        let gm2 = self.algebra.range(-2).start;
        let mut z = vec![Poly::zero(space); n];
        let mut w = vec![Poly::zero(space); k];
        let i = GaussianRational::i();

        let start: PolyElement = element
            .iter()
            .map(|(g, x)| (g, Poly::constant(space, GaussianRational::real(x.clone()))))
            .collect();
        // wd = ad(w)^d β / d!, then zc = ad(z)^c wd / c!, with signs (−1)^{c+d}
        let mut wd = start;
        let mut d = 0i64;
        while !wd.is_empty() {
            let mut zc = wd.clone();
            let mut c = 0i64;
            while !zc.is_empty() {
                let sign = if (c + d) % 2 == 0 { GaussianRational::one() } else { -GaussianRational::one() };
                match self.degree_of_element(&zc) {
                    Some(-1) => {
                        for (&g, p) in &zc {
                            let r = g - gm1;
                            if r < n {
                                z[r].add_scaled(&sign, p);
                            } else {
                                z[r - n].add_scaled(&(&sign * &i), p);
                            }
                        }
                    }
                    Some(-2) => {
                        for (&g, p) in &zc {
                            w[g - gm2].add_scaled(&sign, p);
                        }
                    }
                    _ => {}
                }
                c += 1;
                let next = self.ad(&zc, true);
                let inv = GaussianRational::real(Rational::new(1.into(), c.into()));
                zc = next.into_iter().map(|(g, p)| (g, p.scale(&inv))).collect();
            }
            d += 1;
            let next = self.ad(&wd, false);
            let inv = GaussianRational::real(Rational::new(1.into(), d.into()));
            wd = next.into_iter().map(|(g, p)| (g, p.scale(&inv))).collect();
        }
        PolyVectorField::from_components(z, w)
    }

    /// Realization of the `t`-th basis element of `g_degree`.
    pub fn realize_basis_element(&self, degree: i32, t: usize) -> Result<PolyVectorField> {
        let range = self.algebra.range(degree);
        if t >= range.len() {
            return Err(Error::Degree(degree));
        }
        self.realize(degree, &SparseVec::unit(range.start + t))
    }

    pub fn realize_grading_element(&self) -> Result<PolyVectorField> {
        self.realize(0, self.algebra.grading_element())
    }
}

/// Realizations of every basis element of `g_degree`, in basis order.
pub fn realize_basis(r: &ProlongationResult, degree: i32) -> Result<Vec<PolyVectorField>> {
    realize_basis_with(&ComplexifiedAlgebra::new(&r.algebra), degree)
}

pub fn realize_basis_with(c: &ComplexifiedAlgebra, degree: i32) -> Result<Vec<PolyVectorField>> {
    if degree < -2 || degree > c.algebra.top_degree() {
        return Err(Error::Degree(degree));
    }
    let dim = c.algebra.dim(degree);
    (0..dim).into_par_iter().map(|t| c.realize_basis_element(degree, t)).collect()
}

/// Real coefficients `x` with `Σ x_t fields[t] = target`, if any.
pub fn real_span_coefficients(fields: &[PolyVectorField], target: &PolyVectorField) -> Option<Vec<Rational>> {
    let mut keys: BTreeMap<(Target, Monomial), usize> = BTreeMap::new();
    let mut index = |key: (Target, Monomial)| {
        let next = keys.len();
        *keys.entry(key).or_insert(next)
    };
    let mut split = |f: &PolyVectorField| {
        let mut pairs = Vec::new();
        for (key, c) in f.coefficients() {
            let r = index(key);
            if !c.re.is_zero() {
                pairs.push((2 * r, c.re.clone()));
            }
            if !c.im.is_zero() {
                pairs.push((2 * r + 1, c.im.clone()));
            }
        }
        SparseVec::from_pairs(pairs)
    };
    let columns: Vec<SparseVec<Rational>> = fields.iter().map(&mut split).collect();
    let rhs = split(target);
    let rows = 2 * keys.len();
    solve_columns(rows, &columns, &rhs)
}

pub fn in_real_span(fields: &[PolyVectorField], target: &PolyVectorField) -> bool {
    real_span_coefficients(fields, target).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ExactMatrix;
    use crate::model::QuadricModel;
    use crate::poly::WeightedDegree;
    use crate::prolong::prolong_full;

    fn heisenberg() -> ProlongationResult {
        let m = QuadricModel::new(1, 1, vec![ExactMatrix::from_rows(vec![vec![GaussianRational::from(1)]]).unwrap()])
            .unwrap();
        prolong_full(&m, 12).unwrap()
    }

    #[test]
    fn heisenberg_negative_degrees() {
        let r = heisenberg();
        let gm2 = realize_basis(&r, -2).unwrap();
        assert_eq!(gm2, vec![PolyVectorField::d_dw(1, 1, 0)]);
        let gm1 = realize_basis(&r, -1).unwrap();
        let s = VarSpace::new(1, 1);
        // ∂/∂z + 2i z̄-free term: 2i z ∂/∂w
        let mut expect = PolyVectorField::d_dz(1, 1, 0);
        expect.add_component(Target::W(0), &Poly::z(s, 0).scale(&GaussianRational::from_ints(0, 2)));
        assert_eq!(gm1[0], expect);
        let mut expect_j = PolyVectorField::d_dz(1, 1, 0).scale(&GaussianRational::i());
        expect_j.add_component(Target::W(0), &Poly::z(s, 0).scale(&GaussianRational::from(2)));
        assert_eq!(gm1[1], expect_j);
    }

    #[test]
    fn grading_element_is_euler_field() {
        let r = heisenberg();
        let c = ComplexifiedAlgebra::new(&r.algebra);
        assert_eq!(c.realize_grading_element().unwrap(), PolyVectorField::euler(1, 1));
    }

    #[test]
    fn weights_and_bracket_sign() {
        let r = heisenberg();
        let c = ComplexifiedAlgebra::new(&r.algebra);
        let d = r.algebra.total_dim();
        let fields: Vec<PolyVectorField> =
            (0..d).map(|g| c.realize(r.algebra.degree_of(g), &SparseVec::unit(g)).unwrap()).collect();
        for g in 0..d {
            assert_eq!(fields[g].weighted_degree(), WeightedDegree::Homogeneous(r.algebra.degree_of(g)));
        }
        let sigma = GaussianRational::from(REALIZATION_BRACKET_SIGN);
        for a in 0..d {
            for b in 0..d {
                let bracket = r.algebra.basis_bracket(a, b);
                let rhs = if bracket.is_zero() {
                    PolyVectorField::zero(1, 1)
                } else {
                    c.realize(r.algebra.degree_of(a) + r.algebra.degree_of(b), bracket).unwrap().scale(&sigma)
                };
                assert_eq!(fields[a].bracket(&fields[b]), rhs, "pair ({a}, {b})");
            }
        }
    }

    #[test]
    fn wrong_degree_is_rejected() {
        let r = heisenberg();
        let c = ComplexifiedAlgebra::new(&r.algebra);
        assert!(matches!(c.realize(0, &SparseVec::unit(0)), Err(Error::Degree(-2))));
        assert!(matches!(realize_basis(&r, 3), Err(Error::Degree(3))));
    }

    #[test]
    fn span_membership() {
        let a = PolyVectorField::d_dz(1, 1, 0);
        let b = PolyVectorField::d_dw(1, 1, 0);
        let target = a.scale(&GaussianRational::from(3)).sub(&b);
        assert_eq!(
            real_span_coefficients(&[a.clone(), b.clone()], &target),
            Some(vec![Rational::from_integer(3.into()), Rational::from_integer((-1).into())])
        );
        // complex multiples are outside the real span
        assert!(!in_real_span(std::slice::from_ref(&a), &a.scale(&GaussianRational::i())));
    }
}
