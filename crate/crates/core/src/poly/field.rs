//! Holomorphic polynomial vector fields `Σ f_a ∂/∂z_a + Σ g_j ∂/∂w_j`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Monomial, Poly, VarSpace};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Coordinate direction a component differentiates along.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Target {
    Z(usize),
    W(usize),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Z(a) => write!(f, "z{}", a + 1),
            Target::W(j) => write!(f, "w{}", j + 1),
        }
    }
}

impl std::str::FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid field target `{s}`"));
        let (kind, idx) = s.split_at(1.min(s.len()));
        let i: usize = idx.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        match kind {
            "z" => Ok(Target::Z(i - 1)),
            "w" => Ok(Target::W(i - 1)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WeightedDegree {
    Homogeneous(i32),
    Inhomogeneous,
    /// The zero field is homogeneous of every weight.
    Zero,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVectorField {
    space: VarSpace,
    z: Vec<Poly>,
    w: Vec<Poly>,
}

impl PolyVectorField {
    pub fn zero(n: usize, k: usize) -> Self {
        let space = VarSpace::new(n, k);
        Self { space, z: vec![Poly::zero(space); n], w: vec![Poly::zero(space); k] }
    }

    /// Components must be holomorphic polynomials over `VarSpace::new(n, k)`.
    pub fn from_components(z: Vec<Poly>, w: Vec<Poly>) -> Result<Self> {
        let space = VarSpace::new(z.len(), w.len());
        for p in z.iter().chain(&w) {
            if p.space() != space {
                return Err(Error::Dimension("component over a different variable space".into()));
            }
            if !p.is_holomorphic() {
                return Err(Error::Input(format!("component `{p}` is not holomorphic")));
            }
        }
        Ok(Self { space, z, w })
    }

    /// `∂/∂z_a`.
    pub fn d_dz(n: usize, k: usize, a: usize) -> Self {
        let mut f = Self::zero(n, k);
        f.z[a] = Poly::one(f.space);
        f
    }

    /// `∂/∂w_j`.
    pub fn d_dw(n: usize, k: usize, j: usize) -> Self {
        let mut f = Self::zero(n, k);
        f.w[j] = Poly::one(f.space);
        f
    }

    /// `Σ z_a ∂/∂z_a + 2 Σ w_j ∂/∂w_j`.
    pub fn euler(n: usize, k: usize) -> Self {
        let mut f = Self::zero(n, k);
        for a in 0..n {
            f.z[a] = Poly::z(f.space, a);
        }
        for j in 0..k {
            f.w[j] = Poly::w(f.space, j).scale(&GaussianRational::from(2));
        }
        f
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn k(&self) -> usize {
        self.space.k
    }

    pub fn component(&self, t: Target) -> &Poly {
        match t {
            Target::Z(a) => &self.z[a],
            Target::W(j) => &self.w[j],
        }
    }

    pub fn z_components(&self) -> &[Poly] {
        &self.z
    }

    pub fn w_components(&self) -> &[Poly] {
        &self.w
    }

    pub fn components(&self) -> impl Iterator<Item = (Target, &Poly)> {
        self.z
            .iter()
            .enumerate()
            .map(|(a, p)| (Target::Z(a), p))
            .chain(self.w.iter().enumerate().map(|(j, p)| (Target::W(j), p)))
    }

    /// Adds `p·∂/∂target`; `p` must be holomorphic.
    pub fn add_component(&mut self, t: Target, p: &Poly) {
        assert!(p.is_holomorphic(), "non-holomorphic component");
        let slot = match t {
            Target::Z(a) => &mut self.z[a],
            Target::W(j) => &mut self.w[j],
        };
        slot.add_scaled(&GaussianRational::from(1), p);
    }

    pub fn is_zero(&self) -> bool {
        self.z.iter().chain(&self.w).all(Poly::is_zero)
    }

    pub fn is_holomorphic(&self) -> bool {
        self.z.iter().chain(&self.w).all(Poly::is_holomorphic)
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self { space: self.space, z: self.z.iter().map(&f).collect(), w: self.w.iter().map(&f).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map(|p| p.scale(c))
    }

    /// Multiplies every component by the holomorphic polynomial `p`.
    pub fn mul_poly(&self, p: &Poly) -> Self {
        assert!(p.is_holomorphic());
        self.map(|q| q * p)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.space, other.space);
        Self {
            space: self.space,
            z: self.z.iter().zip(&other.z).map(|(a, b)| a + b).collect(),
            w: self.w.iter().zip(&other.w).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-GaussianRational::from(1)))
    }

    /// `X(p) = Σ X_z,a ∂p/∂z_a + Σ X_w,j ∂p/∂w_j`; other variables are constants.
    pub fn apply(&self, p: &Poly) -> Poly {
        let s = self.space;
        assert_eq!(p.space(), s, "polynomial over a different variable space");
        let mut out = Poly::zero(s);
        for (a, c) in self.z.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &p.derivative(s.z(a)));
            }
        }
        for (j, c) in self.w.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &p.derivative(s.w(j)));
            }
        }
        out
    }

    /// Commutator `[X, Y]` acting on coordinate functions.
    pub fn bracket(&self, other: &Self) -> Self {
        assert_eq!(self.space, other.space);
        Self {
            space: self.space,
            z: self.z.iter().zip(&other.z).map(|(xa, ya)| &self.apply(ya) - &other.apply(xa)).collect(),
            w: self.w.iter().zip(&other.w).map(|(xj, yj)| &self.apply(yj) - &other.apply(xj)).collect(),
        }
    }

    pub fn weighted_degree(&self) -> WeightedDegree {
        let mut weight = None;
        for (t, p) in self.components() {
            let shift = match t {
                Target::Z(_) => 1,
                Target::W(_) => 2,
            };
            for (m, _) in p.terms() {
                let zdeg: u32 = (0..self.space.n).map(|a| m.exp(self.space.z(a))).sum();
                let wdeg: u32 = (0..self.space.k).map(|j| m.exp(self.space.w(j))).sum();
                let wt = (zdeg + 2 * wdeg) as i32 - shift;
                match weight {
                    None => weight = Some(wt),
                    Some(prev) if prev != wt => return WeightedDegree::Inhomogeneous,
                    _ => {}
                }
            }
        }
        weight.map_or(WeightedDegree::Zero, WeightedDegree::Homogeneous)
    }

    /// Minimum ordinary degree over all monomials of all components.
    pub fn ordinary_vanishing_order(&self) -> Result<u32> {
        self.z
            .iter()
            .chain(&self.w)
            .filter_map(Poly::min_degree)
            .min()
            .ok_or_else(|| Error::Undefined("vanishing order of the zero field".into()))
    }

    /// Flattened coefficients keyed by `(target, monomial)`.
    pub fn coefficients(&self) -> BTreeMap<(Target, Monomial), GaussianRational> {
        let mut out = BTreeMap::new();
        for (t, p) in self.components() {
            for (m, c) in p.terms() {
                out.insert((t, m.clone()), c.clone());
            }
        }
        out
    }

    /// Re-expresses the field over a space with more coordinates appended.
    pub fn embed(&self, n: usize, k: usize) -> Self {
        let target = VarSpace::new(n, k);
        let mut out = Self::zero(n, k);
        for (a, p) in self.z.iter().enumerate() {
            out.z[a] = p.embed(target);
        }
        for (j, p) in self.w.iter().enumerate() {
            out.w[j] = p.embed(target);
        }
        out
    }

    /// Renames coordinates: `z_a -> z_{zmap[a]}`, `w_j -> w_{wmap[j]}`.
    pub fn relabel(&self, zmap: &[usize], wmap: &[usize]) -> Self {
        let target = self.space;
        let mut out = Self::zero(target.n, target.k);
        for (a, p) in self.z.iter().enumerate() {
            out.z[zmap[a]] = p.relabel(target, zmap, wmap);
        }
        for (j, p) in self.w.iter().enumerate() {
            out.w[wmap[j]] = p.relabel(target, zmap, wmap);
        }
        out
    }

    pub fn to_json(&self) -> FieldJson {
        let (n, k) = (self.space.n, self.space.k);
        let mut terms = Vec::new();
        for (t, p) in self.components() {
            for (m, c) in p.terms() {
                terms.push(FieldTermJson {
                    target: t.to_string(),
                    coeff: c.clone(),
                    z_exp: (0..n).map(|a| m.exp(self.space.z(a))).collect(),
                    w_exp: (0..k).map(|j| m.exp(self.space.w(j))).collect(),
                });
            }
        }
        FieldJson { n, k, terms }
    }

    pub fn from_json(json: &FieldJson) -> Result<Self> {
        let (n, k) = (json.n, json.k);
        let mut f = Self::zero(n, k);
        for t in &json.terms {
            if t.z_exp.len() != n || t.w_exp.len() != k {
                return Err(Error::Dimension(format!("term exponent lengths must be n={n}, k={k}")));
            }
            let target: Target = t.target.parse()?;
            match target {
                Target::Z(a) if a >= n => return Err(Error::Dimension(format!("target {target} out of range"))),
                Target::W(j) if j >= k => return Err(Error::Dimension(format!("target {target} out of range"))),
                _ => {}
            }
            let mut e = vec![0; f.space.len()];
            for a in 0..n {
                e[f.space.z(a)] = t.z_exp[a];
            }
            for j in 0..k {
                e[f.space.w(j)] = t.w_exp[j];
            }
            let p = Poly::monomial(f.space, e, t.coeff.clone());
            f.add_component(target, &p);
        }
        Ok(f)
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, p) in self.components() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({p})*d/d{t}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FieldTermJson {
    pub target: String,
    pub coeff: GaussianRational,
    pub z_exp: Vec<u32>,
    pub w_exp: Vec<u32>,
}

/// Field JSON: `{ "n", "k", "terms": [ { "target", "coeff", "z_exp", "w_exp" } ] }`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FieldJson {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<FieldTermJson>,
}

pub fn field_bracket(x: &PolyVectorField, y: &PolyVectorField) -> PolyVectorField {
    x.bracket(y)
}

pub fn weighted_degree(x: &PolyVectorField) -> WeightedDegree {
    x.weighted_degree()
}

pub fn ordinary_vanishing_order(x: &PolyVectorField) -> Result<u32> {
    x.ordinary_vanishing_order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gi(a: i64, b: i64) -> GaussianRational {
        GaussianRational::from_ints(a, b)
    }

    #[test]
    fn canonical_commutator() {
        let d = PolyVectorField::d_dz(1, 1, 0);
        let mut x = PolyVectorField::zero(1, 1);
        x.add_component(Target::Z(0), &Poly::z(x.space(), 0));
        assert_eq!(d.bracket(&x), d);
        assert!(x.bracket(&x).is_zero());
    }

    #[test]
    fn weights() {
        assert_eq!(PolyVectorField::euler(2, 3).weighted_degree(), WeightedDegree::Homogeneous(0));
        assert_eq!(PolyVectorField::d_dw(2, 3, 0).weighted_degree(), WeightedDegree::Homogeneous(-2));
        assert_eq!(PolyVectorField::d_dz(2, 3, 1).weighted_degree(), WeightedDegree::Homogeneous(-1));
        let mixed = PolyVectorField::d_dz(2, 3, 1).add(&PolyVectorField::d_dw(2, 3, 0));
        assert_eq!(mixed.weighted_degree(), WeightedDegree::Inhomogeneous);
        assert_eq!(PolyVectorField::zero(1, 1).weighted_degree(), WeightedDegree::Zero);
    }

    #[test]
    fn vanishing_order() {
        assert_eq!(PolyVectorField::d_dz(2, 1, 0).ordinary_vanishing_order().unwrap(), 0);
        assert_eq!(PolyVectorField::euler(2, 1).ordinary_vanishing_order().unwrap(), 1);
        assert!(matches!(PolyVectorField::zero(2, 1).ordinary_vanishing_order(), Err(Error::Undefined(_))));
    }

    #[test]
    fn apply_to_constant_is_zero() {
        let e = PolyVectorField::euler(2, 2);
        assert!(e.apply(&Poly::one(e.space())).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let s = VarSpace::new(2, 1);
        let mut x = PolyVectorField::zero(2, 1);
        x.add_component(Target::Z(1), &(&Poly::z(s, 0) * &Poly::w(s, 0)).scale(&gi(1, -2)));
        x.add_component(Target::W(0), &Poly::w(s, 0).pow(2));
        let json = serde_json::to_string(&x.to_json()).unwrap();
        assert!(json.contains("\"target\":\"z2\""));
        let back: FieldJson = serde_json::from_str(&json).unwrap();
        assert_eq!(PolyVectorField::from_json(&back).unwrap(), x);
    }

    #[test]
    fn rejects_non_holomorphic() {
        let s = VarSpace::new(1, 1);
        assert!(PolyVectorField::from_components(vec![Poly::zb(s, 0)], vec![Poly::zero(s)]).is_err());
    }

    fn arb_field() -> impl Strategy<Value = PolyVectorField> {
        let s = VarSpace::new(2, 1);
        proptest::collection::vec((0usize..3, 0u32..2, 0u32..2, 0u32..2, -2i64..3, -2i64..3), 0..4).prop_map(move |ts| {
            let mut f = PolyVectorField::zero(2, 1);
            for (t, a, b, c, re, im) in ts {
                let mut e = vec![0; s.len()];
                e[s.z(0)] = a;
                e[s.z(1)] = b;
                e[s.w(0)] = c;
                let target = if t < 2 { Target::Z(t) } else { Target::W(0) };
                f.add_component(target, &Poly::monomial(s, e, gi(re, im)));
            }
            f
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn jacobi_and_antisymmetry(x in arb_field(), y in arb_field(), z in arb_field()) {
            let jac = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
            prop_assert!(jac.is_zero());
            prop_assert_eq!(x.bracket(&y), y.bracket(&x).scale(&gi(-1, 0)));
        }
    }
}
