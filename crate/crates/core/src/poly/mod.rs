//! Sparse multivariate polynomials over `Q(i)` in the variables
//! `z_1..z_n, z̄_1..z̄_n, w_1..w_k, w̄_1..w̄_k, u_1..u_k`, with `z̄` and `w̄`
//! treated as independent variables.

mod field;

pub use field::{field_bracket, ordinary_vanishing_order, weighted_degree, FieldJson, FieldTermJson, PolyVectorField, Target, WeightedDegree};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::GaussianRational;

/// Variable layout for `n` CR coordinates and `k` transverse coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VarSpace {
    pub n: usize,
    pub k: usize,
}

impl VarSpace {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, k }
    }

    pub fn len(&self) -> usize {
        2 * self.n + 3 * self.k
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn z(&self, a: usize) -> usize {
        debug_assert!(a < self.n);
        a
    }

    pub fn zb(&self, a: usize) -> usize {
        debug_assert!(a < self.n);
        self.n + a
    }

    pub fn w(&self, j: usize) -> usize {
        debug_assert!(j < self.k);
        2 * self.n + j
    }

    pub fn wb(&self, j: usize) -> usize {
        debug_assert!(j < self.k);
        2 * self.n + self.k + j
    }

    pub fn u(&self, j: usize) -> usize {
        debug_assert!(j < self.k);
        2 * self.n + 2 * self.k + j
    }

    /// Printable name of a variable index (1-based labels).
    pub fn name(&self, v: usize) -> String {
        let (n, k) = (self.n, self.k);
        if v < n {
            format!("z{}", v + 1)
        } else if v < 2 * n {
            format!("zb{}", v - n + 1)
        } else if v < 2 * n + k {
            format!("w{}", v - 2 * n + 1)
        } else if v < 2 * n + 2 * k {
            format!("wb{}", v - 2 * n - k + 1)
        } else {
            format!("u{}", v - 2 * n - 2 * k + 1)
        }
    }

    /// Conjugate partner: `z_a <-> z̄_a`, `w_j <-> w̄_j`, `u_j` fixed.
    pub fn conjugate_var(&self, v: usize) -> usize {
        let (n, k) = (self.n, self.k);
        if v < n {
            v + n
        } else if v < 2 * n {
            v - n
        } else if v < 2 * n + k {
            v + k
        } else if v < 2 * n + 2 * k {
            v - k
        } else {
            v
        }
    }

    /// Whether a variable is one of the holomorphic coordinates `z`, `w`.
    pub fn is_holomorphic_var(&self, v: usize) -> bool {
        v < self.n || (2 * self.n..2 * self.n + self.k).contains(&v)
    }
}

/// Exponent vector with graded order: total degree first, then the exponents
/// compared from the last variable down, so that `z_1 < z_2 < … < u_k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(space: VarSpace) -> Self {
        Self(vec![0; space.len()])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: usize) -> u32 {
        self.0[v]
    }

    fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    space: VarSpace,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Poly {
    pub fn zero(space: VarSpace) -> Self {
        Self { space, terms: BTreeMap::new() }
    }

    pub fn constant(space: VarSpace, c: GaussianRational) -> Self {
        let mut p = Self::zero(space);
        p.add_term(Monomial::one(space), c);
        p
    }

    pub fn one(space: VarSpace) -> Self {
        Self::constant(space, GaussianRational::one())
    }

    pub fn var(space: VarSpace, v: usize) -> Self {
        let mut e = vec![0; space.len()];
        e[v] = 1;
        let mut p = Self::zero(space);
        p.add_term(Monomial(e), GaussianRational::one());
        p
    }

    pub fn z(space: VarSpace, a: usize) -> Self {
        Self::var(space, space.z(a))
    }

    pub fn zb(space: VarSpace, a: usize) -> Self {
        Self::var(space, space.zb(a))
    }

    pub fn w(space: VarSpace, j: usize) -> Self {
        Self::var(space, space.w(j))
    }

    pub fn wb(space: VarSpace, j: usize) -> Self {
        Self::var(space, space.wb(j))
    }

    pub fn u(space: VarSpace, j: usize) -> Self {
        Self::var(space, space.u(j))
    }

    pub fn monomial(space: VarSpace, exps: Vec<u32>, c: GaussianRational) -> Self {
        assert_eq!(exps.len(), space.len());
        let mut p = Self::zero(space);
        p.add_term(Monomial(exps), c);
        p
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (ascending) monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        debug_assert_eq!(m.0.len(), self.space.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_space(&self, other: &Self) {
        assert_eq!(self.space, other.space, "polynomials over different variable spaces");
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.space);
        }
        Self { space: self.space, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn add_scaled(&mut self, c: &GaussianRational, other: &Self) {
        self.check_space(other);
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Minimum total degree over all terms; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut out = Self::zero(self.space);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[v] -= 1;
            out.add_term(Monomial(exps), c.scale(&crate::scalar::rat(i64::from(e))));
        }
        out
    }

    /// Conjugates coefficients and swaps `z <-> z̄`, `w <-> w̄`; fixes `u`.
    pub fn formal_conjugate(&self) -> Self {
        let mut out = Self::zero(self.space);
        for (m, c) in &self.terms {
            let mut exps = vec![0; self.space.len()];
            for (v, &e) in m.0.iter().enumerate() {
                exps[self.space.conjugate_var(v)] = e;
            }
            out.add_term(Monomial(exps), c.conj());
        }
        out
    }

    /// `(p + p̄)/2`.
    pub fn real_part(&self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&GaussianRational::one(), &self.formal_conjugate());
        out.scale(&GaussianRational::real(crate::scalar::ratio(1, 2)))
    }

    pub fn is_real(&self) -> bool {
        *self == self.formal_conjugate()
    }

    /// Only `z` and `w` exponents may be nonzero.
    pub fn is_holomorphic(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.0.iter().enumerate().all(|(v, &e)| e == 0 || self.space.is_holomorphic_var(v)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.space);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces variable `v` by the polynomial `q`.
    pub fn substitute(&self, v: usize, q: &Poly) -> Self {
        self.check_space(q);
        let mut powers: HashMap<u32, Poly> = HashMap::new();
        let mut out = Self::zero(self.space);
        for (m, c) in &self.terms {
            let e = m.0[v];
            let mut rest = m.0.clone();
            rest[v] = 0;
            let base = Poly::monomial(self.space, rest, c.clone());
            if e == 0 {
                out.add_scaled(&GaussianRational::one(), &base);
                continue;
            }
            let qe = powers.entry(e).or_insert_with(|| q.pow(e));
            out.add_scaled(&GaussianRational::one(), &(&base * &*qe));
        }
        out
    }

    /// Exact evaluation at a point given for every variable of the space.
    pub fn evaluate(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.space.len());
        let mut total = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &point[v];
                }
            }
            total += &t;
        }
        total
    }

    /// Re-expresses the polynomial in a larger space, keeping `z_a`, `w_j`, … at
    /// the same indices.
    pub fn embed(&self, target: VarSpace) -> Self {
        assert!(target.n >= self.space.n && target.k >= self.space.k);
        let s = self.space;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for a in 0..s.n {
                e[target.z(a)] = m.0[s.z(a)];
                e[target.zb(a)] = m.0[s.zb(a)];
            }
            for j in 0..s.k {
                e[target.w(j)] = m.0[s.w(j)];
                e[target.wb(j)] = m.0[s.wb(j)];
                e[target.u(j)] = m.0[s.u(j)];
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Renames variables: `z_a -> z_{zmap[a]}`, `w_j -> w_{wmap[j]}` (conjugates
    /// and `u` follow their partners).
    pub fn relabel(&self, target: VarSpace, zmap: &[usize], wmap: &[usize]) -> Self {
        let s = self.space;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for a in 0..s.n {
                e[target.z(zmap[a])] += m.0[s.z(a)];
                e[target.zb(zmap[a])] += m.0[s.zb(a)];
            }
            for j in 0..s.k {
                e[target.w(wmap[j])] += m.0[s.w(j)];
                e[target.wb(wmap[j])] += m.0[s.wb(j)];
                e[target.u(wmap[j])] += m.0[s.u(j)];
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Hermitian form `z H z* = Σ z_a H_ab z̄_b`.
    pub fn hermitian_form(space: VarSpace, h: &crate::linalg::ExactMatrix) -> Self {
        let mut out = Self::zero(space);
        for a in 0..space.n {
            for b in 0..space.n {
                let c = &h[(a, b)];
                if c.is_zero() {
                    continue;
                }
                let mut e = vec![0; space.len()];
                e[space.z(a)] += 1;
                e[space.zb(b)] += 1;
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", self.space.name(v))?,
                    _ => write!(f, "*{}^{}", self.space.name(v), e)?,
                }
            }
        }
        Ok(())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(&GaussianRational::one(), o);
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(&-GaussianRational::one(), o);
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.check_space(o);
        let mut out = Poly::zero(self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-GaussianRational::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

pub fn formal_conjugate(p: &Poly) -> Poly {
    p.formal_conjugate()
}
