//! Tanaka prolongation of `m ⊕ g_0` computed degree by degree as exact kernels
//! of Leibniz-rule systems.
//!
//! An element `f` of degree `i >= 0` is stored through its action on `m`:
//! `[f, X_a] ∈ g_{i-1}` for the basis `X_a` of `g_{-1}` and `[f, W_j] ∈ g_{i-2}`
//! for the basis `W_j` of `g_{-2}`. Only the `g_{-1}` part is solved for; the
//! `g_{-2}` part follows from a fixed expression of each `W_j` as a combination
//! of brackets `[X_p, X_q]`.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{solve_columns, Echelon, ExactMatrix, SparseVec};
use crate::model::{build_levi_tanaka, LeviTanakaAlgebra, QuadricModel};
use crate::scalar::{format_rational, rat, GaussianRational, Rational};

type Vector = SparseVec<Rational>;

pub const DEFAULT_DEGREE_CAP: usize = 12;

/// Basis element of `m` an element of nonnegative degree can act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum MBasis {
    X(usize),
    W(usize),
}

/// One graded piece `g_i`, `i >= 0`.
#[derive(Clone, Debug)]
struct Component {
    dim: usize,
    /// `phi[t][a]`: coordinates of `[f_t, X_a]` in `g_{i-1}`.
    phi: Vec<Vec<Vector>>,
    /// `psi[t][j]`: coordinates of `[f_t, W_j]` in `g_{i-2}`.
    psi: Vec<Vec<Vector>>,
    /// Position in the flattened unknown vector that carries each coordinate.
    coord_cols: Vec<usize>,
}

/// Derivation of `m` of degree 0 as a pair of matrices (columns are images).
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub phi: ExactMatrix<Rational>,
    pub psi: ExactMatrix<Rational>,
}

/// `m ⊕ g_0 ⊕ … ⊕ g_i` under construction.
#[derive(Clone, Debug)]
pub struct Prolongation {
    lt: LeviTanakaAlgebra,
    /// `W_j = Σ c [X_p, X_q]` over `(p, q, c)`.
    preimage: Vec<Vec<(usize, usize, Rational)>>,
    comps: Vec<Component>,
}

impl Prolongation {
    /// Starts from the Levi–Tanaka algebra and computes `g_0`.
    pub fn new(lt: &LeviTanakaAlgebra) -> Result<Self> {
        let preimage = bracket_preimages(lt)?;
        let mut p = Self { lt: lt.clone(), preimage, comps: Vec::new() };
        p.prolong_step(0)?;
        Ok(p)
    }

    pub fn levi_tanaka(&self) -> &LeviTanakaAlgebra {
        &self.lt
    }

    /// Highest degree computed so far.
    pub fn computed_degree(&self) -> i32 {
        self.comps.len() as i32 - 1
    }

    pub fn dim(&self, deg: i32) -> usize {
        match deg {
            -2 => self.lt.dim_gm2(),
            -1 => self.lt.dim_gm1(),
            d if d >= 0 && (d as usize) < self.comps.len() => self.comps[d as usize].dim,
            _ => 0,
        }
    }

    /// Basis of `g_0` as derivations of `m`.
    pub fn g0_basis(&self) -> Vec<Derivation> {
        let (d1, d2) = (self.lt.dim_gm1(), self.lt.dim_gm2());
        let c = &self.comps[0];
        (0..c.dim)
            .map(|t| Derivation {
                phi: ExactMatrix::from_fn(d1, d1, |r, a| c.phi[t][a].get_or_zero(r)),
                psi: ExactMatrix::from_fn(d2, d2, |r, j| c.psi[t][j].get_or_zero(r)),
            })
            .collect()
    }

    /// Action of an element of degree `deg` (coordinates `elem`) on a basis
    /// vector of `m`; lands in degree `deg - 1` or `deg - 2`.
    fn act(&self, deg: i32, elem: &Vector, z: MBasis) -> Vector {
        if deg >= 0 {
            let c = &self.comps[deg as usize];
            let mut out = Vector::new();
            for (t, v) in elem.iter() {
                let img = match z {
                    MBasis::X(a) => &c.phi[t][a],
                    MBasis::W(j) => &c.psi[t][j],
                };
                out = out.add_scaled(v, img);
            }
            out
        } else if deg == -1 {
            match z {
                MBasis::X(b) => {
                    let mut out = Vector::new();
                    for (a, v) in elem.iter() {
                        out = out.add_scaled(v, &Vector::from_dense(self.lt.basis_bracket(a, b)));
                    }
                    out
                }
                MBasis::W(_) => Vector::new(),
            }
        } else {
            Vector::new()
        }
    }

    fn psi_from_phi(&self, i: i32, phi: &[Vector]) -> Vec<Vector> {
        self.preimage
            .iter()
            .map(|terms| {
                let mut out = Vector::new();
                for (p, q, c) in terms {
                    let v = self.act(i - 1, &phi[*p], MBasis::X(*q)).sub(&self.act(i - 1, &phi[*q], MBasis::X(*p)));
                    out = out.add_scaled(c, &v);
                }
                out
            })
            .collect()
    }

    /// Stacked residuals of every Leibniz constraint for a candidate `phi`.
    fn residual(&self, i: i32, phi: &[Vector]) -> Vector {
        let (d1, d2) = (self.lt.dim_gm1(), self.lt.dim_gm2());
        let psi = self.psi_from_phi(i, phi);
        let mut out = Vector::new();
        let mut offset = 0;
        let mut push = |out: &mut Vector, block: Vector, size: usize| {
            if !block.is_zero() {
                *out = out.add(&block.shifted(offset));
            }
            offset += size;
        };

        if i == 0 {
            // f J = J f on g_{-1}
            for a in 0..d1 {
                let mut fja = Vector::new();
                for (c, v) in Vector::from_dense(&self.lt.j_col(a)).iter() {
                    fja = fja.add_scaled(v, &phi[c]);
                }
                let block = fja.sub(&self.lt.apply_j(&phi[a]));
                push(&mut out, block, d1);
            }
        }

        let size_a = self.dim(i - 2);
        let size_b = self.dim(i - 3);
        let size_c = self.dim(i - 4);
        for a in 0..d1 {
            for b in a + 1..d1 {
                // ψ([X_a, X_b]) = [φX_a, X_b] − [φX_b, X_a]
                let mut lhs = Vector::new();
                for (j, c) in self.lt.basis_bracket(a, b).iter().enumerate() {
                    if !c.is_zero() {
                        lhs = lhs.add_scaled(c, &psi[j]);
                    }
                }
                let rhs = self.act(i - 1, &phi[a], MBasis::X(b)).sub(&self.act(i - 1, &phi[b], MBasis::X(a)));
                push(&mut out, lhs.sub(&rhs), size_a);
            }
        }
        for a in 0..d1 {
            for j in 0..d2 {
                // 0 = [φX_a, W_j] − [ψW_j, X_a]
                let block = self.act(i - 1, &phi[a], MBasis::W(j)).sub(&self.act(i - 2, &psi[j], MBasis::X(a)));
                push(&mut out, block, size_b);
            }
        }
        for j in 0..d2 {
            for l in j + 1..d2 {
                // 0 = [ψW_j, W_l] − [ψW_l, W_j]
                let block = self.act(i - 2, &psi[j], MBasis::W(l)).sub(&self.act(i - 2, &psi[l], MBasis::W(j)));
                push(&mut out, block, size_c);
            }
        }
        out
    }

    fn unflatten(&self, i: i32, v: &Vector) -> Vec<Vector> {
        let d1 = self.lt.dim_gm1();
        let width = self.dim(i - 1);
        let mut parts: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); d1];
        for (u, x) in v.iter() {
            parts[u / width].push((u % width, x.clone()));
        }
        parts.into_iter().map(Vector::from_pairs).collect()
    }

    fn flatten(&self, i: i32, phi: &[Vector]) -> Vector {
        let width = self.dim(i - 1);
        let mut out = Vector::new();
        for (a, v) in phi.iter().enumerate() {
            out = out.add(&v.shifted(a * width));
        }
        out
    }

    /// Computes `g_i` (`g_0` when `i = 0`) from the degrees below it.
    pub fn prolong_step(&mut self, i: usize) -> Result<usize> {
        if i != self.comps.len() {
            return Err(Error::Sequencing(format!(
                "degree {i} requested but degrees up to {} are computed",
                self.computed_degree()
            )));
        }
        let deg = i as i32;
        let d1 = self.lt.dim_gm1();
        let width = self.dim(deg - 1);
        let unknowns = d1 * width;

        let columns: Vec<Vector> = (0..unknowns)
            .into_par_iter()
            .map(|u| {
                let mut phi = vec![Vector::new(); d1];
                phi[u / width] = Vector::unit(u % width);
                self.residual(deg, &phi)
            })
            .collect();
        let mut rows: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
        for (u, col) in columns.iter().enumerate() {
            for (r, v) in col.iter() {
                rows.entry(r).or_default().push((u, v.clone()));
            }
        }
        let mut keys: Vec<usize> = rows.keys().copied().collect();
        keys.sort_unstable();
        let mut ech = Echelon::new(unknowns);
        for r in keys {
            ech.insert(&Vector::from_pairs(rows.remove(&r).unwrap()));
            if ech.is_full() {
                break;
            }
        }
        let kernel = ech.kernel_basis();
        let free = ech.free_columns();

        let mut comp = Component { dim: kernel.len(), phi: Vec::new(), psi: Vec::new(), coord_cols: Vec::new() };
        for v in &kernel {
            let phi = self.unflatten(deg, v);
            let psi = self.psi_from_phi(deg, &phi);
            if phi.iter().all(Vector::is_zero) && psi.iter().any(|p| !p.is_zero()) {
                return Err(Error::Internal(format!("degree {i} element with zero g_-1 action")));
            }
            comp.phi.push(phi);
            comp.psi.push(psi);
        }
        // each kernel vector carries a 1 at its own free column and 0 at the others
        comp.coord_cols = free;
        let dim = comp.dim;
        self.comps.push(comp);
        Ok(dim)
    }

    /// Coordinates of an element of degree `i` given by its full `g_{-1}` action,
    /// or an internal error when it is not in `g_i`.
    fn coordinates(&self, i: i32, phi: &[Vector], psi: &[Vector]) -> Result<Vector> {
        let comp = &self.comps[i as usize];
        let flat = self.flatten(i, phi);
        let coords = Vector::from_pairs(comp.coord_cols.iter().enumerate().map(|(t, &c)| (t, flat.get_or_zero(c))));
        let mut rphi = vec![Vector::new(); phi.len()];
        let mut rpsi = vec![Vector::new(); psi.len()];
        for (t, x) in coords.iter() {
            for (a, v) in comp.phi[t].iter().enumerate() {
                rphi[a] = rphi[a].add_scaled(x, v);
            }
            for (j, v) in comp.psi[t].iter().enumerate() {
                rpsi[j] = rpsi[j].add_scaled(x, v);
            }
        }
        if rphi != phi || rpsi != psi {
            return Err(Error::Internal(format!("bracket does not close in g_{i}")));
        }
        Ok(coords)
    }
}

/// Expresses each basis vector `W_j` of `g_{-2}` through brackets of `g_{-1}`.
fn bracket_preimages(lt: &LeviTanakaAlgebra) -> Result<Vec<Vec<(usize, usize, Rational)>>> {
    let (d1, k) = (lt.dim_gm1(), lt.dim_gm2());
    let mut chosen = Vec::new();
    let mut ech = Echelon::new(k);
    for a in 0..d1 {
        for b in a + 1..d1 {
            let v = Vector::from_dense(lt.basis_bracket(a, b));
            if ech.insert(&v) {
                chosen.push((a, b, v));
            }
        }
    }
    if ech.rank() != k {
        return Err(Error::Algebra("[g_-1, g_-1] does not span g_-2".into()));
    }
    let cols: Vec<Vector> = chosen.iter().map(|(_, _, v)| v.clone()).collect();
    (0..k)
        .map(|j| {
            let x = solve_columns(k, &cols, &Vector::unit(j))
                .ok_or_else(|| Error::Internal("preimage solve failed".into()))?;
            Ok(chosen
                .iter()
                .zip(x)
                .filter(|(_, c)| !c.is_zero())
                .map(|((a, b, _), c)| (*a, *b, c))
                .collect())
        })
        .collect()
}

/// Basis of `g_0`: pairs `(φ, ψ)` with `φJ = Jφ` and `ψ[X,Y] = [φX,Y] + [X,φY]`.
pub fn compute_g0(a: &LeviTanakaAlgebra) -> Result<Vec<Derivation>> {
    Ok(Prolongation::new(a)?.g0_basis())
}

/// `floor((b + 2) / 2)`.
pub fn jet_order(top_degree: usize) -> usize {
    (top_degree + 2) / 2
}

/// Finite-dimensional graded Lie algebra `g_{-2} ⊕ … ⊕ g_b` with exact
/// structure constants in a global basis ordered by degree.
#[derive(Clone, Debug)]
pub struct GradedLieAlgebra {
    n: usize,
    k: usize,
    /// dims of degrees `-2..=b`
    dims: Vec<usize>,
    offsets: Vec<usize>,
    /// `table[α][β]` = `[e_α, e_β]`
    table: Vec<Vec<Vector>>,
    /// coordinates of the grading element `(id, 2 id)` in the global basis
    grading: Vector,
}

impl GradedLieAlgebra {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn top_degree(&self) -> i32 {
        self.dims.len() as i32 - 3
    }

    pub fn dim(&self, deg: i32) -> usize {
        let idx = deg + 2;
        if idx < 0 || idx as usize >= self.dims.len() {
            0
        } else {
            self.dims[idx as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Global index range of degree `deg`.
    pub fn range(&self, deg: i32) -> std::ops::Range<usize> {
        let idx = (deg + 2) as usize;
        self.offsets[idx]..self.offsets[idx] + self.dims[idx]
    }

    pub fn degree_of(&self, g: usize) -> i32 {
        let idx = self.offsets.partition_point(|&o| o <= g) - 1;
        idx as i32 - 2
    }

    pub fn basis_bracket(&self, a: usize, b: usize) -> &Vector {
        &self.table[a][b]
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (a, xa) in x.iter() {
            for (b, yb) in y.iter() {
                out = out.add_scaled(&(xa.clone() * yb.clone()), &self.table[a][b]);
            }
        }
        out
    }

    pub fn grading_element(&self) -> &Vector {
        &self.grading
    }

    /// Every basis triple; returns the first violation.
    pub fn check_jacobi(&self) -> Result<()> {
        let d = self.total_dim();
        let bad = (0..d).into_par_iter().find_map_any(|a| {
            for b in a + 1..d {
                for c in b + 1..d {
                    let t1 = self.bracket(&self.table[a][b], &Vector::unit(c));
                    let t2 = self.bracket(&self.table[b][c], &Vector::unit(a));
                    let t3 = self.bracket(&self.table[c][a], &Vector::unit(b));
                    if !t1.add(&t2).add(&t3).is_zero() {
                        return Some((a, b, c));
                    }
                }
            }
            None
        });
        match bad {
            Some((a, b, c)) => Err(Error::Internal(format!("Jacobi identity fails on basis triple ({a}, {b}, {c})"))),
            None => Ok(()),
        }
    }

    pub fn check_antisymmetry(&self) -> Result<()> {
        let d = self.total_dim();
        for a in 0..d {
            for b in 0..d {
                if self.table[a][b] != self.table[b][a].neg() {
                    return Err(Error::Internal(format!("bracket not antisymmetric at ({a}, {b})")));
                }
            }
        }
        Ok(())
    }

    /// `[e_α, e_β]` lies in degree `deg α + deg β`.
    pub fn check_grading(&self) -> Result<()> {
        let d = self.total_dim();
        for a in 0..d {
            for b in 0..d {
                let target = self.degree_of(a) + self.degree_of(b);
                if let Some(g) = self.table[a][b].iter().map(|(g, _)| g).find(|&g| self.degree_of(g) != target) {
                    return Err(Error::Internal(format!("[{a}, {b}] has a component {g} outside degree {target}")));
                }
            }
        }
        Ok(())
    }

    /// `[f, E] = deg(f)·f` for every basis element.
    pub fn check_grading_element(&self) -> Result<()> {
        for g in 0..self.total_dim() {
            let lhs = self.bracket(&Vector::unit(g), &self.grading);
            let rhs = Vector::unit(g).scaled(&rat(i64::from(self.degree_of(g))));
            if lhs != rhs {
                return Err(Error::Internal(format!("grading element does not act on basis element {g} by its degree")));
            }
        }
        Ok(())
    }

    /// Positive-degree elements with `[f, g_{-1}] = 0` must vanish.
    pub fn check_nondegenerate(&self) -> Result<()> {
        for deg in 0..=self.top_degree() {
            let cols = self.range(-1).len();
            for g in self.range(deg) {
                if self.range(-1).all(|x| self.table[g][x].is_zero()) && cols > 0 {
                    return Err(Error::Internal(format!("basis element {g} of degree {deg} annihilates g_-1")));
                }
            }
        }
        Ok(())
    }

    /// Structure constants as `[α, β, γ, "coeff"]` with `α < β`.
    pub fn structure_constant_entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let d = self.total_dim();
        let mut out = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                for (c, v) in self.table[a][b].iter() {
                    out.push((a, b, c, v.clone()));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct ProlongationResult {
    pub algebra: GradedLieAlgebra,
    /// `(degree, dimension)` for `-2..=top_degree`.
    pub dims: Vec<(i32, usize)>,
    pub top_degree: usize,
    pub jet_order: usize,
    pub terminated: bool,
}

impl ProlongationResult {
    pub fn dim(&self, deg: i32) -> usize {
        self.algebra.dim(deg)
    }

    pub fn dims_vec(&self) -> Vec<usize> {
        self.dims.iter().map(|&(_, d)| d).collect()
    }
}

/// Iterates [`Prolongation::prolong_step`] until a zero degree or `cap`, then
/// fills every structure constant and checks closure.
pub fn prolong_full(m: &QuadricModel, cap: usize) -> Result<ProlongationResult> {
    let lt = build_levi_tanaka(m)?;
    prolong_algebra(&lt, cap)
}

pub fn prolong_algebra(lt: &LeviTanakaAlgebra, cap: usize) -> Result<ProlongationResult> {
    let mut p = Prolongation::new(lt)?;
    let mut terminated = false;
    for i in 1..=cap {
        if p.prolong_step(i)? == 0 {
            terminated = true;
            break;
        }
    }
    if !terminated {
        return Err(Error::Nontermination(cap));
    }
    let zero_deg = p.computed_degree() as usize;
    // m is generated by g_-1, so one zero degree forces all higher ones to vanish
    if zero_deg < cap && p.prolong_step(zero_deg + 1)? != 0 {
        return Err(Error::Internal(format!("g_{} vanishes but g_{} does not", zero_deg, zero_deg + 1)));
    }
    let top = zero_deg - 1;
    p.comps.truncate(top + 1);
    let algebra = assemble(&p)?;
    let dims = (-2..=top as i32).map(|d| (d, algebra.dim(d))).collect();
    Ok(ProlongationResult { algebra, dims, top_degree: top, jet_order: jet_order(top), terminated })
}

/// Fills the full structure-constant table from the stored actions on `m`.
fn assemble(p: &Prolongation) -> Result<GradedLieAlgebra> {
    let top = p.computed_degree();
    let lt = &p.lt;
    let (d1, d2) = (lt.dim_gm1(), lt.dim_gm2());

    // brackets between nonnegative degrees, by increasing total degree
    let mut nn: HashMap<(i32, i32), Vec<Vec<Vector>>> = HashMap::new();

    // bracket of coordinate vectors `u ∈ g_i`, `v ∈ g_j` (any degrees)
    fn general(
        p: &Prolongation,
        nn: &HashMap<(i32, i32), Vec<Vec<Vector>>>,
        i: i32,
        u: &Vector,
        j: i32,
        v: &Vector,
    ) -> Vector {
        let top = p.computed_degree();
        if i + j > top || i + j < -2 || u.is_zero() || v.is_zero() {
            return Vector::new();
        }
        match (i >= 0, j >= 0) {
            (false, false) => {
                if i == -1 && j == -1 {
                    let mut out = Vector::new();
                    for (a, x) in u.iter() {
                        for (b, y) in v.iter() {
                            out = out.add_scaled(&(x.clone() * y.clone()), &Vector::from_dense(p.lt.basis_bracket(a, b)));
                        }
                    }
                    out
                } else {
                    Vector::new()
                }
            }
            (true, false) => {
                let mut out = Vector::new();
                for (s, y) in v.iter() {
                    let z = if j == -1 { MBasis::X(s) } else { MBasis::W(s) };
                    out = out.add_scaled(y, &p.act(i, u, z));
                }
                out
            }
            (false, true) => general(p, nn, j, v, i, u).neg(),
            (true, true) => {
                let table = &nn[&(i, j)];
                let mut out = Vector::new();
                for (s, x) in u.iter() {
                    for (t, y) in v.iter() {
                        out = out.add_scaled(&(x.clone() * y.clone()), &table[s][t]);
                    }
                }
                out
            }
        }
    }

    for total in 0..=2 * top {
        let pairs: Vec<(i32, i32)> = (0..=total).map(|i| (i, total - i)).filter(|&(i, j)| i <= top && j <= top).collect();
        for (i, j) in pairs {
            let (ci, cj) = (&p.comps[i as usize], &p.comps[j as usize]);
            let nn_ref = &nn;
            let table: Result<Vec<Vec<Vector>>> = (0..ci.dim)
                .into_par_iter()
                .map(|s| {
                    (0..cj.dim)
                        .map(|t| {
                            let es = Vector::unit(s);
                            let et = Vector::unit(t);
                            // [f_s, f_t](Z) = [f_s, f_t(Z)] − [f_t, f_s(Z)]
                            let phi: Vec<Vector> = (0..d1)
                                .map(|a| {
                                    general(p, nn_ref, i, &es, j - 1, &cj.phi[t][a])
                                        .sub(&general(p, nn_ref, j, &et, i - 1, &ci.phi[s][a]))
                                })
                                .collect();
                            let psi: Vec<Vector> = (0..d2)
                                .map(|l| {
                                    general(p, nn_ref, i, &es, j - 2, &cj.psi[t][l])
                                        .sub(&general(p, nn_ref, j, &et, i - 2, &ci.psi[s][l]))
                                })
                                .collect();
                            if total > top {
                                if phi.iter().chain(&psi).any(|v| !v.is_zero()) {
                                    return Err(Error::Internal(format!(
                                        "[g_{i}, g_{j}] is nonzero above the top degree {top}"
                                    )));
                                }
                                Ok(Vector::new())
                            } else {
                                p.coordinates(total, &phi, &psi)
                            }
                        })
                        .collect()
                })
                .collect();
            nn.insert((i, j), table?);
        }
    }

    let mut dims = vec![d2, d1];
    dims.extend(p.comps.iter().map(|c| c.dim));
    let mut offsets = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for d in &dims {
        offsets.push(acc);
        acc += d;
    }
    let total_dim = acc;
    let locate = |g: usize| -> (i32, usize) {
        let idx = offsets.partition_point(|&o| o <= g) - 1;
        (idx as i32 - 2, g - offsets[idx])
    };
    let table: Vec<Vec<Vector>> = (0..total_dim)
        .into_par_iter()
        .map(|a| {
            let (da, la) = locate(a);
            (0..total_dim)
                .map(|b| {
                    let (db, lb) = locate(b);
                    let v = general(p, &nn, da, &Vector::unit(la), db, &Vector::unit(lb));
                    let target = da + db;
                    if v.is_zero() {
                        v
                    } else {
                        v.shifted(offsets[(target + 2) as usize])
                    }
                })
                .collect()
        })
        .collect();

    // grading element: φ = id on g_-1
    let id_phi: Vec<Vector> = (0..d1).map(Vector::unit).collect();
    let id_psi: Vec<Vector> = p.psi_from_phi(0, &id_phi);
    if id_psi != (0..d2).map(|j| Vector::unit(j).scaled(&rat(2))).collect::<Vec<_>>() {
        return Err(Error::Internal("grading element does not act as 2 id on g_-2".into()));
    }
    let grading = p.coordinates(0, &id_phi, &id_psi)?.shifted(offsets[2]);

    Ok(GradedLieAlgebra { n: lt.n(), k: lt.k(), dims, offsets, table, grading })
}

/// ProlongationResult JSON.
#[derive(Clone, Debug)]
pub struct ProlongationJson<'a>(pub &'a ProlongationResult);

struct Dims<'a>(&'a [(i32, usize)]);

impl Serialize for Dims<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (d, n) in self.0 {
            m.serialize_entry(&d.to_string(), n)?;
        }
        m.end()
    }
}

struct Constants<'a>(&'a GradedLieAlgebra);

impl Serialize for Constants<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self.0.structure_constant_entries();
        let mut seq = s.serialize_seq(Some(entries.len()))?;
        for (a, b, c, v) in entries {
            seq.serialize_element(&(a, b, c, GaussianRational::real(v)))?;
        }
        seq.end()
    }
}

impl Serialize for ProlongationJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = self.0;
        let degrees: Vec<i32> = (0..r.algebra.total_dim()).map(|g| r.algebra.degree_of(g)).collect();
        let grading: Vec<(usize, String)> = r.algebra.grading.iter().map(|(g, v)| (g, format_rational(v))).collect();
        let mut m = s.serialize_map(Some(7))?;
        m.serialize_entry("dims", &Dims(&r.dims))?;
        m.serialize_entry("top_degree", &r.top_degree)?;
        m.serialize_entry("jet_order", &r.jet_order)?;
        m.serialize_entry("basis_degrees", &degrees)?;
        m.serialize_entry("grading_element", &grading)?;
        m.serialize_entry("structure_constants", &Constants(&r.algebra))?;
        m.serialize_entry("terminated", &r.terminated)?;
        m.end()
    }
}

impl ProlongationResult {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ProlongationJson(self)).expect("result serializes")
    }
}
