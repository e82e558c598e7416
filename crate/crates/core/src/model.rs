//! Quadric models `Im w_j = z H_j z*`, their nondegeneracy checks, and the
//! Levi–Tanaka algebra `g_{-2} ⊕ g_{-1}` with complex structure `J`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, SparseVec};
use crate::scalar::{format_rational, rat, ratio, GaussianRational, Rational};

#[derive(Clone, PartialEq, Debug)]
pub struct QuadricModel {
    n: usize,
    k: usize,
    h: Vec<ExactMatrix>,
}

/// Model JSON: `{ "n", "k", "hermitian": [k matrices n×n of "(re)+(im)i"] }`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ModelJson {
    pub n: usize,
    pub k: usize,
    pub hermitian: Vec<Vec<Vec<GaussianRational>>>,
}

impl QuadricModel {
    /// Checks shapes only; Hermitian symmetry is reported by [`validate`].
    pub fn new(n: usize, k: usize, h: Vec<ExactMatrix>) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::Dimension("need n >= 1 and k >= 1".into()));
        }
        if h.len() != k {
            return Err(Error::Dimension(format!("expected {k} matrices, got {}", h.len())));
        }
        for (j, m) in h.iter().enumerate() {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::Dimension(format!(
                    "H{} is {}x{}, expected {n}x{n}",
                    j + 1,
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(Self { n, k, h })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.h
    }

    pub fn matrix(&self, j: usize) -> &ExactMatrix {
        &self.h[j]
    }

    pub fn to_json(&self) -> ModelJson {
        ModelJson { n: self.n, k: self.k, hermitian: self.h.iter().map(ExactMatrix::to_rows).collect() }
    }

    pub fn from_json(json: &ModelJson) -> Result<Self> {
        let h = json
            .hermitian
            .iter()
            .map(|rows| {
                if rows.is_empty() {
                    return Err(Error::Dimension("empty matrix".into()));
                }
                ExactMatrix::from_rows(rows.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.n, json.k, h)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("model serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str::<ModelJson>(s)?)
    }

    /// Reorders equations: new equation `j` is old equation `perm[j]`.
    pub fn permute_equations(&self, perm: &[usize]) -> Self {
        Self { n: self.n, k: self.k, h: perm.iter().map(|&j| self.h[j].clone()).collect() }
    }

    /// `Σ c_j H_j`.
    pub fn combination(&self, c: &[GaussianRational]) -> ExactMatrix {
        let mut acc = ExactMatrix::zeros(self.n, self.n);
        for (cj, h) in c.iter().zip(&self.h) {
            if !cj.is_zero() {
                acc = acc.add(&h.scale(cj)).expect("same shape");
            }
        }
        acc
    }

    /// `z H_j z*` for a concrete vector.
    pub fn levi_value(&self, j: usize, z: &[GaussianRational]) -> GaussianRational {
        let h = &self.h[j];
        let mut total = GaussianRational::zero();
        for a in 0..self.n {
            for b in 0..self.n {
                if !h[(a, b)].is_zero() {
                    total += &(&(&z[a] * &h[(a, b)]) * &z[b].conj());
                }
            }
        }
        total
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub enum IsotropyStatus {
    /// Some nonzero `z` has `z H_j z* = 0` for all `j`.
    Isotropic,
    /// A definite combination `Σ c_j H_j` exists, so no such `z`.
    Anisotropic,
    Undetermined,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct IsotropyCheck {
    pub status: IsotropyStatus,
    pub isotropic_vector: Option<Vec<GaussianRational>>,
    pub definite_combination: Option<Vec<i64>>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub n: usize,
    pub k: usize,
    pub hermitian: Vec<bool>,
    pub linearly_independent: bool,
    /// Real coefficients of a vanishing combination when dependent.
    pub dependency: Option<Vec<String>>,
    pub common_kernel_trivial: bool,
    pub kernel_vector: Option<Vec<GaussianRational>>,
    /// Informational only; never gates `passed`.
    pub isotropy: Option<IsotropyCheck>,
    pub tumanov: Option<Vec<i64>>,
    pub tumanov_determinant: Option<GaussianRational>,
    pub passed: bool,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn all_hermitian(&self) -> bool {
        self.hermitian.iter().all(|&b| b)
    }
}

/// Hermitian symmetry, real linear independence and trivial common kernel.
pub fn validate(m: &QuadricModel) -> ValidationReport {
    let (n, k) = (m.n, m.k);
    let hermitian: Vec<bool> = m.h.iter().map(ExactMatrix::is_hermitian).collect();
    let mut notes = Vec::new();
    for (j, ok) in hermitian.iter().enumerate() {
        if !ok {
            notes.push(format!("matrix H{} is not Hermitian", j + 1));
        }
    }

    // real independence: columns are the 2n^2 real coordinates of each H_j
    let real = ExactMatrix::<Rational>::from_fn(2 * n * n, k, |r, j| {
        let (entry, part) = (r / 2, r % 2);
        let v = &m.h[j][(entry / n, entry % n)];
        if part == 0 {
            v.re.clone()
        } else {
            v.im.clone()
        }
    });
    let deps = real.nullspace();
    let linearly_independent = deps.is_empty();
    let dependency = deps.first().map(|d| d.iter().map(format_rational).collect());
    if !linearly_independent {
        notes.push("the Hermitian matrices are linearly dependent over R".into());
    }

    let stacked = ExactMatrix::from_fn(k * n, n, |r, c| m.h[r / n][(r % n, c)].clone());
    let kernel = stacked.nullspace();
    let common_kernel_trivial = kernel.is_empty();
    let kernel_vector = kernel.into_iter().next();
    if !common_kernel_trivial {
        notes.push("the Hermitian matrices have a common kernel vector".into());
    }

    let all_hermitian = hermitian.iter().all(|&b| b);
    let (tumanov, tumanov_determinant, isotropy) = if all_hermitian {
        let t = tumanov_search(m, 2);
        let det = t.as_ref().map(|c| {
            let cg: Vec<GaussianRational> = c.iter().map(|&x| GaussianRational::from(x)).collect();
            m.combination(&cg).determinant().expect("square")
        });
        let iso = isotropy_check(m, 1);
        if iso.status == IsotropyStatus::Isotropic && common_kernel_trivial {
            notes.push(
                "common kernel is trivial but a nonzero z with z H_j z* = 0 for all j exists; \
                 only the kernel condition is enforced"
                    .into(),
            );
        }
        (t, det, Some(iso))
    } else {
        (None, None, None)
    };

    let passed = all_hermitian && linearly_independent && common_kernel_trivial;
    ValidationReport {
        n,
        k,
        hermitian,
        linearly_independent,
        dependency,
        common_kernel_trivial,
        kernel_vector,
        isotropy,
        tumanov,
        tumanov_determinant,
        passed,
        notes,
    }
}

/// Integer vectors with entries in `[-bound, bound]`, by increasing L1 norm;
/// within a norm, lexicographic in the digit order `0, 1, -1, 2, -2, …`.
fn small_vectors(len: usize, bound: i64, max_norm: Option<i64>) -> impl Iterator<Item = Vec<i64>> {
    let top = max_norm.unwrap_or(bound * len as i64);
    (1..=top).flat_map(move |norm| {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        fill(len, bound, norm, &mut cur, &mut out);
        out
    })
}

fn fill(len: usize, bound: i64, remaining: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if cur.len() == len {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let slots = (len - cur.len()) as i64;
    if remaining > slots * bound {
        return;
    }
    let mut digits = vec![0];
    for d in 1..=bound.min(remaining) {
        digits.push(d);
        digits.push(-d);
    }
    for d in digits {
        cur.push(d);
        fill(len, bound, remaining - d.abs(), cur, out);
        cur.pop();
    }
}

/// Searches `c ∈ Z^k`, `|c_j| <= bound`, with `det Σ c_j H_j ≠ 0`.
pub fn tumanov_search(m: &QuadricModel, bound: i64) -> Option<Vec<i64>> {
    if bound <= 0 {
        return None;
    }
    small_vectors(m.k, bound, None).find(|c| {
        let cg: Vec<GaussianRational> = c.iter().map(|&x| GaussianRational::from(x)).collect();
        !m.combination(&cg).determinant().expect("square").is_zero()
    })
}

fn leading_minors_sign(h: &ExactMatrix) -> Option<bool> {
    // Sylvester: all leading minors > 0 (positive definite) or alternating
    // starting negative (negative definite)
    let n = h.nrows();
    let mut pos = true;
    let mut neg = true;
    for s in 1..=n {
        let minor = ExactMatrix::from_fn(s, s, |i, j| h[(i, j)].clone()).determinant().expect("square");
        let d = minor.re;
        if !d.is_positive() {
            pos = false;
        }
        let want_neg = s % 2 == 1;
        if (want_neg && !d.is_negative()) || (!want_neg && !d.is_positive()) {
            neg = false;
        }
        if !pos && !neg {
            return None;
        }
    }
    Some(pos)
}

/// Informational search for a common isotropic vector or a definite combination.
pub fn isotropy_check(m: &QuadricModel, bound: i64) -> IsotropyCheck {
    let n = m.n;
    let zero = GaussianRational::zero();
    let mut candidates: Vec<Vec<GaussianRational>> = Vec::new();
    for a in 0..n {
        let mut v = vec![zero.clone(); n];
        v[a] = GaussianRational::one();
        candidates.push(v);
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let mut v = vec![zero.clone(); n];
                v[a] = GaussianRational::one();
                v[b] = GaussianRational::from_ints(c.0, c.1);
                candidates.push(v);
            }
        }
    }
    if let Some(v) = candidates.into_iter().find(|v| (0..m.k).all(|j| m.levi_value(j, v).is_zero())) {
        return IsotropyCheck { status: IsotropyStatus::Isotropic, isotropic_vector: Some(v), definite_combination: None };
    }
    let max_norm = Some(2.min(bound * m.k as i64));
    for c in small_vectors(m.k, bound, max_norm) {
        let cg: Vec<GaussianRational> = c.iter().map(|&x| GaussianRational::from(x)).collect();
        if leading_minors_sign(&m.combination(&cg)).is_some() {
            return IsotropyCheck {
                status: IsotropyStatus::Anisotropic,
                isotropic_vector: None,
                definite_combination: Some(c),
            };
        }
    }
    IsotropyCheck { status: IsotropyStatus::Undetermined, isotropic_vector: None, definite_combination: None }
}

/// `g_{-2} ⊕ g_{-1}` with real basis `(e_1..e_n, Je_1..Je_n)` of `g_{-1}` and the
/// standard basis of `g_{-2} = R^k`.
#[derive(Clone, PartialEq, Debug)]
pub struct LeviTanakaAlgebra {
    n: usize,
    k: usize,
    /// `bracket[a][b]` = coordinates of `[X_a, X_b]` in `g_{-2}`.
    bracket: Vec<Vec<Vec<Rational>>>,
    /// `j[(r, c)]`: coordinate `r` of `J X_c`.
    j: ExactMatrix<Rational>,
}

impl LeviTanakaAlgebra {
    /// Builds from raw tables, enforcing all Levi–Tanaka invariants.
    pub fn from_parts(n: usize, k: usize, bracket: Vec<Vec<Vec<Rational>>>, j: ExactMatrix<Rational>) -> Result<Self> {
        let d = 2 * n;
        if bracket.len() != d || bracket.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != k)) {
            return Err(Error::Dimension("bracket table must be 2n x 2n x k".into()));
        }
        if j.nrows() != d || j.ncols() != d {
            return Err(Error::Dimension("J must be 2n x 2n".into()));
        }
        let a = Self { n, k, bracket, j };
        a.check()?;
        Ok(a)
    }

    fn check(&self) -> Result<()> {
        let d = self.dim_gm1();
        for x in 0..d {
            for y in 0..d {
                if self.bracket[x][y].iter().zip(&self.bracket[y][x]).any(|(p, q)| p.clone() + q.clone() != Rational::zero()) {
                    return Err(Error::Algebra(format!("bracket not antisymmetric at ({x}, {y})")));
                }
            }
        }
        let j2 = self.j.mul(&self.j)?;
        if j2 != ExactMatrix::identity(d).scale(&rat(-1)) {
            return Err(Error::Algebra("J^2 != -id".into()));
        }
        for x in 0..d {
            for y in 0..d {
                let jxy = self.bracket_vectors(&self.j_col(x), &self.j_col(y));
                if jxy != self.bracket[x][y] {
                    return Err(Error::Algebra(format!("[JX, JY] != [X, Y] for basis pair ({x}, {y})")));
                }
            }
        }
        let span = ExactMatrix::<Rational>::from_fn(d * d, self.k, |r, c| self.bracket[r / d][r % d][c].clone());
        if span.rank() != self.k {
            return Err(Error::Algebra("[g_-1, g_-1] does not span g_-2".into()));
        }
        if !self.is_nondegenerate() {
            return Err(Error::Algebra("some nonzero X has [X, g_-1] = 0".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim_gm1(&self) -> usize {
        2 * self.n
    }

    pub fn dim_gm2(&self) -> usize {
        self.k
    }

    pub fn bracket_table(&self) -> &Vec<Vec<Vec<Rational>>> {
        &self.bracket
    }

    pub fn basis_bracket(&self, a: usize, b: usize) -> &[Rational] {
        &self.bracket[a][b]
    }

    pub fn j_matrix(&self) -> &ExactMatrix<Rational> {
        &self.j
    }

    /// Coordinates of `J X_c`.
    pub fn j_col(&self, c: usize) -> Vec<Rational> {
        (0..self.dim_gm1()).map(|r| self.j[(r, c)].clone()).collect()
    }

    pub fn apply_j(&self, v: &SparseVec<Rational>) -> SparseVec<Rational> {
        let mut out = SparseVec::new();
        for (c, x) in v.iter() {
            out = out.add_scaled(x, &SparseVec::from_dense(&self.j_col(c)));
        }
        out
    }

    /// Bilinear extension of the bracket to coordinate vectors of `g_{-1}`.
    pub fn bracket_vectors(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.k];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                for (o, v) in out.iter_mut().zip(&self.bracket[a][b]) {
                    *o += xa * yb * v;
                }
            }
        }
        out
    }

    /// Kernel of `X ↦ [X, ·]` is trivial.
    pub fn is_nondegenerate(&self) -> bool {
        let d = self.dim_gm1();
        // unknown X (d coords); equations: [X, X_b]_j = 0 for all b, j
        let m = ExactMatrix::<Rational>::from_fn(d * self.k, d, |r, a| self.bracket[a][r / self.k][r % self.k].clone());
        m.nullspace().is_empty()
    }
}

/// `[(0, p), (0, p̃)]_j = 2i(−p H_j p̃* + p̃ H_j p*) = 4 Im(p H_j p̃*)`.
pub fn build_levi_tanaka(m: &QuadricModel) -> Result<LeviTanakaAlgebra> {
    let report = validate(m);
    if !report.passed {
        return Err(Error::Validation(report.notes.join("; ")));
    }
    let (n, k) = (m.n, m.k);
    let d = 2 * n;
    // basis X_a = c_a e_{a mod n} with c_a = 1 for a < n and i otherwise
    let unit = |a: usize| if a < n { GaussianRational::one() } else { GaussianRational::i() };
    let mut bracket = vec![vec![vec![Rational::zero(); k]; d]; d];
    for x in 0..d {
        for y in 0..d {
            for (jj, h) in m.h.iter().enumerate() {
                let p_h_q = &(&unit(x) * &h[(x % n, y % n)]) * &unit(y).conj();
                bracket[x][y][jj] = p_h_q.im * rat(4);
            }
        }
    }
    let mut j = ExactMatrix::<Rational>::zeros(d, d);
    for a in 0..n {
        j[(n + a, a)] = Rational::one();
        j[(a, n + a)] = -Rational::one();
    }
    LeviTanakaAlgebra::from_parts(n, k, bracket, j)
}

/// Recovers `Im w = ¼ [J z, z]` as Hermitian matrices in the basis
/// `(e_a, J e_a)` of the algebra.
pub fn reconstruct_model(a: &LeviTanakaAlgebra) -> Result<QuadricModel> {
    a.check()?;
    let (n, k) = (a.n, a.k);
    let d = 2 * n;
    // the complex structure must be the standard one in this basis
    for c in 0..n {
        let jc = a.j_col(c);
        if (0..d).any(|r| jc[r] != if r == n + c { Rational::one() } else { Rational::zero() }) {
            return Err(Error::Algebra("J is not in standard form on the basis (e_a, J e_a)".into()));
        }
    }
    let quarter = ratio(1, 4);
    // h(v) = ¼ [J v, v]
    let form = |v: &[Rational]| -> Vec<Rational> {
        let jv: Vec<Rational> = (0..d).map(|r| (0..d).map(|c| &a.j[(r, c)] * &v[c]).sum()).collect();
        a.bracket_vectors(&jv, v).into_iter().map(|x| x * &quarter).collect()
    };
    let basis = |idx: &[usize]| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); d];
        for &i in idx {
            v[i] += Rational::one();
        }
        v
    };
    let mut h = vec![ExactMatrix::zeros(n, n); k];
    let diag: Vec<Vec<Rational>> = (0..n).map(|p| form(&basis(&[p]))).collect();
    for p in 0..n {
        for (jj, hj) in h.iter_mut().enumerate() {
            hj[(p, p)] = GaussianRational::real(diag[p][jj].clone());
        }
        for q in p + 1..n {
            let re_form = form(&basis(&[p, q]));
            let im_form = form(&basis(&[p, n + q]));
            for (jj, hj) in h.iter_mut().enumerate() {
                let base = &diag[p][jj] + &diag[q][jj];
                let re = (&re_form[jj] - &base) / rat(2);
                let im = (&im_form[jj] - &base) / rat(2);
                let v = GaussianRational::new(re, im);
                hj[(q, p)] = v.conj();
                hj[(p, q)] = v;
            }
        }
    }
    QuadricModel::new(n, k, h)
}
