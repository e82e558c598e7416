//! Oracles shared by the integration suites. None of them uses the
//! prolongation code.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use tanaka_core::model::QuadricModel;
use tanaka_core::poly::{Poly, PolyVectorField, Target, VarSpace};
use tanaka_core::scalar::{GaussianRational, Rational};
use tanaka_core::verify::tangency_residuals;

/// Exponent vectors of `z`/`w` monomials of weighted degree `weight`
/// (`[z] = 1`, `[w] = 2`).
fn weighted_monomials(n: usize, k: usize, weight: i32) -> Vec<(Vec<u32>, Vec<u32>)> {
    fn rec(vars: &[i32], weight: i32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == vars.len() {
            if weight == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = vars[cur.len()];
        let mut e = 0;
        while (e as i32) * w <= weight {
            cur.push(e);
            rec(vars, weight - (e as i32) * w, cur, out);
            cur.pop();
            e += 1;
        }
    }
    if weight < 0 {
        return Vec::new();
    }
    let mut vars = vec![1; n];
    vars.extend(vec![2; k]);
    let mut out = Vec::new();
    rec(&vars, weight, &mut Vec::new(), &mut out);
    out.into_iter().map(|e| (e[..n].to_vec(), e[n..].to_vec())).collect()
}

/// Rank of a dense rational matrix by plain Gaussian elimination.
fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][c].clone();
        let pivot: Vec<Rational> = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..cols {
                    let v = &pivot[j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// Real dimension of the weight-`b` holomorphic polynomial fields tangent to
/// the model, by solving the tangency equations over all candidate fields.
pub fn brute_force_dim(m: &QuadricModel, b: i32) -> usize {
    let (n, k) = (m.n(), m.k());
    let s = VarSpace::new(n, k);
    let mut candidates: Vec<PolyVectorField> = Vec::new();
    let mut push = |target: Target, weight: i32| {
        for (ze, we) in weighted_monomials(n, k, weight) {
            let mut exps = vec![0u32; s.len()];
            for a in 0..n {
                exps[s.z(a)] = ze[a];
            }
            for j in 0..k {
                exps[s.w(j)] = we[j];
            }
            for c in [GaussianRational::one(), GaussianRational::i()] {
                let mut f = PolyVectorField::zero(n, k);
                f.add_component(target, &Poly::monomial(s, exps.clone(), c));
                candidates.push(f);
            }
        }
    };
    for a in 0..n {
        push(Target::Z(a), b + 1);
    }
    for j in 0..k {
        push(Target::W(j), b + 2);
    }
    if candidates.is_empty() {
        return 0;
    }
    // columns: one residual vector per real unknown
    let mut index: BTreeMap<(usize, Vec<u32>, bool), usize> = BTreeMap::new();
    let mut columns: Vec<Vec<(usize, Rational)>> = Vec::new();
    for f in &candidates {
        let mut col = Vec::new();
        for (j, r) in tangency_residuals(f, m).expect("holomorphic").iter().enumerate() {
            for (mono, c) in r.terms() {
                for (imag, v) in [(false, &c.re), (true, &c.im)] {
                    if !v.is_zero() {
                        let next = index.len();
                        let row = *index.entry((j, mono.exponents().to_vec(), imag)).or_insert(next);
                        col.push((row, v.clone()));
                    }
                }
            }
        }
        columns.push(col);
    }
    let mut dense = vec![vec![Rational::zero(); candidates.len()]; index.len()];
    for (c, col) in columns.iter().enumerate() {
        for (r, v) in col {
            dense[*r][c] = v.clone();
        }
    }
    candidates.len() - rank(dense)
}

/// Brute-force dimensions from degree −2 up to the first vanishing degree.
pub fn brute_force_dims(m: &QuadricModel, cap: i32) -> Vec<usize> {
    let mut dims = Vec::new();
    for b in -2..=cap {
        let d = brute_force_dim(m, b);
        if d == 0 && b >= 0 {
            break;
        }
        dims.push(d);
    }
    dims
}

/// `Re(X ρ_j)` evaluated directly at the point `(z, u + i z H z*)` of the model.
pub fn pointwise_residuals(x: &PolyVectorField, m: &QuadricModel, z: &[GaussianRational], u: &[Rational]) -> Vec<GaussianRational> {
    let (n, k) = (m.n(), m.k());
    let s = VarSpace::new(n, k);
    let zbar: Vec<GaussianRational> = z.iter().map(GaussianRational::conj).collect();
    let levi = |j: usize| {
        let h = m.matrix(j);
        let mut acc = GaussianRational::zero();
        for a in 0..n {
            for b in 0..n {
                acc = acc + &(&z[a] * &h[(a, b)]) * &zbar[b];
            }
        }
        acc
    };
    let w: Vec<GaussianRational> = (0..k).map(|j| GaussianRational::real(u[j].clone()) + levi(j).mul_i()).collect();
    let mut point = vec![GaussianRational::zero(); s.len()];
    for a in 0..n {
        point[s.z(a)] = z[a].clone();
        point[s.zb(a)] = zbar[a].clone();
    }
    for j in 0..k {
        point[s.w(j)] = w[j].clone();
        point[s.wb(j)] = w[j].conj();
        point[s.u(j)] = GaussianRational::real(u[j].clone());
    }
    let minus_half_i = GaussianRational::new(Rational::zero(), Rational::new((-1).into(), 2.into()));
    (0..k)
        .map(|j| {
            let h = m.matrix(j);
            let mut val = &x.component(Target::W(j)).evaluate(&point) * &minus_half_i;
            for a in 0..n {
                let mut hz = GaussianRational::zero();
                for b in 0..n {
                    hz = hz + &h[(a, b)] * &zbar[b];
                }
                val = val - &x.component(Target::Z(a)).evaluate(&point) * &hz;
            }
            GaussianRational::real(val.re)
        })
        .collect()
}
