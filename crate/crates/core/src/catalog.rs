//! Built-in quadric models with their known automorphism fields.

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::model::QuadricModel;
use crate::poly::{Poly, PolyVectorField, Target, VarSpace};
use crate::scalar::{ratio, GaussianRational};

#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub top_degree: usize,
    pub jet_order: usize,
    pub validates: bool,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub model: QuadricModel,
    /// `(name, field)` in display order.
    pub known_fields: Vec<(String, PolyVectorField)>,
    pub expected: Expected,
    /// Relation to another catalog model, if any.
    pub note: Option<String>,
}

impl CatalogEntry {
    pub fn field(&self, name: &str) -> Option<&PolyVectorField> {
        self.known_fields.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn codim(&self) -> usize {
        self.model.k()
    }
}

/// Names accepted by [`lookup`], with a one-line description.
pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("heisenberg", "sphere Im w = |z|^2 in C^2"),
        ("codim5", "codimension 5 model in C^9 with a weight-6 automorphism"),
        ("codim4", "codimension 4 model in C^10 with a weight-4 automorphism"),
        ("so_family", "parametric family in C^((n+2)(n+1)/2), n >= 3 (--n)"),
        ("su_family", "parametric family in C^((m+1)^2), m >= 2 (--m)"),
    ]
}

/// Catalog entry by name; `param` is the family parameter and `extra` the
/// number of appended sphere directions.
pub fn lookup(name: &str, param: Option<usize>, extra: usize) -> Result<CatalogEntry> {
    let base = match name {
        "heisenberg" => make_heisenberg(),
        "codim5" => make_codim5(),
        "codim4" => make_codim4(),
        "so_family" => make_so_family(param.unwrap_or(3))?,
        "su_family" => make_su_family(param.unwrap_or(2))?,
        other => return Err(Error::Input(format!("unknown catalog entry '{other}'"))),
    };
    Ok(extend_codim(&base, extra))
}

fn c(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}

fn hermitian(n: usize, entries: &[(usize, usize, GaussianRational)]) -> ExactMatrix {
    let mut rows = vec![vec![GaussianRational::from(0); n]; n];
    for (a, b, v) in entries {
        rows[*a][*b] = v.clone();
    }
    ExactMatrix::from_rows(rows).expect("square")
}

/// `z_a z̄_b + z_b z̄_a`
fn real_pair(n: usize, a: usize, b: usize) -> ExactMatrix {
    hermitian(n, &[(a, b, c(1, 0)), (b, a, c(1, 0))])
}

/// `−i z_a z̄_b + i z_b z̄_a`
fn imaginary_pair(n: usize, a: usize, b: usize) -> ExactMatrix {
    hermitian(n, &[(a, b, c(0, -1)), (b, a, c(0, 1))])
}

/// Consecutive pairs first, then the remaining pairs in lexicographic order.
pub fn family_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|a| (a, a + 1)).collect();
    for a in 0..n {
        for b in a + 2..n {
            pairs.push((a, b));
        }
    }
    pairs
}

pub fn make_heisenberg() -> CatalogEntry {
    let model = QuadricModel::new(1, 1, vec![hermitian(1, &[(0, 0, c(1, 0))])]).expect("shape");
    CatalogEntry {
        name: "heisenberg".into(),
        model,
        known_fields: vec![("rotation".into(), PolyVectorField::d_dz(1, 1, 0).mul_poly(&Poly::z(VarSpace::new(1, 1), 0)).scale(&GaussianRational::i()))],
        expected: Expected { top_degree: 2, jet_order: 2, validates: true },
        note: None,
    }
}

/// The five codimension-5 Hermitian matrices in equation order.
pub fn codim5_matrices() -> Vec<ExactMatrix> {
    vec![
        real_pair(4, 0, 1),
        imaginary_pair(4, 0, 1),
        hermitian(4, &[(0, 3, c(1, 0)), (1, 2, c(1, 0)), (2, 1, c(1, 0)), (3, 0, c(1, 0))]),
        hermitian(4, &[(0, 0, c(1, 0))]),
        hermitian(4, &[(1, 1, c(1, 0))]),
    ]
}

/// The weight-0 fields `X, Y, Z, U` of the codimension-5 model.
pub fn codim5_linear_fields() -> [PolyVectorField; 4] {
    let s = VarSpace::new(4, 5);
    let z = |a| Poly::z(s, a);
    let d = |a| PolyVectorField::d_dz(4, 5, a);
    let i = GaussianRational::i();
    let x = d(2).mul_poly(&z(0)).add(&d(3).mul_poly(&z(1))).scale(&i);
    let y = d(2).mul_poly(&z(0)).sub(&d(3).mul_poly(&z(1)));
    let zf = d(3).mul_poly(&z(0)).scale(&i);
    let u = d(2).mul_poly(&z(1)).scale(&i);
    [x, y, zf, u]
}

/// Weight-4 field built from `X, Y, Z, U` with quadratic coefficients in `w`.
pub fn codim5_t_field() -> PolyVectorField {
    let s = VarSpace::new(4, 5);
    let w = |j| Poly::w(s, j);
    let [x, y, z, u] = codim5_linear_fields();
    let half = GaussianRational::real(ratio(1, 2));
    let two = GaussianRational::from(2);
    let y_coeff = (&(&w(1) * &w(1)) - &(&w(0) * &w(0))).scale(&half) + (&w(3) * &w(4)).scale(&two);
    y.mul_poly(&y_coeff)
        .add(&x.mul_poly(&(&w(0) * &w(1))))
        .sub(&z.mul_poly(&(&w(1) * &w(4)).scale(&two)))
        .sub(&u.mul_poly(&(&w(1) * &w(3)).scale(&two)))
}

/// Weight-6 field of the codimension-5 model.
pub fn codim5_top_field() -> PolyVectorField {
    let s = VarSpace::new(4, 5);
    let w = |j| Poly::w(s, j);
    let z = |a| Poly::z(s, a);
    let k = |v: i64| GaussianRational::from(v);
    let (w1, w2, a, b) = (w(0), w(1), w(3), w(4));
    let ab = &a * &b;
    let r = &(&w1 * &w1) + &(&w2 * &w2);
    // f1, f2 multiply w1, w2 and f3, f4 multiply the pair (w4, w5)
    let base = &r - &ab.scale(&k(4));
    let f1 = (&w1 * &base).scale(&k(2));
    let f2 = (&w2 * &base).scale(&k(2));
    let f3 = (&a * &base).scale(&k(-4));
    let f4 = (&b * &base).scale(&k(-4));
    let mut w_comp = (&r * &r).scale(&k(-3)) + (&r * &ab).scale(&k(24)) - (&ab * &ab).scale(&k(48));
    w_comp = w_comp + (&w1 * &f1).scale(&k(2)) + (&w2 * &f2).scale(&k(2)) + (&b * &f3).scale(&k(2)) + (&a * &f4).scale(&k(2));
    let i = GaussianRational::i();
    let z3 = &(&f1 * &z(0)) - &(&f2 * &z(0)).scale(&i) + &f3 * &z(1);
    let z4 = &(&f1 * &z(1)) + &(&f2 * &z(1)).scale(&i) + &f4 * &z(0);
    let mut f = PolyVectorField::zero(4, 5);
    f.add_component(Target::W(2), &w_comp);
    f.add_component(Target::Z(2), &z3);
    f.add_component(Target::Z(3), &z4);
    f
}

pub fn make_codim5() -> CatalogEntry {
    let model = QuadricModel::new(4, 5, codim5_matrices()).expect("shape");
    let [x, y, z, u] = codim5_linear_fields();
    CatalogEntry {
        name: "codim5".into(),
        model,
        known_fields: vec![
            ("X".into(), x),
            ("Y".into(), y),
            ("Z".into(), z),
            ("U".into(), u),
            ("T".into(), codim5_t_field()),
            ("top".into(), codim5_top_field()),
        ],
        expected: Expected { top_degree: 6, jet_order: 4, validates: true },
        note: None,
    }
}

/// Equation permutation taking `su_family(2)` to `codim5`: equation `t` of the
/// family is equation `SU2_TO_CODIM5[t]` of the codimension-5 model.
pub const SU2_TO_CODIM5: [usize; 5] = [0, 1, 3, 4, 2];

/// Codimension-4 model: three imaginary pairs of `z_1, z_2, z_3` and a coupling
/// with `z'_1, z'_2, z'_3` (stored as `z_4, z_5, z_6`).
pub fn make_codim4() -> CatalogEntry {
    let n = 6;
    let mut h: Vec<ExactMatrix> = [(0, 1), (1, 2), (0, 2)].iter().map(|&(a, b)| imaginary_pair(n, a, b)).collect();
    h.push(hermitian(n, &[(0, 3, c(1, 0)), (3, 0, c(1, 0)), (1, 4, c(1, 0)), (4, 1, c(1, 0)), (2, 5, c(1, 0)), (5, 2, c(1, 0))]));
    let model = QuadricModel::new(n, 4, h).expect("shape");
    CatalogEntry {
        name: "codim4".into(),
        model,
        known_fields: vec![("V".into(), codim4_field()), ("V_relabeled".into(), codim4_field_relabeled())],
        expected: Expected { top_degree: 4, jet_order: 3, validates: true },
        note: None,
    }
}

/// Weight-4 field of the codimension-4 model.
pub fn codim4_field() -> PolyVectorField {
    let s = VarSpace::new(6, 4);
    let z = |a| Poly::z(s, a);
    let w = |j| Poly::w(s, j);
    let i = GaussianRational::i();
    let d = |a| PolyVectorField::d_dz(6, 4, a);
    let pair = |p: usize, q: usize, r: usize, t: usize| d(p).mul_poly(&z(q)).add(&d(r).mul_poly(&z(t))).scale(&i);
    pair(3, 2, 5, 0)
        .mul_poly(&(&w(0) * &w(2)))
        .scale(&GaussianRational::from(-1))
        .add(&pair(3, 1, 4, 0).mul_poly(&(&w(1) * &w(2))))
        .sub(&pair(4, 2, 5, 1).mul_poly(&(&w(0) * &w(1))))
        .add(&d(3).mul_poly(&(&(&w(2) * &w(2)) * &z(0))).scale(&i))
        .add(&d(4).mul_poly(&(&(&w(1) * &w(1)) * &z(1))).scale(&i))
        .add(&d(5).mul_poly(&(&(&w(0) * &w(0)) * &z(2))).scale(&i))
}

/// [`codim4_field`] with `w_2 ↦ w_3` and `w_3 ↦ −w_2`; the form that is tangent
/// to the codimension-4 model.
pub fn codim4_field_relabeled() -> PolyVectorField {
    let s = VarSpace::new(6, 4);
    let f = codim4_field();
    let mut out = PolyVectorField::zero(6, 4);
    for (t, p) in f.components() {
        // route through u to make the substitution simultaneous
        let q = p.substitute(s.w(1), &Poly::u(s, 1)).substitute(s.w(2), &Poly::u(s, 2));
        let q = q.substitute(s.u(1), &Poly::w(s, 2)).substitute(s.u(2), &Poly::w(s, 1).scale(&GaussianRational::from(-1)));
        out.add_component(t, &q);
    }
    out
}

/// `n ≥ 3`: imaginary pairs of `z_1..z_n` coupled with `z'_1..z'_n` by
/// `Σ z_j z̄'_j + z'_j z̄_j`.
pub fn make_so_family(n: usize) -> Result<CatalogEntry> {
    if n < 3 {
        return Err(Error::Parameter(format!("so_family needs n >= 3, got {n}")));
    }
    let dim = 2 * n;
    let mut h: Vec<ExactMatrix> = family_pairs(n).into_iter().map(|(a, b)| imaginary_pair(dim, a, b)).collect();
    let coupling: Vec<(usize, usize, GaussianRational)> =
        (0..n).flat_map(|j| [(j, n + j, c(1, 0)), (n + j, j, c(1, 0))]).collect();
    h.push(hermitian(dim, &coupling));
    let k = h.len();
    let model = QuadricModel::new(dim, k, h)?;
    let (known_fields, note) = if n == 3 {
        (make_codim4().known_fields, Some("identical to codim4".to_string()))
    } else {
        (Vec::new(), None)
    };
    Ok(CatalogEntry {
        name: format!("so_family(n={n})"),
        model,
        known_fields,
        expected: Expected { top_degree: 2 * n - 2, jet_order: n, validates: true },
        note,
    })
}

/// `m ≥ 2`: real pairs, imaginary pairs and squares of `z_1..z_m` coupled with
/// `z'_1..z'_m` by `Σ z_j z̄'_{m+1−j} + z'_{m+1−j} z̄_j`.
pub fn make_su_family(m: usize) -> Result<CatalogEntry> {
    if m < 2 {
        return Err(Error::Parameter(format!("su_family needs m >= 2, got {m}")));
    }
    let dim = 2 * m;
    let pairs = family_pairs(m);
    let mut h: Vec<ExactMatrix> = pairs.iter().map(|&(a, b)| real_pair(dim, a, b)).collect();
    h.extend(pairs.iter().map(|&(a, b)| imaginary_pair(dim, a, b)));
    h.extend((0..m).map(|a| hermitian(dim, &[(a, a, c(1, 0))])));
    let coupling: Vec<(usize, usize, GaussianRational)> =
        (0..m).flat_map(|j| [(j, dim - 1 - j, c(1, 0)), (dim - 1 - j, j, c(1, 0))]).collect();
    h.push(hermitian(dim, &coupling));
    let k = h.len();
    let model = QuadricModel::new(dim, k, h)?;
    let (known_fields, note) = if m == 2 {
        let codim5 = make_codim5();
        // codim5 equation SU2_TO_CODIM5[t] is family equation t
        let wmap: Vec<usize> = (0..5).map(|e| SU2_TO_CODIM5.iter().position(|&x| x == e).unwrap()).collect();
        let fields = codim5.known_fields.iter().map(|(n, f)| (n.clone(), f.relabel(&[0, 1, 2, 3], &wmap))).collect();
        (fields, Some("codim5 with equations reordered as (P1, P2, P4, P5, P3)".to_string()))
    } else {
        (Vec::new(), None)
    };
    Ok(CatalogEntry {
        name: format!("su_family(m={m})"),
        model,
        known_fields,
        expected: Expected { top_degree: 4 * m - 2, jet_order: 2 * m, validates: true },
        note,
    })
}

/// Appends `extra` variables `z_new` and equations `Im w_new = |z_new|^2`.
pub fn extend_codim(e: &CatalogEntry, extra: usize) -> CatalogEntry {
    if extra == 0 {
        return e.clone();
    }
    let (n, k) = (e.model.n(), e.model.k());
    let (n2, k2) = (n + extra, k + extra);
    let pad = |h: &ExactMatrix| ExactMatrix::from_fn(n2, n2, |a, b| if a < n && b < n { h[(a, b)].clone() } else { c(0, 0) });
    let mut h: Vec<ExactMatrix> = e.model.matrices().iter().map(pad).collect();
    h.extend((0..extra).map(|t| hermitian(n2, &[(n + t, n + t, c(1, 0))])));
    CatalogEntry {
        name: format!("{}+{extra}", e.name),
        model: QuadricModel::new(n2, k2, h).expect("shape"),
        known_fields: e.known_fields.iter().map(|(name, f)| (name.clone(), f.embed(n2, k2))).collect(),
        expected: e.expected.clone(),
        note: e.note.clone(),
    }
}

/// Every fixed-size entry plus small family members.
pub fn all_small() -> Vec<CatalogEntry> {
    vec![
        make_heisenberg(),
        make_codim5(),
        make_codim4(),
        make_so_family(3).expect("n = 3"),
        make_su_family(2).expect("m = 2"),
        extend_codim(&make_heisenberg(), 1),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{tumanov_search, validate};

    #[test]
    fn codim5_entries() {
        let e = make_codim5();
        assert_eq!(e.model.matrix(2)[(0, 3)], c(1, 0));
        let p2 = Poly::hermitian_form(VarSpace::new(4, 5), e.model.matrix(1));
        let s = VarSpace::new(4, 5);
        let expect = (&Poly::z(s, 0) * &Poly::zb(s, 1)).scale(&c(0, -1)) + (&Poly::z(s, 1) * &Poly::zb(s, 0)).scale(&c(0, 1));
        assert_eq!(p2, expect);
        assert!(validate(&e.model).passed);
    }

    #[test]
    fn so3_is_codim4() {
        assert_eq!(make_so_family(3).unwrap().model.to_json_string(), make_codim4().model.to_json_string());
        assert_eq!(make_codim4().model.k(), 4);
    }

    #[test]
    fn su2_is_codim5_up_to_permutation() {
        let su = make_su_family(2).unwrap();
        let codim5 = make_codim5();
        for (t, &e) in SU2_TO_CODIM5.iter().enumerate() {
            assert_eq!(su.model.matrix(t), codim5.model.matrix(e));
        }
    }

    #[test]
    fn family_sizes() {
        let so4 = make_so_family(4).unwrap();
        assert_eq!((so4.model.n() + so4.model.k(), so4.model.k()), (15, 7));
        let su3 = make_su_family(3).unwrap();
        assert_eq!((su3.model.n() + su3.model.k(), su3.model.k()), (16, 10));
        assert!(matches!(make_so_family(2), Err(Error::Parameter(_))));
        assert!(matches!(make_su_family(1), Err(Error::Parameter(_))));
        assert_eq!(family_pairs(4), vec![(0, 1), (1, 2), (2, 3), (0, 2), (0, 3), (1, 3)]);
    }

    #[test]
    fn extension() {
        let e = extend_codim(&make_codim5(), 1);
        assert_eq!((e.model.n() + e.model.k(), e.model.k()), (11, 6));
        assert_eq!(e.expected.jet_order, 4);
        let h = make_heisenberg();
        assert_eq!(extend_codim(&h, 0).model, h.model);
    }

    #[test]
    fn catalog_models_validate() {
        for e in all_small() {
            assert!(validate(&e.model).passed, "{}", e.name);
            assert!(tumanov_search(&e.model, 2).is_some(), "{}", e.name);
        }
    }

    #[test]
    fn t_has_weight_four() {
        use crate::poly::WeightedDegree;
        assert_eq!(codim5_t_field().weighted_degree(), WeightedDegree::Homogeneous(4));
        assert_eq!(codim5_top_field().weighted_degree(), WeightedDegree::Homogeneous(6));
        assert_eq!(codim4_field().weighted_degree(), WeightedDegree::Homogeneous(4));
    }
}
