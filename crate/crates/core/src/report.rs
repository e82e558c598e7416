//! End-to-end pipeline: validate, prolong, realize the top degree, verify and
//! certify jet counterexamples.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::{validate, QuadricModel, ValidationReport};
use crate::prolong::{prolong_full, ProlongationResult};
use crate::realize::realize_basis;
use crate::verify::{certify_jet_counterexample, verify_hol, CertificateJson};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub real_dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JetCertificate {
    /// Index of the basis element of the top degree.
    pub basis_index: usize,
    pub degree: i32,
    pub vanishing_order: u32,
    /// Largest `j` with a vanishing `j`-jet.
    pub vanishing_jet: u32,
    /// `j` values for which the counterexample was certified.
    pub certified_jets: Vec<u32>,
    pub tangency: CertificateJson,
}

/// Everything reproducible from the input; hashed into the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifiedReport {
    pub model: ModelSummary,
    pub validation: ValidationReport,
    pub dims: Vec<(i32, usize)>,
    pub total_dimension: usize,
    pub top_degree: usize,
    pub jet_order: usize,
    pub realized_top_degree_verified: bool,
    pub counterexamples: Vec<JetCertificate>,
    pub jet_conclusion: String,
    pub summary: String,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub validate_ms: u128,
    pub prolong_ms: u128,
    pub realize_verify_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub certified: CertifiedReport,
    pub sha256: String,
    pub timing: Timing,
}

pub fn certified_hash(c: &CertifiedReport) -> String {
    let bytes = serde_json::to_vec(c).expect("report serializes");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs the full pipeline; any failure aborts without a partial report.
pub fn run_report(name: &str, m: &QuadricModel, cap: usize, notes: Vec<String>) -> Result<Report> {
    let t0 = Instant::now();
    let validation = validate(m);
    if !validation.passed {
        return Err(Error::Validation(format!("model '{name}' fails validation: {}", validation.notes.join("; "))));
    }
    let t1 = Instant::now();
    let r = prolong_full(m, cap)?;
    r.algebra.check_jacobi()?;
    let t2 = Instant::now();
    let (verified, counterexamples) = certify_top_degree(m, &r)?;
    let t3 = Instant::now();

    let k = r.jet_order;
    let summary = match counterexamples.iter().find(|c| c.certified_jets.contains(&2)) {
        Some(_) => format!("nontrivial automorphism with vanishing 2-jet; {k}-jet determination"),
        None => format!("{k}-jet determination"),
    };
    let certified = CertifiedReport {
        model: ModelSummary { name: name.to_string(), n: m.n(), k: m.k(), real_dimension: 2 * (m.n() + m.k()) - m.k() },
        validation,
        dims: r.dims.clone(),
        total_dimension: r.algebra.total_dim(),
        top_degree: r.top_degree,
        jet_order: k,
        realized_top_degree_verified: verified,
        counterexamples,
        jet_conclusion: format!("{k}-jet determined"),
        summary,
        notes,
    };
    let sha256 = certified_hash(&certified);
    let ms = |a: Instant, b: Instant| (b - a).as_millis();
    Ok(Report {
        certified,
        sha256,
        timing: Timing { validate_ms: ms(t0, t1), prolong_ms: ms(t1, t2), realize_verify_ms: ms(t2, t3) },
    })
}

/// Realizes and verifies every top-degree basis element; when the top degree
/// exceeds 2 each one is certified with `j = 2` and `j = jet_order − 1`.
fn certify_top_degree(m: &QuadricModel, r: &ProlongationResult) -> Result<(bool, Vec<JetCertificate>)> {
    let top = r.top_degree as i32;
    let fields = realize_basis(r, top)?;
    let mut out = Vec::new();
    for (t, f) in fields.iter().enumerate() {
        let cert = verify_hol(f, m)?;
        if !cert.verdict {
            return Err(Error::Internal(format!("realized basis element {t} of degree {top} is not tangent")));
        }
        if top <= 2 {
            continue;
        }
        let order = f.ordinary_vanishing_order()?;
        let mut jets: Vec<u32> = vec![2, r.jet_order as u32 - 1];
        jets.dedup();
        let certified_jets: Vec<u32> = jets.into_iter().filter(|&j| certify_jet_counterexample(f, m, j)).collect();
        out.push(JetCertificate {
            basis_index: t,
            degree: top,
            vanishing_order: order,
            vanishing_jet: order - 1,
            certified_jets,
            tangency: cert.to_json(),
        });
    }
    Ok((true, out))
}

impl Report {
    pub fn to_text(&self) -> String {
        let c = &self.certified;
        let mut s = String::new();
        s.push_str(&format!("model {} (n = {}, k = {}, real dimension {})\n", c.model.name, c.model.n, c.model.k, c.model.real_dimension));
        s.push_str(&format!("validation: {}\n", if c.validation.passed { "passed" } else { "failed" }));
        let dims: Vec<String> = c.dims.iter().map(|(d, n)| format!("g_{d}: {n}")).collect();
        s.push_str(&format!("dimensions: {} (total {})\n", dims.join(", "), c.total_dimension));
        s.push_str(&format!("top degree: {}\njet order: {}\n", c.top_degree, c.jet_order));
        for e in &c.counterexamples {
            let jets: Vec<String> = e.certified_jets.iter().map(u32::to_string).collect();
            s.push_str(&format!(
                "degree {} basis element {}: tangent, vanishing order {}, certified jets [{}]\n",
                e.degree,
                e.basis_index,
                e.vanishing_order,
                jets.join(", ")
            ));
        }
        for n in &c.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        s.push_str(&format!("conclusion: {}\nsummary: {}\nsha256: {}\n", c.jet_conclusion, c.summary, self.sha256));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_heisenberg;

    #[test]
    fn heisenberg_report() {
        let r = run_report("heisenberg", &make_heisenberg().model, 12, vec![]).unwrap();
        assert_eq!(r.certified.summary, "2-jet determination");
        assert_eq!(r.certified.jet_conclusion, "2-jet determined");
        assert!(r.certified.counterexamples.is_empty());
        assert_eq!(r.sha256, certified_hash(&r.certified));
        let again = run_report("heisenberg", &make_heisenberg().model, 12, vec![]).unwrap();
        assert_eq!(serde_json::to_string(&again.certified).unwrap(), serde_json::to_string(&r.certified).unwrap());
    }

    #[test]
    fn degenerate_model_gives_no_report() {
        use crate::linalg::ExactMatrix;
        use crate::scalar::GaussianRational;
        let z = GaussianRational::from(0);
        let o = GaussianRational::from(1);
        let h = ExactMatrix::from_rows(vec![vec![o, z.clone()], vec![z.clone(), z]]).unwrap();
        let m = QuadricModel::new(2, 1, vec![h]).unwrap();
        assert!(matches!(run_report("x", &m, 12, vec![]), Err(Error::Validation(_))));
    }
}
