//! The regularity pipeline and the JSON report.

use serde::Serialize;

use super::conjectures::ConjectureReport;
use super::theorems::TheoremReport;
use super::{build_and_verify, local_folding_holds, Context, JvPolynomial, SbdwError, Triangulation};
use crate::geometry::{certify_regular, find_stability, LiftViolation, RegularityCertificate, StabilityCertificate};
use crate::numfield::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularSection {
    pub found_gamma: bool,
    pub attempt: Option<usize>,
    pub y: Vec<String>,
    pub gamma: Vec<String>,
    pub epsilon: Option<String>,
    pub halvings: Option<usize>,
    pub local_folding: bool,
    pub triangulation_certified: bool,
    pub violation: Option<String>,
    /// Set when the search is not applicable, for example outside simply-laced types.
    pub skipped: Option<String>,
}

impl RegularSection {
    pub fn passed(&self) -> bool {
        self.found_gamma
            && self.epsilon.is_some()
            && self.local_folding
            && self.triangulation_certified
    }

    fn skipped(reason: String) -> Self {
        RegularSection {
            found_gamma: false,
            attempt: None,
            y: vec![],
            gamma: vec![],
            epsilon: None,
            halvings: None,
            local_folding: false,
            triangulation_certified: false,
            violation: None,
            skipped: Some(reason),
        }
    }
}

/// Outcome of the full regularity run.
#[derive(Clone, Debug)]
pub struct RegularOutcome {
    pub stability: Option<StabilityCertificate>,
    pub triangulation: Option<Triangulation>,
    pub certificate: Option<Result<RegularityCertificate, LiftViolation>>,
    pub section: RegularSection,
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

/// Finds `(y, gamma)`, rebuilds the triangulation at `y`, then runs the
/// epsilon schedule and the local folding check.
pub fn certify_regularity(
    ctx: &Context,
    attempts: usize,
    seed: u64,
) -> Result<RegularOutcome, SbdwError> {
    let w = ctx.w;
    let stability = match find_stability(w, &ctx.heap, attempts, seed) {
        Ok(s) => s,
        Err(e) => {
            return Ok(RegularOutcome {
                stability: None,
                triangulation: None,
                certificate: None,
                section: RegularSection::skipped(e.to_string()),
            })
        }
    };
    let Some(st) = stability else {
        let mut section = RegularSection::skipped(String::new());
        section.skipped = None;
        section.violation = Some(format!("no stability function in {attempts} attempts"));
        return Ok(RegularOutcome {
            stability: None,
            triangulation: None,
            certificate: None,
            section,
        });
    };
    let tri = build_and_verify(ctx, &st.y)?;
    let cells = tri.cell_elements();
    let cert = certify_regular(w, &cells, &st.y, &st.gamma)?;
    let mut section = RegularSection {
        found_gamma: true,
        attempt: Some(st.attempt),
        y: strings(&st.y),
        gamma: strings(&st.gamma),
        epsilon: None,
        halvings: None,
        local_folding: false,
        triangulation_certified: tri.certificates.passed(),
        violation: None,
        skipped: None,
    };
    match &cert {
        Ok(c) => {
            section.epsilon = Some(c.epsilon.to_string());
            section.halvings = Some(c.halvings);
            section.local_folding = local_folding_holds(w, &tri, &c.hyperplanes, &st.gamma, &c.epsilon);
        }
        Err(v) => {
            section.violation = Some(format!(
                "vertex {} is not above cell {} at epsilon {}",
                w.word_string(v.vertex),
                v.cell,
                v.epsilon
            ));
        }
    }
    Ok(RegularOutcome {
        stability: Some(st),
        triangulation: Some(tri),
        certificate: Some(cert),
        section,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateSection {
    pub nondegenerate: bool,
    pub facet_matched: bool,
    pub volume_equal: bool,
    pub cell_volume: String,
    pub oracle_volume: String,
    pub interior_facets: usize,
    pub boundary_facets: usize,
    pub failures: Vec<String>,
    pub regular: Option<RegularSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JvSection {
    pub lhs_coeffs: Vec<u64>,
    pub rhs_coeffs: Vec<String>,
    pub equal: bool,
}

impl From<&JvPolynomial> for JvSection {
    fn from(p: &JvPolynomial) -> Self {
        JvSection {
            lhs_coeffs: p.lhs.clone(),
            rhs_coeffs: p.rhs.iter().map(|x| x.to_string()).collect(),
            equal: p.equal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub group: String,
    pub coxeter_element_word: String,
    pub base_point: Vec<String>,
    pub cell_count: usize,
    pub certificates: CertificateSection,
    pub theorems: Option<TheoremReport>,
    pub conjectures: Option<ConjectureReport>,
    pub jv: Option<JvSection>,
}

impl Report {
    pub fn new(ctx: &Context, tri: &Triangulation) -> Self {
        let c = &tri.certificates;
        Report {
            group: ctx.w.label().to_string(),
            coxeter_element_word: ctx.c.word_string(),
            base_point: strings(&tri.base_point),
            cell_count: tri.cells.len(),
            certificates: CertificateSection {
                nondegenerate: c.nondegenerate,
                facet_matched: c.facet_matched,
                volume_equal: c.volume_equal,
                cell_volume: c.cell_volume.clone(),
                oracle_volume: c.oracle_volume.clone(),
                interior_facets: tri.interior.len(),
                boundary_facets: tri.boundary.len(),
                failures: c.failures.clone(),
                regular: None,
            },
            theorems: None,
            conjectures: None,
            jv: None,
        }
    }

    /// Whether every certificate, theorem check and identity that was run
    /// passed. Conjecture scans never count.
    pub fn passed(&self) -> bool {
        let c = &self.certificates;
        c.nondegenerate
            && c.facet_matched
            && c.volume_equal
            && c.regular.as_ref().is_none_or(|r| r.skipped.is_some() || r.passed())
            && self.theorems.as_ref().is_none_or(TheoremReport::passed)
            && self.jv.as_ref().is_none_or(|j| j.equal)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
