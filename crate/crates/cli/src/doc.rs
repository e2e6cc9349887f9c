//! JSON documents. Rationals are `"p/q"` strings; field order is fixed by
//! declaration order so output is byte-stable.

use masslin::{HPolytope, IntVector, Rational};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetDoc {
    pub normal: Vec<i64>,
    pub kappa: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDocument {
    #[serde(default)]
    pub name: String,
    pub dim: usize,
    pub facets: Vec<FacetDoc>,
}

impl PolytopeDocument {
    pub fn from_polytope(p: &HPolytope) -> Result<Self, CliError> {
        let facets = (0..p.num_facets())
            .map(|i| {
                let normal = p
                    .conormal(i)
                    .iter()
                    .map(|x| i64::try_from(x).map_err(|_| CliError::domain("overflow", format!("conormal entry {x}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(FacetDoc { normal, kappa: p.kappa()[i].clone(), label: Some(p.label(i).to_string()) })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(PolytopeDocument { name: p.name().unwrap_or_default().to_string(), dim: p.dim(), facets })
    }

    /// Builds and validates the polytope; it must be smooth.
    pub fn to_polytope(&self) -> Result<HPolytope, CliError> {
        if let Some((i, f)) = self.facets.iter().enumerate().find(|(_, f)| f.normal.len() != self.dim) {
            return Err(CliError::domain(
                "dimension_mismatch",
                format!("facet {i} has {} entries, expected {}", f.normal.len(), self.dim),
            ));
        }
        let conormals: Vec<IntVector> =
            self.facets.iter().map(|f| f.normal.iter().map(|&x| x.into()).collect()).collect();
        let kappa = self.facets.iter().map(|f| f.kappa.clone()).collect();
        let labels: Vec<String> = self
            .facets
            .iter()
            .enumerate()
            .map(|(i, f)| f.label.clone().unwrap_or_else(|| format!("F{}", i + 1)))
            .collect();
        let mut p = HPolytope::new(conormals, kappa)?.with_labels(labels)?;
        if !self.name.is_empty() {
            p = p.with_name(self.name.clone());
        }
        p.check_smooth()?;
        Ok(p)
    }
}

/// Outcome of `check`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub command: String,
    pub polytope: PolytopeDocument,
    pub h: Vec<Rational>,
    pub prefilter: PrefilterDoc,
    pub mass_linear: bool,
    pub gamma: Option<Vec<Rational>>,
    pub symmetric: Vec<String>,
    pub asymmetric: Vec<String>,
    pub equivalence_classes: Vec<Vec<String>>,
    /// Absent unless `H` is mass linear.
    pub essential: Option<bool>,
    pub beta: Option<Vec<Rational>>,
    pub barycenter_values: Vec<Rational>,
    pub fully_mass_linear: bool,
    pub generating_vector: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefilterDoc {
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub facet: String,
    pub position: usize,
    pub face: Vec<String>,
    pub eps: Rational,
    pub kind: String,
    pub essential_before: bool,
    pub essential_after: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub family: String,
    pub fiber: Vec<String>,
    pub base: Vec<String>,
}

/// Outcome of `classify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub command: String,
    pub polytope: String,
    pub h: Vec<Rational>,
    pub tag: String,
    pub alternatives: Vec<String>,
    pub note: Option<String>,
    pub terminal_gamma: Vec<Rational>,
    pub terminal_essential: bool,
    pub certificate: Option<CertificateDoc>,
    pub terminal: PolytopeDocument,
    pub steps: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<StepDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replay_exact: Option<bool>,
}

/// Outcome of `blowdown`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowdownReport {
    pub command: String,
    pub facet: String,
    pub face: Vec<String>,
    pub eps: Rational,
    pub candidates: Vec<Vec<String>>,
    pub polytope: PolytopeDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarycenterDoc {
    pub k: usize,
    pub point: Vec<Rational>,
    pub value: Rational,
}

/// Outcome of `barycenters`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarycenterReport {
    pub command: String,
    pub polytope: String,
    pub h: Vec<Rational>,
    pub barycenters: Vec<BarycenterDoc>,
    pub fully_mass_linear: bool,
    pub mass_linear_by_barycenters: bool,
    pub generated_by_barycenters: bool,
}

/// Outcome of `mlspace`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlSpaceReport {
    pub command: String,
    pub family: String,
    pub facets: Vec<String>,
    pub mass_linear: Vec<Vec<Rational>>,
    pub inessential: Vec<Vec<Rational>>,
    pub has_essential: bool,
}

/// One entry of a batch run over a directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<CheckReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub kind: String,
    pub message: String,
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}
