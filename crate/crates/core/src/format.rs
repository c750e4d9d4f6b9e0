//! JSON documents read and written by the command-line tool.
//!
//! All field elements are written as their canonical integer encodings. The
//! canonical text of a document is `serde_json` pretty printing with numeric
//! arrays kept on one line, followed by a single newline;
//! [`to_canonical_string`] produces it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{
    all_points, local_expansion, order_sequence, osculating_space, unramified_at, CurveError, P1Point, PolyCurve,
};
use crate::field::{Field, FieldError, FieldSpec};
use crate::netcode::{distance_matrix, min_distance, Member, NetcodeError, NetworkCode};
use crate::realize::{
    Mode, PlanOptions, PlannedMember, ProjectionMap, Realization, RealizationPlan, VerificationReport,
};
use crate::subspace::{LinalgError, MatrixFq, ProjPoint, Subspace};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid field: {0}")]
    Field(#[from] FieldError),
    #[error("member `{label}`: {source}")]
    Member { label: String, source: LinalgError },
    #[error("invalid code: {0}")]
    Code(#[from] NetcodeError),
    #[error("invalid curve: {0}")]
    Curve(#[from] CurveError),
    #[error("declared n = {declared} but found {found}")]
    AmbientMismatch { declared: usize, found: usize },
    #[error("{0}")]
    Invalid(String),
}

/// Pretty-printed JSON with every array of plain numbers kept on one line,
/// followed by a newline.
pub fn to_canonical_string<T: Serialize>(doc: &T) -> String {
    let pretty = serde_json::to_string_pretty(doc).expect("documents serialize");
    let mut out = collapse_number_arrays(&pretty);
    out.push('\n');
    out
}

fn collapse_number_arrays(json: &str) -> String {
    let bytes = json.as_bytes();
    let mut out = String::with_capacity(json.len());
    let mut i = 0;
    let mut in_string = false;
    while i < bytes.len() {
        let c = bytes[i];
        if in_string {
            out.push(c as char);
            if c == b'\\' {
                out.push(bytes[i + 1] as char);
                i += 1;
            } else if c == b'"' {
                in_string = false;
            }
            i += 1;
            continue;
        }
        match c {
            b'"' => {
                in_string = true;
                out.push('"');
                i += 1;
            }
            b'[' => {
                let close = bytes[i + 1..].iter().position(|&b| b == b']').map(|p| i + 1 + p);
                let inner = close.map(|end| &json[i + 1..end]);
                match inner {
                    Some(inner)
                        if inner.contains(|ch: char| ch.is_ascii_digit())
                            && inner.chars().all(|ch| ch.is_ascii_digit() || ch == ',' || ch == '-' || ch.is_whitespace()) =>
                    {
                        let items: Vec<&str> = inner.split(',').map(str::trim).collect();
                        out.push('[');
                        out.push_str(&items.join(", "));
                        out.push(']');
                        i = close.unwrap() + 1;
                    }
                    _ => {
                        out.push('[');
                        i += 1;
                    }
                }
            }
            _ => {
                out.push(c as char);
                i += 1;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberSpec {
    pub label: String,
    pub basis: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default)]
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Input document describing a network code and realization options.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpecFile {
    pub field: FieldSpec,
    pub n: usize,
    pub members: Vec<MemberSpec>,
    #[serde(default)]
    pub options: OptionsSpec,
}

pub fn parse_points(tokens: &[String]) -> Result<Vec<P1Point>, FormatError> {
    tokens.iter().map(|t| t.parse::<P1Point>().map_err(FormatError::from)).collect()
}

impl CodeSpecFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_code(code: &NetworkCode, options: OptionsSpec) -> Self {
        CodeSpecFile {
            field: code.field().spec().clone(),
            n: code.ambient(),
            members: code
                .members()
                .iter()
                .map(|m| MemberSpec {
                    label: m.label.clone(),
                    basis: m.subspace.basis().to_rows(),
                    point: m.point.as_ref().map(|p| p.coords().to_vec()),
                })
                .collect(),
            options,
        }
    }

    pub fn to_code(&self) -> Result<NetworkCode, FormatError> {
        let field = Field::new(&self.field)?;
        let members = self
            .members
            .iter()
            .map(|m| {
                let wrap = |source| FormatError::Member { label: m.label.clone(), source };
                let subspace = Subspace::span(&field, self.n, &m.basis).map_err(wrap)?;
                let point = match &m.point {
                    None => None,
                    Some(c) if c.len() != self.n => {
                        return Err(wrap(LinalgError::RowLength { expected: self.n, got: c.len() }))
                    }
                    Some(c) => Some(ProjPoint::new(&field, c).map_err(wrap)?),
                };
                Ok(Member { label: m.label.clone(), subspace, point })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NetworkCode::new(field, self.n, members)?)
    }

    pub fn plan_options(&self) -> Result<PlanOptions, FormatError> {
        Ok(PlanOptions {
            mode: self.options.mode,
            points: self.options.points.as_deref().map(parse_points).transpose()?,
            degree: None,
        })
    }
}

/// A parametrized curve: `coords[i]` lists the coefficients of `f_i`, low
/// degree first, padded to `degree + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub field: FieldSpec,
    pub n: usize,
    pub degree: usize,
    pub coords: Vec<Vec<u32>>,
}

impl CurveFile {
    pub fn from_curve(curve: &PolyCurve) -> Self {
        CurveFile {
            field: curve.field().spec().clone(),
            n: curve.ambient(),
            degree: curve.degree_bound(),
            coords: curve.coefficient_rows(),
        }
    }

    pub fn to_curve(&self) -> Result<PolyCurve, FormatError> {
        let field = Field::new(&self.field)?;
        if self.coords.len() != self.n {
            return Err(FormatError::AmbientMismatch { declared: self.n, found: self.coords.len() });
        }
        Ok(PolyCurve::from_coefficients(&field, self.degree, &self.coords)?)
    }

    /// Accepts either a bare curve document or a realization document, whose
    /// `curve` entry is used.
    pub fn parse_any(text: &str) -> Result<Self, FormatError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let inner = match value.get("curve") {
            Some(c) if value.get("projection").is_some() => c.clone(),
            _ => value,
        };
        Ok(serde_json::from_value(inner)?)
    }
}

fn verdict(ok: bool) -> String {
    if ok { "PASS" } else { "FAIL" }.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRow {
    pub label: String,
    pub point: String,
    pub image_is_marked_point: String,
    pub unramified: String,
    pub osculating_space_matches: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordinary_osculation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlannedMemberFile {
    pub label: String,
    pub point: String,
    pub dim: usize,
    pub eta: usize,
    pub subspace: Vec<Vec<u32>>,
    pub marked_point: Vec<u32>,
    pub target_basis: Vec<Vec<u32>>,
}

/// Output document of `realize`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationFile {
    pub field: FieldSpec,
    pub n: usize,
    pub mode: Mode,
    pub degree: usize,
    pub eta: usize,
    pub members: Vec<PlannedMemberFile>,
    pub projection: Vec<Vec<u32>>,
    pub curve: CurveFile,
    pub verification: Vec<CheckRow>,
    pub all_pass: bool,
}

impl RealizationFile {
    pub fn new(r: &Realization, report: &VerificationReport) -> Self {
        let plan = &r.plan;
        let members = plan
            .code
            .members()
            .iter()
            .zip(&plan.members)
            .map(|(m, pm)| PlannedMemberFile {
                label: m.label.clone(),
                point: pm.point.to_string(),
                dim: pm.dim,
                eta: pm.eta,
                subspace: m.subspace.basis().to_rows(),
                marked_point: m.point.as_ref().map(|p| p.coords().to_vec()).unwrap_or_default(),
                target_basis: pm.designated_basis.clone(),
            })
            .collect();
        let verification = report
            .members
            .iter()
            .map(|c| CheckRow {
                label: c.label.clone(),
                point: c.point.to_string(),
                image_is_marked_point: verdict(c.point_ok),
                unramified: verdict(c.unramified_ok),
                osculating_space_matches: verdict(c.osculating_ok),
                ordinary_osculation: c.ordinary_ok.map(verdict),
                note: c.note.clone(),
            })
            .collect();
        RealizationFile {
            field: plan.field().spec().clone(),
            n: plan.code.ambient(),
            mode: plan.mode,
            degree: plan.degree,
            eta: plan.eta(),
            members,
            projection: r.projection.matrix.to_rows(),
            curve: CurveFile::from_curve(&r.curve),
            verification,
            all_pass: report.all_pass(),
        }
    }

    /// Rebuilds the in-memory realization, e.g. to re-verify an edited file.
    pub fn to_realization(&self) -> Result<Realization, FormatError> {
        let field = Field::new(&self.field)?;
        let n = self.n;
        let mut code_members = Vec::new();
        let mut planned = Vec::new();
        for m in &self.members {
            let wrap = |source| FormatError::Member { label: m.label.clone(), source };
            let subspace = Subspace::span(&field, n, &m.subspace).map_err(wrap)?;
            let marked = ProjPoint::new(&field, &m.marked_point).map_err(wrap)?;
            let target = Subspace::span(&field, n, &m.target_basis).map_err(wrap)?;
            code_members.push(Member { label: m.label.clone(), subspace, point: Some(marked) });
            planned.push(PlannedMember {
                point: m.point.parse()?,
                dim: m.dim,
                eta: m.eta,
                target,
                designated_basis: m.target_basis.clone(),
            });
        }
        let code = NetworkCode::new(field.clone(), n, code_members)?;
        let matrix = MatrixFq::from_rows(&field, self.degree + 1, &self.projection)
            .map_err(|e| FormatError::Invalid(format!("projection: {e}")))?;
        Ok(Realization {
            plan: RealizationPlan { code, mode: self.mode, degree: self.degree, members: planned },
            projection: ProjectionMap { matrix },
            curve: self.curve.to_curve()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MinDistance {
    Value(usize),
    Undefined(String),
}

/// Output document of `distances`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceTable {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<usize>>,
    pub min_distance: MinDistance,
}

impl DistanceTable {
    pub fn new(code: &NetworkCode) -> Self {
        let labels: Vec<String> = code.members().iter().map(|m| m.label.clone()).collect();
        let min_distance = match min_distance(code) {
            Ok(d) => MinDistance::Value(d),
            Err(_) => MinDistance::Undefined("n/a".into()),
        };
        let matrix = if labels.len() < 2 { Vec::new() } else { distance_matrix(code) };
        DistanceTable { labels, matrix, min_distance }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OsculatingEntry {
    pub x: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointReport {
    pub point: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expansion: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ramification: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ordinary_at: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub osculating: Vec<OsculatingEntry>,
}

/// Output document of `inspect`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InspectReport {
    pub field: FieldSpec,
    pub n: usize,
    pub degree: usize,
    pub points: Vec<PointReport>,
}

/// Local data of `curve` at each of `points` (all of `P^1(F_q)` when `None`).
/// `xs` selects osculating dimensions; by default the whole flag is listed.
/// A base point is reported for that point only.
pub fn inspect_curve(curve: &PolyCurve, points: Option<&[P1Point]>, xs: Option<&[usize]>) -> InspectReport {
    let points = points.map(<[P1Point]>::to_vec).unwrap_or_else(|| all_points(curve.field()));
    let reports = points
        .into_iter()
        .map(|pt| {
            let exp = match local_expansion(curve, pt) {
                Ok(e) => e,
                Err(e) => {
                    return PointReport {
                        point: pt.to_string(),
                        status: match e {
                            CurveError::BasePoint(_) => "base point: all coordinates vanish".into(),
                            other => other.to_string(),
                        },
                        expansion: None,
                        orders: None,
                        ramification: None,
                        ordinary_at: Vec::new(),
                        osculating: Vec::new(),
                    }
                }
            };
            let od = order_sequence(curve, pt, 0).expect("not a base point");
            let unramified = unramified_at(curve, pt).expect("not a base point");
            let dims: Vec<usize> = match xs {
                Some(xs) => xs.to_vec(),
                None => (0..od.orders.len()).collect(),
            };
            let osculating = dims
                .into_iter()
                .map(|x| match osculating_space(curve, pt, x) {
                    Ok(s) => OsculatingEntry { x, basis: Some(s.basis().to_rows()), error: None },
                    Err(e) => OsculatingEntry { x, basis: None, error: Some(e.to_string()) },
                })
                .collect();
            let ordinary_at = (0..od.orders.len()).filter(|&x| od.is_ordinary(x) == Some(true)).collect();
            PointReport {
                point: pt.to_string(),
                status: "ok".into(),
                expansion: Some(exp.coeff_vectors),
                orders: Some(od.orders),
                ramification: Some(if unramified { "unramified" } else { "ramified" }.into()),
                ordinary_at,
                osculating,
            }
        })
        .collect();
    InspectReport {
        field: curve.field().spec().clone(),
        n: curve.ambient(),
        degree: curve.degree_bound(),
        points: reports,
    }
}
