//! Realizing a network code as osculating spaces of a rational curve.
//!
//! Every member `U_s` is given a distinct rational point `t_s` of `P^1` and a
//! block size `eta_s`. The degree-`d` rational normal curve `w(t)` has, at each
//! `t_s`, an osculating block spanned by its first `eta_s` Hasse rows; with
//! `d + 1 >= sum(eta_s)` these blocks are jointly independent (a confluent
//! Vandermonde system). A single linear map `M: F_q^{d+1} -> F_q^n` then sends
//! the `j`-th Hasse row at `t_s` to the `j`-th designated basis vector of the
//! target space, and `f(t) = M w(t)` is the realizing curve.
//!
//! The designated basis starts with a representative of the marked point
//! `Q_s`, continues through `U_s`, and ends with extension vectors. This pins
//! `f(t_s) = Q_s` and the whole osculating flag at once.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{
    all_points, binomial_mod, order_sequence, osculating_space, unramified_at, CurveError, P1Point, PolyCurve,
};
use crate::field::Field;
use crate::netcode::{assign_points, NetcodeError, NetworkCode};
use crate::subspace::{unit_vector, MatrixFq, ProjPoint, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Match `U_s` itself (points are widened to a line for unramifiedness).
    #[default]
    Plain,
    /// Match a one-larger space `U_s + <v>`, forcing ordinary osculation.
    Ordinary,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Plain => "plain",
            Mode::Ordinary => "ordinary",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Mode::Plain),
            "ordinary" => Ok(Mode::Ordinary),
            other => Err(format!("unknown mode `{other}`; expected `plain` or `ordinary`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error(transparent)]
    Netcode(#[from] NetcodeError),
    #[error("ambient dimension {0} is below 3")]
    AmbientTooSmall(usize),
    #[error("member `{0}` has no marked point")]
    NotFullyMarked(String),
    #[error("{members} members exceed the {max} rational points of P^1")]
    TooManyMembers { members: usize, max: usize },
    #[error("member `{label}` has dimension {dim}; ordinary mode allows at most {max}")]
    OrdinaryModeDimension { label: String, dim: usize, max: usize },
    #[error("{got} explicit points given for {expected} members")]
    PointCountMismatch { expected: usize, got: usize },
    #[error("explicit point {0} is used twice")]
    DuplicateExplicitPoints(P1Point),
    #[error("explicit point {0} is not in the field")]
    PointOutsideField(P1Point),
    #[error("degree {degree} is too small; blocks need at least {required}")]
    DegreeTooSmall { degree: usize, required: usize },
    #[error("stacked osculating blocks have rank {rank}, expected {expected}")]
    RankDeficientBlocks { rank: usize, expected: usize },
    #[error("constructed curve fails verification")]
    VerificationFailed(Box<VerificationReport>),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlanOptions {
    pub mode: Mode,
    /// Points of `P^1` for the members, in member order.
    pub points: Option<Vec<P1Point>>,
    /// Degree of the rational normal curve; defaults to the minimum `eta - 1`.
    pub degree: Option<usize>,
}

impl PlanOptions {
    pub fn with_mode(mode: Mode) -> Self {
        PlanOptions { mode, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlannedMember {
    pub point: P1Point,
    /// Vector dimension of `U_s`.
    pub dim: usize,
    /// Block size: `max(dim, 2)` in plain mode, `dim + 1` in ordinary mode.
    pub eta: usize,
    /// The space the osculating block is sent onto; contains `U_s`.
    pub target: Subspace,
    /// Ordered basis of `target`: `Q_s`, then the rest of `U_s`, then extensions.
    pub designated_basis: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationPlan {
    pub code: NetworkCode,
    pub mode: Mode,
    pub degree: usize,
    pub members: Vec<PlannedMember>,
}

impl RealizationPlan {
    pub fn field(&self) -> &Field {
        self.code.field()
    }

    pub fn eta(&self) -> usize {
        self.members.iter().map(|m| m.eta).sum()
    }
}

/// Checks that do not depend on the marked points, so they can run before
/// point selection.
fn check_shape(code: &NetworkCode, opts: &PlanOptions) -> Result<(), RealizeError> {
    let n = code.ambient();
    if n < 3 {
        return Err(RealizeError::AmbientTooSmall(n));
    }
    let max = code.field().order() as usize + 1;
    if code.len() > max {
        return Err(RealizeError::TooManyMembers { members: code.len(), max });
    }
    if opts.mode == Mode::Ordinary {
        if let Some(m) = code.members().iter().find(|m| m.subspace.dim() > n - 2) {
            return Err(RealizeError::OrdinaryModeDimension {
                label: m.label.clone(),
                dim: m.subspace.dim(),
                max: n - 2,
            });
        }
    }
    if let Some(points) = &opts.points {
        if points.len() != code.len() {
            return Err(RealizeError::PointCountMismatch { expected: code.len(), got: points.len() });
        }
        let mut seen = HashSet::new();
        for p in points {
            if !p.in_field(code.field()) {
                return Err(RealizeError::PointOutsideField(*p));
            }
            if !seen.insert(*p) {
                return Err(RealizeError::DuplicateExplicitPoints(*p));
            }
        }
    }
    Ok(())
}

/// Appends the first standard basis vector outside the current span.
fn extend_once(field: &Field, n: usize, basis: &mut Vec<Vec<u32>>) {
    let span = Subspace::span(field, n, basis).expect("well formed");
    let next = (0..n)
        .map(|i| unit_vector(n, i))
        .find(|v| !span.contains(v).expect("ambient matches"))
        .expect("target dimension stays below n");
    basis.push(next);
}

fn designated_basis(subspace: &Subspace, marked: &ProjPoint, eta: usize) -> Vec<Vec<u32>> {
    let field = subspace.field();
    let n = subspace.ambient();
    let mut basis = vec![marked.coords().to_vec()];
    for row in subspace.basis().row_iter() {
        let span = Subspace::span(field, n, &basis).expect("well formed");
        if !span.contains(row).expect("ambient matches") {
            basis.push(row.to_vec());
        }
    }
    while basis.len() < eta {
        extend_once(field, n, &mut basis);
    }
    basis
}

/// Builds the deterministic plan for a fully marked code.
pub fn plan(code: &NetworkCode, opts: &PlanOptions) -> Result<RealizationPlan, RealizeError> {
    check_shape(code, opts)?;
    let mut seen: HashSet<&ProjPoint> = HashSet::new();
    for (i, m) in code.members().iter().enumerate() {
        let q = m.point.as_ref().ok_or_else(|| RealizeError::NotFullyMarked(m.label.clone()))?;
        if !seen.insert(q) {
            let other = code.members()[..i].iter().find(|o| o.point.as_ref() == Some(q)).expect("seen");
            return Err(NetcodeError::ConflictingUserPoints(other.label.clone(), m.label.clone()).into());
        }
    }
    let points = match &opts.points {
        Some(p) => p.clone(),
        None => all_points(code.field()).into_iter().take(code.len()).collect(),
    };
    let members: Vec<PlannedMember> = code
        .members()
        .iter()
        .zip(points)
        .map(|(m, point)| {
            let dim = m.subspace.dim();
            let eta = match opts.mode {
                Mode::Plain => dim.max(2),
                Mode::Ordinary => dim + 1,
            };
            let designated_basis = designated_basis(&m.subspace, m.point.as_ref().expect("marked"), eta);
            let target = Subspace::span(code.field(), code.ambient(), &designated_basis).expect("well formed");
            debug_assert_eq!(target.dim(), eta);
            PlannedMember { point, dim, eta, target, designated_basis }
        })
        .collect();
    let eta: usize = members.iter().map(|m| m.eta).sum();
    let degree = opts.degree.unwrap_or(eta - 1);
    if degree + 1 < eta {
        return Err(RealizeError::DegreeTooSmall { degree, required: eta - 1 });
    }
    Ok(RealizationPlan { code: code.clone(), mode: opts.mode, degree, members })
}

/// The first `count` Hasse rows of the degree-`d` rational normal curve at
/// `point`: row `k`, column `j` holds `C(j, k) a^(j-k)`. At infinity the rows
/// are the reversed unit vectors `e_d, e_{d-1}, ...`.
pub fn hasse_rows(field: &Field, d: usize, point: P1Point, count: usize) -> MatrixFq {
    let mut block = MatrixFq::zeros(field, count, d + 1);
    let p = field.characteristic() as u64;
    for k in 0..count.min(d + 1) {
        match point {
            P1Point::Affine(a) => {
                for j in k..=d {
                    let b = field.from_int(binomial_mod(j as u64, k as u64, p));
                    block.set(k, j, field.mul(b, field.pow(a, (j - k) as u64)));
                }
            }
            P1Point::Infinity => block.set(k, d - k, 1),
        }
    }
    block
}

/// All blocks of a plan stacked in member order.
pub fn stack_blocks(blocks: &[MatrixFq]) -> MatrixFq {
    blocks
        .iter()
        .skip(1)
        .fold(blocks[0].clone(), |acc, b| acc.vstack(b).expect("blocks share width"))
}

/// One `eta_s x (d + 1)` block per member, checked for joint independence.
pub fn osculating_blocks(plan: &RealizationPlan) -> Result<Vec<MatrixFq>, RealizeError> {
    let blocks: Vec<MatrixFq> =
        plan.members.iter().map(|m| hasse_rows(plan.field(), plan.degree, m.point, m.eta)).collect();
    let rank = stack_blocks(&blocks).rank();
    if rank != plan.eta() {
        return Err(RealizeError::RankDeficientBlocks { rank, expected: plan.eta() });
    }
    Ok(blocks)
}

/// The `n x (d + 1)` matrix of the linear map from the rational normal curve's
/// ambient space onto `F_q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionMap {
    pub matrix: MatrixFq,
}

impl ProjectionMap {
    /// Basis of the projection center `ker M`.
    pub fn center(&self) -> MatrixFq {
        self.matrix.kernel()
    }
}

/// Solves for `M` with `M b_{s,j} = v_{s,j}` on every Hasse row `b_{s,j}`;
/// the rows are completed to a basis by unit vectors in index order, and
/// those completion vectors are sent to zero.
pub fn build_projection(plan: &RealizationPlan, blocks: &[MatrixFq]) -> Result<ProjectionMap, RealizeError> {
    let field = plan.field();
    let n = plan.code.ambient();
    let width = plan.degree + 1;
    let stacked = stack_blocks(blocks);
    let rank = stacked.rank();
    if rank != stacked.rows() || rank != plan.eta() {
        return Err(RealizeError::RankDeficientBlocks { rank, expected: plan.eta() });
    }
    let mut rows = stacked.to_rows();
    let mut images: Vec<Vec<u32>> = plan.members.iter().flat_map(|m| m.designated_basis.iter().cloned()).collect();
    let mut span = Subspace::from_matrix(&stacked);
    for i in 0..width {
        if rows.len() == width {
            break;
        }
        let e = unit_vector(width, i);
        if !span.contains(&e).expect("width matches") {
            rows.push(e);
            images.push(vec![0; n]);
            span = Subspace::span(field, width, &rows).expect("well formed");
        }
    }
    let basis = MatrixFq::from_rows(field, width, &rows).expect("well formed");
    let targets = MatrixFq::from_rows(field, n, &images).expect("well formed");
    // basis * M^T = targets
    let mt = basis.solve(&targets).map_err(|_| RealizeError::RankDeficientBlocks { rank, expected: plan.eta() })?;
    Ok(ProjectionMap { matrix: mt.transpose() })
}

/// `f(t) = M (1, t, ..., t^d)`: coordinate `i` has coefficient row `i` of `M`.
pub fn curve_from_projection(field: &Field, degree: usize, projection: &ProjectionMap) -> Result<PolyCurve, CurveError> {
    PolyCurve::from_coefficients(field, degree, &projection.matrix.to_rows())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub plan: RealizationPlan,
    pub projection: ProjectionMap,
    pub curve: PolyCurve,
}

/// Point selection, planning and construction, without the final check.
/// Missing marked points are chosen by [`assign_points`].
pub fn construct(code: &NetworkCode, opts: &PlanOptions) -> Result<Realization, RealizeError> {
    check_shape(code, opts)?;
    let code = assign_points(code)?;
    let plan = plan(&code, opts)?;
    let blocks = osculating_blocks(&plan)?;
    let projection = build_projection(&plan, &blocks)?;
    let curve = curve_from_projection(plan.field(), plan.degree, &projection)
        .map_err(|_| RealizeError::RankDeficientBlocks { rank: 0, expected: plan.eta() })?;
    Ok(Realization { plan, projection, curve })
}

/// [`construct`] followed by [`verify_realization`]; a failed check is an error.
pub fn realize(code: &NetworkCode, opts: &PlanOptions) -> Result<Realization, RealizeError> {
    let realization = construct(code, opts)?;
    let report = verify_realization(&realization);
    if !report.all_pass() {
        return Err(RealizeError::VerificationFailed(Box::new(report)));
    }
    Ok(realization)
}

/// Per-member outcome of [`verify_realization`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberCheck {
    pub label: String,
    pub point: P1Point,
    /// `f(t_s)` is the marked point `Q_s`.
    pub point_ok: bool,
    /// The differential is invertible at `t_s`.
    pub unramified_ok: bool,
    /// The osculating space of projective dimension `dim U_s - 1` is `U_s`.
    pub osculating_ok: bool,
    /// Ordinary mode only: `e = x + 1` at `x = dim U_s - 1`.
    pub ordinary_ok: Option<bool>,
    pub note: Option<String>,
}

impl MemberCheck {
    pub fn passed(&self) -> bool {
        self.point_ok && self.unramified_ok && self.osculating_ok && self.ordinary_ok != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub members: Vec<MemberCheck>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.members.iter().all(MemberCheck::passed)
    }
}

/// Re-derives every claimed property from the output polynomials alone,
/// through the `curve` module's local expansions. The projection matrix and
/// the plan's targets are not consulted.
pub fn verify_realization(r: &Realization) -> VerificationReport {
    let curve = &r.curve;
    let members = r
        .plan
        .code
        .members()
        .iter()
        .zip(&r.plan.members)
        .map(|(member, planned)| {
            let point = planned.point;
            let dim = member.subspace.dim();
            let mut check = MemberCheck {
                label: member.label.clone(),
                point,
                point_ok: false,
                unramified_ok: false,
                osculating_ok: false,
                ordinary_ok: (r.plan.mode == Mode::Ordinary).then_some(false),
                note: None,
            };
            if curve.ambient() != r.plan.code.ambient() {
                check.note = Some("curve ambient dimension differs from the code".into());
                return check;
            }
            let value = curve.eval(point);
            let Ok(image) = ProjPoint::new(curve.field(), &value) else {
                check.note = Some(CurveError::BasePoint(point).to_string());
                return check;
            };
            check.point_ok = Some(&image) == member.point.as_ref();
            check.unramified_ok = unramified_at(curve, point).unwrap_or(false);
            match osculating_space(curve, point, dim - 1) {
                Ok(space) => check.osculating_ok = space == member.subspace,
                Err(e) => check.note = Some(e.to_string()),
            }
            if r.plan.mode == Mode::Ordinary {
                match order_sequence(curve, point, dim) {
                    Ok(od) => check.ordinary_ok = Some(od.e_at(dim - 1) == Some(dim)),
                    Err(e) => check.note = Some(e.to_string()),
                }
            }
            check
        })
        .collect();
    VerificationReport { members }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcode::Member;

    fn gf(q: u32) -> Field {
        Field::of_order(q).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<u32> {
        unit_vector(n, i)
    }

    fn marked(f: &Field, n: usize, label: &str, rows: &[Vec<u32>], q: Option<&[u32]>) -> Member {
        Member {
            label: label.into(),
            subspace: Subspace::span(f, n, rows).unwrap(),
            point: q.map(|c| ProjPoint::new(f, c).unwrap()),
        }
    }

    #[test]
    fn plan_single_plane() {
        let f = gf(5);
        let code = NetworkCode::new(f.clone(), 3, vec![marked(&f, 3, "u", &[e(3, 0), e(3, 1)], Some(&[1, 0, 0]))])
            .unwrap();
        let p = plan(&code, &PlanOptions::default()).unwrap();
        assert_eq!((p.members[0].dim, p.members[0].eta, p.degree), (2, 2, 1));
        assert_eq!(p.members[0].target, code.members()[0].subspace);
        assert_eq!(p.members[0].point, P1Point::Affine(0));
    }

    #[test]
    fn plan_widens_points_to_lines() {
        let f = gf(5);
        let code = NetworkCode::new(f.clone(), 3, vec![marked(&f, 3, "p", &[e(3, 0)], Some(&[1, 0, 0]))]).unwrap();
        let p = plan(&code, &PlanOptions::default()).unwrap();
        assert_eq!((p.members[0].eta, p.degree), (2, 1));
        assert_eq!(p.members[0].designated_basis, vec![e(3, 0), e(3, 1)]);
    }

    #[test]
    fn plan_ordinary_extensions() {
        let f = gf(3);
        let code = NetworkCode::new(
            f.clone(),
            4,
            vec![
                marked(&f, 4, "a", &[e(4, 0)], Some(&[1, 0, 0, 0])),
                marked(&f, 4, "b", &[e(4, 1), e(4, 2)], Some(&[0, 1, 0, 0])),
            ],
        )
        .unwrap();
        let p = plan(&code, &PlanOptions::with_mode(Mode::Ordinary)).unwrap();
        assert_eq!(p.members.iter().map(|m| m.eta).collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(p.degree, 4);
        assert_eq!(p.members[0].designated_basis, vec![e(4, 0), e(4, 1)]);
        assert_eq!(p.members[1].designated_basis, vec![e(4, 1), e(4, 2), e(4, 0)]);
        for (m, pm) in code.members().iter().zip(&p.members) {
            assert!(m.subspace.is_subspace_of(&pm.target).unwrap());
            assert_eq!(pm.target.dim(), pm.eta);
        }
    }

    #[test]
    fn designated_basis_starts_at_marked_point() {
        let f = gf(3);
        let u = Subspace::span(&f, 4, &[[1, 0, 2, 0], [0, 1, 1, 0]]).unwrap();
        let q = ProjPoint::new(&f, &[1, 1, 0, 0]).unwrap();
        let b = designated_basis(&u, &q, 3);
        assert_eq!(b[0], vec![1, 1, 0, 0]);
        assert_eq!(b[1], vec![1, 0, 2, 0]);
        assert_eq!(Subspace::span(&f, 4, &b[..2]).unwrap(), u);
        assert_eq!(b[2], e(4, 0));
    }

    #[test]
    fn plan_preconditions() {
        let f = gf(2);
        let pts = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]];
        let members: Vec<Member> = pts
            .iter()
            .enumerate()
            .map(|(i, c)| marked(&f, 3, &format!("m{i}"), &[c.to_vec()], Some(c)))
            .collect();
        let code = NetworkCode::new(f.clone(), 3, members.clone()).unwrap();
        assert_eq!(
            plan(&code, &PlanOptions::default()),
            Err(RealizeError::TooManyMembers { members: 4, max: 3 })
        );
        let code3 = NetworkCode::new(f.clone(), 3, members[..3].to_vec()).unwrap();
        let mut opts = PlanOptions { points: Some(vec![P1Point::Affine(0), P1Point::Affine(0), P1Point::Infinity]), ..Default::default() };
        assert_eq!(plan(&code3, &opts), Err(RealizeError::DuplicateExplicitPoints(P1Point::Affine(0))));
        opts.points = Some(vec![P1Point::Affine(0)]);
        assert!(matches!(plan(&code3, &opts), Err(RealizeError::PointCountMismatch { .. })));
        opts.points = Some(vec![P1Point::Affine(0), P1Point::Affine(2), P1Point::Infinity]);
        assert_eq!(plan(&code3, &opts), Err(RealizeError::PointOutsideField(P1Point::Affine(2))));

        let big = NetworkCode::new(f.clone(), 3, vec![marked(&f, 3, "w", &[e(3, 0), e(3, 1)], None)]).unwrap();
        assert_eq!(
            plan(&big, &PlanOptions::with_mode(Mode::Ordinary)),
            Err(RealizeError::OrdinaryModeDimension { label: "w".into(), dim: 2, max: 1 })
        );
        assert_eq!(plan(&big, &PlanOptions::default()), Err(RealizeError::NotFullyMarked("w".into())));

        let opts = PlanOptions { degree: Some(1), ..Default::default() };
        assert_eq!(plan(&code3, &opts), Err(RealizeError::DegreeTooSmall { degree: 1, required: 5 }));
    }

    #[test]
    fn block_examples() {
        let f = gf(7);
        let b = hasse_rows(&f, 1, P1Point::Affine(3), 2);
        assert_eq!(b.to_rows(), vec![vec![1, 3], vec![0, 1]]);
        let b0 = hasse_rows(&f, 3, P1Point::Affine(0), 3);
        assert_eq!(b0.to_rows(), vec![e(4, 0), e(4, 1), e(4, 2)]);

        let f2 = gf(2);
        let blocks: Vec<MatrixFq> = [P1Point::Affine(0), P1Point::Affine(1), P1Point::Infinity]
            .into_iter()
            .map(|p| hasse_rows(&f2, 5, p, 2))
            .collect();
        assert_eq!(stack_blocks(&blocks).rank(), 6);
        // d = 3 over F_2 with two blocks of 2.
        let two: Vec<MatrixFq> =
            [P1Point::Affine(0), P1Point::Infinity].into_iter().map(|p| hasse_rows(&f2, 3, p, 2)).collect();
        assert_eq!(stack_blocks(&two).rank(), 4);
    }

    #[test]
    fn projection_single_line() {
        let f = gf(5);
        let code = NetworkCode::new(f.clone(), 3, vec![marked(&f, 3, "u", &[e(3, 0), e(3, 1)], Some(&[1, 0, 0]))])
            .unwrap();
        let p = plan(&code, &PlanOptions::default()).unwrap();
        let blocks = osculating_blocks(&p).unwrap();
        assert_eq!(blocks[0].to_rows(), vec![vec![1, 0], vec![0, 1]]);
        let m = build_projection(&p, &blocks).unwrap();
        assert_eq!(m.matrix.to_rows(), vec![vec![1, 0], vec![0, 1], vec![0, 0]]);
        let r = realize(&code, &PlanOptions::default()).unwrap();
        assert_eq!(r.curve.coefficient_rows(), vec![vec![1, 0], vec![0, 1], vec![0, 0]]);
        assert!(verify_realization(&r).all_pass());
    }

    #[test]
    fn larger_degree_uses_completion_vectors() {
        let f = gf(5);
        let code = NetworkCode::new(
            f.clone(),
            4,
            vec![
                marked(&f, 4, "a", &[e(4, 0), e(4, 1)], None),
                marked(&f, 4, "b", &[e(4, 2)], None),
            ],
        )
        .unwrap();
        let opts = PlanOptions { degree: Some(6), ..Default::default() };
        let r = realize(&code, &opts).unwrap();
        assert_eq!(r.plan.degree, 6);
        // Image is span{e0, e1, e2} (b's line is widened by e0), so
        // ker M has dimension 7 - 3 and contains the 3 completion directions.
        assert_eq!(r.projection.center().rows(), 4);
        assert!(verify_realization(&r).all_pass());
    }

    #[test]
    fn tampering_is_detected() {
        let f = gf(3);
        let code = NetworkCode::new(
            f.clone(),
            4,
            vec![
                marked(&f, 4, "a", &[e(4, 0), e(4, 1)], None),
                marked(&f, 4, "b", &[e(4, 2), e(4, 3)], None),
            ],
        )
        .unwrap();
        let mut r = realize(&code, &PlanOptions::default()).unwrap();
        assert!(r.plan.degree >= 2);
        let d = r.plan.degree;
        for i in 0..4 {
            r.projection.matrix.set(i, d, 0);
        }
        r.curve = curve_from_projection(&f, d, &r.projection).unwrap();
        assert!(!verify_realization(&r).all_pass());
    }

    #[test]
    fn mode_strings() {
        assert_eq!("plain".parse::<Mode>().unwrap(), Mode::Plain);
        assert_eq!("ordinary".parse::<Mode>().unwrap(), Mode::Ordinary);
        assert!("fancy".parse::<Mode>().is_err());
        assert_eq!(Mode::Ordinary.to_string(), "ordinary");
    }
}
