//! Network codes: labeled families of subspaces with optional marked points,
//! plus selection of pairwise distinct marked points by bipartite matching.

use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::field::Field;
use crate::subspace::{subspace_distance, LinalgError, ProjPoint, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetcodeError {
    #[error("a network code needs at least one member")]
    Empty,
    #[error("member `{0}` is the zero subspace")]
    ZeroMember(String),
    #[error("duplicate member label `{0}`")]
    DuplicateLabel(String),
    #[error("member `{label}` lives in F_q^{got}, expected F_q^{expected}")]
    AmbientMismatch { label: String, expected: usize, got: usize },
    #[error("member `{0}` uses a different field")]
    FieldMismatch(String),
    #[error("marked point of member `{0}` does not lie in its subspace")]
    PointNotInSubspace(String),
    #[error("Hall's condition fails for members {}", .0.join(", "))]
    HallViolation(Vec<String>),
    #[error("members `{0}` and `{1}` carry the same marked point")]
    ConflictingUserPoints(String, String),
    #[error("minimum distance needs at least two members")]
    TooFewMembers,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub label: String,
    pub subspace: Subspace,
    pub point: Option<ProjPoint>,
}

/// An ordered family of nonzero subspaces of `F_q^n`.
///
/// Repeated subspaces are allowed as long as labels differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkCode {
    field: Field,
    ambient: usize,
    members: Vec<Member>,
}

impl NetworkCode {
    pub fn new(field: Field, ambient: usize, members: Vec<Member>) -> Result<Self, NetcodeError> {
        if members.is_empty() {
            return Err(NetcodeError::Empty);
        }
        let mut labels = HashSet::new();
        for m in &members {
            if !labels.insert(m.label.as_str()) {
                return Err(NetcodeError::DuplicateLabel(m.label.clone()));
            }
            if *m.subspace.field() != field {
                return Err(NetcodeError::FieldMismatch(m.label.clone()));
            }
            if m.subspace.ambient() != ambient {
                return Err(NetcodeError::AmbientMismatch {
                    label: m.label.clone(),
                    expected: ambient,
                    got: m.subspace.ambient(),
                });
            }
            if m.subspace.dim() == 0 {
                return Err(NetcodeError::ZeroMember(m.label.clone()));
            }
            if let Some(p) = &m.point {
                if p.ambient() != ambient || !m.subspace.contains_point(p)? {
                    return Err(NetcodeError::PointNotInSubspace(m.label.clone()));
                }
            }
        }
        Ok(NetworkCode { field, ambient, members })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_fully_marked(&self) -> bool {
        self.members.iter().all(|m| m.point.is_some())
    }

    fn labels(&self, idx: impl IntoIterator<Item = usize>) -> Vec<String> {
        idx.into_iter().map(|i| self.members[i].label.clone()).collect()
    }
}

/// Outcome of testing Hall's marriage condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HallOutcome {
    /// A system of distinct representatives, one point per member.
    Satisfied(Vec<ProjPoint>),
    /// Labels of a sub-family whose subspaces jointly hold fewer projective
    /// points than members.
    Violated(Vec<String>),
}

impl HallOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, HallOutcome::Satisfied(_))
    }
}

/// Depth-first augmenting-path matching of members to projective points.
/// Point sets are enumerated lazily and never materialized up front.
struct Matcher<'a> {
    spaces: Vec<&'a Subspace>,
    /// Points that cannot be taken, with the index of the member holding them.
    reserved: HashMap<ProjPoint, usize>,
    owner: HashMap<ProjPoint, usize>,
    assigned: Vec<Option<ProjPoint>>,
}

struct Search {
    members: BTreeSet<usize>,
    points: HashSet<ProjPoint>,
    blockers: BTreeSet<usize>,
}

impl<'a> Matcher<'a> {
    fn augment(&mut self, s: usize, search: &mut Search) -> bool {
        search.members.insert(s);
        for p in self.spaces[s].points() {
            if let Some(&holder) = self.reserved.get(&p) {
                search.blockers.insert(holder);
                continue;
            }
            if !search.points.insert(p.clone()) {
                continue;
            }
            let free = match self.owner.get(&p).copied() {
                None => true,
                Some(t) => self.augment(t, search),
            };
            if free {
                self.owner.insert(p.clone(), s);
                self.assigned[s] = Some(p);
                return true;
            }
        }
        false
    }

    /// Matches `order` in sequence; on failure returns the members reached by
    /// the failed search together with any reserved-point holders it hit.
    fn run(&mut self, order: &[usize]) -> Result<(), BTreeSet<usize>> {
        for &s in order {
            let mut search = Search { members: BTreeSet::new(), points: HashSet::new(), blockers: BTreeSet::new() };
            if !self.augment(s, &mut search) {
                let mut witness = search.members;
                witness.extend(search.blockers);
                return Err(witness);
            }
        }
        Ok(())
    }
}

/// Decides Hall's condition for the member subspaces (marked points are
/// ignored) by running a maximum matching.
pub fn check_hall(code: &NetworkCode) -> HallOutcome {
    let mut matcher = Matcher {
        spaces: code.members.iter().map(|m| &m.subspace).collect(),
        reserved: HashMap::new(),
        owner: HashMap::new(),
        assigned: vec![None; code.len()],
    };
    let order: Vec<usize> = (0..code.len()).collect();
    match matcher.run(&order) {
        Ok(()) => HallOutcome::Satisfied(matcher.assigned.into_iter().map(Option::unwrap).collect()),
        Err(witness) => HallOutcome::Violated(code.labels(witness)),
    }
}

/// Fills every missing marked point so that all marked points are pairwise
/// distinct. Marked points supplied with the code are never changed.
pub fn assign_points(code: &NetworkCode) -> Result<NetworkCode, NetcodeError> {
    let mut reserved: HashMap<ProjPoint, usize> = HashMap::new();
    for (i, m) in code.members.iter().enumerate() {
        if let Some(p) = &m.point {
            if let Some(&j) = reserved.get(p) {
                return Err(NetcodeError::ConflictingUserPoints(
                    code.members[j].label.clone(),
                    m.label.clone(),
                ));
            }
            reserved.insert(p.clone(), i);
        }
    }
    let open: Vec<usize> = (0..code.len()).filter(|&i| code.members[i].point.is_none()).collect();
    if open.is_empty() {
        return Ok(code.clone());
    }
    let mut matcher = Matcher {
        spaces: code.members.iter().map(|m| &m.subspace).collect(),
        reserved,
        owner: HashMap::new(),
        assigned: vec![None; code.len()],
    };
    matcher.run(&open).map_err(|w| NetcodeError::HallViolation(code.labels(w)))?;
    let mut out = code.clone();
    for i in open {
        out.members[i].point = matcher.assigned[i].take();
    }
    Ok(out)
}

/// Pairwise subspace distances in member order.
pub fn distance_matrix(code: &NetworkCode) -> Vec<Vec<usize>> {
    let ms = &code.members;
    ms.iter()
        .map(|a| {
            ms.iter()
                .map(|b| subspace_distance(&a.subspace, &b.subspace).expect("members share field and ambient"))
                .collect()
        })
        .collect()
}

/// Smallest distance over unordered member pairs; repeated subspaces give 0.
pub fn min_distance(code: &NetworkCode) -> Result<usize, NetcodeError> {
    if code.len() < 2 {
        return Err(NetcodeError::TooFewMembers);
    }
    let ms = &code.members;
    let mut best = usize::MAX;
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            best = best.min(subspace_distance(&ms[i].subspace, &ms[j].subspace)?);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::unit_vector;

    fn gf(q: u32) -> Field {
        Field::of_order(q).unwrap()
    }

    fn member(f: &Field, n: usize, label: &str, rows: &[Vec<u32>]) -> Member {
        Member { label: label.into(), subspace: Subspace::span(f, n, rows).unwrap(), point: None }
    }

    fn e(n: usize, i: usize) -> Vec<u32> {
        unit_vector(n, i)
    }

    #[test]
    fn construction_rejects_bad_members() {
        let f = gf(2);
        let zero = Member { label: "z".into(), subspace: Subspace::zero(&f, 3), point: None };
        assert_eq!(NetworkCode::new(f.clone(), 3, vec![zero]), Err(NetcodeError::ZeroMember("z".into())));
        assert_eq!(NetworkCode::new(f.clone(), 3, vec![]), Err(NetcodeError::Empty));
        let a = member(&f, 3, "a", &[e(3, 0)]);
        assert_eq!(
            NetworkCode::new(f.clone(), 3, vec![a.clone(), a.clone()]),
            Err(NetcodeError::DuplicateLabel("a".into()))
        );
        let mut bad_point = a.clone();
        bad_point.point = Some(ProjPoint::new(&f, &e(3, 1)).unwrap());
        assert_eq!(
            NetworkCode::new(f.clone(), 3, vec![bad_point]),
            Err(NetcodeError::PointNotInSubspace("a".into()))
        );
        let wide = member(&f, 4, "w", &[e(4, 0)]);
        assert!(matches!(NetworkCode::new(f, 3, vec![wide]), Err(NetcodeError::AmbientMismatch { .. })));
    }

    #[test]
    fn duplicated_point_subspace_violates_hall() {
        let f = gf(2);
        let code = NetworkCode::new(
            f.clone(),
            3,
            vec![member(&f, 3, "a", &[e(3, 0)]), member(&f, 3, "b", &[e(3, 0)])],
        )
        .unwrap();
        assert_eq!(check_hall(&code), HallOutcome::Violated(vec!["a".into(), "b".into()]));
        assert_eq!(
            assign_points(&code),
            Err(NetcodeError::HallViolation(vec!["a".into(), "b".into()]))
        );
    }

    #[test]
    fn matching_prefers_enumeration_order() {
        let f = gf(2);
        let code = NetworkCode::new(
            f.clone(),
            3,
            vec![member(&f, 3, "a", &[e(3, 0)]), member(&f, 3, "b", &[e(3, 0), e(3, 1)])],
        )
        .unwrap();
        let HallOutcome::Satisfied(points) = check_hall(&code) else { panic!("hall holds") };
        assert_eq!(points[0].coords(), &[1, 0, 0]);
        assert_eq!(points[1].coords(), &[0, 1, 0]);

        // Reversed order forces an augmenting path: b first takes e1, then a
        // needs e1 and pushes b along to e2.
        let rev = NetworkCode::new(f.clone(), 3, code.members().iter().rev().cloned().collect()).unwrap();
        let assigned = assign_points(&rev).unwrap();
        assert_eq!(assigned.members()[0].point.as_ref().unwrap().coords(), &[0, 1, 0]);
        assert_eq!(assigned.members()[1].point.as_ref().unwrap().coords(), &[1, 0, 0]);
    }

    #[test]
    fn nested_flag_gets_distinct_representatives() {
        let f = gf(3);
        let code = NetworkCode::new(
            f.clone(),
            3,
            vec![
                member(&f, 3, "p", &[e(3, 0)]),
                member(&f, 3, "l", &[e(3, 0), e(3, 1)]),
                member(&f, 3, "all", &[e(3, 0), e(3, 1), e(3, 2)]),
            ],
        )
        .unwrap();
        let out = assign_points(&code).unwrap();
        let pts: BTreeSet<_> = out.members().iter().map(|m| m.point.clone().unwrap()).collect();
        assert_eq!(pts.len(), 3);
        for m in out.members() {
            assert!(m.subspace.contains_point(m.point.as_ref().unwrap()).unwrap());
        }
        assert_eq!(assign_points(&out).unwrap(), out);
    }

    #[test]
    fn user_points_are_respected() {
        let f = gf(2);
        let mut a = member(&f, 3, "a", &[e(3, 0), e(3, 1)]);
        a.point = Some(ProjPoint::new(&f, &[1, 0, 0]).unwrap());
        let b = member(&f, 3, "b", &[e(3, 0), e(3, 1)]);
        let code = NetworkCode::new(f.clone(), 3, vec![a.clone(), b.clone()]).unwrap();
        let out = assign_points(&code).unwrap();
        assert_eq!(out.members()[0].point, a.point);
        assert_eq!(out.members()[1].point.as_ref().unwrap().coords(), &[0, 1, 0]);

        let mut b2 = b.clone();
        b2.point = a.point.clone();
        let clash = NetworkCode::new(f.clone(), 3, vec![a.clone(), b2]).unwrap();
        assert_eq!(assign_points(&clash), Err(NetcodeError::ConflictingUserPoints("a".into(), "b".into())));

        // The only point of c is already taken by a user mark.
        let mut d = member(&f, 3, "d", &[e(3, 2)]);
        d.point = Some(ProjPoint::new(&f, &e(3, 2)).unwrap());
        let c = member(&f, 3, "c", &[e(3, 2)]);
        let blocked = NetworkCode::new(f.clone(), 3, vec![d, c]).unwrap();
        assert_eq!(
            assign_points(&blocked),
            Err(NetcodeError::HallViolation(vec!["d".into(), "c".into()]))
        );
    }

    #[test]
    fn large_members_do_not_enumerate_everything() {
        // 8^7 coefficient tuples; the matcher must stop at the first free point.
        let f = gf(8);
        let n = 7;
        let rows: Vec<Vec<u32>> = (0..n).map(|i| e(n, i)).collect();
        let members = (0..5).map(|i| member(&f, n, &format!("m{i}"), &rows)).collect();
        let code = NetworkCode::new(f, n, members).unwrap();
        let out = assign_points(&code).unwrap();
        let pts: BTreeSet<_> = out.members().iter().map(|m| m.point.clone().unwrap()).collect();
        assert_eq!(pts.len(), 5);
    }

    #[test]
    fn distances() {
        let f = gf(2);
        let code = NetworkCode::new(
            f.clone(),
            2,
            vec![member(&f, 2, "x", &[e(2, 0)]), member(&f, 2, "y", &[e(2, 1)])],
        )
        .unwrap();
        assert_eq!(min_distance(&code).unwrap(), 2);
        assert_eq!(distance_matrix(&code), vec![vec![0, 2], vec![2, 0]]);

        let dup = NetworkCode::new(
            f.clone(),
            3,
            vec![
                member(&f, 3, "a", &[e(3, 0)]),
                member(&f, 3, "b", &[e(3, 1), e(3, 2)]),
                member(&f, 3, "c", &[e(3, 0)]),
            ],
        )
        .unwrap();
        assert_eq!(min_distance(&dup).unwrap(), 0);
        let single = NetworkCode::new(f.clone(), 3, vec![member(&f, 3, "a", &[e(3, 0)])]).unwrap();
        assert_eq!(min_distance(&single), Err(NetcodeError::TooFewMembers));
    }
}
