//! Parametrized rational curves `P^1 -> P^{n-1}` over a finite field.
//!
//! Local behaviour at a point is read off the Hasse (divided) derivatives of
//! the coordinate polynomials, which stay meaningful in characteristic `p`
//! where ordinary higher derivatives vanish identically. The osculating flag
//! at a point is the filtration spanned by successive Hasse coefficient
//! vectors; its jump indices form the order sequence.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::Field;
use crate::subspace::{MatrixFq, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("all coordinates vanish at {0}")]
    BasePoint(P1Point),
    #[error("osculating flag at {point} has rank {rank}; cannot reach vector dimension {needed}")]
    RankDeficient { point: P1Point, needed: usize, rank: usize },
    #[error("coordinate {coord} has degree {degree} above the degree bound {bound}")]
    DegreeExceedsBound { coord: usize, degree: usize, bound: usize },
    #[error("a curve needs at least one coordinate")]
    NoCoordinates,
    #[error("all coordinates are the zero polynomial")]
    ZeroCurve,
    #[error("value {0} is not an element of the field")]
    BadElement(u32),
    #[error("cannot parse point `{0}`; expected `t=<int>` or `inf`")]
    BadPoint(String),
}

/// Binomial coefficient `C(n, k)` reduced mod the prime `p`, by Lucas' theorem.
pub fn binomial_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        // Digits are below p, so ki! is invertible mod p.
        let (mut num, mut den) = (1u64, 1u64);
        for j in 0..ki {
            num = num * (ni - j) % p;
            den = den * (j + 1) % p;
        }
        acc = acc * num % p * pow_mod(den, p - 2, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// A univariate polynomial over `GF(q)`, coefficients low degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyFq {
    field: Field,
    coeffs: Vec<u32>,
}

impl fmt::Debug for PolyFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl PolyFq {
    pub fn new(field: &Field, coeffs: Vec<u32>) -> Result<Self, CurveError> {
        if let Some(&bad) = coeffs.iter().find(|&&c| !field.contains(c)) {
            return Err(CurveError::BadElement(bad));
        }
        let mut p = PolyFq { field: field.clone(), coeffs };
        p.trim();
        Ok(p)
    }

    pub fn zero(field: &Field) -> Self {
        PolyFq { field: field.clone(), coeffs: Vec::new() }
    }

    /// `c * t^m`
    pub fn monomial(field: &Field, c: u32, m: usize) -> Self {
        let mut coeffs = vec![0; m + 1];
        coeffs[m] = c;
        let mut p = PolyFq { field: field.clone(), coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `t^m` (zero past the end).
    pub fn coeff(&self, m: usize) -> u32 {
        self.coeffs.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, a: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn add(&self, other: &PolyFq) -> PolyFq {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        let mut p = PolyFq { field: f.clone(), coeffs };
        p.trim();
        p
    }

    pub fn scale(&self, c: u32) -> PolyFq {
        let f = &self.field;
        let mut p = PolyFq { field: f.clone(), coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect() };
        p.trim();
        p
    }

    pub fn mul(&self, other: &PolyFq) -> PolyFq {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return PolyFq::zero(f);
        }
        let mut coeffs = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        let mut p = PolyFq { field: f.clone(), coeffs };
        p.trim();
        p
    }

    /// `D^(k) t^m = C(m, k) t^(m-k)`, binomials taken in the prime field.
    pub fn hasse_derivative(&self, k: usize) -> PolyFq {
        let f = &self.field;
        let p = f.characteristic() as u64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(k)
            .map(|(m, &c)| f.mul(c, f.from_int(binomial_mod(m as u64, k as u64, p))))
            .collect();
        let mut out = PolyFq { field: f.clone(), coeffs };
        out.trim();
        out
    }
}

/// A rational point of the projective line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum P1Point {
    Affine(u32),
    Infinity,
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Affine(a) => write!(f, "t={a}"),
            P1Point::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for P1Point {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(P1Point::Infinity);
        }
        s.strip_prefix("t=")
            .and_then(|v| v.parse().ok())
            .map(P1Point::Affine)
            .ok_or_else(|| CurveError::BadPoint(s.to_string()))
    }
}

impl P1Point {
    pub fn in_field(&self, field: &Field) -> bool {
        match *self {
            P1Point::Affine(a) => field.contains(a),
            P1Point::Infinity => true,
        }
    }
}

/// All `q + 1` rational points: `t=0, t=1, ..., t=q-1, inf`.
pub fn all_points(field: &Field) -> Vec<P1Point> {
    field.elements().map(P1Point::Affine).chain(std::iter::once(P1Point::Infinity)).collect()
}

/// An `n`-tuple of polynomials of degree at most `degree_bound`, read as the
/// map `t -> (f_1(t) : ... : f_n(t))`. The bound fixes the chart at infinity.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyCurve {
    field: Field,
    degree_bound: usize,
    coords: Vec<PolyFq>,
}

impl fmt::Debug for PolyCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyCurve(d={}, {:?})", self.degree_bound, self.coords)
    }
}

impl PolyCurve {
    pub fn new(field: &Field, degree_bound: usize, coords: Vec<PolyFq>) -> Result<Self, CurveError> {
        if coords.is_empty() {
            return Err(CurveError::NoCoordinates);
        }
        for (i, c) in coords.iter().enumerate() {
            if let Some(deg) = c.degree().filter(|&deg| deg > degree_bound) {
                return Err(CurveError::DegreeExceedsBound { coord: i, degree: deg, bound: degree_bound });
            }
        }
        if coords.iter().all(PolyFq::is_zero) {
            return Err(CurveError::ZeroCurve);
        }
        Ok(PolyCurve { field: field.clone(), degree_bound, coords })
    }

    pub fn from_coefficients(field: &Field, degree_bound: usize, rows: &[Vec<u32>]) -> Result<Self, CurveError> {
        let coords = rows.iter().map(|r| PolyFq::new(field, r.clone())).collect::<Result<_, _>>()?;
        Self::new(field, degree_bound, coords)
    }

    /// The degree-`d` rational normal curve `t -> (1 : t : ... : t^d)`.
    pub fn rational_normal(field: &Field, d: usize) -> Self {
        let coords = (0..=d).map(|m| PolyFq::monomial(field, 1, m)).collect();
        PolyCurve { field: field.clone(), degree_bound: d, coords }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.coords.len()
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn coords(&self) -> &[PolyFq] {
        &self.coords
    }

    /// Coefficient rows padded to `degree_bound + 1` entries.
    pub fn coefficient_rows(&self) -> Vec<Vec<u32>> {
        self.coords.iter().map(|c| (0..=self.degree_bound).map(|m| c.coeff(m)).collect()).collect()
    }

    /// The same curve in the chart `s = 1/t`: each coordinate's padded
    /// coefficient list reversed. Applying it twice is the identity.
    pub fn chart_at_infinity(&self) -> PolyCurve {
        let coords = self
            .coefficient_rows()
            .into_iter()
            .map(|mut row| {
                row.reverse();
                let mut p = PolyFq { field: self.field.clone(), coeffs: row };
                p.trim();
                p
            })
            .collect();
        PolyCurve { field: self.field.clone(), degree_bound: self.degree_bound, coords }
    }

    /// Homogeneous coordinate vector at `point` (possibly zero at a base point).
    pub fn eval(&self, point: P1Point) -> Vec<u32> {
        match point {
            P1Point::Affine(a) => self.coords.iter().map(|c| c.eval(a)).collect(),
            P1Point::Infinity => self.coords.iter().map(|c| c.coeff(self.degree_bound)).collect(),
        }
    }
}

/// Hasse coefficient vectors `c_0, ..., c_d` of a curve at a point: the
/// coefficients of `f(a + s)` in powers of `s` (or of the reversed chart at
/// `s = 0` for the point at infinity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalExpansion {
    pub base: P1Point,
    pub coeff_vectors: Vec<Vec<u32>>,
}

pub fn local_expansion(curve: &PolyCurve, point: P1Point) -> Result<LocalExpansion, CurveError> {
    let f = &curve.field;
    let d = curve.degree_bound;
    let coeff_vectors: Vec<Vec<u32>> = match point {
        P1Point::Affine(a) => {
            if !f.contains(a) {
                return Err(CurveError::BadElement(a));
            }
            let p = f.characteristic() as u64;
            let powers: Vec<u32> = std::iter::successors(Some(1u32), |&x| Some(f.mul(x, a))).take(d + 1).collect();
            (0..=d)
                .map(|k| {
                    curve
                        .coords
                        .iter()
                        .map(|poly| {
                            (k..=d).fold(0, |acc, m| {
                                let c = poly.coeff(m);
                                if c == 0 {
                                    return acc;
                                }
                                let b = f.from_int(binomial_mod(m as u64, k as u64, p));
                                f.add(acc, f.mul(c, f.mul(b, powers[m - k])))
                            })
                        })
                        .collect()
                })
                .collect()
        }
        P1Point::Infinity => {
            (0..=d).map(|k| curve.coords.iter().map(|poly| poly.coeff(d - k)).collect()).collect()
        }
    };
    if coeff_vectors[0].iter().all(|&x| x == 0) {
        return Err(CurveError::BasePoint(point));
    }
    Ok(LocalExpansion { base: point, coeff_vectors })
}

/// Incremental echelon basis used to track where the filtration rank jumps.
struct Echelon<'a> {
    field: &'a Field,
    rows: Vec<(usize, Vec<u32>)>,
}

impl<'a> Echelon<'a> {
    /// Adds `v` and reports whether it raised the rank.
    fn insert(&mut self, v: &[u32]) -> bool {
        let f = self.field;
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            let factor = v[*pc];
            if factor != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(factor, r));
                }
            }
        }
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let scale = f.inv(v[pc]).expect("nonzero");
        v.iter_mut().for_each(|x| *x = f.mul(*x, scale));
        self.rows.push((pc, v));
        true
    }
}

impl LocalExpansion {
    /// Indices `k` at which `rank(c_0, ..., c_k)` increases.
    pub fn jumps(&self, field: &Field) -> Vec<usize> {
        let mut ech = Echelon { field, rows: Vec::new() };
        self.coeff_vectors.iter().enumerate().filter(|(_, v)| ech.insert(v)).map(|(k, _)| k).collect()
    }
}

/// Order sequence `j_0 < j_1 < ...` of a curve at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderData {
    pub orders: Vec<usize>,
}

impl OrderData {
    /// The order `e` of the first coordinate outside the `x`-dimensional
    /// (projective) osculating space, i.e. `j_{x+1}`.
    pub fn e_at(&self, x: usize) -> Option<usize> {
        self.orders.get(x + 1).copied()
    }

    /// Ordinary `x`-osculation: `e = x + 1`.
    pub fn is_ordinary(&self, x: usize) -> Option<bool> {
        self.e_at(x).map(|e| e == x + 1)
    }
}

/// Projective `x`-dimensional osculating space at `point`: the span of
/// `c_0, ..., c_j` for the least `j` with rank `x + 1`.
pub fn osculating_space(curve: &PolyCurve, point: P1Point, x: usize) -> Result<Subspace, CurveError> {
    let exp = local_expansion(curve, point)?;
    let jumps = exp.jumps(&curve.field);
    let Some(&j) = jumps.get(x) else {
        return Err(CurveError::RankDeficient { point, needed: x + 1, rank: jumps.len() });
    };
    Ok(Subspace::span(&curve.field, curve.ambient(), &exp.coeff_vectors[..=j]).expect("vectors are well formed"))
}

/// The order sequence at `point`, requiring at least `upto + 1` entries
/// (flag dimensions `0..=upto`). All jumps within the degree bound are kept.
pub fn order_sequence(curve: &PolyCurve, point: P1Point, upto: usize) -> Result<OrderData, CurveError> {
    let exp = local_expansion(curve, point)?;
    let orders = exp.jumps(&curve.field);
    if orders.len() < upto + 1 {
        return Err(CurveError::RankDeficient { point, needed: upto + 1, rank: orders.len() });
    }
    Ok(OrderData { orders })
}

/// The differential is invertible at `point` iff `c_0, c_1` are independent.
pub fn unramified_at(curve: &PolyCurve, point: P1Point) -> Result<bool, CurveError> {
    let exp = local_expansion(curve, point)?;
    if exp.coeff_vectors.len() < 2 {
        return Ok(false);
    }
    let m = MatrixFq::from_rows(&curve.field, curve.ambient(), &exp.coeff_vectors[..2]).expect("well formed");
    Ok(m.rank() == 2)
}
