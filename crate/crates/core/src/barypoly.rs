//! Exact polynomials in the barycentric coordinates `(λ0, λ1, λ2)` of a fixed
//! reference triangle.
//!
//! Storage is non-homogeneous: a polynomial is a finite sum of terms
//! `c · λ0^a0 λ1^a1 λ2^a2` with no constraint on `|α|` beyond the declared
//! degree. Because `λ0 + λ1 + λ2 = 1` on the plane, several term maps describe
//! the same function; [`BaryPolynomial::normalized`] picks the unique
//! representative free of `λ0`, and equality compares those.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AffineMap, Triangle};
use crate::rational::{factorial, format_rational, one, zero, Q};

/// Exponent triple `(α0, α1, α2)` of `λ0^α0 λ1^α1 λ2^α2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub [u32; 3]);

impl MultiIndex {
    pub const fn new(a0: u32, a1: u32, a2: u32) -> Self {
        Self([a0, a1, a2])
    }

    pub fn unit(i: usize) -> Self {
        let mut a = [0; 3];
        a[i] = 1;
        Self(a)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All `α` with `|α| = d`, in descending lexicographic order, so degree 1
    /// yields `λ0, λ1, λ2` and degree `r` starts at `(r, 0, 0)`.
    pub fn all_of_degree(d: u32) -> Vec<MultiIndex> {
        let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
        for a0 in (0..=d).rev() {
            for a1 in (0..=d - a0).rev() {
                out.push(MultiIndex([a0, a1, d - a0 - a1]));
            }
        }
        out
    }

    fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// A point given by barycentric coordinates that sum to one exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaryPoint {
    lambdas: [Q; 3],
}

impl BaryPoint {
    pub fn new(l0: Q, l1: Q, l2: Q) -> Result<Self> {
        if &(&l0 + &l1) + &l2 != one() {
            return Err(Error::Parse(format!(
                "barycentric coordinates must sum to 1: ({}, {}, {})",
                format_rational(&l0),
                format_rational(&l1),
                format_rational(&l2)
            )));
        }
        Ok(Self { lambdas: [l0, l1, l2] })
    }

    /// `(λ1, λ2)` with `λ0` implied.
    pub fn from_tail(l1: Q, l2: Q) -> Self {
        let l0 = one() - &l1 - &l2;
        Self { lambdas: [l0, l1, l2] }
    }

    pub fn vertex(i: usize) -> Self {
        let mut l = [zero(), zero(), zero()];
        l[i] = one();
        Self { lambdas: l }
    }

    /// The lattice point `α / r`.
    pub fn lattice(alpha: MultiIndex, r: u32) -> Self {
        let r = BigInt::from(r);
        let l = alpha.0.map(|a| Q::new(BigInt::from(a), r.clone()));
        Self { lambdas: l }
    }

    pub fn lambdas(&self) -> &[Q; 3] {
        &self.lambdas
    }

    pub fn lambda(&self, i: usize) -> &Q {
        &self.lambdas[i]
    }

    pub fn is_inside(&self) -> bool {
        self.lambdas.iter().all(|l| *l >= zero())
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.lambdas.each_ref().map(crate::rational::to_f64)
    }
}

impl fmt::Display for BaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            format_rational(&self.lambdas[0]),
            format_rational(&self.lambdas[1]),
            format_rational(&self.lambdas[2])
        )
    }
}

/// Exact-rational polynomial in barycentric coordinates.
#[derive(Debug, Clone, Default)]
pub struct BaryPolynomial {
    terms: BTreeMap<MultiIndex, Q>,
}

impl BaryPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(MultiIndex::new(0, 0, 0), c)
    }

    pub fn monomial(alpha: MultiIndex, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(alpha, c);
        }
        Self { terms }
    }

    /// The coordinate function `λi`.
    pub fn lambda(i: usize) -> Self {
        Self::monomial(MultiIndex::unit(i), one())
    }

    /// `Σ coeffs[i] λi`.
    pub fn linear(coeffs: &[Q; 3]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(MultiIndex::unit(i), c.clone());
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MultiIndex, Q)>) -> Self {
        let mut p = Self::zero();
        for (a, c) in terms {
            p.add_term(a, c);
        }
        p
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(alpha).or_insert_with(zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Q {
        self.terms.get(alpha).cloned().unwrap_or_else(zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Highest `|α|` among stored terms (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    /// True when the stored term map is empty. See [`Self::is_zero_function`]
    /// for the semantic test.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero_function(&self) -> bool {
        self.normalized().is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(a, v)| (*a, v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, pt: &BaryPoint) -> Q {
        let l = pt.lambdas();
        self.terms
            .iter()
            .map(|(a, c)| {
                c * num_traits::pow(l[0].clone(), a.0[0] as usize)
                    * num_traits::pow(l[1].clone(), a.0[1] as usize)
                    * num_traits::pow(l[2].clone(), a.0[2] as usize)
            })
            .fold(zero(), |acc, v| acc + v)
    }

    /// Floating-point evaluation at barycentric coordinates `l`.
    pub fn evaluate_f64(&self, l: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(a, c)| {
                crate::rational::to_f64(c)
                    * l[0].powi(a.0[0] as i32)
                    * l[1].powi(a.0[1] as i32)
                    * l[2].powi(a.0[2] as i32)
            })
            .sum()
    }

    /// Homogeneous form of degree `d`: every term of degree `k < d` is
    /// multiplied by `(λ0+λ1+λ2)^(d-k)`.
    pub fn homogenize(&self, d: u32) -> Result<Self> {
        if self.degree() > d {
            return Err(Error::InvalidDegree(format!(
                "cannot homogenize a degree-{} polynomial to degree {d}",
                self.degree()
            )));
        }
        let sum = Self::linear(&[one(), one(), one()]);
        let mut powers = vec![Self::constant(one())];
        for k in 1..=d as usize {
            powers.push(&powers[k - 1] * &sum);
        }
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            let lift = &powers[(d - a.degree()) as usize];
            let mono = Self::monomial(*a, c.clone());
            out = &out + &(&mono * lift);
        }
        Ok(out)
    }

    /// Canonical representative: `λ0` eliminated through `λ0 = 1 - λ1 - λ2`.
    /// Two polynomials agree as functions iff their normalized forms agree.
    pub fn normalized(&self) -> Self {
        let minus = Self::linear(&[zero(), -one(), -one()]) + Self::constant(one());
        self.substitute_each(&[minus, Self::lambda(1), Self::lambda(2)])
    }

    /// Alias kept for symmetry with [`Self::homogenize`].
    pub fn dehomogenize(&self) -> Self {
        self.normalized()
    }

    /// Substitutes `λi ↦ images[i]` (arbitrary polynomials).
    pub fn substitute_each(&self, images: &[BaryPolynomial; 3]) -> Self {
        let max = |i: usize| self.terms.keys().map(|a| a.0[i]).max().unwrap_or(0);
        let powers: Vec<Vec<Self>> = (0..3)
            .map(|i| {
                let mut v = vec![Self::constant(one())];
                for k in 1..=max(i) as usize {
                    v.push(&v[k - 1] * &images[i]);
                }
                v
            })
            .collect();
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            let t = &(&powers[0][a.0[0] as usize] * &powers[1][a.0[1] as usize])
                * &powers[2][a.0[2] as usize];
            for (b, v) in t.terms {
                out.add_term(b, v * c);
            }
        }
        out
    }

    /// Linear change of variables `λi ↦ Σj m[i][j] μj`.
    pub fn substitute_linear(&self, m: &[[Q; 3]; 3]) -> Self {
        let images = [0, 1, 2].map(|i| Self::linear(&m[i]));
        self.substitute_each(&images)
    }

    /// Integral over a `dim`-simplex (`dim` = 1 or 2) whose vertices have
    /// ambient barycentric coordinates `vertices`; `volume` is its length or
    /// area. Pulls back to the simplex's own barycentric coordinates and uses
    /// `∫ μ^β = dim! · volume · β! / (|β| + dim)!`.
    pub fn integrate_over_simplex(&self, vertices: &[BaryPoint], volume: &Q) -> Q {
        let dim = vertices.len() - 1;
        assert!(dim == 1 || dim == 2, "simplex dimension must be 1 or 2");
        // λi = Σj μj λi(vj); for a segment μ2 is absent.
        let mut m: [[Q; 3]; 3] = Default::default();
        for (j, v) in vertices.iter().enumerate() {
            for i in 0..3 {
                m[i][j] = v.lambda(i).clone();
            }
        }
        let pulled = self.substitute_linear(&m);
        let dim_fact = factorial(dim);
        let mut total = zero();
        for (b, c) in pulled.terms() {
            let num = factorial(b.0[0] as usize) * factorial(b.0[1] as usize) * factorial(b.0[2] as usize);
            let den = factorial(b.degree() as usize + dim);
            total += c * Q::new(num * &dim_fact, den);
        }
        total * volume
    }

    /// Partial derivative with respect to `λi` treated as an independent variable.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            if a.0[i] == 0 {
                continue;
            }
            let mut b = *a;
            b.0[i] -= 1;
            out.add_term(b, c * Q::from_integer(BigInt::from(a.0[i])));
        }
        out
    }
}

/// `∫_tri λ^α dA`, with `λ` the barycentric coordinates of `ambient`.
pub fn integrate_monomial_over_triangle(
    alpha: MultiIndex,
    ambient: &Triangle,
    tri: &Triangle,
) -> Result<Q> {
    integrate_over_triangle(&BaryPolynomial::monomial(alpha, one()), ambient, tri)
}

/// `∫_tri p dA` for `p` expressed in the barycentric coordinates of `ambient`.
pub fn integrate_over_triangle(p: &BaryPolynomial, ambient: &Triangle, tri: &Triangle) -> Result<Q> {
    let area = tri.signed_area();
    if area.is_zero() {
        return Err(Error::ZeroArea);
    }
    let verts: Vec<BaryPoint> = tri.vertices().iter().map(|v| ambient.to_bary(v)).collect();
    let area = if area < zero() { -area } else { area };
    Ok(p.integrate_over_simplex(&verts, &area))
}

/// `p ∘ map`, exact. The map acts on the plane of `ambient`.
pub fn affine_pullback(p: &BaryPolynomial, map: &AffineMap, ambient: &Triangle) -> BaryPolynomial {
    p.substitute_linear(&map.barycentric_matrix(ambient))
}

impl PartialEq for BaryPolynomial {
    fn eq(&self, other: &Self) -> bool {
        (self - other).normalized().is_empty()
    }
}

impl Add for &BaryPolynomial {
    type Output = BaryPolynomial;
    fn add(self, rhs: &BaryPolynomial) -> BaryPolynomial {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(*a, c.clone());
        }
        out
    }
}

impl Sub for &BaryPolynomial {
    type Output = BaryPolynomial;
    fn sub(self, rhs: &BaryPolynomial) -> BaryPolynomial {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(*a, -c.clone());
        }
        out
    }
}

impl Mul for &BaryPolynomial {
    type Output = BaryPolynomial;
    fn mul(self, rhs: &BaryPolynomial) -> BaryPolynomial {
        let mut out = BaryPolynomial::zero();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a.plus(b), c * d);
            }
        }
        out
    }
}

impl Neg for &BaryPolynomial {
    type Output = BaryPolynomial;
    fn neg(self) -> BaryPolynomial {
        BaryPolynomial { terms: self.terms.iter().map(|(a, c)| (*a, -c.clone())).collect() }
    }
}

impl Add for BaryPolynomial {
    type Output = BaryPolynomial;
    fn add(self, rhs: BaryPolynomial) -> BaryPolynomial {
        &self + &rhs
    }
}

impl Sub for BaryPolynomial {
    type Output = BaryPolynomial;
    fn sub(self, rhs: BaryPolynomial) -> BaryPolynomial {
        &self - &rhs
    }
}

impl Mul for BaryPolynomial {
    type Output = BaryPolynomial;
    fn mul(self, rhs: BaryPolynomial) -> BaryPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for BaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_rational(c))?;
            for (i, e) in a.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*l{i}")?,
                    _ => write!(f, "*l{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl One for BaryPolynomial {
    fn one() -> Self {
        Self::constant(one())
    }
}
