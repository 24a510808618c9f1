use num_traits::{One, Zero};

use crate::barypoly::{BaryPoint, BaryPolynomial};
use crate::error::Result;
use crate::geometry::Triangle;
use crate::rational::{zero, Q};

/// A positively homothetic copy of the reference triangle, written as the
/// intersection of three half-planes `{λi ≥ lower[i]}`. Its scale factor is
/// `1 - Σ lower[i]`; it is empty when that is negative and a single point
/// when it vanishes.
///
/// Every `τ_ξ(T)` has this form with `lower = (0, λ1(ξ), λ2(ξ))`, and every
/// small triangle `z_α(T)` with `lower = α / r`. The family is closed under
/// intersection: the binding constraint in each of the three edge directions
/// is the larger lower bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomotheticTriangle {
    lower: [Q; 3],
}

impl HomotheticTriangle {
    pub fn new(lower: [Q; 3]) -> Self {
        Self { lower }
    }

    pub fn reference() -> Self {
        Self { lower: [zero(), zero(), zero()] }
    }

    /// `τ_ξ(T)`: apex `ξ`, base on the edge `λ0 = 0`.
    pub fn tau_image(xi: &BaryPoint) -> Self {
        Self { lower: [zero(), xi.lambda(1).clone(), xi.lambda(2).clone()] }
    }

    pub fn lower(&self) -> &[Q; 3] {
        &self.lower
    }

    pub fn scale(&self) -> Q {
        Q::one() - &self.lower[0] - &self.lower[1] - &self.lower[2]
    }

    /// True when the intersection has positive area.
    pub fn is_proper(&self) -> bool {
        self.scale() > zero()
    }

    /// Vertex `i` is `lower + scale · e_i`, the image of the reference vertex `x_i`.
    pub fn vertices(&self) -> [BaryPoint; 3] {
        let s = self.scale();
        [0, 1, 2].map(|i| {
            let mut l = self.lower.clone();
            l[i] += &s;
            let [a, b, c] = l;
            BaryPoint::new(a, b, c).expect("lower bounds plus scale sum to one")
        })
    }

    pub fn contains(&self, p: &BaryPoint) -> bool {
        (0..3).all(|i| p.lambda(i) >= &self.lower[i])
    }

    /// `None` when the intersection is empty or has zero area.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lower = [0, 1, 2].map(|i| self.lower[i].clone().max(other.lower[i].clone()));
        let t = Self { lower };
        t.is_proper().then_some(t)
    }

    pub fn area(&self, tri: &Triangle) -> Q {
        let s = self.scale();
        if s <= zero() {
            return zero();
        }
        &s * &s * tri.area()
    }

    pub fn to_triangle(&self, tri: &Triangle) -> Result<Triangle> {
        Triangle::new(self.vertices().map(|v| tri.to_cartesian(&v)))
    }

    /// `∫ p dA` over this triangle, `p` in the ambient barycentric coordinates.
    pub fn integrate(&self, p: &BaryPolynomial, tri: &Triangle) -> Q {
        if !self.is_proper() {
            return zero();
        }
        p.integrate_over_simplex(&self.vertices(), &self.area(tri))
    }
}

/// Signed combination `Σ c_j 1_{H_j}` of homothetic-triangle indicators,
/// kept merged (one coefficient per triangle) and free of zero or
/// degenerate terms.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SignedTriangles {
    terms: std::collections::BTreeMap<HomotheticTriangle, i64>,
}

impl SignedTriangles {
    pub fn single(t: HomotheticTriangle) -> Self {
        let mut s = Self::default();
        s.add(t, 1);
        s
    }

    pub fn add(&mut self, t: HomotheticTriangle, c: i64) {
        if c == 0 || !t.is_proper() {
            return;
        }
        let slot = self.terms.entry(t.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&t);
        }
    }

    /// Indicator of `self \ h`, up to measure zero: `1_S - 1_S · 1_h`.
    /// Intersections that come out empty are dropped on the spot.
    pub fn subtract(&self, h: &HomotheticTriangle) -> Self {
        let mut out = self.clone();
        for (t, c) in &self.terms {
            if let Some(i) = t.intersect(h) {
                out.add(i, -c);
            }
        }
        out
    }

    /// Pointwise product of indicator combinations.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(i) = a.intersect(b) {
                    out.add(i, ca * cb);
                }
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HomotheticTriangle, i64)> {
        self.terms.iter().map(|(t, c)| (t, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn area(&self, tri: &Triangle) -> Q {
        self.terms.iter().fold(zero(), |acc, (t, c)| acc + t.area(tri) * Q::from_integer((*c).into()))
    }

    pub fn integrate(&self, p: &BaryPolynomial, tri: &Triangle) -> Q {
        let mut total = zero();
        for (t, c) in &self.terms {
            let v = t.integrate(p, tri);
            if !v.is_zero() {
                total += v * Q::from_integer((*c).into());
            }
        }
        total
    }
}
