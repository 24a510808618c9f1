use std::fmt;

use num_traits::Zero;

use crate::barypoly::BaryPoint;
use crate::error::{Error, Result};
use crate::rational::{format_rational, one, parse_rational, q, qi, to_f64, zero, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Q,
    pub y: Q,
}

impl Point2 {
    pub fn new(x: Q, y: Q) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(qi(x), qi(y))
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [to_f64(&self.x), to_f64(&self.y)]
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", format_rational(&self.x), format_rational(&self.y))
    }
}

/// Twice the signed area of `(a, b, c)`; positive for counterclockwise order.
pub fn orient(a: &Point2, b: &Point2, c: &Point2) -> Q {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// A non-degenerate triangle `(x0, x1, x2)` in the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    vertices: [Point2; 3],
}

impl Triangle {
    pub fn new(vertices: [Point2; 3]) -> Result<Self> {
        let t = Self { vertices };
        if t.signed_area().is_zero() {
            return Err(Error::ZeroArea);
        }
        Ok(t)
    }

    /// `(0,0), (1,0), (0,1)`: here `λ1 = x` and `λ2 = y`.
    pub fn unit_right() -> Self {
        Self {
            vertices: [Point2::from_ints(0, 0), Point2::from_ints(1, 0), Point2::from_ints(0, 1)],
        }
    }

    /// Apex on top, `x1` bottom-left, `x2` bottom-right; the layout used for
    /// the cell diagrams.
    pub fn figure() -> Self {
        Self {
            vertices: [
                Point2::new(q(1, 2), qi(1)),
                Point2::from_ints(0, 0),
                Point2::from_ints(1, 0),
            ],
        }
    }

    /// Parses `"x0,y0 x1,y1 x2,y2"` with rational coordinates.
    pub fn parse(s: &str) -> Result<Self> {
        let pts: Vec<&str> = s.split_whitespace().collect();
        if pts.len() != 3 {
            return Err(Error::Parse(format!("expected three vertices \"x,y x,y x,y\", got {s:?}")));
        }
        let mut v = Vec::with_capacity(3);
        for p in pts {
            let (x, y) = p
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("vertex {p:?} is not of the form x,y")))?;
            v.push(Point2::new(parse_rational(x)?, parse_rational(y)?));
        }
        let v: [Point2; 3] = v.try_into().expect("three vertices");
        Self::new(v)
    }

    pub fn vertices(&self) -> &[Point2; 3] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point2 {
        &self.vertices[i]
    }

    pub fn signed_area(&self) -> Q {
        let [a, b, c] = &self.vertices;
        orient(a, b, c) / qi(2)
    }

    pub fn area(&self) -> Q {
        let a = self.signed_area();
        if a < zero() {
            -a
        } else {
            a
        }
    }

    pub fn to_cartesian(&self, p: &BaryPoint) -> Point2 {
        let mut x = zero();
        let mut y = zero();
        for (l, v) in p.lambdas().iter().zip(&self.vertices) {
            x += l * &v.x;
            y += l * &v.y;
        }
        Point2::new(x, y)
    }

    pub fn to_bary(&self, p: &Point2) -> BaryPoint {
        let [a, b, c] = &self.vertices;
        let d = orient(a, b, c);
        let l1 = orient(a, p, c) / &d;
        let l2 = orient(a, b, p) / &d;
        BaryPoint::from_tail(l1, l2)
    }

    /// `[∂λi/∂x, ∂λi/∂y]` for each `i`, exact.
    pub fn lambda_gradients(&self) -> [[Q; 2]; 3] {
        let [a, b, c] = &self.vertices;
        let d = orient(a, b, c);
        // λ1 = orient(a, p, c)/d, λ2 = orient(a, b, p)/d
        let g1 = [(&c.y - &a.y) / &d, (&a.x - &c.x) / &d];
        let g2 = [(&a.y - &b.y) / &d, (&b.x - &a.x) / &d];
        let g0 = [-(&g1[0] + &g2[0]), -(&g1[1] + &g2[1])];
        [g0, g1, g2]
    }

    /// Vertices as `"x,y x,y x,y"`, the inverse of [`Self::parse`].
    pub fn to_spec_string(&self) -> String {
        self.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// `x ↦ A x + b` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: [[Q; 2]; 2],
    pub translation: [Q; 2],
}

impl AffineMap {
    pub fn identity() -> Self {
        Self { linear: [[one(), zero()], [zero(), one()]], translation: [zero(), zero()] }
    }

    /// `τ_ξ : x ↦ λ0(ξ) x + λ1(ξ) x1 + λ2(ξ) x2`. Its linear part is
    /// `λ0(ξ)·I`, so it is invertible exactly when `λ0(ξ) ≠ 0`.
    pub fn tau(tri: &Triangle, xi: &BaryPoint) -> Self {
        let s = xi.lambda(0).clone();
        let x1 = tri.vertex(1);
        let x2 = tri.vertex(2);
        let tx = xi.lambda(1) * &x1.x + xi.lambda(2) * &x2.x;
        let ty = xi.lambda(1) * &x1.y + xi.lambda(2) * &x2.y;
        Self { linear: [[s.clone(), zero()], [zero(), s]], translation: [tx, ty] }
    }

    /// `z_α : x ↦ (1/r) Σ (λi(x) + αi) xi`, the homothety of ratio `1/r`
    /// onto the small triangle indexed by `α ∈ I(r-1, 2)`.
    pub fn homothety(tri: &Triangle, alpha: &crate::barypoly::MultiIndex, r: u32) -> Self {
        let inv = Q::new(1.into(), r.into());
        let mut tx = zero();
        let mut ty = zero();
        for (a, v) in alpha.0.iter().zip(tri.vertices()) {
            tx += qi(*a as i64) * &v.x;
            ty += qi(*a as i64) * &v.y;
        }
        Self {
            linear: [[inv.clone(), zero()], [zero(), inv.clone()]],
            translation: [tx * &inv, ty * &inv],
        }
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        let [[a, b], [c, d]] = &self.linear;
        Point2::new(a * &p.x + b * &p.y + &self.translation[0], c * &p.x + d * &p.y + &self.translation[1])
    }

    pub fn apply_bary(&self, tri: &Triangle, p: &BaryPoint) -> BaryPoint {
        tri.to_bary(&self.apply(&tri.to_cartesian(p)))
    }

    pub fn determinant(&self) -> Q {
        let [[a, b], [c, d]] = &self.linear;
        a * d - b * c
    }

    pub fn is_invertible(&self) -> bool {
        !self.determinant().is_zero()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        let a = &self.linear;
        let b = &inner.linear;
        let mut linear: [[Q; 2]; 2] = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                linear[i][j] = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
            }
        }
        let t = &inner.translation;
        let translation = [
            &a[0][0] * &t[0] + &a[0][1] * &t[1] + &self.translation[0],
            &a[1][0] * &t[0] + &a[1][1] * &t[1] + &self.translation[1],
        ];
        AffineMap { linear, translation }
    }

    /// `m[i][j] = λi(map(xj))`, so that `λi ∘ map = Σj m[i][j] λj`.
    pub fn barycentric_matrix(&self, tri: &Triangle) -> [[Q; 3]; 3] {
        let mut m: [[Q; 3]; 3] = Default::default();
        for j in 0..3 {
            let img = tri.to_bary(&self.apply(tri.vertex(j)));
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = img.lambda(i).clone();
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barypoly::{affine_pullback, BaryPolynomial};

    fn xi(a: i64, b: i64, c: i64, d: i64) -> BaryPoint {
        BaryPoint::new(q(a, d), q(b, d), q(c, d)).unwrap()
    }

    #[test]
    fn degenerate_triangle_rejected() {
        let pts = [Point2::from_ints(0, 0), Point2::from_ints(1, 1), Point2::from_ints(2, 2)];
        assert_eq!(Triangle::new(pts), Err(Error::ZeroArea));
    }

    #[test]
    fn bary_roundtrip_and_gradients() {
        let t = Triangle::parse("1/2,1/3 3,1 -1,4").unwrap();
        let p = Point2::new(q(2, 7), q(5, 3));
        let b = t.to_bary(&p);
        assert_eq!(t.to_cartesian(&b), p);
        let u = Triangle::unit_right();
        let g = u.lambda_gradients();
        assert_eq!(g[1], [qi(1), qi(0)]);
        assert_eq!(g[2], [qi(0), qi(1)]);
        assert_eq!(g[0], [qi(-1), qi(-1)]);
    }

    #[test]
    fn tau_examples() {
        let t = Triangle::unit_right();
        assert_eq!(AffineMap::tau(&t, &BaryPoint::vertex(0)), AffineMap::identity());
        let x = xi(1, 2, 3, 6);
        let m = AffineMap::tau(&t, &x);
        assert_eq!(m.apply_bary(&t, &BaryPoint::vertex(0)), x);
        let edge_mid = xi(0, 1, 1, 2);
        let m = AffineMap::tau(&t, &edge_mid);
        assert!(!m.is_invertible());
        for v in 0..3 {
            assert_eq!(m.apply_bary(&t, &BaryPoint::vertex(v)), edge_mid);
        }
    }

    #[test]
    fn tau_linear_part_is_scaled_identity() {
        let t = Triangle::parse("0,0 3,1 1,2").unwrap();
        let m = AffineMap::tau(&t, &xi(1, 1, 2, 4));
        assert_eq!(m.linear, [[q(1, 4), qi(0)], [qi(0), q(1, 4)]]);
    }

    #[test]
    fn pullback_examples() {
        let t = Triangle::unit_right();
        let m = AffineMap::tau(&t, &xi(2, 1, 1, 4));
        let p0 = affine_pullback(&BaryPolynomial::lambda(0), &m, &t);
        assert_eq!(p0, BaryPolynomial::lambda(0).scale(&q(1, 2)));
        let p1 = affine_pullback(&BaryPolynomial::lambda(1), &m, &t);
        let expect = &BaryPolynomial::lambda(1).scale(&q(1, 2)) + &BaryPolynomial::constant(q(1, 4));
        assert_eq!(p1, expect);
        let p = BaryPolynomial::lambda(2).pow(3);
        assert_eq!(affine_pullback(&p, &AffineMap::identity(), &t), p);
    }

    #[test]
    fn homothety_maps_onto_lattice() {
        let t = Triangle::unit_right();
        let a = crate::barypoly::MultiIndex::new(0, 1, 0);
        let z = AffineMap::homothety(&t, &a, 2);
        assert_eq!(z.apply_bary(&t, &BaryPoint::vertex(0)), xi(1, 1, 0, 2));
        assert_eq!(z.apply_bary(&t, &BaryPoint::vertex(1)), BaryPoint::vertex(1));
        assert_eq!(AffineMap::homothety(&t, &crate::barypoly::MultiIndex::new(0, 0, 0), 1), AffineMap::identity());
    }

    #[test]
    fn parse_and_print() {
        let t = Triangle::parse("0/1,0/1 1/1,0/1 0/1,1/1").unwrap();
        assert_eq!(t, Triangle::unit_right());
        assert_eq!(Triangle::parse(&t.to_spec_string()).unwrap(), t);
        assert!(Triangle::parse("0,0 1,0").is_err());
    }
}
