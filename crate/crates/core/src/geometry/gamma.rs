//! The point sets `Γ_r` that anchor the two-dimensional cells.

use std::fmt;

use num_traits::Zero;

use crate::barypoly::{BaryPoint, BaryPolynomial, MultiIndex};
use crate::error::{Error, Result};
use crate::geometry::lattice::{check_degree, lattice_coords};
use crate::linalg::RationalMatrix;
use crate::rational::{format_rational, parse_rational, q, qi};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSet {
    r: u32,
    points: Vec<BaryPoint>,
}

impl GammaSet {
    /// The recursive choice: `Γ_2 = {x0}` and `Γ_r = τ_{ζ_r}(Γ_{r-1}) ∪ Δ_r`,
    /// listed in that order.
    pub fn recursive(r: i64) -> Result<Self> {
        let r = check_degree(r, 2)?;
        let mut points = vec![BaryPoint::vertex(0)];
        for s in 3..=r {
            let zeta = zeta(s);
            let mut next: Vec<BaryPoint> = points.iter().map(|p| tau_bary(&zeta, p)).collect();
            next.extend(delta(s));
            points = next;
        }
        Ok(Self { r, points })
    }

    /// A user-supplied set. The points must lie on `L_r(T)` with `λ0 > 0`,
    /// and there must be `r(r-1)/2` of them. Repeated points are accepted so
    /// that the rank certificate, not the constructor, rejects them.
    pub fn from_points(r: i64, points: Vec<BaryPoint>) -> Result<Self> {
        let r = check_degree(r, 2)?;
        let expected = (r * (r - 1) / 2) as usize;
        if points.len() != expected {
            return Err(Error::CardinalityMismatch { expected, got: points.len() });
        }
        for p in &points {
            if lattice_coords(p, r).is_none() {
                return Err(Error::NotOnLattice(p.to_string(), r as usize));
            }
            if p.lambda(0).is_zero() {
                return Err(Error::NotOnLattice(format!("{p} (λ0 must be positive)"), r as usize));
            }
        }
        Ok(Self { r, points })
    }

    /// One point per line as three rationals, `#` starting a comment.
    pub fn parse(r: i64, text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
            if f.len() != 3 {
                return Err(Error::Parse(format!("line {}: expected three coordinates", n + 1)));
            }
            let [a, b, c] = [f[0], f[1], f[2]].map(parse_rational);
            points.push(BaryPoint::new(a?, b?, c?)?);
        }
        Self::from_points(r, points)
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn points(&self) -> &[BaryPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn lattice_indices(&self) -> Vec<MultiIndex> {
        self.points.iter().map(|p| lattice_coords(p, self.r).expect("validated on construction")).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for p in &self.points {
            let l = p.lambdas();
            s.push_str(&format!("{} {} {}\n", format_rational(&l[0]), format_rational(&l[1]), format_rational(&l[2])));
        }
        s
    }
}

impl fmt::Display for GammaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", pts.join(", "))
    }
}

fn zeta(r: u32) -> BaryPoint {
    let r = r as i64;
    if r % 2 == 1 {
        BaryPoint::new(q(r - 1, r), qi(0), q(1, r)).unwrap()
    } else {
        BaryPoint::new(q(r - 1, r), q(1, r), qi(0)).unwrap()
    }
}

// The index runs to r and the midpoint is skipped; the published formula
// prints `1 - i` where the listed examples need `r - i`.
fn delta(r: u32) -> Vec<BaryPoint> {
    let r = r as i64;
    let skip = if r % 2 == 1 { (r + 1) / 2 } else { r / 2 };
    (1..=r)
        .filter(|&i| i != skip)
        .map(|i| {
            if r % 2 == 1 {
                BaryPoint::new(q(i, r), q(r - i, r), qi(0)).unwrap()
            } else {
                BaryPoint::new(q(i, r), qi(0), q(r - i, r)).unwrap()
            }
        })
        .collect()
}

/// `τ_ξ(μ)` in barycentric form: `(ξ0 μ0, ξ0 μ1 + ξ1, ξ0 μ2 + ξ2)`.
pub fn tau_bary(xi: &BaryPoint, mu: &BaryPoint) -> BaryPoint {
    let s = xi.lambda(0);
    BaryPoint::from_tail(s * mu.lambda(1) + xi.lambda(1), s * mu.lambda(2) + xi.lambda(2))
}

/// Whether `points` are poised for polynomials of total degree `degree`:
/// the evaluation matrix of the monomials `λ^α`, `|α| = degree`, has full
/// rank. The number of points must equal the dimension of that space.
pub fn certify_poised(points: &[BaryPoint], degree: u32) -> Result<bool> {
    let basis = MultiIndex::all_of_degree(degree);
    if points.len() != basis.len() {
        return Err(Error::CardinalityMismatch { expected: basis.len(), got: points.len() });
    }
    let rows = points
        .iter()
        .map(|p| basis.iter().map(|a| BaryPolynomial::monomial(*a, qi(1)).evaluate(p)).collect())
        .collect();
    Ok(RationalMatrix::from_rows(rows).rank() == basis.len())
}
