//! Polynomial differential forms on `T` in the Cartesian frame
//! `1, (dx, dy), dx∧dy` with barycentric-polynomial coefficients.

use std::fmt;

use serde::Serialize;

use crate::barypoly::{BaryPolynomial, MultiIndex};
use crate::error::{Error, Result};
use crate::geometry::Triangle;
use crate::rational::{binomial, one, zero, Q};

/// A `k`-form with polynomial coefficients: one component for `k = 0` and
/// `k = 2`, the `dx` and `dy` coefficients for `k = 1`.
#[derive(Debug, Clone)]
pub struct PolyForm {
    k: usize,
    components: Vec<BaryPolynomial>,
}

impl PolyForm {
    pub fn zero(k: usize) -> Self {
        Self { k, components: vec![BaryPolynomial::zero(); n_components(k)] }
    }

    pub fn scalar(f: BaryPolynomial) -> Self {
        Self { k: 0, components: vec![f] }
    }

    pub fn one_form(fx: BaryPolynomial, fy: BaryPolynomial) -> Self {
        Self { k: 1, components: vec![fx, fy] }
    }

    pub fn two_form(f: BaryPolynomial) -> Self {
        Self { k: 2, components: vec![f] }
    }

    pub fn new(k: usize, components: Vec<BaryPolynomial>) -> Result<Self> {
        if k > 2 || components.len() != n_components(k) {
            return Err(Error::DimensionMismatch(format!(
                "a {k}-form needs {} components, got {}",
                n_components(k.min(2)),
                components.len()
            )));
        }
        Ok(Self { k, components })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn components(&self) -> &[BaryPolynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &BaryPolynomial {
        &self.components[i]
    }

    /// Largest degree among the stored terms.
    pub fn degree(&self) -> u32 {
        self.components.iter().map(|c| c.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self { k: self.k, components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        Ok(Self { k: self.k, components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        Ok(Self { k: self.k, components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect() })
    }

    fn same_degree(&self, other: &Self) -> Result<()> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch(format!("{}-form and {}-form", self.k, other.k)));
        }
        Ok(())
    }

    /// True when every coefficient vanishes identically on the plane.
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero_function())
    }

    /// `dω`, with the chain rule `∂/∂x = Σ ∂λi/∂x · ∂/∂λi`.
    pub fn exterior_derivative(&self, tri: &Triangle) -> Result<Self> {
        let g = tri.lambda_gradients();
        let grad = |p: &BaryPolynomial, axis: usize| {
            let mut out = BaryPolynomial::zero();
            for (i, gi) in g.iter().enumerate() {
                if gi[axis] != zero() {
                    out = out + p.partial(i).scale(&gi[axis]);
                }
            }
            out
        };
        match self.k {
            0 => Ok(Self::one_form(grad(&self.components[0], 0), grad(&self.components[0], 1))),
            1 => Ok(Self::two_form(grad(&self.components[1], 0) - grad(&self.components[0], 1))),
            _ => Err(Error::InvalidDegree("the exterior derivative of a 2-form is not defined here".into())),
        }
    }

    /// Coefficients in the barycentric monomial basis of polynomial degree
    /// `deg`, in the order of [`monomial_basis`].
    pub fn coordinates(&self, deg: u32) -> Result<Vec<Q>> {
        let idx = MultiIndex::all_of_degree(deg);
        let mut out = Vec::with_capacity(idx.len() * self.components.len());
        for c in &self.components {
            let h = c.homogenize(deg)?;
            out.extend(idx.iter().map(|a| h.coefficient(a)));
        }
        Ok(out)
    }

    /// Inverse of [`Self::coordinates`].
    pub fn from_coordinates(k: usize, deg: u32, coords: &[Q]) -> Result<Self> {
        let idx = MultiIndex::all_of_degree(deg);
        let n = n_components(k);
        if coords.len() != idx.len() * n {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a space of dimension {}",
                coords.len(),
                idx.len() * n
            )));
        }
        let components = coords
            .chunks(idx.len())
            .map(|chunk| BaryPolynomial::from_terms(idx.iter().copied().zip(chunk.iter().cloned())))
            .collect();
        Self::new(k, components)
    }

    /// Coefficient values at a point given by barycentric coordinates.
    pub fn evaluate_f64(&self, l: [f64; 3]) -> Vec<f64> {
        self.components.iter().map(|c| c.evaluate_f64(l)).collect()
    }
}

impl PartialEq for PolyForm {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.components == other.components
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            0 => write!(f, "{}", self.components[0]),
            1 => write!(f, "({}) dx + ({}) dy", self.components[0], self.components[1]),
            _ => write!(f, "({}) dx∧dy", self.components[0]),
        }
    }
}

fn n_components(k: usize) -> usize {
    if k == 1 {
        2
    } else {
        1
    }
}

/// `dω` on the plane of `tri`.
pub fn exterior_derivative(form: &PolyForm, tri: &Triangle) -> Result<PolyForm> {
    form.exterior_derivative(tri)
}

/// `dim P_{r-k} Λ^k` for the sequence of degree `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpaceDescriptor {
    pub r: u32,
    pub k: usize,
    pub dim: usize,
}

impl SpaceDescriptor {
    pub fn new(r: u32, k: usize) -> Result<Self> {
        Ok(Self { r, k, dim: space_dim(r as i64, k)? })
    }

    /// Polynomial degree of the coefficients, `r - k`.
    pub fn poly_degree(&self) -> u32 {
        self.r - self.k as u32
    }
}

/// `C(r-k+2, 2) · C(2, k)`.
pub fn space_dim(r: i64, k: usize) -> Result<usize> {
    if k > 2 || r < k as i64 {
        return Err(Error::InvalidDegree(format!("P_{{{r}-{k}}}Λ^{k} is not defined")));
    }
    let d = (r - k as i64) as usize;
    Ok(binomial(d + 2, 2) * binomial(2, k))
}

/// Which polynomials fill the coefficient slots of the monomial basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    /// `λ^α`, `|α| = deg`, in descending lexicographic order of `α`.
    Barycentric,
    /// `x^a y^b`, `a + b ≤ deg`, graded, then by descending `a`.
    Cartesian,
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisKind::Barycentric => "barycentric",
            BasisKind::Cartesian => "cartesian",
        })
    }
}

/// The coordinate function `x` (`axis = 0`) or `y` (`axis = 1`) of `tri`'s plane.
pub fn cartesian_coordinate(tri: &Triangle, axis: usize) -> BaryPolynomial {
    let c = tri.vertices().each_ref().map(|v| if axis == 0 { v.x.clone() } else { v.y.clone() });
    BaryPolynomial::linear(&c)
}

/// Scalar monomials of degree at most (Cartesian) or exactly (barycentric) `deg`.
pub fn scalar_basis(tri: &Triangle, deg: u32, kind: BasisKind) -> Vec<BaryPolynomial> {
    match kind {
        BasisKind::Barycentric => MultiIndex::all_of_degree(deg).into_iter().map(|a| BaryPolynomial::monomial(a, one())).collect(),
        BasisKind::Cartesian => {
            let x = cartesian_coordinate(tri, 0);
            let y = cartesian_coordinate(tri, 1);
            let mut out = Vec::new();
            for n in 0..=deg {
                for a in (0..=n).rev() {
                    out.push(x.pow(a) * y.pow(n - a));
                }
            }
            out
        }
    }
}

/// Monomial basis of `P_deg Λ^k`; for `k = 1` the `dx` block comes first.
pub fn monomial_basis(tri: &Triangle, deg: u32, k: usize, kind: BasisKind) -> Result<Vec<PolyForm>> {
    let s = scalar_basis(tri, deg, kind);
    match k {
        0 => Ok(s.into_iter().map(PolyForm::scalar).collect()),
        1 => {
            let zero = BaryPolynomial::zero();
            let mut out: Vec<PolyForm> = s.iter().map(|p| PolyForm::one_form(p.clone(), zero.clone())).collect();
            out.extend(s.into_iter().map(|p| PolyForm::one_form(zero.clone(), p)));
            Ok(out)
        }
        2 => Ok(s.into_iter().map(PolyForm::two_form).collect()),
        _ => Err(Error::InvalidDegree(format!("form degree {k} is not 0, 1 or 2"))),
    }
}
