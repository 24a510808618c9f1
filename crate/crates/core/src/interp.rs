//! The interpolator induced by the weights, the commuting-diagram check,
//! the 0-norm estimator and the convergence experiment.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::barypoly::{BaryPoint, MultiIndex};
use crate::error::{Error, Result};
use crate::forms::{space_dim, BasisKind, PolyForm};
use crate::geometry::{build_complex, DofComplex, GammaSet, Triangle};
use crate::linalg::{cond2, RationalMatrix};
use crate::quadrature::LineRule;
use crate::rational::to_f64;
use crate::weights::{
    de_rham_cochain, de_rham_cochain_numeric, derivative_matrix, segment_integral, vandermonde, FormField,
};

/// Coefficients of an interpolant against the barycentric monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficients {
    Exact(Vec<crate::rational::Q>),
    Float(Vec<f64>),
}

/// `Π^k ω`, an element of `P_{r-k}Λ^k`.
#[derive(Debug, Clone)]
pub struct Interpolant {
    pub r: u32,
    pub k: usize,
    pub coefficients: Coefficients,
    tri: Triangle,
}

impl Interpolant {
    pub fn poly_degree(&self) -> u32 {
        self.r - self.k as u32
    }

    /// The interpolant as an exact form; `None` for floating-point coefficients.
    pub fn to_form(&self) -> Option<PolyForm> {
        match &self.coefficients {
            Coefficients::Exact(c) => PolyForm::from_coordinates(self.k, self.poly_degree(), c).ok(),
            Coefficients::Float(_) => None,
        }
    }

    pub fn to_field(&self) -> FormField {
        let coeffs: Vec<f64> = match &self.coefficients {
            Coefficients::Exact(c) => c.iter().map(to_f64).collect(),
            Coefficients::Float(c) => c.clone(),
        };
        let idx = MultiIndex::all_of_degree(self.poly_degree());
        let n = idx.len();
        let to_bary = crate::weights::bary_converter(&self.tri);
        let k = self.k;
        let eval = move |p: [f64; 2]| -> [f64; 2] {
            let l = to_bary(p);
            let mono: Vec<f64> = idx.iter().map(|a| (0..3).map(|i| l[i].powi(a.0[i] as i32)).product()).collect();
            let dot = |off: usize| (0..n).map(|j| coeffs[off + j] * mono[j]).sum::<f64>();
            if k == 1 {
                [dot(0), dot(n)]
            } else {
                [dot(0), 0.0]
            }
        };
        match k {
            0 => FormField::scalar(move |p| eval(p)[0]),
            1 => FormField::one_form(eval),
            _ => FormField::two_form(move |p| eval(p)[0]),
        }
    }
}

/// `Π^k` on a fixed complex, with the Vandermonde matrix factored once.
#[derive(Debug, Clone)]
pub struct Interpolator {
    complex: DofComplex,
    k: usize,
    inverse: RationalMatrix,
    float_lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl Interpolator {
    pub fn new(complex: &DofComplex, k: usize) -> Result<Self> {
        let v = vandermonde(complex, k, BasisKind::Barycentric)?;
        if !v.is_square() {
            return Err(Error::CardinalityMismatch { expected: v.entries.cols(), got: v.entries.rows() });
        }
        let inverse = v.entries.inverse()?;
        let float_lu = v.entries.to_f64().lu();
        Ok(Self { complex: complex.clone(), k, inverse, float_lu })
    }

    pub fn complex(&self) -> &DofComplex {
        &self.complex
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Exact interpolation of a polynomial form of any degree.
    pub fn interpolate(&self, form: &PolyForm) -> Result<Interpolant> {
        if form.k() != self.k {
            return Err(Error::DimensionMismatch(format!("{}-form for a {}-interpolator", form.k(), self.k)));
        }
        let w = de_rham_cochain(form, &self.complex)?;
        Ok(self.from_weights(&w))
    }

    pub fn from_weights(&self, w: &[crate::rational::Q]) -> Interpolant {
        let c = self.inverse.mul_vec(w).expect("sizes match");
        Interpolant {
            r: self.complex.degree(),
            k: self.k,
            coefficients: Coefficients::Exact(c),
            tri: self.complex.triangle().clone(),
        }
    }

    /// Interpolation of a smooth form: quadrature weights, floating solve.
    pub fn interpolate_numeric(&self, f: &FormField, order: usize) -> Result<Interpolant> {
        if f.k() != self.k {
            return Err(Error::DimensionMismatch(format!("{}-form for a {}-interpolator", f.k(), self.k)));
        }
        let w = de_rham_cochain_numeric(f, &self.complex, order)?;
        let c = self
            .float_lu
            .solve(&DVector::from_vec(w))
            .ok_or(Error::Singular { rank: 0, size: self.inverse.rows() })?;
        Ok(Interpolant {
            r: self.complex.degree(),
            k: self.k,
            coefficients: Coefficients::Float(c.iter().copied().collect()),
            tri: self.complex.triangle().clone(),
        })
    }
}

/// Convenience: exact `Π^k ω` on the default complex of degree `r`.
pub fn interpolate(form: &PolyForm, tri: &Triangle, r: i64) -> Result<Interpolant> {
    let c = build_complex(tri, r)?;
    Interpolator::new(&c, form.k())?.interpolate(form)
}

/// Checks `d Π⁰ ω = Π¹ dω` with exact arithmetic, reusing factorizations.
#[derive(Debug, Clone)]
pub struct CommutingCheck {
    pi0: Interpolator,
    pi1: Interpolator,
}

impl CommutingCheck {
    pub fn new(complex: &DofComplex) -> Result<Self> {
        Ok(Self { pi0: Interpolator::new(complex, 0)?, pi1: Interpolator::new(complex, 1)? })
    }

    pub fn check(&self, omega: &PolyForm) -> Result<bool> {
        if omega.k() != 0 {
            return Err(Error::DimensionMismatch("the commuting check takes a 0-form".into()));
        }
        let tri = self.pi0.complex.triangle();
        let lhs = self.pi0.interpolate(omega)?.to_form().expect("exact").exterior_derivative(tri)?;
        let rhs = self.pi1.interpolate(&omega.exterior_derivative(tri)?)?.to_form().expect("exact");
        Ok(lhs == rhs)
    }
}

/// `d(Π⁰ω) = Π¹(dω)` on the default complex of degree `r`.
pub fn check_commuting(omega: &PolyForm, tri: &Triangle, r: i64) -> Result<bool> {
    CommutingCheck::new(&build_complex(tri, r)?)?.check(omega)
}

/// Estimate of `‖ω‖₀` from a finite family of cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormEstimate {
    pub value: f64,
    pub k: usize,
    pub density: u32,
}

/// Sup of `|∫_c ω| / |c|` over small cells of all lattices up to `m`:
/// points of `L_j(T)` for `k = 0`, unit edges of `Σ¹_j(T)` for `k = 1`,
/// `1 ≤ j ≤ m`. Nesting the families makes the estimate non-decreasing in `m`.
pub fn zero_norm(f: &FormField, tri: &Triangle, m: u32, order: usize) -> Result<NormEstimate> {
    if m < 1 {
        return Err(Error::InvalidDegree("norm density must be at least 1".into()));
    }
    let value = match f.k() {
        0 => {
            let pts: BTreeSet<BaryPoint> = (1..=m)
                .flat_map(|j| MultiIndex::all_of_degree(j).into_iter().map(move |a| BaryPoint::lattice(a, j)))
                .collect();
            pts.par_iter()
                .map(|p| f.eval(tri.to_cartesian(p).to_f64())[0].abs())
                .reduce(|| 0.0, f64::max)
        }
        1 => {
            let rule = LineRule::new(order);
            let verts = tri.vertices().each_ref().map(|v| v.to_f64());
            let at = |a: &MultiIndex, j: u32| {
                let l = a.0.map(|x| x as f64 / j as f64);
                [0, 1].map(|c| l[0] * verts[0][c] + l[1] * verts[1][c] + l[2] * verts[2][c])
            };
            (1..=m)
                .into_par_iter()
                .map(|j| {
                    crate::geometry::unit_edges(j)
                        .iter()
                        .map(|(a, b)| {
                            let (pa, pb) = (at(a, j), at(b, j));
                            let len = (pb[0] - pa[0]).hypot(pb[1] - pa[1]);
                            segment_integral(f, pa, pb, &rule).abs() / len
                        })
                        .fold(0.0, f64::max)
                })
                .reduce(|| 0.0, f64::max)
        }
        k => return Err(Error::InvalidDegree(format!("no 0-norm estimator for {k}-forms"))),
    };
    Ok(NormEstimate { value, k: f.k(), density: m })
}

/// Settings of the convergence experiment.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub tri: Triangle,
    /// Largest sequence degree of the complexes used.
    pub r_max: u32,
    pub quad_order: usize,
    pub norm_density: u32,
    /// The target 0-form.
    pub omega: FormField,
    /// Its exterior derivative.
    pub d_omega: FormField,
}

impl ExperimentConfig {
    /// `ω = e^x sin(πy)` on the unit right triangle.
    pub fn standard(r_max: u32) -> Self {
        use std::f64::consts::PI;
        Self {
            tri: Triangle::unit_right(),
            r_max,
            quad_order: 20,
            norm_density: 40,
            omega: FormField::scalar(|p| p[0].exp() * (PI * p[1]).sin()),
            d_omega: FormField::one_form(|p| [p[0].exp() * (PI * p[1]).sin(), PI * p[0].exp() * (PI * p[1]).cos()]),
        }
    }
}

/// One line of the convergence table.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    /// Polynomial degree of the interpolation space `P_r Λ^k`.
    pub r: u32,
    pub k: usize,
    pub residual_norm: f64,
    pub norm_reference: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("r,k,residual_norm,norm_reference\n");
        for row in &self.rows {
            s.push_str(&format!("{},{},{:e},{:e}\n", row.r, row.k, row.residual_norm, row.norm_reference));
        }
        s
    }

    /// `r log10(residual)` pairs per form degree, blank line between blocks.
    pub fn plot_data(&self) -> String {
        let mut s = String::new();
        for k in 0..2 {
            s.push_str(&format!("# k = {k}\n"));
            for row in self.rows.iter().filter(|r| r.k == k) {
                s.push_str(&format!("{} {}\n", row.r, row.residual_norm.log10()));
            }
            s.push('\n');
        }
        s
    }

    pub fn get(&self, r: u32, k: usize) -> Option<&ConvergenceRow> {
        self.rows.iter().find(|row| row.r == r && row.k == k)
    }

    pub fn column(&self, k: usize) -> Vec<&ConvergenceRow> {
        self.rows.iter().filter(|row| row.k == k).collect()
    }
}

/// `‖ω − Π⁰ω‖₀` in `P_r Λ⁰` and `‖dω − Π¹dω‖₀` in `P_r Λ¹`, reading the
/// table by polynomial degree: a complex of sequence degree `s` serves
/// `k = 0` at `r = s` and `k = 1` at `r = s − 1`. Complexes run over
/// `2..=r_max`.
pub fn convergence_experiment(cfg: &ExperimentConfig) -> Result<ConvergenceTable> {
    if cfg.omega.k() != 0 || cfg.d_omega.k() != 1 {
        return Err(Error::DimensionMismatch("the experiment needs a 0-form and its derivative".into()));
    }
    let ref0 = zero_norm(&cfg.omega, &cfg.tri, cfg.norm_density, cfg.quad_order)?.value;
    let ref1 = zero_norm(&cfg.d_omega, &cfg.tri, cfg.norm_density, cfg.quad_order)?.value;
    let per_degree: Vec<Vec<ConvergenceRow>> = (2..=cfg.r_max)
        .into_par_iter()
        .map(|s| -> Result<Vec<ConvergenceRow>> {
            let c = build_complex(&cfg.tri, s as i64)?;
            let mut out = Vec::new();
            for (k, target, reference) in [(0usize, &cfg.omega, ref0), (1, &cfg.d_omega, ref1)] {
                let pi = Interpolator::new(&c, k)?.interpolate_numeric(target, cfg.quad_order)?;
                let res = target.minus(&pi.to_field())?;
                let n = zero_norm(&res, &cfg.tri, cfg.norm_density, cfg.quad_order)?.value;
                out.push(ConvergenceRow { r: s - k as u32, k, residual_norm: n, norm_reference: reference });
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<ConvergenceRow> = per_degree.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.k, r.r));
    Ok(ConvergenceTable { rows })
}

/// Outcome of every structural and algebraic check for one complex.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub r: u32,
    pub counts: [usize; 3],
    pub dims: [usize; 3],
    pub euler: i64,
    pub minimal: bool,
    pub paves: bool,
    pub overlap_free: bool,
    pub cellular: bool,
    pub boundary_squared_zero: bool,
    pub ranks: [usize; 3],
    pub full_rank: [bool; 3],
    pub stokes: [bool; 2],
    pub cond: [f64; 3],
    pub errors: Vec<String>,
    pub passed: bool,
}

/// Runs every check on the complex built from `gamma`; failures are
/// recorded in the report rather than returned as errors.
pub fn verify_all(tri: &Triangle, gamma: &GammaSet) -> VerifyReport {
    let r = gamma.degree();
    let dims = [0, 1, 2].map(|k| space_dim(r as i64, k).unwrap_or(0));
    let mut rep = VerifyReport {
        r,
        counts: [0; 3],
        dims,
        euler: 0,
        minimal: false,
        paves: false,
        overlap_free: false,
        cellular: false,
        boundary_squared_zero: false,
        ranks: [0; 3],
        full_rank: [false; 3],
        stokes: [false; 2],
        cond: [f64::INFINITY; 3],
        errors: Vec::new(),
        passed: false,
    };
    let complex = match DofComplex::build(tri, gamma) {
        Ok(c) => c,
        Err(e) => {
            rep.errors.push(e.to_string());
            return rep;
        }
    };
    rep.cellular = true;
    rep.counts = complex.counts();
    rep.euler = complex.euler_characteristic();
    rep.minimal = rep.counts == dims;
    rep.paves = complex.paves();
    rep.overlap_free = complex.overlapping_pairs().is_empty();
    rep.boundary_squared_zero = complex.boundary_of_boundary_vanishes();

    let mut mats = Vec::new();
    for k in 0..3 {
        match vandermonde(&complex, k, BasisKind::Barycentric) {
            Ok(v) => {
                rep.ranks[k] = v.rank();
                rep.full_rank[k] = v.is_square() && rep.ranks[k] == dims[k];
                rep.cond[k] = if v.is_square() { cond2(&v.entries.to_f64()) } else { f64::INFINITY };
                mats.push(Some(v.entries));
            }
            Err(e) => {
                rep.errors.push(format!("k = {k}: {e}"));
                mats.push(None);
            }
        }
    }
    for k in 0..2 {
        let (Some(a), Some(b)) = (&mats[k], &mats[k + 1]) else { continue };
        let ok = (|| -> Result<bool> {
            let lhs = complex.coboundary(k)?.mul(a)?;
            let rhs = b.mul(&derivative_matrix(tri, r, k, BasisKind::Barycentric)?)?;
            Ok(lhs == rhs)
        })();
        match ok {
            Ok(v) => rep.stokes[k] = v,
            Err(e) => rep.errors.push(format!("stokes k = {k}: {e}")),
        }
    }
    for k in 0..3 {
        if !rep.full_rank[k] {
            rep.errors.push(format!("k = {k}: rank {} of {}", rep.ranks[k], dims[k]));
        }
    }
    rep.passed = rep.cellular
        && rep.minimal
        && rep.euler == 1
        && rep.paves
        && rep.overlap_free
        && rep.boundary_squared_zero
        && rep.full_rank.iter().all(|b| *b)
        && rep.stokes.iter().all(|b| *b);
    rep
}

/// Floating Vandermonde solve used for smooth targets, exposed for callers
/// that assemble their own weights.
pub fn solve_float(v: &DMatrix<f64>, w: &[f64]) -> Option<Vec<f64>> {
    v.clone().lu().solve(&DVector::from_column_slice(w)).map(|x| x.iter().copied().collect())
}
