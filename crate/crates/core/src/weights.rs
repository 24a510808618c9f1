//! Weights: integrals of forms over cells, and the matrices built from them.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::barypoly::{BaryPoint, BaryPolynomial};
use crate::error::{Error, Result};
use crate::forms::{monomial_basis, BasisKind, PolyForm};
use crate::geometry::{principal_lattice, Cell, DofComplex, FaceCell, Segment, Triangle};
use crate::linalg::{cond2, RationalMatrix};
use crate::quadrature::{LineRule, TriangleRule};
use crate::rational::{format_rational, one, to_f64, Q};

fn orientation(tri: &Triangle) -> Q {
    if tri.signed_area().is_negative() {
        -one()
    } else {
        one()
    }
}

/// `∫_c ω`, exact. Two-dimensional domains carry the orientation of `T`.
pub fn weight(form: &PolyForm, cell: &Cell, tri: &Triangle) -> Result<Q> {
    if form.k() != cell.dim() {
        return Err(Error::DimensionMismatch(format!("{}-form on a {}-cell", form.k(), cell.dim())));
    }
    Ok(match cell {
        Cell::Vertex(p) => form.component(0).evaluate(p),
        Cell::Edge(s) => edge_weight(form, s, tri),
        Cell::Triangle(t) => {
            let verts: Vec<BaryPoint> = t.vertices().iter().map(|v| tri.to_bary(v)).collect();
            orientation(tri) * form.component(0).integrate_over_simplex(&verts, &t.area())
        }
        Cell::Face(f) => face_weight(form.component(0), f, tri),
    })
}

fn edge_weight(form: &PolyForm, s: &Segment, tri: &Triangle) -> Q {
    let [tx, ty] = s.tangent(tri);
    let ends = [s.tail.clone(), s.head.clone()];
    let mut w = Q::zero();
    if !tx.is_zero() {
        w += tx * form.component(0).integrate_over_simplex(&ends, &one());
    }
    if !ty.is_zero() {
        w += ty * form.component(1).integrate_over_simplex(&ends, &one());
    }
    w
}

fn face_weight(f: &BaryPolynomial, cell: &FaceCell, tri: &Triangle) -> Q {
    orientation(tri) * cell.integrate(f, tri)
}

/// A form with arbitrary (smooth) coefficients, evaluated in floating point
/// at Cartesian points. Components follow [`PolyForm`]: one value for
/// `k = 0, 2`, the `dx` and `dy` coefficients for `k = 1`.
#[derive(Clone)]
pub struct FormField {
    k: usize,
    f: Arc<dyn Fn([f64; 2]) -> [f64; 2] + Send + Sync>,
}

impl FormField {
    pub fn scalar(f: impl Fn([f64; 2]) -> f64 + Send + Sync + 'static) -> Self {
        Self { k: 0, f: Arc::new(move |p| [f(p), 0.0]) }
    }

    pub fn one_form(f: impl Fn([f64; 2]) -> [f64; 2] + Send + Sync + 'static) -> Self {
        Self { k: 1, f: Arc::new(f) }
    }

    pub fn two_form(f: impl Fn([f64; 2]) -> f64 + Send + Sync + 'static) -> Self {
        Self { k: 2, f: Arc::new(move |p| [f(p), 0.0]) }
    }

    pub fn from_poly(form: &PolyForm, tri: &Triangle) -> Self {
        let form = form.clone();
        let tri = tri.clone();
        let to_bary = bary_converter(&tri);
        Self {
            k: form.k(),
            f: Arc::new(move |p| {
                let v = form.evaluate_f64(to_bary(p));
                [v[0], v.get(1).copied().unwrap_or(0.0)]
            }),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn eval(&self, p: [f64; 2]) -> [f64; 2] {
        (self.f)(p)
    }

    /// `self - other`.
    pub fn minus(&self, other: &FormField) -> Result<FormField> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch(format!("{}-form and {}-form", self.k, other.k)));
        }
        let (a, b) = (self.f.clone(), other.f.clone());
        Ok(Self {
            k: self.k,
            f: Arc::new(move |p| {
                let (x, y) = (a(p), b(p));
                [x[0] - y[0], x[1] - y[1]]
            }),
        })
    }
}

impl std::fmt::Debug for FormField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FormField({}-form)", self.k)
    }
}

/// Cartesian point to barycentric coordinates of `tri`, in floating point.
pub fn bary_converter(tri: &Triangle) -> impl Fn([f64; 2]) -> [f64; 3] + Send + Sync + Clone {
    let [a, b, c] = tri.vertices().each_ref().map(|v| v.to_f64());
    let d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    move |p: [f64; 2]| {
        let l1 = ((p[0] - a[0]) * (c[1] - a[1]) - (p[1] - a[1]) * (c[0] - a[0])) / d;
        let l2 = ((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])) / d;
        [1.0 - l1 - l2, l1, l2]
    }
}

/// `∫_c f` by quadrature: `order`-point Gauss–Legendre on segments and the
/// collapsed rule with `order` points per direction on each lattice tile of
/// a two-dimensional cell.
pub fn weight_numeric(f: &FormField, cell: &Cell, tri: &Triangle, order: usize) -> Result<f64> {
    if f.k() != cell.dim() {
        return Err(Error::DimensionMismatch(format!("{}-form on a {}-cell", f.k(), cell.dim())));
    }
    let sign = to_f64(&orientation(tri));
    Ok(match cell {
        Cell::Vertex(p) => f.eval(tri.to_cartesian(p).to_f64())[0],
        Cell::Edge(s) => {
            let a = tri.to_cartesian(&s.tail).to_f64();
            let b = tri.to_cartesian(&s.head).to_f64();
            segment_integral(f, a, b, &LineRule::new(order))
        }
        Cell::Triangle(t) => {
            let v = t.vertices().each_ref().map(|p| p.to_f64());
            sign * TriangleRule::new(order).integrate(&v, |p| f.eval(p)[0])
        }
        Cell::Face(c) => {
            let rule = TriangleRule::new(order);
            let r = c.degree();
            sign * c
                .tiles()
                .iter()
                .map(|t| {
                    let v = t.bary_vertices(r).map(|p| tri.to_cartesian(&p).to_f64());
                    rule.integrate(&v, |p| f.eval(p)[0])
                })
                .sum::<f64>()
        }
    })
}

/// `∫_a^b f` along the straight segment for a 1-form field.
pub fn segment_integral(f: &FormField, a: [f64; 2], b: [f64; 2], rule: &LineRule) -> f64 {
    let t = [b[0] - a[0], b[1] - a[1]];
    rule.integrate(|s| {
        let v = f.eval([a[0] + s * t[0], a[1] + s * t[1]]);
        v[0] * t[0] + v[1] * t[1]
    })
}

/// Matrix of weights with labelled rows (cells) and columns (basis forms).
#[derive(Debug, Clone, Serialize)]
pub struct WeightMatrix {
    pub r: u32,
    pub k: usize,
    pub basis: BasisKind,
    #[serde(serialize_with = "ser_matrix")]
    pub entries: RationalMatrix,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

fn ser_matrix<S: serde::Serializer>(m: &RationalMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.rows()))?;
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(format_rational).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

impl WeightMatrix {
    pub fn rank(&self) -> usize {
        self.entries.rank()
    }

    pub fn is_square(&self) -> bool {
        self.entries.rows() == self.entries.cols()
    }

    pub fn cond2(&self) -> f64 {
        cond2(&self.entries.to_f64())
    }

    /// CSV with a header of column labels and the row label in front.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("cell");
        for c in &self.col_labels {
            s.push(',');
            s.push_str(&csv_field(c));
        }
        s.push('\n');
        for (i, l) in self.row_labels.iter().enumerate() {
            s.push_str(&csv_field(l));
            for v in self.entries.row(i) {
                s.push(',');
                s.push_str(&format_rational(v));
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("weight matrices serialize")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The cells of `F^k` as generic cells.
pub fn cells_of(complex: &DofComplex, k: usize) -> Result<Vec<Cell>> {
    match k {
        0 => Ok(complex.vertices().into_iter().map(Cell::Vertex).collect()),
        1 => Ok(complex.edges().into_iter().map(Cell::Edge).collect()),
        2 => Ok(complex.faces().iter().cloned().map(Cell::Face).collect()),
        _ => Err(Error::InvalidDegree(format!("form degree {k} is not 0, 1 or 2"))),
    }
}

fn cell_label(c: &Cell) -> String {
    match c {
        Cell::Vertex(p) => format!("v{p}"),
        Cell::Edge(s) => format!("e{}->{}", s.tail, s.head),
        Cell::Triangle(t) => format!("t[{}]", t.to_spec_string()),
        Cell::Face(f) => format!("s{}", f.apex()),
    }
}

fn assemble(cells: &[Cell], basis: &[PolyForm], tri: &Triangle) -> Result<RationalMatrix> {
    let rows: Vec<Vec<Q>> = cells
        .par_iter()
        .map(|c| basis.iter().map(|b| weight(b, c, tri)).collect::<Result<Vec<Q>>>())
        .collect::<Result<_>>()?;
    Ok(RationalMatrix::from_rows(rows))
}

/// Generalized Vandermonde matrix of the monomial basis of `P_{r-k}Λ^k`
/// over `F^k`.
pub fn vandermonde(complex: &DofComplex, k: usize, kind: BasisKind) -> Result<WeightMatrix> {
    let r = complex.degree();
    if k > 2 {
        return Err(Error::InvalidDegree(format!("form degree {k} is not 0, 1 or 2")));
    }
    let tri = complex.triangle();
    let cells = cells_of(complex, k)?;
    let basis = monomial_basis(tri, r - k as u32, k, kind)?;
    Ok(WeightMatrix {
        r,
        k,
        basis: kind,
        entries: assemble(&cells, &basis, tri)?,
        row_labels: cells.iter().map(cell_label).collect(),
        col_labels: basis.iter().map(|b| b.to_string()).collect(),
    })
}

/// Evaluation matrix of the degree-`r` scalar basis on `L_r(T)`; also
/// defined for `r = 1`, where no two-dimensional cells exist.
pub fn lattice_vandermonde(tri: &Triangle, r: i64, kind: BasisKind) -> Result<WeightMatrix> {
    let pts = principal_lattice(tri, r)?;
    let cells: Vec<Cell> = pts.into_iter().map(Cell::Vertex).collect();
    let basis = monomial_basis(tri, r as u32, 0, kind)?;
    Ok(WeightMatrix {
        r: r as u32,
        k: 0,
        basis: kind,
        entries: assemble(&cells, &basis, tri)?,
        row_labels: cells.iter().map(cell_label).collect(),
        col_labels: basis.iter().map(|b| b.to_string()).collect(),
    })
}

/// The de Rham map `R^k` in the monomial basis. Rows follow the orientation
/// of the cells in the complex, so this is the Vandermonde matrix itself;
/// reversing a cell flips the sign of its row.
pub fn de_rham_matrix(complex: &DofComplex, k: usize, kind: BasisKind) -> Result<WeightMatrix> {
    vandermonde(complex, k, kind)
}

/// The cochain `R^k ω` of weights on `F^k`.
pub fn de_rham_cochain(form: &PolyForm, complex: &DofComplex) -> Result<Vec<Q>> {
    let tri = complex.triangle();
    cells_of(complex, form.k())?.par_iter().map(|c| weight(form, c, tri)).collect()
}

/// Weights of a smooth form on `F^k` by quadrature.
pub fn de_rham_cochain_numeric(f: &FormField, complex: &DofComplex, order: usize) -> Result<Vec<f64>> {
    let tri = complex.triangle();
    cells_of(complex, f.k())?.par_iter().map(|c| weight_numeric(f, c, tri, order)).collect()
}

/// Matrix of `d : P_{r-k}Λ^k → P_{r-k-1}Λ^{k+1}` in the monomial bases of
/// the given kind.
pub fn derivative_matrix(tri: &Triangle, r: u32, k: usize, kind: BasisKind) -> Result<RationalMatrix> {
    if k > 1 || r < k as u32 + 1 {
        return Err(Error::InvalidDegree(format!("no derivative matrix for r = {r}, k = {k}")));
    }
    let deg = r - k as u32;
    let src = monomial_basis(tri, deg, k, kind)?;
    let dst = monomial_basis(tri, deg - 1, k + 1, kind)?;
    // columns of `b` are the barycentric coordinates of the target basis
    let cols: Vec<Vec<Q>> = dst.iter().map(|f| f.coordinates(deg - 1)).collect::<Result<_>>()?;
    let b = RationalMatrix::from_rows(cols).transpose();
    let mut out = RationalMatrix::zeros(dst.len(), src.len());
    for (j, f) in src.iter().enumerate() {
        let c = f.exterior_derivative(tri)?.coordinates(deg - 1)?;
        let x = match kind {
            BasisKind::Barycentric => c,
            BasisKind::Cartesian => b.solve(&c)?,
        };
        for (i, v) in x.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// One row of the conditioning table: polynomial degree `d` of the
/// coefficients, and for each `k` the condition number of the Vandermonde
/// matrix of `P_d Λ^k` (sequence degree `d + k`), if it is computed.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionRow {
    pub degree: u32,
    pub cond: [Option<f64>; 3],
}

/// The basis used for each form degree when tabulating condition numbers:
/// Cartesian monomials for functions and densities, barycentric ones for
/// 1-forms.
pub const TABLE_BASES: [BasisKind; 3] = [BasisKind::Cartesian, BasisKind::Barycentric, BasisKind::Cartesian];

/// Condition numbers for polynomial degrees `1..=d_max`, restricted to
/// sequence degrees at most `r_max`. `k = 0` at `d = 1` uses the lattice
/// matrix directly, since no cells exist for `r = 1`.
pub fn condition_table(tri: &Triangle, d_max: u32, r_max: u32, bases: [BasisKind; 3]) -> Result<Vec<ConditionRow>> {
    let complexes: Vec<(u32, DofComplex)> = (2..=r_max)
        .into_par_iter()
        .map(|r| crate::geometry::build_complex(tri, r as i64).map(|c| (r, c)))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for d in 1..=d_max {
        let mut cond = [None; 3];
        for (k, slot) in cond.iter_mut().enumerate() {
            let r = d + k as u32;
            if r > r_max {
                continue;
            }
            let m = if r == 1 {
                lattice_vandermonde(tri, 1, bases[k])?
            } else {
                let c = &complexes.iter().find(|(s, _)| *s == r).expect("built above").1;
                vandermonde(c, k, bases[k])?
            };
            *slot = Some(m.cond2());
        }
        rows.push(ConditionRow { degree: d, cond });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_complex;
    use crate::rational::{q, qi};

    #[test]
    fn elementary_weights() {
        let t = Triangle::unit_right();
        let dx = PolyForm::one_form(BaryPolynomial::constant(qi(1)), BaryPolynomial::zero());
        let seg = Segment::oriented(BaryPoint::vertex(0), BaryPoint::vertex(1));
        assert_eq!(weight(&dx, &Cell::Edge(seg.clone()), &t).unwrap(), qi(1));
        // the canonical orientation runs from the smaller triple (0,1,0) to (1,0,0)
        assert_eq!(Segment::new(seg.tail.clone(), seg.head.clone()), seg.reversed());
        let area = PolyForm::two_form(BaryPolynomial::constant(qi(1)));
        assert_eq!(weight(&area, &Cell::Triangle(t.clone()), &t).unwrap(), q(1, 2));
        assert!(weight(&dx, &Cell::Triangle(t.clone()), &t).is_err());
    }

    #[test]
    fn reversed_edge_negates() {
        let t = Triangle::unit_right();
        let f = PolyForm::one_form(BaryPolynomial::lambda(2), BaryPolynomial::lambda(1).pow(2));
        let s = Segment::new(BaryPoint::vertex(1), BaryPoint::new(qi(0), q(1, 3), q(2, 3)).unwrap());
        let a = weight(&f, &Cell::Edge(s.clone()), &t).unwrap();
        let b = weight(&f, &Cell::Edge(s.reversed()), &t).unwrap();
        assert_eq!(a, -b);
    }

    #[test]
    fn cell_area_weights() {
        let t = Triangle::unit_right();
        let c = build_complex(&t, 3).unwrap();
        let area = PolyForm::two_form(BaryPolynomial::constant(qi(1)));
        for f in c.faces() {
            assert_eq!(weight(&area, &Cell::Face(f.clone()), &t).unwrap(), f.shoelace_area(&t));
        }
    }

    #[test]
    fn small_vandermondes() {
        let t = Triangle::unit_right();
        let c2 = build_complex(&t, 2).unwrap();
        let v = vandermonde(&c2, 2, BasisKind::Barycentric).unwrap();
        assert_eq!(v.entries, RationalMatrix::from_rows(vec![vec![q(1, 2)]]));
        let v = vandermonde(&c2, 0, BasisKind::Barycentric).unwrap();
        assert_eq!(v.rank(), 6);
        let c3 = build_complex(&t, 3).unwrap();
        let v = vandermonde(&c3, 1, BasisKind::Barycentric).unwrap();
        assert!(v.is_square());
        assert_eq!(v.rank(), 12);
    }

    #[test]
    fn numeric_matches_exact_for_polynomials() {
        let t = Triangle::parse("0,0 2,1 1/2,3/2").unwrap();
        let c = build_complex(&t, 4).unwrap();
        for k in 0..3 {
            let basis = monomial_basis(&t, 4 - k as u32, k, BasisKind::Barycentric).unwrap();
            for cell in cells_of(&c, k).unwrap().iter().take(4) {
                for b in basis.iter().step_by(3) {
                    let exact = to_f64(&weight(b, cell, &t).unwrap());
                    let num = weight_numeric(&FormField::from_poly(b, &t), cell, &t, 6).unwrap();
                    assert!((exact - num).abs() <= 1e-12 * exact.abs().max(1e-3), "{exact} vs {num}");
                }
            }
        }
    }

    #[test]
    fn transcendental_weight_converges() {
        let t = Triangle::unit_right();
        let f = FormField::two_form(|p| p[0].exp() * (std::f64::consts::PI * p[1]).sin());
        let cell = Cell::Triangle(t.clone());
        let a = weight_numeric(&f, &cell, &t, 20).unwrap();
        let b = weight_numeric(&f, &cell, &t, 22).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn stokes_in_both_bases() {
        let t = Triangle::unit_right();
        let c = build_complex(&t, 3).unwrap();
        for kind in [BasisKind::Barycentric, BasisKind::Cartesian] {
            for k in 0..2 {
                let lhs = c.coboundary(k).unwrap().mul(&vandermonde(&c, k, kind).unwrap().entries).unwrap();
                let rhs = vandermonde(&c, k + 1, kind)
                    .unwrap()
                    .entries
                    .mul(&derivative_matrix(&t, 3, k, kind).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "k = {k}, {kind}");
            }
        }
    }

    #[test]
    fn csv_and_json_exports() {
        let c = build_complex(&Triangle::unit_right(), 2).unwrap();
        let v = vandermonde(&c, 2, BasisKind::Barycentric).unwrap();
        assert_eq!(v.to_csv().lines().nth(1).unwrap(), "\"s(1/1, 0/1, 0/1)\",1/2");
        let j: serde_json::Value = serde_json::from_str(&v.to_json()).unwrap();
        assert_eq!(j["entries"][0][0], "1/2");
        assert_eq!(j["basis"], "barycentric");
    }
}
