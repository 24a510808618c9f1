//! Integration domains: points, oriented segments, small triangles, and the
//! two-dimensional cells `s_i = closure(τ_{ξi}(T) \ ∪ τ_ξ(T))`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::barypoly::{BaryPoint, BaryPolynomial, MultiIndex};
use crate::error::{Error, Result};
use crate::geometry::homothetic::{HomotheticTriangle, SignedTriangles};
use crate::geometry::lattice::{tiles, Tile};
use crate::geometry::{GammaSet, Point2, Triangle};
use crate::rational::{qi, zero, Q};

/// A segment between two points of `T`, oriented from `tail` to `head`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub tail: BaryPoint,
    pub head: BaryPoint,
}

impl Segment {
    /// Oriented from the lexicographically smaller endpoint to the larger.
    pub fn new(a: BaryPoint, b: BaryPoint) -> Self {
        if a <= b {
            Self { tail: a, head: b }
        } else {
            Self { tail: b, head: a }
        }
    }

    pub fn oriented(tail: BaryPoint, head: BaryPoint) -> Self {
        Self { tail, head }
    }

    pub fn reversed(&self) -> Self {
        Self { tail: self.head.clone(), head: self.tail.clone() }
    }

    pub fn tangent(&self, tri: &Triangle) -> [Q; 2] {
        let a = tri.to_cartesian(&self.tail);
        let b = tri.to_cartesian(&self.head);
        [b.x - a.x, b.y - a.y]
    }

    pub fn length_f64(&self, tri: &Triangle) -> f64 {
        let [dx, dy] = self.tangent(tri).map(|v| crate::rational::to_f64(&v));
        dx.hypot(dy)
    }

    /// Exact test that `p` lies on the closed segment.
    pub fn contains(&self, p: &BaryPoint) -> bool {
        let a = self.tail.lambdas();
        let b = self.head.lambdas();
        let p = p.lambdas();
        let pa = [&p[1] - &a[1], &p[2] - &a[2]];
        let ba = [&b[1] - &a[1], &b[2] - &a[2]];
        if !(&pa[0] * &ba[1] - &pa[1] * &ba[0]).is_zero() {
            return false;
        }
        let dot = &pa[0] * &ba[0] + &pa[1] * &ba[1];
        let len2 = &ba[0] * &ba[0] + &ba[1] * &ba[1];
        dot >= zero() && dot <= len2
    }
}

/// A two-dimensional cell of the complex.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceCell {
    r: u32,
    apex: BaryPoint,
    base: HomotheticTriangle,
    subtracted: Vec<HomotheticTriangle>,
    indicator: SignedTriangles,
    tiles: Vec<Tile>,
    boundary: Vec<MultiIndex>,
    polygon: Vec<MultiIndex>,
}

impl FaceCell {
    pub fn degree(&self) -> u32 {
        self.r
    }

    /// The point `ξi` the cell hangs from.
    pub fn apex(&self) -> &BaryPoint {
        &self.apex
    }

    pub fn base(&self) -> &HomotheticTriangle {
        &self.base
    }

    pub fn subtracted(&self) -> &[HomotheticTriangle] {
        &self.subtracted
    }

    /// The indicator function as a signed sum of homothetic triangles.
    pub fn indicator(&self) -> &SignedTriangles {
        &self.indicator
    }

    /// Lattice tiles making up the cell.
    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    /// Boundary loop through every lattice point on it, positively oriented
    /// with respect to `T`.
    pub fn boundary_loop(&self) -> &[MultiIndex] {
        &self.boundary
    }

    /// Corners of the boundary loop, collinear points removed.
    pub fn polygon_lattice(&self) -> &[MultiIndex] {
        &self.polygon
    }

    pub fn polygon(&self) -> Vec<BaryPoint> {
        self.polygon.iter().map(|a| BaryPoint::lattice(*a, self.r)).collect()
    }

    pub fn polygon_cartesian(&self, tri: &Triangle) -> Vec<Point2> {
        self.polygon().iter().map(|p| tri.to_cartesian(p)).collect()
    }

    /// Sides of the corner polygon as oriented segments.
    pub fn sides(&self) -> Vec<Segment> {
        let p = self.polygon();
        (0..p.len()).map(|i| Segment::oriented(p[i].clone(), p[(i + 1) % p.len()].clone())).collect()
    }

    /// Exact area by inclusion–exclusion.
    pub fn area(&self, tri: &Triangle) -> Q {
        self.indicator.area(tri)
    }

    /// Exact area of the corner polygon by the shoelace formula.
    pub fn shoelace_area(&self, tri: &Triangle) -> Q {
        let pts = self.polygon_cartesian(tri);
        let mut s = zero();
        for i in 0..pts.len() {
            let a = &pts[i];
            let b = &pts[(i + 1) % pts.len()];
            s += &a.x * &b.y - &b.x * &a.y;
        }
        (s / qi(2)).abs()
    }

    /// Area counted in tiles.
    pub fn tile_area(&self, tri: &Triangle) -> Q {
        tri.area() * Q::new((self.tiles.len() as i64).into(), ((self.r * self.r) as i64).into())
    }

    /// `∫ p dA` over the cell.
    pub fn integrate(&self, p: &BaryPolynomial, tri: &Triangle) -> Q {
        self.indicator.integrate(p, tri)
    }
}

/// Any integration domain used by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Vertex(BaryPoint),
    Edge(Segment),
    /// A small triangle `z_α(T)`.
    Triangle(Triangle),
    Face(FaceCell),
}

impl Cell {
    pub fn dim(&self) -> usize {
        match self {
            Cell::Vertex(_) => 0,
            Cell::Edge(_) => 1,
            Cell::Triangle(_) | Cell::Face(_) => 2,
        }
    }
}

/// The cells `s_i` for the default `Γ_r`.
pub fn build_cells(tri: &Triangle, r: i64) -> Result<Vec<FaceCell>> {
    build_cells_with(tri, &GammaSet::recursive(r)?)
}

/// The cells `s_i` for a given `Γ`. A point is subtracted from `s_i` when
/// its `λ0` is strictly smaller than that of `ξi`; ties are not subtracted.
pub fn build_cells_with(tri: &Triangle, gamma: &GammaSet) -> Result<Vec<FaceCell>> {
    let r = gamma.degree();
    let all_tiles = tiles(r);
    let pts = gamma.points();
    let idx = gamma.lattice_indices();
    (0..pts.len())
        .into_par_iter()
        .map(|i| {
            let xi = &pts[i];
            let base = HomotheticTriangle::tau_image(xi);
            let subtracted: Vec<HomotheticTriangle> = pts
                .iter()
                .filter(|p| p.lambda(0) < xi.lambda(0))
                .map(HomotheticTriangle::tau_image)
                .collect();
            let mut indicator = SignedTriangles::single(base.clone());
            for h in &subtracted {
                indicator = indicator.subtract(h);
            }
            let sub_idx: Vec<MultiIndex> = idx.iter().zip(pts).filter(|(_, p)| p.lambda(0) < xi.lambda(0)).map(|(a, _)| *a).collect();
            let in_tau = |c: &[u32; 3], a: &MultiIndex| 3 * a.0[1] <= c[1] && 3 * a.0[2] <= c[2];
            let cell_tiles: Vec<Tile> = all_tiles
                .iter()
                .filter(|t| {
                    let c = t.centroid3();
                    in_tau(&c, &idx[i]) && !sub_idx.iter().any(|a| in_tau(&c, a))
                })
                .copied()
                .collect();
            if cell_tiles.is_empty() || indicator.is_empty() {
                return Err(Error::DegenerateCell { cell: i });
            }
            let boundary = boundary_loop(&cell_tiles).map_err(|detail| Error::BadBoundary { cell: i, detail })?;
            let polygon = merge_collinear(&boundary);
            let cell = FaceCell {
                r,
                apex: xi.clone(),
                base,
                subtracted,
                indicator,
                tiles: cell_tiles,
                boundary,
                polygon,
            };
            let a = cell.area(tri);
            if a != cell.tile_area(tri) || a != cell.shoelace_area(tri) {
                return Err(Error::BadBoundary { cell: i, detail: "area bookkeeping disagrees".into() });
            }
            Ok(cell)
        })
        .collect()
}

/// Exact area of `s_i ∩ s_j`, from the product of the two indicators.
pub fn overlap_area(a: &FaceCell, b: &FaceCell, tri: &Triangle) -> Q {
    a.indicator.product(&b.indicator).area(tri)
}

fn signed_area2(p: &MultiIndex, q: &MultiIndex, s: &MultiIndex) -> i64 {
    let [px, py] = [p.0[1] as i64, p.0[2] as i64];
    let [qx, qy] = [q.0[1] as i64, q.0[2] as i64];
    let [sx, sy] = [s.0[1] as i64, s.0[2] as i64];
    (qx - px) * (sy - py) - (qy - py) * (sx - px)
}

/// Chains the unit edges that belong to exactly one tile into a single
/// positively oriented loop.
fn boundary_loop(tiles: &[Tile]) -> std::result::Result<Vec<MultiIndex>, String> {
    let mut count: BTreeMap<(MultiIndex, MultiIndex), u32> = BTreeMap::new();
    for t in tiles {
        for e in t.edges() {
            *count.entry(e).or_default() += 1;
        }
    }
    let edges: Vec<(MultiIndex, MultiIndex)> = count.into_iter().filter(|(_, n)| *n == 1).map(|(e, _)| e).collect();
    let mut adj: BTreeMap<MultiIndex, Vec<MultiIndex>> = BTreeMap::new();
    for (a, b) in &edges {
        adj.entry(*a).or_default().push(*b);
        adj.entry(*b).or_default().push(*a);
    }
    if let Some((v, n)) = adj.iter().find(|(_, n)| n.len() != 2) {
        return Err(format!("lattice point {v} touches {} boundary edges", n.len()));
    }
    let start = *adj.keys().next().ok_or("no boundary")?;
    let mut lp = vec![start];
    let mut prev = start;
    let mut cur = adj[&start][0];
    while cur != start {
        lp.push(cur);
        let n = &adj[&cur];
        let next = if n[0] == prev { n[1] } else { n[0] };
        prev = cur;
        cur = next;
    }
    if lp.len() != edges.len() {
        return Err(format!("boundary splits into several loops ({} of {} edges in the first)", lp.len(), edges.len()));
    }
    let mut s = 0;
    for i in 0..lp.len() {
        s += signed_area2(&MultiIndex([0, 0, 0]), &lp[i], &lp[(i + 1) % lp.len()]);
    }
    if s < 0 {
        lp.reverse();
    }
    let first = lp.iter().enumerate().max_by_key(|(_, v)| **v).map(|(i, _)| i).unwrap_or(0);
    lp.rotate_left(first);
    Ok(lp)
}

fn merge_collinear(lp: &[MultiIndex]) -> Vec<MultiIndex> {
    let n = lp.len();
    (0..n)
        .filter(|&i| signed_area2(&lp[(i + n - 1) % n], &lp[i], &lp[(i + 1) % n]) != 0)
        .map(|i| lp[i])
        .collect()
}

/// Unit lattice edges traversed by a corner polygon side, in order.
pub(crate) fn unit_steps(a: &MultiIndex, b: &MultiIndex) -> Vec<(MultiIndex, MultiIndex)> {
    let d: Vec<i64> = (0..3).map(|i| b.0[i] as i64 - a.0[i] as i64).collect();
    let n = d.iter().map(|x| x.abs()).max().unwrap_or(0);
    let step: Vec<i64> = d.iter().map(|x| x / n.max(1)).collect();
    let at = |k: i64| MultiIndex([0, 1, 2].map(|i| (a.0[i] as i64 + k * step[i]) as u32));
    (0..n).map(|k| (at(k), at(k + 1))).collect()
}

/// The set of unit edges on the boundary of any cell, endpoints sorted.
pub(crate) fn boundary_edge_set(cells: &[FaceCell]) -> BTreeSet<(MultiIndex, MultiIndex)> {
    let mut out = BTreeSet::new();
    for c in cells {
        let lp = &c.boundary;
        for i in 0..lp.len() {
            let (a, b) = (lp[i], lp[(i + 1) % lp.len()]);
            out.insert(if a < b { (a, b) } else { (b, a) });
        }
    }
    out
}
