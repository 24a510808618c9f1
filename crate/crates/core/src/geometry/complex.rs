use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::barypoly::{BaryPoint, MultiIndex};
use crate::error::{Error, Result};
use crate::geometry::cells::{boundary_edge_set, build_cells_with, overlap_area, unit_steps, FaceCell, Segment};
use crate::geometry::lattice::{lattice_indices, unit_edges};
use crate::geometry::{GammaSet, Triangle};
use crate::linalg::RationalMatrix;
use crate::rational::{qi, zero, Q};

/// The cells `F⁰, F¹, F²` together with their incidence matrices.
///
/// `F⁰` is `L_r(T)` in descending lexicographic order, `F¹` the unit lattice
/// edges lying on a cell boundary, sorted, and `F²` follows the order of
/// `Γ_r`. Edges run from the lexicographically smaller endpoint to the
/// larger; cells carry the orientation of `T`.
#[derive(Debug, Clone)]
pub struct DofComplex {
    tri: Triangle,
    r: u32,
    gamma: GammaSet,
    f0: Vec<MultiIndex>,
    f1: Vec<(MultiIndex, MultiIndex)>,
    f2: Vec<FaceCell>,
    d1: RationalMatrix,
    d2: RationalMatrix,
}

pub fn build_complex(tri: &Triangle, r: i64) -> Result<DofComplex> {
    DofComplex::build(tri, &GammaSet::recursive(r)?)
}

impl DofComplex {
    pub fn build(tri: &Triangle, gamma: &GammaSet) -> Result<Self> {
        let cells = build_cells_with(tri, gamma)?;
        let r = gamma.degree();
        let sides: Vec<Segment> = cells.iter().flat_map(|c| c.sides()).collect();
        let f1: Vec<(MultiIndex, MultiIndex)> = unit_edges(r)
            .into_iter()
            .filter(|(a, b)| {
                let (a, b) = (BaryPoint::lattice(*a, r), BaryPoint::lattice(*b, r));
                sides.iter().any(|s| s.contains(&a) && s.contains(&b))
            })
            .collect();
        debug_assert_eq!(f1.iter().copied().collect::<BTreeSet<_>>(), boundary_edge_set(&cells));
        Self::from_parts(tri.clone(), gamma.clone(), cells, f1)
    }

    /// Assembles a complex from explicit cells and edges, checking that
    /// every cell boundary is exactly a union of the given edges.
    pub fn from_parts(
        tri: Triangle,
        gamma: GammaSet,
        cells: Vec<FaceCell>,
        f1: Vec<(MultiIndex, MultiIndex)>,
    ) -> Result<Self> {
        let r = gamma.degree();
        let f0 = lattice_indices(r);
        let vpos: BTreeMap<MultiIndex, usize> = f0.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let epos: BTreeMap<(MultiIndex, MultiIndex), usize> = f1.iter().enumerate().map(|(i, e)| (*e, i)).collect();

        let mut d1 = RationalMatrix::zeros(f0.len(), f1.len());
        for (j, (a, b)) in f1.iter().enumerate() {
            let (Some(&ia), Some(&ib)) = (vpos.get(a), vpos.get(b)) else {
                return Err(Error::NotCellular { cell: j, detail: format!("edge {a}-{b} has an endpoint off L_{r}") });
            };
            if a >= b {
                return Err(Error::NotCellular { cell: j, detail: format!("edge {a}-{b} is not canonically oriented") });
            }
            d1.set(ia, j, qi(-1));
            d1.set(ib, j, qi(1));
        }

        let mut d2 = RationalMatrix::zeros(f1.len(), cells.len());
        for (c, cell) in cells.iter().enumerate() {
            let poly = cell.polygon_lattice();
            for k in 0..poly.len() {
                for (a, b) in unit_steps(&poly[k], &poly[(k + 1) % poly.len()]) {
                    let (key, sign) = if a < b { ((a, b), 1) } else { ((b, a), -1) };
                    let Some(&e) = epos.get(&key) else {
                        return Err(Error::NotCellular {
                            cell: c,
                            detail: format!(
                                "boundary piece {} - {} is not an edge of F1",
                                BaryPoint::lattice(a, r),
                                BaryPoint::lattice(b, r)
                            ),
                        });
                    };
                    d2.set(e, c, d2.get(e, c) + qi(sign));
                }
            }
        }
        Ok(Self { tri, r, gamma, f0, f1, f2: cells, d1, d2 })
    }

    /// The same complex with edge `index` of `F¹` dropped, re-checked.
    pub fn without_edge(&self, index: usize) -> Result<Self> {
        let mut f1 = self.f1.clone();
        f1.remove(index);
        Self::from_parts(self.tri.clone(), self.gamma.clone(), self.f2.clone(), f1)
    }

    pub fn triangle(&self) -> &Triangle {
        &self.tri
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn gamma(&self) -> &GammaSet {
        &self.gamma
    }

    pub fn vertices(&self) -> Vec<BaryPoint> {
        self.f0.iter().map(|a| BaryPoint::lattice(*a, self.r)).collect()
    }

    pub fn vertex_indices(&self) -> &[MultiIndex] {
        &self.f0
    }

    pub fn edges(&self) -> Vec<Segment> {
        self.f1
            .iter()
            .map(|(a, b)| Segment::oriented(BaryPoint::lattice(*a, self.r), BaryPoint::lattice(*b, self.r)))
            .collect()
    }

    pub fn edge_indices(&self) -> &[(MultiIndex, MultiIndex)] {
        &self.f1
    }

    pub fn faces(&self) -> &[FaceCell] {
        &self.f2
    }

    /// `∂₁`: rows indexed by `F⁰`, columns by `F¹`.
    pub fn boundary1(&self) -> &RationalMatrix {
        &self.d1
    }

    /// `∂₂`: rows indexed by `F¹`, columns by `F²`.
    pub fn boundary2(&self) -> &RationalMatrix {
        &self.d2
    }

    /// `δ_k = ∂_{k+1}ᵀ`, mapping `k`-cochains to `(k+1)`-cochains.
    pub fn coboundary(&self, k: usize) -> Result<RationalMatrix> {
        match k {
            0 => Ok(self.d1.transpose()),
            1 => Ok(self.d2.transpose()),
            _ => Err(Error::InvalidDegree(format!("no coboundary out of degree {k}"))),
        }
    }

    /// `(|F⁰|, |F¹|, |F²|)`.
    pub fn counts(&self) -> [usize; 3] {
        [self.f0.len(), self.f1.len(), self.f2.len()]
    }

    pub fn count(&self, k: usize) -> usize {
        self.counts()[k]
    }

    pub fn euler_characteristic(&self) -> i64 {
        let [a, b, c] = self.counts();
        a as i64 - b as i64 + c as i64
    }

    pub fn total_area(&self) -> Q {
        self.f2.iter().fold(zero(), |acc, c| acc + c.area(&self.tri))
    }

    pub fn paves(&self) -> bool {
        self.total_area() == self.tri.area()
    }

    /// Pairs of cells whose intersection has positive area.
    pub fn overlapping_pairs(&self) -> Vec<(usize, usize, Q)> {
        let mut out = Vec::new();
        for i in 0..self.f2.len() {
            for j in i + 1..self.f2.len() {
                let a = overlap_area(&self.f2[i], &self.f2[j], &self.tri);
                if !a.is_zero() {
                    out.push((i, j, a));
                }
            }
        }
        out
    }

    pub fn boundary_of_boundary_vanishes(&self) -> bool {
        self.d1.mul(&self.d2).map(|m| m.is_zero()).unwrap_or(false)
    }
}
