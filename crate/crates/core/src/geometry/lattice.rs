//! Principal lattices and small simplices.
//!
//! Lattice points of `L_r(T)` are handled as integer triples `β` with
//! `|β| = r` (the point `β / r`); [`MultiIndex`] doubles as that
//! representation, and its derived order is lexicographic on `β`, which
//! agrees with the lexicographic order of the barycentric coordinates.

use crate::barypoly::{BaryPoint, MultiIndex};
use crate::error::{Error, Result};
use crate::geometry::cells::{Cell, Segment};
use crate::geometry::Triangle;
use crate::rational::{qi, Q};

/// `L_r(T)` in descending lexicographic order of `α`, starting at vertex `x0`.
pub fn principal_lattice(_tri: &Triangle, r: i64) -> Result<Vec<BaryPoint>> {
    let r = check_degree(r, 1)?;
    Ok(lattice_indices(r).into_iter().map(|a| BaryPoint::lattice(a, r)).collect())
}

pub fn lattice_indices(r: u32) -> Vec<MultiIndex> {
    MultiIndex::all_of_degree(r)
}

pub(crate) fn check_degree(r: i64, min: i64) -> Result<u32> {
    if r < min {
        return Err(Error::InvalidDegree(format!("degree {r} is below the minimum {min}")));
    }
    u32::try_from(r).map_err(|_| Error::InvalidDegree(format!("degree {r} is too large")))
}

/// Lattice coordinates of a point, if it lies on `L_r(T)`.
pub fn lattice_coords(p: &BaryPoint, r: u32) -> Option<MultiIndex> {
    let rq = qi(r as i64);
    let mut out = [0u32; 3];
    for (o, l) in out.iter_mut().zip(p.lambdas()) {
        let s: Q = l * &rq;
        if !s.is_integer() || s < qi(0) {
            return None;
        }
        *o = u32::try_from(s.to_integer()).ok()?;
    }
    Some(MultiIndex(out))
}

/// One of the `r²` congruent triangles cut out of `T` by the lattice lines
/// of `L_r(T)`. Upward tiles are the small triangles `z_α(T)`; downward ones
/// are their reflections filling the gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    pub up: bool,
    pub vertices: [MultiIndex; 3],
}

impl Tile {
    pub fn up(alpha: MultiIndex) -> Self {
        let [a0, a1, a2] = alpha.0;
        Self {
            up: true,
            vertices: [
                MultiIndex([a0 + 1, a1, a2]),
                MultiIndex([a0, a1 + 1, a2]),
                MultiIndex([a0, a1, a2 + 1]),
            ],
        }
    }

    pub fn down(beta: MultiIndex) -> Self {
        let [b0, b1, b2] = beta.0;
        Self {
            up: false,
            vertices: [
                MultiIndex([b0, b1 + 1, b2 + 1]),
                MultiIndex([b0 + 1, b1, b2 + 1]),
                MultiIndex([b0 + 1, b1 + 1, b2]),
            ],
        }
    }

    /// Three times `r` times the centroid, as an integer triple.
    pub fn centroid3(&self) -> [u32; 3] {
        let mut c = [0; 3];
        for v in &self.vertices {
            for i in 0..3 {
                c[i] += v.0[i];
            }
        }
        c
    }

    pub fn centroid(&self, r: u32) -> BaryPoint {
        let c = self.centroid3();
        let d = 3 * r as i64;
        BaryPoint::new(
            crate::rational::q(c[0] as i64, d),
            crate::rational::q(c[1] as i64, d),
            crate::rational::q(c[2] as i64, d),
        )
        .expect("centroid coordinates sum to one")
    }

    /// Unit edges as unordered pairs, each sorted ascending.
    pub fn edges(&self) -> [(MultiIndex, MultiIndex); 3] {
        let [a, b, c] = self.vertices;
        [sorted(a, b), sorted(b, c), sorted(a, c)]
    }

    pub fn bary_vertices(&self, r: u32) -> [BaryPoint; 3] {
        self.vertices.map(|v| BaryPoint::lattice(v, r))
    }
}

fn sorted(a: MultiIndex, b: MultiIndex) -> (MultiIndex, MultiIndex) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// All `r²` tiles: upward ones first, then downward, each in descending
/// lexicographic order of their index.
pub fn tiles(r: u32) -> Vec<Tile> {
    let mut out: Vec<Tile> = MultiIndex::all_of_degree(r - 1).into_iter().map(Tile::up).collect();
    if r >= 2 {
        out.extend(MultiIndex::all_of_degree(r - 2).into_iter().map(Tile::down));
    }
    out
}

/// Unit lattice edges of `Σ¹_r(T)`, each as `(tail, head)` with
/// `tail < head`, sorted. Every such edge bounds exactly one upward tile.
pub fn unit_edges(r: u32) -> Vec<(MultiIndex, MultiIndex)> {
    let mut e: Vec<_> = MultiIndex::all_of_degree(r - 1)
        .into_iter()
        .flat_map(|a| Tile::up(a).edges())
        .collect();
    e.sort();
    e.dedup();
    e
}

/// `Σ^k_r(T)`: the `k`-subsimplices of the small triangles `z_α(T)`,
/// `α ∈ I(r-1, 2)`, deduplicated. Edges carry the ascending orientation.
pub fn small_simplices(tri: &Triangle, r: i64, k: usize) -> Result<Vec<Cell>> {
    let r = check_degree(r, 1)?;
    match k {
        0 => Ok(lattice_indices(r).into_iter().map(|a| Cell::Vertex(BaryPoint::lattice(a, r))).collect()),
        1 => Ok(unit_edges(r)
            .into_iter()
            .map(|(a, b)| Cell::Edge(Segment::new(BaryPoint::lattice(a, r), BaryPoint::lattice(b, r))))
            .collect()),
        2 => {
            let mut out = Vec::new();
            for a in MultiIndex::all_of_degree(r - 1) {
                let t = Tile::up(a);
                let v = t.bary_vertices(r).map(|p| tri.to_cartesian(&p));
                out.push(Cell::Triangle(Triangle::new(v)?));
            }
            Ok(out)
        }
        _ => Err(Error::InvalidDegree(format!("form degree {k} is not 0, 1 or 2"))),
    }
}
