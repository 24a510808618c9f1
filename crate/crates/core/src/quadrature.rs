//! Floating-point quadrature for non-polynomial integrands.

use gauss_quad::GaussLegendre;

/// Gauss–Legendre rule moved to `[0, 1]`.
#[derive(Debug, Clone)]
pub struct LineRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl LineRule {
    /// `n`-point rule, exact for degree `2n - 1`. `n` is raised to 2 if smaller.
    pub fn new(n: usize) -> Self {
        let g = GaussLegendre::new(n.max(2)).expect("degree at least 2");
        let (nodes, weights) = g.iter().map(|&(x, w)| ((x + 1.0) / 2.0, w / 2.0)).unzip();
        Self { nodes, weights }
    }

    /// `∫_0^1 f`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(*x)).sum()
    }
}

/// Collapsed tensor rule on a triangle: the square `[0,1]²` is mapped by
/// `(s, t) ↦ p0 + s (p1 - p0) + s t (p2 - p1)`, whose Jacobian is `2 A s`.
/// With `n` points per direction it is exact for degree `2n - 2`.
#[derive(Debug, Clone)]
pub struct TriangleRule {
    /// Barycentric weights `(μ0, μ1, μ2)` of each node relative to the
    /// triangle being integrated, and the node weight for unit area.
    pub points: Vec<([f64; 3], f64)>,
}

impl TriangleRule {
    pub fn new(n: usize) -> Self {
        let line = LineRule::new(n);
        let mut points = Vec::with_capacity(line.nodes.len().pow(2));
        for (s, ws) in line.nodes.iter().zip(&line.weights) {
            for (t, wt) in line.nodes.iter().zip(&line.weights) {
                let mu = [1.0 - s, s * (1.0 - t), s * t];
                points.push((mu, 2.0 * ws * wt * s));
            }
        }
        Self { points }
    }

    /// `∫ f dA` over the triangle with vertices `v` (Cartesian).
    pub fn integrate(&self, v: &[[f64; 2]; 3], mut f: impl FnMut([f64; 2]) -> f64) -> f64 {
        let area = 0.5 * ((v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[1][1] - v[0][1]) * (v[2][0] - v[0][0])).abs();
        let mut total = 0.0;
        for (mu, w) in &self.points {
            let x = mu[0] * v[0][0] + mu[1] * v[1][0] + mu[2] * v[2][0];
            let y = mu[0] * v[0][1] + mu[1] * v[1][1] + mu[2] * v[2][1];
            total += w * f([x, y]);
        }
        total * area
    }
}
