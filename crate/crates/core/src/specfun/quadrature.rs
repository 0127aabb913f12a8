use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Composite Gauss–Legendre rule on a symmetric interval `[-half_width, half_width]`.
///
/// Nodes are strictly increasing, mirror-symmetric and never hit the origin,
/// so integrands with a removable singularity at zero can be evaluated at
/// every node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadGrid {
    half_width: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    panels: usize,
    nodes_per_panel: usize,
}

impl QuadGrid {
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn nodes_per_panel(&self) -> usize {
        self.nodes_per_panel
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Index of the node at `-x` for the node at index `i`.
    pub fn mirror_index(&self, i: usize) -> usize {
        self.nodes.len() - 1 - i
    }

    /// Checks mirror symmetry of nodes and weights.
    pub fn is_symmetric(&self) -> bool {
        let n = self.nodes.len();
        let tol = 1e-14 * self.half_width.max(1.0);
        (0..n).all(|i| {
            let j = n - 1 - i;
            (self.nodes[i] + self.nodes[j]).abs() <= tol
                && (self.weights[i] - self.weights[j]).abs() <= 1e-14 * self.weights[i].abs()
        })
    }

    /// Largest gap between neighbouring nodes.
    pub fn max_spacing(&self) -> f64 {
        self.nodes
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    /// Panel edges `-X = e_0 < e_1 < ... < e_P = X`.
    pub fn panel_edges(&self) -> Vec<f64> {
        let h = 2.0 * self.half_width / self.panels as f64;
        (0..=self.panels)
            .map(|k| -self.half_width + h * k as f64)
            .collect()
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes increasing.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess for the i-th largest root
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre nodes and weights on an arbitrary interval.
pub fn composite_interval(
    lo: f64,
    hi: f64,
    panels: usize,
    nodes_per_panel: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if panels == 0 || nodes_per_panel == 0 {
        return Err(Error::InvalidArgument(
            "panels and nodes_per_panel must be positive".into(),
        ));
    }
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(Error::InvalidArgument(format!(
            "interval [{lo}, {hi}] is empty or not finite"
        )));
    }
    let (xi, wi) = gauss_legendre(nodes_per_panel);
    let h = (hi - lo) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * nodes_per_panel);
    let mut weights = Vec::with_capacity(panels * nodes_per_panel);
    for k in 0..panels {
        let a = lo + h * k as f64;
        let b = if k + 1 == panels { hi } else { lo + h * (k + 1) as f64 };
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for (x, w) in xi.iter().zip(&wi) {
            nodes.push(mid + half * x);
            weights.push(half * w);
        }
    }
    Ok((nodes, weights))
}

/// Builds the symmetric composite Gauss–Legendre grid on `[-half_width, half_width]`.
pub fn make_grid(half_width: f64, panels: usize, nodes_per_panel: usize) -> Result<QuadGrid> {
    if !(half_width.is_finite() && half_width > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "half_width must be positive, got {half_width}"
        )));
    }
    if panels == 0 || nodes_per_panel == 0 {
        return Err(Error::InvalidArgument(
            "panels and nodes_per_panel must be positive".into(),
        ));
    }
    if panels % 2 == 1 && nodes_per_panel % 2 == 1 {
        return Err(Error::InvalidArgument(
            "an odd number of panels with an odd number of nodes per panel puts a node at the origin"
                .into(),
        ));
    }
    let (mut nodes, mut weights) =
        composite_interval(-half_width, half_width, panels, nodes_per_panel)?;
    let n = nodes.len();
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    Ok(QuadGrid {
        half_width,
        nodes,
        weights,
        panels,
        nodes_per_panel,
    })
}

/// `Σ w_i f_i` in node order.
pub fn integrate(values: &[Complex64], grid: &QuadGrid) -> Result<Complex64> {
    if values.len() != grid.len() {
        return Err(Error::LengthMismatch {
            expected: grid.len(),
            actual: values.len(),
        });
    }
    Ok(values
        .iter()
        .zip(grid.weights())
        .fold(Complex64::new(0.0, 0.0), |acc, (v, w)| acc + v * w))
}

/// Real-valued variant of [`integrate`].
pub fn integrate_real(values: &[f64], grid: &QuadGrid) -> Result<f64> {
    if values.len() != grid.len() {
        return Err(Error::LengthMismatch {
            expected: grid.len(),
            actual: values.len(),
        });
    }
    Ok(values.iter().zip(grid.weights()).map(|(v, w)| v * w).sum())
}
