//! Gauss-Legendre rules mapped onto finite intervals.

use gauss_quad::legendre::GaussLegendre;
use std::num::NonZeroUsize;

/// Nodes and weights of an `order`-point Gauss-Legendre rule on `[a, b]`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(order: usize, a: f64, b: f64) -> Self {
        let order = NonZeroUsize::new(order).expect("quadrature order must be positive");
        let rule = GaussLegendre::new(order);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let (nodes, weights) = rule
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (mid + half * x, half * w))
            .unzip();
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Composite rule: `panels` equal sub-intervals of `[a, b]`, each with an
    /// `order`-point rule.
    pub fn composite(order: usize, panels: usize, a: f64, b: f64) -> Self {
        let base = GaussRule::new(order, 0.0, 1.0);
        let width = (b - a) / panels as f64;
        let mut nodes = Vec::with_capacity(order * panels);
        let mut weights = Vec::with_capacity(order * panels);
        for p in 0..panels {
            let lo = a + width * p as f64;
            for (&x, &w) in base.nodes.iter().zip(&base.weights) {
                nodes.push(lo + width * x);
                weights.push(width * w);
            }
        }
        Self { nodes, weights }
    }
}
