//! Composite Gauss-Legendre quadrature with panel doubling.
//!
//! The integrand returns a small fixed-size vector so that quantities sharing
//! the same expensive setup (energy and pressure, TM and TE) are integrated on
//! one set of nodes.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

/// Nodes and weights of a Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct PanelRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl PanelRule {
    pub fn new(order: usize) -> Self {
        let order = NonZeroUsize::new(order.max(2)).expect("order >= 2");
        let rule = GaussLegendre::new(order);
        let (nodes, weights) = rule.as_node_weight_pairs().iter().copied().unzip();
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Integrates `f` over [a, b] split into `panels` equal panels.
    /// Also returns the integral of |f| componentwise.
    pub fn composite<const N: usize, F>(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        f: &mut F,
    ) -> ([f64; N], [f64; N])
    where
        F: FnMut(f64) -> [f64; N],
    {
        let mut total = [0.0; N];
        let mut total_abs = [0.0; N];
        let h = (b - a) / panels as f64;
        for p in 0..panels {
            let lo = a + h * p as f64;
            let half = 0.5 * h;
            let mid = lo + half;
            let mut acc = [0.0; N];
            let mut acc_abs = [0.0; N];
            for (&x, &w) in self.nodes.iter().zip(&self.weights) {
                let v = f(mid + half * x);
                for i in 0..N {
                    acc[i] += w * v[i];
                    acc_abs[i] += w * v[i].abs();
                }
            }
            for i in 0..N {
                total[i] += half * acc[i];
                total_abs[i] += half * acc_abs[i];
            }
        }
        (total, total_abs)
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<const N: usize> {
    pub value: [f64; N],
    /// Integral of |f|; the natural scale for judging cancellation.
    pub magnitude: [f64; N],
    pub converged: bool,
    pub panels: usize,
}

/// Doubles the number of equal panels on [a, b] until two successive
/// estimates agree to `rel_tol` (relative to the integral of |f|), or
/// `max_panels` is exceeded.
pub fn integrate_doubling<const N: usize, F>(
    rule: &PanelRule,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_panels: usize,
    mut f: F,
) -> Quadrature<N>
where
    F: FnMut(f64) -> [f64; N],
{
    let mut panels = 1;
    let (mut prev, _) = rule.composite(a, b, panels, &mut f);
    loop {
        panels *= 2;
        let (cur, mag) = rule.composite(a, b, panels, &mut f);
        let agreed = (0..N).all(|i| (cur[i] - prev[i]).abs() <= rel_tol * mag[i]);
        if agreed || panels >= max_panels {
            return Quadrature {
                value: cur,
                magnitude: mag,
                converged: agreed,
                panels,
            };
        }
        prev = cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_exact_on_one_panel() {
        let rule = PanelRule::new(4);
        let (v, _) = rule.composite(0.0, 2.0, 1, &mut |x| [x.powi(7), 1.0]);
        assert_relative_eq!(v[0], 2f64.powi(8) / 8.0, max_relative = 1e-14);
        assert_relative_eq!(v[1], 2.0, max_relative = 1e-14);
    }

    #[test]
    fn log_endpoint_singularity_converges() {
        // ∫_0^1 x ln x dx = -1/4
        let rule = PanelRule::new(16);
        let q = integrate_doubling(&rule, 0.0, 1.0, 1e-10, 1 << 12, |s: f64| {
            let x = s * s * s;
            [x * x.ln() * 3.0 * s * s]
        });
        assert!(q.converged);
        assert_relative_eq!(q.value[0], -0.25, max_relative = 1e-9);
    }

    #[test]
    fn cancellation_judged_against_magnitude() {
        let rule = PanelRule::new(8);
        let q = integrate_doubling(&rule, 0.0, std::f64::consts::TAU, 1e-12, 64, |x: f64| {
            [x.sin()]
        });
        assert!(q.converged);
        assert!(q.value[0].abs() < 1e-12);
        assert_relative_eq!(q.magnitude[0], 4.0, max_relative = 1e-6);
    }
}
