//! Quadrature rules realizing the area and boundary integrals behind the
//! kernel formulas: Gauss-Legendre x trapezoid product rules for area measure
//! on disc and annulus, the uniform trapezoid rule on the unit circle, and a
//! trapezoid x trapezoid x Gauss product rule on S^3 in Hopf-type coordinates.

use std::f64::consts::PI;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::point::{Complex64, ComplexPoint};

/// Which measure a rule discretizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    /// Planar area measure dA.
    Area,
    /// Arc length on the unit circle.
    Arc,
    /// Surface measure on the unit sphere of C^2 (total mass 2 pi^2).
    Sphere3,
}

/// A finite node/weight set. Immutable after construction; all weights positive.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    nodes: Vec<ComplexPoint>,
    weights: Vec<f64>,
    measure: Measure,
    domain: Domain,
}

/// Gauss-Legendre nodes and weights on [a, b], by Newton iteration on the
/// three-term recurrence. Exact for polynomials of degree <= 2n-1.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-like initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_deriv(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_deriv(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map from [-1, 1] to [a, b]
        nodes[i] = a + 0.5 * (b - a) * (x + 1.0);
        weights[i] = 0.5 * (b - a) * w;
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

impl QuadratureRule {
    /// Product rule for area measure: Gauss-Legendre in radius ([0,1] for the
    /// disc, [1,2] for the annulus), uniform trapezoid in angle, with weights
    /// r * dtheta * (GL weight).
    pub fn area(domain: Domain, n_radial: usize, n_angular: usize) -> Result<Self> {
        if !matches!(domain, Domain::Disc | Domain::Annulus) {
            return Err(Error::Domain("no area rule for this domain".into()));
        }
        if n_radial < 2 || n_angular < 4 {
            return Err(Error::Domain(
                "area rule needs n_radial >= 2 and n_angular >= 4".into(),
            ));
        }
        let (r0, r1) = match domain {
            Domain::Disc => (0.0, 1.0),
            _ => (1.0, 2.0),
        };
        let (radii, radial_weights) = gauss_legendre(n_radial, r0, r1);
        let dtheta = 2.0 * PI / n_angular as f64;
        let mut nodes = Vec::with_capacity(n_radial * n_angular);
        let mut weights = Vec::with_capacity(n_radial * n_angular);
        for (r, wr) in radii.iter().zip(&radial_weights) {
            for k in 0..n_angular {
                let theta = dtheta * k as f64;
                let z = Complex64::from_polar(*r, theta);
                nodes.push(ComplexPoint::scalar(z)?);
                weights.push(wr * r * dtheta);
            }
        }
        Ok(Self {
            nodes,
            weights,
            measure: Measure::Area,
            domain,
        })
    }

    /// Boundary rule: uniform trapezoid on the unit circle, or the product
    /// trapezoid x trapezoid x Gauss rule on S^3 in Hopf-type coordinates
    /// zeta = (e^{i theta} cos s, e^{i phi} sin s) with surface element
    /// cos s sin s ds dtheta dphi. For `ball2` the count is per axis.
    pub fn boundary(domain: Domain, n_nodes: usize) -> Result<Self> {
        match domain {
            Domain::Disc => {
                if n_nodes < 8 {
                    return Err(Error::Domain("circle rule needs n_nodes >= 8".into()));
                }
                let dtheta = 2.0 * PI / n_nodes as f64;
                let mut nodes = Vec::with_capacity(n_nodes);
                for k in 0..n_nodes {
                    let z = Complex64::from_polar(1.0, dtheta * k as f64);
                    nodes.push(ComplexPoint::scalar(z)?);
                }
                Ok(Self {
                    nodes,
                    weights: vec![dtheta; n_nodes],
                    measure: Measure::Arc,
                    domain,
                })
            }
            Domain::Ball2 => {
                if n_nodes < 8 {
                    return Err(Error::Domain("sphere rule needs n_nodes >= 8 per axis".into()));
                }
                let n = n_nodes;
                let (s_nodes, s_weights) = gauss_legendre(n, 0.0, PI / 2.0);
                let dang = 2.0 * PI / n as f64;
                let mut nodes = Vec::with_capacity(n * n * n);
                let mut weights = Vec::with_capacity(n * n * n);
                for it in 0..n {
                    let theta = dang * it as f64;
                    for ip in 0..n {
                        let phi = dang * ip as f64;
                        for (s, ws) in s_nodes.iter().zip(&s_weights) {
                            let z1 = Complex64::from_polar(s.cos(), theta);
                            let z2 = Complex64::from_polar(s.sin(), phi);
                            nodes.push(ComplexPoint::pair(z1, z2)?);
                            weights.push(dang * dang * ws * s.cos() * s.sin());
                        }
                    }
                }
                Ok(Self {
                    nodes,
                    weights,
                    measure: Measure::Sphere3,
                    domain,
                })
            }
            _ => Err(Error::Domain("no boundary rule for this domain".into())),
        }
    }

    pub fn nodes(&self) -> &[ComplexPoint] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Pairwise summation keeps the sum of 2^k equal circle weights exact.
    pub fn weight_sum(&self) -> f64 {
        pairwise_sum(&self.weights)
    }

    /// Total measure of the carrier: pi or 3 pi (area), 2 pi (circle),
    /// 2 pi^2 (S^3).
    pub fn total_measure(&self) -> f64 {
        match (self.measure, self.domain) {
            (Measure::Area, Domain::Disc) => PI,
            (Measure::Area, _) => 3.0 * PI,
            (Measure::Arc, _) => 2.0 * PI,
            (Measure::Sphere3, _) => 2.0 * PI * PI,
        }
    }

    /// Sum_k w_k f(node_k). Errors when f is non-finite at some node, naming
    /// the node index.
    pub fn integrate(&self, f: impl Fn(&ComplexPoint) -> Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (index, (node, w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            let v = f(node);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFiniteSample { index });
            }
            acc += w * v;
        }
        Ok(acc)
    }

    /// Discrete inner product <f, g> = Sum_k w_k f(node_k) conj(g(node_k)).
    pub fn inner_product(
        &self,
        f: impl Fn(&ComplexPoint) -> Complex64,
        g: impl Fn(&ComplexPoint) -> Complex64,
    ) -> Result<Complex64> {
        self.integrate(|z| f(z) * g(z).conj())
    }
}
