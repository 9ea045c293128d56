//! Orthonormal systems for the Bergman space of the disc and the annulus and
//! the Hardy space of the disc, a numerical Gram-Schmidt fallback, and series
//! assembly of kernels from a system.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::catalog::KernelKind;
use crate::error::{Error, Result};
use crate::point::{Complex64, ComplexPoint};
use crate::quad::QuadratureRule;

/// User-supplied function of one complex variable.
pub type RawFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    BergmanDisc,
    HardyDisc,
    BergmanAnnulus,
    Custom,
}

#[derive(Clone)]
enum BasisFun {
    /// scale * z^power
    Monomial { power: i32, scale: f64 },
    /// Linear combination of the raw inputs (Gram-Schmidt output).
    Combination {
        coeffs: Vec<Complex64>,
        raws: Arc<Vec<RawFn>>,
    },
}

impl BasisFun {
    fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            BasisFun::Monomial { power, scale } => *scale * z.powi(*power),
            BasisFun::Combination { coeffs, raws } => coeffs
                .iter()
                .zip(raws.iter())
                .map(|(c, f)| c * f(z))
                .sum(),
        }
    }
}

/// A finite orthonormal system together with the squared norms of the raw
/// functions it was normalized from.
#[derive(Clone)]
pub struct OrthonormalSystem {
    space: Space,
    functions: Vec<BasisFun>,
    norms_sq: Vec<f64>,
}

impl OrthonormalSystem {
    pub fn space(&self) -> Space {
        self.space
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// Squared norms of the raw (pre-normalization) functions, in system order.
    pub fn norms_sq(&self) -> &[f64] {
        &self.norms_sq
    }

    /// Monomial power of the j-th function, when the system is monomial.
    pub fn power(&self, j: usize) -> Option<i32> {
        match self.functions.get(j)? {
            BasisFun::Monomial { power, .. } => Some(*power),
            BasisFun::Combination { .. } => None,
        }
    }

    pub fn eval(&self, j: usize, z: Complex64) -> Complex64 {
        self.functions[j].eval(z)
    }

    /// max_{j,k} |<phi_j, phi_k> - delta_jk| under the rule's discrete inner
    /// product, by direct summation. Quadratic in system size; meant for
    /// modest systems and tests.
    pub fn orthonormality_defect(&self, rule: &QuadratureRule) -> Result<f64> {
        let n = self.len();
        let m = rule.len();
        let mut values = vec![Complex64::new(0.0, 0.0); n * m];
        for (k, node) in rule.nodes().iter().enumerate() {
            let z = node.as_scalar()?;
            for j in 0..n {
                values[j * m + k] = self.functions[j].eval(z);
            }
        }
        let w = rule.weights();
        let mut defect: f64 = 0.0;
        for j in 0..n {
            for k in j..n {
                let mut ip = Complex64::new(0.0, 0.0);
                for q in 0..m {
                    ip += w[q] * values[j * m + q] * values[k * m + q].conj();
                }
                let target = if j == k { 1.0 } else { 0.0 };
                defect = defect.max((ip - target).norm());
            }
        }
        Ok(defect)
    }
}

/// Orthonormality defect of a monomial system under a product rule, computed
/// through the rule's radial moments and angular mode sums. Same discrete sum
/// as the direct route, reassociated, which keeps construction-time
/// verification affordable for large systems.
fn monomial_defect_product_rule(
    powers: &[i32],
    scales: &[f64],
    radial: Option<(&[f64], &[f64])>,
    n_angular: usize,
) -> f64 {
    let n = powers.len();
    let pmin = *powers.iter().min().unwrap();
    let pmax = *powers.iter().max().unwrap();
    // angular sums dtheta * Sum_a e^{i d theta_a}, d = 0 .. pmax-pmin
    let dtheta = 2.0 * PI / n_angular as f64;
    let dmax = (pmax - pmin) as usize;
    let mut ang = vec![Complex64::new(0.0, 0.0); dmax + 1];
    for (d, a) in ang.iter_mut().enumerate() {
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..n_angular {
            s += Complex64::from_polar(1.0, d as f64 * dtheta * k as f64);
        }
        *a = s * dtheta;
    }
    // radial moments Sum_r w_r r^{1+q} (area); on the circle |node| = 1 and
    // every moment is 1
    let moment = |q: i32| -> f64 {
        match radial {
            Some((radii, weights)) => radii
                .iter()
                .zip(weights)
                .map(|(r, w)| w * r.powi(1 + q))
                .sum(),
            None => 1.0,
        }
    };
    let mut defect: f64 = 0.0;
    for j in 0..n {
        for k in j..n {
            let d = (powers[j] - powers[k]).unsigned_abs() as usize;
            let ip = scales[j] * scales[k] * moment(powers[j] + powers[k]) * ang[d];
            let target = if j == k { 1.0 } else { 0.0 };
            defect = defect.max((ip - target).norm());
        }
    }
    defect
}

const CONSTRUCTION_TOL: f64 = 1e-10;

fn monomial_system(
    space: Space,
    powers: Vec<i32>,
    norms_sq: Vec<f64>,
    radial: Option<(Vec<f64>, Vec<f64>)>,
    n_angular: usize,
) -> Result<OrthonormalSystem> {
    let scales: Vec<f64> = norms_sq.iter().map(|n| 1.0 / n.sqrt()).collect();
    let defect = monomial_defect_product_rule(
        &powers,
        &scales,
        radial.as_ref().map(|(r, w)| (r.as_slice(), w.as_slice())),
        n_angular,
    );
    if defect > CONSTRUCTION_TOL {
        return Err(Error::Invariant(format!(
            "orthonormality defect {defect:e} exceeds {CONSTRUCTION_TOL:e} on the reference rule"
        )));
    }
    let functions = powers
        .iter()
        .zip(&scales)
        .map(|(&power, &scale)| BasisFun::Monomial { power, scale })
        .collect();
    Ok(OrthonormalSystem {
        space,
        functions,
        norms_sq,
    })
}

/// phi_j(z) = sqrt((j+1)/pi) z^j, j = 0..n-1: the monomial orthonormal system
/// of the Bergman space of the unit disc.
pub fn disc_bergman_basis(n: usize) -> Result<OrthonormalSystem> {
    if n == 0 {
        return Err(Error::Domain("basis size must be at least 1".into()));
    }
    let powers: Vec<i32> = (0..n as i32).collect();
    let norms_sq: Vec<f64> = (0..n).map(|j| PI / (j as f64 + 1.0)).collect();
    let (radii, weights) = crate::quad::gauss_legendre(n.max(2), 0.0, 1.0);
    monomial_system(
        Space::BergmanDisc,
        powers,
        norms_sq,
        Some((radii, weights)),
        (2 * n + 2).max(4),
    )
}

/// phi_j(z) = z^j / sqrt(2 pi), j = 0..n-1: the monomial orthonormal system of
/// the Hardy space of the disc under the arc-length inner product.
pub fn disc_hardy_basis(n: usize) -> Result<OrthonormalSystem> {
    if n == 0 {
        return Err(Error::Domain("basis size must be at least 1".into()));
    }
    let powers: Vec<i32> = (0..n as i32).collect();
    let norms_sq = vec![2.0 * PI; n];
    monomial_system(Space::HardyDisc, powers, norms_sq, None, (2 * n + 2).max(8))
}

/// z^j / ||z^j||, j = -n..=n, on the annulus 1 < |z| < 2, with
/// ||z^j||^2 = pi (2^{2j+2} - 1)/(j+1) for j != -1 and 2 pi ln 2 for j = -1.
pub fn annulus_bergman_basis(n: usize) -> Result<OrthonormalSystem> {
    if n == 0 {
        return Err(Error::Domain("basis size must be at least 1".into()));
    }
    let n = n as i32;
    let powers: Vec<i32> = (-n..=n).collect();
    let norms_sq: Vec<f64> = powers.iter().map(|&j| annulus_monomial_norm_sq(j)).collect();
    let (radii, weights) =
        crate::quad::gauss_legendre((2 * n as usize + 8).max(16), 1.0, 2.0);
    monomial_system(
        Space::BergmanAnnulus,
        powers,
        norms_sq,
        Some((radii, weights)),
        (4 * n as usize + 2).max(8),
    )
}

/// ||z^j||^2 over the annulus: 2 pi int_1^2 r^{2j+1} dr.
pub fn annulus_monomial_norm_sq(j: i32) -> f64 {
    if j == -1 {
        2.0 * PI * std::f64::consts::LN_2
    } else {
        PI * (4f64.powi(j + 1) - 1.0) / (j as f64 + 1.0)
    }
}

/// Modified Gram-Schmidt with one re-orthogonalization pass against the rule's
/// discrete inner product. A pivot below 1e-12 of the first pivot reports the
/// offending input index.
pub fn gram_schmidt(raw: Vec<RawFn>, rule: &QuadratureRule) -> Result<OrthonormalSystem> {
    if raw.is_empty() {
        return Err(Error::Domain("basis size must be at least 1".into()));
    }
    let m = rule.len();
    let w = rule.weights();
    let mut node_values: Vec<Complex64> = Vec::with_capacity(m);
    for node in rule.nodes() {
        node_values.push(node.as_scalar()?);
    }
    let n = raw.len();
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(n); // orthonormal node values
    let mut coeffs: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut norms_sq = Vec::with_capacity(n);
    let ip = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..m {
            s += w[k] * a[k] * b[k].conj();
        }
        s
    };
    let mut first_pivot = 0.0;
    for (j, f) in raw.iter().enumerate() {
        let mut v: Vec<Complex64> = node_values.iter().map(|&z| f(z)).collect();
        for (idx, val) in v.iter().enumerate() {
            if !val.re.is_finite() || !val.im.is_finite() {
                return Err(Error::NonFiniteSample { index: idx });
            }
        }
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        c[j] = Complex64::new(1.0, 0.0);
        for _pass in 0..2 {
            for i in 0..q.len() {
                let proj = ip(&v, &q[i]);
                for k in 0..m {
                    v[k] -= proj * q[i][k];
                }
                for k in 0..n {
                    c[k] -= proj * coeffs[i][k];
                }
            }
        }
        let nsq = ip(&v, &v).re;
        let pivot = nsq.max(0.0).sqrt();
        if j == 0 {
            first_pivot = pivot;
        }
        if pivot < 1e-12 * first_pivot || pivot == 0.0 {
            return Err(Error::DependentInput { index: j });
        }
        for k in 0..m {
            v[k] /= pivot;
        }
        for k in 0..n {
            c[k] /= pivot;
        }
        q.push(v);
        coeffs.push(c);
        norms_sq.push(nsq);
    }
    let raws = Arc::new(raw);
    let system = OrthonormalSystem {
        space: Space::Custom,
        functions: coeffs
            .into_iter()
            .map(|c| BasisFun::Combination {
                coeffs: c,
                raws: Arc::clone(&raws),
            })
            .collect(),
        norms_sq,
    };
    let defect = system.orthonormality_defect(rule)?;
    if defect > CONSTRUCTION_TOL {
        return Err(Error::Invariant(format!(
            "orthonormality defect {defect:e} exceeds {CONSTRUCTION_TOL:e} after re-orthogonalization"
        )));
    }
    Ok(system)
}

/// Finite partial sum Sum_j phi_j(z) conj(phi_j(zeta)): Hermitian by
/// construction.
#[derive(Clone)]
pub struct SeriesKernel {
    system: OrthonormalSystem,
    kind: KernelKind,
}

impl SeriesKernel {
    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn system(&self) -> &OrthonormalSystem {
        &self.system
    }

    pub fn evaluate(&self, z: Complex64, zeta: Complex64) -> Complex64 {
        let lambda = z * zeta.conj();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut running: Option<(i32, Complex64)> = None;
        for f in &self.system.functions {
            match f {
                BasisFun::Monomial { power, scale } => {
                    let pw = match running {
                        Some((p, v)) if *power == p + 1 => v * lambda,
                        _ => lambda.powi(*power),
                    };
                    running = Some((*power, pw));
                    sum += scale * scale * pw;
                }
                BasisFun::Combination { .. } => {
                    sum += f.eval(z) * f.eval(zeta).conj();
                }
            }
        }
        sum
    }

    pub fn evaluate_points(&self, z: &ComplexPoint, zeta: &ComplexPoint) -> Result<Complex64> {
        Ok(self.evaluate(z.as_scalar()?, zeta.as_scalar()?))
    }
}

/// Wrap a system as a series kernel. The Poisson-Szegő kind has no series
/// form here.
pub fn assemble_series_kernel(
    system: OrthonormalSystem,
    kind: KernelKind,
) -> Result<SeriesKernel> {
    if system.is_empty() {
        return Err(Error::Domain("cannot assemble a kernel from an empty system".into()));
    }
    if kind == KernelKind::PoissonSzego {
        return Err(Error::Domain(
            "series assembly applies to bergman and szego kinds".into(),
        ));
    }
    Ok(SeriesKernel { system, kind })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn disc_basis_normalization_value() {
        let sys = disc_bergman_basis(1).unwrap();
        // phi_0(0.5) = 1/sqrt(pi)
        assert_abs_diff_eq!(
            sys.eval(0, c(0.5, 0.0)).re,
            1.0 / PI.sqrt(),
            epsilon = 1e-12
        );
        assert_eq!(sys.eval(0, c(0.5, 0.0)).im, 0.0);
    }

    #[test]
    fn disc_basis_discrete_orthonormality() {
        let sys = disc_bergman_basis(3).unwrap();
        let rule = QuadratureRule::area(Domain::Disc, 32, 128).unwrap();
        let ip_12 = rule
            .inner_product(|z| sys.eval(1, z.as_scalar().unwrap()), |z| {
                sys.eval(2, z.as_scalar().unwrap())
            })
            .unwrap();
        assert!(ip_12.norm() <= 1e-14);
        let n2 = rule
            .inner_product(|z| sys.eval(2, z.as_scalar().unwrap()), |z| {
                sys.eval(2, z.as_scalar().unwrap())
            })
            .unwrap();
        // oracle: 2 pi int_0^1 (3/pi) r^5 dr = 1
        assert_abs_diff_eq!(n2.re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn hardy_basis_values_and_orthonormality() {
        let sys = disc_hardy_basis(5).unwrap();
        assert_abs_diff_eq!(
            sys.eval(0, c(0.37, -2.0)).re,
            1.0 / (2.0 * PI).sqrt(),
            epsilon = 1e-15
        );
        let rule = QuadratureRule::boundary(Domain::Disc, 256).unwrap();
        let n3 = rule
            .inner_product(|z| sys.eval(3, z.as_scalar().unwrap()), |z| {
                sys.eval(3, z.as_scalar().unwrap())
            })
            .unwrap();
        assert_abs_diff_eq!(n3.re, 1.0, epsilon = 1e-14);
        let ip_14 = rule
            .inner_product(|z| sys.eval(1, z.as_scalar().unwrap()), |z| {
                sys.eval(4, z.as_scalar().unwrap())
            })
            .unwrap();
        assert!(ip_14.norm() <= 1e-14);
    }

    #[test]
    fn annulus_norms() {
        assert_abs_diff_eq!(annulus_monomial_norm_sq(0), 3.0 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(
            annulus_monomial_norm_sq(-1),
            2.0 * PI * std::f64::consts::LN_2,
            epsilon = 1e-12
        );
        // spot value: 2 pi ln 2 = 4.355172180...
        assert_abs_diff_eq!(annulus_monomial_norm_sq(-1), 4.355172180607204, epsilon = 1e-12);
        // j = -2: 2 pi int_1^2 r^-3 dr = 3 pi / 4
        assert_abs_diff_eq!(annulus_monomial_norm_sq(-2), 0.75 * PI, epsilon = 1e-12);
    }

    #[test]
    fn annulus_basis_indices_and_unit_norm() {
        let sys = annulus_bergman_basis(4).unwrap();
        assert_eq!(sys.len(), 9);
        assert_eq!(sys.power(0), Some(-4));
        assert_eq!(sys.power(8), Some(4));
        // the j = -1 function is present and has unit discrete norm:
        // oracle 2 pi int_1^2 r^-1 dr = 2 pi ln 2
        let idx = (0..sys.len()).find(|&j| sys.power(j) == Some(-1)).unwrap();
        let rule = QuadratureRule::area(Domain::Annulus, 64, 256).unwrap();
        let n = rule
            .inner_product(|z| sys.eval(idx, z.as_scalar().unwrap()), |z| {
                sys.eval(idx, z.as_scalar().unwrap())
            })
            .unwrap();
        assert_abs_diff_eq!(n.re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn empty_bases_are_rejected() {
        assert!(disc_bergman_basis(0).is_err());
        assert!(disc_hardy_basis(0).is_err());
        assert!(annulus_bergman_basis(0).is_err());
    }

    #[test]
    fn gram_schmidt_reproduces_disc_basis_up_to_phase() {
        let rule = QuadratureRule::area(Domain::Disc, 32, 128).unwrap();
        let raw: Vec<RawFn> = vec![
            Arc::new(|_z| c(1.0, 0.0)),
            Arc::new(|z| z),
            Arc::new(|z| z * z),
        ];
        let gs = gram_schmidt(raw, &rule).unwrap();
        let exact = disc_bergman_basis(3).unwrap();
        let probe = c(0.3, 0.4);
        for j in 0..3 {
            let phase = gs.eval(j, probe) / exact.eval(j, probe);
            assert_abs_diff_eq!(phase.norm(), 1.0, epsilon = 1e-10);
            for z in [c(0.1, -0.7), c(-0.5, 0.2), c(0.0, 0.0), c(0.9, 0.0)] {
                let diff = (gs.eval(j, z) - phase * exact.eval(j, z)).norm();
                assert!(diff <= 1e-10, "j={j} z={z} diff={diff:e}");
            }
        }
    }

    #[test]
    fn gram_schmidt_single_constant() {
        let rule = QuadratureRule::area(Domain::Disc, 16, 32).unwrap();
        let raw: Vec<RawFn> = vec![Arc::new(|_z| c(1.0, 0.0))];
        let gs = gram_schmidt(raw, &rule).unwrap();
        assert_abs_diff_eq!(gs.eval(0, c(0.2, 0.2)).re, 1.0 / PI.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn gram_schmidt_detects_dependence() {
        let rule = QuadratureRule::area(Domain::Disc, 16, 32).unwrap();
        let raw: Vec<RawFn> = vec![Arc::new(|z| z), Arc::new(|z| 2.0 * z)];
        match gram_schmidt(raw, &rule) {
            Err(Error::DependentInput { index }) => assert_eq!(index, 1),
            other => panic!("expected dependence error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn series_kernel_single_term_at_origin() {
        let k = assemble_series_kernel(disc_bergman_basis(1).unwrap(), KernelKind::Bergman)
            .unwrap();
        assert_abs_diff_eq!(
            k.evaluate(c(0.0, 0.0), c(0.0, 0.0)).re,
            1.0 / PI,
            epsilon = 1e-15
        );
    }

    #[test]
    fn disc_series_matches_closed_form_on_diagonal() {
        let k = assemble_series_kernel(disc_bergman_basis(200).unwrap(), KernelKind::Bergman)
            .unwrap();
        // oracle: 1/(pi (1 - 0.25)^2)
        assert_abs_diff_eq!(
            k.evaluate(c(0.5, 0.0), c(0.5, 0.0)).re,
            1.0 / (PI * 0.5625),
            epsilon = 1e-12
        );
    }

    #[test]
    fn hardy_series_matches_geometric_closed_form() {
        let k = assemble_series_kernel(disc_hardy_basis(200).unwrap(), KernelKind::Szego).unwrap();
        // oracle: geometric series, 1/(2 pi (1 - 0.06))
        assert_abs_diff_eq!(
            k.evaluate(c(0.3, 0.0), c(0.2, 0.0)).re,
            1.0 / (2.0 * PI * 0.94),
            epsilon = 1e-12
        );
    }

    #[test]
    fn series_kernels_are_exactly_hermitian() {
        let k = assemble_series_kernel(disc_bergman_basis(60).unwrap(), KernelKind::Bergman)
            .unwrap();
        let mut rng_state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            rng_state ^= rng_state << 13;
            rng_state ^= rng_state >> 7;
            rng_state ^= rng_state << 17;
            (rng_state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let z = Complex64::from_polar(0.95 * next(), 2.0 * PI * next());
            let t = Complex64::from_polar(0.95 * next(), 2.0 * PI * next());
            let a = k.evaluate(z, t);
            let b = k.evaluate(t, z).conj();
            assert_eq!(a, b);
            assert!(k.evaluate(z, z).re > 0.0);
            assert!(k.evaluate(z, z).im.abs() < 1e-16);
        }
    }

    #[test]
    fn series_from_gram_schmidt_matches_closed_basis_series() {
        // basis-independence of the assembled kernel
        let rule = QuadratureRule::area(Domain::Disc, 32, 128).unwrap();
        let raw: Vec<RawFn> = (0..8)
            .map(|p| {
                let f: RawFn = Arc::new(move |z: Complex64| z.powi(p));
                f
            })
            .collect();
        let gs = assemble_series_kernel(gram_schmidt(raw, &rule).unwrap(), KernelKind::Bergman)
            .unwrap();
        let monomial =
            assemble_series_kernel(disc_bergman_basis(8).unwrap(), KernelKind::Bergman).unwrap();
        for (z, t) in [
            (c(0.0, 0.0), c(0.0, 0.0)),
            (c(0.5, 0.3), c(-0.2, 0.6)),
            (c(0.9, 0.0), c(0.0, 0.9)),
            (c(-0.4, -0.4), c(0.1, 0.2)),
        ] {
            assert!((gs.evaluate(z, t) - monomial.evaluate(z, t)).norm() <= 1e-9);
        }
    }

    #[test]
    fn uniform_bound_is_monotone_in_system_size_and_attains_the_kernel_sup() {
        // sup over |z| <= 0.9 of sqrt(Sum |phi_j(z)|^2), 101-point grid
        let sup_for = |n: usize| -> f64 {
            let sys = disc_bergman_basis(n).unwrap();
            let mut sup: f64 = 0.0;
            for i in 0..101 {
                let x = -0.9 + 1.8 * i as f64 / 100.0;
                let total: f64 = (0..sys.len())
                    .map(|j| sys.eval(j, c(x, 0.0)).norm_sqr())
                    .sum();
                sup = sup.max(total.sqrt());
            }
            sup
        };
        let sups: Vec<f64> = [25, 50, 100, 200].iter().map(|&n| sup_for(n)).collect();
        for w in sups.windows(2) {
            assert!(w[0] <= w[1] + 1e-15);
        }
        let target = 1.0 / (PI * (1.0 - 0.81) * (1.0 - 0.81)).sqrt();
        assert_abs_diff_eq!(sups[3], target, epsilon = 1e-10);
    }

    #[test]
    fn truncation_tail_bound_holds_at_50_100_200() {
        // |series_N - closed| <= Sum_{j>=N} ((j+1)/pi) 0.81^j on |z|,|zeta| <= 0.9,
        // plus a 1e-13 floor for accumulated rounding in the 200-term sums.
        let closed = |z: Complex64, t: Complex64| {
            let one = Complex64::new(1.0, 0.0);
            1.0 / PI * ((one - z * t.conj()) * (one - z * t.conj())).inv()
        };
        for n in [50usize, 100, 200] {
            let x = 0.81f64;
            let tail = x.powi(n as i32) * ((n as f64 + 1.0) * (1.0 - x) + x)
                / ((1.0 - x) * (1.0 - x))
                / PI;
            let k = assemble_series_kernel(disc_bergman_basis(n).unwrap(), KernelKind::Bergman)
                .unwrap();
            let mut worst: f64 = 0.0;
            for i in 0..9 {
                for j in 0..9 {
                    let z = Complex64::from_polar(0.9 * i as f64 / 8.0, 0.7 * i as f64);
                    let t = Complex64::from_polar(0.9 * j as f64 / 8.0, -0.4 * j as f64);
                    worst = worst.max((k.evaluate(z, t) - closed(z, t)).norm());
                }
            }
            // include the extremal real pair where the bound is attained
            let z = c(0.9, 0.0);
            worst = worst.max((k.evaluate(z, z) - closed(z, z)).norm());
            assert!(
                worst <= tail + 1e-13,
                "N={n}: defect {worst:e} vs tail {tail:e}"
            );
        }
    }

    #[test]
    fn poisson_szego_series_kind_is_rejected() {
        let sys = disc_hardy_basis(4).unwrap();
        assert!(assemble_series_kernel(sys, KernelKind::PoissonSzego).is_err());
    }
}
