//! Invariant geometry of the unit ball in C^2: the metric derived from the
//! kernel diagonal, its inverse and determinant, the divergence identities,
//! the invariant Laplacian, the annihilation of the Poisson-Szegő kernel, and
//! Levi-form evaluation.

use crate::catalog::{eval_closed_form, KernelId};
use crate::error::{Error, Result};
use crate::point::{Complex64, ComplexPoint};

/// FD step for the divergence identities.
const DIVERGENCE_STEP: f64 = 1e-4;

/// 2x2 Hermitian matrix attached to a base point.
#[derive(Clone, Copy, Debug)]
pub struct HermitianMetric2 {
    pub entries: [[Complex64; 2]; 2],
    pub at: ComplexPoint,
}

impl HermitianMetric2 {
    /// Eigenvalues of the Hermitian matrix (ascending).
    pub fn eigenvalues(&self) -> (f64, f64) {
        let a = self.entries[0][0].re;
        let d = self.entries[1][1].re;
        let b2 = self.entries[0][1].norm_sqr();
        let tr = a + d;
        let disc = ((a - d) * (a - d) + 4.0 * b2).sqrt();
        ((tr - disc) / 2.0, (tr + disc) / 2.0)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.eigenvalues().0 > 0.0
    }

    pub fn det(&self) -> f64 {
        (self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]).re
    }

    /// max entrywise |self - other|.
    pub fn max_deviation(&self, other: &HermitianMetric2) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..2 {
            for k in 0..2 {
                worst = worst.max((self.entries[j][k] - other.entries[j][k]).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.entries[0][1] == self.entries[1][0].conj()
            && self.entries[0][0].im == 0.0
            && self.entries[1][1].im == 0.0
    }
}

fn require_in_ball(z: &ComplexPoint) -> Result<(Complex64, Complex64, f64)> {
    let (z1, z2) = z.as_pair()?;
    let s = z.norm_sq();
    if s >= 1.0 {
        return Err(Error::Domain("point must lie in the open unit ball".into()));
    }
    Ok((z1, z2, s))
}

/// Metric g_jk = 3 [delta_jk (1 - |z|^2) + conj(z_j) z_k] / (1 - |z|^2)^2.
pub fn bergman_metric(z: &ComplexPoint) -> Result<HermitianMetric2> {
    let (z1, z2, s) = require_in_ball(z)?;
    let d = 1.0 - s;
    let scale = 3.0 / (d * d);
    let zb = [z1.conj(), z2.conj()];
    let zz = [z1, z2];
    let mut entries = [[Complex64::new(0.0, 0.0); 2]; 2];
    for j in 0..2 {
        for k in 0..2 {
            let kr = if j == k {
                Complex64::new(d, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            entries[j][k] = scale * (kr + zb[j] * zz[k]);
        }
    }
    Ok(HermitianMetric2 { entries, at: *z })
}

fn real_coords(z: &ComplexPoint) -> Result<[f64; 4]> {
    let (z1, z2) = z.as_pair()?;
    Ok([z1.re, z1.im, z2.re, z2.im])
}

fn from_real(x: [f64; 4]) -> Result<ComplexPoint> {
    ComplexPoint::pair(Complex64::new(x[0], x[1]), Complex64::new(x[2], x[3]))
}

/// Mixed complex second derivatives d^2 u / dz_k dzbar_j of a scalar field on
/// the ball, by second-order central differences in the four real coordinates.
/// Entry [k][j] carries the unbarred index k and barred index j.
fn mixed_second_derivatives(
    u: &dyn Fn(&ComplexPoint) -> Complex64,
    z: &ComplexPoint,
    h: f64,
) -> Result<[[Complex64; 2]; 2]> {
    let base = real_coords(z)?;
    let at = |x: [f64; 4]| -> Result<Complex64> { Ok(u(&from_real(x)?)) };
    let second = |i: usize| -> Result<Complex64> {
        let mut xp = base;
        let mut xm = base;
        xp[i] += h;
        xm[i] -= h;
        Ok((at(xp)? - 2.0 * at(base)? + at(xm)?) / (h * h))
    };
    let mixed = |i: usize, j: usize| -> Result<Complex64> {
        let mut xpp = base;
        let mut xpm = base;
        let mut xmp = base;
        let mut xmm = base;
        xpp[i] += h;
        xpp[j] += h;
        xpm[i] += h;
        xpm[j] -= h;
        xmp[i] -= h;
        xmp[j] += h;
        xmm[i] -= h;
        xmm[j] -= h;
        Ok((at(xpp)? - at(xpm)? - at(xmp)? + at(xmm)?) / (4.0 * h * h))
    };
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for k in 0..2 {
        for j in 0..2 {
            let (xk, yk, xj, yj) = (2 * k, 2 * k + 1, 2 * j, 2 * j + 1);
            out[k][j] = if j == k {
                0.25 * (second(xk)? + second(yk)?)
            } else {
                0.25
                    * (mixed(xk, xj)? + mixed(yk, yj)?
                        + Complex64::new(0.0, 1.0) * (mixed(xk, yj)? - mixed(yk, xj)?))
            };
        }
    }
    Ok(out)
}

/// Verification mode for the metric: max entrywise deviation between the
/// closed form and central finite differences of log K(z, z) in the four real
/// coordinates.
pub fn bergman_metric_fd_deviation(z: &ComplexPoint, h: f64) -> Result<f64> {
    require_in_ball(z)?;
    if z.norm() + 2.0 * h >= 1.0 {
        return Err(Error::Domain("finite-difference stencil leaves the ball".into()));
    }
    let log_k = |p: &ComplexPoint| -> Complex64 {
        let v = eval_closed_form(KernelId::BergmanBall2, p, p)
            .map(|k| k.re)
            .unwrap_or(f64::NAN);
        Complex64::new(v.ln(), 0.0)
    };
    // g_jk has the barred index second: g_jk = d^2 log K / dz_j dzbar_k,
    // which is the [j][k] entry with unbarred j in our stencil layout
    let d2 = mixed_second_derivatives(&log_k, z, h)?;
    let exact = bergman_metric(z)?;
    let mut worst: f64 = 0.0;
    for j in 0..2 {
        for k in 0..2 {
            // d2[j][k] = d^2/dz_j dzbar_k
            worst = worst.max((d2[j][k] - exact.entries[j][k]).norm());
        }
    }
    Ok(worst)
}

/// Closed-form inverse metric and determinant:
/// g^{jk} = (1 - |z|^2)(delta_jk - conj(z_j) z_k)/3 and g = 9/(1 - |z|^2)^3.
pub fn inverse_metric(z: &ComplexPoint) -> Result<(HermitianMetric2, f64)> {
    let (z1, z2, s) = require_in_ball(z)?;
    let d = 1.0 - s;
    let zb = [z1.conj(), z2.conj()];
    let zz = [z1, z2];
    let mut entries = [[Complex64::new(0.0, 0.0); 2]; 2];
    for j in 0..2 {
        for k in 0..2 {
            let kr = if j == k { 1.0 } else { 0.0 };
            entries[j][k] = d / 3.0 * (Complex64::new(kr, 0.0) - zb[j] * zz[k]);
        }
    }
    Ok((
        HermitianMetric2 { entries, at: *z },
        9.0 / (d * d * d),
    ))
}

/// g g^{jk} = 3 (delta_jk - conj(z_j) z_k)/(1 - |z|^2)^2, the combination whose
/// divergences vanish.
fn weighted_inverse(z: &ComplexPoint) -> Result<[[Complex64; 2]; 2]> {
    let (z1, z2, s) = require_in_ball(z)?;
    let d = 1.0 - s;
    let zb = [z1.conj(), z2.conj()];
    let zz = [z1, z2];
    let mut entries = [[Complex64::new(0.0, 0.0); 2]; 2];
    for j in 0..2 {
        for k in 0..2 {
            let kr = if j == k { 1.0 } else { 0.0 };
            entries[j][k] = 3.0 / (d * d) * (Complex64::new(kr, 0.0) - zb[j] * zz[k]);
        }
    }
    Ok(entries)
}

/// max over k of |Sum_j d/dzbar_j (g g^{jk})| and over j of
/// |Sum_k d/dz_k (g g^{jk})|, both by central differences (step 1e-4). Zero
/// identically for the ball metric.
pub fn divergence_residual(z: &ComplexPoint) -> Result<f64> {
    require_in_ball(z)?;
    if z.norm() >= 1.0 - 1e-3 {
        return Err(Error::Domain("too close to the boundary for the stencil".into()));
    }
    let h = DIVERGENCE_STEP;
    let base = real_coords(z)?;
    let entry_at = |x: [f64; 4]| -> Result<[[Complex64; 2]; 2]> { weighted_inverse(&from_real(x)?) };
    // d/dx_i of every entry, central
    let deriv = |i: usize| -> Result<[[Complex64; 2]; 2]> {
        let mut xp = base;
        let mut xm = base;
        xp[i] += h;
        xm[i] -= h;
        let ep = entry_at(xp)?;
        let em = entry_at(xm)?;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for j in 0..2 {
            for k in 0..2 {
                out[j][k] = (ep[j][k] - em[j][k]) / (2.0 * h);
            }
        }
        Ok(out)
    };
    let dx = [deriv(0)?, deriv(2)?];
    let dy = [deriv(1)?, deriv(3)?];
    let i = Complex64::new(0.0, 1.0);
    let mut worst: f64 = 0.0;
    for k in 0..2 {
        // Sum_j d/dzbar_j (g g^{jk}) with d/dzbar = (d/dx + i d/dy)/2
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..2 {
            s += 0.5 * (dx[j][j][k] + i * dy[j][j][k]);
        }
        worst = worst.max(s.norm());
    }
    for j in 0..2 {
        // Sum_k d/dz_k (g g^{jk}) with d/dz = (d/dx - i d/dy)/2
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..2 {
            s += 0.5 * (dx[k][j][k] - i * dy[k][j][k]);
        }
        worst = worst.max(s.norm());
    }
    Ok(worst)
}

/// Reduced invariant Laplacian
/// L u = 4 Sum_{j,k} g^{jk} d^2 u / dz_k dzbar_j, the mixed derivatives by
/// 4-point central differences in the real coordinates.
pub fn invariant_laplacian(
    u: &dyn Fn(&ComplexPoint) -> Complex64,
    z: &ComplexPoint,
    h: f64,
) -> Result<Complex64> {
    if !(1e-4..=1e-2).contains(&h) {
        return Err(Error::Domain("step must lie in [1e-4, 1e-2]".into()));
    }
    let (z1, z2, s) = require_in_ball(z)?;
    if z.norm() + 2.0 * h >= 1.0 {
        return Err(Error::Domain("finite-difference stencil leaves the ball".into()));
    }
    let d2 = mixed_second_derivatives(u, z, h)?;
    let d = 1.0 - s;
    let zb = [z1.conj(), z2.conj()];
    let zz = [z1, z2];
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..2 {
        for k in 0..2 {
            let kr = if j == k { 1.0 } else { 0.0 };
            let g_inv = d / 3.0 * (Complex64::new(kr, 0.0) - zb[j] * zz[k]);
            // pair g^{jk} with d^2/dz_k dzbar_j
            total += g_inv * d2[k][j];
        }
    }
    Ok(4.0 * total)
}

/// Relative residual |L_z P(z, zeta)| / P(z, zeta) for the Poisson-Szegő
/// kernel of the ball; the identity L_z P = 0 makes this pure
/// finite-difference truncation error, O(h^2).
pub fn annihilation_check(zeta: &ComplexPoint, z: &ComplexPoint, h: f64) -> Result<f64> {
    if zeta.dim() != 2 || (zeta.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain("zeta must lie on the unit sphere".into()));
    }
    let zeta = *zeta;
    let u = move |p: &ComplexPoint| -> Complex64 {
        eval_closed_form(KernelId::PoissonSzegoBall2, p, &zeta)
            .unwrap_or(Complex64::new(f64::NAN, 0.0))
    };
    let lu = invariant_laplacian(&u, z, h)?;
    let p = eval_closed_form(KernelId::PoissonSzegoBall2, z, &zeta)?.re;
    Ok(lu.norm() / p)
}

/// A defining function rho with gradient and complex Hessian evaluators. The
/// ball's is rho(z) = |z|^2 - 1.
#[derive(Clone, Copy, Debug)]
pub struct DefiningFunction {
    _private: (),
}

impl DefiningFunction {
    pub fn ball2() -> Self {
        Self { _private: () }
    }

    pub fn value(&self, z: &ComplexPoint) -> Result<f64> {
        let (z1, z2) = z.as_pair()?;
        Ok(z1.norm_sqr() + z2.norm_sqr() - 1.0)
    }

    /// (d rho / d z_1, d rho / d z_2).
    pub fn gradient(&self, z: &ComplexPoint) -> Result<[Complex64; 2]> {
        let (z1, z2) = z.as_pair()?;
        Ok([z1.conj(), z2.conj()])
    }

    /// d^2 rho / dz_j dzbar_k: the identity matrix for the ball.
    pub fn complex_hessian(&self, z: &ComplexPoint) -> Result<[[Complex64; 2]; 2]> {
        let _ = z.as_pair()?;
        Ok([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ])
    }
}

/// Levi form Sum_{j,k} (d^2 rho / dz_j dzbar_k)(p) w_j conj(w_k) for a complex
/// tangent vector w at a boundary point p.
pub fn levi_form(rho: &DefiningFunction, p: &ComplexPoint, w: &ComplexPoint) -> Result<f64> {
    if rho.value(p)?.abs() > 1e-10 {
        return Err(Error::Domain("base point must lie on the boundary".into()));
    }
    let grad = rho.gradient(p)?;
    let (w1, w2) = w.as_pair()?;
    let tangency = (grad[0] * w1 + grad[1] * w2).norm();
    if tangency > 1e-10 {
        return Err(Error::Tangency { residual: tangency });
    }
    let hess = rho.complex_hessian(p)?;
    let wv = [w1, w2];
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..2 {
        for k in 0..2 {
            total += hess[j][k] * wv[j] * wv[k].conj();
        }
    }
    Ok(total.re)
}
