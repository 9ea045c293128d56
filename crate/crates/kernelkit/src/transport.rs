//! Biholomorphic maps between the model domains, the complex/real Jacobian
//! relation, and the Bergman kernel transformation law.

use std::sync::Arc;

use crate::catalog::{Kernel, KernelKind, Provenance};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::point::{Complex64, ComplexPoint};

/// Step for finite-difference real Jacobians.
const FD_STEP: f64 = 1e-5;

pub type Matrix2c = [[Complex64; 2]; 2];

/// The catalog of maps. Maps with one complex variable carry an analytic
/// derivative; the unitary map of C^2 carries its (constant) complex Jacobian
/// determinant. Compositions chain both.
#[derive(Clone, Debug)]
pub enum ConformalMap {
    /// Upper half-plane onto the disc, z -> (i - z)/(i + z).
    Cayley,
    /// Quarter plane onto the upper half-plane, z -> z^2.
    Square,
    /// z -> 1/z. Carried for the geometric reading of the annulus kernel; its
    /// image is not a catalog domain, so it declares no source or target and
    /// no transport runs through it.
    Inversion,
    /// Disc automorphism z -> (z - a)/(1 - conj(a) z), |a| < 1.
    Mobius { a: Complex64 },
    /// Unitary automorphism of the ball in C^2.
    Unitary2 { m: Matrix2c },
    /// outer after inner.
    Composed {
        outer: Box<ConformalMap>,
        inner: Box<ConformalMap>,
    },
}

fn unitary_defect(m: &Matrix2c) -> f64 {
    // max entry of M^H M - I
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                s += m[k][i].conj() * m[k][j];
            }
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((s - target).norm());
        }
    }
    worst
}

impl ConformalMap {
    pub fn mobius(a: Complex64) -> Result<Self> {
        if a.norm() >= 1.0 {
            return Err(Error::Domain("mobius parameter must satisfy |a| < 1".into()));
        }
        Ok(ConformalMap::Mobius { a })
    }

    pub fn unitary2(m: Matrix2c) -> Result<Self> {
        let defect = unitary_defect(&m);
        if defect > 1e-12 {
            return Err(Error::Domain(format!(
                "matrix is not unitary: defect {defect:e}"
            )));
        }
        Ok(ConformalMap::Unitary2 { m })
    }

    pub fn compose(outer: ConformalMap, inner: ConformalMap) -> Result<Self> {
        match (inner.target(), outer.source()) {
            (Some(a), Some(b)) if a != b => Err(Error::Domain(format!(
                "cannot compose: inner target {} != outer source {}",
                a.name(),
                b.name()
            ))),
            _ => Ok(ConformalMap::Composed {
                outer: Box::new(outer),
                inner: Box::new(inner),
            }),
        }
    }

    pub fn source(&self) -> Option<Domain> {
        match self {
            ConformalMap::Cayley => Some(Domain::HalfPlane),
            ConformalMap::Square => Some(Domain::QuarterPlane),
            ConformalMap::Inversion => None,
            ConformalMap::Mobius { .. } => Some(Domain::Disc),
            ConformalMap::Unitary2 { .. } => Some(Domain::Ball2),
            ConformalMap::Composed { inner, .. } => inner.source(),
        }
    }

    pub fn target(&self) -> Option<Domain> {
        match self {
            ConformalMap::Cayley => Some(Domain::Disc),
            ConformalMap::Square => Some(Domain::HalfPlane),
            ConformalMap::Inversion => None,
            ConformalMap::Mobius { .. } => Some(Domain::Disc),
            ConformalMap::Unitary2 { .. } => Some(Domain::Ball2),
            ConformalMap::Composed { outer, .. } => outer.target(),
        }
    }

    /// Complex dimension of the source space.
    pub fn dim(&self) -> usize {
        match self {
            ConformalMap::Unitary2 { .. } => 2,
            ConformalMap::Composed { inner, .. } => inner.dim(),
            _ => 1,
        }
    }

    pub fn eval(&self, z: &ComplexPoint) -> Result<ComplexPoint> {
        match self {
            ConformalMap::Cayley => {
                let i = Complex64::new(0.0, 1.0);
                let w = z.as_scalar()?;
                ComplexPoint::scalar((i - w) / (i + w))
            }
            ConformalMap::Square => {
                let w = z.as_scalar()?;
                ComplexPoint::scalar(w * w)
            }
            ConformalMap::Inversion => {
                let w = z.as_scalar()?;
                if w.norm() < 1e-300 {
                    return Err(Error::Pole("inversion at zero".into()));
                }
                ComplexPoint::scalar(w.inv())
            }
            ConformalMap::Mobius { a } => {
                let w = z.as_scalar()?;
                ComplexPoint::scalar((w - a) / (Complex64::new(1.0, 0.0) - a.conj() * w))
            }
            ConformalMap::Unitary2 { m } => {
                let (z1, z2) = z.as_pair()?;
                ComplexPoint::pair(m[0][0] * z1 + m[0][1] * z2, m[1][0] * z1 + m[1][1] * z2)
            }
            ConformalMap::Composed { outer, inner } => outer.eval(&inner.eval(z)?),
        }
    }

    /// f'(z) for one-variable maps; det J_C for the ball maps. Compositions
    /// use the chain rule on the stored analytic derivatives.
    pub fn complex_det(&self, z: &ComplexPoint) -> Result<Complex64> {
        match self {
            ConformalMap::Cayley => {
                let i = Complex64::new(0.0, 1.0);
                let w = z.as_scalar()?;
                let d = i + w;
                Ok(Complex64::new(0.0, -2.0) * (d * d).inv())
            }
            ConformalMap::Square => Ok(2.0 * z.as_scalar()?),
            ConformalMap::Inversion => {
                let w = z.as_scalar()?;
                if w.norm() < 1e-300 {
                    return Err(Error::Pole("inversion at zero".into()));
                }
                Ok(-(w * w).inv())
            }
            ConformalMap::Mobius { a } => {
                let w = z.as_scalar()?;
                let d = Complex64::new(1.0, 0.0) - a.conj() * w;
                Ok((1.0 - a.norm_sqr()) * (d * d).inv())
            }
            ConformalMap::Unitary2 { m } => Ok(m[0][0] * m[1][1] - m[0][1] * m[1][0]),
            ConformalMap::Composed { outer, inner } => {
                Ok(outer.complex_det(&inner.eval(z)?)? * inner.complex_det(z)?)
            }
        }
    }
}

/// The two Jacobian determinants of a holomorphic map at a point: the complex
/// one analytic, the real one from central finite differences of the real
/// rendering.
#[derive(Clone, Copy, Debug)]
pub struct JacobianPair {
    pub complex_det: Complex64,
    pub real_det: f64,
}

impl JacobianPair {
    /// | real_det - |complex_det|^2 | / |complex_det|^2.
    pub fn relative_defect(&self) -> f64 {
        let target = self.complex_det.norm_sqr();
        (self.real_det - target).abs() / target
    }
}

/// Real Jacobian determinant of the 2n x 2n real rendering of `map` at `z`,
/// by central differences with step 1e-5, paired with the analytic complex
/// determinant.
pub fn real_jacobian_det(map: &ConformalMap, z: &ComplexPoint) -> Result<JacobianPair> {
    if let Some(src) = map.source() {
        if !src.contains(z) {
            return Err(Error::Domain(format!(
                "point outside the map source {}",
                src.name()
            )));
        }
    }
    let complex_det = map.complex_det(z)?;
    let n = z.dim();
    let dim = 2 * n;
    // real coordinates of the point
    let mut x = [0.0; 4];
    for (j, c) in z.coords().iter().enumerate() {
        x[2 * j] = c.re;
        x[2 * j + 1] = c.im;
    }
    let rebuild = |x: &[f64; 4]| -> Result<ComplexPoint> {
        if n == 1 {
            ComplexPoint::scalar(Complex64::new(x[0], x[1]))
        } else {
            ComplexPoint::pair(
                Complex64::new(x[0], x[1]),
                Complex64::new(x[2], x[3]),
            )
        }
    };
    let mut jac = [[0.0f64; 4]; 4];
    for col in 0..dim {
        let mut xp = x;
        let mut xm = x;
        xp[col] += FD_STEP;
        xm[col] -= FD_STEP;
        let fp = map.eval(&rebuild(&xp)?)?;
        let fm = map.eval(&rebuild(&xm)?)?;
        for row_c in 0..n {
            let dp = fp.coords()[row_c];
            let dm = fm.coords()[row_c];
            jac[2 * row_c][col] = (dp.re - dm.re) / (2.0 * FD_STEP);
            jac[2 * row_c + 1][col] = (dp.im - dm.im) / (2.0 * FD_STEP);
        }
    }
    let real_det = if dim == 2 {
        jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0]
    } else {
        det4(&jac)
    };
    Ok(JacobianPair {
        complex_det,
        real_det,
    })
}

fn det4(a: &[[f64; 4]; 4]) -> f64 {
    let det3 = |r: [usize; 3], c: [usize; 3]| -> f64 {
        a[r[0]][c[0]] * (a[r[1]][c[1]] * a[r[2]][c[2]] - a[r[1]][c[2]] * a[r[2]][c[1]])
            - a[r[0]][c[1]] * (a[r[1]][c[0]] * a[r[2]][c[2]] - a[r[1]][c[2]] * a[r[2]][c[0]])
            + a[r[0]][c[2]] * (a[r[1]][c[0]] * a[r[2]][c[1]] - a[r[1]][c[1]] * a[r[2]][c[0]])
    };
    a[0][0] * det3([1, 2, 3], [1, 2, 3]) - a[0][1] * det3([1, 2, 3], [0, 2, 3])
        + a[0][2] * det3([1, 2, 3], [0, 1, 3])
        - a[0][3] * det3([1, 2, 3], [0, 1, 2])
}

/// Transform a Bergman kernel on the map's target into the kernel on its
/// source: det J_C f(z) K(f(z), f(zeta)) conj(det J_C f(zeta)).
pub fn pullback_kernel(map: &ConformalMap, target_kernel: &Kernel) -> Result<Kernel> {
    if target_kernel.kind() != KernelKind::Bergman {
        return Err(Error::Domain(
            "the transformation law transports bergman kernels".into(),
        ));
    }
    let source = map
        .source()
        .ok_or_else(|| Error::Domain("map declares no source domain".into()))?;
    let target = map
        .target()
        .ok_or_else(|| Error::Domain("map declares no target domain".into()))?;
    if target != target_kernel.domain() {
        return Err(Error::Domain(format!(
            "kernel lives on {}, map lands in {}",
            target_kernel.domain().name(),
            target.name()
        )));
    }
    let map = map.clone();
    let inner = target_kernel.clone();
    let eval = move |z: &ComplexPoint, zeta: &ComplexPoint| -> Result<Complex64> {
        if !source.contains(z) || !source.contains(zeta) {
            return Err(Error::Domain(format!(
                "arguments must lie in the open {}",
                source.name()
            )));
        }
        let dz = map.complex_det(z)?;
        let dzeta = map.complex_det(zeta)?;
        let k = inner.evaluate(&map.eval(z)?, &map.eval(zeta)?)?;
        Ok(dz * k * dzeta.conj())
    };
    Ok(Kernel::from_parts(
        KernelKind::Bergman,
        source,
        Provenance::Transported,
        Arc::new(eval),
    ))
}

/// |det M . K_B(Mz, M zeta) . conj(det M) - K_B(z, zeta)| for a unitary M:
/// zero up to rounding by the transformation law.
pub fn unitary_invariance_check(
    m: Matrix2c,
    z: &ComplexPoint,
    zeta: &ComplexPoint,
) -> Result<f64> {
    let map = ConformalMap::unitary2(m)?;
    let k = Kernel::closed_form(crate::catalog::KernelId::BergmanBall2);
    let pulled = pullback_kernel(&map, &k)?;
    let a = pulled.evaluate(z, zeta)?;
    let b = k.evaluate(z, zeta)?;
    Ok((a - b).norm())
}
