use crate::error::{Error, Result};

pub use num_complex::Complex64;

/// A point in C^n, n = 1 or 2. Coordinates are finite by construction and the
/// dimension never changes afterwards.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPoint {
    coords: [Complex64; 2],
    dim: u8,
}

impl ComplexPoint {
    /// A point of C^1.
    pub fn scalar(z: Complex64) -> Result<Self> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Domain("non-finite coordinate".into()));
        }
        Ok(Self {
            coords: [z, Complex64::new(0.0, 0.0)],
            dim: 1,
        })
    }

    /// A point of C^2.
    pub fn pair(z1: Complex64, z2: Complex64) -> Result<Self> {
        for z in [z1, z2] {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::Domain("non-finite coordinate".into()));
            }
        }
        Ok(Self {
            coords: [z1, z2],
            dim: 2,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords[..self.dim as usize]
    }

    /// The single coordinate of a C^1 point.
    pub fn as_scalar(&self) -> Result<Complex64> {
        if self.dim == 1 {
            Ok(self.coords[0])
        } else {
            Err(Error::Domain("expected a point of C^1".into()))
        }
    }

    /// Both coordinates of a C^2 point.
    pub fn as_pair(&self) -> Result<(Complex64, Complex64)> {
        if self.dim == 2 {
            Ok((self.coords[0], self.coords[1]))
        } else {
            Err(Error::Domain("expected a point of C^2".into()))
        }
    }

    /// Euclidean norm over all real coordinates.
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coords()
            .iter()
            .map(num_complex::Complex64::norm_sqr)
            .sum()
    }
}

/// Shorthand constructor for a C^1 point from raw parts; panics on non-finite input.
pub fn pt(re: f64, im: f64) -> ComplexPoint {
    ComplexPoint::scalar(Complex64::new(re, im)).expect("finite coordinates")
}

/// Shorthand constructor for a C^2 point from raw parts; panics on non-finite input.
pub fn pt2(re1: f64, im1: f64, re2: f64, im2: f64) -> ComplexPoint {
    ComplexPoint::pair(Complex64::new(re1, im1), Complex64::new(re2, im2))
        .expect("finite coordinates")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_is_fixed_and_accessors_guard_it() {
        let a = pt(0.5, -0.25);
        assert_eq!(a.dim(), 1);
        assert!(a.as_scalar().is_ok());
        assert!(a.as_pair().is_err());

        let b = pt2(0.1, 0.2, 0.3, 0.4);
        assert_eq!(b.dim(), 2);
        assert!(b.as_pair().is_ok());
        assert!(b.as_scalar().is_err());
    }

    #[test]
    fn rejects_non_finite_coordinates() {
        assert!(ComplexPoint::scalar(Complex64::new(f64::NAN, 0.0)).is_err());
        assert!(ComplexPoint::scalar(Complex64::new(0.0, f64::INFINITY)).is_err());
        assert!(ComplexPoint::pair(Complex64::new(0.0, 0.0), Complex64::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn norm_is_euclidean_over_all_coordinates() {
        let p = pt2(3.0, 0.0, 0.0, 4.0);
        assert_eq!(p.norm(), 5.0);
    }
}
