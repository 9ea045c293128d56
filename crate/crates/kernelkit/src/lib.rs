//! Numerical toolkit for the Bergman, Szegő, and Poisson-Szegő reproducing
//! kernels on model domains in one and two complex variables.
//!
//! The crate is organized around the lifecycle of a kernel:
//!
//! - [`quad`] realizes the area, circle, and sphere integrals as finite rules;
//! - [`basis`] holds orthonormal systems and assembles kernels as series;
//! - [`catalog`] holds the closed-form evaluators, the Poisson-Szegő
//!   constructor, the annulus two-term approximation with its error budget,
//!   the extremal characterization, and boundary-blowup probes;
//! - [`transport`] moves Bergman kernels across biholomorphic maps;
//! - [`projections`] applies kernels as integral operators;
//! - [`ballgeom`] carries the invariant geometry of the unit ball of C^2
//!   (Bergman metric, invariant Laplacian, Levi form);
//! - [`suites`] bundles the verification checks behind `verify --suite ...`.

pub mod basis;
pub mod catalog;
pub mod domain;
pub mod error;
pub mod point;
pub mod projections;
pub mod quad;
pub mod suites;
pub mod transport;

pub mod ballgeom;

pub use domain::Domain;
pub use error::{Error, Result};
pub use point::{Complex64, ComplexPoint};
pub use quad::{Measure, QuadratureRule};

#[cfg(test)]
mod thread_safety {
    // everything is immutable after construction and evaluation is pure
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn public_types_are_send_and_sync() {
        assert_send_sync::<crate::ComplexPoint>();
        assert_send_sync::<crate::Domain>();
        assert_send_sync::<crate::QuadratureRule>();
        assert_send_sync::<crate::basis::OrthonormalSystem>();
        assert_send_sync::<crate::basis::SeriesKernel>();
        assert_send_sync::<crate::catalog::Kernel>();
        assert_send_sync::<crate::transport::ConformalMap>();
        assert_send_sync::<crate::projections::BoundaryFunction>();
        assert_send_sync::<crate::ballgeom::HermitianMetric2>();
    }
}
