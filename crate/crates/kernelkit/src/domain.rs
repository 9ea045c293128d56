use crate::error::{Error, Result};
use crate::point::ComplexPoint;

/// Model domains the toolkit knows closed-form kernels for. The annulus radii
/// are fixed at (1, 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Disc,
    Annulus,
    HalfPlane,
    QuarterPlane,
    Ball2,
}

impl Domain {
    /// Complex dimension of the ambient space.
    pub fn dim(self) -> usize {
        match self {
            Domain::Ball2 => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Domain::Disc => "disc",
            Domain::Annulus => "annulus",
            Domain::HalfPlane => "halfplane",
            Domain::QuarterPlane => "quarterplane",
            Domain::Ball2 => "ball2",
        }
    }

    /// Open-domain membership. A point of the wrong dimension is never a member.
    pub fn contains(self, z: &ComplexPoint) -> bool {
        if z.dim() != self.dim() {
            return false;
        }
        match self {
            Domain::Disc => z.norm() < 1.0,
            Domain::Annulus => {
                let r = z.norm();
                1.0 < r && r < 2.0
            }
            Domain::HalfPlane => z.coords()[0].im > 0.0,
            Domain::QuarterPlane => {
                let c = z.coords()[0];
                c.re > 0.0 && c.im > 0.0
            }
            Domain::Ball2 => z.norm_sq() < 1.0,
        }
    }

    /// Euclidean distance from `z` to the topological boundary. Zero exactly on
    /// the boundary; an error outside the closed domain.
    pub fn boundary_distance(self, z: &ComplexPoint) -> Result<f64> {
        if z.dim() != self.dim() {
            return Err(Error::Domain(format!(
                "point of C^{} given for {}",
                z.dim(),
                self.name()
            )));
        }
        let d = match self {
            Domain::Disc => 1.0 - z.norm(),
            Domain::Annulus => {
                let r = z.norm();
                (r - 1.0).min(2.0 - r)
            }
            Domain::HalfPlane => z.coords()[0].im,
            Domain::QuarterPlane => {
                let c = z.coords()[0];
                c.re.min(c.im)
            }
            Domain::Ball2 => 1.0 - z.norm(),
        };
        if d < 0.0 {
            Err(Error::Domain(format!(
                "point outside the closed {}",
                self.name()
            )))
        } else {
            Ok(d)
        }
    }
}

impl std::str::FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "disc" => Ok(Domain::Disc),
            "annulus" => Ok(Domain::Annulus),
            "halfplane" => Ok(Domain::HalfPlane),
            "quarterplane" => Ok(Domain::QuarterPlane),
            "ball2" => Ok(Domain::Ball2),
            other => Err(Error::Format(format!("unknown domain '{other}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::{pt, pt2};
    use approx::assert_abs_diff_eq;

    #[test]
    fn membership_matches_tags() {
        assert!(Domain::Disc.contains(&pt(0.7, -0.3)));
        assert!(!Domain::Disc.contains(&pt(1.0, 0.0)));
        assert!(Domain::Annulus.contains(&pt(1.5, 0.0)));
        assert!(!Domain::Annulus.contains(&pt(0.5, 0.0)));
        assert!(Domain::HalfPlane.contains(&pt(-4.0, 0.1)));
        assert!(!Domain::HalfPlane.contains(&pt(0.0, 0.0)));
        assert!(Domain::QuarterPlane.contains(&pt(2.0, 3.0)));
        assert!(!Domain::QuarterPlane.contains(&pt(-0.1, 1.0)));
        assert!(Domain::Ball2.contains(&pt2(0.5, 0.0, 0.5, 0.5)));
        assert!(!Domain::Ball2.contains(&pt2(1.0, 0.0, 0.1, 0.0)));
        // dimension mismatch is never a member
        assert!(!Domain::Ball2.contains(&pt(0.0, 0.0)));
        assert!(!Domain::Disc.contains(&pt2(0.0, 0.0, 0.0, 0.0)));
    }

    #[test]
    fn boundary_distances() {
        assert_abs_diff_eq!(
            Domain::Disc.boundary_distance(&pt(0.9, 0.0)).unwrap(),
            0.1,
            epsilon = 1e-15
        );
        // quarter plane at delta + i delta has distance exactly delta
        assert_abs_diff_eq!(
            Domain::QuarterPlane
                .boundary_distance(&pt(0.25, 0.25))
                .unwrap(),
            0.25,
            epsilon = 0.0
        );
        assert_abs_diff_eq!(
            Domain::Annulus.boundary_distance(&pt(1.25, 0.0)).unwrap(),
            0.25,
            epsilon = 1e-15
        );
        assert!(Domain::Annulus.boundary_distance(&pt(0.5, 0.0)).is_err());
        assert!(Domain::Disc.boundary_distance(&pt(1.5, 0.0)).is_err());
        // boundary itself is admissible with distance zero
        assert_eq!(
            Domain::HalfPlane.boundary_distance(&pt(3.0, 0.0)).unwrap(),
            0.0
        );
    }

    #[test]
    fn distance_positive_iff_contained() {
        for (dom, inside, boundary) in [
            (Domain::Disc, pt(0.3, 0.2), pt(1.0, 0.0)),
            (Domain::Annulus, pt(1.7, 0.0), pt(2.0, 0.0)),
            (Domain::QuarterPlane, pt(0.4, 2.0), pt(0.0, 1.0)),
        ] {
            assert!(dom.contains(&inside));
            assert!(dom.boundary_distance(&inside).unwrap() > 0.0);
            assert!(!dom.contains(&boundary));
            assert_eq!(dom.boundary_distance(&boundary).unwrap(), 0.0);
        }
    }

    #[test]
    fn distance_decreases_monotonically_along_radial_paths() {
        let mut last = f64::INFINITY;
        for k in 1..12 {
            let delta = 2f64.powi(-k);
            let d = Domain::Disc
                .boundary_distance(&pt(1.0 - delta, 0.0))
                .unwrap();
            assert!(d < last);
            last = d;
        }
        assert!(last < 1e-3);
    }
}
