//! Named verification checks with pinned tolerances, grouped into the suites
//! behind `verify --suite ...`. Each check reports one measured number against
//! one tolerance; a suite passes iff every check passes.

use std::f64::consts::PI;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::basis::{assemble_series_kernel, disc_bergman_basis, disc_hardy_basis};
use crate::catalog::{
    annulus_error_terms, annulus_kernel_approx, annulus_series_value, blowup_probe,
    default_blowup_deltas, eval_closed_form, extremal_value, paths, poisson_szego_from, Kernel,
    KernelId, KernelKind,
};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::point::{Complex64, ComplexPoint};
use crate::projections::{bergman_project, poisson_szego_extend, szego_project, BoundaryFunction};
use crate::quad::QuadratureRule;
use crate::transport::{pullback_kernel, real_jacobian_det, ConformalMap};

/// One measured quantity against one tolerance.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub note: Option<String>,
}

impl CheckResult {
    fn new(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance,
            pass: measured.is_finite() && measured <= tolerance,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// The one-line report form.
    pub fn line(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{}: measured {:.3e} (tol {:.3e}): {}",
            self.name, self.measured, self.tolerance, verdict
        );
        if let Some(note) = &self.note {
            s.push_str(&format!("  [{note}]"));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Disc,
    Annulus,
    Transport,
    Projections,
    Ball,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Disc => "disc",
            Suite::Annulus => "annulus",
            Suite::Transport => "transport",
            Suite::Projections => "projections",
            Suite::Ball => "ball",
            Suite::All => "all",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "disc" => Ok(Suite::Disc),
            "annulus" => Ok(Suite::Annulus),
            "transport" => Ok(Suite::Transport),
            "projections" => Ok(Suite::Projections),
            "ball" => Ok(Suite::Ball),
            "all" => Ok(Suite::All),
            other => Err(Error::Format(format!("unknown suite '{other}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn overall_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self.checks.iter().map(CheckResult::line).collect();
        out.push(format!(
            "suite {}: {}",
            self.suite,
            if self.overall_pass() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

pub fn run_suite(suite: Suite) -> SuiteReport {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Disc | Suite::All) {
        checks.push(checks::disc_series_n200());
        checks.push(checks::szego_series_n200());
        checks.push(checks::poisson_szego_polar_identity());
        checks.extend(checks::extremal_characterization());
        checks.extend(checks::blowup_disc());
    }
    if matches!(suite, Suite::Annulus | Suite::All) {
        checks.extend(checks::annulus_decomposition());
    }
    if matches!(suite, Suite::Transport | Suite::All) {
        checks.extend(checks::transport_laws());
        checks.extend(checks::blowup_transported());
        checks.push(checks::quarterplane_discrepancy());
    }
    if matches!(suite, Suite::Projections | Suite::All) {
        checks.extend(checks::reproducing_formulas());
        checks.extend(checks::golden_projections());
    }
    if matches!(suite, Suite::Ball | Suite::All) {
        checks.extend(checks::ball_geometry());
        checks.extend(checks::annihilation());
        checks.extend(checks::kernel_family_properties());
    }
    SuiteReport {
        suite: suite.name().to_string(),
        checks,
    }
}

/// The individual checks. Tolerances are fixed here, nowhere else.
pub mod checks {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_in_ball(rng: &mut ChaCha8Rng, max_norm: f64) -> ComplexPoint {
        loop {
            let v: [f64; 4] = [
                rng.gen_range(-max_norm..max_norm),
                rng.gen_range(-max_norm..max_norm),
                rng.gen_range(-max_norm..max_norm),
                rng.gen_range(-max_norm..max_norm),
            ];
            let p = ComplexPoint::pair(c(v[0], v[1]), c(v[2], v[3])).unwrap();
            if p.norm() <= max_norm {
                return p;
            }
        }
    }

    fn random_on_sphere(rng: &mut ChaCha8Rng) -> ComplexPoint {
        let t = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
        ComplexPoint::pair(
            Complex64::from_polar(t.cos(), rng.gen_range(0.0..2.0 * PI)),
            Complex64::from_polar(t.sin(), rng.gen_range(0.0..2.0 * PI)),
        )
        .unwrap()
    }

    /// Criterion 1: the 200-term monomial series against the closed form,
    /// max relative error over a 21 x 21 grid of pairs with |z|, |zeta| <= 0.9.
    pub fn disc_series_n200() -> CheckResult {
        let series =
            assemble_series_kernel(disc_bergman_basis(200).unwrap(), KernelKind::Bergman).unwrap();
        let one = c(1.0, 0.0);
        let mut worst: f64 = 0.0;
        for a in 0..21 {
            for b in 0..21 {
                let z = Complex64::from_polar(0.9 * a as f64 / 20.0, 2.0 * PI * a as f64 / 21.0);
                let t = Complex64::from_polar(0.9 * b as f64 / 20.0, -2.0 * PI * b as f64 / 21.0);
                let lam = z * t.conj();
                let exact = 1.0 / PI * ((one - lam) * (one - lam)).inv();
                let got = series.evaluate(z, t);
                worst = worst.max((got - exact).norm() / exact.norm());
            }
        }
        CheckResult::new("series-vs-closed-form N=200 \u{2264} 1e-12", worst, 1e-12)
    }

    /// Criterion 2: the 200-term boundary series against the closed form for
    /// |z| <= 0.9, |zeta| = 1. The truncation tail of a geometric series with
    /// ratio up to 0.9 is ~0.9^200/(0.1 * 2 pi) ~ 1.1e-9, so this check cannot
    /// meet 1e-12; it is kept at its nominal tolerance and reports honestly.
    pub fn szego_series_n200() -> CheckResult {
        let series =
            assemble_series_kernel(disc_hardy_basis(200).unwrap(), KernelKind::Szego).unwrap();
        let one = c(1.0, 0.0);
        let mut worst: f64 = 0.0;
        for a in 0..21 {
            for b in 0..21 {
                let z = Complex64::from_polar(0.9 * a as f64 / 20.0, 2.0 * PI * a as f64 / 21.0);
                let t = Complex64::from_polar(1.0, 2.0 * PI * b as f64 / 21.0);
                let lam = z * t.conj();
                let exact = 1.0 / (2.0 * PI) * (one - lam).inv();
                worst = worst.max((series.evaluate(z, t) - exact).norm());
            }
        }
        CheckResult::new("szego-series N=200 \u{2264} 1e-12", worst, 1e-12).with_note(
            "expected-fail: the geometric truncation tail at |z conj(zeta)| = 0.9 is \
             0.9^200/(0.1*2pi) = 1.12e-9; 200 terms cannot reach 1e-12 on this range",
        )
    }

    /// Criterion 3: the Poisson-Szegő kernel of the disc against the classical
    /// polar-coordinate kernel, 500 random (r, theta, psi), r <= 0.99,
    /// relative.
    pub fn poisson_szego_polar_identity() -> CheckResult {
        let s = Kernel::closed_form(KernelId::SzegoDisc);
        let mut rng = ChaCha8Rng::seed_from_u64(0x90_1a);
        let mut worst: f64 = 0.0;
        for _ in 0..500 {
            let r = 0.99 * rng.gen_range(0.0..1.0);
            let th = rng.gen_range(0.0..2.0 * PI);
            let ps = rng.gen_range(0.0..2.0 * PI);
            let z = ComplexPoint::scalar(Complex64::from_polar(r, th)).unwrap();
            let zeta = ComplexPoint::scalar(Complex64::from_polar(1.0, ps)).unwrap();
            let constructed = poisson_szego_from(&s, &z, &zeta).unwrap();
            let closed = eval_closed_form(KernelId::PoissonSzegoDisc, &z, &zeta)
                .unwrap()
                .re;
            let polar = 1.0 / (2.0 * PI) * (1.0 - r * r)
                / (1.0 - Complex64::from_polar(r, th - ps)).norm_sqr();
            worst = worst.max((constructed - closed).abs() / closed);
            worst = worst.max((polar - closed).abs() / closed);
        }
        CheckResult::new(
            "poisson-szego-polar-identity \u{2264} 1e-14 (relative)",
            worst,
            1e-14,
        )
    }

    /// Criterion 12: the truncated extremal value equals the series diagonal
    /// to machine rounding, and random unit-norm competitors never beat it.
    pub fn extremal_characterization() -> Vec<CheckResult> {
        let sys = disc_bergman_basis(200).unwrap();
        let series = assemble_series_kernel(sys.clone(), KernelKind::Bergman).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0xe8_12);
        let mut worst_diag: f64 = 0.0;
        for _ in 0..20 {
            let z = Complex64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..2.0 * PI));
            let (v, _) = extremal_value(&sys, z);
            let diag = series.evaluate(z, z).re;
            worst_diag = worst_diag.max((v - diag).abs() / diag);
        }
        let sys50 = disc_bergman_basis(50).unwrap();
        let z = c(0.4, 0.3);
        let (v, _) = extremal_value(&sys50, z);
        let mut excess: f64 = 0.0;
        for _ in 0..1000 {
            let mut a: Vec<Complex64> = (0..sys50.len())
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm = a.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
            for x in &mut a {
                *x /= norm;
            }
            let f: Complex64 = (0..sys50.len()).map(|j| a[j] * sys50.eval(j, z)).sum();
            excess = excess.max(f.norm_sqr() - v);
        }
        vec![
            CheckResult::new(
                "extremal-equals-kernel-diagonal (machine)",
                worst_diag,
                1e-14,
            ),
            CheckResult::new(
                "extremal-monte-carlo-excess \u{2264} 1e-12",
                excess.max(0.0),
                1e-12,
            ),
        ]
    }

    /// Criterion 8, disc half: radial blowup exponent and constant.
    pub fn blowup_disc() -> Vec<CheckResult> {
        let k = Kernel::closed_form(KernelId::BergmanDisc);
        let report = blowup_probe(&k, paths::disc_radial, &default_blowup_deltas()).unwrap();
        let idx = report
            .deltas
            .iter()
            .position(|d| (*d - 2f64.powi(-10)).abs() < 1e-18)
            .unwrap();
        let constant = report.values[idx] * report.deltas[idx] * report.deltas[idx];
        let target = 1.0 / (4.0 * PI);
        vec![
            CheckResult::new(
                "blowup-disc-exponent 2.00 \u{b1} 0.02",
                (report.fitted_exponent - 2.0).abs(),
                0.02,
            ),
            CheckResult::new(
                "blowup-disc-constant 1/(4pi) \u{b1} 5% at 2^-10",
                (constant - target).abs() / target,
                0.05,
            ),
        ]
    }

    /// Criterion 4: annulus series equals its five-term decomposition; the
    /// two-term approximation is within 1% on the near-boundary diagonal and
    /// within 0.5 absolutely on a global grid.
    pub fn annulus_decomposition() -> Vec<CheckResult> {
        let mut worst_id: f64 = 0.0;
        let mut worst_gap: f64 = 0.0;
        for i in 0..13 {
            let rz = 1.01 + 0.98 * i as f64 / 12.0;
            for j in 0..13 {
                let rt = 1.01 + 0.98 * j as f64 / 12.0;
                for a in 0..7 {
                    let z = ComplexPoint::scalar(Complex64::from_polar(rz, PI * a as f64 / 6.0))
                        .unwrap();
                    let t = ComplexPoint::scalar(Complex64::new(rt, 0.0)).unwrap();
                    let series = annulus_series_value(&z, &t).unwrap();
                    let approx = annulus_kernel_approx(&z, &t).unwrap();
                    let terms = annulus_error_terms(&z, &t).unwrap();
                    let recomposed = approx + terms.ii + terms.i2 + terms.iii2;
                    worst_id = worst_id.max((series - recomposed).norm());
                    worst_gap = worst_gap.max((series - approx).norm());
                }
            }
        }
        let zb = ComplexPoint::scalar(c(1.99, 0.0)).unwrap();
        let series = annulus_series_value(&zb, &zb).unwrap().re;
        let approx = annulus_kernel_approx(&zb, &zb).unwrap().re;
        vec![
            CheckResult::new(
                "annulus-series-vs-decomposition \u{2264} 1e-9",
                worst_id,
                1e-9,
            ),
            CheckResult::new(
                "annulus-two-term-at-1.99-diagonal \u{2264} 1%",
                (series - approx).abs() / series,
                0.01,
            ),
            CheckResult::new("annulus-two-term-global-gap \u{2264} 0.5", worst_gap, 0.5),
        ]
    }

    /// Criterion 7: the transformation law lands on the closed forms, and the
    /// finite-difference real Jacobian matches |det J_C|^2.
    pub fn transport_laws() -> Vec<CheckResult> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x77_01);
        let pulled_u = pullback_kernel(
            &ConformalMap::Cayley,
            &Kernel::closed_form(KernelId::BergmanDisc),
        )
        .unwrap();
        let exact_u = Kernel::closed_form(KernelId::BergmanHalfplane);
        let mut worst_u: f64 = 0.0;
        for _ in 0..200 {
            let z = ComplexPoint::scalar(c(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..3.0)))
                .unwrap();
            let w = ComplexPoint::scalar(c(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..3.0)))
                .unwrap();
            let a = pulled_u.evaluate(&z, &w).unwrap();
            let b = exact_u.evaluate(&z, &w).unwrap();
            worst_u = worst_u.max((a - b).norm() / b.norm());
        }
        let pulled_q = pullback_kernel(
            &ConformalMap::Square,
            &Kernel::closed_form(KernelId::BergmanHalfplane),
        )
        .unwrap();
        let exact_q = Kernel::closed_form(KernelId::BergmanQuarterplane);
        let mut worst_q: f64 = 0.0;
        for _ in 0..200 {
            let z = ComplexPoint::scalar(c(rng.gen_range(0.05..2.5), rng.gen_range(0.05..2.5)))
                .unwrap();
            let w = ComplexPoint::scalar(c(rng.gen_range(0.05..2.5), rng.gen_range(0.05..2.5)))
                .unwrap();
            let a = pulled_q.evaluate(&z, &w).unwrap();
            let b = exact_q.evaluate(&z, &w).unwrap();
            worst_q = worst_q.max((a - b).norm() / b.norm());
        }
        let mut worst_j: f64 = 0.0;
        let mob = ConformalMap::mobius(c(0.4, 0.0)).unwrap();
        for _ in 0..200 {
            let zu =
                ComplexPoint::scalar(c(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..3.0))).unwrap();
            worst_j = worst_j.max(
                real_jacobian_det(&ConformalMap::Cayley, &zu)
                    .unwrap()
                    .relative_defect(),
            );
            let zq = ComplexPoint::scalar(c(rng.gen_range(0.05..2.5), rng.gen_range(0.05..2.5)))
                .unwrap();
            worst_j = worst_j.max(
                real_jacobian_det(&ConformalMap::Square, &zq)
                    .unwrap()
                    .relative_defect(),
            );
            let zd = ComplexPoint::scalar(Complex64::from_polar(
                0.9 * rng.gen_range(0.0f64..1.0).sqrt(),
                rng.gen_range(0.0..2.0 * PI),
            ))
            .unwrap();
            worst_j = worst_j.max(real_jacobian_det(&mob, &zd).unwrap().relative_defect());
        }
        vec![
            CheckResult::new(
                "cayley-pullback-equals-halfplane \u{2264} 1e-12",
                worst_u,
                1e-12,
            ),
            CheckResult::new(
                "square-pullback-equals-quarterplane \u{2264} 1e-12",
                worst_q,
                1e-12,
            ),
            CheckResult::new(
                "real-jacobian-equals-|complex|^2 \u{2264} 1e-6",
                worst_j,
                1e-6,
            ),
        ]
    }

    /// Criterion 8, transported half: half-plane and corner blowup fits.
    pub fn blowup_transported() -> Vec<CheckResult> {
        let ku = Kernel::closed_form(KernelId::BergmanHalfplane);
        let ru = blowup_probe(&ku, paths::halfplane_vertical(0.7), &default_blowup_deltas())
            .unwrap();
        let kq = Kernel::closed_form(KernelId::BergmanQuarterplane);
        let rq = blowup_probe(&kq, paths::quarterplane_corner, &default_blowup_deltas()).unwrap();
        vec![
            CheckResult::new(
                "blowup-halfplane-exponent 2.00 \u{b1} 0.02",
                (ru.fitted_exponent - 2.0).abs(),
                0.02,
            ),
            CheckResult::new(
                "blowup-corner-exponent 4.00 \u{b1} 0.05 (distance to origin)",
                (rq.fitted_exponent - 4.0).abs(),
                0.05,
            ),
        ]
    }

    /// Criterion 13: the quarter-plane diagonal evaluates to 1/(2 pi delta^2).
    pub fn quarterplane_discrepancy() -> CheckResult {
        let delta = 0.25f64;
        let z = ComplexPoint::scalar(c(delta, delta)).unwrap();
        let v = eval_closed_form(KernelId::BergmanQuarterplane, &z, &z).unwrap();
        let target = 1.0 / (2.0 * PI * delta * delta);
        let measured = ((v - c(target, 0.0)).norm()) / target;
        CheckResult::new(
            "quarterplane-diagonal-value 1/(2 pi d^2) \u{2264} 1e-12",
            measured,
            1e-12,
        )
        .with_note(
            "documented discrepancy: direct evaluation of the closed form gives \
             1/(2 pi d^2), real and positive; the sometimes-quoted 2/(pi i d^2) is \
             non-real and contradicts diagonal positivity",
        )
    }

    /// Criterion 5: reproducing formulas by quadrature.
    pub fn reproducing_formulas() -> Vec<CheckResult> {
        let area = QuadratureRule::area(Domain::Disc, 32, 128).unwrap();
        let circle = QuadratureRule::boundary(Domain::Disc, 512).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x50_05);
        let poly = |z: Complex64| z * z * z + 2.0 * z;
        let mut worst_b: f64 = 0.0;
        for _ in 0..10 {
            let z = Complex64::from_polar(rng.gen_range(0.0..0.6), rng.gen_range(0.0..2.0 * PI));
            let r = bergman_project(poly, &ComplexPoint::scalar(z).unwrap(), &area).unwrap();
            worst_b = worst_b.max((r.value - poly(z)).norm());
        }
        fn bpoly(i: usize, z: Complex64) -> Complex64 {
            match i {
                0 => Complex64::new(1.0, 0.0),
                1 => z,
                2 => z * z,
                _ => 2.0 * z * z * z - z,
            }
        }
        let mut worst_s: f64 = 0.0;
        let mut worst_p: f64 = 0.0;
        for i in 0..4 {
            let f = BoundaryFunction::new(format!("boundary polynomial {i}"), move |zeta| {
                bpoly(i, zeta.as_scalar().unwrap())
            });
            for _ in 0..5 {
                let z =
                    Complex64::from_polar(rng.gen_range(0.0..0.8), rng.gen_range(0.0..2.0 * PI));
                let zp = ComplexPoint::scalar(z).unwrap();
                let s = szego_project(&f, &zp, &circle).unwrap();
                worst_s = worst_s.max((s.value - bpoly(i, z)).norm());
                let e = poisson_szego_extend(&f, &zp, &circle).unwrap();
                worst_p = worst_p.max((e.value - bpoly(i, z)).norm());
            }
        }
        vec![
            CheckResult::new(
                "bergman-reproduces-cubic \u{2264} 1e-8 (32x128)",
                worst_b,
                1e-8,
            ),
            CheckResult::new(
                "szego-reproduces-boundary-polynomials \u{2264} 1e-10 (512)",
                worst_s,
                1e-10,
            ),
            CheckResult::new(
                "poisson-szego-reproduces-boundary-polynomials \u{2264} 1e-10 (512)",
                worst_p,
                1e-10,
            ),
        ]
    }

    /// Criterion 6: the golden projection triple.
    pub fn golden_projections() -> Vec<CheckResult> {
        let circle = QuadratureRule::boundary(Domain::Disc, 512).unwrap();
        let conj = BoundaryFunction::new("conj(z)", |z| z.as_scalar().unwrap().conj());
        let one = BoundaryFunction::new("1", |_| c(1.0, 0.0));
        let ident = BoundaryFunction::new("z", |z| z.as_scalar().unwrap());
        let z1 = ComplexPoint::scalar(c(0.3, 0.1)).unwrap();
        let z2 = ComplexPoint::scalar(c(0.5, 0.0)).unwrap();
        let z3 = ComplexPoint::scalar(c(0.2, -0.4)).unwrap();
        let v1 = szego_project(&conj, &z1, &circle).unwrap().value.norm();
        let v2 = (szego_project(&one, &z2, &circle).unwrap().value - c(1.0, 0.0)).norm();
        let v3 = (szego_project(&ident, &z3, &circle).unwrap().value - c(0.2, -0.4)).norm();
        vec![
            CheckResult::new("golden-projection conj(z) -> 0 \u{2264} 1e-10", v1, 1e-10),
            CheckResult::new("golden-projection 1 -> 1 \u{2264} 1e-10", v2, 1e-10),
            CheckResult::new("golden-projection z -> z \u{2264} 1e-10", v3, 1e-10),
        ]
    }

    /// Criterion 9: ball metric identities.
    pub fn ball_geometry() -> Vec<CheckResult> {
        use crate::ballgeom::*;
        // g(0) = 3I exactly
        let g0 = bergman_metric(&ComplexPoint::pair(c(0.0, 0.0), c(0.0, 0.0)).unwrap()).unwrap();
        let mut dev0: f64 = 0.0;
        for j in 0..2 {
            for k in 0..2 {
                let target = if j == k { c(3.0, 0.0) } else { c(0.0, 0.0) };
                dev0 = dev0.max((g0.entries[j][k] - target).norm());
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xba_11);
        let mut worst_det: f64 = 0.0;
        let mut worst_inv: f64 = 0.0;
        for _ in 0..100 {
            let z = random_in_ball(&mut rng, 0.8);
            let g = bergman_metric(&z).unwrap();
            let (gi, det) = inverse_metric(&z).unwrap();
            let s = z.norm_sq();
            let target = 9.0 / ((1.0 - s) * (1.0 - s) * (1.0 - s));
            worst_det = worst_det.max((det - target).abs() / target);
            worst_det = worst_det.max((g.det() - target).abs() / target);
            for j in 0..2 {
                for k in 0..2 {
                    let mut sum = c(0.0, 0.0);
                    for m in 0..2 {
                        sum += g.entries[j][m] * gi.entries[m][k];
                    }
                    let t = if j == k { 1.0 } else { 0.0 };
                    worst_inv = worst_inv.max((sum - t).norm());
                }
            }
        }
        // divergence grid: the worked points plus radii to 0.8
        let mut worst_div: f64 = 0.0;
        let div_points = [
            ComplexPoint::pair(c(0.0, 0.0), c(0.0, 0.0)).unwrap(),
            ComplexPoint::pair(c(0.4, 0.0), c(0.0, 0.3)).unwrap(),
            ComplexPoint::pair(c(0.7, 0.0), c(0.0, 0.0)).unwrap(),
            ComplexPoint::pair(c(0.5, 0.3), c(0.2, -0.4)).unwrap(),
            ComplexPoint::pair(c(0.56, -0.56), c(0.0, 0.2)).unwrap(),
            ComplexPoint::pair(c(0.0, 0.0), c(0.8, 0.0)).unwrap(),
        ];
        for z in &div_points {
            worst_div = worst_div.max(divergence_residual(z).unwrap());
        }
        // FD metric agreement on radii <= 0.5 plus the worked point
        let mut worst_fd = bergman_metric_fd_deviation(
            &ComplexPoint::pair(c(0.3, 0.1), c(0.2, 0.0)).unwrap(),
            1e-3,
        )
        .unwrap();
        for _ in 0..20 {
            let z = random_in_ball(&mut rng, 0.5);
            worst_fd = worst_fd.max(bergman_metric_fd_deviation(&z, 1e-3).unwrap());
        }
        vec![
            CheckResult::new("metric-at-origin-equals-3I (exact)", dev0, 0.0),
            CheckResult::new(
                "metric-determinant 9/(1-|z|^2)^3 \u{2264} 1e-12",
                worst_det,
                1e-12,
            ),
            CheckResult::new("metric-times-inverse-is-identity \u{2264} 1e-12", worst_inv, 1e-12),
            CheckResult::new("divergence-residual \u{2264} 1e-5", worst_div, 1e-5),
            CheckResult::new("metric-fd-agreement \u{2264} 1e-5 (h=1e-3)", worst_fd, 1e-5),
        ]
    }

    /// Criterion 10: the invariant Laplacian annihilates the Poisson-Szegő
    /// kernel, with the finite-difference residual scaling as O(h^2).
    pub fn annihilation() -> Vec<CheckResult> {
        use crate::ballgeom::annihilation_check;
        let mut rng = ChaCha8Rng::seed_from_u64(0xa2_10);
        let mut worst: f64 = 0.0;
        let mut sum_h = 0.0;
        let mut sum_h2 = 0.0;
        for _ in 0..50 {
            let z = random_in_ball(&mut rng, 0.6);
            let zeta = random_on_sphere(&mut rng);
            let r1 = annihilation_check(&zeta, &z, 1e-3).unwrap();
            let r2 = annihilation_check(&zeta, &z, 5e-4).unwrap();
            worst = worst.max(r1);
            sum_h += r1;
            sum_h2 += r2;
        }
        let ratio = sum_h / sum_h2;
        vec![
            CheckResult::new("LP-annihilation rel \u{2264} 1e-3", worst, 1e-3),
            CheckResult::new(
                "LP-annihilation-h-scaling ratio in [3.5, 4.5]",
                (ratio - 4.0).abs(),
                0.5,
            )
            .with_note(format!("aggregate residual ratio {ratio:.4}")),
        ]
    }

    /// Criterion 11: normalization, positivity, and off-diagonal decay of the
    /// Poisson-Szegő kernel family on the sphere.
    pub fn kernel_family_properties() -> Vec<CheckResult> {
        let rule48 = QuadratureRule::boundary(Domain::Ball2, 48).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0xfa_11);
        let mut worst_norm: f64 = 0.0;
        for _ in 0..20 {
            let z = random_in_ball(&mut rng, 0.7);
            let total = rule48
                .integrate(|zeta| {
                    eval_closed_form(KernelId::PoissonSzegoBall2, &z, zeta)
                        .unwrap_or(c(f64::NAN, 0.0))
                })
                .unwrap();
            worst_norm = worst_norm.max((total.re - 1.0).abs());
        }
        // positivity at 500 random pairs
        let mut nonpositive = 0usize;
        for _ in 0..500 {
            let z = random_in_ball(&mut rng, 0.95);
            let zeta = random_on_sphere(&mut rng);
            let p = eval_closed_form(KernelId::PoissonSzegoBall2, &z, &zeta)
                .unwrap()
                .re;
            if p <= 0.0 || p.is_nan() {
                nonpositive += 1;
            }
        }
        // off-diagonal sup along |z| = 1 - 2^-k over nodes with ||z - zeta|| >= 0.5.
        // The sup rises until k = 3 (the numerator (1-|z|^2)^2 still wins) and
        // decays strictly afterwards; monotone decay is asserted from k = 3 on.
        let rule32 = QuadratureRule::boundary(Domain::Ball2, 32).unwrap();
        let mut sups = Vec::new();
        for k in 1..=10 {
            let r = 1.0 - 2f64.powi(-k);
            let z = ComplexPoint::pair(c(r, 0.0), c(0.0, 0.0)).unwrap();
            let mut sup: f64 = 0.0;
            for zeta in rule32.nodes() {
                let (t1, t2) = zeta.as_pair().unwrap();
                let dist2 = (c(r, 0.0) - t1).norm_sqr() + t2.norm_sqr();
                if dist2 >= 0.25 {
                    sup = sup.max(
                        eval_closed_form(KernelId::PoissonSzegoBall2, &z, zeta)
                            .unwrap()
                            .re,
                    );
                }
            }
            sups.push(sup);
        }
        let mut worst_rise: f64 = 0.0;
        for w in sups[2..].windows(2) {
            worst_rise = worst_rise.max(w[1] - w[0]);
        }
        vec![
            CheckResult::new(
                "poisson-szego-normalization \u{2264} 1e-6 (n=48, |z| \u{2264} 0.7)",
                worst_norm,
                1e-6,
            ),
            CheckResult::new(
                "poisson-szego-positivity (500 samples)",
                nonpositive as f64,
                0.0,
            ),
            CheckResult::new(
                "poisson-szego-offdiagonal-decay monotone from k=3",
                worst_rise.max(0.0),
                0.0,
            )
            .with_note(format!(
                "sups at k=1..3 rise ({:.3e}, {:.3e}, {:.3e}) before the decay sets in",
                sups[0], sups[1], sups[2]
            )),
            CheckResult::new(
                "poisson-szego-offdiagonal-sup at k=10 \u{2264} 1e-3",
                sups[9],
                1e-3,
            ),
        ]
    }
}
