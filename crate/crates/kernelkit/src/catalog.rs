//! Closed-form kernel evaluators for the model domains, the Poisson-Szegő
//! constructor, the annulus two-term approximation with its error terms, the
//! extremal characterization of the diagonal, and boundary-blowup probes.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::basis::OrthonormalSystem;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::point::{Complex64, ComplexPoint};

/// How close an evaluation may come to a kernel singularity before it is
/// reported as a pole instead of returning an overflowing value.
pub const POLE_GUARD: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    Bergman,
    Szego,
    PoissonSzego,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Series,
    Transported,
}

/// The closed-form kernels in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelId {
    BergmanDisc,
    SzegoDisc,
    PoissonSzegoDisc,
    BergmanHalfplane,
    BergmanQuarterplane,
    BergmanBall2,
    SzegoBall2,
    PoissonSzegoBall2,
}

impl KernelId {
    pub const ALL: [KernelId; 8] = [
        KernelId::BergmanDisc,
        KernelId::SzegoDisc,
        KernelId::PoissonSzegoDisc,
        KernelId::BergmanHalfplane,
        KernelId::BergmanQuarterplane,
        KernelId::BergmanBall2,
        KernelId::SzegoBall2,
        KernelId::PoissonSzegoBall2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KernelId::BergmanDisc => "bergman-disc",
            KernelId::SzegoDisc => "szego-disc",
            KernelId::PoissonSzegoDisc => "poisson-szego-disc",
            KernelId::BergmanHalfplane => "bergman-halfplane",
            KernelId::BergmanQuarterplane => "bergman-quarterplane",
            KernelId::BergmanBall2 => "bergman-ball2",
            KernelId::SzegoBall2 => "szego-ball2",
            KernelId::PoissonSzegoBall2 => "poisson-szego-ball2",
        }
    }

    pub fn kind(self) -> KernelKind {
        match self {
            KernelId::BergmanDisc
            | KernelId::BergmanHalfplane
            | KernelId::BergmanQuarterplane
            | KernelId::BergmanBall2 => KernelKind::Bergman,
            KernelId::SzegoDisc | KernelId::SzegoBall2 => KernelKind::Szego,
            KernelId::PoissonSzegoDisc | KernelId::PoissonSzegoBall2 => KernelKind::PoissonSzego,
        }
    }

    pub fn domain(self) -> Domain {
        match self {
            KernelId::BergmanDisc | KernelId::SzegoDisc | KernelId::PoissonSzegoDisc => {
                Domain::Disc
            }
            KernelId::BergmanHalfplane => Domain::HalfPlane,
            KernelId::BergmanQuarterplane => Domain::QuarterPlane,
            KernelId::BergmanBall2 | KernelId::SzegoBall2 | KernelId::PoissonSzegoBall2 => {
                Domain::Ball2
            }
        }
    }
}

impl std::str::FromStr for KernelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KernelId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown kernel id '{s}'")))
    }
}

type EvalFn = Arc<dyn Fn(&ComplexPoint, &ComplexPoint) -> Result<Complex64> + Send + Sync>;

/// An evaluatable two-point kernel with declared kind, domain, and provenance.
#[derive(Clone)]
pub struct Kernel {
    kind: KernelKind,
    domain: Domain,
    provenance: Provenance,
    eval: EvalFn,
}

impl Kernel {
    pub(crate) fn from_parts(
        kind: KernelKind,
        domain: Domain,
        provenance: Provenance,
        eval: EvalFn,
    ) -> Self {
        Self {
            kind,
            domain,
            provenance,
            eval,
        }
    }

    pub fn closed_form(id: KernelId) -> Self {
        Self {
            kind: id.kind(),
            domain: id.domain(),
            provenance: Provenance::ClosedForm,
            eval: Arc::new(move |z, zeta| eval_closed_form(id, z, zeta)),
        }
    }

    /// Adaptively truncated monomial series for the Bergman kernel of the
    /// annulus 1 < |z| < 2.
    pub fn annulus_series() -> Self {
        Self {
            kind: KernelKind::Bergman,
            domain: Domain::Annulus,
            provenance: Provenance::Series,
            eval: Arc::new(annulus_series_value),
        }
    }

    /// The displayed two-term closed-form approximation of the annulus kernel.
    pub fn annulus_two_term() -> Self {
        Self {
            kind: KernelKind::Bergman,
            domain: Domain::Annulus,
            provenance: Provenance::ClosedForm,
            eval: Arc::new(annulus_kernel_approx),
        }
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn evaluate(&self, z: &ComplexPoint, zeta: &ComplexPoint) -> Result<Complex64> {
        (self.eval)(z, zeta)
    }
}

fn require_inside(domain: Domain, z: &ComplexPoint, what: &str) -> Result<()> {
    if domain.contains(z) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{what} must lie in the open {}",
            domain.name()
        )))
    }
}

fn require_closed_ball(z: &ComplexPoint, dim: usize) -> Result<()> {
    if z.dim() != dim || z.norm() > 1.0 + 1e-12 {
        Err(Error::Domain(
            "second argument must lie in the closed unit ball".into(),
        ))
    } else {
        Ok(())
    }
}

fn require_boundary(z: &ComplexPoint, dim: usize) -> Result<()> {
    if z.dim() != dim || (z.norm() - 1.0).abs() > 1e-9 {
        Err(Error::Domain(
            "second argument must lie on the unit boundary".into(),
        ))
    } else {
        Ok(())
    }
}

fn guard_pole(w: Complex64, what: &str) -> Result<Complex64> {
    if w.norm() < POLE_GUARD {
        Err(Error::Pole(format!("singular {what}")))
    } else {
        Ok(w)
    }
}

fn hermitian_pairing(z: &ComplexPoint, zeta: &ComplexPoint) -> Result<Complex64> {
    Ok(match z.dim() {
        1 => z.as_scalar()? * zeta.as_scalar()?.conj(),
        _ => {
            let (z1, z2) = z.as_pair()?;
            let (t1, t2) = zeta.as_pair()?;
            z1 * t1.conj() + z2 * t2.conj()
        }
    })
}

/// Evaluate one of the catalog's closed forms.
pub fn eval_closed_form(id: KernelId, z: &ComplexPoint, zeta: &ComplexPoint) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    match id {
        KernelId::BergmanDisc => {
            require_inside(Domain::Disc, z, "z")?;
            require_inside(Domain::Disc, zeta, "zeta")?;
            let w = guard_pole(one - hermitian_pairing(z, zeta)?, "1 - z conj(zeta)")?;
            Ok(1.0 / PI * (w * w).inv())
        }
        KernelId::SzegoDisc => {
            require_inside(Domain::Disc, z, "z")?;
            require_closed_ball(zeta, 1)?;
            let w = guard_pole(one - hermitian_pairing(z, zeta)?, "1 - z conj(zeta)")?;
            Ok(1.0 / (2.0 * PI) * w.inv())
        }
        KernelId::PoissonSzegoDisc => {
            require_inside(Domain::Disc, z, "z")?;
            require_boundary(zeta, 1)?;
            let w = guard_pole(one - hermitian_pairing(z, zeta)?, "1 - z conj(zeta)")?;
            let v = 1.0 / (2.0 * PI) * (1.0 - z.norm_sq()) / w.norm_sqr();
            Ok(Complex64::new(v, 0.0))
        }
        KernelId::BergmanHalfplane => {
            require_inside(Domain::HalfPlane, z, "z")?;
            require_inside(Domain::HalfPlane, zeta, "zeta")?;
            let w = guard_pole(zeta.as_scalar()?.conj() - z.as_scalar()?, "conj(zeta) - z")?;
            Ok(-1.0 / PI * (w * w).inv())
        }
        KernelId::BergmanQuarterplane => {
            require_inside(Domain::QuarterPlane, z, "z")?;
            require_inside(Domain::QuarterPlane, zeta, "zeta")?;
            let zz = z.as_scalar()?;
            let tt = zeta.as_scalar()?;
            let w = guard_pole(tt.conj() * tt.conj() - zz * zz, "conj(zeta)^2 - z^2")?;
            Ok(-1.0 / PI * 4.0 * zz * tt.conj() * (w * w).inv())
        }
        KernelId::BergmanBall2 => {
            require_inside(Domain::Ball2, z, "z")?;
            require_inside(Domain::Ball2, zeta, "zeta")?;
            let w = guard_pole(one - hermitian_pairing(z, zeta)?, "1 - <z, zeta>")?;
            Ok(2.0 / (PI * PI) * (w * w * w).inv())
        }
        KernelId::SzegoBall2 => {
            require_inside(Domain::Ball2, z, "z")?;
            require_closed_ball(zeta, 2)?;
            let w = guard_pole(one - hermitian_pairing(z, zeta)?, "1 - <z, zeta>")?;
            Ok(1.0 / (2.0 * PI * PI) * (w * w).inv())
        }
        KernelId::PoissonSzegoBall2 => {
            require_inside(Domain::Ball2, z, "z")?;
            require_boundary(zeta, 2)?;
            let w = guard_pole(one - hermitian_pairing(z, zeta)?, "1 - <z, zeta>")?;
            let d = 1.0 - z.norm_sq();
            let v = 1.0 / (2.0 * PI * PI) * d * d / (w.norm_sqr() * w.norm_sqr());
            Ok(Complex64::new(v, 0.0))
        }
    }
}

/// |S(z, zeta)|^2 / S(z, z) for a Szegő kernel `s`: real and nonnegative.
pub fn poisson_szego_from(s: &Kernel, z: &ComplexPoint, zeta: &ComplexPoint) -> Result<f64> {
    if s.kind() != KernelKind::Szego {
        return Err(Error::Domain(
            "poisson-szego construction needs a szego kernel".into(),
        ));
    }
    let diag = s.evaluate(z, z)?;
    if diag.re <= 0.0 || diag.im.abs() > 1e-12 * diag.re.abs().max(1e-300) {
        return Err(Error::Invariant(format!(
            "szego diagonal S(z,z) = {diag} is not real positive"
        )));
    }
    let off = s.evaluate(z, zeta)?;
    Ok(off.norm_sqr() / diag.re)
}

const ANNULUS_REL_TOL: f64 = 1e-13;
const ANNULUS_TERM_TOL: f64 = 1e-12;
const MAX_TERMS: usize = 5_000_000;

fn annulus_pair(z: &ComplexPoint, zeta: &ComplexPoint) -> Result<Complex64> {
    require_inside(Domain::Annulus, z, "z")?;
    require_inside(Domain::Annulus, zeta, "zeta")?;
    hermitian_pairing(z, zeta)
}

/// Bergman kernel of the annulus as an adaptively truncated monomial series:
/// sum over all j of z^j conj(zeta)^j / ||z^j||^2, both tails truncated by
/// their geometric bounds relative to the accumulated value.
pub fn annulus_series_value(z: &ComplexPoint, zeta: &ComplexPoint) -> Result<Complex64> {
    let lambda = annulus_pair(z, zeta)?;
    let mut total = 1.0 / (2.0 * PI * std::f64::consts::LN_2) * lambda.inv();

    // j >= 0: (j+1)/(pi (4^{j+1} - 1)) lambda^j, written with (lambda/4)^j so
    // nothing overflows for long sums near the outer boundary.
    let q = lambda / 4.0;
    let qn = q.norm();
    let mut pw = Complex64::new(1.0, 0.0);
    let mut j = 0usize;
    loop {
        let quarter_pow = if j < 540 { 0.25f64.powi(j as i32 + 1) } else { 0.0 };
        let t = (j as f64 + 1.0) / PI * 0.25 / (1.0 - quarter_pow) * pw;
        total += t;
        pw *= q;
        j += 1;
        let ratio = qn * (j as f64 + 1.0) / j as f64;
        if j > 8
            && ratio < 1.0
            && t.norm() * ratio / (1.0 - ratio) < ANNULUS_REL_TOL * total.norm().max(1.0)
        {
            break;
        }
        if j > MAX_TERMS {
            return Err(Error::Invariant("annulus series failed to converge".into()));
        }
    }

    // j <= -2, written as j = -m: (1-m)/(pi (4^{1-m} - 1)) lambda^{-m}
    let inv = lambda.inv();
    let invn = inv.norm();
    let mut pw = inv * inv;
    let mut m = 2usize;
    loop {
        let f = 4f64.powi(1 - m as i32);
        let t = (1.0 - m as f64) / (PI * (f - 1.0)) * pw;
        total += t;
        pw *= inv;
        m += 1;
        let ratio = invn * (m as f64 + 1.0) / m as f64;
        if m > 8
            && ratio < 1.0
            && t.norm() * ratio / (1.0 - ratio) < ANNULUS_REL_TOL * total.norm().max(1.0)
        {
            break;
        }
        if m > MAX_TERMS {
            return Err(Error::Invariant("annulus series failed to converge".into()));
        }
    }
    Ok(total)
}

/// The displayed two-term approximation
/// 4/(pi (4 - z conj(zeta))^2) + 1/(pi (1 - z conj(zeta))^2).
pub fn annulus_kernel_approx(z: &ComplexPoint, zeta: &ComplexPoint) -> Result<Complex64> {
    let lambda = annulus_pair(z, zeta)?;
    let one = Complex64::new(1.0, 0.0);
    let four = Complex64::new(4.0, 0.0);
    let wa = guard_pole(four - lambda, "4 - z conj(zeta)")?;
    let wb = guard_pole(one - lambda, "1 - z conj(zeta)")?;
    Ok(4.0 / PI * (wa * wa).inv() + 1.0 / PI * (wb * wb).inv())
}

/// The bounded remainder terms of the annulus decomposition. Together with the
/// two displayed closed forms they reconstitute the full series:
/// series = approx + ii + i2 + iii2.
#[derive(Clone, Copy, Debug)]
pub struct AnnulusErrorTerms {
    /// Middle term z^{-1} conj(zeta)^{-1} / (2 pi ln 2).
    pub ii: Complex64,
    /// Negative-tail remainder after its closed-form part is split off.
    pub i2: Complex64,
    /// Positive-tail remainder after its closed-form part is split off.
    pub iii2: Complex64,
}

pub fn annulus_error_terms(z: &ComplexPoint, zeta: &ComplexPoint) -> Result<AnnulusErrorTerms> {
    let lambda = annulus_pair(z, zeta)?;
    let ii = 1.0 / (2.0 * PI * std::f64::consts::LN_2) * lambda.inv();

    // I2 = sum_{m>=2} (1-m)/pi * 4^{1-m}/(4^{1-m} - 1) * lambda^{-m}
    let inv = lambda.inv();
    let invn = inv.norm();
    let mut i2 = Complex64::new(0.0, 0.0);
    let mut pw = inv * inv;
    let mut m = 2usize;
    loop {
        let f = 4f64.powi(1 - m as i32);
        let t = (1.0 - m as f64) / PI * f / (f - 1.0) * pw;
        i2 += t;
        pw *= inv;
        m += 1;
        let ratio = invn / 4.0 * (m as f64 + 1.0) / m as f64;
        if m > 8 && t.norm() * ratio / (1.0 - ratio) < ANNULUS_TERM_TOL {
            break;
        }
    }

    // III2 = sum_{j>=0} (j+1)/(pi (4^{j+1} - 1) 4^{j+1}) lambda^j, in
    // (lambda/16)^j form.
    let q = lambda / 16.0;
    let qn = q.norm();
    let mut iii2 = Complex64::new(0.0, 0.0);
    let mut pw = Complex64::new(1.0, 0.0);
    let mut j = 0usize;
    loop {
        let quarter_pow = if j < 540 { 0.25f64.powi(j as i32 + 1) } else { 0.0 };
        let t = (j as f64 + 1.0) / PI / 16.0 / (1.0 - quarter_pow) * pw;
        iii2 += t;
        pw *= q;
        j += 1;
        let ratio = qn * (j as f64 + 1.0) / j as f64;
        if j > 8 && t.norm() * ratio / (1.0 - ratio) < ANNULUS_TERM_TOL {
            break;
        }
    }
    Ok(AnnulusErrorTerms { ii, i2, iii2 })
}

/// Truncated extremal value sup |f(z)|^2 over unit-norm f in the span:
/// Sum_j |phi_j(z)|^2, together with the maximizing coefficient vector.
pub fn extremal_value(system: &OrthonormalSystem, z: Complex64) -> (f64, Vec<Complex64>) {
    let values: Vec<Complex64> = (0..system.len()).map(|j| system.eval(j, z)).collect();
    let total: f64 = values.iter().map(Complex64::norm_sqr).sum();
    if total == 0.0 {
        return (0.0, vec![Complex64::new(0.0, 0.0); system.len()]);
    }
    let scale = total.sqrt();
    let coeffs = values.iter().map(|v| v.conj() / scale).collect();
    (total, coeffs)
}

/// Samples |K| along a path into the boundary and the least-squares slope of
/// log |K| against log(1/delta).
#[derive(Clone, Debug)]
pub struct BlowupReport {
    pub deltas: Vec<f64>,
    pub values: Vec<f64>,
    pub fitted_exponent: f64,
    pub fitted_constant: f64,
}

/// deltas for blowup probes: 2^-6 ... 2^-13. (Large deltas bias the fitted
/// slope through the lower-order terms of the kernel; this range keeps the
/// fits inside their stated tolerances while staying far from the pole guard.)
pub fn default_blowup_deltas() -> Vec<f64> {
    (6..=13).map(|k| 2f64.powi(-k)).collect()
}

/// Sample |K(path(delta), path(delta))| over the deltas and fit a log-log
/// line by ordinary least squares.
pub fn blowup_probe(
    kernel: &Kernel,
    path: impl Fn(f64) -> Result<ComplexPoint>,
    deltas: &[f64],
) -> Result<BlowupReport> {
    if deltas.len() < 2 {
        return Err(Error::Invariant("blowup fit needs at least two deltas".into()));
    }
    for w in deltas.windows(2) {
        if !(w[1] > 0.0 && w[1] < w[0]) {
            return Err(Error::Invariant(
                "deltas must be strictly decreasing and positive".into(),
            ));
        }
    }
    let mut values = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let p = path(delta)?;
        if !kernel.domain().contains(&p) {
            return Err(Error::Domain(format!(
                "blowup sample outside domain at delta = {delta}"
            )));
        }
        let v = kernel.evaluate(&p, &p)?.norm();
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Invariant(format!(
                "non-positive kernel magnitude at delta = {delta}"
            )));
        }
        values.push(v);
    }
    let xs: Vec<f64> = deltas.iter().map(|d| (1.0 / d).ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - xbar) * (x - xbar);
        sxy += (x - xbar) * (y - ybar);
    }
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    Ok(BlowupReport {
        deltas: deltas.to_vec(),
        values,
        fitted_exponent: slope,
        fitted_constant: intercept.exp(),
    })
}

/// Canonical approach paths for the blowup probes.
pub mod paths {
    use super::*;

    /// Disc, radial approach: delta maps to 1 - delta.
    pub fn disc_radial(delta: f64) -> Result<ComplexPoint> {
        ComplexPoint::scalar(Complex64::new(1.0 - delta, 0.0))
    }

    /// Half-plane, vertical approach above x0.
    pub fn halfplane_vertical(x0: f64) -> impl Fn(f64) -> Result<ComplexPoint> {
        move |delta| ComplexPoint::scalar(Complex64::new(x0, delta))
    }

    /// Quarter plane, corner approach parametrized by distance to the origin:
    /// z(s) = sqrt(s^2 - s^4) + i s^2 has |z| = s exactly and boundary
    /// distance s^2 exactly (for s < 1/sqrt(2)).
    pub fn quarterplane_corner(s: f64) -> Result<ComplexPoint> {
        if !(0.0 < s && s * s < 0.5) {
            return Err(Error::Domain(
                "corner path needs 0 < s < 2^-1/2".into(),
            ));
        }
        ComplexPoint::scalar(Complex64::new((s * s - s * s * s * s).sqrt(), s * s))
    }

    /// Annulus, radial approach to the outer boundary: 2 - delta.
    pub fn annulus_outer_radial(delta: f64) -> Result<ComplexPoint> {
        ComplexPoint::scalar(Complex64::new(2.0 - delta, 0.0))
    }
}
