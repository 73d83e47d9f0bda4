//! Automorphisms of the unit disc.
//!
//! Every automorphism is stored as `v(z) = eta * B_alpha(z)` with the factor
//! convention `B_alpha(z) = (z - alpha) / (conj(alpha) z - 1)`. Note the sign of
//! the denominator: the identity map is `(eta, alpha) = (-1, 0)`, and the
//! textbook form `u (z - alpha) / (1 - conj(alpha) z)` corresponds to `eta = -u`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this modulus a Möbius denominator is treated as zero.
pub const DENOMINATOR_EPS: f64 = 1e-14;

/// Probe points used to check identities between automorphisms.
pub fn probe_points() -> [Complex64; 7] {
    [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(-0.5, 0.0),
        Complex64::new(0.0, 0.5),
        Complex64::new(0.0, -0.5),
        Complex64::new(0.3, 0.4),
        Complex64::new(1.0, 0.0),
    ]
}

/// `B_alpha(z) = (z - alpha) / (conj(alpha) z - 1)`.
pub fn blaschke_factor(alpha: Complex64, z: Complex64) -> Result<Complex64> {
    let den = alpha.conj() * z - 1.0;
    if den.norm() < DENOMINATOR_EPS {
        return Err(Error::DegenerateDenominator(den.norm()));
    }
    Ok((z - alpha) / den)
}

/// Tolerances used when validating disc automorphism inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscTolerance {
    /// Allowed deviation of `|z|` from one for points claimed to lie on the circle.
    pub unimodular: f64,
    /// Two points closer than this are considered equal.
    pub coincident: f64,
}

impl Default for DiscTolerance {
    fn default() -> Self {
        DiscTolerance {
            unimodular: 1e-9,
            coincident: 1e-12,
        }
    }
}

/// `v(z) = eta * B_alpha(z)` with `|eta| = 1` and `|alpha| < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDisc")]
pub struct DiscAutomorphism {
    eta: Complex64,
    alpha: Complex64,
}

#[derive(Deserialize)]
struct RawDisc {
    eta: Complex64,
    alpha: Complex64,
}

impl TryFrom<RawDisc> for DiscAutomorphism {
    type Error = Error;

    fn try_from(raw: RawDisc) -> Result<Self> {
        DiscAutomorphism::new(raw.eta, raw.alpha)
    }
}

impl DiscAutomorphism {
    /// Validates `|eta| = 1` (within 1e-9, then renormalized) and `|alpha| < 1`.
    pub fn new(eta: Complex64, alpha: Complex64) -> Result<Self> {
        if !eta.is_finite() || !alpha.is_finite() {
            return Err(Error::InvalidInput(
                "non-finite automorphism parameter".into(),
            ));
        }
        if (eta.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "eta must be unimodular, |eta| = {}",
                eta.norm()
            )));
        }
        if alpha.norm() >= 1.0 {
            return Err(Error::InvalidInput(format!(
                "alpha must lie in the open disc, |alpha| = {}",
                alpha.norm()
            )));
        }
        Ok(DiscAutomorphism {
            eta: eta / eta.norm(),
            alpha,
        })
    }

    pub fn identity() -> Self {
        DiscAutomorphism {
            eta: Complex64::new(-1.0, 0.0),
            alpha: Complex64::new(0.0, 0.0),
        }
    }

    /// The rotation `z -> w z` for unimodular `w`.
    pub fn rotation(w: Complex64) -> Result<Self> {
        DiscAutomorphism::new(-w, Complex64::new(0.0, 0.0))
    }

    pub fn eta(&self) -> Complex64 {
        self.eta
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// Evaluates `eta * B_alpha(z)`; the denominator cannot vanish for `|z| <= 1`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.eta * (z - self.alpha) / (self.alpha.conj() * z - 1.0)
    }

    /// Derivative `eta (|alpha|^2 - 1) / (conj(alpha) z - 1)^2`.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let den = self.alpha.conj() * z - 1.0;
        self.eta * (self.alpha.norm_sqr() - 1.0) / (den * den)
    }

    /// Closed form inverse: `(eta * B_alpha)^{-1} = conj(eta) * B_{eta alpha}`.
    pub fn inverse(&self) -> Self {
        DiscAutomorphism {
            eta: self.eta.conj(),
            alpha: self.eta * self.alpha,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiscAutomorphism) -> Self {
        Mobius::from(*self)
            .compose(&Mobius::from(*other))
            .to_disc_automorphism()
            .expect("composition of disc automorphisms is a disc automorphism")
    }

    /// `z -> conj(v^{-1}(conj z))`, which is again `eta * B_{conj(eta) conj(alpha)}`.
    pub fn reflected_inverse(&self) -> Self {
        DiscAutomorphism {
            eta: self.eta,
            alpha: self.eta.conj() * self.alpha.conj(),
        }
    }

    /// Largest deviation between `self` and `other` on the probe set.
    pub fn probe_distance(&self, other: &DiscAutomorphism) -> f64 {
        probe_points()
            .iter()
            .map(|&z| (self.eval(z) - other.eval(z)).norm())
            .fold(0.0, f64::max)
    }
}

pub fn aut_eval(v: &DiscAutomorphism, z: Complex64) -> Complex64 {
    v.eval(z)
}

pub fn aut_compose(v: &DiscAutomorphism, w: &DiscAutomorphism) -> DiscAutomorphism {
    v.compose(w)
}

pub fn aut_inverse(v: &DiscAutomorphism) -> DiscAutomorphism {
    v.inverse()
}

/// Linear fractional map `(a z + b) / (c z + d)` kept as its coefficient matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Mobius {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl From<DiscAutomorphism> for Mobius {
    fn from(v: DiscAutomorphism) -> Self {
        Mobius {
            a: v.eta,
            b: -v.eta * v.alpha,
            c: v.alpha.conj(),
            d: Complex64::new(-1.0, 0.0),
        }
    }
}

impl Mobius {
    /// The map sending `z1 -> 0`, `z2 -> 1`, `z3 -> infinity`.
    fn through_points(z1: Complex64, z2: Complex64, z3: Complex64) -> Self {
        Mobius {
            a: z2 - z3,
            b: -z1 * (z2 - z3),
            c: z2 - z1,
            d: -z3 * (z2 - z1),
        }
        .rescaled()
    }

    fn rescaled(self) -> Self {
        let m = self
            .a
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max(self.d.norm());
        Mobius {
            a: self.a / m,
            b: self.b / m,
            c: self.c / m,
            d: self.d / m,
        }
    }

    fn compose(&self, rhs: &Mobius) -> Mobius {
        Mobius {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
        .rescaled()
    }

    fn inverse(&self) -> Mobius {
        Mobius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// Reads off `(eta, alpha)`: alpha is the zero of the map, and for
    /// `lambda [[eta, -eta alpha], [conj alpha, -1]]` we have `eta = -a / d`.
    fn to_disc_automorphism(self) -> Result<DiscAutomorphism> {
        if self.a.norm() < DENOMINATOR_EPS || self.d.norm() < DENOMINATOR_EPS {
            return Err(Error::InternalInconsistency(
                "Möbius map does not preserve the disc".into(),
            ));
        }
        let alpha = -self.b / self.a;
        let eta = -self.a / self.d;
        if alpha.norm() >= 1.0 {
            return Err(Error::InternalInconsistency(format!(
                "Möbius map zero outside the disc, |alpha| = {}",
                alpha.norm()
            )));
        }
        Ok(DiscAutomorphism {
            eta: eta / eta.norm(),
            alpha,
        })
    }
}

/// A disc automorphism with `v(sources.k) = targets.k` for two distinct
/// boundary sources and two distinct boundary targets.
///
/// The Möbius map through `(s1, s2, m_s) -> (t1, t2, m_t)` is used, with `m_s`,
/// `m_t` square roots of `s1 s2` and `t1 t2` (arc midpoints). The sign of `m_t`
/// is chosen so that the map sends 0 into the open disc.
pub fn two_point_boundary_aut(
    sources: (Complex64, Complex64),
    targets: (Complex64, Complex64),
) -> Result<DiscAutomorphism> {
    two_point_boundary_aut_with_tol(sources, targets, &DiscTolerance::default())
}

pub fn two_point_boundary_aut_with_tol(
    sources: (Complex64, Complex64),
    targets: (Complex64, Complex64),
    tol: &DiscTolerance,
) -> Result<DiscAutomorphism> {
    for z in [sources.0, sources.1, targets.0, targets.1] {
        if (z.norm() - 1.0).abs() > tol.unimodular {
            return Err(Error::InvalidInput(format!(
                "boundary interpolation point {z} is not unimodular"
            )));
        }
    }
    if (sources.0 - sources.1).norm() < tol.coincident {
        return Err(Error::CoincidentPoints("source points coincide".into()));
    }
    if (targets.0 - targets.1).norm() < tol.coincident {
        return Err(Error::CoincidentPoints("target points coincide".into()));
    }
    let unit = |z: Complex64| z / z.norm();
    let (s1, s2) = (unit(sources.0), unit(sources.1));
    let (t1, t2) = (unit(targets.0), unit(targets.1));

    let ms = (s1 * s2).sqrt();
    let mt = (t1 * t2).sqrt();
    let from = Mobius::through_points(s1, s2, ms);

    let mut best: Option<(f64, Mobius)> = None;
    for m in [mt, -mt] {
        let map = Mobius::through_points(t1, t2, m).inverse().compose(&from);
        let image_of_zero = map.eval(Complex64::new(0.0, 0.0)).norm();
        if image_of_zero < 1.0 {
            return map.to_disc_automorphism();
        }
        if best.is_none_or(|(r, _)| image_of_zero < r) {
            best = Some((image_of_zero, map));
        }
    }
    Err(Error::InternalInconsistency(format!(
        "no orientation of the boundary triple maps the disc to itself (|v(0)| = {})",
        best.map(|(r, _)| r).unwrap_or(f64::NAN)
    )))
}
