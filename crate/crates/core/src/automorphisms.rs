//! Automorphism group actions on the symmetrized bidisc, the tetrablock and the
//! pentablock, and the proper maps `tau_B` of the symmetrized polydisc.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::blaschke::BlaschkeProduct;
use crate::disc::DiscAutomorphism;
use crate::domains::{
    b_penta_defect, b_tetra_defect, symmetrize, unsymmetrize, DomainPoint, Gamma2Point,
    GammaNPoint, PentaPoint, TetraPoint,
};
use crate::error::{Error, Result};
use crate::mu::{in_penta, in_tetra, Membership};

/// Roots may exceed the unit circle by this much before a point counts as
/// outside the closed symmetrized polydisc.
pub const ROOT_DOMAIN_SLACK: f64 = 1e-7;

/// Points within this distance of the distinguished boundary skip the μ check.
const BOUNDARY_SHORTCUT: f64 = 1e-7;

/// Resolution and band used when the μ oracle validates an input point.
const DOMAIN_CHECK_RESOLUTION: f64 = 1e-4;
const DOMAIN_CHECK_BAND: f64 = 1e-6;

const TETRA_DENOMINATOR_EPS: f64 = 1e-13;
const PENTA_DENOMINATOR_EPS: f64 = 1e-13;

fn check_gamma_roots(roots: &[Complex64]) -> Result<()> {
    let worst = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if worst > 1.0 + ROOT_DOMAIN_SLACK {
        return Err(Error::OutsideDomain(format!(
            "root of modulus {worst} outside the closed disc"
        )));
    }
    Ok(())
}

/// `tau_v(s, p)` written out in `(s, p)`:
/// `(eta (2 conj(alpha) p - (1 + |alpha|^2) s + 2 alpha) / D, eta^2 (p - alpha s + alpha^2) / D)`
/// with `D = 1 - conj(alpha) s + conj(alpha)^2 p = (1 - conj(alpha) z1)(1 - conj(alpha) z2)`.
pub fn tau_closed_form(v: &DiscAutomorphism, g: &Gamma2Point) -> Gamma2Point {
    let (eta, alpha) = (v.eta(), v.alpha());
    let ac = alpha.conj();
    let den = 1.0 - ac * g.s + ac * ac * g.p;
    let s = eta * (2.0 * ac * g.p - (1.0 + alpha.norm_sqr()) * g.s + 2.0 * alpha) / den;
    let p = eta * eta * (g.p - alpha * g.s + alpha * alpha) / den;
    Gamma2Point::new(s, p)
}

/// `tau_v(z1 + z2, z1 z2) = (v(z1) + v(z2), v(z1) v(z2))`.
///
/// The roots are only used to check that the input lies in the closed
/// symmetrized bidisc; the image is evaluated in closed form, which is the same
/// symmetric function of the roots without the root-finding error at double roots.
pub fn tau_apply(v: &DiscAutomorphism, g: &Gamma2Point) -> Result<Gamma2Point> {
    check_gamma_roots(&g.roots())?;
    Ok(tau_closed_form(v, g))
}

/// `tau_B(pi_n(z)) = pi_n(B(z_1), ..., B(z_n))`.
pub fn tau_blaschke_apply(b: &BlaschkeProduct, c: &GammaNPoint) -> Result<GammaNPoint> {
    let roots = unsymmetrize(c)?;
    check_gamma_roots(&roots)?;
    let images: Vec<_> = roots.iter().map(|&z| b.eval(z)).collect();
    symmetrize(&images)
}

/// Parameters of a tetrablock automorphism: `v = -xi1 B_{z1}`,
/// `chi = -xi2 B_{-conj(z2)}`, acting as `T_{v,chi}` or `T_{v,chi} ∘ F` where
/// `F(x1, x2, x3) = (x2, x1, x3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTetra")]
pub struct TetraAutParams {
    pub xi1: Complex64,
    pub z1: Complex64,
    pub xi2: Complex64,
    pub z2: Complex64,
    #[serde(default)]
    pub flip: bool,
}

#[derive(Deserialize)]
struct RawTetra {
    xi1: Complex64,
    z1: Complex64,
    xi2: Complex64,
    z2: Complex64,
    #[serde(default)]
    flip: bool,
}

impl TryFrom<RawTetra> for TetraAutParams {
    type Error = Error;

    fn try_from(r: RawTetra) -> Result<Self> {
        TetraAutParams::new(r.xi1, r.z1, r.xi2, r.z2, r.flip)
    }
}

fn unimodular(name: &str, w: Complex64) -> Result<Complex64> {
    if !w.is_finite() || (w.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!(
            "{name} must be unimodular, got {w}"
        )));
    }
    Ok(w / w.norm())
}

fn in_open_disc(name: &str, z: Complex64) -> Result<Complex64> {
    if !z.is_finite() || z.norm() >= 1.0 {
        return Err(Error::InvalidInput(format!(
            "{name} must lie in the open disc, got {z}"
        )));
    }
    Ok(z)
}

impl TetraAutParams {
    pub fn new(
        xi1: Complex64,
        z1: Complex64,
        xi2: Complex64,
        z2: Complex64,
        flip: bool,
    ) -> Result<Self> {
        Ok(TetraAutParams {
            xi1: unimodular("xi1", xi1)?,
            z1: in_open_disc("z1", z1)?,
            xi2: unimodular("xi2", xi2)?,
            z2: in_open_disc("z2", z2)?,
            flip,
        })
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        TetraAutParams {
            xi1: one,
            z1: zero,
            xi2: one,
            z2: zero,
            flip: false,
        }
    }

    /// `v = -xi1 B_{z1}`.
    pub fn v(&self) -> DiscAutomorphism {
        DiscAutomorphism::new(-self.xi1, self.z1).expect("validated parameters")
    }

    /// `chi = -xi2 B_{-conj(z2)}`.
    pub fn chi(&self) -> DiscAutomorphism {
        DiscAutomorphism::new(-self.xi2, -self.z2.conj()).expect("validated parameters")
    }

    pub fn from_pair(v: &DiscAutomorphism, chi: &DiscAutomorphism, flip: bool) -> Self {
        TetraAutParams {
            xi1: -v.eta(),
            z1: v.alpha(),
            xi2: -chi.eta(),
            z2: -chi.alpha().conj(),
            flip,
        }
    }

    /// `T_{v,chi}` from the displayed rational formulas, after the flip when set.
    pub fn apply_unchecked(&self, x: &TetraPoint) -> Result<TetraPoint> {
        let x = if self.flip { tetra_flip(x) } else { *x };
        let (xi1, z1, xi2, z2) = (self.xi1, self.z1, self.xi2, self.z2);
        let (x1, x2, x3) = (x.x1, x.x2, x.x3);
        let z1c = z1.conj();
        let z2c = z2.conj();
        let den = (1.0 - z1c * x1) - xi2 * z2c * (x2 - z1c * x3);
        if den.norm() < TETRA_DENOMINATOR_EPS {
            return Err(Error::DegenerateDenominator(den.norm()));
        }
        let t1 = xi1 * ((x1 - z1) + xi2 * z2c * (z1 * x2 - x3)) / den;
        let t2 = (z2 * (z1c * x1 - 1.0) + xi2 * (x2 - z1c * x3)) / den;
        let t3 = xi1 * (z2 * (z1 - x1) - xi2 * (z1 * x2 - x3)) / den;
        Ok(TetraPoint::new(t1, t2, t3))
    }

    /// `self ∘ other`, using `T_{v,chi} ∘ T_{v',chi'} = T_{v∘v', chi'∘chi}` and
    /// `F ∘ T_{v,chi} ∘ F = T_{rho(chi), rho(v)}` with `rho(u) = conj ∘ u^{-1} ∘ conj`.
    pub fn compose(&self, other: &TetraAutParams) -> Self {
        let (v2, chi2) = if self.flip {
            (
                other.chi().reflected_inverse(),
                other.v().reflected_inverse(),
            )
        } else {
            (other.v(), other.chi())
        };
        let v = self.v().compose(&v2);
        let chi = chi2.compose(&self.chi());
        TetraAutParams::from_pair(&v, &chi, self.flip ^ other.flip)
    }

    /// `T^{-1} = T_{v^{-1}, chi^{-1}}`; `(T ∘ F)^{-1} = F ∘ T^{-1} = (F T^{-1} F) ∘ F`.
    pub fn inverse(&self) -> Self {
        let (v, chi) = (self.v().inverse(), self.chi().inverse());
        if self.flip {
            TetraAutParams::from_pair(&chi.reflected_inverse(), &v.reflected_inverse(), true)
        } else {
            TetraAutParams::from_pair(&v, &chi, false)
        }
    }
}

/// Checks `x` against the closed tetrablock: boundary points pass directly,
/// anything else must not be certified outside by the μ oracle.
fn check_tetra_domain(x: &TetraPoint) -> Result<()> {
    if b_tetra_defect(x) <= BOUNDARY_SHORTCUT {
        return Ok(());
    }
    match in_tetra(x, DOMAIN_CHECK_BAND, DOMAIN_CHECK_RESOLUTION) {
        Membership::Outside => Err(Error::OutsideDomain(
            "tetrablock point certified outside by the μ oracle".into(),
        )),
        _ => Ok(()),
    }
}

fn check_penta_domain(q: &PentaPoint) -> Result<()> {
    if b_penta_defect(q) <= BOUNDARY_SHORTCUT {
        return Ok(());
    }
    match in_penta(q, DOMAIN_CHECK_BAND, DOMAIN_CHECK_RESOLUTION) {
        Membership::Outside => Err(Error::OutsideDomain(
            "pentablock point certified outside by the μ oracle".into(),
        )),
        _ => Ok(()),
    }
}

pub fn tetra_apply(t: &TetraAutParams, x: &TetraPoint) -> Result<TetraPoint> {
    check_tetra_domain(x)?;
    t.apply_unchecked(x)
}

/// `F(x1, x2, x3) = (x2, x1, x3)`.
pub fn tetra_flip(x: &TetraPoint) -> TetraPoint {
    TetraPoint::new(x.x2, x.x1, x.x3)
}

/// The cyclic shift `(x2, x3, x1)`. Not a self-map of the tetrablock; kept only
/// to exhibit a point that it sends outside (see the acceptance tests).
pub fn tetra_flip_cyclic(x: &TetraPoint) -> TetraPoint {
    TetraPoint::new(x.x2, x.x3, x.x1)
}

/// `T_{v,chi}(0, 0, 1)` in closed form:
/// `(-xi1 (z1 + xi2 conj z2) / D, -(conj(z1) xi2 + z2) / D, xi1 (xi2 + z1 z2) / D)`
/// with `D = 1 + xi2 conj(z1) conj(z2)`.
pub fn image_of_non_triangular_base(t: &TetraAutParams) -> TetraPoint {
    let (xi1, z1, xi2, z2) = (t.xi1, t.z1, t.xi2, t.z2);
    let d = 1.0 + xi2 * z1.conj() * z2.conj();
    TetraPoint::new(
        -xi1 * (z1 + xi2 * z2.conj()) / d,
        -(z1.conj() * xi2 + z2) / d,
        xi1 * (xi2 + z1 * z2) / d,
    )
}

/// `T_{v,chi}(1, 1, 1) = (xi1 (1 - z1) / (1 - conj z1), (xi2 - z2) / (1 - xi2 conj z2), product)`.
pub fn image_of_triangular_base(t: &TetraAutParams) -> TetraPoint {
    let (xi1, z1, xi2, z2) = (t.xi1, t.z1, t.xi2, t.z2);
    let first = xi1 * (1.0 - z1) / (1.0 - z1.conj());
    let second = (xi2 - z2) / (1.0 - xi2 * z2.conj());
    TetraPoint::new(first, second, first * second)
}

/// `f_{omega v}(a, s, p) = (omega eta (1 - |alpha|^2) a / (1 - conj(alpha) s + conj(alpha)^2 p), tau_v(s, p))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPenta", into = "RawPenta")]
pub struct PentaAutParams {
    pub omega: Complex64,
    pub v: DiscAutomorphism,
}

#[derive(Serialize, Deserialize)]
struct RawPenta {
    omega: Complex64,
    eta: Complex64,
    alpha: Complex64,
}

impl TryFrom<RawPenta> for PentaAutParams {
    type Error = Error;

    fn try_from(r: RawPenta) -> Result<Self> {
        PentaAutParams::new(r.omega, DiscAutomorphism::new(r.eta, r.alpha)?)
    }
}

impl From<PentaAutParams> for RawPenta {
    fn from(f: PentaAutParams) -> Self {
        RawPenta {
            omega: f.omega,
            eta: f.v.eta(),
            alpha: f.v.alpha(),
        }
    }
}

impl PentaAutParams {
    pub fn new(omega: Complex64, v: DiscAutomorphism) -> Result<Self> {
        Ok(PentaAutParams {
            omega: unimodular("omega", omega)?,
            v,
        })
    }

    pub fn identity() -> Self {
        // v = identity has eta = -1, so omega = -1 makes the scale factor 1.
        PentaAutParams {
            omega: Complex64::new(-1.0, 0.0),
            v: DiscAutomorphism::identity(),
        }
    }

    /// Multiplier of `a` at `(s, p)`.
    pub fn a_factor(&self, g: &Gamma2Point) -> Result<Complex64> {
        let (eta, alpha) = (self.v.eta(), self.v.alpha());
        let ac = alpha.conj();
        let den = 1.0 - ac * g.s + ac * ac * g.p;
        if den.norm() < PENTA_DENOMINATOR_EPS {
            return Err(Error::DegenerateDenominator(den.norm()));
        }
        Ok(self.omega * eta * (1.0 - alpha.norm_sqr()) / den)
    }

    pub fn apply_unchecked(&self, q: &PentaPoint) -> Result<PentaPoint> {
        let factor = self.a_factor(&q.gamma2())?;
        let g = tau_closed_form(&self.v, &q.gamma2());
        Ok(PentaPoint::new(factor * q.a, g.s, g.p))
    }

    /// Picks omega so that the multiplier at `(s, p) = (0, 0)` equals `c0`.
    fn with_base_factor(v: DiscAutomorphism, c0: Complex64) -> Self {
        let omega = c0 / (v.eta() * (1.0 - v.alpha().norm_sqr()));
        PentaAutParams {
            omega: omega / omega.norm(),
            v,
        }
    }

    /// `self ∘ other` is `f_{omega'', v∘w}`; omega'' is read off the multiplier
    /// at the origin, which the chain rule makes `c_self(tau_w(0,0)) c_other(0,0)`.
    pub fn compose(&self, other: &PentaAutParams) -> Self {
        let origin = Gamma2Point::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let inner = tau_closed_form(&other.v, &origin);
        let c0 = self.a_factor(&inner).expect("interior point")
            * other.a_factor(&origin).expect("origin");
        PentaAutParams::with_base_factor(self.v.compose(&other.v), c0)
    }

    pub fn inverse(&self) -> Self {
        let vinv = self.v.inverse();
        let origin = Gamma2Point::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let back = tau_closed_form(&vinv, &origin);
        let c0 = 1.0 / self.a_factor(&back).expect("interior point");
        PentaAutParams::with_base_factor(vinv, c0)
    }
}

pub fn penta_apply(f: &PentaAutParams, q: &PentaPoint) -> Result<PentaPoint> {
    check_penta_domain(q)?;
    check_gamma_roots(&q.gamma2().roots())?;
    f.apply_unchecked(q)
}

/// Any automorphism (or proper map, for `blaschke`), as exchanged in JSON:
/// `{"kind": "gamma2" | "tetra" | "penta" | "blaschke", "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "camelCase")]
pub enum AutParams {
    Gamma2(DiscAutomorphism),
    Tetra(TetraAutParams),
    Penta(PentaAutParams),
    Blaschke(BlaschkeProduct),
}

impl AutParams {
    pub fn apply(&self, point: &DomainPoint) -> Result<DomainPoint> {
        match (self, point) {
            (AutParams::Gamma2(v), DomainPoint::Gamma2(g)) => {
                Ok(DomainPoint::Gamma2(tau_apply(v, g)?))
            }
            (AutParams::Tetra(t), DomainPoint::Tetra(x)) => {
                Ok(DomainPoint::Tetra(tetra_apply(t, x)?))
            }
            (AutParams::Penta(f), DomainPoint::Penta(q)) => {
                Ok(DomainPoint::Penta(penta_apply(f, q)?))
            }
            (AutParams::Blaschke(b), DomainPoint::GammaN(c)) => {
                Ok(DomainPoint::GammaN(tau_blaschke_apply(b, c)?))
            }
            (AutParams::Blaschke(b), DomainPoint::Gamma2(g)) => {
                let c = tau_blaschke_apply(b, &GammaNPoint::from(*g))?;
                Ok(DomainPoint::Gamma2(Gamma2Point::new(
                    c.coeffs()[0],
                    c.coeffs()[1],
                )))
            }
            _ => Err(Error::InvalidInput(
                "automorphism kind does not match the point kind".into(),
            )),
        }
    }

    pub fn inverse(&self) -> Result<AutParams> {
        match self {
            AutParams::Gamma2(v) => Ok(AutParams::Gamma2(v.inverse())),
            AutParams::Tetra(t) => Ok(AutParams::Tetra(t.inverse())),
            AutParams::Penta(f) => Ok(AutParams::Penta(f.inverse())),
            AutParams::Blaschke(b) => b
                .as_automorphism()
                .map(|v| AutParams::Blaschke(BlaschkeProduct::from(v.inverse())))
                .ok_or_else(|| {
                    Error::InvalidInput("only degree-one Blaschke products are invertible".into())
                }),
        }
    }

    pub fn compose(&self, other: &AutParams) -> Result<AutParams> {
        match (self, other) {
            (AutParams::Gamma2(v), AutParams::Gamma2(w)) => Ok(AutParams::Gamma2(v.compose(w))),
            (AutParams::Tetra(s), AutParams::Tetra(t)) => Ok(AutParams::Tetra(s.compose(t))),
            (AutParams::Penta(f), AutParams::Penta(g)) => Ok(AutParams::Penta(f.compose(g))),
            (AutParams::Blaschke(b), AutParams::Blaschke(c)) => {
                Ok(AutParams::Blaschke(b.compose(c)?))
            }
            _ => Err(Error::InvalidInput(
                "cannot compose automorphisms of different kinds".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{
        classify_b_penta, classify_b_tetra, royal_gamma2, PentaStratum, TetraStratum, Tolerance,
    };
    use crate::sampling::Sampler;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zero() -> Complex64 {
        c(0.0, 0.0)
    }

    fn one() -> Complex64 {
        c(1.0, 0.0)
    }

    fn tetra_probes() -> Vec<TetraPoint> {
        vec![
            TetraPoint::new(zero(), zero(), zero()),
            TetraPoint::new(zero(), zero(), one()),
            TetraPoint::new(one(), one(), one()),
            TetraPoint::new(c(0.3, 0.0), c(0.0, 0.2), c(0.1, 0.0)),
            TetraPoint::new(c(0.5, 0.0), c(0.5, 0.0), one()),
            TetraPoint::new(c(0.2, 0.1), c(-0.3, 0.0), c(0.0, 0.05)),
        ]
    }

    #[test]
    fn tau_identity_and_canonical_points() {
        let g = Gamma2Point::new(c(0.3, -0.2), c(0.1, 0.05));
        let id = DiscAutomorphism::identity();
        assert!(tau_apply(&id, &g).unwrap().max_distance(&g) < 1e-15);

        let v = DiscAutomorphism::new(Complex64::from_polar(1.0, 0.9), c(0.3, -0.4)).unwrap();
        let royal = tau_apply(&v, &Gamma2Point::new(c(2.0, 0.0), one())).unwrap();
        let w = v.eval(one());
        assert!(royal.max_distance(&Gamma2Point::new(2.0 * w, w * w)) < 1e-14);

        let i = c(0.0, 1.0);
        let base = tau_apply(&v, &Gamma2Point::new(zero(), one())).unwrap();
        let expected = Gamma2Point::from_roots(v.eval(i), v.eval(-i));
        assert!(base.max_distance(&expected) < 1e-14);
    }

    #[test]
    fn tau_rejects_points_outside() {
        let v = DiscAutomorphism::identity();
        assert!(matches!(
            tau_apply(&v, &Gamma2Point::new(c(3.0, 0.0), one())),
            Err(Error::OutsideDomain(_))
        ));
    }

    #[test]
    fn tau_closed_form_matches_root_route() {
        let mut s = Sampler::new(21);
        for _ in 0..500 {
            let v = s.disc_automorphism(0.9);
            let g = s.gamma2_interior();
            let [z1, z2] = g.roots();
            let by_roots = Gamma2Point::from_roots(v.eval(z1), v.eval(z2));
            assert!(tau_closed_form(&v, &g).max_distance(&by_roots) < 1e-10);
        }
    }

    #[test]
    fn tetra_rotation_case() {
        let (xi1, xi2) = (
            Complex64::from_polar(1.0, 0.3),
            Complex64::from_polar(1.0, -1.1),
        );
        let t = TetraAutParams::new(xi1, zero(), xi2, zero(), false).unwrap();
        let x = TetraPoint::new(c(0.3, 0.1), c(-0.2, 0.0), c(0.05, 0.02));
        let y = tetra_apply(&t, &x).unwrap();
        let expected = TetraPoint::new(xi1 * x.x1, xi2 * x.x2, xi1 * xi2 * x.x3);
        assert!(y.max_distance(&expected) < 1e-15);
    }

    #[test]
    fn tetra_base_points_match_closed_forms() {
        let mut s = Sampler::new(4);
        for _ in 0..200 {
            let t = s.tetra_params(0.9, false);
            let a = tetra_apply(&t, &TetraPoint::new(zero(), zero(), one())).unwrap();
            assert!(a.max_distance(&image_of_non_triangular_base(&t)) < 1e-12);
            let b = tetra_apply(&t, &TetraPoint::new(one(), one(), one())).unwrap();
            assert!(b.max_distance(&image_of_triangular_base(&t)) < 1e-12);
        }
    }

    #[test]
    fn conjugated_third_component_needs_real_xi2() {
        // xi1 conj(xi2) (1 + z1 z2 conj(xi2)) / D agrees with the rational map
        // only when xi2^2 = 1; the map itself carries xi1 xi2 (1 + z1 z2 conj(xi2)) / D.
        let conjugated = |t: &TetraAutParams| {
            let d = 1.0 + t.xi2 * t.z1.conj() * t.z2.conj();
            t.xi1 * t.xi2.conj() * (1.0 + t.z1 * t.z2 * t.xi2.conj()) / d
        };
        let base = TetraPoint::new(zero(), zero(), one());
        let real =
            TetraAutParams::new(c(0.0, 1.0), c(0.2, 0.3), -one(), c(-0.4, 0.1), false).unwrap();
        assert!((conjugated(&real) - real.apply_unchecked(&base).unwrap().x3).norm() < 1e-14);
        let complex =
            TetraAutParams::new(c(0.0, 1.0), c(0.2, 0.3), c(0.0, 1.0), c(-0.4, 0.1), false)
                .unwrap();
        assert!((conjugated(&complex) - complex.apply_unchecked(&base).unwrap().x3).norm() > 0.1);
    }

    #[test]
    fn flip_examples() {
        let x = TetraPoint::new(c(0.3, 0.0), c(0.5, 0.0), c(0.15, 0.0));
        assert_eq!(
            tetra_flip(&x),
            TetraPoint::new(c(0.5, 0.0), c(0.3, 0.0), c(0.15, 0.0))
        );
        assert_eq!(tetra_flip(&tetra_flip(&x)), x);
        let mut s = Sampler::new(8);
        for _ in 0..1000 {
            let b = s.b_tetra_non_triangular();
            assert_eq!(
                classify_b_tetra(&tetra_flip(&b), Tolerance::default()).stratum,
                TetraStratum::BoundaryNonTriangular
            );
        }
    }

    #[test]
    fn tetra_composition_and_inverse() {
        let mut s = Sampler::new(17);
        for k in 0..300 {
            let a = s.tetra_params(0.8, k % 2 == 0);
            let b = s.tetra_params(0.8, k % 3 == 0);
            let ab = a.compose(&b);
            let ainv = a.inverse();
            for x in tetra_probes() {
                let direct = a.apply_unchecked(&b.apply_unchecked(&x).unwrap()).unwrap();
                assert!(ab.apply_unchecked(&x).unwrap().max_distance(&direct) < 1e-9);
                let back = ainv
                    .apply_unchecked(&a.apply_unchecked(&x).unwrap())
                    .unwrap();
                assert!(back.max_distance(&x) < 1e-9);
            }
        }
    }

    #[test]
    fn penta_examples() {
        let omega = Complex64::from_polar(1.0, 0.4);
        let eta = Complex64::from_polar(1.0, -0.8);
        let f = PentaAutParams::new(omega, DiscAutomorphism::new(eta, zero()).unwrap()).unwrap();
        let q = PentaPoint::new(c(0.2, 0.1), c(0.3, 0.0), c(0.0, 0.1));
        let y = penta_apply(&f, &q).unwrap();
        let expected = PentaPoint::new(omega * eta * q.a, -eta * q.s, eta * eta * q.p);
        assert!(y.max_distance(&expected) < 1e-15);

        let v = DiscAutomorphism::new(Complex64::from_polar(1.0, 2.0), c(-0.3, 0.5)).unwrap();
        let f = PentaAutParams::new(omega, v).unwrap();
        let royal = penta_apply(&f, &PentaPoint::new(zero(), c(2.0, 0.0), one())).unwrap();
        let g = tau_apply(&v, &Gamma2Point::new(c(2.0, 0.0), one())).unwrap();
        assert!(royal.max_distance(&PentaPoint::new(zero(), g.s, g.p)) < 1e-14);

        let nonroyal = penta_apply(&f, &PentaPoint::new(one(), zero(), one())).unwrap();
        let alpha = v.alpha();
        let a_tilde = v.eta() * (1.0 - alpha.norm_sqr()) / (1.0 + alpha.conj() * alpha.conj());
        let g = tau_apply(&v, &Gamma2Point::new(zero(), one())).unwrap();
        assert!(nonroyal.max_distance(&PentaPoint::new(omega * a_tilde, g.s, g.p)) < 1e-14);
    }

    #[test]
    fn penta_identity_params() {
        let q = PentaPoint::new(c(0.2, 0.1), c(0.3, 0.0), c(0.0, 0.1));
        let y = PentaAutParams::identity().apply_unchecked(&q).unwrap();
        assert!(y.max_distance(&q) < 1e-15);
    }

    #[test]
    fn penta_composition_and_inverse() {
        let mut s = Sampler::new(23);
        let probes = [
            PentaPoint::new(zero(), zero(), zero()),
            PentaPoint::new(one(), zero(), one()),
            PentaPoint::new(zero(), c(2.0, 0.0), one()),
            PentaPoint::new(c(0.2, 0.1), c(0.3, 0.0), c(0.0, 0.1)),
            PentaPoint::new(c(0.0, 0.6), c(0.0, 1.6), c(-1.0, 0.0)),
            PentaPoint::new(c(-0.1, 0.0), c(0.1, 0.2), c(0.05, 0.0)),
        ];
        for _ in 0..300 {
            let f = s.penta_params(0.8);
            let g = s.penta_params(0.8);
            let fg = f.compose(&g);
            let finv = f.inverse();
            for q in &probes {
                let direct = f.apply_unchecked(&g.apply_unchecked(q).unwrap()).unwrap();
                assert!(fg.apply_unchecked(q).unwrap().max_distance(&direct) < 1e-9);
                let back = finv
                    .apply_unchecked(&f.apply_unchecked(q).unwrap())
                    .unwrap();
                assert!(back.max_distance(q) < 1e-9);
            }
        }
    }

    #[test]
    fn stratum_invariance_samples() {
        let tol = Tolerance::default();
        let mut s = Sampler::new(99);
        for _ in 0..1000 {
            let v = s.disc_automorphism(0.9);
            let g = s.b_gamma2();
            let h = tau_apply(&v, &g).unwrap();
            assert!(crate::domains::b_gamma2_defect(&h) < 1e-8);
            assert_eq!(royal_gamma2(&g, tol), royal_gamma2(&h, tol));

            let flip = s.coin(0.5);
            let t = s.tetra_params(0.9, flip);
            let x = s.b_tetra_non_triangular();
            assert_eq!(
                classify_b_tetra(&tetra_apply(&t, &x).unwrap(), tol).stratum,
                TetraStratum::BoundaryNonTriangular
            );
            let x = s.b_tetra_triangular();
            assert_eq!(
                classify_b_tetra(&tetra_apply(&t, &x).unwrap(), tol).stratum,
                TetraStratum::BoundaryTriangular
            );

            let f = s.penta_params(0.9);
            let q = s.b_penta_royal();
            assert_eq!(
                classify_b_penta(&penta_apply(&f, &q).unwrap(), tol).stratum,
                PentaStratum::BoundaryRoyal
            );
        }
    }

    #[test]
    fn aut_params_json() {
        let a = AutParams::Gamma2(DiscAutomorphism::identity());
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(
            s,
            r#"{"kind":"gamma2","params":{"eta":[-1.0,0.0],"alpha":[0.0,0.0]}}"#
        );
        assert_eq!(serde_json::from_str::<AutParams>(&s).unwrap(), a);
        let t = r#"{"kind":"tetra","params":{"xi1":[1,0],"z1":[0,0],"xi2":[0,1],"z2":[0.5,0]}}"#;
        let parsed: AutParams = serde_json::from_str(t).unwrap();
        assert!(matches!(parsed, AutParams::Tetra(p) if !p.flip));
        let bad = r#"{"kind":"tetra","params":{"xi1":[2,0],"z1":[0,0],"xi2":[0,1],"z2":[0.5,0]}}"#;
        assert!(serde_json::from_str::<AutParams>(bad).is_err());
    }
}
