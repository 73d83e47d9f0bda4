//! Points of the symmetrized polydisc, the tetrablock and the pentablock, and
//! classifiers for their distinguished boundaries.
//!
//! Membership of the open tetrablock or pentablock has no closed form here; it is
//! decided by the structured singular value oracle in [`crate::mu`]. The
//! classifiers in this module only decide the boundary strata, and each returns
//! the measured defect (largest violated constraint) next to its label.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{elementary_symmetric, roots_from_symmetric};

/// Positive classification tolerance, 1e-9 by default.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Tolerance(f64);

impl Tolerance {
    pub fn new(eps: f64) -> Result<Self> {
        if eps > 0.0 && eps.is_finite() {
            Ok(Tolerance(eps))
        } else {
            Err(Error::InvalidInput(format!(
                "tolerance must be positive, got {eps}"
            )))
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(1e-9)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gamma2Point {
    pub s: Complex64,
    pub p: Complex64,
}

impl Gamma2Point {
    pub fn new(s: Complex64, p: Complex64) -> Self {
        Gamma2Point { s, p }
    }

    pub fn from_roots(z1: Complex64, z2: Complex64) -> Self {
        Gamma2Point::new(z1 + z2, z1 * z2)
    }

    pub fn roots(&self) -> [Complex64; 2] {
        crate::matrix2::quadratic_roots(self.s, self.p)
    }

    pub fn max_distance(&self, other: &Gamma2Point) -> f64 {
        (self.s - other.s).norm().max((self.p - other.p).norm())
    }
}

/// Elementary symmetric values `(c1, ..., cn)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaNPoint {
    coeffs: Vec<Complex64>,
}

impl GammaNPoint {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "a gammaN point needs at least one coordinate".into(),
            ));
        }
        Ok(GammaNPoint { coeffs })
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn max_distance(&self, other: &GammaNPoint) -> f64 {
        if self.n() != other.n() {
            return f64::INFINITY;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl From<Gamma2Point> for GammaNPoint {
    fn from(g: Gamma2Point) -> Self {
        GammaNPoint {
            coeffs: vec![g.s, g.p],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetraPoint {
    pub x1: Complex64,
    pub x2: Complex64,
    pub x3: Complex64,
}

impl TetraPoint {
    pub fn new(x1: Complex64, x2: Complex64, x3: Complex64) -> Self {
        TetraPoint { x1, x2, x3 }
    }

    pub fn max_distance(&self, other: &TetraPoint) -> f64 {
        (self.x1 - other.x1)
            .norm()
            .max((self.x2 - other.x2).norm())
            .max((self.x3 - other.x3).norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PentaPoint {
    pub a: Complex64,
    pub s: Complex64,
    pub p: Complex64,
}

impl PentaPoint {
    pub fn new(a: Complex64, s: Complex64, p: Complex64) -> Self {
        PentaPoint { a, s, p }
    }

    pub fn gamma2(&self) -> Gamma2Point {
        Gamma2Point::new(self.s, self.p)
    }

    pub fn max_distance(&self, other: &PentaPoint) -> f64 {
        (self.a - other.a)
            .norm()
            .max((self.s - other.s).norm())
            .max((self.p - other.p).norm())
    }
}

/// Any of the four point kinds, as exchanged in JSON:
/// `{"kind": "gamma2" | "gammaN" | "tetra" | "penta", "coords": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoint", into = "RawPoint")]
pub enum DomainPoint {
    Gamma2(Gamma2Point),
    GammaN(GammaNPoint),
    Tetra(TetraPoint),
    Penta(PentaPoint),
}

#[derive(Serialize, Deserialize)]
struct RawPoint {
    kind: String,
    coords: Vec<Complex64>,
}

impl TryFrom<RawPoint> for DomainPoint {
    type Error = Error;

    fn try_from(raw: RawPoint) -> Result<Self> {
        let c = &raw.coords;
        let want = |n: usize| {
            if c.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!(
                    "`{}` points have {n} coordinates, got {}",
                    raw.kind,
                    c.len()
                )))
            }
        };
        match raw.kind.as_str() {
            "gamma2" => {
                want(2)?;
                Ok(DomainPoint::Gamma2(Gamma2Point::new(c[0], c[1])))
            }
            "gammaN" => Ok(DomainPoint::GammaN(GammaNPoint::new(c.clone())?)),
            "tetra" => {
                want(3)?;
                Ok(DomainPoint::Tetra(TetraPoint::new(c[0], c[1], c[2])))
            }
            "penta" => {
                want(3)?;
                Ok(DomainPoint::Penta(PentaPoint::new(c[0], c[1], c[2])))
            }
            other => Err(Error::InvalidInput(format!("unknown point kind `{other}`"))),
        }
    }
}

impl From<DomainPoint> for RawPoint {
    fn from(p: DomainPoint) -> Self {
        let (kind, coords) = match p {
            DomainPoint::Gamma2(g) => ("gamma2", vec![g.s, g.p]),
            DomainPoint::GammaN(g) => ("gammaN", g.coeffs),
            DomainPoint::Tetra(t) => ("tetra", vec![t.x1, t.x2, t.x3]),
            DomainPoint::Penta(q) => ("penta", vec![q.a, q.s, q.p]),
        };
        RawPoint {
            kind: kind.to_string(),
            coords,
        }
    }
}

pub fn symmetrize(z: &[Complex64]) -> Result<GammaNPoint> {
    GammaNPoint::new(elementary_symmetric(z))
}

/// Roots `z_1, ..., z_n` with `symmetrize(z) = c`.
pub fn unsymmetrize(c: &GammaNPoint) -> Result<Vec<Complex64>> {
    roots_from_symmetric(c.coeffs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Region {
    Interior,
    Closure,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaNClass {
    pub region: Region,
    pub on_boundary: bool,
    /// Violation of the distinguished boundary conditions.
    pub defect: f64,
}

/// Largest violation of `|s| <= 2`, `s = conj(s) p`, `|p| = 1`.
pub fn b_gamma2_defect(g: &Gamma2Point) -> f64 {
    (g.s.norm() - 2.0)
        .max(0.0)
        .max((g.s - g.s.conj() * g.p).norm())
        .max((g.p.norm() - 1.0).abs())
}

/// Classifies a point of `C^n` against the symmetrized polydisc by the moduli of
/// its roots. For `n = 2` the boundary flag and defect use the algebraic
/// description of the distinguished boundary instead, which stays well
/// conditioned at double roots.
pub fn classify_gamma_n(c: &GammaNPoint, tol: Tolerance) -> Result<GammaNClass> {
    let eps = tol.eps();
    let roots = unsymmetrize(c)?;
    let max_mod = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let region = if max_mod < 1.0 - eps {
        Region::Interior
    } else if max_mod <= 1.0 + eps {
        Region::Closure
    } else {
        Region::Outside
    };
    let defect = if c.n() == 2 {
        b_gamma2_defect(&Gamma2Point::new(c.coeffs[0], c.coeffs[1]))
    } else {
        roots
            .iter()
            .map(|z| (z.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    };
    let on_boundary = defect <= eps;
    let region = if on_boundary && region == Region::Outside {
        Region::Closure
    } else {
        region
    };
    Ok(GammaNClass {
        region,
        on_boundary,
        defect,
    })
}

pub fn classify_gamma2(g: &Gamma2Point, tol: Tolerance) -> Result<GammaNClass> {
    classify_gamma_n(&GammaNPoint::from(*g), tol)
}

/// `|s^2 - 4p| <= tol`.
pub fn royal_gamma2(g: &Gamma2Point, tol: Tolerance) -> bool {
    royal_defect(g) <= tol.eps()
}

pub fn royal_defect(g: &Gamma2Point) -> f64 {
    (g.s * g.s - 4.0 * g.p).norm()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum TetraStratum {
    NotBoundary,
    BoundaryNonTriangular,
    BoundaryTriangular,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetraClass {
    pub stratum: TetraStratum,
    pub defect: f64,
}

/// Largest violation of `x1 = conj(x2) x3`, `|x3| = 1`, `|x1| <= 1`.
pub fn b_tetra_defect(x: &TetraPoint) -> f64 {
    (x.x1 - x.x2.conj() * x.x3)
        .norm()
        .max((x.x3.norm() - 1.0).abs())
        .max((x.x1.norm() - 1.0).max(0.0))
}

pub fn triangular_defect(x: &TetraPoint) -> f64 {
    (x.x1 * x.x2 - x.x3).norm()
}

pub fn classify_b_tetra(x: &TetraPoint, tol: Tolerance) -> TetraClass {
    let defect = b_tetra_defect(x);
    let stratum = if defect > tol.eps() {
        TetraStratum::NotBoundary
    } else if triangular_defect(x) <= tol.eps() {
        TetraStratum::BoundaryTriangular
    } else {
        TetraStratum::BoundaryNonTriangular
    };
    TetraClass { stratum, defect }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PentaStratum {
    NotBoundary,
    BoundaryRoyal,
    BoundaryNonRoyal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PentaClass {
    pub stratum: PentaStratum,
    pub defect: f64,
}

/// Largest violation of `|a|^2 + |s|^2 / 4 = 1` and `(s, p)` in the
/// distinguished boundary of the symmetrized bidisc.
pub fn b_penta_defect(q: &PentaPoint) -> f64 {
    (q.a.norm_sqr() + q.s.norm_sqr() / 4.0 - 1.0)
        .abs()
        .max(b_gamma2_defect(&q.gamma2()))
}

/// Royal boundary points need both `|s^2 - 4p| <= tol` and `|a| <= tol`. On the
/// boundary `|a|^2 = |s^2 - 4p| / 4`, so the first test alone would also accept
/// points with `|a|` up to about `sqrt(tol) / 2`.
pub fn classify_b_penta(q: &PentaPoint, tol: Tolerance) -> PentaClass {
    let defect = b_penta_defect(q);
    let stratum = if defect > tol.eps() {
        PentaStratum::NotBoundary
    } else if royal_defect(&q.gamma2()) <= tol.eps() && q.a.norm() <= tol.eps() {
        PentaStratum::BoundaryRoyal
    } else {
        PentaStratum::BoundaryNonRoyal
    };
    PentaClass { stratum, defect }
}
