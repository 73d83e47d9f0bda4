//! Orbit decompositions: for a distinguished-boundary point, an automorphism
//! (or, for `Γn`, a proper map `tau_B`) carrying a canonical point onto it.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::automorphisms::{
    penta_apply, tau_apply, tau_blaschke_apply, tetra_apply, AutParams, PentaAutParams,
    TetraAutParams,
};
use crate::blaschke::{interpolate_roots_of_unity, roots_of_unity};
use crate::disc::{two_point_boundary_aut, DiscAutomorphism};
use crate::domains::{
    classify_b_penta, classify_b_tetra, classify_gamma_n, royal_gamma2, symmetrize, unsymmetrize,
    DomainPoint, Gamma2Point, GammaNPoint, PentaPoint, PentaStratum, TetraPoint, TetraStratum,
    Tolerance,
};
use crate::error::{Error, Result};

/// Round trips worse than this (or the caller's tolerance, if larger) are reported as failures.
pub const RESIDUAL_LIMIT: f64 = 1e-8;

/// Largest admissible `||a| - |a~||` in the non-royal pentablock branch.
pub const PENTA_MODULUS_SLACK: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecompositionStratum {
    #[serde(rename = "royalGamma2")]
    RoyalGamma2,
    #[serde(rename = "nonRoyalGamma2")]
    NonRoyalGamma2,
    #[serde(rename = "triangularE")]
    TriangularE,
    #[serde(rename = "nonTriangularE")]
    NonTriangularE,
    #[serde(rename = "royalP")]
    RoyalP,
    #[serde(rename = "nonRoyalP")]
    NonRoyalP,
    #[serde(rename = "bGammaN")]
    BGammaN,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub stratum: DecompositionStratum,
    pub params: AutParams,
    /// The orbit representative the parameters are applied to.
    pub canonical: DomainPoint,
    /// Largest coordinate error of `params` applied to `canonical` against the input.
    pub residual: f64,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn to_circle(z: Complex64) -> Complex64 {
    z / z.norm()
}

/// Argument in `[0, 2 pi)`.
fn arg_key(z: &Complex64) -> f64 {
    z.arg().rem_euclid(2.0 * PI)
}

fn finish(decomposition: Decomposition, tol: Tolerance) -> Result<Decomposition> {
    if !(decomposition.residual <= RESIDUAL_LIMIT.max(tol.eps())) {
        return Err(Error::SolverFailure(decomposition.residual));
    }
    Ok(decomposition)
}

/// `v(1) = s / 2`, so that `tau_v(2, 1) = (s, p)`.
fn royal_gamma2_aut(g: &Gamma2Point) -> Result<DiscAutomorphism> {
    DiscAutomorphism::rotation(to_circle(g.s / 2.0))
}

/// `v(i), v(-i)` are the roots of `z^2 - s z + p` in order of argument, so
/// that `tau_v(0, 1) = (s, p)`.
fn non_royal_gamma2_aut(g: &Gamma2Point) -> Result<DiscAutomorphism> {
    let mut roots = g.roots().map(to_circle);
    roots.sort_by(|a, b| arg_key(a).total_cmp(&arg_key(b)));
    two_point_boundary_aut((c(0.0, 1.0), c(0.0, -1.0)), (roots[0], roots[1]))
}

pub fn decompose_b_gamma2(g: &Gamma2Point, tol: Tolerance) -> Result<Decomposition> {
    let class = classify_gamma_n(&GammaNPoint::from(*g), tol)?;
    if !class.on_boundary {
        return Err(Error::NotOnBoundary(class.defect));
    }
    let (stratum, v, canonical) = if royal_gamma2(g, tol) {
        (
            DecompositionStratum::RoyalGamma2,
            royal_gamma2_aut(g)?,
            Gamma2Point::new(c(2.0, 0.0), c(1.0, 0.0)),
        )
    } else {
        (
            DecompositionStratum::NonRoyalGamma2,
            non_royal_gamma2_aut(g)?,
            Gamma2Point::new(c(0.0, 0.0), c(1.0, 0.0)),
        )
    };
    let residual = tau_apply(&v, &canonical)?.max_distance(g);
    finish(
        Decomposition {
            stratum,
            params: AutParams::Gamma2(v),
            canonical: DomainPoint::Gamma2(canonical),
            residual,
        },
        tol,
    )
}

pub fn decompose_b_tetra(x: &TetraPoint, tol: Tolerance) -> Result<Decomposition> {
    let class = classify_b_tetra(x, tol);
    let zero = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let (stratum, params, canonical) = match class.stratum {
        TetraStratum::NotBoundary => return Err(Error::NotOnBoundary(class.defect)),
        TetraStratum::BoundaryNonTriangular => {
            let x3 = to_circle(x.x3);
            let t = TetraAutParams::new(x3, -x.x1 * x3.conj(), one, zero, false)?;
            (
                DecompositionStratum::NonTriangularE,
                t,
                TetraPoint::new(zero, zero, one),
            )
        }
        TetraStratum::BoundaryTriangular => {
            let t = TetraAutParams::new(to_circle(x.x1), zero, to_circle(x.x2), zero, false)?;
            (
                DecompositionStratum::TriangularE,
                t,
                TetraPoint::new(one, one, one),
            )
        }
    };
    let residual = tetra_apply(&params, &canonical)?.max_distance(x);
    finish(
        Decomposition {
            stratum,
            params: AutParams::Tetra(params),
            canonical: DomainPoint::Tetra(canonical),
            residual,
        },
        tol,
    )
}

/// `a~ = eta (1 - |alpha|^2) / (1 + conj(alpha)^2)`: the first coordinate of
/// `f_{1 v}(1, 0, 1)`.
pub fn penta_a_tilde(v: &DiscAutomorphism) -> Complex64 {
    let (eta, alpha) = (v.eta(), v.alpha());
    eta * (1.0 - alpha.norm_sqr()) / (1.0 + alpha.conj() * alpha.conj())
}

pub fn decompose_b_penta(q: &PentaPoint, tol: Tolerance) -> Result<Decomposition> {
    let class = classify_b_penta(q, tol);
    let g = q.gamma2();
    let one = c(1.0, 0.0);
    let (stratum, params, canonical) = match class.stratum {
        PentaStratum::NotBoundary => return Err(Error::NotOnBoundary(class.defect)),
        PentaStratum::BoundaryRoyal => {
            let f = PentaAutParams::new(one, royal_gamma2_aut(&g)?)?;
            (
                DecompositionStratum::RoyalP,
                f,
                PentaPoint::new(c(0.0, 0.0), c(2.0, 0.0), one),
            )
        }
        PentaStratum::BoundaryNonRoyal => {
            let v = non_royal_gamma2_aut(&g)?;
            let a_tilde = penta_a_tilde(&v);
            let gap = (q.a.norm() - a_tilde.norm()).abs();
            if gap > PENTA_MODULUS_SLACK {
                return Err(Error::InternalInconsistency(format!(
                    "|a| = {} but the recovered automorphism gives |a~| = {}",
                    q.a.norm(),
                    a_tilde.norm()
                )));
            }
            let f = PentaAutParams::new(to_circle(q.a / a_tilde), v)?;
            (
                DecompositionStratum::NonRoyalP,
                f,
                PentaPoint::new(one, c(0.0, 0.0), one),
            )
        }
    };
    let residual = penta_apply(&params, &canonical)?.max_distance(q);
    finish(
        Decomposition {
            stratum,
            params: AutParams::Penta(params),
            canonical: DomainPoint::Penta(canonical),
            residual,
        },
        tol,
    )
}

pub fn decompose_b_gamma_n(point: &GammaNPoint, tol: Tolerance) -> Result<Decomposition> {
    let class = classify_gamma_n(point, tol)?;
    if !class.on_boundary {
        return Err(Error::NotOnBoundary(class.defect));
    }
    let mut targets: Vec<Complex64> = unsymmetrize(point)?.into_iter().map(to_circle).collect();
    targets.sort_by(|a, b| arg_key(a).total_cmp(&arg_key(b)));
    let b = interpolate_roots_of_unity(&targets)?;
    let canonical = symmetrize(&roots_of_unity(point.n()))?;
    let residual = tau_blaschke_apply(&b, &canonical)?.max_distance(point);
    finish(
        Decomposition {
            stratum: DecompositionStratum::BGammaN,
            params: AutParams::Blaschke(b),
            canonical: DomainPoint::GammaN(canonical),
            residual,
        },
        tol,
    )
}

/// Dispatches on the point kind.
pub fn decompose(point: &DomainPoint, tol: Tolerance) -> Result<Decomposition> {
    match point {
        DomainPoint::Gamma2(g) => decompose_b_gamma2(g, tol),
        DomainPoint::GammaN(g) => decompose_b_gamma_n(g, tol),
        DomainPoint::Tetra(x) => decompose_b_tetra(x, tol),
        DomainPoint::Penta(q) => decompose_b_penta(q, tol),
    }
}
