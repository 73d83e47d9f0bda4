//! One classification report for any point kind, as printed by the command line tool.
//!
//! `stratum` is the coarse answer (`bGamma2`, `bTetra`, `pentaInterior`, ...)
//! and `label` refines boundary points into the sampler's stratum names
//! (`bGamma2Royal`, `bTetraTriangular`, ...). A point drawn from a sampler
//! stratum reports that name as either its `stratum` or its `label`.

use serde::Serialize;

use crate::domains::{
    classify_b_penta, classify_b_tetra, classify_gamma_n, royal_gamma2, DomainPoint, Gamma2Point,
    GammaNPoint, PentaPoint, PentaStratum, Region, TetraPoint, TetraStratum, Tolerance,
};
use crate::error::Result;
use crate::mu::{mu, realize_penta, realize_tetra, Membership, MuBracket, Structure};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub stratum: String,
    pub label: String,
    pub region: Region,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub royal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangular: Option<bool>,
    /// Violation of the distinguished-boundary equations.
    pub defect: f64,
    /// Structured singular value of a realizing matrix, for tetrablock and
    /// pentablock points off the distinguished boundary.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<MuBracket>,
}

impl Classification {
    /// Whether a sampler stratum name matches this report.
    pub fn matches(&self, name: &str) -> bool {
        self.stratum.eq_ignore_ascii_case(name) || self.label.eq_ignore_ascii_case(name)
    }
}

fn region_name(prefix: &str, region: Region) -> String {
    match region {
        Region::Interior => format!("{prefix}Interior"),
        Region::Closure => format!("{prefix}Closure"),
        Region::Outside => "outside".to_string(),
    }
}

fn gamma_report(
    c: &GammaNPoint,
    prefix: &str,
    royal: Option<bool>,
    tol: Tolerance,
) -> Result<Classification> {
    let class = classify_gamma_n(c, tol)?;
    let boundary = format!("b{}{}", prefix[..1].to_uppercase(), &prefix[1..]);
    let (stratum, label) = if class.on_boundary {
        let label = match royal {
            Some(true) => format!("{boundary}Royal"),
            Some(false) => format!("{boundary}NonRoyal"),
            None => boundary.clone(),
        };
        (boundary, label)
    } else {
        let name = region_name(prefix, class.region);
        (name.clone(), name)
    };
    Ok(Classification {
        stratum,
        label,
        region: class.region,
        royal,
        triangular: None,
        defect: class.defect,
        mu: None,
    })
}

pub fn classify_gamma2_point(g: &Gamma2Point, tol: Tolerance) -> Result<Classification> {
    gamma_report(
        &GammaNPoint::from(*g),
        "gamma2",
        Some(royal_gamma2(g, tol)),
        tol,
    )
}

pub fn classify_gamma_n_point(c: &GammaNPoint, tol: Tolerance) -> Result<Classification> {
    gamma_report(c, "gammaN", None, tol)
}

fn off_boundary(prefix: &str, bracket: MuBracket, tol: Tolerance) -> (String, Region) {
    let membership = if bracket.upper < 1.0 - tol.eps() {
        Membership::Inside
    } else if bracket.lower > 1.0 + tol.eps() {
        Membership::Outside
    } else {
        Membership::BoundaryBand
    };
    match membership {
        Membership::Inside => (format!("{prefix}Interior"), Region::Interior),
        Membership::BoundaryBand => (format!("{prefix}BoundaryBand"), Region::Closure),
        Membership::Outside => ("outside".to_string(), Region::Outside),
    }
}

pub fn classify_tetra_point(x: &TetraPoint, tol: Tolerance, resolution: f64) -> Classification {
    let class = classify_b_tetra(x, tol);
    let (stratum, label, region, triangular, bracket) = match class.stratum {
        TetraStratum::BoundaryTriangular => (
            "bTetra".into(),
            "bTetraTriangular".into(),
            Region::Closure,
            Some(true),
            None,
        ),
        TetraStratum::BoundaryNonTriangular => (
            "bTetra".into(),
            "bTetraNonTriangular".into(),
            Region::Closure,
            Some(false),
            None,
        ),
        TetraStratum::NotBoundary => {
            let bracket = mu(&realize_tetra(x), Structure::Diag, resolution);
            let (name, region) = off_boundary("tetra", bracket, tol);
            (name.clone(), name, region, None, Some(bracket))
        }
    };
    Classification {
        stratum,
        label,
        region,
        royal: None,
        triangular,
        defect: class.defect,
        mu: bracket,
    }
}

pub fn classify_penta_point(q: &PentaPoint, tol: Tolerance, resolution: f64) -> Classification {
    let class = classify_b_penta(q, tol);
    let (stratum, label, region, royal, bracket) = match class.stratum {
        PentaStratum::BoundaryRoyal => (
            "bPenta".into(),
            "bPentaRoyal".into(),
            Region::Closure,
            Some(true),
            None,
        ),
        PentaStratum::BoundaryNonRoyal => (
            "bPenta".into(),
            "bPentaNonRoyal".into(),
            Region::Closure,
            Some(false),
            None,
        ),
        PentaStratum::NotBoundary => {
            let bracket = mu(&realize_penta(q), Structure::PentaSpan, resolution);
            let (name, region) = off_boundary("penta", bracket, tol);
            (name.clone(), name, region, None, Some(bracket))
        }
    };
    Classification {
        stratum,
        label,
        region,
        royal,
        triangular: None,
        defect: class.defect,
        mu: bracket,
    }
}

pub fn classify_point(
    point: &DomainPoint,
    tol: Tolerance,
    resolution: f64,
) -> Result<Classification> {
    match point {
        DomainPoint::Gamma2(g) => classify_gamma2_point(g, tol),
        DomainPoint::GammaN(c) => classify_gamma_n_point(c, tol),
        DomainPoint::Tetra(x) => Ok(classify_tetra_point(x, tol, resolution)),
        DomainPoint::Penta(q) => Ok(classify_penta_point(q, tol, resolution)),
    }
}
