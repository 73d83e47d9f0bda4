//! Seeded random points on each stratum, plus random automorphism parameters.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::automorphisms::{PentaAutParams, TetraAutParams};
use crate::blaschke::BlaschkeProduct;
use crate::disc::DiscAutomorphism;
use crate::domains::{symmetrize, DomainPoint, Gamma2Point, GammaNPoint, PentaPoint, TetraPoint};
use crate::error::{Error, Result};
use crate::matrix2::{op_norm, project_penta, project_tetra, Mat2};

/// Interior samples are scaled to at most this radius or norm.
pub const INTERIOR_RADIUS: f64 = 0.95;
/// Non-royal and non-triangular samples stay this far from the special stratum,
/// measured as `|z1 - z2|` for boundary roots and `1 - |x1|` on the tetrablock.
pub const STRATUM_MARGIN: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Stratum {
    BGamma2,
    BGamma2Royal,
    BGamma2NonRoyal,
    Gamma2Interior,
    BGammaN,
    GammaNInterior,
    BTetraNonTriangular,
    BTetraTriangular,
    TetraInterior,
    BPentaRoyal,
    BPentaNonRoyal,
    PentaInterior,
}

impl Stratum {
    pub const ALL: [Stratum; 12] = [
        Stratum::BGamma2,
        Stratum::BGamma2Royal,
        Stratum::BGamma2NonRoyal,
        Stratum::Gamma2Interior,
        Stratum::BGammaN,
        Stratum::GammaNInterior,
        Stratum::BTetraNonTriangular,
        Stratum::BTetraTriangular,
        Stratum::TetraInterior,
        Stratum::BPentaRoyal,
        Stratum::BPentaNonRoyal,
        Stratum::PentaInterior,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Stratum::BGamma2 => "bGamma2",
            Stratum::BGamma2Royal => "bGamma2Royal",
            Stratum::BGamma2NonRoyal => "bGamma2NonRoyal",
            Stratum::Gamma2Interior => "gamma2Interior",
            Stratum::BGammaN => "bGammaN",
            Stratum::GammaNInterior => "gammaNInterior",
            Stratum::BTetraNonTriangular => "bTetraNonTriangular",
            Stratum::BTetraTriangular => "bTetraTriangular",
            Stratum::TetraInterior => "tetraInterior",
            Stratum::BPentaRoyal => "bPentaRoyal",
            Stratum::BPentaNonRoyal => "bPentaNonRoyal",
            Stratum::PentaInterior => "pentaInterior",
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Labels match case-insensitively, so `PentaInterior` and `pentaInterior` both parse.
impl FromStr for Stratum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Stratum::ALL
            .into_iter()
            .find(|k| k.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownStratum(s.to_string()))
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn unimodular(&mut self) -> Complex64 {
        Complex64::from_polar(1.0, self.rng.gen_range(-PI..PI))
    }

    /// Uniform in the disc of radius `max_r`.
    pub fn disc_point(&mut self, max_r: f64) -> Complex64 {
        let r = max_r * self.rng.gen::<f64>().sqrt();
        Complex64::from_polar(r, self.rng.gen_range(-PI..PI))
    }

    pub fn disc_automorphism(&mut self, max_r: f64) -> DiscAutomorphism {
        let eta = self.unimodular();
        let alpha = self.disc_point(max_r);
        DiscAutomorphism::new(eta, alpha).expect("sampled parameters are admissible")
    }

    pub fn tetra_params(&mut self, max_r: f64, flip: bool) -> TetraAutParams {
        let (xi1, z1) = (self.unimodular(), self.disc_point(max_r));
        let (xi2, z2) = (self.unimodular(), self.disc_point(max_r));
        TetraAutParams::new(xi1, z1, xi2, z2, flip).expect("sampled parameters are admissible")
    }

    pub fn penta_params(&mut self, max_r: f64) -> PentaAutParams {
        let omega = self.unimodular();
        let v = self.disc_automorphism(max_r);
        PentaAutParams::new(omega, v).expect("sampled parameters are admissible")
    }

    pub fn blaschke(&mut self, degree: usize, max_r: f64) -> BlaschkeProduct {
        let u = self.unimodular();
        let zeros = (0..degree).map(|_| self.disc_point(max_r)).collect();
        BlaschkeProduct::new(u, zeros).expect("sampled parameters are admissible")
    }

    /// Random matrix rescaled to operator norm uniform in `(0, max_norm]`.
    pub fn matrix_in_ball(&mut self, max_norm: f64) -> Mat2 {
        loop {
            let mut e =
                || Complex64::new(self.rng.gen_range(-1.0..1.0), self.rng.gen_range(-1.0..1.0));
            let a = Mat2::new(e(), e(), e(), e());
            let n = op_norm(&a);
            if n > 1e-6 {
                let target = max_norm * (1.0 - self.rng.gen::<f64>());
                return a.scale(Complex64::new(target / n, 0.0));
            }
        }
    }

    fn distinct_unimodular_pair(&mut self) -> (Complex64, Complex64) {
        loop {
            let (u1, u2) = (self.unimodular(), self.unimodular());
            if (u1 - u2).norm() > STRATUM_MARGIN {
                return (u1, u2);
            }
        }
    }

    pub fn b_gamma2_royal(&mut self) -> Gamma2Point {
        let u = self.unimodular();
        Gamma2Point::new(2.0 * u, u * u)
    }

    pub fn b_gamma2_non_royal(&mut self) -> Gamma2Point {
        let (u1, u2) = self.distinct_unimodular_pair();
        Gamma2Point::from_roots(u1, u2)
    }

    /// Either stratum with equal probability.
    pub fn b_gamma2(&mut self) -> Gamma2Point {
        if self.coin(0.5) {
            self.b_gamma2_royal()
        } else {
            self.b_gamma2_non_royal()
        }
    }

    pub fn gamma2_interior(&mut self) -> Gamma2Point {
        Gamma2Point::from_roots(
            self.disc_point(INTERIOR_RADIUS),
            self.disc_point(INTERIOR_RADIUS),
        )
    }

    pub fn b_gamma_n(&mut self, n: usize) -> GammaNPoint {
        let z: Vec<_> = (0..n).map(|_| self.unimodular()).collect();
        symmetrize(&z).expect("n >= 1")
    }

    pub fn gamma_n_interior(&mut self, n: usize) -> GammaNPoint {
        let z: Vec<_> = (0..n).map(|_| self.disc_point(INTERIOR_RADIUS)).collect();
        symmetrize(&z).expect("n >= 1")
    }

    /// `(x1, conj(x1) x3, x3)` with `|x1| < 1`, `|x3| = 1`.
    pub fn b_tetra_non_triangular(&mut self) -> TetraPoint {
        let x1 = self.disc_point(1.0 - STRATUM_MARGIN);
        let x3 = self.unimodular();
        TetraPoint::new(x1, x1.conj() * x3, x3)
    }

    pub fn b_tetra_triangular(&mut self) -> TetraPoint {
        let (u1, u2) = (self.unimodular(), self.unimodular());
        TetraPoint::new(u1, u2, u1 * u2)
    }

    pub fn tetra_interior(&mut self) -> TetraPoint {
        project_tetra(&self.matrix_in_ball(INTERIOR_RADIUS))
    }

    pub fn b_penta_royal(&mut self) -> PentaPoint {
        let g = self.b_gamma2_royal();
        PentaPoint::new(Complex64::new(0.0, 0.0), g.s, g.p)
    }

    pub fn b_penta_non_royal(&mut self) -> PentaPoint {
        let g = self.b_gamma2_non_royal();
        let r = (1.0 - g.s.norm_sqr() / 4.0).max(0.0).sqrt();
        let a = r * self.unimodular();
        PentaPoint::new(a, g.s, g.p)
    }

    pub fn penta_interior(&mut self) -> PentaPoint {
        project_penta(&self.matrix_in_ball(INTERIOR_RADIUS))
    }

    /// One point of `stratum`; `n` is the number of coordinates for the
    /// `Γn` strata and ignored otherwise.
    pub fn sample(&mut self, stratum: Stratum, n: usize) -> Result<DomainPoint> {
        let needs_n = matches!(stratum, Stratum::BGammaN | Stratum::GammaNInterior);
        if needs_n && n == 0 {
            return Err(Error::InvalidInput("Γn strata need n >= 1".into()));
        }
        Ok(match stratum {
            Stratum::BGamma2 => DomainPoint::Gamma2(self.b_gamma2()),
            Stratum::BGamma2Royal => DomainPoint::Gamma2(self.b_gamma2_royal()),
            Stratum::BGamma2NonRoyal => DomainPoint::Gamma2(self.b_gamma2_non_royal()),
            Stratum::Gamma2Interior => DomainPoint::Gamma2(self.gamma2_interior()),
            Stratum::BGammaN => DomainPoint::GammaN(self.b_gamma_n(n)),
            Stratum::GammaNInterior => DomainPoint::GammaN(self.gamma_n_interior(n)),
            Stratum::BTetraNonTriangular => DomainPoint::Tetra(self.b_tetra_non_triangular()),
            Stratum::BTetraTriangular => DomainPoint::Tetra(self.b_tetra_triangular()),
            Stratum::TetraInterior => DomainPoint::Tetra(self.tetra_interior()),
            Stratum::BPentaRoyal => DomainPoint::Penta(self.b_penta_royal()),
            Stratum::BPentaNonRoyal => DomainPoint::Penta(self.b_penta_non_royal()),
            Stratum::PentaInterior => DomainPoint::Penta(self.penta_interior()),
        })
    }
}

pub fn sample_stratum(stratum: Stratum, n: usize, seed: u64) -> Result<DomainPoint> {
    Sampler::new(seed).sample(stratum, n)
}

/// `count` points drawn from one seeded stream.
pub fn sample_many(
    stratum: Stratum,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<DomainPoint>> {
    let mut s = Sampler::new(seed);
    (0..count).map(|_| s.sample(stratum, n)).collect()
}
