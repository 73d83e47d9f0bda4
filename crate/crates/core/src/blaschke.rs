//! Finite Blaschke products and boundary interpolation at roots of unity.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::disc::DiscAutomorphism;
use crate::error::{Error, Result};

/// `unimodular * prod_k B_{a_k}(z)` with every zero strictly inside the disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBlaschke")]
pub struct BlaschkeProduct {
    unimodular: Complex64,
    zeros: Vec<Complex64>,
}

#[derive(Deserialize)]
struct RawBlaschke {
    unimodular: Complex64,
    #[serde(default)]
    zeros: Vec<Complex64>,
}

impl TryFrom<RawBlaschke> for BlaschkeProduct {
    type Error = Error;

    fn try_from(r: RawBlaschke) -> Result<Self> {
        BlaschkeProduct::new(r.unimodular, r.zeros)
    }
}

impl From<DiscAutomorphism> for BlaschkeProduct {
    fn from(v: DiscAutomorphism) -> Self {
        BlaschkeProduct {
            unimodular: v.eta(),
            zeros: vec![v.alpha()],
        }
    }
}

impl BlaschkeProduct {
    pub fn new(unimodular: Complex64, zeros: Vec<Complex64>) -> Result<Self> {
        if !unimodular.is_finite() || (unimodular.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "Blaschke constant must be unimodular, got {unimodular}"
            )));
        }
        if let Some(z) = zeros.iter().find(|z| !z.is_finite() || z.norm() >= 1.0) {
            return Err(Error::InvalidInput(format!(
                "Blaschke zero {z} is not inside the open disc"
            )));
        }
        Ok(BlaschkeProduct {
            unimodular: unimodular / unimodular.norm(),
            zeros,
        })
    }

    /// `B(z) = z`, i.e. a single zero at the origin with constant `-1`.
    pub fn identity() -> Self {
        BlaschkeProduct {
            unimodular: Complex64::new(-1.0, 0.0),
            zeros: vec![Complex64::new(0.0, 0.0)],
        }
    }

    pub fn constant(c: Complex64) -> Result<Self> {
        BlaschkeProduct::new(c, Vec::new())
    }

    pub fn unimodular(&self) -> Complex64 {
        self.unimodular
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros.iter().fold(self.unimodular, |acc, &a| {
            acc * (z - a) / (a.conj() * z - 1.0)
        })
    }

    pub fn as_automorphism(&self) -> Option<DiscAutomorphism> {
        match self.zeros.as_slice() {
            [a] => DiscAutomorphism::new(self.unimodular, *a).ok(),
            _ => None,
        }
    }

    /// Composition is supported between automorphisms only.
    pub fn compose(&self, other: &BlaschkeProduct) -> Result<BlaschkeProduct> {
        match (self.as_automorphism(), other.as_automorphism()) {
            (Some(v), Some(w)) => Ok(BlaschkeProduct::from(v.compose(&w))),
            _ => Err(Error::InvalidInput(
                "composition is only implemented for degree-one Blaschke products".into(),
            )),
        }
    }
}

/// `e^{2 pi i k / n}` for `k = 0, ..., n - 1`.
pub fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
        .collect()
}

/// Settings for [`interpolate_roots_of_unity_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationConfig {
    /// Interpolation succeeds when `max_j |B(mu_j) - t_j|` is below this.
    pub accept: f64,
    /// Polishing stops once the residual is below this.
    pub polish: f64,
    pub restarts: usize,
    pub max_iterations: usize,
    pub seed: u64,
    /// Radius of the initial zeros.
    pub start_radius: f64,
}

impl Default for InterpolationConfig {
    fn default() -> Self {
        InterpolationConfig {
            accept: 1e-8,
            polish: 1e-14,
            restarts: 8,
            max_iterations: 200,
            seed: 0,
            start_radius: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Interpolant {
    pub product: BlaschkeProduct,
    /// `max_j |B(mu_j) - t_j|`.
    pub residual: f64,
}

pub fn interpolate_roots_of_unity(targets: &[Complex64]) -> Result<BlaschkeProduct> {
    interpolate_roots_of_unity_with(targets, &InterpolationConfig::default()).map(|i| i.product)
}

/// Finds a Blaschke product of degree at most `n` with `B(mu_j) = targets[j]`,
/// `mu_j = e^{2 pi i j / n}`.
///
/// Degrees `0, 1, ..., n` are tried in turn. At each degree the angular residuals
/// `arg(B(mu_j) conj(t_j))` are driven to zero by Levenberg–Marquardt over the
/// phase of the constant and the zeros `a = w / sqrt(1 + |w|^2)`, from several
/// deterministic starting configurations. The first degree reaching
/// `config.accept` wins.
pub fn interpolate_roots_of_unity_with(
    targets: &[Complex64],
    config: &InterpolationConfig,
) -> Result<Interpolant> {
    let n = targets.len();
    if n == 0 {
        return Err(Error::InvalidInput("no interpolation targets".into()));
    }
    if let Some(t) = targets
        .iter()
        .find(|t| !t.is_finite() || (t.norm() - 1.0).abs() > 1e-9)
    {
        return Err(Error::InvalidInput(format!("target {t} is not unimodular")));
    }
    let targets: Vec<_> = targets.iter().map(|t| t / t.norm()).collect();
    let nodes = roots_of_unity(n);
    let problem = Problem {
        nodes: &nodes,
        targets: &targets,
    };

    let mut best = f64::INFINITY;
    for degree in 0..=n {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed ^ ((degree as u64) << 32));
        let restarts = if degree == 0 { 1 } else { config.restarts };
        for restart in 0..restarts {
            let offset = if restart == 0 {
                0.5
            } else {
                rng.gen_range(0.0..1.0)
            };
            let radius = if restart == 0 {
                config.start_radius
            } else {
                config.start_radius * rng.gen_range(0.5..1.5)
            };
            let start = problem.initial_guess(degree, offset, radius.min(0.95));
            let params = problem.levenberg_marquardt(start, config);
            let product = problem.product(&params);
            let residual = problem.chord_residual(&product);
            if residual < config.accept {
                return Ok(Interpolant { product, residual });
            }
            best = best.min(residual);
        }
    }
    Err(Error::InterpolationFailure(best))
}

struct Problem<'a> {
    nodes: &'a [Complex64],
    targets: &'a [Complex64],
}

fn zero_from(w: Complex64) -> Complex64 {
    w / (1.0 + w.norm_sqr()).sqrt()
}

fn unconstrained_from(a: Complex64) -> Complex64 {
    a / (1.0 - a.norm_sqr()).sqrt()
}

impl Problem<'_> {
    /// `[phase, re w_1, im w_1, ...]`.
    fn product(&self, params: &[f64]) -> BlaschkeProduct {
        let zeros = params[1..]
            .chunks(2)
            .map(|c| zero_from(Complex64::new(c[0], c[1])))
            .collect();
        BlaschkeProduct {
            unimodular: Complex64::from_polar(1.0, params[0]),
            zeros,
        }
    }

    fn chord_residual(&self, b: &BlaschkeProduct) -> f64 {
        self.nodes
            .iter()
            .zip(self.targets)
            .map(|(&mu, &t)| (b.eval(mu) - t).norm())
            .fold(0.0, f64::max)
    }

    fn angular_residuals(&self, b: &BlaschkeProduct) -> DVector<f64> {
        DVector::from_iterator(
            self.nodes.len(),
            self.nodes
                .iter()
                .zip(self.targets)
                .map(|(&mu, &t)| (b.eval(mu) * t.conj()).arg()),
        )
    }

    fn initial_guess(&self, degree: usize, offset: f64, radius: f64) -> Vec<f64> {
        let mut params = vec![0.0];
        for k in 0..degree {
            let a = Complex64::from_polar(radius, 2.0 * PI * (k as f64 + offset) / degree as f64);
            let w = unconstrained_from(a);
            params.push(w.re);
            params.push(w.im);
        }
        // best constant phase for these zeros
        let b = self.product(&params);
        let fit: Complex64 = self
            .nodes
            .iter()
            .zip(self.targets)
            .map(|(&mu, &t)| t * b.eval(mu).conj())
            .sum();
        params[0] = if fit.norm() > 0.0 { fit.arg() } else { 0.0 };
        params
    }

    fn jacobian(&self, params: &[f64]) -> DMatrix<f64> {
        let m = params.len();
        let mut jac = DMatrix::<f64>::zeros(self.nodes.len(), m);
        let i = Complex64::new(0.0, 1.0);
        for (row, &zeta) in self.nodes.iter().enumerate() {
            jac[(row, 0)] = 1.0;
            for (k, chunk) in params[1..].chunks(2).enumerate() {
                let w = Complex64::new(chunk[0], chunk[1]);
                let a = zero_from(w);
                let num = zeta - a;
                let den = a.conj() * zeta - 1.0;
                let d_ax = (-1.0 / num - zeta / den).im;
                let d_ay = (-i / num + i * zeta / den).im;
                // a = w / sqrt(s), s = 1 + |w|^2
                let s = 1.0 + w.norm_sqr();
                let r = 1.0 / s.sqrt();
                let r3 = r / s;
                let j_xx = r - w.re * w.re * r3;
                let j_xy = -w.re * w.im * r3;
                let j_yy = r - w.im * w.im * r3;
                jac[(row, 1 + 2 * k)] = d_ax * j_xx + d_ay * j_xy;
                jac[(row, 2 + 2 * k)] = d_ax * j_xy + d_ay * j_yy;
            }
        }
        jac
    }

    fn levenberg_marquardt(&self, mut params: Vec<f64>, config: &InterpolationConfig) -> Vec<f64> {
        let mut residuals = self.angular_residuals(&self.product(&params));
        let mut cost = residuals.norm_squared();
        let mut lambda = 1e-3;
        for _ in 0..config.max_iterations {
            if residuals.amax() < config.polish {
                break;
            }
            let jac = self.jacobian(&params);
            let jt = jac.transpose();
            let normal = &jt * &jac;
            let grad = &jt * &residuals;
            let mut improved = false;
            while lambda < 1e12 {
                let mut lhs = normal.clone();
                for d in 0..lhs.nrows() {
                    lhs[(d, d)] += lambda;
                }
                let Some(step) = lhs.cholesky().map(|ch| ch.solve(&grad)) else {
                    lambda *= 4.0;
                    continue;
                };
                let candidate: Vec<f64> =
                    params.iter().zip(step.iter()).map(|(p, s)| p - s).collect();
                let cand_res = self.angular_residuals(&self.product(&candidate));
                let cand_cost = cand_res.norm_squared();
                if cand_cost < cost {
                    params = candidate;
                    residuals = cand_res;
                    cost = cand_cost;
                    lambda = (lambda / 3.0).max(1e-15);
                    improved = true;
                    break;
                }
                lambda *= 4.0;
            }
            if !improved {
                break;
            }
        }
        params
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_product() {
        let k = Complex64::from_polar(1.0, 0.3);
        let b = BlaschkeProduct::constant(k).unwrap();
        for z in [c(0.0, 0.0), c(0.5, 0.5), c(1.0, 0.0)] {
            assert_eq!(b.eval(z), k);
        }
    }

    #[test]
    fn identity_product() {
        let b = BlaschkeProduct::identity();
        assert!((b.eval(c(0.0, 1.0)) - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn roots_of_unity_examples() {
        assert_eq!(roots_of_unity(1), vec![c(1.0, 0.0)]);
        let two = roots_of_unity(2);
        assert!((two[1] - c(-1.0, 0.0)).norm() < 1e-15);
        let four = roots_of_unity(4);
        let expected = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        for (a, b) in four.iter().zip(expected) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_invalid_products() {
        assert!(BlaschkeProduct::new(c(2.0, 0.0), vec![]).is_err());
        assert!(BlaschkeProduct::new(c(1.0, 0.0), vec![c(1.0, 0.0)]).is_err());
        assert!(serde_json::from_str::<BlaschkeProduct>(
            r#"{"unimodular":[1,0],"zeros":[[0.5,0.9]]}"#
        )
        .is_err());
    }

    #[test]
    fn single_target_is_a_constant() {
        let t = Complex64::from_polar(1.0, 1.3);
        let i = interpolate_roots_of_unity_with(&[t], &InterpolationConfig::default()).unwrap();
        assert_eq!(i.product.degree(), 0);
        assert!(i.residual < 1e-12);
    }

    #[test]
    fn two_targets_on_their_own_nodes() {
        let i = interpolate_roots_of_unity_with(
            &[c(1.0, 0.0), c(-1.0, 0.0)],
            &InterpolationConfig::default(),
        )
        .unwrap();
        assert!(i.residual < 1e-8);
        assert!(i.product.degree() <= 1);
    }

    #[test]
    fn reversed_cube_targets() {
        let targets = [
            c(1.0, 0.0),
            Complex64::from_polar(1.0, PI / 3.0),
            Complex64::from_polar(1.0, -PI / 3.0),
        ];
        let b = interpolate_roots_of_unity(&targets).unwrap();
        for (mu, t) in roots_of_unity(3).iter().zip(targets) {
            assert!((b.eval(*mu) - t).norm() < 1e-8);
        }
    }

    #[test]
    fn rejects_non_unimodular_targets() {
        assert!(matches!(
            interpolate_roots_of_unity(&[c(0.5, 0.0)]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn deterministic_output() {
        let targets: Vec<_> = [0.3, 2.9, -1.2, 0.8]
            .iter()
            .map(|&t| Complex64::from_polar(1.0, t))
            .collect();
        let a = interpolate_roots_of_unity(&targets).unwrap();
        let b = interpolate_roots_of_unity(&targets).unwrap();
        assert_eq!(a, b);
    }

    fn product() -> impl Strategy<Value = BlaschkeProduct> {
        (
            -PI..PI,
            prop::collection::vec((0.0..0.95f64, -PI..PI), 0..5),
        )
            .prop_map(|(t, z)| {
                BlaschkeProduct::new(
                    Complex64::from_polar(1.0, t),
                    z.into_iter()
                        .map(|(r, a)| Complex64::from_polar(r, a))
                        .collect(),
                )
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn boundary_maps_to_boundary(b in product(), theta in -PI..PI) {
            prop_assert!((b.eval(Complex64::from_polar(1.0, theta)).norm() - 1.0).abs() < 1e-10);
        }

        #[test]
        fn interpolation_meets_targets(angles in prop::collection::vec(-PI..PI, 2..6)) {
            let targets: Vec<_> = angles.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
            let i = interpolate_roots_of_unity_with(&targets, &InterpolationConfig::default()).unwrap();
            prop_assert!(i.product.degree() <= targets.len());
            prop_assert!(i.product.zeros().iter().all(|z| z.norm() < 1.0));
            for (mu, t) in roots_of_unity(targets.len()).iter().zip(&targets) {
                prop_assert!((i.product.eval(*mu) - t).norm() < 1e-8);
            }
        }
    }
}
