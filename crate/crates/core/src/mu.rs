//! Structured singular value on 2×2 matrices.
//!
//! For a structure `E` the quantity is `1 / inf { ‖X‖ : X ∈ E, det(I - AX) = 0 }`,
//! with `mu = 0` when no structured `X` makes `I - AX` singular.
//!
//! For the two nontrivial structures the singularity constraint is solved for
//! one coordinate in closed form, leaving a function of a single complex
//! variable `x`. Its infimum is searched over circles `|x| = rho`: on each
//! circle the best angle is found exactly, and interval lower bounds in `rho`
//! follow from the minimum modulus principle (a nonvanishing holomorphic
//! function attains its least modulus on an annulus at the boundary).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::domains::{PentaPoint, TetraPoint};
use crate::matrix2::{op_norm, quadratic_roots, spectral_radius, Mat2};
use crate::roots::polynomial_roots;

pub const DEFAULT_RESOLUTION: f64 = 1e-4;

/// Number of equal radial intervals the first level is split into.
const INITIAL_INTERVALS: usize = 64;
/// Refinement levels are capped; each level halves every surviving interval.
const MAX_LEVELS: usize = 80;
const MAX_INTERVALS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Structure {
    Full,
    Scalar,
    Diag,
    PentaSpan,
}

impl std::str::FromStr for Structure {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "full" => Ok(Structure::Full),
            "scalar" => Ok(Structure::Scalar),
            "diag" => Ok(Structure::Diag),
            "pentaSpan" => Ok(Structure::PentaSpan),
            _ => Err(crate::error::Error::InvalidInput(format!(
                "unknown structure {s:?}"
            ))),
        }
    }
}

/// Two-sided enclosure of `mu`.
///
/// `lower` is backed by an explicit singularizing perturbation (kept in
/// `witness`); `upper` comes from lower bounds on the infimum over every part
/// of the search range that was discarded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuBracket {
    pub lower: f64,
    pub upper: f64,
    pub structure: Structure,
    #[serde(skip)]
    pub witness: Option<Mat2>,
}

impl MuBracket {
    fn exact(value: f64, structure: Structure) -> Self {
        MuBracket {
            lower: value,
            upper: value,
            structure,
            witness: None,
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

pub fn mu(a: &Mat2, structure: Structure, resolution: f64) -> MuBracket {
    let resolution = if resolution > 0.0 {
        resolution
    } else {
        DEFAULT_RESOLUTION
    };
    match structure {
        Structure::Full => MuBracket::exact(op_norm(a), structure),
        Structure::Scalar => MuBracket::exact(spectral_radius(a), structure),
        Structure::Diag => mu_diag(a, resolution),
        Structure::PentaSpan => mu_penta_span(a, resolution),
    }
}

/// Ordered from inside to outside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Membership {
    Inside,
    BoundaryBand,
    Outside,
}

fn membership(b: &MuBracket, tol: f64) -> Membership {
    if b.upper < 1.0 - tol {
        Membership::Inside
    } else if b.lower > 1.0 + tol {
        Membership::Outside
    } else {
        Membership::BoundaryBand
    }
}

/// Matrix with diagonal `(x1, x2)` and determinant `x3`, off-diagonal entries
/// of equal modulus.
pub fn realize_tetra(x: &TetraPoint) -> Mat2 {
    let w = x.x1 * x.x2 - x.x3;
    let half = w.sqrt();
    Mat2::new(x.x1, half, half, x.x2)
}

/// Matrix with `a21 = a`, trace `s` and determinant `p`.
pub fn realize_penta(q: &PentaPoint) -> Mat2 {
    let zero = Complex64::new(0.0, 0.0);
    if q.a.norm() > 1e-9 {
        let h = q.s / 2.0;
        Mat2::new(h, (h * h - q.p) / q.a, q.a, h)
    } else {
        let [l1, l2] = quadratic_roots(q.s, q.p);
        Mat2::new(l1, zero, q.a, l2)
    }
}

pub fn in_tetra(x: &TetraPoint, tol: f64, resolution: f64) -> Membership {
    membership(&mu(&realize_tetra(x), Structure::Diag, resolution), tol)
}

pub fn in_penta(q: &PentaPoint, tol: f64, resolution: f64) -> Membership {
    membership(
        &mu(&realize_penta(q), Structure::PentaSpan, resolution),
        tol,
    )
}

/// The reduced one-variable problem: minimise `combine(|x|, m)` where `m` is the
/// modulus of the solved coordinate, nondecreasing in both arguments.
trait Radial {
    /// Least modulus of the solved coordinate on `|x| = rho`, and an `x` attaining it.
    fn circle_min(&self, rho: f64) -> (f64, Complex64);
    /// Moduli of the points where the solved coordinate vanishes.
    fn zero_moduli(&self) -> &[f64];
    fn combine(&self, rho: f64, m: f64) -> f64;
    fn witness(&self, x: Complex64) -> Mat2;

    /// `‖X‖` of the perturbation built from `x`.
    fn value_at(&self, x: Complex64) -> f64 {
        op_norm(&self.witness(x))
    }
}

/// Perturbation `diag(x1, x2)`, constraint `1 - a11 x1 - a22 x2 + det x1 x2 = 0`,
/// solved as `x2 = (1 - a11 x1) / (a22 - det x1)`.
struct DiagProblem {
    a11: Complex64,
    a22: Complex64,
    det: Complex64,
    zeros: Vec<f64>,
}

impl DiagProblem {
    fn solve(&self, x1: Complex64) -> Complex64 {
        (1.0 - self.a11 * x1) / (self.a22 - self.det * x1)
    }
}

impl Radial for DiagProblem {
    fn circle_min(&self, rho: f64) -> (f64, Complex64) {
        // The circle |x1| = rho maps to {w : K|w|^2 - 2 Re(w conj(g)) + C = 0}.
        let r2 = rho * rho;
        let k = self.a22.norm_sqr() - r2 * self.det.norm_sqr();
        let g = self.a22.conj() - r2 * self.det.conj() * self.a11;
        let c = 1.0 - r2 * self.a11.norm_sqr();
        let gn = g.norm();
        let disc = (gn * gn - k * c).max(0.0).sqrt();
        let dir = if gn > 0.0 {
            g / gn
        } else {
            Complex64::new(1.0, 0.0)
        };
        // Points of the image on the line through 0 and the centre: K t^2 - 2|g| t + C = 0.
        let mut candidates = Vec::with_capacity(2);
        if gn + disc > 0.0 {
            candidates.push(c / (gn + disc));
        }
        if k != 0.0 {
            candidates.push((gn + disc) / k);
        }
        let t = candidates
            .into_iter()
            .min_by(|x, y| x.abs().total_cmp(&y.abs()))
            .unwrap_or(f64::INFINITY);
        if !t.is_finite() {
            return (f64::INFINITY, Complex64::new(rho, 0.0));
        }
        let w = dir * t;
        // x1 = M^{-1}(w)
        let x1 = (1.0 - self.a22 * w) / (self.a11 - self.det * w);
        (t.abs(), x1)
    }

    fn zero_moduli(&self) -> &[f64] {
        &self.zeros
    }

    fn combine(&self, rho: f64, m: f64) -> f64 {
        rho.max(m)
    }

    fn witness(&self, x: Complex64) -> Mat2 {
        Mat2::diag(x, self.solve(x))
    }
}

/// Perturbation `x I + y E12`; with `q(x) = 1 - s x + p x^2` the constraint is
/// `q(x) = a y`, and `‖X‖ = |y|/2 + sqrt(|x|^2 + |y|^2/4)`.
struct PentaProblem {
    a: Complex64,
    s: Complex64,
    p: Complex64,
    zeros: Vec<f64>,
}

impl PentaProblem {
    fn q(&self, x: Complex64) -> Complex64 {
        1.0 - self.s * x + self.p * x * x
    }
}

impl Radial for PentaProblem {
    fn circle_min(&self, rho: f64) -> (f64, Complex64) {
        if rho == 0.0 {
            return (1.0, Complex64::new(0.0, 0.0));
        }
        // |q(rho u)|^2 = sum_k c_k u^k on |u| = 1; stationary angles are the
        // unimodular roots of sum_k k c_k u^{k+2}.
        let qc = [Complex64::new(1.0, 0.0), -self.s * rho, self.p * rho * rho];
        let mut c = [Complex64::new(0.0, 0.0); 5];
        for (j, qj) in qc.iter().enumerate() {
            for (l, ql) in qc.iter().enumerate() {
                c[j + 2 - l] += qj * ql.conj();
            }
        }
        let poly: Vec<Complex64> = (0..5).rev().map(|i| c[i] * (i as f64 - 2.0)).collect();
        let mut candidates: Vec<Complex64> = (0..8)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::PI * k as f64 / 4.0))
            .collect();
        if let Ok(roots) = polynomial_roots(&poly) {
            candidates.extend(
                roots
                    .into_iter()
                    .filter(|u| u.norm() > 0.0)
                    .map(|u| u / u.norm()),
            );
        }
        candidates
            .into_iter()
            .map(|u| {
                let x = u * rho;
                (self.q(x).norm(), x)
            })
            .min_by(|x, y| x.0.total_cmp(&y.0))
            .expect("candidate list is nonempty")
    }

    fn zero_moduli(&self) -> &[f64] {
        &self.zeros
    }

    fn combine(&self, rho: f64, m: f64) -> f64 {
        let y = m / self.a.norm();
        y / 2.0 + (rho * rho + y * y / 4.0).sqrt()
    }

    fn witness(&self, x: Complex64) -> Mat2 {
        let zero = Complex64::new(0.0, 0.0);
        Mat2::new(x, self.q(x) / self.a, zero, x)
    }
}

#[derive(Debug, Clone, Copy)]
struct Interval {
    r0: f64,
    r1: f64,
    m0: f64,
    m1: f64,
    /// Lower bound inherited from the parent, used if refinement stops early.
    parent_lb: f64,
}

/// Candidate perturbations `(norm, x)` known to satisfy the constraint.
fn minimize_radial<P: Radial>(
    problem: &P,
    seeds: &[(f64, Complex64)],
    resolution: f64,
    structure: Structure,
) -> MuBracket {
    let (mut best, mut best_x) = seeds
        .iter()
        .copied()
        .filter(|s| s.0.is_finite())
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .unwrap_or((f64::INFINITY, Complex64::new(0.0, 0.0)));
    if !best.is_finite() {
        return MuBracket::exact(0.0, structure);
    }
    let big_r = best;
    let update = |rho: f64, m: f64, x: Complex64, best: &mut f64, best_x: &mut Complex64| {
        // screen with the radial value, then score by the perturbation actually built
        if problem.combine(rho, m) >= *best {
            return;
        }
        let v = problem.value_at(x);
        if v < *best {
            *best = v;
            *best_x = x;
        }
    };

    let mut edges = Vec::with_capacity(INITIAL_INTERVALS + 1);
    for i in 0..=INITIAL_INTERVALS {
        let rho = big_r * i as f64 / INITIAL_INTERVALS as f64;
        let (m, x) = problem.circle_min(rho);
        update(rho, m, x, &mut best, &mut best_x);
        edges.push((rho, m));
    }
    let mut active: Vec<Interval> = edges
        .windows(2)
        .map(|w| Interval {
            r0: w[0].0,
            r1: w[1].0,
            m0: w[0].1,
            m1: w[1].1,
            parent_lb: 0.0,
        })
        .collect();

    let lower_bound = |iv: &Interval| -> f64 {
        let contains_zero = problem
            .zero_moduli()
            .iter()
            .any(|&z| z >= iv.r0 && z <= iv.r1);
        let m = if contains_zero { 0.0 } else { iv.m0.min(iv.m1) };
        problem.combine(iv.r0, m)
    };

    let mut floor = f64::INFINITY;
    for _ in 0..MAX_LEVELS {
        if active.is_empty() {
            break;
        }
        // Prune against mu-resolution: 1/lb - 1/best <= resolution.
        let threshold = best / (1.0 + resolution * best);
        let mut next = Vec::new();
        for iv in &active {
            let lb = lower_bound(iv);
            if lb >= threshold {
                floor = floor.min(lb);
                continue;
            }
            if next.len() + 2 > MAX_INTERVALS {
                floor = floor.min(lb);
                continue;
            }
            let mid = 0.5 * (iv.r0 + iv.r1);
            let (m, x) = problem.circle_min(mid);
            update(mid, m, x, &mut best, &mut best_x);
            next.push(Interval {
                r0: iv.r0,
                r1: mid,
                m0: iv.m0,
                m1: m,
                parent_lb: lb,
            });
            next.push(Interval {
                r0: mid,
                r1: iv.r1,
                m0: m,
                m1: iv.m1,
                parent_lb: lb,
            });
        }
        active = next;
    }
    for iv in &active {
        floor = floor.min(iv.parent_lb);
    }
    let inf_lower = floor.min(best);
    MuBracket {
        lower: 1.0 / best,
        upper: if inf_lower > 0.0 {
            1.0 / inf_lower
        } else {
            f64::INFINITY
        },
        structure,
        witness: Some(problem.witness(best_x)),
    }
}

fn mu_diag(a: &Mat2, resolution: f64) -> MuBracket {
    let (a11, a22, det) = (a.a11, a.a22, a.det());
    let scale = a11.norm() * a22.norm() + det.norm();
    if (det - a11 * a22).norm() <= 1e-15 * scale.max(f64::MIN_POSITIVE) {
        // Constraint factors as (1 - a11 x1)(1 - a22 x2) = 0.
        let zero = Complex64::new(0.0, 0.0);
        let value = a11.norm().max(a22.norm());
        let witness = if value == 0.0 {
            None
        } else if a11.norm() >= a22.norm() {
            Some(Mat2::diag(1.0 / a11, zero))
        } else {
            Some(Mat2::diag(zero, 1.0 / a22))
        };
        return MuBracket {
            lower: value,
            upper: value,
            structure: Structure::Diag,
            witness,
        };
    }
    let zeros = if a11.norm() > 0.0 {
        vec![1.0 / a11.norm()]
    } else {
        Vec::new()
    };
    let problem = DiagProblem {
        a11,
        a22,
        det,
        zeros,
    };
    let mut seeds = Vec::new();
    if a11.norm() > 0.0 {
        seeds.push((1.0 / a11.norm(), 1.0 / a11));
    }
    if a22.norm() > 0.0 {
        // x1 = 0, x2 = 1/a22
        seeds.push((1.0 / a22.norm(), Complex64::new(0.0, 0.0)));
    }
    // x1 = x2 = t with 1 - (a11 + a22) t + det t^2 = 0
    let tr = a11 + a22;
    let balanced: Vec<Complex64> = if det.norm() > 0.0 {
        polynomial_roots(&[det, -tr, Complex64::new(1.0, 0.0)]).unwrap_or_default()
    } else if tr.norm() > 0.0 {
        vec![1.0 / tr]
    } else {
        Vec::new()
    };
    for t in balanced {
        seeds.push((t.norm(), t));
    }
    let seeds: Vec<_> = seeds
        .into_iter()
        .map(|(_, x)| (problem.value_at(x), x))
        .collect();
    minimize_radial(&problem, &seeds, resolution, Structure::Diag)
}

fn mu_penta_span(a: &Mat2, resolution: f64) -> MuBracket {
    let (s, p, a21) = (a.trace(), a.det(), a.a21);
    if a21.norm() == 0.0 {
        // The y-direction drops out; only scalar perturbations remain.
        let r = spectral_radius(a);
        return MuBracket::exact(r, Structure::PentaSpan);
    }
    let inv_roots: Vec<Complex64> = a
        .eigenvalues()
        .into_iter()
        .filter(|l| l.norm() > 0.0)
        .map(|l| 1.0 / l)
        .collect();
    let zeros = inv_roots.iter().map(|x| x.norm()).collect();
    let problem = PentaProblem {
        a: a21,
        s,
        p,
        zeros,
    };
    let mut seeds: Vec<(f64, Complex64)> = inv_roots.iter().map(|&x| (x.norm(), x)).collect();
    seeds.push((problem.combine(0.0, 1.0), Complex64::new(0.0, 0.0)));
    let seeds: Vec<_> = seeds
        .into_iter()
        .map(|(_, x)| (problem.value_at(x), x))
        .collect();
    minimize_radial(&problem, &seeds, resolution, Structure::PentaSpan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zero() -> Complex64 {
        c(0.0, 0.0)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, size: f64) -> Mat2 {
        let mut e = || c(rng.gen_range(-size..size), rng.gen_range(-size..size));
        Mat2::new(e(), e(), e(), e())
    }

    /// For two scalar blocks the diagonal similarity bound is exact:
    /// `inf_d ‖[[a11, d a12], [a21 / d, a22]]‖` over `d > 0`, by golden section in `log d`.
    fn d_scaling(a: &Mat2) -> f64 {
        let f = |t: f64| {
            let d = t.exp();
            op_norm(&Mat2::new(a.a11, a.a12 * d, a.a21 / d, a.a22))
        };
        let (mut lo, mut hi) = (-40.0f64, 40.0f64);
        let g = (5.0f64.sqrt() - 1.0) / 2.0;
        for _ in 0..300 {
            let m1 = hi - g * (hi - lo);
            let m2 = lo + g * (hi - lo);
            if f(m1) < f(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        f(0.5 * (lo + hi))
    }

    /// Smallest-modulus `y` with `alpha + beta y = 0`.
    fn solve_affine(alpha: Complex64, beta: Complex64) -> Option<Complex64> {
        if beta.norm() > 1e-13 {
            Some(-alpha / beta)
        } else if alpha.norm() <= 1e-13 {
            Some(c(0.0, 0.0))
        } else {
            None
        }
    }

    /// Brute-force polar grid over `x`, solving the other coordinate directly
    /// from `det(I - AX) = 0`. Returns `1 / min ‖X‖`, a lower estimate of mu.
    fn grid_mu(a: &Mat2, structure: Structure, radius: f64, n: usize) -> f64 {
        let one = c(1.0, 0.0);
        let mut best = f64::INFINITY;
        for i in 0..=n {
            for j in 0..(4 * n) {
                let x = Complex64::from_polar(
                    radius * i as f64 / n as f64,
                    2.0 * std::f64::consts::PI * j as f64 / (4 * n) as f64,
                );
                let norm = match structure {
                    Structure::Diag => {
                        // det(I - diag(x, y) A) is affine in y: alpha + beta y = 0
                        let alpha = one - a.a11 * x;
                        let beta = -(a.a22 - a.det() * x);
                        let y = match solve_affine(alpha, beta) {
                            Some(y) => y,
                            None => continue,
                        };
                        x.norm().max(y.norm())
                    }
                    Structure::PentaSpan => {
                        let xm = Mat2::new(x, zero(), zero(), x);
                        let alpha = (Mat2::identity_minus_product(a, &xm)).det();
                        let e12 = Mat2::new(x, one, zero(), x);
                        let beta = Mat2::identity_minus_product(a, &e12).det() - alpha;
                        let y = match solve_affine(alpha, beta) {
                            Some(y) => y,
                            None => continue,
                        };
                        op_norm(&Mat2::new(x, y, zero(), x))
                    }
                    _ => unreachable!(),
                };
                best = best.min(norm);
            }
        }
        if best.is_finite() {
            1.0 / best
        } else {
            0.0
        }
    }

    impl Mat2 {
        fn identity_minus_product(a: &Mat2, x: &Mat2) -> Mat2 {
            let ax = Mat2::new(
                a.a11 * x.a11 + a.a12 * x.a21,
                a.a11 * x.a12 + a.a12 * x.a22,
                a.a21 * x.a11 + a.a22 * x.a21,
                a.a21 * x.a12 + a.a22 * x.a22,
            );
            Mat2::new(1.0 - ax.a11, -ax.a12, -ax.a21, 1.0 - ax.a22)
        }
    }

    fn assert_witness(b: &MuBracket, a: &Mat2) {
        if let Some(x) = b.witness {
            let m = Mat2::identity_minus_product(a, &x);
            assert!(m.det().norm() < 1e-9, "witness not singular: {:?}", m.det());
            let gap = (op_norm(&x) - 1.0 / b.lower).abs();
            assert!(gap < 1e-9 * (1.0 + 1.0 / b.lower), "{a:?} {b:?} gap {gap}");
        }
    }

    #[test]
    fn zero_matrix_gives_zero_for_all_structures() {
        for s in [
            Structure::Full,
            Structure::Scalar,
            Structure::Diag,
            Structure::PentaSpan,
        ] {
            let b = mu(&Mat2::default(), s, 1e-4);
            assert_eq!((b.lower, b.upper), (0.0, 0.0));
        }
    }

    #[test]
    fn diagonal_matrix_diag_structure() {
        let a = Mat2::diag(c(0.5, 0.0), c(0.3, 0.0));
        let b = mu(&a, Structure::Diag, 1e-6);
        assert!(b.lower <= 0.5 + 1e-12 && b.upper >= 0.5 - 1e-12 && b.width() <= 1e-6);
        assert!((grid_mu(&a, Structure::Diag, 3.0, 60) - 0.5).abs() < 1e-9);
    }

    #[test]
    fn nilpotent_diag_is_zero() {
        let a = Mat2::new(zero(), c(1.0, 0.0), zero(), zero());
        let b = mu(&a, Structure::Diag, 1e-4);
        assert_eq!((b.lower, b.upper), (0.0, 0.0));
    }

    #[test]
    fn diagonal_matrix_penta_span() {
        let a = Mat2::diag(c(0.2, 0.4), c(-0.7, 0.1));
        let expected = a.a22.norm();
        let b = mu(&a, Structure::PentaSpan, 1e-6);
        assert!(b.lower <= expected + 1e-12 && b.upper >= expected - 1e-12);
        // the y-direction only enters through a21; a small a21 moves mu continuously
        let mut near = a;
        near.a21 = c(1e-6, 0.0);
        let b = mu(&near, Structure::PentaSpan, 1e-6);
        assert!((b.midpoint() - expected).abs() < 1e-4, "{b:?}");
    }

    #[test]
    fn membership_examples() {
        let t = |a: f64, b: f64, c3: f64| TetraPoint::new(c(a, 0.0), c(b, 0.0), c(c3, 0.0));
        assert_eq!(in_tetra(&t(0.0, 0.0, 0.0), 1e-3, 1e-4), Membership::Inside);
        assert_ne!(in_tetra(&t(0.0, 0.0, 1.0), 1e-3, 1e-4), Membership::Inside);
        assert_eq!(in_tetra(&t(2.0, 0.0, 0.0), 1e-3, 1e-4), Membership::Outside);
        let q = |a: f64, s: f64, p: f64| PentaPoint::new(c(a, 0.0), c(s, 0.0), c(p, 0.0));
        assert_eq!(in_penta(&q(0.0, 0.0, 0.0), 1e-3, 1e-4), Membership::Inside);
        assert_ne!(in_penta(&q(1.0, 0.0, 1.0), 1e-3, 1e-4), Membership::Inside);
        assert_ne!(in_penta(&q(0.0, 2.0, 1.0), 1e-3, 1e-4), Membership::Inside);
    }

    #[test]
    fn tetra_point_on_either_side_of_boundary() {
        // (-0.495i, 0.5i, 0.99) lies inside; the cyclic shift does not.
        let inside = TetraPoint::new(c(0.0, -0.495), c(0.0, 0.5), c(0.99, 0.0));
        let b = mu(&realize_tetra(&inside), Structure::Diag, 1e-8);
        assert!((b.midpoint() - 0.997_49).abs() < 1e-4, "{b:?}");
        let outside = TetraPoint::new(c(0.0, 0.5), c(0.99, 0.0), c(0.0, -0.495));
        let b = mu(&realize_tetra(&outside), Structure::Diag, 1e-8);
        assert!((b.midpoint() - 1.7697).abs() < 1e-3, "{b:?}");
    }

    #[test]
    fn diag_matches_scaling_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let a = random_matrix(&mut rng, 1.0);
            let b = mu(&a, Structure::Diag, 1e-7);
            let oracle = d_scaling(&a);
            assert!(b.width() <= 1e-7 + 1e-12, "{b:?}");
            assert!(
                b.lower <= oracle + 1e-7 && oracle <= b.upper + 1e-7,
                "{b:?} vs {oracle}"
            );
            assert_witness(&b, &a);
        }
    }

    #[test]
    fn structured_values_agree_with_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..40 {
            let a = random_matrix(&mut rng, 1.0);
            for s in [Structure::Diag, Structure::PentaSpan] {
                let b = mu(&a, s, 1e-6);
                let radius = 1.0 / b.lower * 1.01;
                let g = grid_mu(&a, s, radius, 120);
                // grid minima are achieved perturbations, so they cannot beat the bracket
                assert!(g <= b.upper + 1e-9, "{s:?}: grid {g} above {b:?}");
                assert!(g >= b.lower * 0.97, "{s:?}: grid {g} far below {b:?}");
                assert_witness(&b, &a);
            }
        }
    }

    #[test]
    fn determinism() {
        let a = Mat2::new(c(0.3, 0.1), c(-0.2, 0.5), c(0.4, -0.1), c(0.1, 0.2));
        for s in [Structure::Diag, Structure::PentaSpan] {
            assert_eq!(mu(&a, s, 1e-4), mu(&a, s, 1e-4));
        }
    }

    #[test]
    fn json_shape() {
        let b = mu(&Mat2::diag(c(0.5, 0.0), c(0.3, 0.0)), Structure::Diag, 1e-4);
        let v: serde_json::Value = serde_json::to_value(b).unwrap();
        assert_eq!(v["structure"], "diag");
        assert!(v.get("witness").is_none());
        assert_eq!(
            serde_json::to_value(Structure::PentaSpan).unwrap(),
            "pentaSpan"
        );
    }

    fn entry() -> impl Strategy<Value = Complex64> {
        (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| c(re, im))
    }

    proptest! {
        #[test]
        fn ordering_between_radius_and_norm(a11 in entry(), a12 in entry(), a21 in entry(), a22 in entry()) {
            let a = Mat2::new(a11, a12, a21, a22);
            let res = 1e-4;
            for s in [Structure::Diag, Structure::PentaSpan] {
                let b = mu(&a, s, res);
                prop_assert!(b.lower <= b.upper);
                prop_assert!(b.width() <= res + 1e-12);
                prop_assert!(spectral_radius(&a) <= b.upper + res);
                prop_assert!(b.upper <= op_norm(&a) + res);
            }
        }

        #[test]
        fn scale_covariance(a11 in entry(), a12 in entry(), a21 in entry(), a22 in entry(), big in any::<bool>()) {
            let a = Mat2::new(a11, a12, a21, a22);
            let k = if big { 2.0 } else { 0.5 };
            let res = 1e-5;
            for s in [Structure::Diag, Structure::PentaSpan] {
                let b = mu(&a, s, res);
                let bs = mu(&a.scale(c(0.0, k)), s, res);
                prop_assert!(bs.lower <= k * b.upper + 4.0 * res);
                prop_assert!(k * b.lower <= bs.upper + 4.0 * res);
            }
        }
    }
}
