//! Polynomial roots from elementary symmetric values.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix2::quadratic_roots;

/// Relative backward error above which a computed root is rejected.
pub const ROOT_RESIDUAL_LIMIT: f64 = 1e-7;

/// Elementary symmetric values `(e1, ..., en)` of `z`, by multiplying out
/// `prod (x - z_k)` one factor at a time.
pub fn elementary_symmetric(z: &[Complex64]) -> Vec<Complex64> {
    let n = z.len();
    let mut e = vec![Complex64::new(0.0, 0.0); n + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (k, &zk) in z.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            let prev = e[j - 1];
            e[j] += zk * prev;
        }
    }
    e.split_off(1)
}

/// Monic coefficients, highest degree first: `z^n - e1 z^{n-1} + e2 z^{n-2} - ...`.
fn monic_coefficients(e: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = Vec::with_capacity(e.len() + 1);
    coeffs.push(Complex64::new(1.0, 0.0));
    for (k, &ek) in e.iter().enumerate() {
        coeffs.push(if k % 2 == 0 { -ek } else { ek });
    }
    coeffs
}

/// Horner evaluation returning `(p(z), p'(z), sum |c_k| |z|^k)`.
fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    let r = z.norm();
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
        scale = scale * r + c.norm();
    }
    (p, dp, scale)
}

fn backward_error(coeffs: &[Complex64], z: Complex64) -> f64 {
    let (p, _, scale) = horner(coeffs, z);
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// Roots of `z^n - e1 z^{n-1} + ... + (-1)^n en`.
///
/// Degree 2 uses the cancellation-free quadratic formula; degree three and up
/// take the eigenvalues of the companion matrix (complex Schur form) and polish
/// each with a few Newton steps that are kept only when they reduce the residual.
pub fn roots_from_symmetric(e: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = e.len();
    if e.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidInput(
            "non-finite polynomial coefficient".into(),
        ));
    }
    let roots = match n {
        0 => Vec::new(),
        1 => vec![e[0]],
        2 => quadratic_roots(e[0], e[1]).to_vec(),
        _ => companion_roots(e)?,
    };
    let coeffs = monic_coefficients(e);
    let worst = roots
        .iter()
        .map(|&z| backward_error(&coeffs, z))
        .fold(0.0, f64::max);
    if !(worst <= ROOT_RESIDUAL_LIMIT) {
        return Err(Error::SolverFailure(worst));
    }
    Ok(roots)
}

fn companion_roots(e: &[Complex64]) -> Result<Vec<Complex64>> {
    monic_companion_roots(&monic_coefficients(e))
}

/// Roots of `c[0] z^d + c[1] z^{d-1} + ... + c[d]`. Leading zero coefficients
/// (roots at infinity) are dropped; the result has one entry per finite root.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let start = coeffs.iter().position(|c| c.norm() > 0.0);
    let Some(start) = start else {
        return Err(Error::InvalidInput("zero polynomial".into()));
    };
    let lead = coeffs[start];
    let monic: Vec<_> = coeffs[start..].iter().map(|c| c / lead).collect();
    match monic.len() - 1 {
        0 => Ok(Vec::new()),
        1 => Ok(vec![-monic[1]]),
        2 => Ok(quadratic_roots(-monic[1], monic[2]).to_vec()),
        _ => monic_companion_roots(&monic),
    }
}

fn monic_companion_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for j in 0..n {
        m[(0, j)] = -coeffs[j + 1];
    }
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    let eig = nalgebra::linalg::Schur::new(m)
        .eigenvalues()
        .ok_or(Error::SolverFailure(f64::INFINITY))?;
    Ok(eig.iter().map(|&z| polish(coeffs, z)).collect())
}

fn polish(coeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    let mut err = backward_error(coeffs, z);
    for _ in 0..4 {
        let (p, dp, _) = horner(coeffs, z);
        if dp.norm() == 0.0 || p.norm() == 0.0 {
            break;
        }
        let candidate = z - p / dp;
        let cand_err = backward_error(coeffs, candidate);
        if cand_err < err {
            z = candidate;
            err = cand_err;
        } else {
            break;
        }
    }
    z
}

/// Greedy matching distance between two root multisets of equal size.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for &x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("sizes match");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn symmetric_values_of_double_point() {
        let z = c(0.3, -0.2);
        let e = elementary_symmetric(&[z, z]);
        assert!((e[0] - 2.0 * z).norm() < 1e-15);
        assert!((e[1] - z * z).norm() < 1e-15);
    }

    #[test]
    fn cube_roots_of_unity() {
        let w: Vec<_> = (0..3)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 3.0))
            .collect();
        let e = elementary_symmetric(&w);
        assert!(e[0].norm() < 1e-15);
        assert!(e[1].norm() < 1e-15);
        assert!((e[2] - c(1.0, 0.0)).norm() < 1e-15);
        let r = roots_from_symmetric(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(multiset_distance(&r, &w) < 1e-12);
    }

    #[test]
    fn quadratic_cases() {
        let r = roots_from_symmetric(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(multiset_distance(&r, &[c(0.0, 1.0), c(0.0, -1.0)]) < 1e-15);
        let r = roots_from_symmetric(&[c(2.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(multiset_distance(&r, &[c(1.0, 0.0), c(1.0, 0.0)]) < 1e-15);
    }

    #[test]
    fn repeated_cubic_root_passes_residual_check() {
        let e = elementary_symmetric(&[c(1.0, 0.0); 3]);
        let r = roots_from_symmetric(&e).unwrap();
        assert!(multiset_distance(&r, &[c(1.0, 0.0); 3]) < 1e-4);
    }

    fn roots_vec() -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((0.0..1.0f64, -PI..PI), 1..7).prop_map(|v| {
            v.into_iter()
                .map(|(r, t)| Complex64::from_polar(r, t))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn symmetrize_round_trip(z in roots_vec()) {
            let e = elementary_symmetric(&z);
            let r = roots_from_symmetric(&e).unwrap();
            // round trip compared through the symmetric values, which are well conditioned
            let back = elementary_symmetric(&r);
            for (x, y) in back.iter().zip(&e) {
                prop_assert!((x - y).norm() < 1e-8);
            }
        }

        #[test]
        fn well_separated_roots_are_recovered(
            n in 2usize..7,
            rot in -PI..PI,
            radii in prop::collection::vec(0.2..1.0f64, 6),
        ) {
            let z: Vec<_> = (0..n)
                .map(|k| Complex64::from_polar(radii[k], rot + 2.0 * PI * k as f64 / n as f64))
                .collect();
            let r = roots_from_symmetric(&elementary_symmetric(&z)).unwrap();
            prop_assert!(multiset_distance(&r, &z) < 1e-8);
        }
    }
}
