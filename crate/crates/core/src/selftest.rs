//! Seeded property checks over the whole library, sized by a sample count.

use num_complex::Complex64;
use serde::Serialize;

use crate::automorphisms::{
    image_of_non_triangular_base, image_of_triangular_base, penta_apply, tau_apply,
    tau_blaschke_apply, tetra_apply, AutParams,
};
use crate::blaschke::{interpolate_roots_of_unity_with, roots_of_unity, InterpolationConfig};
use crate::domains::{
    b_gamma2_defect, b_penta_defect, b_tetra_defect, classify_b_penta, classify_b_tetra,
    classify_gamma_n, royal_gamma2, symmetrize, PentaPoint, TetraPoint, Tolerance,
};
use crate::matrix2::{op_norm, project_penta, project_tetra, spectral_radius};
use crate::mu::{in_penta, in_tetra, mu, realize_tetra, Membership, Structure};
use crate::orbits::{decompose_b_gamma2, decompose_b_penta, decompose_b_tetra, penta_a_tilde};
use crate::sampling::Sampler;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    /// Worst observed value of the checked quantity, or a failure description.
    pub detail: String,
}

#[derive(Debug, Clone, Copy)]
pub struct SelftestConfig {
    pub samples: usize,
    pub seed: u64,
    pub resolution: f64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            samples: 1000,
            seed: 0,
            resolution: 1e-4,
        }
    }
}

struct Tracker {
    name: &'static str,
    cases: usize,
    worst: f64,
    failure: Option<String>,
}

impl Tracker {
    fn new(name: &'static str) -> Self {
        Tracker {
            name,
            cases: 0,
            worst: 0.0,
            failure: None,
        }
    }

    fn record(&mut self, value: f64, limit: f64, what: &str) {
        self.cases += 1;
        self.worst = self.worst.max(value);
        if !(value < limit) && self.failure.is_none() {
            self.failure = Some(format!("{what}: {value:e} (limit {limit:e})"));
        }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn finish(self) -> Check {
        Check {
            name: self.name,
            passed: self.failure.is_none(),
            cases: self.cases,
            detail: self
                .failure
                .unwrap_or_else(|| format!("worst {:e}", self.worst)),
        }
    }
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn gamma2_orbits(cfg: &SelftestConfig) -> Check {
    let mut t = Tracker::new("gamma2 orbit decomposition");
    let mut s = Sampler::new(cfg.seed);
    for _ in 0..cfg.samples {
        let g = s.b_gamma2();
        match decompose_b_gamma2(&g, tol()) {
            Ok(d) => {
                t.record(d.residual, 1e-8, "residual");
                let royal = (g.s * g.s - 4.0 * g.p).norm() <= 1e-9;
                t.require(
                    (d.stratum == crate::orbits::DecompositionStratum::RoyalGamma2) == royal,
                    || format!("stratum {:?} disagrees with royal test at {g:?}", d.stratum),
                );
            }
            Err(e) => t.require(false, || format!("{g:?}: {e}")),
        }
    }
    t.finish()
}

fn tetra_orbits(cfg: &SelftestConfig) -> Check {
    let mut t = Tracker::new("tetrablock orbit decomposition");
    let mut s = Sampler::new(cfg.seed.wrapping_add(1));
    for _ in 0..cfg.samples {
        let x = if s.coin(0.5) {
            s.b_tetra_triangular()
        } else {
            s.b_tetra_non_triangular()
        };
        match decompose_b_tetra(&x, tol()) {
            Ok(d) => {
                t.record(d.residual, 1e-8, "residual");
                if let AutParams::Tetra(p) = d.params {
                    let direct = match d.stratum {
                        crate::orbits::DecompositionStratum::TriangularE => {
                            image_of_triangular_base(&p)
                        }
                        _ => image_of_non_triangular_base(&p),
                    };
                    t.record(direct.max_distance(&x), 1e-10, "closed-form image");
                }
            }
            Err(e) => t.require(false, || format!("{x:?}: {e}")),
        }
    }
    t.finish()
}

fn penta_orbits(cfg: &SelftestConfig) -> Check {
    let mut t = Tracker::new("pentablock orbit decomposition");
    let mut s = Sampler::new(cfg.seed.wrapping_add(2));
    for _ in 0..cfg.samples {
        let q = if s.coin(0.5) {
            s.b_penta_royal()
        } else {
            s.b_penta_non_royal()
        };
        match decompose_b_penta(&q, tol()) {
            Ok(d) => {
                t.record(d.residual, 1e-8, "residual");
                if let AutParams::Penta(f) = d.params {
                    match d.stratum {
                        crate::orbits::DecompositionStratum::RoyalP => {
                            t.record(q.a.norm(), 1e-9, "royal |a|")
                        }
                        _ => t.record(
                            (penta_a_tilde(&f.v).norm() - q.a.norm()).abs(),
                            1e-9,
                            "||a~| - |a||",
                        ),
                    }
                }
            }
            Err(e) => t.require(false, || format!("{q:?}: {e}")),
        }
    }
    t.finish()
}

fn invariance(cfg: &SelftestConfig) -> Check {
    let mut t = Tracker::new("stratum invariance under automorphisms");
    let mut s = Sampler::new(cfg.seed.wrapping_add(3));
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    for _ in 0..cfg.samples {
        let v = s.disc_automorphism(0.95);
        let g = s.b_gamma2();
        match tau_apply(&v, &g) {
            Ok(h) => {
                t.record(b_gamma2_defect(&h), 1e-8, "gamma2 defect");
                t.require(royal_gamma2(&g, tol()) == royal_gamma2(&h, tol()), || {
                    format!("royal flag changed at {g:?}")
                });
            }
            Err(e) => t.require(false, || e.to_string()),
        }

        let flip = s.coin(0.5);
        let p = s.tetra_params(0.95, flip);
        for x in [s.b_tetra_non_triangular(), s.b_tetra_triangular()] {
            match tetra_apply(&p, &x) {
                Ok(y) => {
                    t.record(b_tetra_defect(&y), 1e-8, "tetrablock defect");
                    let (a, b) = (
                        classify_b_tetra(&x, tol()).stratum,
                        classify_b_tetra(&y, tol()).stratum,
                    );
                    t.require(a == b, || format!("tetrablock stratum {a:?} -> {b:?}"));
                }
                Err(e) => t.require(false, || e.to_string()),
            }
        }
        let base = tetra_apply(&p, &TetraPoint::new(zero, zero, one));
        if let Ok(b) = base {
            t.record((b.x3.norm() - 1.0).abs(), 1e-10, "|third coordinate| - 1");
            t.require(b.x1.norm() < 1.0, || {
                format!("first coordinate {} not inside", b.x1.norm())
            });
        }

        let f = s.penta_params(0.95);
        for q in [s.b_penta_royal(), s.b_penta_non_royal()] {
            match penta_apply(&f, &q) {
                Ok(r) => {
                    t.record(b_penta_defect(&r), 1e-8, "pentablock defect");
                    let (a, b) = (
                        classify_b_penta(&q, tol()).stratum,
                        classify_b_penta(&r, tol()).stratum,
                    );
                    t.require(a == b, || format!("pentablock stratum {a:?} -> {b:?}"));
                }
                Err(e) => t.require(false, || e.to_string()),
            }
        }
    }
    t.finish()
}

fn blaschke_maps(cfg: &SelftestConfig) -> Check {
    let mut t = Tracker::new("proper maps and boundary interpolation");
    let mut s = Sampler::new(cfg.seed.wrapping_add(4));
    for n in 2..=4 {
        let base = symmetrize(&roots_of_unity(n)).expect("n >= 1");
        for _ in 0..cfg.samples.div_ceil(10) {
            let degree = 1 + (s.uniform(0.0, 3.0) as usize);
            let b = s.blaschke(degree, 0.9);
            match tau_blaschke_apply(&b, &base).and_then(|c| classify_gamma_n(&c, tol())) {
                Ok(class) => t.record(class.defect, 1e-8, "image defect"),
                Err(e) => t.require(false, || e.to_string()),
            }
        }
    }
    let config = InterpolationConfig {
        seed: cfg.seed,
        ..InterpolationConfig::default()
    };
    for n in 2..=5 {
        for _ in 0..cfg.samples.div_ceil(50) {
            let targets: Vec<_> = (0..n).map(|_| s.unimodular()).collect();
            match interpolate_roots_of_unity_with(&targets, &config) {
                Ok(i) => t.record(i.residual, 1e-8, "interpolation residual"),
                Err(e) => t.require(false, || e.to_string()),
            }
        }
    }
    t.finish()
}

fn mu_consistency(cfg: &SelftestConfig) -> Check {
    let mut t = Tracker::new("structured singular value consistency");
    let mut s = Sampler::new(cfg.seed.wrapping_add(5));
    let res = cfg.resolution;
    for _ in 0..cfg.samples.div_ceil(10) {
        let a = s.matrix_in_ball(0.95);
        let tm = in_tetra(&project_tetra(&a), 1e-9, res);
        t.require(tm != Membership::Outside, || {
            format!("tetra projection of {a:?} reported outside")
        });
        let pm = in_penta(&project_penta(&a), 1e-9, res);
        t.require(pm != Membership::Outside, || {
            format!("penta projection of {a:?} reported outside")
        });
        let (r, norm) = (spectral_radius(&a), op_norm(&a));
        for structure in [Structure::Diag, Structure::PentaSpan] {
            let b = mu(&a, structure, res);
            t.require(r - res <= b.lower && b.upper <= norm + res, || {
                format!("{structure:?} bracket {b:?}")
            });
        }
    }
    t.finish()
}

fn flip_counterexample(cfg: &SelftestConfig) -> Check {
    let mut t = Tracker::new("transposition flip versus cyclic shift");
    let i = Complex64::new(0.0, 1.0);
    let x = TetraPoint::new(-0.495 * i, 0.5 * i, Complex64::new(0.99, 0.0));
    let shifted = TetraPoint::new(x.x2, x.x3, x.x1);
    let inside = in_tetra(&x, 1e-9, cfg.resolution);
    let outside = in_tetra(&shifted, 1e-9, cfg.resolution);
    t.require(inside == Membership::Inside, || {
        format!("point classified {inside:?}")
    });
    t.require(outside == Membership::Outside, || {
        format!("cyclic shift classified {outside:?}")
    });
    let b = mu(&realize_tetra(&x), Structure::Diag, cfg.resolution);
    t.worst = b.upper;
    t.finish()
}

fn group_laws(cfg: &SelftestConfig) -> Check {
    let mut t = Tracker::new("composition and inverse round trips");
    let mut s = Sampler::new(cfg.seed.wrapping_add(6));
    let c = Complex64::new;
    let disc_probes = crate::disc::probe_points();
    let tetra_probes = [
        TetraPoint::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)),
        TetraPoint::new(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)),
        TetraPoint::new(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)),
        TetraPoint::new(c(0.3, 0.0), c(0.0, 0.2), c(0.1, 0.0)),
    ];
    let penta_probes = [
        PentaPoint::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)),
        PentaPoint::new(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)),
        PentaPoint::new(c(0.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)),
        PentaPoint::new(c(0.2, 0.1), c(0.3, 0.0), c(0.0, 0.1)),
    ];
    for _ in 0..cfg.samples {
        let (v, w) = (s.disc_automorphism(0.9), s.disc_automorphism(0.9));
        let (vw, vinv) = (v.compose(&w), v.inverse());
        for &z in &disc_probes[..6] {
            t.record(
                (vw.eval(z) - v.eval(w.eval(z))).norm(),
                1e-9,
                "disc composition",
            );
            t.record((vinv.eval(v.eval(z)) - z).norm(), 1e-9, "disc inverse");
        }
        let (fa, fb) = (s.coin(0.5), s.coin(0.5));
        let (a, b) = (s.tetra_params(0.9, fa), s.tetra_params(0.9, fb));
        let (ab, ainv) = (a.compose(&b), a.inverse());
        for x in &tetra_probes {
            let pair = b.apply_unchecked(x).and_then(|y| a.apply_unchecked(&y));
            let direct = ab.apply_unchecked(x);
            match (pair, direct) {
                (Ok(p), Ok(d)) => t.record(p.max_distance(&d), 1e-9, "tetrablock composition"),
                _ => t.require(false, || "tetrablock map undefined at a probe".into()),
            }
            match a.apply_unchecked(x).and_then(|y| ainv.apply_unchecked(&y)) {
                Ok(back) => t.record(back.max_distance(x), 1e-9, "tetrablock inverse"),
                Err(e) => t.require(false, || e.to_string()),
            }
        }
        let (f, g) = (s.penta_params(0.9), s.penta_params(0.9));
        let (fg, finv) = (f.compose(&g), f.inverse());
        for q in &penta_probes {
            let pair = g.apply_unchecked(q).and_then(|y| f.apply_unchecked(&y));
            match (pair, fg.apply_unchecked(q)) {
                (Ok(p), Ok(d)) => t.record(p.max_distance(&d), 1e-9, "pentablock composition"),
                _ => t.require(false, || "pentablock map undefined at a probe".into()),
            }
            match f.apply_unchecked(q).and_then(|y| finv.apply_unchecked(&y)) {
                Ok(back) => t.record(back.max_distance(q), 1e-9, "pentablock inverse"),
                Err(e) => t.require(false, || e.to_string()),
            }
        }
    }
    t.finish()
}

pub fn run(cfg: &SelftestConfig) -> Vec<Check> {
    vec![
        gamma2_orbits(cfg),
        tetra_orbits(cfg),
        penta_orbits(cfg),
        invariance(cfg),
        blaschke_maps(cfg),
        mu_consistency(cfg),
        flip_counterexample(cfg),
        group_laws(cfg),
    ]
}
