//! The cross-module invariant suite behind `diffrakt verify`: every check
//! prints one PASS/FAIL line with its measured value.  A mutation hook
//! deliberately perturbs the GAF transform so the suite's sensitivity can
//! be demonstrated end to end.

use std::f64::consts::PI;

use crate::analytic::{
    diffraction_pair, gaf_g, gaf_h, gaf_i, gaf_kpoint, kpoint_determinantal, ProcessKind,
    ProcessSpec, NONUNIQUENESS_RHO3_K1, NONUNIQUENESS_RHO3_K2,
};
use crate::kernels::{KernelFamily, KernelSpec};
use crate::measures::RadialProfile;
use crate::numerics::{integrate_halfline, radial_fourier, riemann_zeta, QuadratureSpec};

#[derive(Clone, Debug)]
pub struct InvariantResult {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub detail: String,
}

impl InvariantResult {
    fn new(name: &str, pass: bool, measured: f64, detail: impl Into<String>) -> Self {
        InvariantResult {
            name: name.into(),
            pass,
            measured,
            detail: detail.into(),
        }
    }
}

/// Known fault injections for mutation testing of the suite itself.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mutation {
    /// Perturbs the k = 2 series coefficient of h by 0.1%.
    GafH,
}

impl Mutation {
    pub fn parse(name: &str) -> Option<Mutation> {
        match name {
            "gaf-h" => Some(Mutation::GafH),
            _ => None,
        }
    }
}

fn det_spec(family: KernelFamily, p: f64) -> ProcessSpec {
    ProcessSpec::new(ProcessKind::Determinantal(
        KernelSpec::new(family, p).expect("valid kernel"),
    ))
    .expect("valid process")
}

fn perm_spec(family: KernelFamily) -> ProcessSpec {
    ProcessSpec::new(ProcessKind::Permanental(
        KernelSpec::unthinned(family).expect("valid kernel"),
    ))
    .expect("valid process")
}

/// Runs the full invariant suite; `mutation` injects a deliberate fault.
pub fn run_invariants(mutation: Option<Mutation>) -> Vec<InvariantResult> {
    let mut out = Vec::new();

    // --- numerics -------------------------------------------------------
    let zeta3 = riemann_zeta(3.0).expect("s > 1");
    out.push(InvariantResult::new(
        "numerics.zeta3-regression-pin",
        (zeta3 - 1.2020569032).abs() <= 1e-9,
        zeta3,
        "zeta(3) within 1e-9 of the summation-oracle pin",
    ));

    {
        // Plancherel round-trip through the transform and back
        let inner = QuadratureSpec {
            abs_tol: 1e-11,
            rel_tol: 1e-11,
            max_subdivisions: 4000,
            tail_cutoff: 6.0,
        };
        let outer = QuadratureSpec {
            abs_tol: 1e-8,
            rel_tol: 1e-8,
            max_subdivisions: 4000,
            tail_cutoff: 5.0,
        };
        let mut worst = 0.0f64;
        for d in [1usize, 2] {
            let g = RadialProfile::new(d, "gauss2pi", |r| (-2.0 * PI * r * r).exp());
            let ghat = RadialProfile::new(d, "ghat", move |s| {
                radial_fourier(&g, s, &inner).expect("inner transform")
            });
            for i in 0..20 {
                let r = 0.08 * i as f64;
                let back = radial_fourier(&ghat, r, &outer).expect("outer transform");
                worst = worst.max((back - (-2.0 * PI * r * r).exp()).abs());
            }
        }
        out.push(InvariantResult::new(
            "numerics.fourier-inversion-roundtrip",
            worst <= 1e-6,
            worst,
            "max |F(F(g)) - g| over 20 radii, d in {1, 2}",
        ));
    }

    // --- kernels ---------------------------------------------------------
    {
        let families = [
            KernelFamily::Sine,
            KernelFamily::Ball { d: 2 },
            KernelFamily::Ball { d: 3 },
            KernelFamily::Gauss { d: 1 },
            KernelFamily::Gauss { d: 2 },
            KernelFamily::Exponential { alpha: 0.5 },
            KernelFamily::CompoundPoissonA,
            KernelFamily::CompoundPoissonB,
            KernelFamily::Ginibre,
        ];
        let mut worst = f64::NEG_INFINITY;
        let mut all_ok = true;
        for family in families {
            let v = KernelSpec::unthinned(family)
                .expect("valid")
                .integral_of_g()
                .expect("quadrature");
            worst = worst.max(v);
            all_ok &= v <= 1.0 + 1e-8;
        }
        out.push(InvariantResult::new(
            "kernels.integral-of-g-at-most-one",
            all_ok,
            worst,
            "max int g over the catalog (variance bound)",
        ));
    }

    {
        let expect = [
            (KernelFamily::Sine, true),
            (KernelFamily::Ball { d: 2 }, true),
            (KernelFamily::Gauss { d: 2 }, false),
            (KernelFamily::Exponential { alpha: 0.5 }, false),
        ];
        let mut ok = true;
        let mut detail = String::new();
        for (family, want) in expect {
            let (got, ghat0) = KernelSpec::unthinned(family)
                .expect("valid")
                .is_self_reproducing()
                .expect("quadrature");
            ok &= got == want;
            detail.push_str(&format!("{family:?}: ghat(0)={ghat0:.6}; "));
        }
        out.push(InvariantResult::new(
            "kernels.self-reproducing-classification",
            ok,
            f64::NAN,
            detail,
        ));
    }

    {
        let ka = KernelSpec::unthinned(KernelFamily::CompoundPoissonA).expect("valid");
        let kb = KernelSpec::unthinned(KernelFamily::CompoundPoissonB).expect("valid");
        let mut worst = 0.0f64;
        for i in 0..1000 {
            let x = -4.0 + 8.0 * i as f64 / 999.0;
            let m1 = ka.kernel_value(&[x], &[0.0]).expect("1-D").norm_sqr();
            let m2 = kb.kernel_value(&[x], &[0.0]).expect("1-D").norm_sqr();
            worst = worst.max((m1 - m2).abs());
        }
        out.push(InvariantResult::new(
            "kernels.nonuniqueness-same-autocorrelation",
            worst <= 1e-12,
            worst,
            "max | |K1|^2 - |K2|^2 | on a 1e3 grid",
        ));
        let pts = vec![vec![0.0], vec![1.0 / 3.0], vec![0.5]];
        let r1 = kpoint_determinantal(&ka, &pts).expect("det");
        let r2 = kpoint_determinantal(&kb, &pts).expect("det");
        let gap = (r1 - r2).abs();
        let pinned = (r1 - NONUNIQUENESS_RHO3_K1).abs() < 1e-10
            && (r2 - NONUNIQUENESS_RHO3_K2).abs() < 1e-10;
        out.push(InvariantResult::new(
            "kernels.nonuniqueness-three-point-gap",
            gap > 1e-6 && pinned,
            gap,
            "rho3 differs between K1 and K2 at {0, 1/3, 1/2} (golden-pinned)",
        ));
    }

    // --- analytic ---------------------------------------------------------
    {
        let mut ok = true;
        let mut worst_det: f64 = 0.0;
        let mut min_perm = f64::INFINITY;
        for family in [
            KernelFamily::Sine,
            KernelFamily::Ball { d: 2 },
            KernelFamily::Gauss { d: 2 },
            KernelFamily::Exponential { alpha: 0.5 },
            KernelFamily::Ginibre,
        ] {
            let (_, det_hat) = diffraction_pair(&det_spec(family, 1.0)).expect("pair");
            for i in 0..200 {
                let t = 0.025 * i as f64;
                let v = det_hat.ac_density(t);
                ok &= (-1e-12..=1.0 + 1e-12).contains(&v);
                worst_det = worst_det.max(v);
            }
        }
        for family in [KernelFamily::Sine, KernelFamily::Gauss { d: 2 }] {
            let (_, perm_hat) = diffraction_pair(&perm_spec(family)).expect("pair");
            for i in 0..200 {
                let t = 0.025 * i as f64;
                let v = perm_hat.ac_density(t);
                ok &= v >= 1.0 - 1e-12;
                min_perm = min_perm.min(v);
            }
        }
        out.push(InvariantResult::new(
            "analytic.diffraction-density-bounds",
            ok,
            worst_det,
            format!("det density <= 1, perm density >= 1 (min {min_perm:.6})"),
        ));
    }

    {
        let (gamma, gamma_hat) =
            diffraction_pair(&det_spec(KernelFamily::Ginibre, 1.0)).expect("pair");
        let mut worst = 0.0f64;
        for i in 0..=200 {
            let r = 0.02 * i as f64;
            worst = worst.max((gamma.ac_density(r) - gamma_hat.ac_density(r)).abs());
        }
        out.push(InvariantResult::new(
            "analytic.ginibre-self-duality",
            worst <= 1e-12,
            worst,
            "max |gamma_ac - gamma_hat_ac| on a grid",
        ));
    }

    {
        let mut worst = 0.0f64;
        for p in [0.25, 0.1] {
            let (_, gamma_hat) = diffraction_pair(&det_spec(KernelFamily::Sine, p)).expect("pair");
            let mut sup: f64 = 0.0;
            for i in 0..=400 {
                let t = 0.01 * i as f64;
                sup = sup.max((gamma_hat.ac_density(t) - 1.0).abs());
            }
            worst = worst.max((sup - p).abs());
        }
        out.push(InvariantResult::new(
            "analytic.thinning-poisson-limit",
            worst <= 1e-12,
            worst,
            "sup deviation from the flat density equals p for p in {0.25, 0.1}",
        ));
    }

    {
        // GAF transform consistency, the mutation target
        let g = RadialProfile::new(2, "gaf-g", |r| gaf_g(r).expect("r >= 0"));
        let qspec = QuadratureSpec {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            max_subdivisions: 20_000,
            tail_cutoff: 5.0,
        };
        let h_used = |s: f64| -> f64 {
            let mut v = gaf_h(s).expect("s in range");
            if mutation == Some(Mutation::GafH) {
                // 0.1% perturbation of the k = 2 coefficient pi^2 s^4 zeta(3)
                v += 1e-3 * PI * PI * s.powi(4) * 1.2020569031595943;
            }
            v
        };
        let mut worst = 0.0f64;
        for i in 0..=20 {
            let s = 0.1 * i as f64;
            let quad = radial_fourier(&g, s, &qspec).expect("transform");
            worst = worst.max((h_used(s) - quad).abs());
        }
        out.push(InvariantResult::new(
            "analytic.gaf-transform-consistency",
            worst <= 1e-6,
            worst,
            "max |h(s) - F(g)(s)| for s in [0, 2]",
        ));
    }

    {
        let spec = QuadratureSpec {
            abs_tol: 1e-11,
            rel_tol: 1e-11,
            max_subdivisions: 8000,
            tail_cutoff: 110.0,
        };
        let mut worst = 0.0f64;
        for alpha in [0.0, 0.5, 1.0, 2.0, 3.0] {
            let quad = integrate_halfline(
                |u: f64| u.powf(alpha) * crate::analytic::gaf_phi(u).expect("u >= 0"),
                &spec,
            )
            .expect("quadrature");
            worst = worst.max((quad - gaf_i(alpha).expect("alpha >= 0")).abs());
        }
        out.push(InvariantResult::new(
            "analytic.gaf-moment-lemma",
            worst <= 1e-8,
            worst,
            "max |int u^a phi - a(1-a)Gamma(a+1)zeta(a+1)| over a in {0, .5, 1, 2, 3}",
        ));
    }

    {
        let mut worst = 0.0f64;
        for r in [0.2, 0.5, 1.0, 2.0] {
            let rho = gaf_kpoint(
                &[num_complex::Complex64::new(0.0, 0.0), num_complex::Complex64::new(r, 0.0)],
                PI,
            )
            .expect("kpoint");
            worst = worst.max((rho - (1.0 - gaf_g(r).expect("r >= 0"))).abs());
        }
        out.push(InvariantResult::new(
            "analytic.gaf-two-point-consistency",
            worst <= 1e-8,
            worst,
            "max |rho2(0, r) - (1 - g(r))| over four radii",
        ));
    }

    out
}
