use dcsb::bath::{franck_condon, ExponentMode, PhysParams};
use dcsb::kernels::{
    epsilon_zeta, f_exact, f_high_t, high_t_coefficients, i_term, omega_ib, self_energy,
    sigma_dc_laplace, sigma_dc_time, sigma_nn_laplace, sigma_sb_laplace, FMode, KernelConfig,
    KernelScalars, KernelScale, ModelVariant, TimeKernelForm,
};
use dcsb::numerics::quad::integrate;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn cfg(v: ModelVariant, m: FMode) -> KernelConfig {
    KernelConfig::default().with_variant(v).with_f_mode(m)
}

/// 40 points: 10 on the positive axis, 30 spread over the right half plane
/// and the oscillation region of the left half plane.
fn lambda_grid() -> Vec<Complex64> {
    let mut out: Vec<Complex64> = (0..10).map(|k| c(0.01 * 2f64.powi(k), 0.0)).collect();
    for k in 0..30 {
        let r = 0.05 + 0.2 * k as f64;
        let a = -2.0 + 4.0 * k as f64 / 29.0;
        out.push(Complex64::from_polar(r, a));
    }
    out
}

#[test]
fn dc_at_zero_zeta_reduces_to_sb() {
    for m in [FMode::HighT, FMode::Exact] {
        for g in [0.01, 0.1, 0.3] {
            let p = PhysParams::paper_defaults(g, 0.0);
            for lam in lambda_grid() {
                let dc = sigma_dc_laplace(&p, &cfg(ModelVariant::Dc, m), lam).unwrap();
                let sb = sigma_sb_laplace(&p, &cfg(ModelVariant::Sb, m), lam).unwrap();
                assert!((dc - sb).norm() <= 1e-12 * sb.norm(), "{m:?} γ={g} λ={lam}");
            }
        }
    }
}

#[test]
fn real_axis_gives_real_kernel() {
    let p = PhysParams::paper_defaults(0.1, 0.1);
    for lam in [0.1, 1.0, 10.0] {
        for m in [FMode::HighT, FMode::Exact] {
            let s = sigma_dc_laplace(&p, &cfg(ModelVariant::Dc, m), c(lam, 0.0)).unwrap();
            assert!(s.im.abs() <= 1e-12 * s.norm(), "DC {m:?} λ={lam}: {s}");
            let q = p.with_zeta(0.0);
            let s = sigma_nn_laplace(&q, &cfg(ModelVariant::Nn, m), c(lam, 0.0)).unwrap();
            assert!(s.im.abs() <= 1e-10 * s.norm(), "NN {m:?} λ={lam}: {s}");
        }
    }
}

#[test]
fn calibrated_is_twice_the_literal_scale() {
    for v in [ModelVariant::Dc, ModelVariant::Sb, ModelVariant::Nn] {
        let base = cfg(v, FMode::HighT);
        let p = base.effective_params(&PhysParams::paper_defaults(0.2, 0.1));
        for lam in lambda_grid() {
            let a = self_energy(&p, &base.with_scale(KernelScale::Calibrated), lam).unwrap();
            let b = self_energy(&p, &base.with_scale(KernelScale::PaperLiteral), lam).unwrap();
            assert_eq!(a, 2.0 * b, "{v:?} λ={lam}");
        }
    }
}

#[test]
fn free_limit_kernel() {
    let p = PhysParams::paper_defaults(0.0, 0.0);
    let d2 = p.delta_freq().powi(2);
    for m in [FMode::HighT, FMode::Exact] {
        for lam in [0.05, 0.7, 3.0] {
            let s = sigma_dc_laplace(&p, &cfg(ModelVariant::Dc, m), c(lam, 0.0)).unwrap();
            assert!(rel(s, c(d2 / lam, 0.0)) < 1e-14, "{m:?} λ={lam}");
            let nn = sigma_nn_laplace(&p, &cfg(ModelVariant::Nn, m), c(lam, 0.0)).unwrap();
            let want = d2 / lam + d2 * lam / (lam * lam + d2);
            assert!(rel(nn, c(want, 0.0)) < 1e-14);
        }
    }
    for t in [0.0, 1.0, 37.5] {
        let k = sigma_dc_time(&p, &KernelConfig::default(), t).unwrap();
        assert!((k - d2).abs() < 1e-14 * d2);
    }
}

#[test]
fn nn_vanishes_without_tunneling() {
    // Δ = 0 itself is outside the validated domain; Σ_NN ∝ Δ² on the way there.
    let kc = cfg(ModelVariant::Nn, FMode::HighT);
    let lam = c(0.5, 0.2);
    let at = |d: f64| {
        let p = PhysParams::new(26.0, d, 100.0, 0.1, 0.0).unwrap();
        sigma_nn_laplace(&p, &kc, lam).unwrap()
    };
    let (s1, s0) = (at(1e-5), at(1e-6));
    assert!((s0.norm() / s1.norm() - 1e-2).abs() < 1e-10, "{}", s0.norm() / s1.norm());
    assert!(s0.norm() < 1e-11);
}

#[test]
fn sb_rate_at_the_origin_is_positive() {
    let p = PhysParams::paper_defaults(0.1, 0.0);
    let s = sigma_sb_laplace(&p, &cfg(ModelVariant::Sb, FMode::HighT), c(1e-6, 0.0)).unwrap();
    assert!(s.re.is_finite() && s.re > 0.0 && s.im == 0.0, "{s}");
}

#[test]
fn kernel_matches_independent_evaluation() {
    // 30-digit evaluation of the full kernel (both f forms) at γ = ζ = 0.1.
    let p = PhysParams::paper_defaults(0.1, 0.1);
    let cases = [
        (c(1.0, 0.0), c(0.117_703_805_746_691_098_87, 0.0), c(0.117_703_804_974_011_299_11, 0.0)),
        (
            c(0.5, 0.3),
            c(0.139_445_827_768_807_523_23, -0.037_246_237_607_949_799_424),
            c(0.139_445_827_771_659_855_08, -0.037_246_237_768_705_603_412),
        ),
        (
            c(-0.02, 0.2),
            c(0.046_067_703_929_899_388_841, -0.243_939_755_655_208_504_97),
            c(0.046_067_703_930_275_587_762, -0.243_939_755_646_244_814_64),
        ),
    ];
    for (lam, exact, high_t) in cases {
        let e = sigma_dc_laplace(&p, &cfg(ModelVariant::Dc, FMode::Exact), lam).unwrap();
        let h = sigma_dc_laplace(&p, &cfg(ModelVariant::Dc, FMode::HighT), lam).unwrap();
        assert!(rel(e, exact) < 1e-12, "exact λ={lam}: {e} vs {exact}");
        assert!(rel(h, high_t) < 1e-12, "high-T λ={lam}: {h} vs {high_t}");
    }
}

#[test]
fn time_and_laplace_kernels_are_dual() {
    let p = PhysParams::paper_defaults(0.1, 0.1);
    let kc = cfg(ModelVariant::Dc, FMode::Exact);
    let lam = 1.0;
    // t = u^k removes the t^(−2g) singularity at the origin.
    let g = p.gamma_eff();
    let k = 1.0 / (1.0 - 2.0 * g);
    let t_end: f64 = 40.0 / lam;
    let u_end = t_end.powf(1.0 / k);
    let pts: Vec<f64> = (0..=40).map(|i| u_end * i as f64 / 40.0).collect();
    let r = integrate(
        |u: f64| {
            if u == 0.0 {
                return 0.0;
            }
            let t = u.powf(k);
            (-lam * t).exp() * sigma_dc_time(&p, &kc, t).unwrap() * k * u.powf(k - 1.0)
        },
        &pts,
        1e-13,
        1e-11,
        2_000_000,
    )
    .unwrap();
    let want = sigma_dc_laplace(&p, &kc, c(lam, 0.0)).unwrap().re;
    assert!(((r.value - want) / want).abs() < 1e-4, "{} vs {want}", r.value);
}

#[test]
fn finite_cutoff_kernel_at_the_origin() {
    let p = PhysParams::paper_defaults(0.1, 0.1);
    let kc = KernelConfig { time_form: TimeKernelForm::FiniteCutoff, ..KernelConfig::default() };
    let fc = franck_condon(&p, ExponentMode::Rederived);
    let z2 = 1.0 + p.zeta * p.zeta;
    let rho0 = (p.omega_c_freq() * p.mu()).powf(2.0 * p.gamma_eff());
    let want = p.delta_freq().powi(2) * (i_term(&p, fc) + fc * fc * rho0 / (z2 * z2));
    let got = sigma_dc_time(&p, &kc, 0.0).unwrap();
    assert!(((got - want) / want).abs() < 1e-13, "{got} vs {want}");
}

#[test]
fn scalar_examples() {
    let p0 = PhysParams::paper_defaults(0.1, 0.0);
    assert_eq!(epsilon_zeta(&p0), 0.0);
    let p = PhysParams::paper_defaults(0.1, 0.1);
    let eps = epsilon_zeta(&p);
    assert!((eps * p.hbar() - 0.0495).abs() < 5e-5 && (eps - 0.0752).abs() < 5e-5);
    let p1 = PhysParams::paper_defaults(0.1, 1.0);
    assert!((epsilon_zeta(&p1) - p1.delta_freq() / 4.0).abs() < 1e-15);

    assert_eq!(i_term(&p0, 0.7), 0.0);
    for z in [0.1, 0.5, 2.0] {
        let q = p.with_zeta(z);
        let z2 = 1.0 + z * z;
        assert!((i_term(&q, 1.0) - z * z * (2.0 + z * z) / (z2 * z2)).abs() < 1e-15);
    }
    assert!((i_term(&p, 0.9368) - 0.0185).abs() < 5e-5);

    assert_eq!(omega_ib(&p0), 0.0);
    assert_eq!(omega_ib(&PhysParams::paper_defaults(0.0, 0.1)), 0.0);
    assert!((omega_ib(&p) - 0.0637).abs() < 5e-5);
}

#[test]
fn high_t_coefficient_examples() {
    let (nu_r, lam, theta) = high_t_coefficients(0.1).unwrap();
    assert!((lam - (-0.423_754_940_411_076_667_87 + 0.754_926_949_947_051_349_2)).abs() < 1e-13);
    assert!((lam - 0.3312).abs() < 5e-5);
    assert!((nu_r - 0.951_350_769_866_873_147_82 / 1.068_628_702_119_319_354_5).abs() < 1e-13);
    assert!(theta < 0.0);
    assert_eq!(high_t_coefficients(0.0).unwrap(), (1.0, 0.0, 0.0));
    // The reported ν includes cos(πg)Γ(1−2g); 0.98573 exactly, quoted as 0.9856.
    let s = KernelScalars::new(&PhysParams::paper_defaults(0.1, 0.0), &KernelConfig::default()).unwrap();
    assert!((s.nu - 0.985_73).abs() < 1e-5, "{}", s.nu);
}

#[test]
fn f_examples() {
    let p = PhysParams::paper_defaults(0.1, 0.0);
    let mu = p.mu();
    let f0 = f_exact(&p, 0.1, c(0.0, 0.0)).unwrap();
    assert!(rel(f0, c(8.902_538_065_654_993_371_4 * mu, 0.0)) < 1e-13, "{f0}");
    let z = c(1.0, 2.0);
    let a = f_exact(&p, 0.1, z.conj()).unwrap();
    let b = f_exact(&p, 0.1, z).unwrap().conj();
    assert!(rel(a, b) < 1e-15);
    let lam = Complex64::from_polar(0.01 / mu, 0.7);
    let e = f_exact(&p, 0.1, lam).unwrap();
    let h = f_high_t(&p, 0.1, 0.1, lam).unwrap();
    assert!(rel(h, e) <= 1e-3, "{}", rel(h, e));
    let h0 = f_high_t(&p, 0.1, 0.1, c(0.0, 0.0)).unwrap();
    let (nu_r, _, _) = high_t_coefficients(0.1).unwrap();
    assert!(h0.im == 0.0 && (h0.re - mu * nu_r / 0.1).abs() < 1e-15);
}

#[test]
fn sb_and_nn_ignore_zeta() {
    let p = PhysParams::paper_defaults(0.1, 0.1);
    let kc = cfg(ModelVariant::Nn, FMode::HighT);
    assert!(sigma_nn_laplace(&p, &kc, c(1.0, 0.0)).is_err());
    assert_eq!(kc.effective_params(&p).zeta, 0.0);
}

fn variants() -> impl Strategy<Value = (ModelVariant, FMode)> {
    (
        prop_oneof![Just(ModelVariant::Dc), Just(ModelVariant::Sb), Just(ModelVariant::Nn)],
        prop_oneof![Just(FMode::HighT), Just(FMode::Exact)],
    )
}

proptest! {
    #[test]
    fn conjugate_symmetry(
        (v, m) in variants(),
        g in 0.0f64..0.45,
        z in 0.0f64..0.2,
        re in -0.3f64..5.0,
        im in -5.0f64..5.0,
    ) {
        let kc = cfg(v, m);
        let p = kc.effective_params(&PhysParams::paper_defaults(g, z));
        let lam = c(re, im);
        let a = self_energy(&p, &kc, lam.conj());
        let b = self_energy(&p, &kc, lam);
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert!((a - b.conj()).norm() <= 1e-12 * b.norm().max(1e-300));
        }
    }

    #[test]
    fn f_modes_agree_at_small_argument(
        g in 0.01f64..0.3,
        z in 0.0f64..0.1,
        r in 0.0f64..0.01,
        a in -3.1f64..3.1,
    ) {
        let p = PhysParams::paper_defaults(g, z);
        let lam = Complex64::from_polar(r / p.mu(), a);
        let e = sigma_dc_laplace(&p, &cfg(ModelVariant::Dc, FMode::Exact), lam).unwrap();
        let h = sigma_dc_laplace(&p, &cfg(ModelVariant::Dc, FMode::HighT), lam).unwrap();
        prop_assert!(rel(h, e) <= 1e-2, "λ={lam}: {}", rel(h, e));
    }
}
