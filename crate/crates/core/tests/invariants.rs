use proptest::prelude::*;

use ring_thermo_core::model::{delta_s, energy, spin_current_eigen};
use ring_thermo_core::numerics::{differentiate, euler_maclaurin_z1, stable_boltzmann_sum, DiffScheme};
use ring_thermo_core::{
    canonical_evaluate, canonical_spin_current, grand_evaluate, grand_potential, occupation, Backend, Coupling,
    RingModel, Spectrum, TruncationPolicy, Variant,
};

const STRENGTHS: [f64; 5] = [0.0, 0.3, 0.6, 0.9, 1.2];

fn policy() -> TruncationPolicy {
    TruncationPolicy::default()
}

fn variant() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::Anisotropic), Just(Variant::Isotropic)]
}

fn grid(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| a + (b - a) * i as f64 / (n - 1) as f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn energies_are_non_negative(v in variant(), xi in 0.0f64..5.0, n in 0i64..500, s in 1u8..=2, omega in 1e-3f64..10.0) {
        let model = RingModel::dimensionless(omega, 1.0, 1.0).unwrap();
        let c = Coupling::new(v, xi).unwrap();
        prop_assert!(energy(&model, &c, n, s).unwrap() >= 0.0);
    }

    #[test]
    fn current_kernel_increases_with_n(v in variant(), xi in 0.0f64..50.0, n in 0i64..1000) {
        let model = RingModel::reference();
        let c = Coupling::new(v, xi).unwrap();
        prop_assert!(spin_current_eigen(&model, &c, n + 1).unwrap() > spin_current_eigen(&model, &c, n).unwrap());
    }

    #[test]
    fn physical_spacing_definition(mass in 1e3f64..1e7, radius in 0.1f64..500.0) {
        let m = RingModel::physical(mass, radius).unwrap();
        prop_assert!((m.omega() * 2.0 * m.mass() * m.radius() * m.radius() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn canonical_identities(v in variant(), xi in 0.0f64..1.5, t in 0.02f64..1.0) {
        let c = Coupling::new(v, xi).unwrap();
        let m = RingModel::reference();
        let st = canonical_evaluate(&m, &c, t, Backend::DirectSum, &policy()).unwrap();
        prop_assert!((st.f - (st.u - t * st.s_entropy)).abs() < 1e-8);
        prop_assert!(st.c >= 0.0);
        let scheme = DiffScheme::default();
        let df = differentiate(|x| canonical_evaluate(&m, &c, x, Backend::DirectSum, &policy()).unwrap().f, t, &scheme).unwrap();
        prop_assert!((st.s_entropy + df.value).abs() < 1e-4, "{} vs {}", st.s_entropy, -df.value);
        let ds = differentiate(|x| canonical_evaluate(&m, &c, x, Backend::DirectSum, &policy()).unwrap().s_entropy, t, &scheme).unwrap();
        prop_assert!((st.c - t * ds.value).abs() < 1e-3, "{} vs {}", st.c, t * ds.value);
    }

    #[test]
    fn grand_identities(v in variant(), xi in 0.0f64..1.5, t in 0.02f64..1.5, mu in -0.5f64..1.5) {
        let c = Coupling::new(v, xi).unwrap();
        let m = RingModel::reference();
        let g = grand_evaluate(&m, &c, t, mu, &policy()).unwrap();
        let rhs = g.u_total - t * g.s_total - mu * g.n_mean;
        prop_assert!((g.phi - rhs).abs() <= 1e-6 * g.phi.abs());

        // mu may be <= 0, so use a plain five-point stencil
        let h = 1e-3 * t;
        let phi = |x: f64| grand_potential(&m, &c, t, x, &policy()).unwrap();
        let dmu = (phi(mu - 2.0 * h) - 8.0 * phi(mu - h) + 8.0 * phi(mu + h) - phi(mu + 2.0 * h)) / (12.0 * h);
        prop_assert!((g.n_mean + dmu).abs() <= 1e-6 * g.n_mean, "{} vs {}", g.n_mean, -dmu);
        let dt = differentiate(|x| grand_potential(&m, &c, x, mu, &policy()).unwrap(), t, &DiffScheme::default()).unwrap();
        prop_assert!((g.s_total + dt.value).abs() < 1e-4, "{} vs {}", g.s_total, -dt.value);
    }

    #[test]
    fn occupations_bounded(e in 0.0f64..1e4, t in 1e-4f64..10.0, mu in -5.0f64..5.0) {
        let f = occupation(e, t, mu);
        prop_assert!((0.0..=1.0).contains(&f));
    }

    #[test]
    fn particle_number_increases_with_mu(v in variant(), xi in 0.0f64..1.5, t in 0.05f64..1.5) {
        let c = Coupling::new(v, xi).unwrap();
        let m = RingModel::reference();
        let ns: Vec<f64> = grid(-0.5, 2.0, 10).map(|mu| grand_evaluate(&m, &c, t, mu, &policy()).unwrap().n_mean).collect();
        prop_assert!(ns.windows(2).all(|w| w[1] > w[0]), "{ns:?}");
    }

    #[test]
    fn window_filling_bounded(v in variant(), xi in 0.0f64..1.5, t in 0.01f64..2.0, mu in -1.0f64..3.0, k in 1u64..40) {
        let c = Coupling::new(v, xi).unwrap();
        let spectrum = Spectrum::new(&RingModel::reference(), &c);
        let filled: f64 = (0..k).flat_map(|n| spectrum.block(n)).map(|e| occupation(e, t, mu)).sum();
        prop_assert!(filled <= 2.0 * k as f64);
    }
}

#[test]
fn zero_coupling_degeneracy_pattern() {
    let m = RingModel::reference();
    let a = Coupling::anisotropic(0.0).unwrap();
    let i = Coupling::isotropic(0.0).unwrap();
    for n in 0..=10i64 {
        let nf = n as f64;
        assert_eq!(energy(&m, &a, n, 1).unwrap(), nf * nf);
        assert_eq!(energy(&m, &a, n, 2).unwrap(), (nf - 1.0) * (nf - 1.0));
        assert_eq!(energy(&m, &i, n, 1).unwrap(), (nf + 1.0) * (nf + 1.0));
        assert_eq!(energy(&m, &i, n, 2).unwrap(), nf * nf);
    }
}

#[test]
fn splitting_grows_with_coupling() {
    let gaps: Vec<f64> = grid(0.0, 5.0, 101)
        .map(|xi| {
            let c = Coupling::anisotropic(xi).unwrap();
            (delta_s(&c, 2).unwrap() - delta_s(&c, 1).unwrap()).abs()
        })
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn zero_coupling_current_is_mean_index() {
    let m = RingModel::dimensionless(1.0, 2.0, 1.0).unwrap();
    for v in [Variant::Anisotropic, Variant::Isotropic] {
        let c = Coupling::new(v, 0.0).unwrap();
        let spectrum = Spectrum::new(&m, &c);
        for t in [0.05, 0.3, 1.0] {
            let (mut z, mut zn) = (0.0, 0.0);
            for n in 0..400u64 {
                for e in spectrum.block(n) {
                    let w = (-e / t).exp();
                    z += w;
                    zn += w * n as f64;
                }
            }
            let expected = (2.0 * zn / z - 1.0) / (4.0 * m.mass() * m.radius());
            let j = canonical_spin_current(&m, &c, t, &policy()).unwrap();
            assert!((j - expected).abs() < 1e-10, "{j} vs {expected}");
        }
    }
}

#[test]
fn free_energy_backends_agree() {
    // f from the closed form within 1% of the direct sum on T in [0.2, 1]
    let m = RingModel::reference();
    let mut worst = (0.0f64, 0.0, 0.0, "");
    for v in [Variant::Anisotropic, Variant::Isotropic] {
        for xi in STRENGTHS {
            let c = Coupling::new(v, xi).unwrap();
            for t in grid(0.2, 1.0, 20) {
                let direct = stable_boltzmann_sum(Spectrum::new(&m, &c).blocks(), 1.0 / t, &policy()).unwrap();
                let f_direct = -t * direct.log_sum;
                let f_em = -t * euler_maclaurin_z1(&m, &c, 1.0 / t).unwrap().ln();
                let rel = (f_em / f_direct - 1.0).abs();
                if rel > worst.0 {
                    worst = (rel, t, xi, v.name());
                }
            }
        }
    }
    assert!(worst.0 <= 0.01, "max relative gap {:.3} at T = {:.3}, {} strength {}", worst.0, worst.1, worst.3, worst.2);
}

#[test]
fn canonical_heat_capacity_collapses_at_unit_temperature() {
    let m = RingModel::reference();
    for v in [Variant::Anisotropic, Variant::Isotropic] {
        let c0 = canonical_evaluate(&m, &Coupling::new(v, 0.0).unwrap(), 1.0, Backend::DirectSum, &policy())
            .unwrap()
            .c;
        for xi in STRENGTHS {
            let c = canonical_evaluate(&m, &Coupling::new(v, xi).unwrap(), 1.0, Backend::DirectSum, &policy())
                .unwrap()
                .c;
            assert!((c - c0).abs() < 0.05, "{} strength {xi}: c = {c}, c(0) = {c0}", v.name());
        }
    }
}

#[test]
fn grand_curves_collapse_at_sweep_top() {
    let m = RingModel::reference();
    let t = 2.0;
    for v in [Variant::Anisotropic, Variant::Isotropic] {
        let states: Vec<_> = STRENGTHS
            .iter()
            .map(|&xi| grand_evaluate(&m, &Coupling::new(v, xi).unwrap(), t, 0.1, &policy()).unwrap())
            .collect();
        let reference = &states[0];
        for (xi, g) in STRENGTHS.iter().zip(&states) {
            for (name, x, x0) in [
                ("N", g.n_mean, reference.n_mean),
                ("U", g.u_total, reference.u_total),
                ("S", g.s_total, reference.s_total),
                ("C", g.c_total, reference.c_total),
            ] {
                assert!((x / x0 - 1.0).abs() <= 0.02, "{} strength {xi}: {name} = {x} vs {x0}", v.name());
            }
        }
    }
}
