//! Property-based tests: structural invariants of the Gram tables, the
//! formal-ket engine, and the closed-form rates.

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use entangled_absorption::closed_form::{
    self, m_distinguishable, m_identical, n_i, Couplings, Excludable, Statistics, SuperCoeffs,
};
use entangled_absorption::gram::{
    recoiled_gram, recoiled_overlap, unrecoiled_gram, CMParams, GramTable, RecoilModel,
    StateLabel, Variant,
};
use entangled_absorption::oracle::{self, build_initial, inner_product};

const TAU: f64 = std::f64::consts::TAU;

fn complex_pair() -> impl Strategy<Value = (C64, C64)> {
    (0.0..std::f64::consts::FRAC_PI_2, 0.0..TAU, 0.0..TAU).prop_map(|(t, p1, p2)| {
        (C64::from_polar(t.cos(), p1), C64::from_polar(t.sin(), p2))
    })
}

fn cm_params() -> impl Strategy<Value = CMParams> {
    (complex_pair(), complex_pair(), complex_pair()).prop_map(|((c, d), (e, f), (g, h))| {
        CMParams::new(c, d, e, f, g, h).expect("angle construction is normalized")
    })
}

fn real_params() -> impl Strategy<Value = CMParams> {
    (-1.0..1.0, -1.0..1.0, -1.0..1.0).prop_map(|(c, e, g)| {
        CMParams::from_principal(c, e, g).expect("principal construction is normalized")
    })
}

fn super_coeffs() -> impl Strategy<Value = SuperCoeffs> {
    (0.0..std::f64::consts::FRAC_PI_2, 0.0..TAU, 0.0..TAU).prop_map(|(t, p1, p2)| {
        SuperCoeffs::new(C64::from_polar(t.cos(), p1), C64::from_polar(t.sin(), p2))
            .expect("angle construction is normalized")
    })
}

fn recoil() -> impl Strategy<Value = RecoilModel> {
    (0.5..=1.0).prop_map(|rho| RecoilModel::new(rho).expect("rho in range"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gram_matches_expansion_vectors(params in cm_params()) {
        let gram = unrecoiled_gram(&params);
        for &i in &StateLabel::ALL {
            for &j in &StateLabel::ALL {
                let vi = params.expansion(i);
                let vj = params.expansion(j);
                let dot = vi[0].conj() * vj[0] + vi[1].conj() * vj[1];
                prop_assert!((gram.get(i, j) - dot).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn gram_hermitian_unit_diagonal(params in cm_params(), model in recoil()) {
        let g0 = unrecoiled_gram(&params);
        let g1 = recoiled_gram(&g0, model);
        for table in [&g0, &g1] {
            for &i in &StateLabel::ALL {
                prop_assert!((table.get(i, i) - C64::from(1.0)).norm() < 1e-12);
                for &j in &StateLabel::ALL {
                    prop_assert_eq!(table.get(i, j), table.get(j, i).conj());
                    prop_assert!(table.get(i, j).norm() <= 1.0 + 1e-12);
                }
            }
        }
        prop_assert!(g0.min_eigenvalue() >= -1e-10);
    }
}

proptest! {
    #[test]
    fn recoiled_overlap_monotone_and_contractive(
        s1 in 0.0..1.0_f64,
        s2 in 0.0..1.0_f64,
        rho in 0.0..=1.0_f64,
    ) {
        let model = RecoilModel::new(rho).unwrap();
        let (lo, hi) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
        let r_lo = recoiled_overlap(lo.into(), model).re;
        let r_hi = recoiled_overlap(hi.into(), model).re;
        prop_assert!(r_lo <= r_hi + 1e-15);
        prop_assert!(recoiled_overlap(C64::from(s1), model).norm() <= s1 + 1e-15);
    }

    #[test]
    fn no_recoil_is_identity(params in cm_params()) {
        let g0 = unrecoiled_gram(&params);
        let g1 = recoiled_gram(&g0, RecoilModel::new(1.0).unwrap());
        for &i in &StateLabel::ALL {
            for &j in &StateLabel::ALL {
                prop_assert!((g1.get(i, j) - g0.get(i, j)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn inner_product_sesquilinear(
        params in cm_params(),
        model in recoil(),
        c1 in super_coeffs(),
        c2 in super_coeffs(),
        c3 in super_coeffs(),
        alpha in (0.0..2.0_f64, 0.0..TAU).prop_map(|(r, p)| C64::from_polar(r, p)),
    ) {
        let g0 = unrecoiled_gram(&params);
        let g1 = recoiled_gram(&g0, model);
        let x = build_initial(&c1, Statistics::Distinguishable);
        let y = build_initial(&c2, Statistics::Boson);
        let z = build_initial(&c3, Statistics::Fermion);

        // linear in the second argument
        let mut y_plus_az = y.clone();
        for (&ket, &amp) in z.terms() {
            y_plus_az.add_term(ket, amp * alpha);
        }
        let lhs = inner_product(&x, &y_plus_az, &g0, &g1).unwrap();
        let rhs = inner_product(&x, &y, &g0, &g1).unwrap()
            + alpha * inner_product(&x, &z, &g0, &g1).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);

        // conjugate-linear in the first argument
        let lhs = inner_product(&y_plus_az, &x, &g0, &g1).unwrap();
        let rhs = inner_product(&y, &x, &g0, &g1).unwrap()
            + alpha.conj() * inner_product(&z, &x, &g0, &g1).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn norm_positivity(params in cm_params(), coeffs in super_coeffs()) {
        let g0 = unrecoiled_gram(&params);
        let g1 = recoiled_gram(&g0, RecoilModel::new(0.9).unwrap());
        for stats in [Statistics::Distinguishable, Statistics::Boson, Statistics::Fermion] {
            let state = build_initial(&coeffs, stats);
            let ip = inner_product(&state, &state, &g0, &g1).unwrap();
            prop_assert!(ip.re >= -1e-10);
            prop_assert!(ip.im.abs() < 1e-12);
        }
    }

    #[test]
    fn exclusion_marker_matches_oracle_norm(
        params in cm_params(),
        coeffs in super_coeffs(),
    ) {
        let g0 = unrecoiled_gram(&params);
        let g1 = recoiled_gram(&g0, RecoilModel::new(0.9).unwrap());
        for stats in [Statistics::Boson, Statistics::Fermion] {
            let state = build_initial(&coeffs, stats);
            let norm = oracle::norm_sq(&state, &g0, &g1).unwrap();
            let sign = stats.exchange_sign().unwrap();
            let radicand = closed_form::n_i_radicand(&coeffs, &g0, sign);
            prop_assert!((norm - radicand).abs() < 1e-12);
            prop_assert_eq!(n_i(&coeffs, &g0, stats).is_excluded(), radicand < 1e-12);
        }
    }

    #[test]
    fn global_phase_invariance(
        params in real_params(),
        model in recoil(),
        a in 0.0..1.0_f64,
        phase in 0.0..TAU,
    ) {
        let g0 = unrecoiled_gram(&params);
        let g1 = recoiled_gram(&g0, model);
        let k = Couplings::reference();
        let c0 = SuperCoeffs::from_a(a).unwrap();
        let rot = C64::from_polar(1.0, phase);
        let c1 = SuperCoeffs::new(c0.a * rot, c0.b * rot).unwrap();

        let r0 = m_distinguishable(&c0, &g0, &g1, &k).unwrap().rate();
        let r1 = m_distinguishable(&c1, &g0, &g1, &k).unwrap().rate();
        prop_assert!((r0 - r1).abs() < 1e-12 * r0.max(1.0));

        for stats in [Statistics::Boson, Statistics::Fermion] {
            // next to an exclusion zero the rate amplifies last-bit rounding
            // of a*b by 1/radicand; restrict to well-conditioned points
            let sign = stats.exchange_sign().unwrap();
            if closed_form::n_i_radicand(&c0, &g0, sign) < 1e-3
                || closed_form::n_f_radicand(&c0, &g0, &g1, sign) < 1e-3
            {
                continue;
            }
            match (
                m_identical(&c0, &g0, &g1, &k, stats),
                m_identical(&c1, &g0, &g1, &k, stats),
            ) {
                (Excludable::Value(m0), Excludable::Value(m1)) => {
                    prop_assert!((m0.rate() - m1.rate()).abs() < 1e-11 * m0.rate().max(1.0));
                }
                (Excludable::Excluded, Excludable::Excluded) => {}
                other => prop_assert!(false, "phase changed exclusion status: {:?}", other),
            }
        }
    }

    #[test]
    fn distinguishable_endpoint_symmetry(params in real_params(), model in recoil()) {
        let g0 = unrecoiled_gram(&params);
        let g1 = recoiled_gram(&g0, model);
        let k = Couplings::reference();
        let r0 = m_distinguishable(&SuperCoeffs::from_a(0.0).unwrap(), &g0, &g1, &k)
            .unwrap()
            .rate();
        let r1 = m_distinguishable(&SuperCoeffs::from_a(1.0).unwrap(), &g0, &g1, &k)
            .unwrap()
            .rate();
        prop_assert!((r0 - r1).abs() < 1e-12 * r0.max(1.0));
    }

    #[test]
    fn statistics_degenerate_without_overlap(coeffs in super_coeffs()) {
        let g0 = GramTable::orthogonal(Variant::Unrecoiled);
        let g1 = GramTable::orthogonal(Variant::Recoiled);
        let k = Couplings::reference();
        let boson = m_identical(&coeffs, &g0, &g1, &k, Statistics::Boson).value().unwrap();
        let fermion = m_identical(&coeffs, &g0, &g1, &k, Statistics::Fermion).value().unwrap();
        prop_assert!((boson.rate() - fermion.rate()).abs() < 1e-12);
    }

    #[test]
    fn solved_exclusions_kill_the_fermion_state(params in real_params()) {
        use entangled_absorption::exclusion::solve_exclusion;
        if let Ok(Some(sol)) = solve_exclusion(&params) {
            prop_assert!(sol.residual < 1e-12);
            prop_assert!(sol.nf_at_solution < 1e-10);
            let coeffs = SuperCoeffs::new(sol.a.into(), sol.b.into()).unwrap();
            let g0 = unrecoiled_gram(&params);
            let g1 = recoiled_gram(&g0, RecoilModel::new(0.9).unwrap());
            let state = build_initial(&coeffs, Statistics::Fermion);
            prop_assert!(oracle::norm_sq(&state, &g0, &g1).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn entanglement_inhibition_when_states_pair_up(
        x in -0.95..0.95_f64,
        a1 in 0.0..1.0_f64,
        a2 in 0.0..1.0_f64,
    ) {
        // c = e = g makes varphi coincide with phi and chi with psi, the
        // regime where identical-atom rates do not depend on a.
        let params = CMParams::from_principal(x, x, x).unwrap();
        let g0 = unrecoiled_gram(&params);
        prop_assert!((g0.get(StateLabel::Varphi, StateLabel::Phi).norm() - 1.0).abs() < 1e-9);
        prop_assert!((g0.get(StateLabel::Psi, StateLabel::Chi).norm() - 1.0).abs() < 1e-9);
        let g1 = recoiled_gram(&g0, RecoilModel::new(0.9).unwrap());
        let k = Couplings::reference();
        for stats in [Statistics::Boson, Statistics::Fermion] {
            let r: Vec<f64> = [a1, a2]
                .iter()
                .filter_map(|&a| {
                    let c = SuperCoeffs::from_a(a).unwrap();
                    let sign = stats.exchange_sign().unwrap();
                    if closed_form::n_i_radicand(&c, &g0, sign)
                        < closed_form::NEAR_EXCLUSION_EPS
                    {
                        return None;
                    }
                    m_identical(&c, &g0, &g1, &k, stats).value().map(|m| m.rate())
                })
                .collect();
            if r.len() == 2 {
                prop_assert!((r[0] - r[1]).abs() < 1e-8 * r[0].max(1e-300));
            }
        }
    }
}
