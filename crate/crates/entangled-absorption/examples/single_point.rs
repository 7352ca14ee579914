//! Compute the three absorption rates at a single configuration through the
//! library API, step by step: parameters, overlap tables, normalizations,
//! matrix elements.

use entangled_absorption::closed_form::{
    m_distinguishable, m_identical, n_d, n_i, Couplings, Statistics, SuperCoeffs,
};
use entangled_absorption::gram::{recoiled_gram, unrecoiled_gram, CMParams, RecoilModel, StateLabel};

fn main() {
    let params = CMParams::from_principal(0.8, std::f64::consts::FRAC_1_SQRT_2, 0.8)
        .expect("principal params are normalized");
    let coeffs = SuperCoeffs::from_a(0.3).expect("a in range");
    let k = Couplings::reference();

    let g0 = unrecoiled_gram(&params);
    let g1 = recoiled_gram(&g0, RecoilModel::new(0.9).expect("rho in range"));
    println!(
        "<psi|varphi> = {:.4}, recoiled {:.4}",
        g0.get(StateLabel::Psi, StateLabel::Varphi).re,
        g1.get(StateLabel::Psi, StateLabel::Varphi).re,
    );

    println!("N_D = {:.6}", n_d(&coeffs, &g0).expect("non-degenerate"));
    let m = m_distinguishable(&coeffs, &g0, &g1, &k).expect("non-degenerate");
    println!("distinguishable: M = {:.6}, rate = {:.6}", m.value.re, m.rate());

    for stats in [Statistics::Boson, Statistics::Fermion] {
        let ni = n_i(&coeffs, &g0, stats);
        let m = m_identical(&coeffs, &g0, &g1, &k, stats);
        match (ni.value(), m.value()) {
            (Some(ni), Some(m)) => {
                println!("{stats:?}: N_I = {ni:.6}, M = {:.6}, rate = {:.6}", m.value.re, m.rate());
            }
            _ => println!("{stats:?}: excluded state"),
        }
    }
}
