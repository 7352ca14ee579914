//! Drive the brute-force formal-ket engine directly and run a small
//! closed-form vs oracle verification campaign.

use entangled_absorption::cli::run_verification;
use entangled_absorption::closed_form::{Couplings, Statistics, SuperCoeffs};
use entangled_absorption::gram::{recoiled_gram, unrecoiled_gram, CMParams, RecoilModel};
use entangled_absorption::oracle::{apply_absorption, build_initial, inner_product};

fn main() {
    let params = CMParams::from_principal(0.8, std::f64::consts::FRAC_1_SQRT_2, 0.8).unwrap();
    let g0 = unrecoiled_gram(&params);
    let g1 = recoiled_gram(&g0, RecoilModel::new(0.9).unwrap());
    let coeffs = SuperCoeffs::from_a(0.6).unwrap();

    let initial = build_initial(&coeffs, Statistics::Fermion);
    println!("antisymmetrized initial state: {} formal terms", initial.len());
    let norm = inner_product(&initial, &initial, &g0, &g1).unwrap();
    println!("<Phi_bar|Phi_bar> = {:.6}", norm.re);

    let fin = apply_absorption(&initial, &Couplings::unit(), Statistics::Fermion);
    println!("absorption image: {} formal terms", fin.len());
    println!(
        "<final|final> = {:.6}",
        inner_product(&fin, &fin, &g0, &g1).unwrap().re,
    );

    let report = run_verification(200, 7).expect("campaign runs");
    println!(
        "\nverification over {} draws ({} redraws near exclusion):",
        report.trials, report.redraws,
    );
    for (name, dev, _) in &report.deviations {
        println!("  {name}: max relative deviation {dev:.3e}");
    }
}
