//! Scan a family of parameter sets for entanglement-induced excluded states:
//! solve the exclusion condition, evaluate the NF diagnostic at the solution,
//! and confirm with the brute-force norm of the antisymmetrized state.

use entangled_absorption::closed_form::{Statistics, SuperCoeffs};
use entangled_absorption::exclusion::solve_exclusion;
use entangled_absorption::gram::{recoiled_gram, unrecoiled_gram, CMParams, RecoilModel};
use entangled_absorption::oracle;

fn main() {
    println!("   c     e     g   ->  a_excl      NF(a_excl)  |Phi_bar|^2 (oracle)");
    for &(c, e, g) in &[
        (0.8, std::f64::consts::FRAC_1_SQRT_2, 0.8),
        (0.9, 0.3, 0.9),
        (0.5, 0.5, 0.5),
        (0.0, 0.0, 0.0),
        (0.3, 0.95, -0.2),
    ] {
        let params = CMParams::from_principal(c, e, g).expect("principal params are normalized");
        match solve_exclusion(&params) {
            Ok(Some(sol)) => {
                let coeffs = SuperCoeffs::new(sol.a.into(), sol.b.into()).unwrap();
                let g0 = unrecoiled_gram(&params);
                let g1 = recoiled_gram(&g0, RecoilModel::new(0.9).unwrap());
                let state = oracle::build_initial(&coeffs, Statistics::Fermion);
                let norm = oracle::norm_sq(&state, &g0, &g1).unwrap();
                println!(
                    "{c:5.2} {e:5.2} {g:5.2} -> {:.6}  {:.3e}  {norm:.3e}",
                    sol.a, sol.nf_at_solution,
                );
            }
            Ok(None) => println!("{c:5.2} {e:5.2} {g:5.2} -> no real nonnegative solution"),
            Err(err) => println!("{c:5.2} {e:5.2} {g:5.2} -> {err}"),
        }
    }
}
