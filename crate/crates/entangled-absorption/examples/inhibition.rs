//! Entanglement inhibition: at c = e = g = 0.5 the identical-atom rates do
//! not depend on the superposition coefficient at all, while the
//! distinguishable pair still shows a-dependence.

use entangled_absorption::sweep::{figure_dataset, flatness_metric, FigureId};

fn main() {
    let curve = figure_dataset(FigureId::Fig2Right, 1001).expect("figure parameters are valid");

    let dist: Vec<f64> = curve.points.iter().map(|p| p.rates.rate_distinguishable).collect();
    let boson: Vec<f64> = curve.points.iter().filter_map(|p| p.rates.rate_boson.value()).collect();
    let fermion: Vec<f64> =
        curve.points.iter().filter_map(|p| p.rates.rate_fermion.value()).collect();

    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    println!("series           level     flatness (max-min)/mean");
    println!(
        "distinguishable  {:.6}  {:.3e}",
        mean(&dist),
        flatness_metric(&dist).unwrap(),
    );
    println!("boson            {:.6}  {:.3e}", mean(&boson), flatness_metric(&boson).unwrap());
    println!("fermion          {:.6}  {:.3e}", mean(&fermion), flatness_metric(&fermion).unwrap());
    println!(
        "excluded fermion grid points: {}",
        curve.points.iter().filter(|p| p.rates.rate_fermion.is_excluded()).count(),
    );
}
