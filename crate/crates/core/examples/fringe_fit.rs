//! Recovering (I₀, 𝒱, α) from sampled fringes: exact on noiseless samples,
//! and a shot-noise-like perturbation to show how the fit degrades.

use probe_witness::interference::{fit_pattern, intensity, pattern_params, phase_grid, ExternalPhase, ProbeScenario};
use probe_witness::states::random_density_with;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn main() -> probe_witness::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = ProbeScenario::random(&mut rng);
    let rho = random_density_with(&mut rng, 4, 2)?;
    let truth = pattern_params(&s, &rho)?;
    let clean: Vec<(f64, f64)> = phase_grid(25)
        .into_iter()
        .map(|phi| Ok((phi, intensity(&s, &rho, ExternalPhase(phi))?)))
        .collect::<probe_witness::Result<_>>()?;
    println!("truth : {truth:?}");
    println!("clean : {:?}", fit_pattern(&clean)?);

    let noise = Normal::new(0.0, 0.02).unwrap();
    let noisy: Vec<(f64, f64)> = clean.iter().map(|&(phi, v)| (phi, v + noise.sample(&mut rng))).collect();
    println!("noisy : {:?}", fit_pattern(&noisy)?);
    Ok(())
}
