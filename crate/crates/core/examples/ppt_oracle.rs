//! Partial-transpose test on a few named states and random mixtures.

use probe_witness::states::{
    basis_state, bell_state, ppt_check, random_density, random_separable_mixture, werner, BellKind,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> probe_witness::Result<()> {
    let named = [
        ("psi-", bell_state(BellKind::PsiMinus).density()),
        ("|01>", basis_state(0, 1).density()),
        ("werner 0.30", werner(0.30)?),
        ("werner 0.36", werner(0.36)?),
    ];
    for (name, rho) in &named {
        let v = ppt_check(rho)?;
        println!("{name:>12}: min eig {:+.4}  entangled {}", v.min_pt_eigenvalue, v.entangled);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let separable = (0..1000).filter(|_| ppt_check(&random_separable_mixture(&mut rng, 8)).unwrap().entangled).count();
    let generic = (0..1000u64).filter(|&s| ppt_check(&random_density(s, 4, 4).unwrap()).unwrap().entangled).count();
    println!("entangled among 1000 separable mixtures: {separable}");
    println!("entangled among 1000 random full-rank states: {generic}");
    Ok(())
}
