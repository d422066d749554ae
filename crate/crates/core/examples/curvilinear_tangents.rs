//! Tangent spaces along curvilinear schemes and their hyperplane systems.
use infterra::catalog::find_entry;
use infterra::chart::{CurvilinearJet, JetLength};
use infterra::curvilinear::{generic_speciality, hyperplane_system, tangent_along};
use infterra::exactlin::rat;
use infterra::sample::DEFAULT_SEED;

fn main() -> infterra::Result<()> {
    let c = find_entry("v2p4")?.build()?;
    let n = c.n();
    let mut lambda = vec![rat(0); n];
    lambda[0] = rat(1);
    let mut mu = vec![rat(0); n];
    mu[1] = rat(1);
    let jet = CurvilinearJet::new(vec![rat(0); n], lambda, mu, JetLength::Three)?;
    let t = tangent_along(&c, &jet)?;
    let h = hyperplane_system(&c, &jet)?;
    println!(
        "v2p4 along a length-3 scheme: dim T = {} (expected {}), hyperplane system P^{} (threshold {})",
        t.dim, t.expected, h.projective_dim, h.threshold
    );
    assert_eq!(t.dim + h.projective_dim, c.r() as i64 - 1);

    for id in ["rnc5", "surf5", "v2p4", "rnc4pad", "v2p2pad"] {
        let c = find_entry(id)?.build()?;
        let v = generic_speciality(&c, JetLength::Three, 5, DEFAULT_SEED)?;
        println!(
            "{id:<8} general length-3 scheme: {:<8} dim {} of {}",
            if v.special { "special" } else { "regular" },
            v.best_dim,
            v.expected
        );
    }
    Ok(())
}
