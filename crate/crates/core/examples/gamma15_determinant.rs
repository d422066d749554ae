//! The γ₁,₅ determinant: identity testing, a symbolic expansion and the
//! coefficient audit.
use infterra::catalog::find_entry;
use infterra::exactlin::{rat, SzOutcome, DEFAULT_SZ_TRIALS};
use infterra::quasiasymptotic::{claim_coefficient_audit, gamma15_identically_zero};
use infterra::sample::DEFAULT_SEED;

fn main() -> infterra::Result<()> {
    for id in ["rnc5", "surf5", "v2p4", "rnc4pad"] {
        let c = find_entry(id)?.build()?;
        let v = gamma15_identically_zero(&c, DEFAULT_SZ_TRIALS, DEFAULT_SEED)?;
        match &v.outcome {
            SzOutcome::IdenticallyZero { error_bound, .. } => {
                println!("{id:<8} D ≡ 0 (false-zero probability <= {error_bound:.1e})")
            }
            SzOutcome::NonzeroWitness { value, .. } => {
                println!("{id:<8} D ≢ 0, witness value {value}")
            }
        }
    }

    // A general surface in P^8: D is a nonzero polynomial in (λ, μ),
    // weighted homogeneous with λ of weight 1 and μ of weight 2.
    let c = find_entry("surf5")?.build()?;
    let a = claim_coefficient_audit(&c, &[rat(1), rat(-1)])?;
    let show = |x: &Option<_>| x.as_ref().map_or("-".to_string(), |v: &infterra::exactlin::Rational| v.to_string());
    println!(
        "surf5 at (1, -1): {} terms, degree {}, weighted homogeneous {}",
        a.num_terms,
        a.total_degree.unwrap_or(0),
        a.weighted_homogeneous
    );
    println!("  coefficient of λ_1^(3n+7) μ_2 = {}", show(&a.coeff_mu2));
    println!("  20A + 2ΣB                    = {}", show(&a.predicted_mu2));
    println!("  A + 2ΣB                      = {}", show(&a.unit_weight_mu2));
    Ok(())
}
