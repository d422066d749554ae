//! Secant defects via Terracini's lemma, checked against closed-form dimensions.
use infterra::catalog::catalog;
use infterra::sample::{DEFAULT_SAMPLES, DEFAULT_SEED};
use infterra::terracini::secant_defect;

fn main() -> infterra::Result<()> {
    println!("{:<9} {:>2} {:>8} {:>8} {:>6}", "id", "k", "observed", "expected", "defect");
    for e in catalog() {
        let c = e.build()?;
        for k in 1..=2 {
            let d = secant_defect(&c, k, DEFAULT_SAMPLES, DEFAULT_SEED)?;
            let known = e.known_defects.iter().find(|kd| kd.k == k);
            if let Some(kd) = known {
                assert_eq!(kd.defect, d.defect as i64);
            }
            println!(
                "{:<9} {:>2} {:>8} {:>8} {:>6}{}",
                e.id,
                k,
                d.observed,
                d.expected,
                d.defect,
                if known.is_some() { "  (closed form agrees)" } else { "" }
            );
        }
    }
    Ok(())
}
