//! The full 2-defectivity pipeline over the catalog, plus the equivalent
//! command-line call.
use infterra::catalog::catalog;
use infterra::quasiasymptotic::{defect_pipeline, PipelineConfig};

fn main() -> infterra::Result<()> {
    let cfg = PipelineConfig::default();
    for e in catalog().into_iter().filter(|e| e.supports_length3()) {
        let rep = defect_pipeline(&e.build()?, &cfg)?;
        println!(
            "{:<8} special {:<5} osc2-regular {:<5} δ_2 = {}  prediction: {:<6} consistent: {}",
            e.id,
            rep.speciality.special,
            rep.osc2.regular,
            rep.secant2.defect,
            match rep.prediction_confirmed {
                Some(true) => "holds",
                Some(false) => "FAILS",
                None => "n/a",
            },
            rep.consistency.all()
        );
    }

    let mut out = Vec::new();
    let code = infterra::cli::run(
        ["infterra", "audit-theorem", "--variety", "rnc4pad", "--format", "markdown"],
        &mut out,
    );
    println!("\n$ infterra audit-theorem --variety rnc4pad --format markdown   (exit {code})");
    print!("{}", String::from_utf8_lossy(&out));
    Ok(())
}
