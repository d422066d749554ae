//! 2-osculating regularity and the dimension of the osculating variety.
//!
//! The quadratic Veronese v_2(P^4) is not 2-osculating regular: its second
//! osculating variety fills only an 11-dimensional subvariety.
use infterra::catalog::find_entry;
use infterra::exactlin::rat;
use infterra::sample::{DEFAULT_SAMPLES, DEFAULT_SEED};
use infterra::terracini::{osc2_regular, osc2_regular_coordinate, osc_variety_dim};

fn main() -> infterra::Result<()> {
    for id in ["rnc5", "v3p2", "surf5", "v2p4", "v2p5"] {
        let c = find_entry(id)?.build()?;
        let v = osc2_regular(&c, DEFAULT_SAMPLES, DEFAULT_SEED)?;
        let coord = osc2_regular_coordinate(&c, &vec![rat(1); c.n()])?;
        let dim = osc_variety_dim(&c, 2, DEFAULT_SAMPLES, DEFAULT_SEED)?;
        println!(
            "{id:<6} regular: {:<5} rank {:>2}/{:<2} coordinate curves independent: {:<5} dim Osc_2 = {dim} (3n = {})",
            v.regular,
            v.best_rank,
            v.needed_rank,
            coord.independent,
            3 * c.n()
        );
    }
    Ok(())
}
