//! The span Π along coordinate curves of v_2(P^4).
use infterra::catalog::find_entry;
use infterra::cli::pi_samples;
use infterra::quasiasymptotic::pi_constancy_check;

fn main() -> infterra::Result<()> {
    let c = find_entry("v2p4")?.build()?;
    let p = pi_constancy_check(&c, &pi_samples())?;
    for (s, contained) in p.spaces.iter().zip(&p.tangent_contained) {
        println!("u_1 = {:>4}: dim Π = {}, tangent space contained: {contained}", s.u1, s.dim);
    }
    println!("constant along the curve: {}", p.constant);
    println!("dim within [3n, 3n+1] = [{}, {}]: {}", 3 * c.n(), 3 * c.n() + 1, p.within_bounds);
    Ok(())
}
