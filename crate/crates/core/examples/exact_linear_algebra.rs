//! Exact rank, determinant, nullspace and the modular screen.
use infterra::exactlin::{
    determinant, inverse, nullspace, rank_exact, rank_modular, rank_screened, Matrix,
    SCREEN_PRIME,
};

fn main() -> infterra::Result<()> {
    // Rank 2: the third row is the sum of the first two.
    let m = Matrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[5, 7, 9]]);
    println!("rank_exact     = {}", rank_exact(&m));
    println!("rank_modular   = {}", rank_modular(&m, SCREEN_PRIME)?);
    println!("rank_screened  = {}", rank_screened(&m));
    println!("det            = {}", determinant(&m)?);
    for v in nullspace(&m) {
        let v: Vec<String> = v.iter().map(ToString::to_string).collect();
        println!("kernel vector  = [{}]", v.join(", "));
    }

    let a = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
    let inv = inverse(&a)?.expect("invertible");
    println!("inverse row 0  = {} {}", inv.get(0, 0), inv.get(0, 1));
    Ok(())
}
