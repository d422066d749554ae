//! Charts: construction, JSON round trip, derivatives and projection.
use infterra::catalog::make_veronese;
use infterra::chart::{derivative_vector, project_generic, Chart};
use infterra::exactlin::rat;

fn main() -> infterra::Result<()> {
    let c = make_veronese(2, 2)?;
    let text = c.to_json();
    let back = Chart::from_json(&text)?;
    assert_eq!(back, c);
    println!("{}: n = {}, r = {}, {} bytes of JSON", c.label(), c.n(), c.r(), text.len());

    let pt = [rat(1), rat(-2)];
    let show = |v: Vec<_>| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    println!("x(1,-2)   = {}", show(c.eval(&pt)?));
    println!("x_1(1,-2) = {}", show(derivative_vector(&c, &pt, &[0])?));
    println!("x_12      = {}", show(derivative_vector(&c, &pt, &[0, 1])?));

    let p = project_generic(&make_veronese(2, 3)?, 8, 7)?;
    println!("projected cubic surface: r = {}, degree {}", p.r(), p.degree());

    match Chart::from_json("{\"label\": \"x\", \"n\": 1,\n \"r\": true}") {
        Err(e) => println!("malformed input: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
