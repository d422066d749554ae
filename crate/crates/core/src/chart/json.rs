//! Chart file format:
//!
//! ```json
//! { "label": "...", "n": 2, "r": 5,
//!   "coords": [ [ { "exp": [1, 0], "num": "3", "den": "2" } ] ] }
//! ```
//!
//! Big integers are decimal strings. Terms are written in ascending
//! lexicographic exponent order, so writing a parsed canonical file
//! reproduces it byte for byte.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Chart;
use crate::error::{Error, Result};
use crate::exactlin::{MultiPoly, Rational};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChartFile {
    label: String,
    n: usize,
    r: usize,
    coords: Vec<Vec<TermFile>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    exp: Vec<u32>,
    num: String,
    den: String,
}

pub(super) fn to_json(chart: &Chart) -> String {
    let file = ChartFile {
        label: chart.label.clone(),
        n: chart.n,
        r: chart.r(),
        coords: chart
            .coords
            .iter()
            .map(|p| {
                p.terms()
                    .map(|(e, c)| TermFile {
                        exp: e.clone(),
                        num: c.numer().to_string(),
                        den: c.denom().to_string(),
                    })
                    .collect()
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("chart serializes");
    s.push('\n');
    s
}

fn parse_int(s: &str, what: &str, coord: usize, term: usize) -> Result<BigInt> {
    s.parse::<BigInt>().map_err(|_| {
        Error::Parse(format!(
            "coords[{coord}][{term}].{what}: {s:?} is not a decimal integer"
        ))
    })
}

pub(super) fn from_json(text: &str) -> Result<Chart> {
    // serde_json reports "at line L column C" for syntax and type errors.
    let file: ChartFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("chart file: {e}")))?;
    if file.coords.len() != file.r + 1 {
        return Err(Error::Parse(format!(
            "chart file: r = {} but {} coordinate polynomials given",
            file.r,
            file.coords.len()
        )));
    }
    let mut coords = Vec::with_capacity(file.coords.len());
    for (ci, terms) in file.coords.into_iter().enumerate() {
        let mut p = MultiPoly::zero(file.n);
        for (ti, t) in terms.into_iter().enumerate() {
            if t.exp.len() != file.n {
                return Err(Error::Parse(format!(
                    "coords[{ci}][{ti}].exp has length {}, expected n = {}",
                    t.exp.len(),
                    file.n
                )));
            }
            let num = parse_int(&t.num, "num", ci, ti)?;
            let den = parse_int(&t.den, "den", ci, ti)?;
            if !den.is_positive() {
                return Err(Error::Parse(format!(
                    "coords[{ci}][{ti}].den must be positive, got {den}"
                )));
            }
            if num.is_zero() {
                continue;
            }
            p.add_term(t.exp, Rational::new(num, den));
        }
        coords.push(p);
    }
    Chart::new(file.label, file.n, coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_random_variety, make_segre, make_veronese};

    #[test]
    fn round_trip_is_bit_exact() {
        for c in [
            make_veronese(2, 2).unwrap(),
            make_segre(2, 2).unwrap(),
            make_random_variety(2, 5, 8, 42).unwrap(),
        ] {
            let text = c.to_json();
            let back = Chart::from_json(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn fractions_and_big_integers() {
        let text = r#"{
  "label": "big",
  "n": 1,
  "r": 1,
  "coords": [
    [ { "exp": [0], "num": "1", "den": "1" } ],
    [ { "exp": [1], "num": "-123456789012345678901234567891", "den": "7" } ]
  ]
}"#;
        let c = Chart::from_json(text).unwrap();
        let back = Chart::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(c.to_json().contains("\"-123456789012345678901234567891\""));
    }

    #[test]
    fn errors_name_the_location() {
        let err = Chart::from_json("{\n  \"label\": \"x\",\n  \"n\": 1,\n  \"r\": oops\n}")
            .unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");

        let bad_den = r#"{"label":"x","n":1,"r":1,"coords":[[{"exp":[0],"num":"1","den":"0"}],[]]}"#;
        let err = Chart::from_json(bad_den).unwrap_err();
        assert!(err.to_string().contains("coords[0][0].den"), "{err}");

        let bad_exp = r#"{"label":"x","n":2,"r":1,"coords":[[{"exp":[0],"num":"1","den":"1"}],[]]}"#;
        assert!(Chart::from_json(bad_exp)
            .unwrap_err()
            .to_string()
            .contains("coords[0][0].exp"));

        let bad_r = r#"{"label":"x","n":1,"r":3,"coords":[[],[]]}"#;
        assert!(Chart::from_json(bad_r).is_err());
    }
}
