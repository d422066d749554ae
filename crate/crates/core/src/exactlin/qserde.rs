//! Serde adapters writing rationals as decimal strings (`"3"`, `"-7/12"`).

use serde::ser::{SerializeSeq, Serializer};

use super::{Matrix, Rational};

pub mod rational {
    use super::*;
    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }
}

pub mod vector {
    use super::*;
    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }
}

pub mod vectors {
    use super::*;
    pub fn serialize<S: Serializer>(vs: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(vs.len()))?;
        for v in vs {
            let row: Vec<String> = v.iter().map(ToString::to_string).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

pub mod option_vector {
    use super::*;
    pub fn serialize<S: Serializer>(
        v: &Option<Vec<Rational>>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => vector::serialize(v, s),
            None => s.serialize_none(),
        }
    }
}

pub mod option_rational {
    use super::*;
    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_str(&x.to_string()),
            None => s.serialize_none(),
        }
    }
}

pub mod matrix {
    use super::*;
    pub fn serialize<S: Serializer>(m: &Matrix, s: S) -> Result<S::Ok, S::Error> {
        vectors::serialize(&m.row_vectors(), s)
    }
}
