use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Exponent multi-index, one entry per variable.
pub type Exponent = Vec<u32>;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vectors, so iteration
/// order (and therefore every serialization) is deterministic. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(vec![0; num_vars], c);
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    /// The variable `u_i` (0-based).
    pub fn var(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars, "variable {i} out of range");
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent of length {} in a polynomial in {} variables",
                    e.len(),
                    num_vars
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Adds `c * u^exp`, dropping the term if the coefficient cancels.
    pub fn add_term(&mut self, exp: Exponent, c: Rational) {
        debug_assert_eq!(exp.len(), self.num_vars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in the given subset of variables.
    pub fn degree_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| vars.iter().map(|&v| e[v]).sum())
            .max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Formal partial derivative in `u_i` (0-based).
    pub fn partial(&self, i: usize) -> Result<Self> {
        if i >= self.num_vars {
            return Err(Error::BadIndex {
                index: i,
                bound: self.num_vars,
            });
        }
        let mut out = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c * Rational::from_integer(e[i].into()));
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.num_vars, "point dimension");
        // Cache powers per variable; exponents are small.
        let mut powers: Vec<Vec<Rational>> = vec![vec![Rational::one()]; self.num_vars];
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[v];
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap() * &point[v];
                    cache.push(next);
                }
                term *= &cache[k as usize];
            }
            acc += term;
        }
        acc
    }

    /// Substitutes `u_i := subs[i]`. All substituted polynomials must share
    /// a variable count, which becomes the variable count of the result.
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<Self> {
        if subs.len() != self.num_vars {
            return Err(Error::DimensionMismatch(format!(
                "{} substitutions for {} variables",
                subs.len(),
                self.num_vars
            )));
        }
        let out_vars = subs.first().map_or(0, |s| s.num_vars);
        if subs.iter().any(|s| s.num_vars != out_vars) {
            return Err(Error::DimensionMismatch(
                "substituted polynomials disagree on variable count".into(),
            ));
        }
        let mut powers: Vec<Vec<MultiPoly>> = subs
            .iter()
            .map(|_| vec![MultiPoly::one(out_vars)])
            .collect();
        let mut out = MultiPoly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(out_vars, c.clone());
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[v];
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap() * &subs[v];
                    cache.push(next);
                }
                term = &term * &cache[k as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

/// `∂p/∂u_i` with a 1-based variable index, matching the usual notation
/// `x_{i}`; [`MultiPoly::partial`] is the 0-based form.
pub fn poly_partial(p: &MultiPoly, i: usize) -> Result<MultiPoly> {
    if i == 0 || i > p.num_vars {
        return Err(Error::BadIndex {
            index: i,
            bound: p.num_vars,
        });
    }
    p.partial(i - 1)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = MultiPoly::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        format!("u{}", v + 1)
                    } else {
                        format!("u{}^{}", v + 1, k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(rng: &mut ChaCha8Rng, vars: usize, degree: u32, terms: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        for _ in 0..terms {
            let e: Exponent = (0..vars).map(|_| rng.gen_range(0..=degree)).collect();
            p.add_term(e, rat(rng.gen_range(-6..=6)));
        }
        p
    }

    #[test]
    fn partial_of_monomial() {
        // d/du1 (u1^2 u2) = 2 u1 u2
        let p = MultiPoly::monomial(vec![2, 1], rat(1));
        let d = poly_partial(&p, 1).unwrap();
        assert_eq!(d, MultiPoly::monomial(vec![1, 1], rat(2)));
        let c = MultiPoly::constant(3, rat(7));
        assert!(poly_partial(&c, 2).unwrap().is_zero());
    }

    #[test]
    fn partial_bad_index() {
        let p = MultiPoly::var(2, 0);
        assert!(matches!(poly_partial(&p, 0), Err(Error::BadIndex { .. })));
        assert!(matches!(poly_partial(&p, 3), Err(Error::BadIndex { .. })));
    }

    #[test]
    fn mixed_partials_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let p = random_poly(&mut rng, 3, 4, 8);
            let a = p.partial(0).unwrap().partial(1).unwrap();
            let b = p.partial(1).unwrap().partial(0).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn zero_coefficients_never_stored() {
        let mut p = MultiPoly::var(2, 0);
        p.add_term(vec![1, 0], rat(-1));
        assert!(p.is_zero());
        let q = &MultiPoly::var(2, 1) - &MultiPoly::var(2, 1);
        assert_eq!(q.num_terms(), 0);
    }

    #[test]
    fn compose_matches_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let p = random_poly(&mut rng, 2, 3, 6);
            let subs = vec![random_poly(&mut rng, 3, 2, 4), random_poly(&mut rng, 3, 2, 4)];
            let composed = p.compose(&subs).unwrap();
            let pt = vec![rat(2), rat(-1), rat(3)];
            let inner: Vec<Rational> = subs.iter().map(|s| s.eval(&pt)).collect();
            assert_eq!(composed.eval(&pt), p.eval(&inner));
        }
    }

    #[test]
    fn display_is_readable() {
        let p = &MultiPoly::monomial(vec![2, 0], rat(3)) + &MultiPoly::one(2);
        assert_eq!(p.to_string(), "(3)*u1^2 + 1");
    }
}
