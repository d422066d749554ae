//! Exact rational and modular linear algebra, sparse multivariate polynomials,
//! truncated power series and a Schwartz–Zippel identity tester.
//!
//! Every dimension verdict in the crate is decided here. Ranks and
//! determinants use fraction-free (Bareiss) elimination over the integers
//! after clearing row denominators; the modular rank is only a screen.

mod matrix;
mod poly;
pub mod qserde;
mod series;
mod sz;

pub use matrix::{
    determinant, inverse, left_nullspace, nullspace, rank_exact, rank_modular, rank_screened, Matrix,
    SCREEN_PRIME,
};
pub use poly::{poly_partial, MultiPoly};
pub use series::{poly_compose_curve, TruncSeries};
pub use sz::{sample_bound, sz_zero_test, SzOutcome, DEFAULT_SZ_TRIALS};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact rational, always stored in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Coordinate vector over the rationals.
pub type Vector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero_vector(len: usize) -> Vector {
    vec![Rational::zero(); len]
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += scale * v`, entrywise.
pub fn axpy(acc: &mut [Rational], scale: &Rational, v: &[Rational]) {
    if scale.is_zero() {
        return;
    }
    debug_assert_eq!(acc.len(), v.len());
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += scale * x;
        }
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Scales a vector by the lcm of its denominators and divides out the gcd of
/// the resulting numerators, so the output is a primitive integer vector.
pub fn primitive(v: &[Rational]) -> Vector {
    use num_integer::Integer;
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}

pub fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, i| acc * rat(i))
}
