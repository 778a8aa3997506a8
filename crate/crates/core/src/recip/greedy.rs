use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub const MAX_GREEDY_VALUE: i64 = 8;

/// Strictly increasing denominators `n_1 < n_2 < ...` with `q = sum 1/n_i`.
///
/// Each step takes the smallest admissible `n` with `1/n <= q`; once `q >= 1`
/// forces repeats, the harmonic prefix `1, 2, 3, ...` is used until the
/// remainder drops below the next unit fraction. The remainder's numerator
/// strictly decreases in the greedy phase, so the expansion terminates.
/// The harmonic prefix grows like `e^q`, so `q >= 8` is refused.
pub fn greedy_egyptian_rational(q: &BigRational) -> Result<Vec<BigInt>> {
    if !q.is_positive() {
        return Err(Error::Precondition("greedy expansion needs q > 0".into()));
    }
    if *q >= BigRational::from_integer(BigInt::from(MAX_GREEDY_VALUE)) {
        return Err(Error::CapExceeded(format!("greedy expansion of q >= {MAX_GREEDY_VALUE}")));
    }
    let mut rest = q.clone();
    let mut out: Vec<BigInt> = Vec::new();
    while !rest.is_zero() {
        // ceil(den / num)
        let (num, den) = (rest.numer().clone(), rest.denom().clone());
        let mut n = den.div_ceil(&num);
        if let Some(last) = out.last() {
            if n <= *last {
                n = last + BigInt::one();
            }
        }
        rest -= BigRational::new(BigInt::one(), n.clone());
        out.push(n);
    }
    Ok(out)
}
