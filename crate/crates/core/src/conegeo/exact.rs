//! Exact rational arithmetic for the squared radii, which are all rational.

use num_rational::Ratio;

pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `2^e` as a rational, for any sign of `e`; `None` on overflow.
pub fn pow2(e: i32) -> Option<Rational> {
    let mag = 1i128.checked_shl(e.unsigned_abs())?;
    if e.unsigned_abs() >= 127 {
        return None;
    }
    Some(if e >= 0 { Rational::from_integer(mag) } else { Rational::new(1, mag) })
}

pub fn pow3(e: u32) -> Option<i128> {
    3i128.checked_pow(e)
}
