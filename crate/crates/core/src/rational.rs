//! Exact rationals and their `"p/q"` text form.

use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Q = num_rational::Rational64;

#[inline]
pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

#[inline]
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn is_zero(x: &Q) -> bool {
    x.is_zero()
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

/// Always `"p/q"`, with `q ≥ 1`.
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `"p/q"` or a bare integer `"p"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(q(s.parse().map_err(|_| bad())?)),
    }
}

/// Human-readable form used in summaries and error messages (`"1/2"`, `"-3"`).
pub fn display_q(x: &Q) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format_q(x)
    }
}
