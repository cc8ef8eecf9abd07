//! Rational approximation of real coefficients and the GCD machinery used for
//! period detection.

use crate::error::{Error, Result};

pub const MAX_DENOMINATOR: u64 = 10_000;
pub const RATIONAL_TOLERANCE: f64 = 1e-9;

/// Best continued-fraction approximation `p/q` of `x` with `q <= max_den`
/// and `|x - p/q| <= tol`, or `None` if no convergent qualifies.
pub fn approximate(x: f64, max_den: u64, tol: f64) -> Option<(i64, u64)> {
    if !x.is_finite() {
        return None;
    }
    let sign = if x < 0.0 { -1 } else { 1 };
    let target = x.abs();

    // Convergents h/k via the standard recurrence.
    let (mut h_prev, mut h) = (1_i128, target.floor() as i128);
    let (mut k_prev, mut k) = (0_i128, 1_i128);
    let mut frac = target - target.floor();
    loop {
        if ((h as f64) / (k as f64) - target).abs() <= tol {
            return Some((sign * h as i64, k as u64));
        }
        if frac < 1e-15 {
            return None;
        }
        let inv = 1.0 / frac;
        let a = inv.floor() as i128;
        frac = inv - inv.floor();
        let h_next = a * h + h_prev;
        let k_next = a * k + k_prev;
        if k_next > max_den as i128 {
            return None;
        }
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm_u128(a: u128, b: u128) -> Option<u128> {
    (a / gcd_u128(a, b)).checked_mul(b)
}

/// A set of reals rescaled onto a common integer lattice: `values[i] / scale`
/// reproduces the inputs to within the rational tolerance.
#[derive(Debug, Clone)]
pub struct CommonLattice {
    pub values: Vec<i128>,
    pub scale: u128,
}

impl CommonLattice {
    pub fn new(reals: &[f64]) -> Result<Self> {
        let mut fracs = Vec::with_capacity(reals.len());
        for &x in reals {
            let (p, q) = approximate(x, MAX_DENOMINATOR, RATIONAL_TOLERANCE)
                .ok_or(Error::IncommensurateCoefficients(x, MAX_DENOMINATOR))?;
            fracs.push((p, q));
        }
        let mut scale = 1_u128;
        for &(_, q) in &fracs {
            scale = lcm_u128(scale, q as u128)
                .ok_or_else(|| Error::InvalidArgument("common denominator overflow".to_string()))?;
        }
        let values = fracs
            .iter()
            .map(|&(p, q)| p as i128 * (scale / q as u128) as i128)
            .collect();
        Ok(Self { values, scale })
    }

    /// GCD of the absolute lattice values; zero when all values are zero.
    pub fn gcd(&self) -> u128 {
        self.values
            .iter()
            .fold(0_u128, |g, &v| gcd_u128(g, v.unsigned_abs()))
    }
}

/// GCD of a set of reals, computed on a common rational lattice.
pub fn real_gcd(reals: &[f64]) -> Result<f64> {
    let lattice = CommonLattice::new(reals)?;
    let g = lattice.gcd();
    if g == 0 {
        return Err(Error::NoTerms);
    }
    Ok(g as f64 / lattice.scale as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approximates_simple_fractions() {
        assert_eq!(approximate(0.17, MAX_DENOMINATOR, 1e-9), Some((17, 100)));
        assert_eq!(approximate(-2.75, MAX_DENOMINATOR, 1e-9), Some((-11, 4)));
        assert_eq!(approximate(3.0, MAX_DENOMINATOR, 1e-9), Some((3, 1)));
        assert_eq!(approximate(0.125, MAX_DENOMINATOR, 1e-9), Some((1, 8)));
        assert_eq!(approximate(1.0 / 3.0, MAX_DENOMINATOR, 1e-9), Some((1, 3)));
    }

    #[test]
    fn rejects_irrational() {
        assert_eq!(
            approximate(std::f64::consts::PI, MAX_DENOMINATOR, 1e-9),
            None
        );
        assert_eq!(approximate(2f64.sqrt(), MAX_DENOMINATOR, 1e-9), None);
    }

    #[test]
    fn real_gcd_examples() {
        assert!((real_gcd(&[0.17, 0.34]).unwrap() - 0.17).abs() < 1e-15);
        assert!((real_gcd(&[0.171, 0.340]).unwrap() - 0.001).abs() < 1e-15);
        assert!((real_gcd(&[2.75, 3.25, 3.75]).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(real_gcd(&[1.0, 1.0, 5.0]).unwrap(), 1.0);
        assert_eq!(real_gcd(&[0.0]), Err(Error::NoTerms));
    }
}
