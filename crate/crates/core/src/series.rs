//! Exact integer power series for Hilbert series of the form
//! `(sum_i t^{n_i}) / prod_j (1 - t^{a_j})`.

use alloc::vec;
use alloc::vec::Vec;

/// Coefficients of `t^0..=t^cutoff` in `numerator / prod (1 - t^a)`, where
/// `numerator` lists the exponents of its monomials with multiplicity.
pub fn rational_series(numerator: &[usize], denominator: &[usize], cutoff: usize) -> Vec<i64> {
    let mut c = vec![0i64; cutoff + 1];
    for &n in numerator {
        if n <= cutoff {
            c[n] += 1;
        }
    }
    for &a in denominator {
        assert!(a > 0, "denominator factor 1 - t^0 is not invertible");
        // multiply by 1/(1 - t^a) = 1 + t^a + t^2a + ...
        for d in a..=cutoff {
            c[d] += c[d - a];
        }
    }
    c
}

/// `1 / ((1 - t^a)(1 - t^b))`.
pub fn two_generator_series(a: usize, b: usize, cutoff: usize) -> Vec<i64> {
    rational_series(&[0], &[a, b], cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_algebra_series() {
        // q = 4: 1/((1-t^2)(1-t^3))
        assert_eq!(two_generator_series(2, 3, 8), [1, 0, 1, 1, 1, 1, 2, 1, 2]);
        // q = 4 minus: 1/((1-t^2)(1-t^5))
        assert_eq!(two_generator_series(2, 5, 7), [1, 0, 1, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn free_module_series_at_q4() {
        let c = rational_series(&[0, 2, 3, 3, 4, 6], &[2, 2, 3, 3], 6);
        assert_eq!(c[3], 4);
    }

    #[test]
    fn counts_monomials() {
        // 1/(1-t)^4 has coefficients C(d+3, 3)
        let c = rational_series(&[0], &[1, 1, 1, 1], 5);
        assert_eq!(c, [1, 4, 10, 20, 35, 56]);
    }
}
