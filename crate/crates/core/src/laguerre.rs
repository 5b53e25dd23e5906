//! Generalized Laguerre polynomials by upward three-term recurrence.

/// `L_n^a(x)`.
pub fn laguerre(n: u32, a: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dx L_n^a(x) = -L_{n-1}^{a+1}(x)`.
pub fn laguerre_derivative(n: u32, a: f64, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        -laguerre(n - 1, a + 1.0, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn low_orders_match_explicit_forms() {
        let (a, x) = (2.5, 0.7);
        assert_eq!(laguerre(0, a, x), 1.0);
        assert_relative_eq!(laguerre(1, a, x), 1.0 + a - x);
        let l2 = 0.5 * (x * x - 2.0 * (a + 2.0) * x + (a + 1.0) * (a + 2.0));
        assert_relative_eq!(laguerre(2, a, x), l2, max_relative = 1e-14);
        let l3 = (-x.powi(3) + 3.0 * (a + 3.0) * x * x - 3.0 * (a + 2.0) * (a + 3.0) * x
            + (a + 1.0) * (a + 2.0) * (a + 3.0))
            / 6.0;
        assert_relative_eq!(laguerre(3, a, x), l3, max_relative = 1e-13);
    }

    #[test]
    fn value_at_origin_is_binomial() {
        // L_n^a(0) = C(n+a, n)
        let a = 4.2;
        let mut binom = 1.0;
        for n in 0..8u32 {
            if n > 0 {
                binom *= (n as f64 + a) / n as f64;
            }
            assert_relative_eq!(laguerre(n, a, 0.0), binom, max_relative = 1e-13);
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let (n, a, x) = (5, 3.3, 2.1);
        let h = 1e-5;
        let fd = (laguerre(n, a, x + h) - laguerre(n, a, x - h)) / (2.0 * h);
        assert_relative_eq!(laguerre_derivative(n, a, x), fd, max_relative = 1e-8);
    }
}
