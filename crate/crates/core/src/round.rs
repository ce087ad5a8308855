//! Directed floating-point arithmetic.
//!
//! Every operation is evaluated in the default round-to-nearest mode and
//! then corrected by one ulp, but only when an exactly recovered error
//! term proves the rounded result lies on the wrong side of the true
//! value. Exact operations therefore stay exact ([1,2]+[3,4] keeps
//! integer endpoints) and each directed result is within one ulp of the
//! true value. The thread-global rounding mode is never touched.
//!
//! Error terms come from error-free transformations: two_sum for
//! addition, the fused multiply-add residual for multiplication, and the
//! division residual `a - q*b`, which is exactly representable whenever
//! the quotient is comfortably inside the normal range.

/// Below this magnitude an fma residual can fall into the subnormal
/// range and stop being exact, so directed rounding widens
/// unconditionally instead of consulting it.
const RESIDUAL_FLOOR: f64 = 1e-290;

/// Exact sum: returns (s, e) with s = fl(a+b) and s + e = a + b exactly,
/// unless the sum overflows (then e = 0 and s is infinite).
#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    if !s.is_finite() {
        return (s, 0.0);
    }
    let bp = s - a;
    let ap = s - bp;
    (s, (a - ap) + (b - bp))
}

/// a + b rounded toward -inf (within one ulp).
#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if e < 0.0 {
        s.next_down()
    } else {
        s
    }
}

/// a + b rounded toward +inf (within one ulp).
#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if e > 0.0 {
        s.next_up()
    } else {
        s
    }
}

/// a - b rounded toward -inf.
#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

/// a - b rounded toward +inf.
#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

/// a * b rounded toward -inf.
#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    if p == 0.0 || p.abs() < RESIDUAL_FLOOR {
        // Underflow region: the residual is untrustworthy; widen.
        return p.next_down();
    }
    if f64::mul_add(a, b, -p) < 0.0 {
        p.next_down()
    } else {
        p
    }
}

/// a * b rounded toward +inf.
#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    if p == 0.0 || p.abs() < RESIDUAL_FLOOR {
        return p.next_up();
    }
    if f64::mul_add(a, b, -p) > 0.0 {
        p.next_up()
    } else {
        p
    }
}

/// a / b rounded toward -inf. The caller guarantees b != 0.
#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    if q == 0.0 || q.abs() < RESIDUAL_FLOOR || a.abs() < RESIDUAL_FLOOR {
        return q.next_down();
    }
    // a/b = q - r/b exactly, so the true quotient is below q iff r/b > 0.
    let r = f64::mul_add(q, b, -a);
    if r != 0.0 && (r > 0.0) == (b > 0.0) {
        q.next_down()
    } else {
        q
    }
}

/// a / b rounded toward +inf. The caller guarantees b != 0.
#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    if q == 0.0 || q.abs() < RESIDUAL_FLOOR || a.abs() < RESIDUAL_FLOOR {
        return q.next_up();
    }
    let r = f64::mul_add(q, b, -a);
    if r != 0.0 && (r > 0.0) != (b > 0.0) {
        q.next_up()
    } else {
        q
    }
}

/// Enclosure of the residual `c - row . x` as (lo, hi).
///
/// Products are split exactly with fma residuals and summed with a
/// two_sum cascade, so the enclosure width is on the order of one ulp of
/// the residual itself rather than of the summands. This is what makes
/// the verified-solve error balls tight enough for ulp-level
/// containment comparisons between methods.
pub(crate) fn residual_interval(c: f64, row: &[f64], x: &[f64]) -> (f64, f64) {
    debug_assert_eq!(row.len(), x.len());
    let mut s = 0.0f64; // leading part of sum(row[j] * x[j])
    let mut k_lo = 0.0f64; // directed sum of the exact correction terms
    let mut k_hi = 0.0f64;
    let mut tainted = false;
    for (&a, &b) in row.iter().zip(x) {
        if a == 0.0 || b == 0.0 {
            continue;
        }
        let p = a * b;
        if !p.is_finite() {
            return (f64::NEG_INFINITY, f64::INFINITY);
        }
        let e = f64::mul_add(a, b, -p);
        if p.abs() < RESIDUAL_FLOOR {
            tainted = true;
        }
        let (s2, sigma) = two_sum(s, p);
        if !s2.is_finite() {
            return (f64::NEG_INFINITY, f64::INFINITY);
        }
        s = s2;
        k_lo = add_down(add_down(k_lo, sigma), e);
        k_hi = add_up(add_up(k_hi, sigma), e);
    }
    // residual = (c - s) - k with k in [k_lo, k_hi]
    let (t, tau) = two_sum(c, -s);
    if !t.is_finite() {
        return (f64::NEG_INFINITY, f64::INFINITY);
    }
    let mut lo = add_down(t, sub_down(tau, k_hi));
    let mut hi = add_up(t, sub_up(tau, k_lo));
    if tainted {
        // Some product sat in the underflow region; pad generously.
        lo = add_down(lo, -1e-280);
        hi = add_up(hi, 1e-280);
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{Signed, Zero};
    use rand::{Rng, SeedableRng};

    fn rat(x: f64) -> BigRational {
        BigRational::from_float(x).unwrap()
    }

    fn assert_brackets(lo: f64, hi: f64, exact: &BigRational, what: &str) {
        assert!(rat(lo) <= *exact, "{what}: lo {lo} above exact value");
        assert!(rat(hi) >= *exact, "{what}: hi {hi} below exact value");
        // At most one ulp of slack on each side.
        assert!(
            lo == hi || rat(lo.next_up()) >= *exact,
            "{what}: lo more than one ulp wide"
        );
        assert!(
            lo == hi || rat(hi.next_down()) <= *exact,
            "{what}: hi more than one ulp wide"
        );
    }

    #[test]
    fn exact_operations_stay_exact() {
        assert_eq!(add_down(1.0, 3.0), 4.0);
        assert_eq!(add_up(1.0, 3.0), 4.0);
        assert_eq!(sub_down(2.0, 0.5), 1.5);
        assert_eq!(sub_up(2.0, 0.5), 1.5);
        assert_eq!(mul_down(3.0, 7.0), 21.0);
        assert_eq!(mul_up(3.0, 7.0), 21.0);
        assert_eq!(div_down(1.0, 4.0), 0.25);
        assert_eq!(div_up(1.0, 4.0), 0.25);
        assert_eq!(div_down(-9.0, 3.0), -3.0);
        assert_eq!(div_up(-9.0, 3.0), -3.0);
        assert_eq!(mul_down(0.0, 5.5), 0.0);
        assert_eq!(mul_up(-0.0, 5.5), 0.0);
    }

    #[test]
    fn known_inexact_cases_bracket() {
        let exact = rat(0.1) + rat(0.2);
        assert_brackets(add_down(0.1, 0.2), add_up(0.1, 0.2), &exact, "0.1+0.2");

        let exact = rat(1.0) / rat(3.0);
        assert_brackets(div_down(1.0, 3.0), div_up(1.0, 3.0), &exact, "1/3");
        assert!(div_down(1.0, 3.0) < div_up(1.0, 3.0));

        let exact = rat(0.1) * rat(0.1);
        assert_brackets(mul_down(0.1, 0.1), mul_up(0.1, 0.1), &exact, "0.1*0.1");
    }

    #[test]
    fn randomized_directed_ops_bracket_exact_values() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..2000 {
            let a: f64 = rng.gen_range(-1e6..1e6) * 10f64.powi(rng.gen_range(-12..12));
            let b: f64 = rng.gen_range(-1e6..1e6) * 10f64.powi(rng.gen_range(-12..12));
            assert_brackets(add_down(a, b), add_up(a, b), &(rat(a) + rat(b)), "add");
            assert_brackets(sub_down(a, b), sub_up(a, b), &(rat(a) - rat(b)), "sub");
            assert_brackets(mul_down(a, b), mul_up(a, b), &(rat(a) * rat(b)), "mul");
            if b != 0.0 {
                assert_brackets(div_down(a, b), div_up(a, b), &(rat(a) / rat(b)), "div");
            }
        }
    }

    #[test]
    fn overflow_is_signalled_not_wrapped() {
        let big = f64::MAX;
        assert!(!add_up(big, big).is_finite());
        assert!(!add_down(big, big).is_finite());
        assert!(!mul_up(big, 2.0).is_finite());
        assert!(!mul_down(big, -2.0).is_finite());
    }

    #[test]
    fn underflow_region_widens_soundly() {
        // 1e-600 underflows to zero; the directed products must still
        // bracket it, landing on the adjacent subnormals.
        let tiny = 1e-300;
        assert_eq!(mul_down(tiny, tiny), -f64::from_bits(1));
        assert_eq!(mul_up(tiny, tiny), f64::from_bits(1));
        assert_eq!(div_down(tiny, 1e300), -f64::from_bits(1));
        assert_eq!(div_up(tiny, 1e300), f64::from_bits(1));
    }

    #[test]
    fn residual_interval_is_tight_and_correct() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..30);
            let row: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let c: f64 = rng.gen_range(-10.0..10.0);
            let (lo, hi) = residual_interval(c, &row, &x);
            let mut exact = rat(c);
            for (a, b) in row.iter().zip(&x) {
                exact -= rat(*a) * rat(*b);
            }
            assert!(rat(lo) <= exact && exact <= rat(hi));
            // Width stays at the scale of the residual, not of the summands.
            let width = rat(hi) - rat(lo);
            let scale = if exact.is_zero() {
                rat(f64::EPSILON)
            } else {
                exact.clone().abs() * rat(4.0 * f64::EPSILON) + rat(1e-305)
            };
            assert!(width <= scale, "residual enclosure too wide: [{lo}, {hi}]");
        }
    }
}
