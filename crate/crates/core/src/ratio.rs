//! Exact count ratios rendered as doubles.
//!
//! Every statistic in this crate is a ratio of small integers. Converting
//! the exact rational to its 16-significant-digit decimal (round half up)
//! and parsing that decimal gives a double that is identical for equal
//! rationals, prints back as the same decimal, and survives a CSV round
//! trip bit for bit.

const LOW: u128 = 1_000_000_000_000_000; // 10^15
const HIGH: u128 = 10_000_000_000_000_000; // 10^16

/// `num / den` rounded to 16 significant decimal digits.
///
/// Panics if `den` is zero.
pub fn ratio(num: u128, den: u128) -> f64 {
    assert!(den > 0, "ratio with zero denominator");
    if num == 0 {
        return 0.0;
    }
    let (mut n, mut d) = (num, den);
    let mut exp: i32 = 0;
    while n / d >= HIGH {
        match d.checked_mul(10) {
            Some(v) => d = v,
            None => return num as f64 / den as f64,
        }
        exp -= 1;
    }
    while n / d < LOW {
        match n.checked_mul(10) {
            Some(v) => n = v,
            None => return num as f64 / den as f64,
        }
        exp += 1;
    }
    let (q, r) = (n / d, n % d);
    let q = if r >= d - r { q + 1 } else { q };
    format!("{q}e{}", -exp).parse().expect("decimal literal always parses")
}

/// Smallest count `c` in `0..=total` with `ratio(c, total) >= threshold`,
/// or `total + 1` if no count reaches it.
pub(crate) fn min_count(threshold: f64, total: usize) -> usize {
    if total == 0 {
        return 1;
    }
    let guess = (threshold * total as f64).ceil().clamp(0.0, total as f64) as usize;
    let mut c = guess.saturating_sub(1);
    while c > 0 && ratio((c - 1) as u128, total as u128) >= threshold {
        c -= 1;
    }
    while c <= total && ratio(c as u128, total as u128) < threshold {
        c += 1;
    }
    c
}
