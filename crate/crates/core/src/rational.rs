//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

/// `n / d` as an exact rational.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"-p/q"` or an integer string.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let ok = |t: &str| {
        let t = t.strip_prefix(['-', '+']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    match s.split_once('/') {
        Some((n, d)) => {
            if !ok(n) || d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => {
            if !ok(s) {
                return None;
            }
            Some(Q::from_integer(s.parse().ok()?))
        }
    }
}

/// Canonical text form: integers as-is, otherwise `p/q` with `q > 0`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn floor_q(x: &Q) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Splits a positive integer as `s^2 * m`, removing square factors by trial
/// division. The cofactor `m` is certified squarefree whenever it is below
/// `TRIAL_LIMIT^3`; beyond that a large repeated prime may survive, which is
/// harmless because every comparison goes through exact sign arithmetic.
pub fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    const TRIAL_LIMIT: u64 = 200_000;
    debug_assert!(n.is_positive());
    let mut m = n.clone();
    let mut s = BigInt::one();
    let mut free = BigInt::one();
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        let pb = BigInt::from(p);
        if &pb * &pb * &pb > m {
            break;
        }
        let p2 = &pb * &pb;
        while (&m % &p2).is_zero() {
            m /= &p2;
            s *= &pb;
        }
        if (&m % &pb).is_zero() {
            m /= &pb;
            free *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // m has no prime factor below p and m < p^3, so m is 1, squarefree, or a
    // perfect square
    let r = m.sqrt();
    if &r * &r == m {
        s *= r;
    } else {
        free *= m;
    }
    (s, free)
}

/// Lowest common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/16"), Some(q(3, 16)));
        assert_eq!(parse_rational("-4"), Some(qi(-4)));
        assert_eq!(parse_rational("6/4"), Some(q(3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("a"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(fmt_q(&q(-160, 51)), "-160/51");
        assert_eq!(fmt_q(&q(8, 4)), "2");
    }

    #[test]
    fn square_split() {
        let check = |n: i64, s: i64, m: i64| {
            assert_eq!(split_square(&BigInt::from(n)), (BigInt::from(s), BigInt::from(m)));
        };
        check(12, 2, 3);
        check(9, 3, 1);
        check(2, 1, 2);
        check(72, 6, 2);
        check(49 * 5, 7, 5);
        check(1, 1, 1);
        check(1_000_003 * 1_000_003 * 3, 1_000_003, 3);
    }

    #[test]
    fn floors() {
        assert_eq!(floor_q(&q(-1, 2)), BigInt::from(-1));
        assert_eq!(floor_q(&q(7, 2)), BigInt::from(3));
    }
}
