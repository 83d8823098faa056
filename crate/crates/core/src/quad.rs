//! Exact real numbers of the form `a + b*sqrt(n)`.
//!
//! Seshadri-type bounds and the roots of the slope inequality are
//! quadratic irrationals. Every comparison here is decided with rational
//! arithmetic only; nothing is approximated.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_q, floor_q, split_square, to_f64, Q};

/// `a + b*sqrt(n)` with `a, b` rational and `n` a non-negative integer.
///
/// Normalised so that `b == 0` exactly when `n == 0`, and `n` has had its
/// square factors pulled into `b`.
#[derive(Clone, Debug)]
pub struct QuadBound {
    a: Q,
    b: Q,
    n: BigInt,
}

impl QuadBound {
    pub fn rational(a: Q) -> Self {
        QuadBound { a, b: Q::zero(), n: BigInt::zero() }
    }

    /// `a + b*sqrt(n)`, normalised. Panics if `n < 0`.
    pub fn new(a: Q, b: Q, n: BigInt) -> Self {
        assert!(!n.is_negative(), "negative radicand");
        if b.is_zero() || n.is_zero() {
            return Self::rational(a);
        }
        let (s, m) = split_square(&n);
        let b = b * Q::from_integer(s);
        if m.is_one() {
            QuadBound::rational(a + b)
        } else {
            QuadBound { a, b, n: m }
        }
    }

    /// Exact square root of a non-negative rational. Panics on negative input.
    pub fn sqrt(x: &Q) -> Self {
        assert!(!x.is_negative(), "square root of a negative rational");
        if x.is_zero() {
            return Self::rational(Q::zero());
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let pq = x.numer() * x.denom();
        Self::new(Q::zero(), Q::new(BigInt::one(), x.denom().clone()), pq)
    }

    pub fn zero() -> Self {
        Self::rational(Q::zero())
    }

    pub fn rational_part(&self) -> &Q {
        &self.a
    }

    pub fn surd_coefficient(&self) -> &Q {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.n
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Q> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * to_f64(&Q::from_integer(self.n.clone())).sqrt()
    }

    /// Sign as -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        sign_of(&self.a, &self.b, &self.n)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn cmp_rational(&self, x: &Q) -> Ordering {
        sign_of(&(&self.a - x), &self.b, &self.n).cmp(&0)
    }

    pub fn add_rational(&self, x: &Q) -> Self {
        QuadBound { a: &self.a + x, b: self.b.clone(), n: self.n.clone() }
    }

    pub fn scale(&self, x: &Q) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        QuadBound { a: &self.a * x, b: &self.b * x, n: self.n.clone() }
    }

    pub fn neg(&self) -> Self {
        QuadBound { a: -&self.a, b: -&self.b, n: self.n.clone() }
    }

    /// `1/self`; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_rational() {
            if self.a.is_zero() {
                return None;
            }
            return Some(Self::rational(self.a.recip()));
        }
        // (a - b sqrt n) / (a^2 - n b^2); the norm is nonzero since n is not a square
        let norm = &self.a * &self.a - &self.b * &self.b * Q::from_integer(self.n.clone());
        Some(QuadBound {
            a: &self.a / &norm,
            b: -&self.b / &norm,
            n: self.n.clone(),
        })
    }

    /// Sum of two numbers sharing a radicand (or either rational).
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let n = self.common_radicand(other)?;
        Some(QuadBound::new(&self.a + &other.a, &self.b + &other.b, n))
    }

    /// Product of two numbers sharing a radicand (or either rational).
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let n = self.common_radicand(other)?;
        let nq = Q::from_integer(n.clone());
        let a = &self.a * &other.a + &self.b * &other.b * nq;
        let b = &self.a * &other.b + &self.b * &other.a;
        Some(QuadBound::new(a, b, n))
    }

    fn common_radicand(&self, other: &Self) -> Option<BigInt> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Some(other.n.clone()),
            (_, true) => Some(self.n.clone()),
            _ if self.n == other.n => Some(self.n.clone()),
            _ => None,
        }
    }

    fn square(&self) -> Self {
        self.checked_mul(self).expect("same radicand")
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return floor_q(&self.a);
        }
        // write as (p + sigma*sqrt(m)) / d with integers p, m and d > 0
        let d = num_integer::Integer::lcm(self.a.denom(), self.b.denom());
        let dq = Q::from_integer(d.clone());
        let p = (&self.a * &dq).to_integer();
        let bd = (&self.b * &dq).to_integer();
        let m = &bd * &bd * &self.n;
        let r = m.sqrt();
        debug_assert!(&r * &r != m);
        // sqrt(m) lies strictly between r and r + 1, and no multiple of d
        // lies strictly between consecutive integers
        let lower = if bd.is_positive() { p + r } else { p - r - BigInt::one() };
        num_integer::Integer::div_floor(&lower, &d)
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Largest `k/denom` that is `<= self` (or `< self` when `strict`).
    pub fn round_down(&self, denom: &BigInt, strict: bool) -> Q {
        let scaled = self.scale(&Q::from_integer(denom.clone()));
        let mut k = scaled.floor();
        if strict && scaled.cmp_rational(&Q::from_integer(k.clone())) == Ordering::Equal {
            k -= 1;
        }
        Q::new(k, denom.clone())
    }

    /// Smallest `k/denom` that is `>= self` (or `> self` when `strict`).
    pub fn round_up(&self, denom: &BigInt, strict: bool) -> Q {
        -self.neg().round_down(denom, strict)
    }
}

/// Sign of `a + b*sqrt(n)`.
fn sign_of(a: &Q, b: &Q, n: &BigInt) -> i32 {
    let sa = signum_q(a);
    let sb = if n.is_zero() { 0 } else { signum_q(b) };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // opposite signs: compare a^2 with b^2 n
    let lhs = a * a;
    let rhs = b * b * Q::from_integer(n.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

fn signum_q(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact comparison of two quadratic irrationals, possibly with different
/// radicands.
fn compare(x: &QuadBound, y: &QuadBound) -> Ordering {
    if let Some(n) = x.common_radicand(y) {
        return sign_of(&(&x.a - &y.a), &(&x.b - &y.b), &n).cmp(&0);
    }
    // x - y = P - Y with P = (x.a - y.a) + x.b sqrt(x.n) and Y = y.b sqrt(y.n)
    let p = QuadBound { a: &x.a - &y.a, b: x.b.clone(), n: x.n.clone() };
    let yy = QuadBound { a: Q::zero(), b: y.b.clone(), n: y.n.clone() };
    let (sp, sy) = (p.signum(), yy.signum());
    if sp != sy {
        return sp.cmp(&sy);
    }
    // same sign s: sign(P - Y) = s * sign(P^2 - Y^2), and Y^2 is rational
    let y2 = yy.square().to_rational().expect("square of a pure surd is rational");
    let d = p.square().cmp_rational(&y2);
    if sp >= 0 {
        d
    } else {
        d.reverse()
    }
}

impl PartialEq for QuadBound {
    fn eq(&self, other: &Self) -> bool {
        compare(self, other) == Ordering::Equal
    }
}

impl Eq for QuadBound {}

impl PartialOrd for QuadBound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadBound {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl From<Q> for QuadBound {
    fn from(a: Q) -> Self {
        QuadBound::rational(a)
    }
}

impl fmt::Display for QuadBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&fmt_q(&self.a));
        }
        let surd = if self.b.is_one() {
            format!("sqrt({})", self.n)
        } else if (-&self.b).is_one() {
            format!("-sqrt({})", self.n)
        } else {
            format!("{}*sqrt({})", fmt_q(&self.b), self.n)
        };
        if self.a.is_zero() {
            f.write_str(&surd)
        } else if surd.starts_with('-') {
            write!(f, "{}{}", fmt_q(&self.a), surd)
        } else {
            write!(f, "{}+{}", fmt_q(&self.a), surd)
        }
    }
}
