//! Double-double arithmetic.
//!
//! A [`Dd`] value is an unevaluated sum `hi + lo` of two `f64`s with
//! `|lo| <= ulp(hi)/2`, giving roughly 31 significant decimal digits.
//! The spectra of the discretized Laplace operator span twenty orders of
//! magnitude, so the eigensolves and quadratic forms that produce the small
//! eigenvalues run in this type; everything user-facing stays `f64`.
//!
//! The algorithms are the classical error-free transformations (Dekker,
//! Knuth) plus the expansion-based `exp`/`sin`/`cos` from the QD library of
//! Hida, Li and Bailey.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A double-double: the unevaluated sum `hi + lo`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Requires |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

pub const DD_EPS: f64 = 4.93038065763132e-32; // 2^-104

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: 3.141592653589793116e0,
        lo: 1.224646799147353207e-16,
    };
    pub const FRAC_PI_2: Dd = Dd {
        hi: 1.570796326794896558e0,
        lo: 6.123233995736766036e-17,
    };
    pub const LN_2: Dd = Dd {
        hi: 6.931471805599452862e-1,
        lo: 2.319046813846299558e-17,
    };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    /// Multiply by an exact power of two.
    #[inline]
    pub fn mul_pwr2(self, p: f64) -> Dd {
        Dd {
            hi: self.hi * p,
            lo: self.lo * p,
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.is_zero() {
            return Dd::ZERO;
        }
        assert!(self.hi > 0.0, "Dd::sqrt of negative value {}", self.hi);
        // Karp's high-precision square root: one correction from an f64 seed,
        // then a Newton step in full Dd arithmetic.
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let r = Dd::from_f64(ax) + Dd::from_f64((self - Dd::from_f64(ax) * Dd::from_f64(ax)).hi * (x * 0.5));
        (r + self / r).mul_pwr2(0.5)
    }

    pub fn exp(self) -> Dd {
        // exp(m ln2 + r) with |r| <= ln2/2, r further scaled by 2^-9 before
        // the Taylor series, then squared back up.
        if self.hi <= -709.0 {
            return Dd::ZERO;
        }
        assert!(self.hi < 709.0, "Dd::exp overflow: {}", self.hi);
        let m = (self.hi / std::f64::consts::LN_2).round();
        let r = (self - Dd::LN_2 * Dd::from_f64(m)).mul_pwr2(1.0 / 512.0);
        // s = exp(r) - 1 by Taylor.
        let mut s = r;
        let mut term = r;
        let mut k = 1.0;
        loop {
            k += 1.0;
            term = term * r / Dd::from_f64(k);
            s = s + term;
            if term.hi.abs() < 1e-35 {
                break;
            }
        }
        // (1+s)^2 - 1 = s(2+s), nine times.
        for _ in 0..9 {
            s = s * (Dd::from_f64(2.0) + s);
        }
        let e = Dd::ONE + s;
        e.mul_pwr2(2f64.powi(m as i32))
    }

    /// Simultaneous sine and cosine. Intended for |self| below a few dozen;
    /// the range reduction uses a double-double pi and loses nothing there.
    pub fn sin_cos(self) -> (Dd, Dd) {
        let k = (self.hi / std::f64::consts::FRAC_PI_2).round();
        let t = self - Dd::FRAC_PI_2 * Dd::from_f64(k);
        let (s, c) = sin_cos_taylor(t);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(self) -> Dd {
        self.sin_cos().0
    }

    pub fn cos(self) -> Dd {
        self.sin_cos().1
    }
}

/// Taylor series for |t| <= pi/4 (plus rounding slop).
fn sin_cos_taylor(t: Dd) -> (Dd, Dd) {
    let t2 = t * t;
    let mut s = t;
    let mut term = t;
    let mut k = 1.0;
    loop {
        term = term * t2 / Dd::from_f64((k + 1.0) * (k + 2.0));
        term = -term;
        s = s + term;
        k += 2.0;
        if term.hi.abs() < 1e-35 {
            break;
        }
    }
    let mut c = Dd::ONE;
    let mut term = Dd::ONE;
    let mut k = 0.0;
    loop {
        term = term * t2 / Dd::from_f64((k + 1.0) * (k + 2.0));
        term = -term;
        c = c + term;
        k += 2.0;
        if term.hi.abs() < 1e-35 {
            break;
        }
    }
    (s, c)
}

impl From<f64> for Dd {
    fn from(v: f64) -> Dd {
        Dd::from_f64(v)
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (s1, s2) = quick_two_sum(s1, s2);
        Dd { hi: s1, lo: s2 }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, o: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let p2 = p2 + self.hi * o.lo + self.lo * o.hi;
        let (s, e) = quick_two_sum(p1, p2);
        Dd { hi: s, lo: e }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::from_f64(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::from_f64(q2);
        let q3 = r.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::from_f64(q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, o: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&o.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&o.lo),
            ord => ord,
        }
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}{:+e}", self.hi, self.lo)
    }
}

/// The arithmetic shared by `f64` and [`Dd`]. Lets the Jacobi recurrence and
/// polynomial evaluation run in either precision from one implementation.
pub trait Scalar:
    Copy
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

impl Scalar for f64 {
    #[inline]
    fn from_f64(v: f64) -> f64 {
        v
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn sqrt(self) -> f64 {
        f64::sqrt(self)
    }
    #[inline]
    fn abs(self) -> f64 {
        f64::abs(self)
    }
}

impl Scalar for Dd {
    #[inline]
    fn from_f64(v: f64) -> Dd {
        Dd::from_f64(v)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    #[inline]
    fn sqrt(self) -> Dd {
        Dd::sqrt(self)
    }
    #[inline]
    fn abs(self) -> Dd {
        Dd::abs(self)
    }
}
