//! Double-double arithmetic: an unevaluated sum of two `f64`s giving roughly
//! 31 significant digits. Used internally to evaluate Gamma-function ratios
//! and alternating power series whose plain-`f64` cancellation error would
//! exceed the accuracy contracts of the scalar kernels.

use num_complex::Complex64;
use std::sync::OnceLock;

/// ln 2 split into high and low parts.
const LN2_HI: f64 = 0.693_147_180_559_945_3;
const LN2_LO: f64 = 2.319_046_813_846_299_6e-17;

/// pi split into high and low parts (pi - PI_HI rounds to PI_LO).
const PI_HI: f64 = std::f64::consts::PI;
const PI_LO: f64 = 1.224_646_799_147_353_2e-16;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Requires |a| >= |b| (or a == 0).
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const LN2: Dd = Dd { hi: LN2_HI, lo: LN2_LO };
    pub const PI: Dd = Dd { hi: PI_HI, lo: PI_LO };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact product of two `f64`s.
    #[inline]
    pub fn from_prod(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    /// Exact sum of two `f64`s.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
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
    pub fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, rhs: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(-rhs)
    }

    #[inline]
    pub fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, rhs: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * rhs);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self.sub(rhs.mul_f64(q1));
        let q2 = r.hi / rhs.hi;
        let r = r.sub(rhs.mul_f64(q2));
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_f64(q3)
    }

    #[inline]
    pub fn div_f64(self, rhs: f64) -> Dd {
        self.div(Dd::from_f64(rhs))
    }

    #[inline]
    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    /// Exact scaling by a power of two.
    #[inline]
    pub fn ldexp(self, k: i32) -> Dd {
        let f = pow2(k);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    /// exp(self); overflows to infinity / underflows to zero like `f64::exp`.
    pub fn exp(self) -> Dd {
        if self.hi > 709.8 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -746.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN2_HI).round();
        let r = self.sub(Dd::LN2.mul_f64(k));
        // e^r with |r| <= 0.347: scale down by 64, Taylor, square back up.
        let r = r.ldexp(-6);
        let mut term = r;
        let mut sum = Dd::ONE.add(r);
        for i in 2..=14 {
            term = term.mul(r).div_f64(i as f64);
            sum = sum.add(term);
            if term.hi.abs() < 1e-35 {
                break;
            }
        }
        for _ in 0..6 {
            sum = sum.mul(sum);
        }
        sum.ldexp(k as i32)
    }

    /// Natural log for positive arguments; one Newton step from the f64 seed.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        let y = Dd::from_f64(self.hi.ln());
        let r = self.mul((-y).exp());
        let d = r.add_f64(-1.0);
        y.add(d).sub(d.mul(d).ldexp(-1))
    }
}

impl std::ops::Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

#[inline]
fn pow2(k: i32) -> f64 {
    // Exact for the exponent range reached by Dd::exp.
    if k >= -1022 {
        f64::from_bits(((k + 1023) as u64) << 52)
    } else {
        0.0
    }
}

/// Complex number with double-double real and imaginary parts. Only the
/// operations needed by the Mittag-Leffler power series are provided.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    #[inline]
    pub fn from_dd(re: Dd) -> Cdd {
        Cdd { re, im: Dd::ZERO }
    }

    #[inline]
    pub fn add(self, rhs: Cdd) -> Cdd {
        Cdd {
            re: self.re.add(rhs.re),
            im: self.im.add(rhs.im),
        }
    }

    /// Multiply by an f64 complex value.
    #[inline]
    pub fn mul_c64(self, z: Complex64) -> Cdd {
        Cdd {
            re: self.re.mul_f64(z.re).sub(self.im.mul_f64(z.im)),
            im: self.re.mul_f64(z.im).add(self.im.mul_f64(z.re)),
        }
    }

    /// Scale by a real double-double factor.
    #[inline]
    pub fn scale(self, s: Dd) -> Cdd {
        Cdd {
            re: self.re.mul(s),
            im: self.im.mul(s),
        }
    }

    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Cheap magnitude estimate (1-norm of the high parts).
    #[inline]
    pub fn mag(self) -> f64 {
        self.re.hi.abs() + self.im.hi.abs()
    }
}

/// Stirling coefficients B_{2j} / (2j (2j-1)) for j = 1..=15, exact rationals
/// evaluated in double-double.
fn stirling_coeffs() -> &'static [Dd; 15] {
    static COEFFS: OnceLock<[Dd; 15]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        const B2J: [(f64, f64); 15] = [
            (1.0, 6.0),
            (-1.0, 30.0),
            (1.0, 42.0),
            (-1.0, 30.0),
            (5.0, 66.0),
            (-691.0, 2730.0),
            (7.0, 6.0),
            (-3617.0, 510.0),
            (43867.0, 798.0),
            (-174611.0, 330.0),
            (854513.0, 138.0),
            (-236364091.0, 2730.0),
            (8553103.0, 6.0),
            (-23749461029.0, 870.0),
            (8615841276005.0, 14322.0),
        ];
        let mut out = [Dd::ZERO; 15];
        for (j, (num, den)) in B2J.iter().enumerate() {
            let two_j = 2.0 * (j as f64 + 1.0);
            out[j] = Dd::from_f64(*num).div(Dd::from_prod(*den, two_j * (two_j - 1.0)));
        }
        out
    })
}

fn ln_sqrt_2pi() -> Dd {
    static VALUE: OnceLock<Dd> = OnceLock::new();
    *VALUE.get_or_init(|| Dd::PI.ldexp(1).ln().ldexp(-1))
}

/// log Gamma(x) for x > 0 in double-double precision.
///
/// Arguments below 35 are shifted up with the recurrence
/// Gamma(x) = Gamma(x + n) / (x (x+1) ... (x+n-1)) and the Stirling series is
/// applied at the shifted point, where fifteen Bernoulli terms leave a
/// remainder far below the double-double epsilon.
pub(crate) fn lgamma_dd(x: Dd) -> Dd {
    debug_assert!(x.hi > 0.0);
    const SHIFT_POINT: f64 = 35.0;
    let mut y = x;
    let mut shift = Dd::ONE;
    let mut shifted = false;
    while y.hi < SHIFT_POINT {
        shift = shift.mul(y);
        y = y.add_f64(1.0);
        shifted = true;
    }
    let ln_y = y.ln();
    let mut s = y.add_f64(-0.5).mul(ln_y).sub(y).add(ln_sqrt_2pi());
    let inv = y.recip();
    let inv2 = inv.mul(inv);
    let mut p = inv;
    for c in stirling_coeffs() {
        s = s.add(c.mul(p));
        p = p.mul(inv2);
    }
    if shifted {
        s = s.sub(shift.ln());
    }
    s
}

/// Gamma(a) / Gamma(b) for positive a, b, computed through the
/// double-double log-Gamma difference. Relative error is a few 1e-16.
pub(crate) fn gamma_ratio(a: f64, b: f64) -> f64 {
    lgamma_dd(Dd::from_f64(a))
        .sub(lgamma_dd(Dd::from_f64(b)))
        .exp()
        .to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_add_keeps_small_parts() {
        let a = Dd::from_f64(1.0);
        let b = Dd::from_f64(1e-25);
        let s = a.add(b);
        assert_eq!(s.hi, 1.0);
        assert_eq!(s.lo, 1e-25);
    }

    #[test]
    fn dd_mul_div_roundtrip() {
        let a = Dd::from_f64(std::f64::consts::PI);
        let b = Dd::from_f64(std::f64::consts::E);
        let c = a.mul(b).div(b);
        assert!((c.sub(a)).to_f64().abs() < 1e-30);
    }

    #[test]
    fn dd_exp_ln_roundtrip() {
        for &x in &[1e-3, 0.5, 1.0, 10.0, 300.0] {
            let d = Dd::from_f64(x);
            let r = d.exp().ln();
            assert!(
                r.sub(d).to_f64().abs() < 1e-28 * x.max(1.0),
                "roundtrip failed at {x}"
            );
        }
    }

    #[test]
    fn dd_exp_matches_f64() {
        for &x in &[-20.0, -1.0, 0.0, 1.0, 20.0, 700.0] {
            let e = Dd::from_f64(x).exp().to_f64();
            let rel = (e - x.exp()).abs() / x.exp();
            assert!(rel < 1e-15, "exp({x}): {e} vs {}", x.exp());
        }
    }

    #[test]
    fn lgamma_integer_factorials() {
        // Gamma(n+1) = n!
        let mut fact = 1.0f64;
        for n in 1..=20u32 {
            fact *= n as f64;
            let g = lgamma_dd(Dd::from_f64(n as f64 + 1.0)).exp().to_f64();
            let rel = (g - fact).abs() / fact;
            assert!(rel < 1e-14, "n={n}: {g} vs {fact}");
        }
    }

    #[test]
    fn lgamma_half() {
        // Gamma(1/2) = sqrt(pi)
        let g = lgamma_dd(Dd::from_f64(0.5)).exp().to_f64();
        let rel = (g - std::f64::consts::PI.sqrt()).abs() / g;
        assert!(rel < 1e-15);
    }

    #[test]
    fn gamma_ratio_against_factorials() {
        // Gamma(10)/Gamma(7) = 9*8*7
        let r = gamma_ratio(10.0, 7.0);
        assert!((r - 504.0).abs() / 504.0 < 1e-14);
    }
}
