//! Extended-range reals: `mant * 2^exp` with an integer binary exponent.
//!
//! Coulomb solutions span thousands of decades across a radial grid. Keeping
//! the exponent as an integer makes products and quotients exact in the
//! exponent, so factors like `e^{qr} * e^{-qr}` cancel without rounding.

use super::dd::Dd;
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

const LN2_HI: f64 = std::f64::consts::LN_2;
const LN2_LO: f64 = 2.319_046_813_846_299_6e-17;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled {
    /// Either zero or in `[0.5, 1)` in magnitude.
    mant: f64,
    exp: i64,
}

/// Splits a finite non-zero `x` into `(m, e)` with `x = m * 2^e`, `|m|` in `[0.5, 1)`.
fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    if biased == 0 {
        // subnormal
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let e = biased - 1022;
    let m_bits = (bits & !(0x7ffu64 << 52)) | (1022u64 << 52);
    (f64::from_bits(m_bits), e)
}

/// `x * 2^e`, saturating to zero / infinity outside the f64 range.
pub fn ldexp(x: f64, e: i64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    if e > 2100 {
        return x.signum() * f64::INFINITY;
    }
    if e < -2200 {
        return 0.0 * x.signum();
    }
    let mut x = x;
    let mut e = e;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

impl Scaled {
    pub const ZERO: Scaled = Scaled { mant: 0.0, exp: 0 };
    pub const ONE: Scaled = Scaled { mant: 0.5, exp: 1 };

    pub fn new(x: f64) -> Self {
        let (mant, exp) = frexp(x);
        Scaled { mant, exp }
    }

    pub fn from_parts(mant: f64, exp: i64) -> Self {
        let (m, e) = frexp(mant);
        Scaled { mant: m, exp: e + exp }
    }

    /// `e^x` for arbitrary finite `x`, accurate to a few ulp in the mantissa even
    /// when `|x|` is far beyond the f64 exponent range.
    pub fn exp(x: f64) -> Self {
        let n = (x * std::f64::consts::LOG2_E).round();
        // x - n ln2 with the product carried exactly.
        let p = Dd::prod(n, LN2_HI);
        let f = ((x - p.hi) - p.lo) - n * LN2_LO;
        Scaled::from_parts(f.exp(), n as i64)
    }

    /// `x^y` for `x > 0`.
    pub fn powf(x: f64, y: f64) -> Self {
        let (m, e) = frexp(x);
        // x^y = m^y * 2^(e y); split e*y into integer and fractional parts.
        let ey = Dd::prod(e as f64, y);
        let n = ey.hi.round();
        let frac = (ey.hi - n) + ey.lo;
        let mant = (y * m.ln() + frac * LN2_HI).exp();
        Scaled::from_parts(mant, n as i64)
    }

    pub fn mant(&self) -> f64 {
        self.mant
    }

    pub fn exp2(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant == 0.0
    }

    pub fn signum(&self) -> f64 {
        if self.mant == 0.0 {
            0.0
        } else {
            self.mant.signum()
        }
    }

    pub fn abs(self) -> Self {
        Scaled {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.mant.is_finite()
    }

    /// Natural log of the magnitude.
    pub fn ln_abs(&self) -> f64 {
        self.mant.abs().ln() + self.exp as f64 * LN2_HI
    }

    /// Conversion to f64 (may overflow to infinity or underflow to zero).
    pub fn to_f64(self) -> f64 {
        ldexp(self.mant, self.exp)
    }

    pub fn mul_f64(self, x: f64) -> Self {
        Scaled::from_parts(self.mant * x, self.exp)
    }

    /// Value times `2^e`, exactly.
    pub fn shift(self, e: i64) -> Self {
        if self.mant == 0.0 {
            return self;
        }
        Scaled {
            mant: self.mant,
            exp: self.exp + e,
        }
    }

    /// Magnitude comparison.
    pub fn cmp_abs(&self, other: &Scaled) -> Ordering {
        match (self.mant == 0.0, other.mant == 0.0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self
                .exp
                .cmp(&other.exp)
                .then(self.mant.abs().total_cmp(&other.mant.abs())),
        }
    }
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, o: Scaled) -> Scaled {
        Scaled::from_parts(self.mant * o.mant, self.exp + o.exp)
    }
}

impl Div for Scaled {
    type Output = Scaled;
    fn div(self, o: Scaled) -> Scaled {
        Scaled::from_parts(self.mant / o.mant, self.exp - o.exp)
    }
}

impl Add for Scaled {
    type Output = Scaled;
    fn add(self, o: Scaled) -> Scaled {
        if self.mant == 0.0 {
            return o;
        }
        if o.mant == 0.0 {
            return self;
        }
        let (big, small) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let d = big.exp - small.exp;
        if d > 1100 {
            return big;
        }
        Scaled::from_parts(big.mant + ldexp(small.mant, -d), big.exp)
    }
}

impl Neg for Scaled {
    type Output = Scaled;
    fn neg(self) -> Scaled {
        Scaled {
            mant: -self.mant,
            exp: self.exp,
        }
    }
}

impl Sub for Scaled {
    type Output = Scaled;
    fn sub(self, o: Scaled) -> Scaled {
        self + (-o)
    }
}

impl From<f64> for Scaled {
    fn from(x: f64) -> Self {
        Scaled::new(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_large_argument_cancels_exactly() {
        let x = 4.2e8_f64;
        let p = Scaled::exp(x) * Scaled::exp(-x);
        assert!((p.to_f64() - 1.0).abs() < 1e-15);
        let q = Scaled::exp(700.0).to_f64();
        assert!((q / 700f64.exp() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn exp_matches_std_on_moderate_range() {
        for &x in &[-30.0, -1.5, 0.0, 0.3, 12.0, 200.0] {
            let v = Scaled::exp(x).to_f64();
            assert!((v / f64::exp(x) - 1.0).abs() < 4e-15, "x={x}");
        }
    }

    #[test]
    fn powf_and_ln() {
        let v = Scaled::powf(3.7, 2.25);
        assert!((v.to_f64() / 3.7f64.powf(2.25) - 1.0).abs() < 1e-14);
        let big = Scaled::powf(1e8, 60.0);
        assert!((big.ln_abs() - 60.0 * 1e8f64.ln()).abs() < 1e-12 * 1105.0);
    }

    #[test]
    fn add_aligns_exponents() {
        let a = Scaled::new(3.0);
        let b = Scaled::new(-0.25);
        assert_eq!((a + b).to_f64(), 2.75);
        let huge = Scaled::exp(5000.0);
        assert_eq!((huge + Scaled::ONE).cmp_abs(&huge), Ordering::Equal);
    }

    #[test]
    fn frexp_handles_subnormals() {
        let x = 3.0e-310;
        let s = Scaled::new(x);
        assert!(s.mant().abs() >= 0.5 && s.mant().abs() < 1.0);
        assert_eq!(s.to_f64(), x);
    }
}
