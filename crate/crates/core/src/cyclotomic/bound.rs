//! Certified numeric enclosures: a double-precision ball type and a
//! fixed-point interval type used when doubles cannot decide a sign.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const EPS: f64 = f64::EPSILON;

/// A complex number known to lie within `radius` of `(re, im)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexBound {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl ComplexBound {
    pub fn exact(re: f64, im: f64) -> Self {
        ComplexBound { re, im, radius: 0.0 }
    }

    pub fn zero() -> Self {
        Self::exact(0.0, 0.0)
    }

    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }

    /// Enclosure `[lo, hi]` of the modulus.
    pub fn modulus_range(&self) -> (f64, f64) {
        let m = self.modulus();
        let slack = m * 2.0 * EPS;
        ((m - self.radius - slack).max(0.0), m + self.radius + slack)
    }

    pub fn contains(&self, re: f64, im: f64) -> bool {
        (self.re - re).hypot(self.im - im) <= self.radius
    }

    pub fn add(&self, o: &Self) -> Self {
        let re = self.re + o.re;
        let im = self.im + o.im;
        let round = (re.abs() + im.abs()) * EPS;
        ComplexBound { re, im, radius: self.radius + o.radius + round }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self.re * o.re - self.im * o.im;
        let im = self.re * o.im + self.im * o.re;
        let (ma, mb) = (self.modulus(), o.modulus());
        let round = 4.0 * EPS * ma * mb;
        let radius = ma * o.radius + mb * self.radius + self.radius * o.radius + round;
        ComplexBound { re, im, radius: radius * (1.0 + 4.0 * EPS) }
    }

    /// Sign of the real part when the enclosure decides it.
    pub fn real_sign(&self) -> Option<Ordering> {
        if self.re - self.radius > 0.0 {
            Some(Ordering::Greater)
        } else if self.re + self.radius < 0.0 {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

/// `BigRational → f64` with an absolute error bound.
pub(crate) fn rational_to_f64(q: &BigRational) -> Option<(f64, f64)> {
    let v = q.to_f64()?;
    if !v.is_finite() {
        return None;
    }
    Some((v, v.abs() * 2.0 * EPS + f64::MIN_POSITIVE))
}

/// Double-precision enclosure of `Σ c_j ζ^{jk}` with `ζ = e^{2πi/n}`.
pub(crate) fn eval_double(coeffs: &[BigRational], n: u64, k: u64) -> ComplexBound {
    let mut re = 0.0;
    let mut im = 0.0;
    let mut radius = 0.0;
    let mut scale = 0.0;
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let Some((cv, cerr)) = rational_to_f64(c) else {
            return ComplexBound { re: 0.0, im: 0.0, radius: f64::INFINITY };
        };
        let e = (j as u64 * k) % n;
        let (s, co) = if e == 0 {
            (0.0, 1.0)
        } else {
            (2.0 * PI * e as f64 / n as f64).sin_cos()
        };
        // sin/cos of a rounded argument: a few ulps of absolute error
        let trig_err = if e == 0 { 0.0 } else { 16.0 * EPS };
        re += cv * co;
        im += cv * s;
        radius += cerr + cv.abs() * trig_err * 2.0;
        scale += cv.abs();
    }
    let terms = coeffs.len() as f64 + 2.0;
    radius += 4.0 * terms * EPS * scale;
    ComplexBound { re, im, radius: radius * (1.0 + 8.0 * EPS) }
}

/// Closed interval `[lo, hi]·2^{-bits}` with integer endpoints.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Fixed {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

impl Fixed {
    fn unit(bits: u32) -> BigInt {
        BigInt::one() << bits
    }

    pub(crate) fn from_rational(q: &BigRational, bits: u32) -> Self {
        let scaled = q.numer() << bits;
        let (lo, hi) = floor_ceil(&scaled, q.denom());
        Fixed { lo, hi, bits }
    }

    fn from_int(v: i64, bits: u32) -> Self {
        let x = BigInt::from(v) << bits;
        Fixed { lo: x.clone(), hi: x, bits }
    }

    fn add(&self, o: &Self) -> Self {
        Fixed { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, bits: self.bits }
    }

    fn neg(&self) -> Self {
        Fixed { lo: -&self.hi, hi: -&self.lo, bits: self.bits }
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        let prods = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let min = prods.iter().min().unwrap();
        let max = prods.iter().max().unwrap();
        let unit = Self::unit(self.bits);
        Fixed { lo: min.div_floor(&unit), hi: div_ceil(max, &unit), bits: self.bits }
    }

    fn div_int(&self, d: &BigInt) -> Self {
        debug_assert!(d.is_positive());
        Fixed { lo: self.lo.div_floor(d), hi: div_ceil(&self.hi, d), bits: self.bits }
    }

    /// Widens by `±e` where `e` is an upper bound given in fixed units.
    fn widen(&self, e: &BigInt) -> Self {
        Fixed { lo: &self.lo - e, hi: &self.hi + e, bits: self.bits }
    }

    fn upper_abs(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }

    pub(crate) fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

fn floor_ceil(n: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    (n.div_floor(d), div_ceil(n, d))
}

fn div_ceil(n: &BigInt, d: &BigInt) -> BigInt {
    -((-n).div_floor(d))
}

/// `atan(1/m)` by its alternating series.
fn atan_inv(m: u64, bits: u32) -> Fixed {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut sum = Fixed::from_int(0, bits);
    let mut power = m.clone();
    let mut k: u64 = 0;
    loop {
        let denom = BigInt::from(2 * k + 1) * &power;
        let term = Fixed::from_int(1, bits).div_int(&denom);
        if k.is_multiple_of(2) {
            sum = sum.add(&term);
        } else {
            sum = sum.sub(&term);
        }
        if term.hi <= BigInt::one() {
            // remaining tail is below the next term, itself below one unit
            return sum.widen(&BigInt::from(2));
        }
        power *= &m2;
        k += 1;
    }
}

fn pi(bits: u32) -> Fixed {
    let a = atan_inv(5, bits);
    let b = atan_inv(239, bits);
    let sixteen = Fixed::from_int(16, bits);
    let four = Fixed::from_int(4, bits);
    sixteen.mul(&a).sub(&four.mul(&b))
}

/// Enclosures of `(cos x, sin x)` for `0 ≤ x ≤ 2π` by Taylor series with a
/// Lagrange tail bound.
fn cos_sin(x: &Fixed) -> (Fixed, Fixed) {
    let bits = x.bits;
    let one = Fixed::from_int(1, bits);
    let mut cos = one.clone();
    let mut sin = Fixed::from_int(0, bits);
    let mut term = one;
    let mut i: u64 = 1;
    let xmax = x.upper_abs();
    loop {
        term = term.mul(x).div_int(&BigInt::from(i));
        match i % 4 {
            1 => sin = sin.add(&term),
            2 => cos = cos.sub(&term),
            3 => sin = sin.sub(&term),
            _ => cos = cos.add(&term),
        }
        i += 1;
        // once |x| ≤ (i+1)/2 the tail is at most the last term
        let t = term.upper_abs();
        if &xmax * BigInt::from(2) <= Fixed::unit(bits) * BigInt::from(i + 1) && t <= BigInt::from(2) {
            let tail = t * 2 + BigInt::from(4);
            return (cos.widen(&tail), sin.widen(&tail));
        }
    }
}

/// Fixed-point enclosure of the real and imaginary parts of
/// `Σ c_j ζ^{jk}` with `ζ = e^{2πi/n}`.
pub(crate) fn eval_fixed(coeffs: &[BigRational], n: u64, k: u64, bits: u32) -> (Fixed, Fixed) {
    let work = bits + 16;
    let two_pi = pi(work).mul(&Fixed::from_int(2, work));
    let mut re = Fixed::from_int(0, work);
    let mut im = Fixed::from_int(0, work);
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = (j as u64 * k) % n;
        let (co, s) = if e == 0 {
            (Fixed::from_int(1, work), Fixed::from_int(0, work))
        } else {
            let angle = two_pi.mul(&Fixed::from_int(e as i64, work)).div_int(&BigInt::from(n));
            cos_sin(&angle)
        };
        let cf = Fixed::from_rational(c, work);
        re = re.add(&cf.mul(&co));
        im = im.add(&cf.mul(&s));
    }
    (re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_f64(f: &Fixed) -> (f64, f64) {
        let scale = 2f64.powi(f.bits as i32);
        (f.lo.to_f64().unwrap() / scale, f.hi.to_f64().unwrap() / scale)
    }

    #[test]
    fn pi_enclosure() {
        let p = pi(200);
        let (lo, hi) = to_f64(&p);
        assert!(lo <= PI && PI <= hi);
        assert!(&p.hi - &p.lo < BigInt::from(1000));
    }

    #[test]
    fn trig_enclosures() {
        for e in 1..12 {
            let x = pi(128).mul(&Fixed::from_int(2 * e, 128)).div_int(&BigInt::from(12));
            let (c, s) = cos_sin(&x);
            let t = 2.0 * PI * e as f64 / 12.0;
            let (cl, ch) = to_f64(&c);
            let (sl, sh) = to_f64(&s);
            assert!(cl - 1e-15 <= t.cos() && t.cos() <= ch + 1e-15, "cos e={e}");
            assert!(sl - 1e-15 <= t.sin() && t.sin() <= sh + 1e-15, "sin e={e}");
        }
    }

    #[test]
    fn ball_arithmetic_contains_truth() {
        let a = ComplexBound { re: 1.0, im: 2.0, radius: 1e-10 };
        let b = ComplexBound { re: -0.5, im: 0.25, radius: 1e-12 };
        let p = a.mul(&b);
        assert!(p.contains(1.0 * -0.5 - 2.0 * 0.25, 0.25 - 1.0));
        assert!(a.add(&b).contains(0.5, 2.25));
    }
}
