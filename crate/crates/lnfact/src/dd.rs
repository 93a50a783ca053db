//! Double-double arithmetic used internally to assemble the large-magnitude
//! pieces of the evaluators (`Z ln Z - Z + ln sqrt(2 pi)`, the shift-descent
//! log sum, and the `2 pi i K` branch subtraction).
//!
//! A value is an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving
//! roughly 31 significant decimal digits. The point is not extra output
//! precision: independently computed evaluation routes must round to within
//! one ulp of each other even where `|ln z!|` is in the thousands, which a
//! plain f64 assembly cannot guarantee. Algorithms are the classical
//! Dekker/Knuth error-free transformations plus the exp/log/sincos recipes
//! from Bailey's QD library.

/// `a + b` as an exact (sum, error) pair. Knuth's TwoSum, no magnitude
/// precondition.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// `a + b` as an exact (sum, error) pair, requiring `|a| >= |b|` or a == 0.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

/// `a * b` as an exact (product, error) pair via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = f64::mul_add(a, b, -p);
    (p, err)
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub(crate) const DD_ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
pub(crate) const DD_ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
/// pi; the standard hi/lo pair (lo = pi - f64::consts::PI).
pub(crate) const DD_PI: Dd = Dd {
    hi: 3.141592653589793,
    lo: 1.2246467991473532e-16,
};
/// pi/2 (exact halving of `DD_PI`).
pub(crate) const DD_PI_2: Dd = Dd {
    hi: 1.5707963267948966,
    lo: 6.123233995736766e-17,
};
/// 2 pi (exact doubling of `DD_PI`).
pub(crate) const DD_TWO_PI: Dd = Dd {
    hi: 6.283185307179586,
    lo: 2.4492935982947064e-16,
};
/// ln 2.
pub(crate) const DD_LN2: Dd = Dd {
    hi: 0.6931471805599453,
    lo: 2.3190468138462996e-17,
};

impl Dd {
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Renormalize a raw (hi, lo) pair.
    #[inline]
    fn renorm(hi: f64, lo: f64) -> Self {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Self {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn add(self, other: Dd) -> Self {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        Dd::renorm(s1, s2)
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Self {
        self.add(other.neg())
    }

    #[inline]
    pub fn add_f64(self, other: f64) -> Self {
        let (s1, s2) = two_sum(self.hi, other);
        let s2 = s2 + self.lo;
        Dd::renorm(s1, s2)
    }

    pub fn mul(self, other: Dd) -> Self {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        Dd::renorm(p1, p2)
    }

    pub fn mul_f64(self, other: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, other);
        let p2 = p2 + self.lo * other;
        Dd::renorm(p1, p2)
    }

    pub fn div(self, other: Dd) -> Self {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd::renorm(s, e + q3)
    }

    /// Scale by 2^k (exact).
    #[inline]
    pub fn ldexp(self, k: i32) -> Self {
        let f = (k as f64).exp2();
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    /// exp(self); valid for |self| < ~709 (f64 exp range).
    pub fn exp(self) -> Self {
        // Reduce: self = n ln2 + r, |r| <= ln2/2, then scale r by 2^-9 so a
        // short Taylor series of expm1 converges, and square back up with
        // expm1(2a) = expm1(a)^2 + 2 expm1(a).
        let n = (self.hi / DD_LN2.hi).round();
        let r = self.sub(DD_LN2.mul_f64(n));
        let r = r.ldexp(-9);

        // expm1(r) by Taylor; |r| <= 0.000678 so 10 terms reach ~1e-35.
        let mut term = r;
        let mut sum = r;
        for k in 2..=10u32 {
            term = term.mul(r).mul_f64(1.0 / k as f64);
            sum = sum.add(term);
        }
        let mut s = sum;
        for _ in 0..9 {
            s = s.mul(s).add(s.ldexp(1));
        }
        s.add(DD_ONE).ldexp(n as i32)
    }

    /// Natural log of a positive value: f64 seed plus one Newton step
    /// evaluated in double-double.
    pub fn ln(self) -> Self {
        debug_assert!(self.hi > 0.0);
        let y0 = self.hi.ln();
        // t = a e^{-y0} - 1 is ~1 ulp of y0; ln a = y0 + ln(1+t).
        let t = self.mul(Dd::from_f64(-y0).exp()).sub(DD_ONE);
        let correction = t.sub(t.mul(t).ldexp(-1));
        Dd::from_f64(y0).add(correction)
    }

    /// sin and cos via reduction against pi/2 and Taylor on |r| <= pi/4.
    /// Input must already be in (-pi - eps, pi + eps]; only used to polish
    /// f64 atan2 results.
    fn sincos(theta: f64) -> (Dd, Dd) {
        let k = (theta / DD_PI_2.hi).round();
        let r = Dd::from_f64(theta).sub(DD_PI_2.mul_f64(k));
        let r2 = r.mul(r);

        // sin(r) = r * P(r^2), cos(r) = Q(r^2); 15 terms each cover
        // |r| <= pi/4 to ~1e-33.
        let mut s = r;
        let mut term = r;
        let mut sign = -1.0;
        for k in 1..=14u32 {
            let d = (2 * k) as f64 * (2 * k + 1) as f64;
            term = term.mul(r2).mul_f64(1.0 / d);
            s = s.add(term.mul_f64(sign));
            sign = -sign;
        }
        let mut c = DD_ONE;
        let mut term = DD_ONE;
        let mut sign = -1.0;
        for k in 1..=14u32 {
            let d = (2 * k - 1) as f64 * (2 * k) as f64;
            term = term.mul(r2).mul_f64(1.0 / d);
            c = c.add(term.mul_f64(sign));
            sign = -sign;
        }

        match (k as i32).rem_euclid(4) {
            0 => (s, c),
            1 => (c, s.neg()),
            2 => (s.neg(), c.neg()),
            _ => (c.neg(), s),
        }
    }

    /// atan2(y, x) polished to double-double accuracy. One correction step
    /// from the f64 seed: tan(theta - theta0) = (y c0 - x s0)/(x c0 + y s0).
    pub fn atan2(y: f64, x: f64) -> Dd {
        if y == 0.0 {
            return if x.is_sign_negative() {
                if y.is_sign_negative() {
                    DD_PI.neg()
                } else {
                    DD_PI
                }
            } else {
                Dd::from_f64(y.atan2(x))
            };
        }
        if x == 0.0 {
            return if y > 0.0 { DD_PI_2 } else { DD_PI_2.neg() };
        }
        let theta0 = y.atan2(x);
        let (s0, c0) = Dd::sincos(theta0);
        let num = c0.mul_f64(y).sub(s0.mul_f64(x));
        let den = c0.mul_f64(x).add(s0.mul_f64(y));
        let delta = num.div(den);
        Dd::from_f64(theta0).add(delta)
    }
}

/// Complex value carried in double-double components.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub fn new(re: Dd, im: Dd) -> Self {
        Cdd { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Cdd {
            re: Dd::from_f64(re),
            im: Dd::from_f64(im),
        }
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(self, other: Cdd) -> Self {
        Cdd::new(self.re.add(other.re), self.im.add(other.im))
    }

    pub fn sub(self, other: Cdd) -> Self {
        Cdd::new(self.re.sub(other.re), self.im.sub(other.im))
    }

    pub fn mul(self, other: Cdd) -> Self {
        let re = self.re.mul(other.re).sub(self.im.mul(other.im));
        let im = self.re.mul(other.im).add(self.im.mul(other.re));
        Cdd::new(re, im)
    }

    /// Principal complex log of an f64 point (x + iy), with double-double
    /// modulus and argument. Rescales to dodge overflow of x^2 + y^2.
    pub fn ln_xy(x: f64, y: f64) -> Cdd {
        debug_assert!(x != 0.0 || y != 0.0);
        let m = x.abs().max(y.abs());
        let e = if m > 1e150 {
            540
        } else if m < 1e-150 {
            -540
        } else {
            0
        };
        let xs = x * (-e as f64).exp2();
        let ys = y * (-e as f64).exp2();
        let r2 = Dd::from_f64(xs)
            .mul(Dd::from_f64(xs))
            .add(Dd::from_f64(ys).mul(Dd::from_f64(ys)));
        let ln_mod = r2.ln().ldexp(-1).add(DD_LN2.mul_f64(e as f64));
        Cdd::new(ln_mod, Dd::atan2(y, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd_close(a: Dd, b: Dd, tol: f64) {
        let d = a.sub(b);
        let scale = b.hi.abs().max(1e-300);
        assert!(
            (d.to_f64() / scale).abs() < tol,
            "dd mismatch: {a:?} vs {b:?}"
        );
    }

    #[test]
    fn constants_are_consistent() {
        assert_eq!(DD_PI.hi, std::f64::consts::PI);
        assert_eq!(DD_PI_2.hi, std::f64::consts::FRAC_PI_2);
        assert_eq!(DD_TWO_PI.hi, std::f64::consts::TAU);
        assert_eq!(DD_LN2.hi, std::f64::consts::LN_2);
        dd_close(DD_PI.ldexp(1), DD_TWO_PI, 1e-31);
        dd_close(DD_PI.ldexp(-1), DD_PI_2, 1e-31);
    }

    #[test]
    fn exp_ln_roundtrip() {
        for &x in &[0.1, 0.9, 1.0, 2.5, 10.0, 123.456, 700.0, 1e-8, 3.3e5] {
            let d = Dd::from_f64(x);
            dd_close(d.ln().exp(), d, 1e-29);
        }
    }

    #[test]
    fn ln_of_two_matches_constant() {
        dd_close(Dd::from_f64(2.0).ln(), DD_LN2, 1e-30);
        dd_close(Dd::from_f64(0.5).ln(), DD_LN2.neg(), 1e-30);
    }

    #[test]
    fn exp_one_is_e() {
        // e to 32 digits: 2.7182818284590452353602874713527
        let e = Dd {
            hi: 2.718281828459045,
            lo: 1.4456468917292502e-16,
        };
        dd_close(DD_ONE.exp(), e, 1e-30);
    }

    #[test]
    fn sincos_identity() {
        for &t in &[0.0, 0.3, -0.9, 1.5707, 2.5, 3.1, -3.1, 3.141592653589793] {
            let (s, c) = Dd::sincos(t);
            let one = s.mul(s).add(c.mul(c));
            dd_close(one, DD_ONE, 1e-30);
            assert!((s.hi - t.sin()).abs() <= 2.0 * f64::EPSILON * (1.0 + t.sin().abs()));
            assert!((c.hi - t.cos()).abs() <= 2.0 * f64::EPSILON * (1.0 + t.cos().abs()));
        }
    }

    #[test]
    fn atan2_known_points() {
        let q = Dd::atan2(1.0, 1.0);
        dd_close(q, DD_PI.ldexp(-2), 1e-30);
        dd_close(Dd::atan2(1.0, 0.0), DD_PI_2, 1e-31);
        dd_close(Dd::atan2(0.0, -1.0), DD_PI, 1e-31);
        dd_close(Dd::atan2(-1.0, 1.0), DD_PI.ldexp(-2).neg(), 1e-30);
        // atan2(y,x) + atan2(x,y) = pi/2 in the first quadrant
        for &(y, x) in &[(1.0, 2.0), (3.0, 0.1), (1e-3, 7.0), (123.0, 456.0)] {
            let sum = Dd::atan2(y, x).add(Dd::atan2(x, y));
            dd_close(sum, DD_PI_2, 1e-30);
        }
    }

    #[test]
    fn atan2_is_odd_in_y() {
        for &(y, x) in &[(0.7, 1.3), (2.0, -0.4), (1e-9, -5.0)] {
            let a = Dd::atan2(y, x);
            let b = Dd::atan2(-y, x);
            assert_eq!(a.hi, -b.hi);
            assert_eq!(a.lo, -b.lo);
        }
    }

    #[test]
    fn complex_ln_of_one_plus_i() {
        // ln(1+i) = (ln 2)/2 + i pi/4
        let l = Cdd::ln_xy(1.0, 1.0);
        dd_close(l.re, DD_LN2.ldexp(-1), 1e-30);
        dd_close(l.im, DD_PI.ldexp(-2), 1e-30);
    }

    #[test]
    fn complex_ln_survives_extreme_magnitudes() {
        let l = Cdd::ln_xy(1e200, 1e200);
        // ln|z| = 200 ln 10 + (ln 2)/2
        let expect = Dd::from_f64(10.0).ln().mul_f64(200.0).add(DD_LN2.ldexp(-1));
        dd_close(l.re, expect, 1e-29);
        let l = Cdd::ln_xy(3e-180, -4e-180);
        let expect = Dd::from_f64(5.0).ln().add(Dd::from_f64(10.0).ln().mul_f64(-180.0));
        dd_close(l.re, expect, 1e-29);
    }

    #[test]
    fn division_and_multiplication() {
        let a = Dd::from_f64(1.0).div(Dd::from_f64(3.0));
        dd_close(a.mul_f64(3.0), DD_ONE, 1e-31);
        let b = DD_PI.mul(DD_PI).div(DD_PI);
        dd_close(b, DD_PI, 1e-31);
    }
}
