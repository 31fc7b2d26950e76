//! High-precision real and complex arithmetic on top of `astro-float`.
//!
//! All operations go through an [`Hp`] context that fixes the working
//! precision and owns the constant cache used by the transcendental functions.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use crate::Rat;

const RM: RoundingMode = RoundingMode::ToEven;

pub const DEFAULT_PRECISION_BITS: usize = 256;

pub struct Hp {
    p: usize,
    cc: Consts,
}

impl fmt::Debug for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hp").field("bits", &self.p).finish()
    }
}

#[derive(Clone, Debug)]
pub struct Cplx {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Hp {
    pub fn new(bits: usize) -> Self {
        Hp {
            p: bits.max(64),
            cc: Consts::new().expect("astro-float constant cache"),
        }
    }

    pub fn bits(&self) -> usize {
        self.p
    }

    pub fn real(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    pub fn int(&self, x: i64) -> BigFloat {
        BigFloat::from_i64(x, self.p)
    }

    pub fn rat(&mut self, x: &Rat) -> BigFloat {
        let num = BigFloat::parse(&x.numer().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        let den = BigFloat::parse(&x.denom().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        num.div(&den, self.p, RM)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, RM)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.p, RM, &mut self.cc)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.p, RM, &mut self.cc)
    }

    pub fn sinh(&mut self, a: &BigFloat) -> BigFloat {
        a.sinh(self.p, RM, &mut self.cc)
    }

    pub fn cosh(&mut self, a: &BigFloat) -> BigFloat {
        a.cosh(self.p, RM, &mut self.cc)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, RM, &mut self.cc)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.p, RM, &mut self.cc)
    }

    /// `a^x` for `a > 0`.
    pub fn powr(&mut self, a: &BigFloat, x: &BigFloat) -> BigFloat {
        let l = self.ln(a);
        let e = self.mul(&l, x);
        self.exp(&e)
    }

    pub fn lt(&self, a: &BigFloat, b: &BigFloat) -> bool {
        matches!(a.cmp(b), Some(c) if c < 0)
    }

    pub fn cmp(&self, a: &BigFloat, b: &BigFloat) -> Ordering {
        match a.cmp(b) {
            Some(c) if c < 0 => Ordering::Less,
            Some(0) => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn max(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        if self.lt(a, b) {
            b.clone()
        } else {
            a.clone()
        }
    }

    /// Scientific decimal rendering.
    pub fn fmt(&mut self, a: &BigFloat) -> String {
        a.format(Radix::Dec, RM, &mut self.cc)
            .unwrap_or_else(|_| "NaN".to_string())
    }

    pub fn to_f64(&mut self, a: &BigFloat) -> f64 {
        if a.is_zero() {
            return 0.0;
        }
        self.fmt(a).parse().unwrap_or(f64::NAN)
    }

    // ----- complex -----

    pub fn c(&self, re: BigFloat, im: BigFloat) -> Cplx {
        Cplx { re, im }
    }

    pub fn c_real(&self, re: BigFloat) -> Cplx {
        Cplx {
            re,
            im: self.int(0),
        }
    }

    pub fn c_zero(&self) -> Cplx {
        self.c_real(self.int(0))
    }

    pub fn c_one(&self) -> Cplx {
        self.c_real(self.int(1))
    }

    /// `i · x` for real `x`.
    pub fn c_imag(&self, im: BigFloat) -> Cplx {
        Cplx {
            re: self.int(0),
            im,
        }
    }

    pub fn cadd(&self, a: &Cplx, b: &Cplx) -> Cplx {
        self.c(self.add(&a.re, &b.re), self.add(&a.im, &b.im))
    }

    pub fn csub(&self, a: &Cplx, b: &Cplx) -> Cplx {
        self.c(self.sub(&a.re, &b.re), self.sub(&a.im, &b.im))
    }

    pub fn cneg(&self, a: &Cplx) -> Cplx {
        self.c(a.re.neg(), a.im.neg())
    }

    pub fn cmul(&self, a: &Cplx, b: &Cplx) -> Cplx {
        let re = self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im));
        let im = self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re));
        self.c(re, im)
    }

    pub fn cscale(&self, a: &Cplx, s: &BigFloat) -> Cplx {
        self.c(self.mul(&a.re, s), self.mul(&a.im, s))
    }

    pub fn cdiv(&self, a: &Cplx, b: &Cplx) -> Cplx {
        let den = self.add(&self.mul(&b.re, &b.re), &self.mul(&b.im, &b.im));
        let re = self.add(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im));
        let im = self.sub(&self.mul(&a.im, &b.re), &self.mul(&a.re, &b.im));
        self.c(self.div(&re, &den), self.div(&im, &den))
    }

    pub fn csqr(&self, a: &Cplx) -> Cplx {
        self.cmul(a, a)
    }

    pub fn cabs(&self, a: &Cplx) -> BigFloat {
        self.sqrt(&self.add(&self.mul(&a.re, &a.re), &self.mul(&a.im, &a.im)))
    }

    pub fn csin(&mut self, a: &Cplx) -> Cplx {
        let (s, c) = (self.sin(&a.re), self.cos(&a.re));
        let (sh, ch) = (self.sinh(&a.im), self.cosh(&a.im));
        self.c(self.mul(&s, &ch), self.mul(&c, &sh))
    }

    pub fn ccos(&mut self, a: &Cplx) -> Cplx {
        let (s, c) = (self.sin(&a.re), self.cos(&a.re));
        let (sh, ch) = (self.sinh(&a.im), self.cosh(&a.im));
        self.c(self.mul(&c, &ch), self.mul(&s, &sh).neg())
    }

    pub fn cexp(&mut self, a: &Cplx) -> Cplx {
        let r = self.exp(&a.re);
        let (s, c) = (self.sin(&a.im), self.cos(&a.im));
        self.c(self.mul(&r, &c), self.mul(&r, &s))
    }

    /// `e^{i x}` for complex `x`.
    pub fn cexp_i(&mut self, x: &Cplx) -> Cplx {
        let ix = self.c(x.im.neg(), x.re.clone());
        self.cexp(&ix)
    }

    pub fn cpowi(&self, a: &Cplx, n: u32) -> Cplx {
        let mut out = self.c_one();
        let mut base = a.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                out = self.cmul(&out, &base);
            }
            base = self.cmul(&base, &base);
            e >>= 1;
        }
        out
    }

    pub fn c_to_f64(&mut self, a: &Cplx) -> (f64, f64) {
        (self.to_f64(&a.re), self.to_f64(&a.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn pythagoras_holds_to_working_precision() {
        let mut hp = Hp::new(256);
        let z = hp.c(hp.real(0.7), hp.real(-0.4));
        let s = hp.csin(&z);
        let c = hp.ccos(&z);
        let one = hp.cadd(&hp.csqr(&s), &hp.csqr(&c));
        let err = hp.cabs(&hp.csub(&one, &hp.c_one()));
        assert!(hp.lt(&err, &hp.real(1e-70)));
    }

    #[test]
    fn rationals_convert_exactly_enough() {
        let mut hp = Hp::new(256);
        let x = hp.rat(&frac(-7, 3));
        let back = hp.mul(&x, &hp.int(3));
        let err = hp.add(&back, &hp.int(7)).abs();
        assert!(hp.lt(&err, &hp.real(1e-70)));
        assert!((hp.to_f64(&x) + 7.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn complex_division_inverts_multiplication() {
        let hp = Hp::new(128);
        let a = hp.c(hp.real(1.5), hp.real(2.0));
        let b = hp.c(hp.real(-0.25), hp.real(3.0));
        let q = hp.cdiv(&hp.cmul(&a, &b), &b);
        assert!(hp.lt(&hp.cabs(&hp.csub(&q, &a)), &hp.real(1e-30)));
        let p = hp.cpowi(&b, 5);
        let mut direct = hp.c_one();
        for _ in 0..5 {
            direct = hp.cmul(&direct, &b);
        }
        assert!(hp.lt(&hp.cabs(&hp.csub(&p, &direct)), &hp.real(1e-30)));
    }
}
