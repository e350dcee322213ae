//! Binary fixed-point complex numbers over big integers, used for the
//! character-product L-function where more than double precision is needed.

use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::quotient::Turn;

/// Real and imaginary parts scaled by `2^bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComplex {
    pub re: BigInt,
    pub im: BigInt,
}

/// Precision context: all values share the scale `2^bits`.
#[derive(Debug, Clone)]
pub struct FixedContext {
    bits: u32,
    /// `π` scaled by `2^(bits + GUARD)`.
    pi: BigInt,
    cache: HashMap<Turn, FixedComplex>,
}

/// Extra bits carried through the root-of-unity series.
const GUARD: u32 = 32;

/// `x / 2^k` rounded to nearest.
fn shift_round(x: BigInt, k: u32) -> BigInt {
    if k == 0 {
        return x;
    }
    let half = BigInt::one() << (k - 1);
    (x + half) >> k
}

impl FixedContext {
    pub fn new(bits: u32) -> Self {
        let pi = machin_pi(bits + GUARD);
        Self {
            bits,
            pi,
            cache: HashMap::new(),
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn one(&self) -> FixedComplex {
        FixedComplex {
            re: BigInt::one() << self.bits,
            im: BigInt::zero(),
        }
    }

    pub fn zero(&self) -> FixedComplex {
        FixedComplex {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    pub fn from_int(&self, k: i64) -> FixedComplex {
        FixedComplex {
            re: BigInt::from(k) << self.bits,
            im: BigInt::zero(),
        }
    }

    pub fn mul(&self, a: &FixedComplex, b: &FixedComplex) -> FixedComplex {
        let re = &a.re * &b.re - &a.im * &b.im;
        let im = &a.re * &b.im + &a.im * &b.re;
        FixedComplex {
            re: shift_round(re, self.bits),
            im: shift_round(im, self.bits),
        }
    }

    /// `exp(2πi·t)`, cached per turn.
    pub fn root_of_unity(&mut self, t: Turn) -> FixedComplex {
        if let Some(z) = self.cache.get(&t) {
            return z.clone();
        }
        let z = self.compute_root(t);
        self.cache.insert(t, z.clone());
        z
    }

    fn compute_root(&self, t: Turn) -> FixedComplex {
        // exact values on the axes avoid needless rounding
        let (num, den) = (t.num(), t.den());
        if 4 * num % den == 0 {
            let one = BigInt::one() << self.bits;
            return match 4 * num / den {
                0 => FixedComplex { re: one, im: BigInt::zero() },
                1 => FixedComplex { re: BigInt::zero(), im: one },
                2 => FixedComplex { re: -one, im: BigInt::zero() },
                _ => FixedComplex { re: BigInt::zero(), im: -one },
            };
        }
        // angle in (−π, π]: 2π·num/den with num shifted into (−den/2, den/2]
        let centered = if 2 * num > den { num - den } else { num };
        let prec = self.bits + GUARD;
        let theta = (&self.pi * BigInt::from(2 * centered)).div_floor(&BigInt::from(den));
        let (c, s) = cos_sin(&theta, prec);
        FixedComplex {
            re: shift_round(c, GUARD),
            im: shift_round(s, GUARD),
        }
    }

    /// Distance of a real fixed-point value from the nearest integer and
    /// that integer.
    pub fn round(&self, x: &BigInt) -> (BigInt, f64) {
        let nearest = shift_round(x.clone(), self.bits);
        let diff = x - (&nearest << self.bits);
        (nearest, self.to_f64(&diff.abs()))
    }

    /// Converts a scaled value to `f64`.
    pub fn to_f64(&self, x: &BigInt) -> f64 {
        let excess = x.bits().saturating_sub(60) as u32;
        let top = (x >> excess).to_f64().unwrap_or(f64::INFINITY);
        top * 2f64.powi(excess as i32 - self.bits as i32)
    }

    /// `π` at the working scale.
    pub fn pi(&self) -> BigInt {
        shift_round(self.pi.clone(), GUARD)
    }
}

impl Add for &FixedComplex {
    type Output = FixedComplex;
    fn add(self, rhs: Self) -> FixedComplex {
        FixedComplex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &FixedComplex {
    type Output = FixedComplex;
    fn sub(self, rhs: Self) -> FixedComplex {
        FixedComplex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul<&BigInt> for &FixedComplex {
    type Output = FixedComplex;
    /// Multiplication by an unscaled integer.
    fn mul(self, k: &BigInt) -> FixedComplex {
        FixedComplex {
            re: &self.re * k,
            im: &self.im * k,
        }
    }
}

/// `arctan(1/x)·2^bits` by its alternating series.
fn arctan_inv(x: i64, bits: u32) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << bits) / &x;
    let mut sum = BigInt::zero();
    let mut k = 0i64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// `π·2^bits` via Machin's formula `π = 16 arctan(1/5) − 4 arctan(1/239)`.
fn machin_pi(bits: u32) -> BigInt {
    let guard = 16;
    let p = 16 * arctan_inv(5, bits + guard) - 4 * arctan_inv(239, bits + guard);
    shift_round(p, guard)
}

/// `(cos θ, sin θ)·2^bits` for a scaled `|θ| ≤ π`, by the Taylor series of `exp(iθ)`.
fn cos_sin(theta: &BigInt, bits: u32) -> (BigInt, BigInt) {
    let mut re = BigInt::one() << bits;
    let mut im = BigInt::zero();
    let mut term_re = re.clone();
    let mut term_im = BigInt::zero();
    let mut k = 1u64;
    loop {
        // term *= iθ / k
        let new_re = -shift_round(&term_im * theta, bits) / BigInt::from(k);
        let new_im = shift_round(&term_re * theta, bits) / BigInt::from(k);
        term_re = new_re;
        term_im = new_im;
        if term_re.is_zero() && term_im.is_zero() {
            break;
        }
        re += &term_re;
        im += &term_im;
        k += 1;
    }
    (re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let ctx = FixedContext::new(200);
        let approx = ctx.to_f64(&ctx.pi());
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn cube_roots_multiply_to_one() {
        let mut ctx = FixedContext::new(160);
        let w = ctx.root_of_unity(Turn::new(1, 3));
        assert!((ctx.to_f64(&w.re) + 0.5).abs() < 1e-15);
        let w3 = ctx.mul(&ctx.mul(&w, &w), &w);
        let (r, dev) = ctx.round(&w3.re);
        assert_eq!(r, BigInt::one());
        assert!(dev < 1e-40);
        assert!(ctx.to_f64(&w3.im.abs()) < 1e-40);
    }

    #[test]
    fn axis_roots_are_exact() {
        let mut ctx = FixedContext::new(64);
        assert_eq!(ctx.root_of_unity(Turn::new(1, 2)), ctx.from_int(-1));
        let i = ctx.root_of_unity(Turn::new(1, 4));
        assert_eq!(ctx.mul(&i, &i), ctx.from_int(-1));
    }
}
