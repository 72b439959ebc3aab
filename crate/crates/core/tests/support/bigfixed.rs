//! Binary fixed-point reals on top of `BigInt`, precise enough to run the
//! moment recurrence to k = 400 without losing the leading digits.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Fractional bits.
pub const BITS: u64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct Fixed(BigInt);

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 500 {
        x *= 2f64.powi(500);
        e -= 500;
    }
    while e < -500 {
        x *= 2f64.powi(-500);
        e += 500;
    }
    x * 2f64.powi(e as i32)
}

impl Fixed {
    pub fn int(v: i64) -> Self {
        Fixed(BigInt::from(v) << BITS)
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Fixed((BigInt::from(p) << BITS) / BigInt::from(q))
    }

    pub fn zero() -> Self {
        Fixed(BigInt::zero())
    }

    pub fn is_negligible(&self) -> bool {
        self.0.bits() < 8
    }

    pub fn abs(&self) -> Self {
        Fixed(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.0.bits();
        if bits <= 64 {
            return ldexp(self.0.to_f64().unwrap(), -(BITS as i64));
        }
        let shift = bits - 64;
        let top = (&self.0 >> shift).to_f64().unwrap();
        ldexp(top, shift as i64 - BITS as i64)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Fixed(&self.0 * k)
    }

    pub fn div_int(&self, k: i64) -> Self {
        Fixed(&self.0 / k)
    }

    pub fn powi(&self, e: u32) -> Self {
        (0..e).fold(Fixed::int(1), |acc, _| &acc * self)
    }

    /// `atan(1/k)` for integer `k >= 2`.
    fn atan_inv(k: i64) -> Self {
        let k2 = BigInt::from(k * k);
        let mut power = (BigInt::one() << BITS) / k;
        let mut sum = power.clone();
        let mut j = 1i64;
        loop {
            power = -power / &k2;
            if power.is_zero() {
                return Fixed(sum);
            }
            sum += &power / (2 * j + 1);
            j += 1;
        }
    }

    pub fn pi() -> Self {
        // Machin: π = 16 atan(1/5) − 4 atan(1/239)
        &Self::atan_inv(5).mul_int(16) - &Self::atan_inv(239).mul_int(4)
    }

    /// Taylor series; intended for `|x| <= 2`.
    pub fn sin_cos(&self) -> (Self, Self) {
        let x2 = self * self;
        let mut sin = self.clone();
        let mut cos = Fixed::int(1);
        let mut s_term = self.clone();
        let mut c_term = Fixed::int(1);
        let mut j = 1i64;
        loop {
            s_term = (-&(&s_term * &x2)).div_int((2 * j) * (2 * j + 1));
            c_term = (-&(&c_term * &x2)).div_int((2 * j - 1) * (2 * j));
            if s_term.0.is_zero() && c_term.0.is_zero() {
                return (sin, cos);
            }
            sin = &sin + &s_term;
            cos = &cos + &c_term;
            j += 1;
        }
    }

    pub fn tan(&self) -> Self {
        let (s, c) = self.sin_cos();
        &s / &c
    }
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, o: &Fixed) -> Fixed {
        Fixed(&self.0 + &o.0)
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, o: &Fixed) -> Fixed {
        Fixed(&self.0 - &o.0)
    }
}

impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, o: &Fixed) -> Fixed {
        Fixed((&self.0 * &o.0) >> BITS)
    }
}

impl Div for &Fixed {
    type Output = Fixed;
    fn div(self, o: &Fixed) -> Fixed {
        Fixed((&self.0 << BITS) / &o.0)
    }
}

impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed(-&self.0)
    }
}

/// `I_{n,j}` for `j = 0..=k_max` from the two-term recurrence
/// `I_j = −j(j−1)/4 · I_{j−2} + h(j)`, seeded with `I_0 = 1` and the exact
/// first moment.
pub fn moments(n: u32, k_max: u32) -> Vec<Fixed> {
    let pi = Fixed::pi();
    let half_pi = pi.div_int(2);
    let n_i = i64::from(n);
    let (first, h): (Fixed, Box<dyn Fn(u32) -> Fixed>) = if n == 2 {
        let first = &(&Fixed::int(1) / &pi) + &pi.div_int(4);
        let (hp, p) = (half_pi.clone(), pi.clone());
        (
            first,
            Box::new(move |j| {
                let a = hp.powi(j).div_int(i64::from(j) + 1);
                let b = &hp.powi(j - 1).mul_int(i64::from(j)) / &p;
                &a + &b
            }),
        )
    } else {
        let pn = pi.div_int(n_i);
        let t = pn.tan();
        let first = &pi.div_int(2 * n_i) + &t.mul_int(n_i - 2).div_int(4);
        let weight = &t.mul_int(n_i) / &pi.mul_int(2);
        let hp = half_pi.clone();
        (
            first,
            Box::new(move |j| {
                let a = pn.powi(j);
                let lead = a.div_int(i64::from(j) + 1);
                &lead + &(&(&hp.powi(j) - &a) * &weight)
            }),
        )
    };
    let mut out = vec![Fixed::int(1), first];
    for j in 2..=k_max {
        let ji = i64::from(j);
        let next = &(-&out[(j - 2) as usize].mul_int(ji * (ji - 1)).div_int(4)) + &h(j);
        out.push(next);
    }
    out.truncate(k_max as usize + 1);
    out
}

/// `ₚF_q` with rational parameters `(num, den)` at a fixed-point argument,
/// summed until the terms vanish at working precision.
pub fn hyp_pfq(upper: &[(i64, i64)], lower: &[(i64, i64)], z: &Fixed) -> Fixed {
    let mut term = Fixed::int(1);
    let mut sum = Fixed::int(1);
    for j in 0..100_000i64 {
        let mut t = &term * z;
        for &(p, q) in upper {
            // (p/q + j) = (p + jq)/q
            t = t.mul_int(p + j * q).div_int(q);
        }
        for &(p, q) in lower {
            t = t.mul_int(q).div_int(p + j * q);
        }
        term = t.div_int(j + 1);
        if term.0.is_zero() {
            return sum;
        }
        sum = &sum + &term;
    }
    panic!("series did not terminate");
}
