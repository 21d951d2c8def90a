//! Truncated 3-adic numbers with tracked precision, and 2×2 matrices over them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default number of base-3 digits carried by the tree computations.
pub const DEFAULT_PRECISION: u32 = 48;

/// Absolute precision marking an exactly known zero.
const EXACT: i64 = i64::MAX / 4;

/// `3^val · unit` with `unit` known modulo `3^prec`, or zero modulo `3^abs`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Padic3 {
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Zero { abs: i64 },
    Unit { val: i64, unit: BigUint, prec: u32 },
}

fn pow3(k: u32) -> BigUint {
    BigUint::from(3u32).pow(k)
}

fn strip3(n: &mut BigInt) -> i64 {
    let three = BigInt::from(3);
    let mut k = 0;
    while !n.is_zero() && (&*n % &three).is_zero() {
        *n /= &three;
        k += 1;
    }
    k
}

fn to_unit(n: &BigInt, prec: u32) -> BigUint {
    let m = BigInt::from(pow3(prec));
    n.mod_floor(&m).to_biguint().expect("nonnegative after mod_floor")
}

impl Padic3 {
    pub fn zero() -> Self {
        Padic3 { repr: Repr::Zero { abs: EXACT } }
    }

    /// Zero known only modulo `3^abs`.
    pub fn zero_mod(abs: i64) -> Self {
        Padic3 { repr: Repr::Zero { abs } }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(n: i128, prec: u32) -> Self {
        Self::from_rational(&Rational::from_integer(n), prec)
    }

    /// Expands a rational to `prec` digits of relative precision.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let mut num = BigInt::from(*q.numer());
        let mut den = BigInt::from(*q.denom());
        let val = strip3(&mut num) - strip3(&mut den);
        let m = pow3(prec);
        let d = to_unit(&den, prec).modinv(&m).expect("denominator coprime to 3");
        let unit = (to_unit(&num, prec) * d) % &m;
        Padic3 { repr: Repr::Unit { val, unit, prec } }
    }

    fn from_scaled(mut n: BigInt, base_val: i64, abs: i64) -> Self {
        if abs <= base_val {
            return Self::zero_mod(abs);
        }
        let width = u32::try_from(abs - base_val).expect("precision fits in u32");
        n = BigInt::from(to_unit(&n, width));
        if n.is_zero() {
            return Self::zero_mod(abs);
        }
        let k = strip3(&mut n);
        let prec = width - k as u32;
        Padic3 { repr: Repr::Unit { val: base_val + k, unit: to_unit(&n, prec), prec } }
    }

    /// `None` for a zero (to the known precision).
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero { .. } => None,
            Repr::Unit { val, .. } => Some(*val),
        }
    }

    /// Lower bound on the valuation: exact for nonzero values, `abs` for zeros.
    pub fn valuation_lower_bound(&self) -> i64 {
        match &self.repr {
            Repr::Zero { abs } => *abs,
            Repr::Unit { val, .. } => *val,
        }
    }

    /// The value is known modulo `3^abs_precision`.
    pub fn abs_precision(&self) -> i64 {
        match &self.repr {
            Repr::Zero { abs } => *abs,
            Repr::Unit { val, prec, .. } => val + *prec as i64,
        }
    }

    /// Relative precision; 0 for zeros.
    pub fn rel_precision(&self) -> u32 {
        match &self.repr {
            Repr::Zero { .. } => 0,
            Repr::Unit { prec, .. } => *prec,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { abs } if abs >= EXACT)
    }

    /// The unit part (`0` for zeros).
    pub fn unit(&self) -> BigUint {
        match &self.repr {
            Repr::Zero { .. } => BigUint::zero(),
            Repr::Unit { unit, .. } => unit.clone(),
        }
    }

    /// Base-3 digits of the unit, least significant first.
    pub fn unit_digits(&self) -> Vec<u8> {
        match &self.repr {
            Repr::Zero { .. } => vec![],
            Repr::Unit { unit, prec, .. } => {
                let mut n = unit.clone();
                let three = BigUint::from(3u32);
                (0..*prec)
                    .map(|_| {
                        let d = (&n % &three).to_u8().expect("digit");
                        n /= &three;
                        d
                    })
                    .collect()
            }
        }
    }

    /// Unit with valuation stripped: `self / 3^val` (zeros map to themselves).
    pub fn unit_part(&self) -> Padic3 {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Unit { unit, prec, .. } => Padic3 { repr: Repr::Unit { val: 0, unit: unit.clone(), prec: *prec } },
        }
    }

    /// Multiplies by `3^k`.
    pub fn shift(&self, k: i64) -> Padic3 {
        match &self.repr {
            Repr::Zero { abs } if *abs >= EXACT => self.clone(),
            Repr::Zero { abs } => Self::zero_mod(abs + k),
            Repr::Unit { val, unit, prec } => Padic3 { repr: Repr::Unit { val: val + k, unit: unit.clone(), prec: *prec } },
        }
    }

    /// The value modulo `3^k` for an integral value.
    pub fn residue(&self, k: u32) -> Result<BigUint> {
        let need = k as i64;
        if self.abs_precision() < need {
            return Err(Error::precision(format!("need {k} digits, value known to {}", self.abs_precision())));
        }
        match &self.repr {
            Repr::Zero { .. } => Ok(BigUint::zero()),
            Repr::Unit { val, unit, .. } => {
                if *val < 0 {
                    return Err(Error::domain("residue of a non-integral 3-adic number"));
                }
                if *val >= need {
                    return Ok(BigUint::zero());
                }
                Ok((unit * pow3(*val as u32)) % pow3(k))
            }
        }
    }

    pub fn invert(&self) -> Result<Padic3> {
        match &self.repr {
            Repr::Zero { abs } if *abs >= EXACT => Err(Error::domain("inverse of zero")),
            Repr::Zero { abs } => Err(Error::precision(format!("cannot certify a nonzero digit below 3^{abs}"))),
            Repr::Unit { val, unit, prec } => {
                let inv = unit.modinv(&pow3(*prec)).expect("unit is invertible");
                Ok(Padic3 { repr: Repr::Unit { val: -val, unit: inv, prec: *prec } })
            }
        }
    }

    /// Square root by Newton iteration, choosing the root whose unit is `≡ 1 (mod 3)`.
    pub fn sqrt_hensel(&self) -> Result<Padic3> {
        let (val, unit, prec) = match &self.repr {
            Repr::Zero { abs } if *abs >= EXACT => return Ok(self.clone()),
            Repr::Zero { .. } => return Err(Error::precision("square root of an uncertified zero")),
            Repr::Unit { val, unit, prec } => (*val, unit, *prec),
        };
        if val % 2 != 0 {
            return Err(Error::domain("odd valuation has no 3-adic square root"));
        }
        if unit % 3u32 != BigUint::one() {
            return Err(Error::domain("unit is not a square residue mod 3"));
        }
        let m = pow3(prec);
        let mut x = BigUint::one();
        let mut correct = 1u32;
        while correct < prec {
            // x ← x − (x² − u)/(2x), computed mod 3^prec
            let fx = (&x * &x + &m - unit % &m) % &m;
            let inv2x = ((BigUint::from(2u32) * &x) % &m).modinv(&m).expect("2x is a unit");
            x = (&x + &m - (fx * inv2x) % &m) % &m;
            correct *= 2;
        }
        Ok(Padic3 { repr: Repr::Unit { val: val / 2, unit: x, prec } })
    }

    /// `true` if the two values agree to the smaller of their precisions.
    pub fn agrees_with(&self, other: &Padic3) -> bool {
        (self - other).is_zero()
    }
}

impl fmt::Debug for Padic3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero { abs } if *abs >= EXACT => write!(f, "0"),
            Repr::Zero { abs } => write!(f, "O(3^{abs})"),
            Repr::Unit { val, unit, prec } => write!(f, "3^{val}·{unit} + O(3^{})", val + *prec as i64),
        }
    }
}

impl Add for &Padic3 {
    type Output = Padic3;
    fn add(self, o: &Padic3) -> Padic3 {
        if self.is_exact_zero() {
            return o.clone();
        }
        if o.is_exact_zero() {
            return self.clone();
        }
        let abs = self.abs_precision().min(o.abs_precision());
        let base = self.valuation_lower_bound().min(o.valuation_lower_bound());
        let lift = |p: &Padic3| match &p.repr {
            Repr::Zero { .. } => BigInt::zero(),
            Repr::Unit { val, unit, .. } => BigInt::from(unit * pow3((val - base) as u32)),
        };
        Padic3::from_scaled(lift(self) + lift(o), base, abs)
    }
}

impl Add for Padic3 {
    type Output = Padic3;
    fn add(self, o: Padic3) -> Padic3 {
        &self + &o
    }
}

impl Neg for &Padic3 {
    type Output = Padic3;
    fn neg(self) -> Padic3 {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Unit { val, unit, prec } => {
                let m = pow3(*prec);
                Padic3 { repr: Repr::Unit { val: *val, unit: (&m - unit) % &m, prec: *prec } }
            }
        }
    }
}

impl Neg for Padic3 {
    type Output = Padic3;
    fn neg(self) -> Padic3 {
        -&self
    }
}

impl Sub for &Padic3 {
    type Output = Padic3;
    fn sub(self, o: &Padic3) -> Padic3 {
        self + &(-o)
    }
}

impl Sub for Padic3 {
    type Output = Padic3;
    fn sub(self, o: Padic3) -> Padic3 {
        &self - &o
    }
}

impl Mul for &Padic3 {
    type Output = Padic3;
    fn mul(self, o: &Padic3) -> Padic3 {
        match (&self.repr, &o.repr) {
            (Repr::Zero { abs: a }, Repr::Zero { abs: b }) => Padic3::zero_mod((a + b).min(EXACT)),
            (Repr::Zero { abs }, Repr::Unit { val, .. }) | (Repr::Unit { val, .. }, Repr::Zero { abs }) => {
                if *abs >= EXACT {
                    Padic3::zero()
                } else {
                    Padic3::zero_mod(abs + val)
                }
            }
            (Repr::Unit { val: va, unit: ua, prec: pa }, Repr::Unit { val: vb, unit: ub, prec: pb }) => {
                let prec = (*pa).min(*pb);
                Padic3 { repr: Repr::Unit { val: va + vb, unit: (ua * ub) % pow3(prec), prec } }
            }
        }
    }
}

impl Mul for Padic3 {
    type Output = Padic3;
    fn mul(self, o: Padic3) -> Padic3 {
        &self * &o
    }
}

/// A 2×2 matrix over ℚ₃, rows first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitMatrix {
    pub m: [[Padic3; 2]; 2],
}

impl SplitMatrix {
    pub fn new(m: [[Padic3; 2]; 2]) -> Self {
        SplitMatrix { m }
    }

    pub fn from_ints(m: [[i128; 2]; 2], prec: u32) -> Self {
        SplitMatrix { m: m.map(|r| r.map(|x| Padic3::from_int(x, prec))) }
    }

    pub fn identity(prec: u32) -> Self {
        Self::from_ints([[1, 0], [0, 1]], prec)
    }

    pub fn mul(&self, o: &SplitMatrix) -> SplitMatrix {
        let e = |i: usize, j: usize| &(&self.m[i][0] * &o.m[0][j]) + &(&self.m[i][1] * &o.m[1][j]);
        SplitMatrix { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn det(&self) -> Padic3 {
        &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0])
    }

    pub fn scale(&self, s: &Padic3) -> SplitMatrix {
        SplitMatrix { m: self.m.clone().map(|r| r.map(|x| &x * s)) }
    }

    /// Entry-wise agreement to the available precision.
    pub fn agrees_with(&self, o: &SplitMatrix) -> bool {
        (0..2).all(|i| (0..2).all(|j| self.m[i][j].agrees_with(&o.m[i][j])))
    }

    /// Reduction mod 3 of an integral matrix.
    pub fn mod3(&self) -> Result<[[u8; 2]; 2]> {
        let mut out = [[0u8; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let r = self.m[i][j].residue(1)?;
                out[i][j] = r.to_u8().expect("residue below 3");
            }
        }
        Ok(out)
    }

    /// Reduction mod `3^k` of an integral matrix.
    pub fn residues(&self, k: u32) -> Result<[[BigUint; 2]; 2]> {
        Ok([
            [self.m[0][0].residue(k)?, self.m[0][1].residue(k)?],
            [self.m[1][0].residue(k)?, self.m[1][1].residue(k)?],
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    const N: u32 = DEFAULT_PRECISION;

    #[test]
    fn sqrt_of_minus_two() {
        let v = Padic3::from_int(-2, N).sqrt_hensel().unwrap();
        assert_eq!(v.residue(2).unwrap(), BigUint::from(4u32));
        assert_eq!(v.residue(1).unwrap(), BigUint::one());
        assert!((&v * &v).agrees_with(&Padic3::from_int(-2, N)));
        assert!(Padic3::from_int(2, N).sqrt_hensel().is_err());
        assert!(Padic3::from_int(3, N).sqrt_hensel().is_err());
        assert!(Padic3::from_int(9 * 5, N).sqrt_hensel().is_err());
        let r = Padic3::from_int(9 * 7, N).sqrt_hensel().unwrap();
        assert!((&r * &r).agrees_with(&Padic3::from_int(63, N)));
        let r = Padic3::from_int(9 * 4, N).sqrt_hensel().unwrap();
        assert_eq!(r.valuation(), Some(1));
    }

    #[test]
    fn invert_three() {
        let x = Padic3::from_int(3, N).invert().unwrap();
        assert_eq!(x.valuation(), Some(-1));
        assert_eq!(x.unit(), BigUint::one());
        assert!(Padic3::zero().invert().is_err());
        assert!(matches!(Padic3::zero_mod(5).invert(), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn one_plus_two() {
        let s = &Padic3::from_int(1, N) + &Padic3::from_int(2, N);
        assert_eq!(s.residue(1).unwrap(), BigUint::zero());
        assert!(s.valuation_lower_bound() >= 1);
        assert_eq!(s.valuation(), Some(1));
        assert_eq!(s.rel_precision(), N - 1);
    }

    #[test]
    fn rationals_embed() {
        let half = Padic3::from_rational(&frac(1, 2), N);
        assert!((&half * &Padic3::from_int(2, N)).agrees_with(&Padic3::one(N)));
        let third = Padic3::from_rational(&frac(-5, 9), N);
        assert_eq!(third.valuation(), Some(-2));
        assert!((&third + &Padic3::from_rational(&frac(5, 9), N)).is_zero());
        assert_eq!(Padic3::from_rational(&int(0), N), Padic3::zero());
        assert_eq!(Padic3::from_int(5, 3).unit_digits(), vec![2, 1, 0]);
    }

    #[test]
    fn precision_is_tracked() {
        let a = Padic3::from_int(1, 4);
        let b = Padic3::from_int(1 + 81, N);
        let d = &a - &b;
        assert!(d.is_zero());
        assert_eq!(d.abs_precision(), 4);
        assert!(d.residue(5).is_err());
    }
}
