//! Extended-precision reals and log-space magnitudes.
//!
//! [`XReal`] wraps a multiple-precision binary float with an explicit working
//! precision in bits (default 256). Every operation rounds to the larger of
//! the operand precisions, so a computation started at `p` bits stays at `p`
//! bits end to end and doubling `p` tightens every result.
//!
//! [`Magnitude`] carries quantities that may be far too large for any linear
//! float format: either an exact big integer or the natural log of the value.
//! The oscillating-ideal construction produces such numbers after one stage.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Default working precision. 256 bits (~77 decimal digits) keeps ratios of
/// quantities like e^{C*sqrt(n)} (223 decimal digits at n = 4*10^4) accurate
/// after log-space cancellation.
pub const DEFAULT_PRECISION_BITS: usize = 256;

/// Largest exponent argument the linear representation accepts. The backing
/// float carries an i32 binary exponent, so exp(x) overflows a little past
/// x = 2^31 * ln 2; we stop well short of that.
pub const LOG_RANGE_LIMIT: f64 = 1.0e9;

/// Exact big-integer materialization budget for [`Magnitude`], in decimal
/// digits.
pub const MAGNITUDE_DIGIT_BUDGET: u64 = 1_000_000;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(
        Consts::new().expect("constants cache allocation"),
    );
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Multiple-precision real with an explicit precision in bits.
#[derive(Clone, Debug)]
pub struct XReal {
    v: BigFloat,
    prec: usize,
}

impl XReal {
    pub fn zero(prec: usize) -> Self {
        XReal {
            v: BigFloat::from_u64(0, prec),
            prec,
        }
    }

    pub fn one(prec: usize) -> Self {
        XReal::from_u64(1, prec)
    }

    pub fn from_u64(v: u64, prec: usize) -> Self {
        XReal {
            v: BigFloat::from_u64(v, prec),
            prec,
        }
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        XReal {
            v: BigFloat::from_i64(v, prec),
            prec,
        }
    }

    pub fn from_f64(v: f64, prec: usize) -> Self {
        XReal {
            v: BigFloat::from_f64(v, prec),
            prec,
        }
    }

    /// Exact big-integer conversion, rounded to `prec` bits.
    pub fn from_biguint(n: &BigUint, prec: usize) -> Self {
        if n.is_zero() {
            return XReal::zero(prec);
        }
        let bits = n.to_str_radix(2);
        let v = with_consts(|cc| BigFloat::parse(&bits, Radix::Bin, prec, RM, cc));
        XReal { v, prec }
    }

    pub fn from_ratio(r: &BigRational, prec: usize) -> Self {
        let numer = XReal::from_biguint(r.numer().magnitude(), prec);
        let denom = XReal::from_biguint(r.denom().magnitude(), prec);
        let q = numer.div(&denom);
        if r.is_negative() {
            q.neg()
        } else {
            q
        }
    }

    pub fn pi(prec: usize) -> Self {
        XReal {
            v: with_consts(|cc| cc.pi(prec, RM)),
            prec,
        }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// Re-round to a different working precision.
    pub fn with_precision(&self, prec: usize) -> Self {
        let mut v = self.v.clone();
        v.set_precision(prec, RM).expect("set precision");
        XReal { v, prec }
    }

    fn join(&self, rhs: &XReal) -> usize {
        self.prec.max(rhs.prec)
    }

    pub fn add(&self, rhs: &XReal) -> XReal {
        let p = self.join(rhs);
        XReal {
            v: self.v.add(&rhs.v, p, RM),
            prec: p,
        }
    }

    pub fn sub(&self, rhs: &XReal) -> XReal {
        let p = self.join(rhs);
        XReal {
            v: self.v.sub(&rhs.v, p, RM),
            prec: p,
        }
    }

    pub fn mul(&self, rhs: &XReal) -> XReal {
        let p = self.join(rhs);
        XReal {
            v: self.v.mul(&rhs.v, p, RM),
            prec: p,
        }
    }

    pub fn div(&self, rhs: &XReal) -> XReal {
        let p = self.join(rhs);
        XReal {
            v: self.v.div(&rhs.v, p, RM),
            prec: p,
        }
    }

    pub fn neg(&self) -> XReal {
        XReal {
            v: self.v.neg(),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> XReal {
        XReal {
            v: self.v.abs(),
            prec: self.prec,
        }
    }

    pub fn recip(&self) -> XReal {
        XReal {
            v: self.v.reciprocal(self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn sqrt(&self) -> XReal {
        assert!(!self.is_negative(), "sqrt of negative value");
        XReal {
            v: self.v.sqrt(self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn exp(&self) -> XReal {
        XReal {
            v: with_consts(|cc| self.v.exp(self.prec, RM, cc)),
            prec: self.prec,
        }
    }

    pub fn ln(&self) -> XReal {
        assert!(self.is_positive(), "ln of non-positive value");
        XReal {
            v: with_consts(|cc| self.v.ln(self.prec, RM, cc)),
            prec: self.prec,
        }
    }

    pub fn powi(&self, e: u64) -> XReal {
        XReal {
            v: self.v.powi(e as usize, self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.v.is_positive() && !self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_inf() && !self.v.is_nan()
    }

    pub fn min(&self, rhs: &XReal) -> XReal {
        if self <= rhs {
            self.clone()
        } else {
            rhs.clone()
        }
    }

    pub fn max(&self, rhs: &XReal) -> XReal {
        if self >= rhs {
            self.clone()
        } else {
            rhs.clone()
        }
    }

    /// Smallest integer >= self, as a big integer. Requires a finite
    /// non-negative value.
    pub fn ceil_biguint(&self) -> Result<BigUint> {
        float_to_biguint(&self.v.ceil())
    }

    /// Largest integer <= self, as a big integer. Requires a finite
    /// non-negative value.
    pub fn floor_biguint(&self) -> Result<BigUint> {
        float_to_biguint(&self.v.floor())
    }

    /// Full-precision decimal string; deterministic for a given value and
    /// precision, and parseable by [`XReal::parse_decimal`].
    pub fn to_decimal_string(&self) -> String {
        format!("{}", self.v)
    }

    pub fn parse_decimal(s: &str, prec: usize) -> Result<XReal> {
        let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, prec, RM, cc));
        if v.is_nan() {
            return Err(Error::domain(format!("cannot parse decimal number {s:?}")));
        }
        Ok(XReal { v, prec })
    }

    /// Lossy f64 view, for rounding to report-scale quantities only.
    pub fn to_f64_lossy(&self) -> f64 {
        self.to_decimal_string().parse().unwrap_or(f64::NAN)
    }
}

fn float_to_biguint(v: &BigFloat) -> Result<BigUint> {
    if v.is_zero() {
        return Ok(BigUint::zero());
    }
    if v.is_negative() || v.is_inf() || v.is_nan() {
        return Err(Error::domain(
            "integer conversion requires a finite non-negative value",
        ));
    }
    let (_, digits, exp) =
        with_consts(|cc| v.convert_to_radix(Radix::Bin, RM, cc)).map_err(|e| {
            Error::domain(format!("radix conversion failed: {e:?}"))
        })?;
    if exp <= 0 {
        return Ok(BigUint::zero());
    }
    // Digits are mantissa bits of 0.d1 d2 ... * 2^exp.
    let exp = exp as usize;
    let mut acc = BigUint::zero();
    for (i, &d) in digits.iter().enumerate() {
        if i >= exp {
            break;
        }
        acc = (acc << 1) + BigUint::from(d);
    }
    if exp > digits.len() {
        acc <<= exp - digits.len();
    }
    Ok(acc)
}

impl PartialEq for XReal {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

impl PartialOrd for XReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.partial_cmp(&other.v)
    }
}

impl fmt::Display for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

// Reals serialize as full-precision decimal strings so downstream tools never
// re-round them.
impl serde::Serialize for XReal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_decimal_string())
    }
}

/// A non-negative quantity in exact or log-space form.
///
/// `Exact` holds the value itself; `Log` holds its natural logarithm as an
/// [`XReal`] and is inherently approximate (hence the variant doubles as the
/// exactness flag).
#[derive(Clone, Debug)]
pub enum Magnitude {
    Exact(BigUint),
    Log(XReal),
}

impl Magnitude {
    pub fn from_u64(v: u64) -> Self {
        Magnitude::Exact(BigUint::from(v))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Magnitude::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            Magnitude::Exact(n) => Some(n),
            Magnitude::Log(_) => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Magnitude::Exact(n) => u64::try_from(n.clone()).ok(),
            Magnitude::Log(_) => None,
        }
    }

    /// Natural log of the value. Domain error on Exact(0).
    pub fn ln(&self, prec: usize) -> Result<XReal> {
        match self {
            Magnitude::Exact(n) => {
                if n.is_zero() {
                    return Err(Error::domain("log of zero magnitude"));
                }
                Ok(XReal::from_biguint(n, prec).ln())
            }
            Magnitude::Log(l) => Ok(l.with_precision(prec)),
        }
    }

    /// Linear view. Fails with a resource-limit error when the logarithm
    /// exceeds [`LOG_RANGE_LIMIT`].
    pub fn to_xreal(&self, prec: usize) -> Result<XReal> {
        match self {
            Magnitude::Exact(n) => Ok(XReal::from_biguint(n, prec)),
            Magnitude::Log(l) => {
                if l > &XReal::from_f64(LOG_RANGE_LIMIT, l.precision()) {
                    return Err(Error::cap(
                        "log-space magnitude",
                        format!("ln = {}", l),
                        format!("ln <= {LOG_RANGE_LIMIT:e} (linear-range cap)"),
                    ));
                }
                Ok(l.with_precision(prec).exp())
            }
        }
    }

    pub fn cmp_mag(&self, other: &Magnitude, prec: usize) -> Ordering {
        match (self, other) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => a.cmp(b),
            _ => {
                let la = self.ln(prec).unwrap_or_else(|_| {
                    XReal::from_f64(f64::NEG_INFINITY, prec)
                });
                let lb = other.ln(prec).unwrap_or_else(|_| {
                    XReal::from_f64(f64::NEG_INFINITY, prec)
                });
                la.partial_cmp(&lb).unwrap_or(Ordering::Equal)
            }
        }
    }

    /// t^3 + 2, staying exact when the input is exact.
    pub fn cube_plus_two(&self, prec: usize) -> Magnitude {
        match self {
            Magnitude::Exact(n) => Magnitude::Exact(n.pow(3) + BigUint::from(2u32)),
            Magnitude::Log(l) => {
                let three_l = l.mul(&XReal::from_u64(3, prec));
                // ln(t^3 + 2) = 3 ln t + ln(1 + 2 t^-3); the correction is
                // below one ulp once 3 ln t outgrows the precision.
                let corr_cutoff = XReal::from_u64((prec as u64 + 64) * 2, prec);
                if three_l > corr_cutoff {
                    Magnitude::Log(three_l)
                } else {
                    let t3 = three_l.exp();
                    let val = t3.add(&XReal::from_u64(2, prec));
                    Magnitude::Log(val.ln())
                }
            }
        }
    }

    /// Decimal rendering: the exact integer, or `exp(<log>)`.
    pub fn describe(&self) -> String {
        match self {
            Magnitude::Exact(n) => n.to_string(),
            Magnitude::Log(l) => format!("exp({})", l.to_decimal_string()),
        }
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl serde::Serialize for Magnitude {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Magnitude", 2)?;
        match self {
            Magnitude::Exact(v) => {
                st.serialize_field("form", "exact")?;
                st.serialize_field("value", &v.to_string())?;
            }
            Magnitude::Log(l) => {
                st.serialize_field("form", "log")?;
                st.serialize_field("value", &l.to_decimal_string())?;
            }
        }
        st.end()
    }
}
