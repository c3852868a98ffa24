//! Extended-precision evaluation of the partition asymptotics.
//!
//! All magnitudes here grow like e^{C*sqrt(n)}, so ratios against exact
//! counts are formed in log space: ratio = exp(ln exact - ln estimate).

use num_bigint::BigUint;
use num_traits::Zero;

use crate::count::{factorial, PartSet, PartitionTable};
use crate::error::{Error, Result};
use crate::xreal::XReal;

/// C = pi * sqrt(2/3), the exponent constant of the leading asymptotic.
pub fn hr_constant(prec: usize) -> XReal {
    let two_thirds = XReal::from_u64(2, prec).div(&XReal::from_u64(3, prec));
    XReal::pi(prec).mul(&two_thirds.sqrt())
}

// exp(C sqrt n) amplifies the relative error of its argument by C sqrt n, a
// factor of ~2^11 at n = 10^6. Evaluating with guard bits and rounding back
// keeps every formula here within a few ulps of the target precision, so
// doubling precision_bits moves results by less than 2^(4 - precision_bits).
const GUARD_BITS: usize = 32;

/// The two constants of the strong asymptotic's error envelope. D only
/// describes error decay and never enters a computation; the default is
/// D = 3C/4, inside the required open interval (C/2, C).
#[derive(Clone, Debug)]
pub struct HRConstants {
    pub c: XReal,
    pub d: XReal,
    pub precision_bits: usize,
}

impl HRConstants {
    pub fn new(precision_bits: usize) -> Self {
        let c = hr_constant(precision_bits);
        let d = c
            .mul(&XReal::from_u64(3, precision_bits))
            .div(&XReal::from_u64(4, precision_bits));
        HRConstants {
            c,
            d,
            precision_bits,
        }
    }
}

/// lambda_n = sqrt(n - 1/24), the shifted argument of the strong formula.
pub fn lambda(n: u64, prec: usize) -> XReal {
    assert!(n >= 1, "lambda requires n >= 1");
    let shift = XReal::from_u64(24, prec).recip();
    XReal::from_u64(n, prec).sub(&shift).sqrt()
}

/// Leading asymptotic e^{C*sqrt(n)} / (4*n*sqrt(3)).
pub fn hr_leading(n: u64, prec: usize) -> XReal {
    assert!(n >= 1);
    let wp = prec + GUARD_BITS;
    let c = hr_constant(wp);
    let sqrt_n = XReal::from_u64(n, wp).sqrt();
    let num = c.mul(&sqrt_n).exp();
    let den = XReal::from_u64(4 * n, wp).mul(&XReal::from_u64(3, wp).sqrt());
    num.div(&den).with_precision(prec)
}

/// ln of the leading asymptotic: C*sqrt(n) - ln(4*n*sqrt(3)). Defined for
/// real arguments too, which the oscillation certificate needs.
pub fn log_hr_leading_x(n: &XReal, prec: usize) -> XReal {
    assert!(n.is_positive(), "log_hr_leading requires n > 0");
    let wp = prec + GUARD_BITS;
    let n = n.with_precision(wp);
    let c = hr_constant(wp);
    let four_sqrt3 = XReal::from_u64(4, wp).mul(&XReal::from_u64(3, wp).sqrt());
    c.mul(&n.sqrt())
        .sub(&four_sqrt3.mul(&n).ln())
        .with_precision(prec)
}

pub fn log_hr_leading(n: u64, prec: usize) -> XReal {
    log_hr_leading_x(&XReal::from_u64(n, prec), prec)
}

/// Strong main term (e^{C*lambda_n} / (4*pi*sqrt(2)*lambda_n^2)) * (C - 1/lambda_n).
pub fn hr_strong(n: u64, prec: usize) -> XReal {
    assert!(n >= 1);
    let wp = prec + GUARD_BITS;
    let c = hr_constant(wp);
    let lam = lambda(n, wp);
    let num = c.mul(&lam).exp();
    let den = XReal::from_u64(4, wp)
        .mul(&XReal::pi(wp))
        .mul(&XReal::from_u64(2, wp).sqrt())
        .mul(&lam.mul(&lam));
    num.div(&den).mul(&c.sub(&lam.recip())).with_precision(prec)
}

/// ln of the strong main term, for ratio work at large n.
pub fn log_hr_strong(n: u64, prec: usize) -> XReal {
    let wp = prec + GUARD_BITS;
    let c = hr_constant(wp);
    let lam = lambda(n, wp);
    let den = XReal::from_u64(4, wp)
        .mul(&XReal::pi(wp))
        .mul(&XReal::from_u64(2, wp).sqrt())
        .mul(&lam.mul(&lam));
    c.mul(&lam)
        .sub(&den.ln())
        .add(&c.sub(&lam.recip()).ln())
        .with_precision(prec)
}

/// ln of an exact count, with precision-tracked rounding.
pub fn log_exact(count: &BigUint, prec: usize) -> Result<XReal> {
    if count.is_zero() {
        return Err(Error::domain("log of zero count"));
    }
    Ok(XReal::from_biguint(count, prec).ln())
}

/// Schur's main term n^{t-1} / ((t-1)! * prod_{s in S} s) for partitions into
/// parts from a finite set with gcd 1.
pub fn schur_estimate(n: u64, allowed: &PartSet, prec: usize) -> Result<XReal> {
    if n < 1 {
        return Err(Error::domain("Schur estimate requires n >= 1"));
    }
    if allowed.is_empty() {
        return Err(Error::domain("Schur estimate needs a nonempty part set"));
    }
    if allowed.gcd() != 1 {
        return Err(Error::domain(format!(
            "Schur asymptotic requires gcd(S) = 1, got gcd {} for {}",
            allowed.gcd(),
            allowed
        )));
    }
    let t = allowed.len() as u64;
    let wp = prec + GUARD_BITS;
    let num = XReal::from_u64(n, wp).powi(t - 1);
    let mut prod = factorial(t - 1);
    for &s in allowed.parts() {
        prod *= BigUint::from(s);
    }
    Ok(num.div(&XReal::from_biguint(&prod, wp)).with_precision(prec))
}

/// Source of the p(n) factor inside the complementary Schur estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PMode {
    Exact,
    HrStrong,
    HrLeading,
}

/// Complementary Schur main term p(n) * prod_{s in S} (C*s / (2*sqrt(n))).
pub fn comp_schur_estimate(
    n: u64,
    s: &PartSet,
    p_mode: PMode,
    table: &PartitionTable,
    prec: usize,
) -> Result<XReal> {
    if n < 1 {
        return Err(Error::domain("complementary Schur estimate requires n >= 1"));
    }
    let wp = prec + GUARD_BITS;
    let p_factor = match p_mode {
        PMode::Exact => XReal::from_biguint(&table.partition_count(n)?, wp),
        PMode::HrStrong => hr_strong(n, wp),
        PMode::HrLeading => hr_leading(n, wp),
    };
    let c = hr_constant(wp);
    let two_sqrt_n = XReal::from_u64(2, wp).mul(&XReal::from_u64(n, wp).sqrt());
    let mut out = p_factor;
    for &part in s.parts() {
        out = out.mul(&c.mul(&XReal::from_u64(part, wp)).div(&two_sqrt_n));
    }
    Ok(out.with_precision(prec))
}

/// One row of a convergence table.
#[derive(Clone, Debug)]
pub struct RatioRow {
    pub n: u64,
    pub exact: BigUint,
    pub estimate: XReal,
    pub ratio: XReal,
    pub abs_err_ratio: XReal,
}

/// Convergence table for p_{-S}(n) against the complementary Schur estimate.
/// The exact column is exact (inclusion-exclusion); the ratio is computed as
/// exp(ln exact - ln estimate) to avoid overflow.
pub fn ratio_report(
    n_grid: &[u64],
    s: &PartSet,
    p_mode: PMode,
    table: &PartitionTable,
    prec: usize,
) -> Result<Vec<RatioRow>> {
    for w in n_grid.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::domain("grid must be strictly ascending"));
        }
    }
    let one = XReal::one(prec);
    let mut rows = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        let exact = table.avoiding_count_ie(n, s)?;
        let estimate = comp_schur_estimate(n, s, p_mode, table, prec)?;
        let wp = prec + GUARD_BITS;
        let ratio = if exact.is_zero() {
            XReal::zero(prec)
        } else {
            log_exact(&exact, wp)?
                .sub(&estimate.with_precision(wp).ln())
                .exp()
                .with_precision(prec)
        };
        let abs_err_ratio = ratio.sub(&one).abs();
        rows.push(RatioRow {
            n,
            exact,
            estimate,
            ratio,
            abs_err_ratio,
        });
    }
    Ok(rows)
}
