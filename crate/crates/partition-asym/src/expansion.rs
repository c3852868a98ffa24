//! Truncated-series algebra in x = n^(-1/2) with polynomial-in-s coefficients.
//!
//! [`Expansion`] mechanically rebuilds, at working precision, the coefficient
//! polynomials of the shifted-count expansion
//!
//! ```text
//!   p(n-s) = e^{C*sqrt(n)} / (4*pi*n*sqrt(2)) * sum_{z=0}^{t} g(z,s) n^{-z/2}
//!            + O(e^{C*sqrt(n)} n^{-(t+3)/2})
//! ```
//!
//! from three ingredients: the a-coefficients of q(n)*e^{-C*sqrt(n)}, the
//! binomial re-expansion polys f(w,s), and the exponential-shift polys d(i,s).
//! [`verify_expansion`](Expansion::verify) measures the normalized residual of
//! the whole composition against exact counts.
//!
//! The alternating subset-sum identity
//!
//! ```text
//!   sum_{J subset [t]} (-1)^{|J|} (sum_{i in J} s_i)^z  =  0            (z < t)
//!                                                       =  (-1)^t t! prod s_i  (z = t)
//! ```
//!
//! and its polynomial generalization are checked in exact integer/rational
//! arithmetic ([`alternating_moment`], [`alternating_poly_moment`]).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::asym::hr_constant;
use crate::count::PartitionTable;
use crate::error::{Error, Result};
use crate::xreal::XReal;

/// Largest supported truncation parameter t.
pub const EXPANSION_T_CAP: usize = 16;
/// Subset cap for the exact alternating sums (2^t terms).
pub const MOMENT_CAP: usize = 22;

/// Polynomial in the formal symbol s with extended-precision coefficients,
/// ascending powers, trailing exact zeros trimmed. Serializes to JSON as the
/// ordered coefficient array in full-precision decimal strings.
#[derive(Clone, Debug)]
pub struct SPoly {
    coeffs: Vec<XReal>,
    prec: usize,
}

impl serde::Serialize for SPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl SPoly {
    pub fn zero(prec: usize) -> Self {
        SPoly {
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn constant(c: XReal) -> Self {
        let prec = c.precision();
        SPoly::from_coeffs(vec![c], prec)
    }

    pub fn from_coeffs(coeffs: Vec<XReal>, prec: usize) -> Self {
        let mut p = SPoly { coeffs, prec };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> XReal {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| XReal::zero(self.prec))
    }

    pub fn coeffs(&self) -> &[XReal] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &SPoly) -> SPoly {
        let prec = self.prec.max(rhs.prec);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|k| self.coeff(k).add(&rhs.coeff(k)))
            .collect();
        SPoly::from_coeffs(coeffs, prec)
    }

    pub fn mul(&self, rhs: &SPoly) -> SPoly {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() || rhs.is_zero() {
            return SPoly::zero(prec);
        }
        let mut coeffs = vec![XReal::zero(prec); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        SPoly::from_coeffs(coeffs, prec)
    }

    pub fn scale(&self, c: &XReal) -> SPoly {
        let coeffs = self.coeffs.iter().map(|a| a.mul(c)).collect();
        SPoly::from_coeffs(coeffs, self.prec.max(c.precision()))
    }

    /// Horner evaluation at a numeric s.
    pub fn eval(&self, s: &XReal) -> XReal {
        let prec = self.prec.max(s.precision());
        let mut acc = XReal::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(s).add(c);
        }
        acc
    }
}

/// Truncated series in x with [`SPoly`] coefficients; index = power of x,
/// everything beyond `order` dropped.
#[derive(Clone, Debug)]
pub struct SeriesPoly {
    order: usize,
    coeffs: Vec<SPoly>,
    prec: usize,
}

impl SeriesPoly {
    pub fn zero(order: usize, prec: usize) -> Self {
        SeriesPoly {
            order,
            coeffs: vec![SPoly::zero(prec); order + 1],
            prec,
        }
    }

    pub fn one(order: usize, prec: usize) -> Self {
        let mut s = SeriesPoly::zero(order, prec);
        s.coeffs[0] = SPoly::constant(XReal::one(prec));
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &SPoly {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, p: SPoly) {
        self.coeffs[k] = p;
    }

    fn check_order(&self, rhs: &SeriesPoly) -> Result<()> {
        if self.order != rhs.order {
            return Err(Error::domain(format!(
                "truncation orders must match ({} vs {})",
                self.order, rhs.order
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &SeriesPoly) -> Result<SeriesPoly> {
        self.check_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(SeriesPoly {
            order: self.order,
            coeffs,
            prec: self.prec.max(rhs.prec),
        })
    }

    pub fn sub(&self, rhs: &SeriesPoly) -> Result<SeriesPoly> {
        let minus_one = XReal::from_i64(-1, rhs.prec);
        self.add(&rhs.scale(&minus_one))
    }

    pub fn scale(&self, c: &XReal) -> SeriesPoly {
        SeriesPoly {
            order: self.order,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
            prec: self.prec.max(c.precision()),
        }
    }

    /// Truncated product: coefficient of x^k is sum_{i+j=k} a_i * b_j.
    pub fn mul(&self, rhs: &SeriesPoly) -> Result<SeriesPoly> {
        self.check_order(rhs)?;
        let mut out = SeriesPoly::zero(self.order, self.prec.max(rhs.prec));
        for i in 0..=self.order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(self.order - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let term = self.coeffs[i].mul(&rhs.coeffs[j]);
                out.coeffs[i + j] = out.coeffs[i + j].add(&term);
            }
        }
        Ok(out)
    }

    /// Multiply by x^k, truncating at the order.
    pub fn shift_up(&self, k: usize) -> SeriesPoly {
        let mut out = SeriesPoly::zero(self.order, self.prec);
        for i in 0..=self.order.saturating_sub(k) {
            out.coeffs[i + k] = self.coeffs[i].clone();
        }
        out
    }

    /// Divide by x^k; the low k coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<SeriesPoly> {
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::domain(
                "cannot divide by x^k: low-order coefficients are nonzero",
            ));
        }
        let mut out = SeriesPoly::zero(self.order, self.prec);
        for i in k..=self.order {
            out.coeffs[i - k] = self.coeffs[i].clone();
        }
        Ok(out)
    }

    /// Truncated exponential. The x^0 coefficient must be zero.
    pub fn exp(&self) -> Result<SeriesPoly> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::domain(
                "series exponential requires a zero constant term",
            ));
        }
        let mut result = SeriesPoly::one(self.order, self.prec);
        let mut term = SeriesPoly::one(self.order, self.prec);
        for m in 1..=self.order {
            term = term.mul(self)?;
            let inv_m = XReal::from_u64(m as u64, self.prec).recip();
            term = term.scale(&inv_m);
            if term.coeffs.iter().all(|c| c.is_zero()) {
                break;
            }
            result = result.add(&term)?;
        }
        Ok(result)
    }

    /// Truncated binomial power (1 + v)^alpha where self = 1 + v; the x^0
    /// coefficient must be exactly 1.
    pub fn binom(&self, alpha: &BigRational) -> Result<SeriesPoly> {
        let c0 = &self.coeffs[0];
        let is_one = c0.degree() == Some(0) && c0.coeff(0) == XReal::one(self.prec);
        if !is_one {
            return Err(Error::domain(
                "binomial power requires constant term exactly 1",
            ));
        }
        let mut v = self.clone();
        v.coeffs[0] = SPoly::zero(self.prec);
        let mut result = SeriesPoly::one(self.order, self.prec);
        let mut term = SeriesPoly::one(self.order, self.prec);
        let mut coef = BigRational::one();
        for l in 1..=self.order {
            term = term.mul(&v)?;
            if term.coeffs.iter().all(|c| c.is_zero()) {
                break;
            }
            // binom(alpha, l) = binom(alpha, l-1) * (alpha - l + 1) / l
            let l_rat = BigRational::from_integer(BigInt::from(l as u64));
            coef *= (alpha - (l_rat.clone() - BigRational::one())) / l_rat;
            result = result.add(&term.scale(&XReal::from_ratio(&coef, self.prec)))?;
        }
        Ok(result)
    }
}

/// binom(alpha, l) for rational alpha, exactly.
pub fn rational_binomial(alpha: &BigRational, l: usize) -> BigRational {
    let mut num = BigRational::one();
    for j in 0..l {
        num *= alpha - BigRational::from_integer(BigInt::from(j as u64));
    }
    let mut den = BigInt::one();
    for j in 2..=l {
        den *= BigInt::from(j as u64);
    }
    num / BigRational::from_integer(den)
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The whole coefficient pipeline at truncation parameter t: a-coefficients,
/// f(w,s) for w <= 2t, d(i,s) for i <= t, and g(z,s) for z <= t.
pub struct Expansion {
    t: usize,
    prec: usize,
    c: XReal,
    a: Vec<XReal>,
    f: Vec<SPoly>,
    d: Vec<SPoly>,
    g: Vec<SPoly>,
}

impl Expansion {
    pub fn new(t: usize, prec: usize) -> Result<Self> {
        if t > EXPANSION_T_CAP {
            return Err(Error::domain(format!(
                "truncation parameter t = {t} exceeds supported maximum {EXPANSION_T_CAP}"
            )));
        }
        // 2t+2 keeps every composed term below the O(n^{-(t+3)/2}) envelope;
        // the floor of 4 covers the t = 0 shift bookkeeping.
        let order = (2 * t + 2).max(4);
        let c = hr_constant(prec);
        let one = SeriesPoly::one(order, prec);

        // B = 1 - x^2/24, the square of lambda_n / sqrt(n).
        let mut b = SeriesPoly::one(order, prec);
        b.set_coeff(2, SPoly::constant(XReal::from_ratio(&ratio(-1, 24), prec)));

        // exp(C(lambda_n - sqrt(n))) as a series in x.
        let lam_shift = b.binom(&ratio(1, 2))?.sub(&one)?.shift_down(1)?;
        let e_shift = lam_shift.scale(&c).exp()?;
        // 1/lambda_n^2 = x^2 * B^{-1}.
        let inv_lam2 = b.binom(&ratio(-1, 1))?.shift_up(2);
        // C - 1/lambda_n = C - x * B^{-1/2}.
        let c_minus = one.scale(&c).sub(&b.binom(&ratio(-1, 2))?.shift_up(1))?;

        // q(n) e^{-C sqrt(n)} = x^2 (a_0 + a_1 x + ...).
        let q = e_shift.mul(&inv_lam2)?.mul(&c_minus)?;
        let mut a = Vec::with_capacity(t + 1);
        for k in 0..=t {
            let coeff = q.coeff(k + 2);
            debug_assert!(coeff.degree().is_none_or(|d| d == 0));
            a.push(coeff.coeff(0));
        }

        // f(w,s) = sum_{k+2l=w, k<=t} (-1)^l a_k binom(-1-k/2, l) s^l.
        let mut f = Vec::with_capacity(2 * t + 1);
        for w in 0..=2 * t {
            let mut coeffs = vec![XReal::zero(prec); w / 2 + 1];
            for l in 0..=w / 2 {
                let k = w - 2 * l;
                if k > t {
                    continue;
                }
                let alpha = ratio(-1, 1) - ratio(k as i64, 2);
                let mut r = rational_binomial(&alpha, l);
                if l % 2 == 1 {
                    r = -r;
                }
                coeffs[l] = a[k].mul(&XReal::from_ratio(&r, prec));
            }
            f.push(SPoly::from_coeffs(coeffs, prec));
        }

        // e^{C sqrt(n-s}} / e^{C sqrt(n)} = sum_i d(i,s) x^i:
        // exponent = C (1/x) ((1 - s x^2)^{1/2} - 1).
        let mut sb = SeriesPoly::one(order, prec);
        sb.set_coeff(
            2,
            SPoly::from_coeffs(vec![XReal::zero(prec), XReal::from_i64(-1, prec)], prec),
        );
        let d_exp = sb
            .binom(&ratio(1, 2))?
            .sub(&one)?
            .shift_down(1)?
            .scale(&c)
            .exp()?;
        let d: Vec<SPoly> = (0..=t).map(|i| d_exp.coeff(i).clone()).collect();

        // g(z,s) = sum_{i+w=z} d(i,s) f(w,s).
        let g: Vec<SPoly> = (0..=t)
            .map(|z| {
                let mut acc = SPoly::zero(prec);
                for i in 0..=z {
                    acc = acc.add(&d[i].mul(&f[z - i]));
                }
                acc
            })
            .collect();

        Ok(Expansion { t, prec, c, a, f, d, g })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// a_0..a_t; a_0 equals C to working precision.
    pub fn a_coeffs(&self) -> &[XReal] {
        &self.a
    }

    /// f(w, s), degree floor(w/2); defined for w <= 2t.
    pub fn f_poly(&self, w: usize) -> &SPoly {
        &self.f[w]
    }

    /// d(i, s), degree i with leading coefficient (-1)^i C^i / (2^i i!).
    pub fn d_poly(&self, i: usize) -> &SPoly {
        &self.d[i]
    }

    /// g(z, s), degree z with leading coefficient (-1)^z C^{z+1} / (2^z z!).
    pub fn g_poly(&self, z: usize) -> &SPoly {
        &self.g[z]
    }

    /// The truncated main term for p(n-s):
    /// e^{C sqrt(n)} / (4 pi n sqrt(2)) * sum_z g(z,s) n^{-z/2}.
    pub fn shifted_main_term(&self, n: u64, s: u64) -> XReal {
        let prec = self.prec;
        let nx = XReal::from_u64(n, prec);
        let sqrt_n = nx.sqrt();
        let x = sqrt_n.recip();
        let s_val = XReal::from_u64(s, prec);
        let mut sum = XReal::zero(prec);
        let mut xp = XReal::one(prec);
        for z in 0..=self.t {
            sum = sum.add(&self.g[z].eval(&s_val).mul(&xp));
            xp = xp.mul(&x);
        }
        let pref = self
            .c
            .mul(&sqrt_n)
            .exp()
            .div(&XReal::from_u64(4, prec).mul(&XReal::pi(prec)).mul(&nx).mul(&XReal::from_u64(2, prec).sqrt()));
        pref.mul(&sum)
    }

    /// Normalized residual of the expansion against the exact count:
    /// (p(n-s) - main term) / (e^{C sqrt(n)} n^{-(t+3)/2}).
    pub fn verify(&self, n: u64, s: u64, table: &PartitionTable) -> Result<XReal> {
        if s < 1 || n <= s {
            return Err(Error::domain("verify_expansion requires n > s >= 1"));
        }
        let prec = self.prec;
        let exact = XReal::from_biguint(&table.partition_count(n - s)?, prec);
        let est = self.shifted_main_term(n, s);
        let nx = XReal::from_u64(n, prec);
        let half_power = XReal::from_u64(self.t as u64 + 3, prec).div(&XReal::from_u64(2, prec));
        let envelope = self
            .c
            .mul(&nx.sqrt())
            .sub(&half_power.mul(&nx.ln()))
            .exp();
        Ok(exact.sub(&est).div(&envelope))
    }

    /// Raw (un-normalized) residual p(n-s) - main term, for envelope-shrink
    /// comparisons across t.
    pub fn raw_residual(&self, n: u64, s: u64, table: &PartitionTable) -> Result<XReal> {
        if s < 1 || n <= s {
            return Err(Error::domain("verify_expansion requires n > s >= 1"));
        }
        let exact = XReal::from_biguint(&table.partition_count(n - s)?, self.prec);
        Ok(exact.sub(&self.shifted_main_term(n, s)))
    }
}

/// Exact alternating subset-sum moment
/// sum over J subset of {1..t} of (-1)^|J| (sum_{i in J} s_i)^z, with
/// 0^0 = 1 for the empty subset.
pub fn alternating_moment(svals: &[u64], z: usize) -> Result<BigInt> {
    let t = svals.len();
    if t > MOMENT_CAP {
        return Err(Error::cap("alternating-moment tuple size t", t, MOMENT_CAP));
    }
    if z > t {
        return Err(Error::domain(format!(
            "moment order z = {z} must be at most t = {t}"
        )));
    }
    let mut acc = BigInt::zero();
    moment_walk(svals, 0, 0u128, false, z as u32, &mut acc);
    Ok(acc)
}

fn moment_walk(vals: &[u64], idx: usize, sum: u128, odd: bool, z: u32, acc: &mut BigInt) {
    if idx == vals.len() {
        let term = BigInt::from(sum).pow(z);
        if odd {
            *acc -= term;
        } else {
            *acc += term;
        }
        return;
    }
    moment_walk(vals, idx + 1, sum, odd, z, acc);
    moment_walk(vals, idx + 1, sum + vals[idx] as u128, !odd, z, acc);
}

/// Polynomial with exact rational coefficients, for the generalized
/// alternating identity.
#[derive(Clone, Debug, PartialEq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while matches!(coeffs.last(), Some(c) if c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        RatPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// sum over J subset of {1..t} of (-1)^|J| poly(sum_{i in J} s_i), exactly.
/// Zero for every polynomial of degree <= t-1.
pub fn alternating_poly_moment(svals: &[u64], poly: &RatPoly) -> Result<BigRational> {
    let t = svals.len();
    if t > MOMENT_CAP {
        return Err(Error::cap("alternating-moment tuple size t", t, MOMENT_CAP));
    }
    if let Some(d) = poly.degree() {
        if d + 1 > t {
            return Err(Error::domain(format!(
                "polynomial degree {d} must be at most t - 1 = {}",
                t as i64 - 1
            )));
        }
    }
    let mut acc = BigRational::zero();
    poly_walk(svals, 0, 0u128, false, poly, &mut acc);
    Ok(acc)
}

fn poly_walk(
    vals: &[u64],
    idx: usize,
    sum: u128,
    odd: bool,
    poly: &RatPoly,
    acc: &mut BigRational,
) {
    if idx == vals.len() {
        let term = poly.eval(&BigRational::from_integer(BigInt::from(sum)));
        if odd {
            *acc -= term;
        } else {
            *acc += term;
        }
        return;
    }
    poly_walk(vals, idx + 1, sum, odd, poly, acc);
    poly_walk(vals, idx + 1, sum + vals[idx] as u128, !odd, poly, acc);
}

/// Expected leading coefficient of g(z,s): (-1)^z C^{z+1} / (2^z z!).
pub fn g_leading_reference(z: usize, prec: usize) -> XReal {
    let c = hr_constant(prec);
    let sign = if z % 2 == 0 { 1i64 } else { -1 };
    let den = BigUint::from(2u32).pow(z as u32) * crate::count::factorial(z as u64);
    c.powi(z as u64 + 1)
        .mul(&XReal::from_i64(sign, prec))
        .div(&XReal::from_biguint(&den, prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::global_table;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    const P: usize = 256;

    fn close(a: &XReal, b: &XReal, tol: f64) -> bool {
        a.sub(b).abs() < XReal::from_f64(tol, P)
    }

    fn rel_close(a: &XReal, b: &XReal, tol: f64) -> bool {
        if b.is_zero() {
            return a.is_zero();
        }
        a.sub(b).div(b).abs() < XReal::from_f64(tol, P)
    }

    #[test]
    fn geometric_binomial_series() {
        // (1 - s x^2)^{-1} to order 4 = 1 + s x^2 + s^2 x^4.
        let mut base = SeriesPoly::one(4, P);
        base.set_coeff(
            2,
            SPoly::from_coeffs(vec![XReal::zero(P), XReal::from_i64(-1, P)], P),
        );
        let inv = base.binom(&ratio(-1, 1)).unwrap();
        assert_eq!(inv.coeff(0).degree(), Some(0));
        assert!(close(&inv.coeff(0).coeff(0), &XReal::one(P), 1e-70));
        assert!(inv.coeff(1).is_zero());
        assert!(close(&inv.coeff(2).coeff(1), &XReal::one(P), 1e-70));
        assert_eq!(inv.coeff(2).degree(), Some(1));
        assert!(close(&inv.coeff(4).coeff(2), &XReal::one(P), 1e-70));
        assert_eq!(inv.coeff(4).degree(), Some(2));
        assert!(inv.coeff(3).is_zero());
    }

    #[test]
    fn exp_of_zero_is_one() {
        let z = SeriesPoly::zero(6, P);
        let e = z.exp().unwrap();
        assert!(close(&e.coeff(0).coeff(0), &XReal::one(P), 1e-75));
        for k in 1..=6 {
            assert!(e.coeff(k).is_zero());
        }
    }

    #[test]
    fn exp_rejects_nonzero_constant_term() {
        let s = SeriesPoly::one(4, P);
        assert!(matches!(s.exp(), Err(Error::Domain(_))));
    }

    #[test]
    fn binom_rejects_non_unit_constant_term() {
        let s = SeriesPoly::zero(4, P);
        assert!(matches!(s.binom(&ratio(1, 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn mul_is_convolution() {
        let mut a = SeriesPoly::one(3, P);
        a.set_coeff(1, SPoly::constant(XReal::from_u64(2, P)));
        let mut b = SeriesPoly::one(3, P);
        b.set_coeff(1, SPoly::constant(XReal::from_u64(5, P)));
        b.set_coeff(2, SPoly::constant(XReal::from_u64(7, P)));
        let c = a.mul(&b).unwrap();
        // x^2: 1*7 + 2*5 = 17.
        assert!(close(&c.coeff(2).coeff(0), &XReal::from_u64(17, P), 1e-70));
        assert!(a.mul(&SeriesPoly::one(4, P)).is_err());
    }

    #[test]
    fn a0_is_the_hr_constant() {
        for t in [0usize, 1, 4, 8] {
            let e = Expansion::new(t, P).unwrap();
            assert!(
                rel_close(&e.a_coeffs()[0], &hr_constant(P), 2f64.powi(16 - P as i32)),
                "t = {t}"
            );
            assert_eq!(e.a_coeffs().len(), t + 1);
        }
    }

    #[test]
    fn a1_matches_hand_expansion() {
        // a_1 = -(1 + C^2/48).
        let e = Expansion::new(3, P).unwrap();
        let c = hr_constant(P);
        let expect = XReal::one(P)
            .add(&c.mul(&c).div(&XReal::from_u64(48, P)))
            .neg();
        assert!(rel_close(&e.a_coeffs()[1], &expect, 1e-60));
    }

    #[test]
    fn a2_matches_hand_expansion() {
        // a_2 = C/16 + C^3/4608.
        let e = Expansion::new(3, P).unwrap();
        let c = hr_constant(P);
        let expect = c
            .div(&XReal::from_u64(16, P))
            .add(&c.powi(3).div(&XReal::from_u64(4608, P)));
        assert!(rel_close(&e.a_coeffs()[2], &expect, 1e-60));
    }

    #[test]
    fn t_cap_is_enforced() {
        assert!(Expansion::new(EXPANSION_T_CAP + 1, P).is_err());
    }

    #[test]
    fn full_polynomials_match_hand_expansion() {
        // Every coefficient, not just the leading ones, for small orders.
        let e = Expansion::new(3, P).unwrap();
        let c = hr_constant(P);
        let a1 = &e.a_coeffs()[1];

        // d(2,s) = (C^2/8) s^2 exactly: the only x^2 contribution in the
        // shift exponential is ((-C/2) s x)^2 / 2.
        let d2 = e.d_poly(2);
        assert!(d2.coeff(0).is_zero());
        assert!(d2.coeff(1).is_zero());

        // d(3,s) = -(C^3/48) s^3 - (C/8) s^2: the cube of the x term plus
        // the x^3 term C binom(1/2,2) s^2 = -(C/8) s^2.
        let d3 = e.d_poly(3);
        assert!(d3.coeff(0).is_zero());
        assert!(d3.coeff(1).is_zero());
        assert!(rel_close(&d3.coeff(2), &c.div(&XReal::from_i64(-8, P)), 1e-60));
        assert!(rel_close(
            &d3.coeff(3),
            &c.powi(3).div(&XReal::from_i64(-48, P)),
            1e-60
        ));

        // f(3,s) = a_3 + (3/2) a_1 s  (pairs (k,l) = (3,0) and (1,1)).
        let f3 = e.f_poly(3);
        assert!(rel_close(&f3.coeff(0), &e.a_coeffs()[3], 1e-60));
        let expect = a1
            .mul(&XReal::from_u64(3, P))
            .div(&XReal::from_u64(2, P));
        assert!(rel_close(&f3.coeff(1), &expect, 1e-60));

        // g(2,s) = (C^3/8) s^2 + C (1 - a_1/2) s + a_2.
        let g2 = e.g_poly(2);
        assert!(rel_close(&g2.coeff(0), &e.a_coeffs()[2], 1e-60));
        let mid = c.mul(&XReal::one(P).sub(&a1.div(&XReal::from_u64(2, P))));
        assert!(rel_close(&g2.coeff(1), &mid, 1e-60));
        assert!(rel_close(
            &g2.coeff(2),
            &c.powi(3).div(&XReal::from_u64(8, P)),
            1e-60
        ));
    }

    #[test]
    fn f_polys_match_definition() {
        let e = Expansion::new(3, P).unwrap();
        let c = hr_constant(P);
        // f(0,s) = a_0 = C.
        assert_eq!(e.f_poly(0).degree(), Some(0));
        assert!(rel_close(&e.f_poly(0).coeff(0), &c, 1e-60));
        // f(2,s) = a_2 + C s  (l=1,k=0 gives -a_0*binom(-1,1)*s = +Cs).
        let f2 = e.f_poly(2);
        assert!(rel_close(&f2.coeff(1), &c, 1e-60));
        assert!(rel_close(&f2.coeff(0), &e.a_coeffs()[2], 1e-60));
        for w in 0..=6 {
            assert_eq!(e.f_poly(w).degree(), Some(w / 2), "w = {w}");
        }
    }

    #[test]
    fn d_polys_match_leading_terms() {
        let e = Expansion::new(4, P).unwrap();
        let c = hr_constant(P);
        // d(0,s) = 1.
        assert_eq!(e.d_poly(0).degree(), Some(0));
        assert!(close(&e.d_poly(0).coeff(0), &XReal::one(P), 1e-70));
        // d(1,s) leading -C/2; d(2,s) leading C^2/8.
        assert!(rel_close(
            &e.d_poly(1).coeff(1),
            &c.div(&XReal::from_i64(-2, P)),
            1e-60
        ));
        assert!(rel_close(
            &e.d_poly(2).coeff(2),
            &c.mul(&c).div(&XReal::from_u64(8, P)),
            1e-60
        ));
        for i in 0..=4 {
            assert_eq!(e.d_poly(i).degree(), Some(i), "i = {i}");
        }
    }

    #[test]
    fn g_polys_match_leading_terms_through_8() {
        let e = Expansion::new(8, P).unwrap();
        let c = hr_constant(P);
        // g(0,s) = C, degree 0.
        assert_eq!(e.g_poly(0).degree(), Some(0));
        assert!(rel_close(&e.g_poly(0).coeff(0), &c, 1e-60));
        // g(1,s) = -(C^2/2) s + a_1.
        let g1 = e.g_poly(1);
        assert!(rel_close(
            &g1.coeff(1),
            &c.mul(&c).div(&XReal::from_i64(-2, P)),
            1e-60
        ));
        assert!(rel_close(&g1.coeff(0), &e.a_coeffs()[1], 1e-60));
        let tol = 2f64.powi(16 - P as i32);
        for z in 0..=8 {
            assert_eq!(e.g_poly(z).degree(), Some(z), "z = {z}");
            let lead = e.g_poly(z).coeff(z);
            let reference = g_leading_reference(z, P);
            assert!(
                lead.sub(&reference).div(&reference).abs() < XReal::from_f64(tol, P),
                "z = {z}: {} vs {}",
                lead,
                reference
            );
        }
    }

    // Independent oracle: evaluate q(n) e^{-C sqrt(n)} straight from its
    // definition, using the cancellation-free form
    // lambda_n - sqrt(n) = -(1/24) / (lambda_n + sqrt(n)).
    fn q_over_exp(n: u64, prec: usize) -> XReal {
        let c = hr_constant(prec);
        let nx = XReal::from_u64(n, prec);
        let sqrt_n = nx.sqrt();
        let lam = nx.sub(&XReal::from_u64(24, prec).recip()).sqrt();
        let diff = XReal::from_u64(24, prec)
            .recip()
            .neg()
            .div(&lam.add(&sqrt_n));
        c.mul(&diff)
            .exp()
            .mul(&c.sub(&lam.recip()))
            .div(&lam.mul(&lam))
    }

    #[test]
    fn a_coeffs_reproduced_by_independent_interpolation() {
        // Fit the polynomial sum_k a_k x^k (x = n^{-1/2}) through values of
        // q(n) e^{-C sqrt(n)} * n at t+1 huge nodes via Newton divided
        // differences, then compare monomial coefficients with the pipeline.
        let hp = 768;
        let t = 6usize;
        let e = Expansion::new(t, hp).unwrap();
        let nodes: Vec<u64> = (0..=t as u32)
            .map(|j| 1_000_000_000_000u64 * 4u64.pow(j))
            .collect();
        let xs: Vec<XReal> = nodes
            .iter()
            .map(|&n| XReal::from_u64(n, hp).sqrt().recip())
            .collect();
        let mut dd: Vec<XReal> = nodes
            .iter()
            .map(|&n| q_over_exp(n, hp).mul(&XReal::from_u64(n, hp)))
            .collect();
        for order in 1..=t {
            for j in (order..=t).rev() {
                dd[j] = dd[j]
                    .sub(&dd[j - 1])
                    .div(&xs[j].sub(&xs[j - order]));
            }
        }
        // Expand the Newton form to monomial coefficients.
        let mut poly: Vec<XReal> = vec![dd[t].clone()];
        for j in (0..t).rev() {
            let mut next = vec![XReal::zero(hp); poly.len() + 1];
            for (deg, coeff) in poly.iter().enumerate() {
                next[deg + 1] = next[deg + 1].add(coeff);
                next[deg] = next[deg].sub(&coeff.mul(&xs[j]));
            }
            next[0] = next[0].add(&dd[j]);
            poly = next;
        }
        for k in 0..=4usize {
            let a_k = e.a_coeffs()[k].with_precision(hp);
            let rel = poly[k].sub(&a_k).div(&a_k).abs();
            assert!(
                rel < XReal::from_f64(1e-6, hp),
                "k = {k}: interpolated {} vs pipeline {}",
                poly[k],
                a_k
            );
        }
    }

    #[test]
    fn q_residual_within_envelope_at_1e8() {
        // |q(n)e^{-C sqrt n} - sum a_k n^{-k/2-1}| <= 10 n^{-(t+3)/2} at n = 10^8.
        let t = 4;
        let e = Expansion::new(t, P).unwrap();
        let n = 100_000_000u64;
        let nx = XReal::from_u64(n, P);
        let sqrt_n = nx.sqrt();
        let mut sum = XReal::zero(P);
        let mut denom = nx.clone();
        for k in 0..=t {
            sum = sum.add(&e.a_coeffs()[k].div(&denom));
            denom = denom.mul(&sqrt_n);
        }
        let resid = q_over_exp(n, P).sub(&sum).abs();
        let envelope = XReal::from_u64(10, P).mul(
            &nx.ln()
                .mul(&XReal::from_f64(-((t as f64) + 3.0) / 2.0, P))
                .exp(),
        );
        assert!(resid < envelope, "resid {} envelope {}", resid, envelope);
    }

    #[test]
    fn expansion_residuals_bounded_and_shrinking() {
        let table = global_table();
        let n = 10_000u64;
        let s = 3u64;
        let mut raw_prev: Option<XReal> = None;
        for t in 0..=2usize {
            let e = Expansion::new(t, P).unwrap();
            let norm = e.verify(n, s, table).unwrap().abs();
            assert!(norm < XReal::from_u64(100, P), "t = {t}: {}", norm);
            let raw = e.raw_residual(n, s, table).unwrap().abs();
            if let Some(prev) = &raw_prev {
                assert!(raw < *prev, "raw residual must shrink with t");
            }
            raw_prev = Some(raw);
        }
    }

    #[test]
    fn verify_preconditions() {
        let e = Expansion::new(1, P).unwrap();
        let table = global_table();
        assert!(e.verify(5, 5, table).is_err());
        assert!(e.verify(5, 0, table).is_err());
    }

    #[test]
    fn alternating_moment_hand_cases() {
        // (1,2), z=1: 0 - 1 - 2 + 3 = 0.
        assert_eq!(alternating_moment(&[1, 2], 1).unwrap(), BigInt::zero());
        // (1,2), z=2: 0 - 1 - 4 + 9 = 4 = (-1)^2 2! * 1 * 2.
        assert_eq!(alternating_moment(&[1, 2], 2).unwrap(), BigInt::from(4));
        // Empty tuple, z=0: single empty subset, 0^0 = 1.
        assert_eq!(alternating_moment(&[], 0).unwrap(), BigInt::one());
        assert!(alternating_moment(&[1, 2], 3).is_err());
        assert!(alternating_moment(&[1u64; MOMENT_CAP + 1], 0).is_err());
    }

    #[test]
    fn alternating_moment_randomized_both_cases() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(42);
        for _ in 0..100 {
            let t = rng.gen_range(0..=8usize);
            let svals: Vec<u64> = (0..t).map(|_| rng.gen_range(1..=1_000_000u64)).collect();
            for z in 0..t {
                assert_eq!(alternating_moment(&svals, z).unwrap(), BigInt::zero());
            }
            let expect = svals
                .iter()
                .fold(BigInt::from(crate::count::factorial(t as u64)), |acc, &s| {
                    acc * BigInt::from(s)
                })
                * if t % 2 == 0 { 1 } else { -1 };
            assert_eq!(alternating_moment(&svals, t).unwrap(), expect);
        }
    }

    #[test]
    fn alternating_poly_hand_cases() {
        // t = 3, poly 5s^2 - s + 7.
        let p = RatPoly::from_int_coeffs(&[7, -1, 5]);
        assert!(alternating_poly_moment(&[3, 11, 40], &p).unwrap().is_zero());
        // t = 1, constant.
        let c = RatPoly::from_int_coeffs(&[9]);
        assert!(alternating_poly_moment(&[5], &c).unwrap().is_zero());
        // t = 2, identity poly.
        let s = RatPoly::from_int_coeffs(&[0, 1]);
        assert!(alternating_poly_moment(&[2, 6], &s).unwrap().is_zero());
        // Degree cap.
        assert!(alternating_poly_moment(&[2, 6], &p).is_err());
    }

    #[test]
    fn spoly_eval_is_horner() {
        let p = SPoly::from_coeffs(
            vec![XReal::from_u64(7, P), XReal::from_i64(-1, P), XReal::from_u64(5, P)],
            P,
        );
        let v = p.eval(&XReal::from_u64(3, P));
        assert!(close(&v, &XReal::from_u64(49, P), 1e-70));
        assert_eq!(p.degree(), Some(2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn prop_alternating_moment_vanishes_below_t(
            svals in proptest::collection::vec(1u64..1_000_000, 1..=7),
            z_frac in 0.0f64..1.0,
        ) {
            let t = svals.len();
            let z = ((t as f64) * z_frac) as usize; // z < t
            prop_assert_eq!(alternating_moment(&svals, z.min(t - 1)).unwrap(), BigInt::zero());
        }

        #[test]
        fn prop_poly_moment_vanishes(
            svals in proptest::collection::vec(1u64..10_000, 2..=6),
            coeffs in proptest::collection::vec(-50i64..50, 1..=4),
        ) {
            let t = svals.len();
            let mut c = coeffs.clone();
            c.truncate(t); // degree <= t-1
            let p = RatPoly::from_int_coeffs(&c);
            prop_assert!(alternating_poly_moment(&svals, &p).unwrap().is_zero());
        }
    }

    #[test]
    fn rational_binomial_values() {
        // binom(1/2, 2) = -1/8; binom(-1, 3) = -1; binom(x, 0) = 1.
        assert_eq!(rational_binomial(&ratio(1, 2), 2), ratio(-1, 8));
        assert_eq!(rational_binomial(&ratio(-1, 1), 3), ratio(-1, 1));
        assert_eq!(rational_binomial(&ratio(7, 3), 0), BigRational::one());
        let half = rational_binomial(&ratio(1, 2), 1);
        assert_eq!(half, ratio(1, 2));
        let _ = half.to_f64();
    }
}
