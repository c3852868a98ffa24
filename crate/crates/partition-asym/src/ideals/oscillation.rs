//! The oscillating interval-ideal construction.
//!
//! Stages (s_i, t_i) grow by s_1 = 2, s_{i+1} = t_i^3 + 2 and
//!
//! ```text
//!   t_i = max { s_i, exp(((3 s_i + 10) / (2C))^{1/eps}), 2 n_0 }
//! ```
//!
//! so values explode doubly exponentially: t_1 is an ordinary integer, t_2
//! already only fits as a logarithm, and by stage 3 even the logarithm
//! overflows a linear float. [`Magnitude`] carries the exact/log split; the
//! certificate works entirely in log space.
//!
//! The constant n_0 of the construction is non-constructive. We take an
//! explicit surrogate and verify the two inequalities that define n_0
//! (the leading-asymptotic sandwich and the complementary-Schur half-ratio)
//! empirically at the evaluation points whenever they are inside the
//! exact-count range, flagging extrapolation otherwise.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::asym::{hr_constant, hr_leading, log_hr_leading_x};
use crate::count::{factorial, PartSet, PartitionTable};
use crate::error::{Error, Result};
use crate::xreal::{Magnitude, XReal, LOG_RANGE_LIMIT, MAGNITUDE_DIGIT_BUDGET};

use super::IntervalIdealSpec;

/// Parameters of the construction: the oscillation exponent and an explicit
/// surrogate for the non-constructive threshold n_0.
#[derive(Clone, Debug)]
pub struct OscillationParams {
    epsilon: XReal,
    surrogate_n0: u64,
    prec: usize,
}

impl OscillationParams {
    /// Requires 0 < eps <= 1, surrogate_n0 >= exp(2(1+eps)) (which makes
    /// r(n) = log^{1+eps}(n)/sqrt(n) decreasing beyond n_0), and
    /// f(surrogate_n0) in (1/2, 1). Together these guarantee f(n) in (1/2, 1)
    /// for every n >= surrogate_n0.
    pub fn new(epsilon: XReal, surrogate_n0: u64, prec: usize) -> Result<Self> {
        if !epsilon.is_positive() || epsilon > XReal::one(prec) {
            return Err(Error::domain("epsilon must lie in (0, 1]"));
        }
        let params = OscillationParams {
            epsilon,
            surrogate_n0,
            prec,
        };
        let two_1e = XReal::from_u64(2, prec)
            .mul(&XReal::one(prec).add(&params.epsilon))
            .exp();
        if XReal::from_u64(surrogate_n0, prec) < two_1e {
            return Err(Error::domain(format!(
                "surrogate_n0 = {surrogate_n0} is below exp(2(1+eps)) = {}; \
                 f would not be monotone beyond it",
                two_1e
            )));
        }
        // This also enforces f(n0) in (1/2, 1).
        params.f_at(&XReal::from_u64(surrogate_n0, prec))?;
        Ok(params)
    }

    pub fn epsilon(&self) -> &XReal {
        &self.epsilon
    }

    pub fn surrogate_n0(&self) -> u64 {
        self.surrogate_n0
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// f(n) = (1 - log^{1+eps}(n) / sqrt(n))^2, valid (and in (1/2,1)) for
    /// n >= surrogate_n0; domain error below that or outside the band.
    pub fn f_at(&self, n: &XReal) -> Result<XReal> {
        let prec = self.prec;
        if *n < XReal::from_u64(self.surrogate_n0, prec) {
            return Err(Error::domain(format!(
                "f(n) evaluated below surrogate_n0 = {}",
                self.surrogate_n0
            )));
        }
        let log_n = n.ln();
        let r = XReal::one(prec)
            .add(&self.epsilon)
            .mul(&log_n.ln())
            .exp()
            .div(&n.sqrt());
        let f = XReal::one(prec).sub(&r).powi(2);
        let half = XReal::from_f64(0.5, prec);
        if !(f > half && f < XReal::one(prec)) {
            return Err(Error::domain(format!(
                "f(n) = {} outside (1/2, 1); n is below the usable threshold",
                f
            )));
        }
        Ok(f)
    }

    /// The exp term of the t_i bound: exp(((3 s + 10) / (2C))^{1/eps}).
    fn exp_term(&self, s: &Magnitude) -> Result<Magnitude> {
        let prec = self.prec;
        let c2 = XReal::from_u64(2, prec).mul(&hr_constant(prec));
        // E = ((3s + 10) / (2C))^{1/eps}; the value is exp(E).
        let ln_e = match s {
            Magnitude::Exact(sv) => {
                let base = XReal::from_biguint(sv, prec)
                    .mul(&XReal::from_u64(3, prec))
                    .add(&XReal::from_u64(10, prec))
                    .div(&c2);
                base.ln().div(&self.epsilon)
            }
            Magnitude::Log(l) => {
                // ln(3s + 10) = ln s + ln 3 (+ a correction far below
                // precision for the magnitudes that reach this branch).
                let ln_base = l.add(&XReal::from_u64(3, prec).ln()).sub(&c2.ln());
                ln_base.div(&self.epsilon)
            }
        };
        if ln_e > XReal::from_f64(LOG_RANGE_LIMIT, prec) {
            // Even ln(t) would overflow the linear exponent range.
            return Err(Error::cap(
                "oscillation stage magnitude",
                format!("ln ln t = {}", ln_e),
                format!("ln ln t <= {LOG_RANGE_LIMIT:e} (log-space range)"),
            ));
        }
        let e_val = ln_e.exp();
        // Materialize exactly when the integer would stay within the digit
        // budget; otherwise keep the logarithm.
        let digit_budget_nats = XReal::from_u64(MAGNITUDE_DIGIT_BUDGET, prec)
            .mul(&XReal::from_u64(10, prec).ln());
        if e_val <= digit_budget_nats {
            let bits_needed = (e_val.to_f64_lossy() / std::f64::consts::LN_2).ceil() as usize + 64;
            let exact = e_val.with_precision(bits_needed.max(prec)).exp();
            Ok(Magnitude::Exact(exact.ceil_biguint()?))
        } else {
            Ok(Magnitude::Log(e_val))
        }
    }
}

/// One stage of the construction.
#[derive(Clone, Debug, Serialize)]
pub struct OscStage {
    pub index: usize,
    pub s: Magnitude,
    pub t: Magnitude,
}

/// Generate stages 1..=i_max: s_1 = 2, t_i the three-way max above,
/// s_{i+1} = t_i^3 + 2. Values that would overflow even the log-space
/// representation produce a resource-limit error.
pub fn oscillation_sequence(params: &OscillationParams, i_max: usize) -> Result<Vec<OscStage>> {
    if i_max < 1 {
        return Err(Error::domain("i_max must be at least 1"));
    }
    let prec = params.prec;
    let mut stages = Vec::with_capacity(i_max);
    let mut s = Magnitude::from_u64(2);
    for index in 1..=i_max {
        let exp_term = params.exp_term(&s)?;
        let floor = Magnitude::from_u64(2 * params.surrogate_n0);
        let mut t = s.clone();
        for cand in [&exp_term, &floor] {
            if t.cmp_mag(cand, prec) == std::cmp::Ordering::Less {
                t = cand.clone();
            }
        }
        stages.push(OscStage {
            index,
            s: s.clone(),
            t: t.clone(),
        });
        s = t.cube_plus_two(prec);
    }
    Ok(stages)
}

fn triangle(x: &BigUint) -> BigUint {
    x * (x + BigUint::one()) / BigUint::from(2u32)
}

/// Exact mass of stages 1..=i: sum_l t_l * (s_l + ... + t_l).
fn exact_mass(stages: &[(BigUint, BigUint)]) -> BigUint {
    let mut mass = BigUint::zero();
    for (s, t) in stages {
        let range_sum = triangle(t) - triangle(&(s - BigUint::one()));
        mass += t * range_sum;
    }
    mass
}

/// log-sum-exp: ln(e^a + e^b).
fn ln_add(a: &XReal, b: &XReal, prec: usize) -> XReal {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    let delta = lo.sub(hi);
    if delta < XReal::from_i64(-((prec as i64) + 64), prec).mul(&XReal::from_u64(2, prec).ln()) {
        return hi.clone();
    }
    hi.add(&XReal::one(prec).add(&delta.exp()).ln())
}

/// ln(e^a - e^b) for a > b; returns None when the difference underflows.
fn ln_sub(a: &XReal, b: &XReal, prec: usize) -> Option<XReal> {
    if b >= a {
        return None;
    }
    let delta = b.sub(a);
    if delta < XReal::from_i64(-((prec as i64) + 64), prec).mul(&XReal::from_u64(2, prec).ln()) {
        return Some(a.clone());
    }
    let inner = XReal::one(prec).sub(&delta.exp());
    if !inner.is_positive() {
        return None;
    }
    Some(a.add(&inner.ln()))
}

/// True iff the total mass representable by stages 1..=i is below
/// s_{i+1} - 1, i.e. the ideal counts zero partitions in that window.
/// `i` is 1-based; when the list holds no stage i+1, s_{i+1} = t_i^3 + 2 by
/// the construction rule.
pub fn zero_window_check_stages(stages: &[OscStage], i: usize, prec: usize) -> Result<bool> {
    if i < 1 || i > stages.len() {
        return Err(Error::domain(format!(
            "stage index {i} out of range 1..={}",
            stages.len()
        )));
    }
    let s_next = if stages.len() > i {
        stages[i].s.clone()
    } else {
        stages[i - 1].t.cube_plus_two(prec)
    };
    let all_exact = stages[..i].iter().all(|st| st.s.is_exact() && st.t.is_exact())
        && s_next.is_exact();
    if all_exact {
        let pairs: Vec<(BigUint, BigUint)> = stages[..i]
            .iter()
            .map(|st| {
                (
                    st.s.as_exact().expect("exact").clone(),
                    st.t.as_exact().expect("exact").clone(),
                )
            })
            .collect();
        let mass = exact_mass(&pairs);
        let bound = s_next.as_exact().expect("exact") - BigUint::one();
        return Ok(mass < bound);
    }
    // Log-space comparison. Per-stage mass t(t - s + 1)(s + t)/2.
    let mut ln_mass: Option<XReal> = None;
    for st in &stages[..i] {
        let lt = st.t.ln(prec)?;
        let ls = st.s.ln(prec)?;
        let ln_count = match ln_sub(&lt, &ls, prec) {
            // t - s + 1
            Some(d) => ln_add(&d, &XReal::zero(prec), prec),
            None => XReal::zero(prec), // t == s: exactly one part
        };
        let ln_sum_ends = ln_add(&ls, &lt, prec);
        let stage_ln = lt
            .add(&ln_count)
            .add(&ln_sum_ends)
            .sub(&XReal::from_u64(2, prec).ln());
        ln_mass = Some(match &ln_mass {
            Some(acc) => ln_add(acc, &stage_ln, prec),
            None => stage_ln,
        });
    }
    let ln_mass = ln_mass.expect("at least one stage");
    let ln_bound = s_next.ln(prec)?; // ln(s_next - 1) ~ ln s_next at this scale
    Ok(ln_mass < ln_bound)
}

/// Zero-window check for an explicit interval-ideal spec (all exact).
pub fn zero_window_check(spec: &IntervalIdealSpec, i: usize) -> Result<bool> {
    let stages: Vec<OscStage> = spec
        .stages()
        .iter()
        .enumerate()
        .map(|(idx, st)| OscStage {
            index: idx + 1,
            s: Magnitude::from_u64(st.s),
            t: Magnitude::from_u64(st.t),
        })
        .collect();
    zero_window_check_stages(&stages, i, 128)
}

/// The threshold hypothesis behind the construction, verified at one point.
#[derive(Clone, Debug, Serialize)]
pub struct HypothesisCheck {
    /// Evaluation point.
    pub n: Option<u64>,
    /// True when exact counts were available; false means the certificate
    /// extrapolated with the leading asymptotic.
    pub exact: bool,
    /// 2 * hr_leading(n) > p(n) > hr_leading(n) / 2.
    pub hr_sandwich_ok: Option<bool>,
    /// p avoiding parts 1..s at n exceeds (1/2) p(n) prod (C sigma / (2 sqrt n)).
    pub comp_ratio_ok: Option<bool>,
}

/// Log-space verification of the stage-i inequality chain.
#[derive(Clone, Debug, Serialize)]
pub struct OscCertificate {
    pub stage: usize,
    pub s: u64,
    pub t: Magnitude,
    pub f_value: XReal,
    pub p_t_exact: bool,
    pub p_tf_exact: bool,
    /// (1 - sqrt(f)) ln p(t) - (3s/2) ln t  (> 0 required).
    pub ineq11_margin: XReal,
    /// sqrt(f) ln p(t) - (ln p(t f(t)) - ln 8)  (> 0 required).
    pub squeeze_margin: XReal,
    /// s ln(C t / 2) + ln s! - ln 16  (> 0 required).
    pub factor_margin: XReal,
    /// K = 1/(8 sqrt(3)) > 1/16.
    pub k_constant_ok: bool,
    /// Threshold hypothesis at n = t_i (sandwich + half-ratio).
    pub hypothesis: HypothesisCheck,
    /// Threshold hypothesis at n = ceil(t_i f(t_i)) (sandwich side only,
    /// which is what the squeeze step applies there).
    pub hypothesis_tf: HypothesisCheck,
    pub all_margins_positive: bool,
}

/// Verify the inequality chain behind the second oscillation condition at
/// stage `i` (1-based), in log space: the p(n)^{1-sqrt(f)} > n^{3s/2} bound,
/// the p(t)^{sqrt(f)} vs p(t f(t)) squeeze, and the final
/// (C t / 2)^s s! > 16 factor.
pub fn oscillation_certificate(
    params: &OscillationParams,
    stages: &[OscStage],
    i: usize,
    table: &PartitionTable,
) -> Result<OscCertificate> {
    if i < 1 || i > stages.len() {
        return Err(Error::domain(format!(
            "stage index {i} out of range 1..={}",
            stages.len()
        )));
    }
    let prec = params.prec;
    let stage = &stages[i - 1];
    let s = stage.s.to_u64().ok_or_else(|| {
        Error::cap(
            "certificate stage s_i",
            stage.s.describe(),
            "an exact u64 (later stages explode doubly exponentially)",
        )
    })?;
    let t_lin = stage.t.to_xreal(prec)?;
    let f = params.f_at(&t_lin)?;
    let sqrt_f = f.sqrt();
    let c = hr_constant(prec);

    let t_int = stage.t.to_u64();
    let (log_p_t, p_t_exact) = match t_int {
        Some(tv) if tv <= table.cap() => (
            XReal::from_biguint(&table.partition_count(tv)?, prec).ln(),
            true,
        ),
        _ => (log_hr_leading_x(&t_lin, prec), false),
    };

    let tf = t_lin.mul(&f);
    let tf_ceil = tf.ceil_biguint()?;
    let (log_p_tf, p_tf_exact) = match tf_ceil.to_u64() {
        Some(v) if v <= table.cap() => (
            XReal::from_biguint(&table.partition_count(v)?, prec).ln(),
            true,
        ),
        _ => (log_hr_leading_x(&tf, prec), false),
    };

    let one = XReal::one(prec);
    let ineq11_margin = one
        .sub(&sqrt_f)
        .mul(&log_p_t)
        .sub(&XReal::from_u64(3 * s, prec).div(&XReal::from_u64(2, prec)).mul(&t_lin.ln()));
    let squeeze_margin = sqrt_f
        .mul(&log_p_t)
        .sub(&log_p_tf.sub(&XReal::from_u64(8, prec).ln()));
    let factor_margin = XReal::from_u64(s, prec)
        .mul(&c.mul(&t_lin).div(&XReal::from_u64(2, prec)).ln())
        .add(&XReal::from_biguint(&factorial(s), prec).ln())
        .sub(&XReal::from_u64(16, prec).ln());

    // K = (8 sqrt 3)^{-1} > 1/16.
    let k_constant = XReal::from_u64(8, prec)
        .mul(&XReal::from_u64(3, prec).sqrt())
        .recip();
    let k_constant_ok = k_constant > XReal::from_u64(16, prec).recip();

    let hypothesis = hypothesis_at(t_int, Some(s), table, prec, &c)?;
    let hypothesis_tf = hypothesis_at(tf_ceil.to_u64(), None, table, prec, &c)?;

    let all_margins_positive = ineq11_margin.is_positive()
        && squeeze_margin.is_positive()
        && factor_margin.is_positive()
        && k_constant_ok;

    Ok(OscCertificate {
        stage: i,
        s,
        t: stage.t.clone(),
        f_value: f,
        p_t_exact,
        p_tf_exact,
        ineq11_margin,
        squeeze_margin,
        factor_margin,
        k_constant_ok,
        hypothesis,
        hypothesis_tf,
        all_margins_positive,
    })
}

// Verify the two inequalities defining the threshold at one point when it
// lies inside the exact-count range; otherwise flag extrapolation. The
// half-ratio check only applies where the chain uses it (pass `s`).
fn hypothesis_at(
    n: Option<u64>,
    s: Option<u64>,
    table: &PartitionTable,
    prec: usize,
    c: &XReal,
) -> Result<HypothesisCheck> {
    let nv = match n {
        Some(nv) if nv <= table.cap() => nv,
        _ => {
            return Ok(HypothesisCheck {
                n,
                exact: false,
                hr_sandwich_ok: None,
                comp_ratio_ok: None,
            })
        }
    };
    let px = XReal::from_biguint(&table.partition_count(nv)?, prec);
    let hr = hr_leading(nv, prec);
    let two = XReal::from_u64(2, prec);
    let sandwich = two.mul(&hr) > px && px > hr.div(&two);
    let comp_ratio_ok = match s {
        Some(s) => {
            let small = PartSet::new(1..=s)?;
            let avoiding = XReal::from_biguint(&table.avoiding_count_ie(nv, &small)?, prec);
            let mut rhs = px.div(&two);
            let two_sqrt = two.mul(&XReal::from_u64(nv, prec).sqrt());
            for sigma in 1..=s {
                rhs = rhs.mul(&c.mul(&XReal::from_u64(sigma, prec)).div(&two_sqrt));
            }
            Some(avoiding > rhs)
        }
        None => None,
    };
    Ok(HypothesisCheck {
        n: Some(nv),
        exact: true,
        hr_sandwich_ok: Some(sandwich),
        comp_ratio_ok,
    })
}
