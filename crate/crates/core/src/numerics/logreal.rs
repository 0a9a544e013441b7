//! Sign + log-magnitude reals, the modulus-scale wrapper, and enclosure brackets.
//!
//! A [`LogReal`] stores `sign ∈ {-1, 0, +1}` and the natural log of the absolute
//! value.  Multiplication, division and powers are one f64 operation on the log;
//! addition goes through log-sum-exp on the larger magnitude.  Magnitudes up to
//! e^±1.8e308 are representable, which covers q^{3/16}-type quantities at
//! log log q ≈ 2·10⁴ (log q itself is stored as a LogReal whose log is ordinary).

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub type Sign = i8;

/// Relative cancellation threshold below which subtraction is flagged lossy.
const CANCEL_LN: f64 = 27.631_021_115_928_547; // ln(1e12)

#[derive(Clone, Copy, Debug)]
pub struct LogReal {
    sign: Sign,
    ln: f64,
}

impl LogReal {
    pub const ZERO: LogReal = LogReal { sign: 0, ln: f64::NEG_INFINITY };
    pub const ONE: LogReal = LogReal { sign: 1, ln: 0.0 };

    /// Canonicalizing constructor: an underflowed magnitude is exact zero.
    pub fn new(sign: Sign, ln: f64) -> LogReal {
        debug_assert!(!ln.is_nan(), "LogReal log-magnitude must not be NaN");
        debug_assert!(sign == -1 || sign == 0 || sign == 1);
        if sign == 0 || ln == f64::NEG_INFINITY {
            LogReal::ZERO
        } else {
            LogReal { sign, ln }
        }
    }

    pub fn from_f64(x: f64) -> LogReal {
        if x == 0.0 {
            LogReal::ZERO
        } else {
            LogReal::new(if x > 0.0 { 1 } else { -1 }, x.abs().ln())
        }
    }

    /// Positive value `e^ln`.
    pub fn from_ln(ln: f64) -> LogReal {
        LogReal::new(1, ln)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Natural log of |value|; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.sign == 0 {
            f64::NEG_INFINITY
        } else {
            self.ln
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Collapse to f64; underflows to 0 and overflows to ±inf.
    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * self.ln.exp()
    }

    pub fn in_f64_range(&self) -> bool {
        self.sign == 0 || (self.ln.abs() < 700.0)
    }

    pub fn abs(&self) -> LogReal {
        LogReal::new(self.sign.abs(), self.ln)
    }

    pub fn recip(&self) -> LogReal {
        assert!(self.sign != 0, "reciprocal of zero");
        LogReal::new(self.sign, -self.ln)
    }

    pub fn mul(self, rhs: LogReal) -> LogReal {
        if self.sign == 0 || rhs.sign == 0 {
            return LogReal::ZERO;
        }
        LogReal::new(self.sign * rhs.sign, self.ln + rhs.ln)
    }

    pub fn checked_div(self, rhs: LogReal) -> Result<LogReal> {
        if rhs.sign == 0 {
            return Err(Error::usage("LogReal division by zero"));
        }
        if self.sign == 0 {
            return Ok(LogReal::ZERO);
        }
        Ok(LogReal::new(self.sign * rhs.sign, self.ln - rhs.ln))
    }

    /// Addition by log-sum-exp on the larger magnitude.
    pub fn add(self, rhs: LogReal) -> LogReal {
        self.add_flagged(rhs).0
    }

    pub fn sub(self, rhs: LogReal) -> LogReal {
        self.add(rhs.neg())
    }

    /// Subtraction that reports catastrophic cancellation (relative loss below
    /// 1e-12); the value is still returned.
    pub fn sub_flagged(self, rhs: LogReal) -> (LogReal, bool) {
        self.add_flagged(rhs.neg())
    }

    pub fn add_flagged(self, rhs: LogReal) -> (LogReal, bool) {
        if self.sign == 0 {
            return (rhs, false);
        }
        if rhs.sign == 0 {
            return (self, false);
        }
        let (big, small) = if self.ln >= rhs.ln { (self, rhs) } else { (rhs, self) };
        if self.sign == rhs.sign {
            let ln = big.ln + (small.ln - big.ln).exp().ln_1p();
            return (LogReal::new(big.sign, ln), false);
        }
        if small.ln == big.ln {
            // exact cancellation: zero, but the result carries no certified digits
            return (LogReal::ZERO, true);
        }
        let ln = big.ln + (-(small.ln - big.ln).exp()).ln_1p();
        let lossy = big.ln - ln > CANCEL_LN;
        (LogReal::new(big.sign, ln), lossy)
    }

    pub fn neg(self) -> LogReal {
        LogReal::new(-self.sign, self.ln)
    }

    /// Integer power; exact in the log up to one rounding step.
    pub fn powi(self, k: i64) -> LogReal {
        if self.sign == 0 {
            assert!(k > 0, "0^k undefined for k <= 0");
            return LogReal::ZERO;
        }
        let sign = if self.sign < 0 && k % 2 != 0 { -1 } else { 1 };
        LogReal::new(sign, self.ln * k as f64)
    }

    /// Real power; negative bases only with integer exponents.
    pub fn powf(self, r: f64) -> Result<LogReal> {
        if r == 0.0 {
            return Ok(LogReal::ONE);
        }
        if self.sign == 0 {
            if r > 0.0 {
                return Ok(LogReal::ZERO);
            }
            return Err(Error::domain("0 raised to a non-positive power"));
        }
        if self.sign < 0 {
            if r.fract() != 0.0 {
                return Err(Error::domain(
                    "negative base with non-integer exponent",
                ));
            }
            return Ok(self.powi(r as i64));
        }
        Ok(LogReal::new(1, self.ln * r))
    }

    /// Exact comparison on (sign, log-magnitude).
    pub fn total_cmp(&self, other: &LogReal) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match self.sign {
            0 => Ordering::Equal,
            1 => self.ln.partial_cmp(&other.ln).unwrap(),
            _ => other.ln.partial_cmp(&self.ln).unwrap(),
        }
    }

    pub fn max(self, other: LogReal) -> LogReal {
        if self.total_cmp(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

impl PartialEq for LogReal {
    fn eq(&self, other: &Self) -> bool {
        self.total_cmp(other) == Ordering::Equal
    }
}

impl PartialOrd for LogReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.total_cmp(other))
    }
}

impl From<f64> for LogReal {
    fn from(x: f64) -> Self {
        LogReal::from_f64(x)
    }
}

impl std::ops::Mul for LogReal {
    type Output = LogReal;
    fn mul(self, rhs: LogReal) -> LogReal {
        LogReal::mul(self, rhs)
    }
}

impl std::ops::Div for LogReal {
    type Output = LogReal;
    fn div(self, rhs: LogReal) -> LogReal {
        self.checked_div(rhs).expect("LogReal division by zero")
    }
}

impl std::ops::Add for LogReal {
    type Output = LogReal;
    fn add(self, rhs: LogReal) -> LogReal {
        LogReal::add(self, rhs)
    }
}

impl std::ops::Sub for LogReal {
    type Output = LogReal;
    fn sub(self, rhs: LogReal) -> LogReal {
        LogReal::sub(self, rhs)
    }
}

impl std::ops::Neg for LogReal {
    type Output = LogReal;
    fn neg(self) -> LogReal {
        LogReal::neg(self)
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.in_f64_range() {
            write!(f, "{}", self.to_f64())
        } else if self.sign > 0 {
            write!(f, "exp({})", self.ln)
        } else {
            write!(f, "-exp({})", self.ln)
        }
    }
}

impl Serialize for LogReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LogReal", 3)?;
        s.serialize_field("sign", &self.sign)?;
        s.serialize_field("ln", &self.ln_abs())?;
        let decimal = if self.in_f64_range() {
            Some(format!("{}", self.to_f64()))
        } else {
            None
        };
        s.serialize_field("decimal", &decimal)?;
        s.end()
    }
}

/// How a modulus magnitude was specified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QKind {
    Exact,
    Log10,
    LogLog,
}

/// A modulus magnitude, normalized to (log q, log log q) access.
///
/// Every theorem here depends on q only through log q and log log q, so the
/// scale is stored as `log q` in sign/log form; q itself is never materialized.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QScale {
    kind: QKind,
    log_q: LogReal,
}

impl QScale {
    fn build(kind: QKind, log_q: LogReal) -> Result<QScale> {
        if log_q.sign() <= 0 || log_q.ln_abs() <= 0.0 {
            return Err(Error::domain("QScale requires log q > 1"));
        }
        Ok(QScale { kind, log_q })
    }

    pub fn from_exact(q: u64) -> Result<QScale> {
        QScale::build(QKind::Exact, LogReal::from_f64((q as f64).ln()))
    }

    pub fn from_q_f64(q: f64) -> Result<QScale> {
        QScale::build(QKind::Exact, LogReal::from_f64(q.ln()))
    }

    pub fn from_log10(log10_q: f64) -> Result<QScale> {
        QScale::build(
            QKind::Log10,
            LogReal::from_f64(log10_q * std::f64::consts::LN_10),
        )
    }

    pub fn from_loglog(loglog_q: f64) -> Result<QScale> {
        if !(loglog_q > 0.0) {
            return Err(Error::domain("QScale requires log log q > 0"));
        }
        QScale::build(QKind::LogLog, LogReal::from_ln(loglog_q))
    }

    pub fn kind(&self) -> QKind {
        self.kind
    }

    pub fn log_q(&self) -> LogReal {
        self.log_q
    }

    /// log q collapsed to f64 (+inf when beyond range).
    pub fn ln_q_f64(&self) -> f64 {
        self.log_q.to_f64()
    }

    /// log log q, always an ordinary real here.
    pub fn loglog_q(&self) -> f64 {
        self.log_q.ln_abs()
    }

    pub fn log10_q(&self) -> LogReal {
        self.log_q / LogReal::from_f64(std::f64::consts::LN_10)
    }

    /// q itself as a LogReal; saturates to +inf magnitude at extreme scales.
    pub fn q(&self) -> LogReal {
        LogReal::from_ln(self.log_q.to_f64())
    }

    /// (log q)^t as a LogReal.
    pub fn log_q_pow(&self, t: f64) -> LogReal {
        LogReal::from_ln(self.loglog_q() * t)
    }
}

/// Two-sided enclosure; any enclosed true value lies in `[lower, upper]`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Bracket {
    lower: LogReal,
    upper: LogReal,
}

impl Bracket {
    pub fn new(lower: LogReal, upper: LogReal) -> Bracket {
        assert!(
            lower.total_cmp(&upper) != Ordering::Greater,
            "bracket lower > upper"
        );
        Bracket { lower, upper }
    }

    pub fn from_f64(lower: f64, upper: f64) -> Bracket {
        Bracket::new(LogReal::from_f64(lower), LogReal::from_f64(upper))
    }

    pub fn lower(&self) -> LogReal {
        self.lower
    }

    pub fn upper(&self) -> LogReal {
        self.upper
    }

    pub fn lower_f64(&self) -> f64 {
        self.lower.to_f64()
    }

    pub fn upper_f64(&self) -> f64 {
        self.upper.to_f64()
    }

    pub fn width_f64(&self) -> f64 {
        self.upper_f64() - self.lower_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn ordinary_range_identities() {
        let five = LogReal::from_f64(2.0) + LogReal::from_f64(3.0);
        assert_relative_eq!(five.to_f64(), 5.0, max_relative = 1e-12);

        let x = LogReal::from_f64(-7.5) * LogReal::from_f64(4.0);
        assert_relative_eq!(x.to_f64(), -30.0, max_relative = 1e-12);
    }

    #[test]
    fn pow_in_log_space_is_scalar_multiply() {
        // (e^{e^20})^{3/16} has log-magnitude (3/16)·e^20
        let big = LogReal::from_ln(20f64.exp());
        let p = big.powf(3.0 / 16.0).unwrap();
        assert_relative_eq!(p.ln_abs(), 20f64.exp() * 3.0 / 16.0, max_relative = 1e-14);
        assert_eq!(p.sign(), 1);
    }

    #[test]
    fn cmp_beyond_f64_range() {
        // e^1000 > 10^300 because 1000 > 300 ln 10 ≈ 690.8
        let a = LogReal::from_ln(1000.0);
        let b = LogReal::from_f64(1e300);
        assert_eq!(a.total_cmp(&b), Ordering::Greater);
    }

    #[test]
    fn pow_of_negative_base() {
        let neg = LogReal::from_f64(-2.0);
        assert_relative_eq!(neg.powf(3.0).unwrap().to_f64(), -8.0, max_relative = 1e-12);
        assert!(neg.powf(0.5).is_err());
    }

    #[test]
    fn subtraction_flags_catastrophic_cancellation() {
        let a = LogReal::from_f64(1.0);
        let b = LogReal::from_f64(1.0 - 1e-14);
        let (d, lossy) = a.sub_flagged(b);
        assert!(lossy);
        assert!(d.to_f64() > 0.0);

        let (z, lossy) = a.sub_flagged(a);
        assert!(lossy);
        assert!(z.is_zero());

        let (c, lossy) = a.sub_flagged(LogReal::from_f64(0.25));
        assert!(!lossy);
        assert_relative_eq!(c.to_f64(), 0.75, max_relative = 1e-12);
    }

    #[test]
    fn division_by_zero_is_usage_error() {
        assert!(LogReal::ONE.checked_div(LogReal::ZERO).is_err());
    }

    #[test]
    fn qscale_consistency() {
        let q = QScale::from_exact(100_000).unwrap();
        assert_relative_eq!(q.ln_q_f64(), (1e5f64).ln(), max_relative = 1e-12);
        assert_relative_eq!(q.loglog_q(), (1e5f64).ln().ln(), max_relative = 1e-12);

        let q = QScale::from_log10(400.0).unwrap();
        assert_relative_eq!(q.ln_q_f64(), 400.0 * std::f64::consts::LN_10, max_relative = 1e-12);

        let q = QScale::from_loglog(20_800.0).unwrap();
        assert_relative_eq!(q.loglog_q(), 20_800.0, max_relative = 1e-14);
        assert_eq!(q.ln_q_f64(), f64::INFINITY); // saturates; log-space callers use loglog_q

        assert!(QScale::from_exact(2).is_err()); // log 2 < 1
    }

    proptest! {
        #[test]
        fn roundtrip_12_digits(x in -1e12f64..1e12f64) {
            prop_assume!(x.abs() > 1e-12);
            let r = LogReal::from_f64(x).to_f64();
            prop_assert!(((r - x) / x).abs() < 1e-12);
        }

        #[test]
        fn addition_commutes_and_associates(
            a in -1e6f64..1e6f64,
            b in -1e6f64..1e6f64,
            c in -1e6f64..1e6f64,
        ) {
            let (la, lb, lc) = (LogReal::from_f64(a), LogReal::from_f64(b), LogReal::from_f64(c));
            let ab = (la + lb).to_f64();
            let ba = (lb + la).to_f64();
            prop_assert!((ab - ba).abs() <= 1e-12 * ab.abs().max(1.0));
            let left = ((la + lb) + lc).to_f64();
            let right = (la + (lb + lc)).to_f64();
            let scale = a.abs().max(b.abs()).max(c.abs()).max(1.0);
            prop_assert!((left - right).abs() <= 1e-12 * scale);
        }

        #[test]
        fn mul_matches_f64(a in -1e100f64..1e100f64, b in -1e100f64..1e100f64) {
            prop_assume!(a != 0.0 && b != 0.0);
            let got = (LogReal::from_f64(a) * LogReal::from_f64(b)).to_f64();
            let want = a * b;
            prop_assert!(((got - want) / want).abs() < 1e-12);
        }
    }
}
