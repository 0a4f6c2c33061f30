use rug::ops::Pow;
use rug::float::Constant;
use rug::Float;

/// Working precision for the high-precision paths, in significant decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Precision {
    digits: u32,
}

const GUARD_BITS: u32 = 24;

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 50;

    pub fn new(digits: u32) -> Self {
        Precision { digits: digits.max(10) }
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    /// Mantissa bits including guard bits.
    pub fn bits(self) -> u32 {
        (f64::from(self.digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
    }

    /// Same precision with `extra` additional bits, for internal cancellation-prone sums.
    pub fn widened(self, extra_bits: u32) -> Precision {
        let extra_digits = (f64::from(extra_bits) / std::f64::consts::LOG2_10).ceil() as u32;
        Precision::new(self.digits + extra_digits)
    }

    /// Relative tolerance `10^{-digits}`.
    pub fn epsilon(self) -> Float {
        let ten = Float::with_val(self.bits(), 10);
        ten.pow(-i64::from(self.digits))
    }

    pub fn float<T>(self, value: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits(), value)
    }

    pub fn pi(self) -> Float {
        Float::with_val(self.bits(), Constant::Pi)
    }

    pub fn euler_gamma(self) -> Float {
        Float::with_val(self.bits(), Constant::Euler)
    }

    /// `½ log 2π`.
    pub fn half_log_two_pi(self) -> Float {
        let two_pi = self.pi() * 2u32;
        two_pi.ln() / 2u32
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::new(Self::DEFAULT_DIGITS)
    }
}
