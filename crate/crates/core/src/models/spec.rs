use std::fmt;

use rug::Integer;

use crate::error::{Error, Result};

/// One arithmetic progression `a + qℕ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Progression {
    pub a: u64,
    pub q: u64,
}

/// Integer polynomial `f(n) = a_0 n^k + a_1 n^{k−1} + … + a_k` with leading
/// coefficient first, validated so that `f(ℕ) ⊆ ℕ*` and `f` is injective on ℕ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
    /// `f` is strictly increasing on `[monotone_from, ∞)`.
    monotone_from: u64,
}

/// Largest `n₀` accepted for the exhaustive collision scan.
const MAX_SCAN: u64 = 5_000_000;

impl IntPolynomial {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Argument("polynomial part sets need degree at least 1".into()));
        }
        if coeffs[0] <= 0 {
            return Err(Error::Argument(format!(
                "leading coefficient must be positive for f(ℕ) ⊆ ℕ*, got {}",
                coeffs[0]
            )));
        }
        let mut poly = IntPolynomial { coeffs, monotone_from: 0 };
        poly.monotone_from = poly.derivative_root_bound()?;
        poly.validate_values()?;
        Ok(poly)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> i64 {
        self.coeffs[0]
    }

    /// Coefficient of `n^{k−1}`.
    pub fn subleading(&self) -> i64 {
        self.coeffs[1]
    }

    pub fn constant(&self) -> i64 {
        *self.coeffs.last().expect("non-empty")
    }

    pub fn monotone_from(&self) -> u64 {
        self.monotone_from
    }

    pub fn eval(&self, n: &Integer) -> Integer {
        let mut acc = Integer::new();
        for &c in &self.coeffs {
            acc *= n;
            acc += c;
        }
        acc
    }

    pub fn eval_u64(&self, n: u64) -> Integer {
        self.eval(&Integer::from(n))
    }

    /// Integer upper bound past which `f′ > 0` (Cauchy bound on the roots of `f′`).
    fn derivative_root_bound(&self) -> Result<u64> {
        let k = self.degree() as i64;
        let lead = Integer::from(self.coeffs[0]) * k;
        let mut max_ratio = 0f64;
        for (i, &c) in self.coeffs.iter().enumerate().take(self.degree()).skip(1) {
            let dc = Integer::from(c) * (k - i as i64);
            let ratio = (dc.to_f64() / lead.to_f64()).abs();
            max_ratio = max_ratio.max(ratio);
        }
        let bound = (1.0 + max_ratio).ceil();
        if bound > MAX_SCAN as f64 {
            return Err(Error::Argument(format!(
                "cannot certify injectivity: derivative root bound {bound} exceeds scan limit"
            )));
        }
        Ok(bound as u64)
    }

    /// `f(n) ≥ 1` on ℕ and no value repeats.
    fn validate_values(&self) -> Result<()> {
        let n0 = self.monotone_from;
        let mut seen = std::collections::HashMap::new();
        let mut top = Integer::new();
        for n in 0..=n0 {
            let v = self.eval_u64(n);
            if v < 1 {
                return Err(Error::Argument(format!("f({n}) = {v} violates f(ℕ) ⊆ ℕ*")));
            }
            if let Some(prev) = seen.insert(v.clone(), n) {
                return Err(Error::Argument(format!("f is not injective on ℕ: f({prev}) = f({n}) = {v}")));
            }
            if v > top {
                top = v;
            }
        }
        // Beyond n₀ the values increase strictly; only values up to the
        // running maximum can collide with the scanned ones.
        let mut n = n0 + 1;
        loop {
            let v = self.eval_u64(n);
            if v > top {
                break;
            }
            if let Some(prev) = seen.get(&v) {
                return Err(Error::Argument(format!("f is not injective on ℕ: f({prev}) = f({n}) = {v}")));
            }
            n += 1;
        }
        Ok(())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "poly({})", parts.join(","))
    }
}

/// A part set `Λ ⊆ ℕ*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LambdaSpec {
    /// `ℕ*`.
    Classical,
    /// `{(qn + a)^k : n ≥ 0}`.
    PowerAp { a: u64, q: u64, k: u32 },
    /// `{f(n) : n ≥ 0}`.
    Polynomial(IntPolynomial),
    /// `⋃ (a_i + q_i ℕ)`.
    UnionAp(Vec<Progression>),
    /// `kℕ* ∪ {a}`.
    KPowerPlusSingleton { k: u64, a: u64 },
}

impl LambdaSpec {
    pub fn powers(k: u32) -> Result<Self> {
        Self::power_ap(1, 1, k)
    }

    pub fn power_ap(a: u64, q: u64, k: u32) -> Result<Self> {
        if a == 0 || q == 0 || k == 0 {
            return Err(Error::Argument(format!("ap(a,q,k) needs a, q, k ≥ 1, got ({a},{q},{k})")));
        }
        Ok(LambdaSpec::PowerAp { a, q, k })
    }

    pub fn polynomial(coeffs: Vec<i64>) -> Result<Self> {
        Ok(LambdaSpec::Polynomial(IntPolynomial::new(coeffs)?))
    }

    pub fn union_ap(progressions: Vec<(u64, u64)>) -> Result<Self> {
        if progressions.is_empty() {
            return Err(Error::Argument("unionap needs at least one progression".into()));
        }
        let mut out = Vec::with_capacity(progressions.len());
        for (a, q) in progressions {
            if a == 0 || q == 0 {
                return Err(Error::Argument(format!("progression ({a},{q}) needs a, q ≥ 1")));
            }
            out.push(Progression { a, q });
        }
        Ok(LambdaSpec::UnionAp(out))
    }

    pub fn k_power_plus_singleton(k: u64, a: u64) -> Result<Self> {
        if k < 2 || a == 0 {
            return Err(Error::Argument(format!("kpow1(k,a) needs k ≥ 2 and a ≥ 1, got ({k},{a})")));
        }
        Ok(LambdaSpec::KPowerPlusSingleton { k, a })
    }

    /// `Λ ∩ [1, x_max]`, strictly increasing.
    pub fn parts_up_to(&self, x_max: u64) -> Vec<u64> {
        let mut parts = match self {
            LambdaSpec::Classical => return (1..=x_max).collect(),
            LambdaSpec::PowerAp { a, q, k } => {
                let mut v = Vec::new();
                for n in 0u64.. {
                    let base = u128::from(*q) * u128::from(n) + u128::from(*a);
                    match base.checked_pow(*k) {
                        Some(p) if p <= u128::from(x_max) => v.push(p as u64),
                        _ => break,
                    }
                }
                return v;
            }
            LambdaSpec::Polynomial(poly) => {
                let mut v = Vec::new();
                let limit = Integer::from(x_max);
                for n in 0u64.. {
                    let value = poly.eval_u64(n);
                    if value <= limit {
                        v.push(value.to_u64().expect("bounded by x_max"));
                    } else if n >= poly.monotone_from() {
                        break;
                    }
                }
                v
            }
            LambdaSpec::UnionAp(progs) => {
                let mut v = Vec::new();
                for p in progs {
                    let mut x = p.a;
                    while x <= x_max {
                        v.push(x);
                        x = match x.checked_add(p.q) {
                            Some(y) => y,
                            None => break,
                        };
                    }
                }
                v
            }
            LambdaSpec::KPowerPlusSingleton { k, a } => {
                let mut v: Vec<u64> = (1..=x_max / k).map(|j| j * k).collect();
                if *a <= x_max {
                    v.push(*a);
                }
                v
            }
        };
        parts.sort_unstable();
        parts.dedup();
        parts
    }

    /// Exponent `α` in `|Λ ∩ [1,x]| ∼ c x^α`.
    pub fn alpha_f64(&self) -> f64 {
        match self {
            LambdaSpec::PowerAp { k, .. } => 1.0 / f64::from(*k),
            LambdaSpec::Polynomial(p) => 1.0 / p.degree() as f64,
            _ => 1.0,
        }
    }

    /// Short family name used in reports.
    pub fn family(&self) -> &'static str {
        match self {
            LambdaSpec::Classical => "classical",
            LambdaSpec::PowerAp { .. } => "ap",
            LambdaSpec::Polynomial(_) => "poly",
            LambdaSpec::UnionAp(_) => "unionap",
            LambdaSpec::KPowerPlusSingleton { .. } => "kpow1",
        }
    }
}

impl fmt::Display for LambdaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaSpec::Classical => write!(f, "classical"),
            LambdaSpec::PowerAp { a: 1, q: 1, k } => write!(f, "powers({k})"),
            LambdaSpec::PowerAp { a, q, k } => write!(f, "ap({a},{q},{k})"),
            LambdaSpec::Polynomial(p) => write!(f, "{p}"),
            LambdaSpec::UnionAp(progs) => {
                let inner: Vec<String> = progs.iter().map(|p| format!("{},{}", p.a, p.q)).collect();
                write!(f, "unionap({})", inner.join(";"))
            }
            LambdaSpec::KPowerPlusSingleton { k, a } => write!(f, "kpow1({k},{a})"),
        }
    }
}

impl std::str::FromStr for LambdaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        let token: String = self.text[at.min(self.text.len())..].chars().take(12).collect();
        Error::Parse {
            column: self.text[..at.min(self.text.len())].chars().count() + 1,
            token: if token.is_empty() { "<end of input>".into() } else { token },
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.text[start..self.pos]
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) if c.is_whitespace() => Err(self.error(self.pos, "whitespace is not allowed in part-set specs")),
            _ => Err(self.error(self.pos, format!("expected `{want}`"))),
        }
    }

    fn integer(&mut self, signed: bool) -> Result<i64> {
        let start = self.pos;
        if matches!(self.peek(), Some(c) if c.is_whitespace()) {
            return Err(self.error(start, "whitespace is not allowed in part-set specs"));
        }
        if signed && self.peek() == Some('-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = &self.text[start..self.pos];
        if digits.is_empty() || digits == "-" {
            return Err(self.error(start, "expected an integer"));
        }
        digits.parse::<i64>().map_err(|_| self.error(start, "integer out of range"))
    }

    fn unsigned(&mut self) -> Result<u64> {
        let start = self.pos;
        let v = self.integer(false)?;
        u64::try_from(v).map_err(|_| self.error(start, "expected a non-negative integer"))
    }

    /// Comma-separated integers up to the closing parenthesis.
    fn int_list(&mut self, signed: bool) -> Result<Vec<i64>> {
        let mut out = vec![self.integer(signed)?];
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(self.integer(signed)?);
        }
        Ok(out)
    }
}

/// Parse a part-set spec such as `ap(3,4,2)` or `unionap(1,2;2,3)`.
pub fn parse_spec(text: &str) -> Result<LambdaSpec> {
    let mut cur = Cursor { text, pos: 0 };
    let name_start = cur.pos;
    let name = cur.ident();
    let with_args = |cur: &mut Cursor, arity: usize, signed: bool| -> Result<Vec<i64>> {
        cur.expect('(')?;
        let at = cur.pos;
        let args = cur.int_list(signed)?;
        if arity > 0 && args.len() != arity {
            return Err(cur.error(at, format!("expected {arity} arguments, found {}", args.len())));
        }
        cur.expect(')')?;
        Ok(args)
    };
    let arg_start = cur.pos + 1;
    let to_u = |cur: &Cursor, v: i64| -> Result<u64> {
        u64::try_from(v).map_err(|_| cur.error(arg_start, "arguments must be non-negative"))
    };
    let spec = match name {
        "classical" => LambdaSpec::Classical,
        "powers" => {
            let args = with_args(&mut cur, 1, false)?;
            let k = u32::try_from(args[0]).map_err(|_| cur.error(arg_start, "exponent out of range"))?;
            LambdaSpec::powers(k).map_err(|e| cur.error(arg_start, e.to_string()))?
        }
        "ap" => {
            let args = with_args(&mut cur, 3, false)?;
            let k = u32::try_from(args[2]).map_err(|_| cur.error(arg_start, "exponent out of range"))?;
            LambdaSpec::power_ap(to_u(&cur, args[0])?, to_u(&cur, args[1])?, k)
                .map_err(|e| cur.error(arg_start, e.to_string()))?
        }
        "poly" => {
            let args = with_args(&mut cur, 0, true)?;
            // Model validation failures are argument errors, not syntax errors.
            LambdaSpec::polynomial(args)?
        }
        "kpow1" => {
            let args = with_args(&mut cur, 2, false)?;
            LambdaSpec::k_power_plus_singleton(to_u(&cur, args[0])?, to_u(&cur, args[1])?)
                .map_err(|e| cur.error(arg_start, e.to_string()))?
        }
        "unionap" => {
            cur.expect('(')?;
            let mut progs = Vec::new();
            loop {
                let a = cur.unsigned()?;
                cur.expect(',')?;
                let q = cur.unsigned()?;
                progs.push((a, q));
                match cur.peek() {
                    Some(';') => cur.pos += 1,
                    _ => break,
                }
            }
            cur.expect(')')?;
            LambdaSpec::union_ap(progs).map_err(|e| cur.error(arg_start, e.to_string()))?
        }
        "" => return Err(cur.error(name_start, "expected a part-set name")),
        other => {
            return Err(cur.error(
                name_start,
                format!("unknown part set `{other}` (expected classical, powers, ap, poly, unionap or kpow1)"),
            ))
        }
    };
    if cur.pos != text.len() {
        return Err(cur.error(cur.pos, "unexpected trailing input"));
    }
    Ok(spec)
}
