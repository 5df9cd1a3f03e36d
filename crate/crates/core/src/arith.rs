//! Exact arithmetic: big rationals, polynomials over Q and rational
//! functions in one variable `t`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type BigRat = BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rat(s: &str) -> Result<BigRat> {
    let s = s.trim();
    let r = BigRat::from_str(s).map_err(|_| Error::Parse(format!("not a rational number: `{s}`")))?;
    Ok(r)
}

fn sqrt_int(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn sqrt_rat(q: &BigRat) -> Option<BigRat> {
    Some(BigRat::new(sqrt_int(q.numer())?, sqrt_int(q.denom())?))
}

/// Dense polynomial over Q, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![BigRat::zero(), BigRat::one()])
    }

    /// `t - k`.
    pub fn linear_root(k: i64) -> Self {
        Self::from_coeffs(vec![int(-k), BigRat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(BigRat::one() / self.lc()))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs.iter().rev().fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let inv = BigRat::one() / d.lc();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![BigRat::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = &r[i] * &inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = &r[idx] - &c * dc;
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    /// Quotient by `t - k` when it divides exactly.
    pub fn divide_root(&self, k: &BigRat) -> Option<Poly> {
        let n = self.coeffs.len();
        if n == 0 {
            return Some(Poly::zero());
        }
        let mut q = vec![BigRat::zero(); n - 1];
        let mut acc = BigRat::zero();
        for i in (0..n).rev() {
            acc = acc * k + &self.coeffs[i];
            if i > 0 {
                q[i - 1] = acc.clone();
            }
        }
        acc.is_zero().then(|| Poly::from_coeffs(q))
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.monic(), b.monic());
        while !y.is_zero() {
            let r = x.div_rem(&y).1.monic();
            x = y;
            y = r;
        }
        x
    }

    fn denominators_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn numerators_gcd(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
    }

    fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRat::is_integer)
    }

    /// Exact square root, if one exists over Q.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        let Some(d) = self.degree() else { return Some(Poly::zero()) };
        if d % 2 == 1 {
            return None;
        }
        let m = d / 2;
        let top = sqrt_rat(&self.lc())?;
        let two_top = &top * int(2);
        let mut r = vec![BigRat::zero(); m + 1];
        r[m] = top;
        for k in (0..m).rev() {
            // coefficient of t^(m + k) in r^2 determines r[k]
            let mut acc = self.coeffs[m + k].clone();
            for i in (k + 1)..=m {
                let j = m + k - i;
                if j > k && j <= m {
                    acc -= &r[i] * &r[j];
                }
            }
            r[k] = acc / &two_top;
        }
        let root = Poly::from_coeffs(r);
        (&root * &root == *self).then_some(root)
    }

    fn fmt_integral(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            let mono = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            let coef = if a.is_integer() { a.numer().to_string() } else { format!("({a})") };
            if d == 0 {
                f.write_str(&coef)?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{coef}*{mono}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_integral(f)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, c) in s.chars().enumerate() {
            if (c == '+' || c == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(c);
        }
        terms.push(cur);
        let mut coeffs: Vec<BigRat> = Vec::new();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let bad = || Error::Parse(format!("bad polynomial term `{term}`"));
            let (coef, mono) = match body.split_once('*') {
                Some((c, m)) => (Some(c), Some(m)),
                None if body.starts_with('t') => (None, Some(body)),
                None => (Some(body), None),
            };
            let mut c = match coef {
                Some(c) => BigRat::from_integer(BigInt::from_str(c).map_err(|_| bad())?),
                None => BigRat::one(),
            };
            if neg {
                c = -c;
            }
            let d = match mono {
                None => 0,
                Some("t") => 1,
                Some(m) => m
                    .strip_prefix("t^")
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(bad)?,
            };
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigRat::zero());
            }
            coeffs[d] += c;
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRat::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

/// The factor `[t]_n = (t-2)(t-3)...(t-n+1)`, defined for `n >= 3`.
pub fn bracket(n: usize) -> Result<Poly> {
    if n < 3 {
        return Err(Error::BracketDomain(n));
    }
    Ok((2..n as i64).fold(Poly::one(), |acc, k| &acc * &Poly::linear_root(k)))
}

/// Normalized rational function `num/den` in `t`.
///
/// Invariants: `gcd(num, den) = 1`; both parts have integer coefficients with
/// no common integer factor; `den` has positive leading coefficient; zero is
/// `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = cancel_small_roots(num, den);
        let l = num.denominators_lcm().lcm(&den.denominators_lcm());
        if !l.is_one() {
            let s = BigRat::from_integer(l);
            num = num.scale(&s);
            den = den.scale(&s);
        }
        let mut c = num.numerators_gcd().gcd(&den.numerators_gcd());
        if den.lc().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            let s = BigRat::new(BigInt::one(), c);
            num = num.scale(&s);
            den = den.scale(&s);
        }
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn constant(c: BigRat) -> Self {
        Self::normalized(Poly::constant(c), Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::normalized(p, Poly::one())
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_poly(Poly::t())
    }

    /// `t - k`.
    pub fn t_minus(k: i64) -> Self {
        Self::from_poly(Poly::linear_root(k))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// The value when this is a constant function.
    pub fn as_constant(&self) -> Option<BigRat> {
        (self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0))
            .then(|| self.num.lc() / self.den.lc())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &RatFun) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(RatFun { num: base.num.pow(e.unsigned_abs()), den: base.den.pow(e.unsigned_abs()) })
    }

    pub fn evaluate(&self, t: &BigRat) -> Result<BigRat> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(Error::Pole { t: t.to_string(), factor: Poly::from_coeffs(vec![-t.clone(), BigRat::one()]).to_string() });
        }
        Ok(self.num.eval(t) / d)
    }

    /// Limit as `t` tends to infinity, `None` if it diverges.
    pub fn limit_at_infinity(&self) -> Option<BigRat> {
        let dn = self.num.degree()?;
        let dd = self.den.degree().expect("nonzero denominator");
        match dn.cmp(&dd) {
            Ordering::Less => Some(BigRat::zero()),
            Ordering::Equal => Some(self.num.lc() / self.den.lc()),
            Ordering::Greater => None,
        }
    }

    /// Exact square root in Q(t), if one exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        let prod = &self.num * &self.den;
        let r = prod.sqrt_exact()?;
        Some(Self::normalized(r, self.den.clone()))
    }

    /// Human-readable form with integer roots `t-k`, `|k| <= 20`, factored out.
    pub fn display_factored(&self) -> String {
        let n = factored(&self.num);
        if self.den.degree() == Some(0) && self.den.lc().is_one() {
            return n;
        }
        format!("{n} / {}", factored(&self.den))
    }
}

/// Parses the output format of [`RatFun::display_factored`]: products of
/// factors `c`, `t^e`, `(poly)^e`, optionally negated, with one top-level `/`.
pub fn parse_factored(s: &str) -> Result<RatFun> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 && split.is_none() => split = Some(i),
            _ => {}
        }
    }
    let (n, d) = match split {
        Some(i) => (&s[..i], &s[i + 1..]),
        None => (s.as_str(), "1"),
    };
    RatFun::new(parse_product(n)?, parse_product(d)?)
}

fn parse_product(s: &str) -> Result<Poly> {
    let bad = || Error::Parse(format!("bad factored expression `{s}`"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let mut acc = Poly::one();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = body.as_bytes();
    for i in 0..=bytes.len() {
        let at_end = i == bytes.len();
        if !at_end {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                _ => {}
            }
        }
        if at_end || (bytes[i] == b'*' && depth == 0) {
            let f = &body[start..i];
            start = i + 1;
            let factor = match f.strip_prefix('(') {
                Some(inner) => {
                    let close = inner.rfind(')').ok_or_else(bad)?;
                    let base: Poly = inner[..close].parse()?;
                    let exp = match &inner[close + 1..] {
                        "" => 1,
                        e => e.strip_prefix('^').and_then(|x| x.parse::<u32>().ok()).ok_or_else(bad)?,
                    };
                    base.pow(exp)
                }
                None => f.parse()?,
            };
            acc = &acc * &factor;
        }
    }
    Ok(if neg { -&acc } else { acc })
}

fn factored(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut rest = p.clone();
    let mut parts: Vec<String> = Vec::new();
    for k in -20i64..=20 {
        let f = Poly::linear_root(k);
        let mut e = 0;
        loop {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            let (q, r) = rest.div_rem(&f);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            let base = match k.cmp(&0) {
                Ordering::Equal => "t".to_string(),
                Ordering::Greater => format!("(t-{k})"),
                Ordering::Less => format!("(t+{})", -k),
            };
            parts.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
    }
    let lead = if rest.degree() == Some(0) {
        let c = rest.lc();
        rest = Poly::one();
        c
    } else {
        BigRat::one()
    };
    if !rest.is_one_poly() {
        parts.push(format!("({rest})"));
    }
    let body = parts.join("*");
    if body.is_empty() {
        return lead.to_string();
    }
    if lead.is_one() {
        body
    } else if lead == -BigRat::one() {
        format!("-{body}")
    } else {
        format!("{lead}*{body}")
    }
}

impl Poly {
    fn is_one_poly(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        debug_assert!(self.num.is_integral() && self.den.is_integral());
        if self.den.is_one_poly() {
            return write!(f, "{}", self.num);
        }
        write!(f, "{} / {}", self.num, self.den)
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({})", self.display_factored())
    }
}

impl FromStr for RatFun {
    type Err = Error;
    fn from_str(s: &str) -> Result<RatFun> {
        match s.split_once('/') {
            Some((n, d)) => RatFun::new(n.parse()?, d.parse()?),
            None => Ok(RatFun::from_poly(s.parse()?)),
        }
    }
}

impl From<BigRat> for RatFun {
    fn from(c: BigRat) -> Self {
        RatFun::constant(c)
    }
}

impl From<i64> for RatFun {
    fn from(n: i64) -> Self {
        RatFun::from_int(n)
    }
}

/// Integer roots tried before a general gcd.
const SMALL_ROOTS: std::ops::RangeInclusive<i64> = -8..=24;

/// Cancels common factors `t - k` with small integer `k`, leaving `den` free of
/// them when possible so the general gcd often becomes trivial.
fn cancel_small_roots(mut num: Poly, mut den: Poly) -> (Poly, Poly) {
    let mut kept = Poly::one();
    for k in SMALL_ROOTS {
        if den.degree().unwrap_or(0) == 0 {
            break;
        }
        let r = int(k);
        while let Some(q) = den.divide_root(&r) {
            den = q;
            match num.divide_root(&r) {
                Some(nq) => num = nq,
                None => kept = &kept * &Poly::linear_root(k),
            }
        }
    }
    if den.degree().unwrap_or(0) == 0 {
        return (num, &kept * &den);
    }
    let g = Poly::gcd(&num, &den);
    if g.degree() != Some(0) {
        num = num.div_rem(&g).0;
        den = den.div_rem(&g).0;
    }
    (num, &kept * &den)
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFun::normalized(&self.num + &o.num, self.den.clone());
        }
        RatFun::normalized(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        RatFun::normalized(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, o: &RatFun) -> RatFun {
        self.checked_div(o).expect("rational function division by zero")
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, o: RatFun) -> RatFun {
                (&self).$m(&o)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, o: &RatFun) -> RatFun {
                (&self).$m(o)
            }
        }
    };
}

by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl std::iter::Sum for RatFun {
    fn sum<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for RatFun {
    fn product<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::one(), |a, b| &a * &b)
    }
}

/// Converts a small integer-valued rational to `i64`.
pub fn rat_to_i64(q: &BigRat) -> Option<i64> {
    q.is_integer().then(|| q.numer().to_i64()).flatten()
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(q: &BigRat) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Determinant by Gaussian elimination over Q(t).
pub fn determinant(m: &[Vec<RatFun>]) -> RatFun {
    let n = m.len();
    let mut a: Vec<Vec<RatFun>> = m.to_vec();
    let mut det = RatFun::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else { return RatFun::zero() };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col].clone();
        det = &det * &piv;
        let inv = piv.inv().expect("nonzero pivot");
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            let (top, rest) = a.split_at_mut(r);
            for (x, y) in rest[0][col..n].iter_mut().zip(&top[col][col..n]) {
                *x = &*x - &(&f * y);
            }
        }
    }
    det
}

/// Incremental row reduction that detects the first vector lying in the span
/// of its predecessors.
#[derive(Default)]
pub struct DependenceFinder {
    rows: Vec<(usize, Vec<RatFun>, Vec<RatFun>)>,
    count: usize,
}

impl DependenceFinder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds vector `v`. Returns `Some(c)` with `v = sum c_i v_i` over the
    /// previously added vectors when dependent; the vector is then dropped.
    pub fn push(&mut self, v: Vec<RatFun>) -> Option<Vec<RatFun>> {
        let k = self.count;
        let mut v = v;
        // combination expressing the reduced v in terms of inputs 0..=k
        let mut comb = vec![RatFun::zero(); k + 1];
        comb[k] = RatFun::one();
        for (pivot, row, rc) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = &v[*pivot] / &row[*pivot];
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, v, comb));
                self.count += 1;
                None
            }
            None => Some(comb[..k].iter().map(|c| -c).collect()),
        }
    }
}
