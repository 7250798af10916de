//! Multivariate Laurent polynomials over the rationals.
//!
//! Variables are written `y1, ..., yN`. Terms are stored in a canonical
//! ordered map with no zero coefficients, so structural equality is
//! mathematical equality.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

/// Exact rational scalar. Always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Build a rational from a pair of machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Build an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `a` or `a/b` (optionally signed) into a rational.
pub fn parse_rational(s: &str) -> Result<Rational, LaurentError> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let bad = || LaurentError::Syntax {
        pos: 0,
        msg: alloc::format!("invalid rational `{}`", s),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(LaurentError::Syntax {
            pos: 0,
            msg: alloc::format!("zero denominator in `{}`", s),
        });
    }
    Ok(Rational::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaurentError {
    Syntax { pos: usize, msg: String },
    VariableOutOfRange { pos: usize, index: usize, num_vars: usize },
    VarCountMismatch { left: usize, right: usize },
    ExponentOverflow,
    NotAUnit,
    ZeroCoordinate { index: usize },
}

impl fmt::Display for LaurentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentError::Syntax { pos, msg } => write!(f, "syntax error at {}: {}", pos, msg),
            LaurentError::VariableOutOfRange { pos, index, num_vars } => write!(
                f,
                "variable y{} at {} out of range (num_vars = {})",
                index, pos, num_vars
            ),
            LaurentError::VarCountMismatch { left, right } => {
                write!(f, "variable count mismatch: {} vs {}", left, right)
            }
            LaurentError::ExponentOverflow => write!(f, "exponent overflow"),
            LaurentError::NotAUnit => write!(f, "polynomial is not a unit"),
            LaurentError::ZeroCoordinate { index } => {
                write!(f, "torus coordinate {} is zero", index + 1)
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for LaurentError {}

/// Exponent vector of a Laurent monomial.
///
/// Ordered by total degree first; within a degree a larger exponent on an
/// earlier variable sorts first, so `1 + y1 + y2` prints in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<i32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn checked_mul(&self, other: &Monomial) -> Result<Monomial, LaurentError> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(LaurentError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Monomial)
    }

    fn checked_inv(&self) -> Result<Monomial, LaurentError> {
        self.0
            .iter()
            .map(|a| a.checked_neg().ok_or(LaurentError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A point of the algebraic torus: every coordinate is a nonzero rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    coords: Vec<Rational>,
}

impl TorusPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self, LaurentError> {
        if let Some(i) = coords.iter().position(|c| c.is_zero()) {
            return Err(LaurentError::ZeroCoordinate { index: i });
        }
        Ok(TorusPoint { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, LaurentError> {
        Self::new(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn num_vars(&self) -> usize {
        self.coords.len()
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// Exact Laurent polynomial in `num_vars` variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero(num_vars: usize) -> Self {
        LaurentPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        Self::monomial(num_vars, c, Monomial::one(num_vars))
    }

    /// The coordinate function `y{index+1}`.
    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable index out of range");
        Self::monomial(num_vars, Rational::one(), Monomial::var(num_vars, index))
    }

    pub fn monomial(num_vars: usize, c: Rational, m: Monomial) -> Self {
        assert_eq!(m.0.len(), num_vars, "monomial length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { num_vars, terms }
    }

    /// Build from raw terms; duplicates are merged and zeros dropped.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(num_vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), num_vars, "monomial length mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// `1 + y1 + ... + y_{num_vars}`, the pants section.
    pub fn pants_section(num_vars: usize) -> Self {
        let mut p = Self::one(num_vars);
        for i in 0..num_vars {
            p.add_term(Monomial::var(num_vars, i), Rational::one());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Constant value if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// Largest term under the term order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn check_vars(&self, other: &Self) -> Result<(), LaurentError> {
        if self.num_vars != other.num_vars {
            return Err(LaurentError::VarCountMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.checked_mul(mb)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Units of the Laurent ring are exactly the nonzero single terms.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn unit_inverse(&self) -> Result<Self, LaurentError> {
        if !self.is_unit() {
            return Err(LaurentError::NotAUnit);
        }
        let (m, c) = self.terms.iter().next().expect("one term");
        Ok(Self::monomial(self.num_vars, c.recip(), m.checked_inv()?))
    }

    pub fn evaluate(&self, p: &TorusPoint) -> Rational {
        assert_eq!(p.num_vars(), self.num_vars, "point dimension mismatch");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in p.coords().iter().zip(m.exponents()) {
                if e != 0 {
                    t *= Pow::pow(x, e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluate at a point whose coordinates may include zero (only valid
    /// when no variable appears with a negative exponent at a zero coordinate).
    pub fn try_evaluate(&self, coords: &[Rational]) -> Option<Rational> {
        assert_eq!(coords.len(), self.num_vars, "point dimension mismatch");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in coords.iter().zip(m.exponents()) {
                if e < 0 && x.is_zero() {
                    return None;
                }
                if e != 0 {
                    t *= Pow::pow(x, e);
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Componentwise minimum exponent across all terms (the largest monomial
    /// dividing every term). `None` for the zero polynomial.
    pub fn min_exponents(&self) -> Option<Vec<i32>> {
        let mut it = self.terms.keys();
        let first = it.next()?.0.clone();
        Some(it.fold(first, |acc, m| acc.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect()))
    }

    /// Componentwise maximum exponent across all terms.
    pub fn max_exponents(&self) -> Option<Vec<i32>> {
        let mut it = self.terms.keys();
        let first = it.next()?.0.clone();
        Some(it.fold(first, |acc, m| acc.iter().zip(&m.0).map(|(a, b)| *a.max(b)).collect()))
    }

    /// `self / d` when `d` divides `self` in the Laurent ring, else `None`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() || self.num_vars != d.num_vars {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.num_vars));
        }
        // Quotient exponents live in the box bounded by the two Newton boxes.
        let lo: Vec<i32> = self
            .min_exponents()?
            .iter()
            .zip(d.min_exponents()?)
            .map(|(a, b)| a - b)
            .collect();
        let hi: Vec<i32> = self
            .max_exponents()?
            .iter()
            .zip(d.max_exponents()?)
            .map(|(a, b)| a - b)
            .collect();
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let dm_inv = dm.checked_inv().ok()?;
        let mut rem = self.clone();
        let mut q = Self::zero(self.num_vars);
        while let Some((m, c)) = rem.leading_term() {
            let tm = m.checked_mul(&dm_inv).ok()?;
            if tm.0.iter().zip(lo.iter().zip(&hi)).any(|(e, (l, h))| e < l || e > h) {
                return None;
            }
            let t = Self::monomial(self.num_vars, c / &dc, tm);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Multiply by the monomial with the given exponent vector.
    pub fn shift_exponents(&self, by: &[i32]) -> Result<Self, LaurentError> {
        let m = Monomial(by.to_vec());
        let mut out = Self::zero(self.num_vars);
        for (mm, c) in &self.terms {
            out.add_term(mm.checked_mul(&m)?, c.clone());
        }
        Ok(out)
    }

    /// Re-embed into a ring with more variables (new variables appended).
    pub fn extend_vars(&self, num_vars: usize) -> Self {
        assert!(num_vars >= self.num_vars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            e.resize(num_vars, 0);
            (Monomial(e), c.clone())
        });
        Self::from_terms(num_vars, terms)
    }

    pub fn parse(expr: &str, num_vars: usize) -> Result<Self, LaurentError> {
        Parser {
            src: expr.as_bytes(),
            pos: 0,
            num_vars,
        }
        .parse_poly()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "y{}", i + 1)?;
        } else {
            write!(f, "y{}^{}", i + 1, e)?;
        }
    }
    Ok(())
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        write_monomial(f, self)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write_monomial(f, m)?;
            } else {
                write!(f, "{}*", a)?;
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl core::str::FromStr for TorusPoint {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coords = s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
        TorusPoint::new(coords)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    num_vars: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> LaurentError {
        LaurentError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt, LaurentError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("validated digits"))
    }

    fn small_int(&mut self, what: &str) -> Result<i64, LaurentError> {
        let here = self.pos;
        let v = self.digits()?;
        i64::try_from(v).map_err(|_| LaurentError::Syntax {
            pos: here,
            msg: alloc::format!("{} too large", what),
        })
    }

    fn parse_poly(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = LaurentPoly::zero(self.num_vars);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            None => return Err(self.err("empty expression")),
            _ => 1,
        };
        loop {
            let (m, c) = self.parse_term()?;
            acc.add_term(m, if sign < 0 { -c } else { c });
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return Err(self.err("expected `+`, `-` or end of input")),
            }
            self.pos += 1;
        }
    }

    fn parse_term(&mut self) -> Result<(Monomial, Rational), LaurentError> {
        let mut coeff = Rational::one();
        let mut mono = Monomial::one(self.num_vars);
        loop {
            match self.peek() {
                Some(b'y') => {
                    let var_pos = self.pos;
                    self.pos += 1;
                    let k = self.small_int("variable index")?;
                    if k < 1 || k as usize > self.num_vars {
                        return Err(LaurentError::VariableOutOfRange {
                            pos: var_pos,
                            index: k as usize,
                            num_vars: self.num_vars,
                        });
                    }
                    let mut e: i64 = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let neg = if self.peek() == Some(b'-') {
                            self.pos += 1;
                            true
                        } else {
                            false
                        };
                        e = self.small_int("exponent")?;
                        if neg {
                            e = -e;
                        }
                    }
                    let e = i32::try_from(e).map_err(|_| LaurentError::ExponentOverflow)?;
                    let idx = k as usize - 1;
                    mono.0[idx] = mono.0[idx].checked_add(e).ok_or(LaurentError::ExponentOverflow)?;
                }
                Some(c) if c.is_ascii_digit() => {
                    let num = self.digits()?;
                    let mut den = BigInt::one();
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        den = self.digits()?;
                        if den.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                    }
                    coeff *= Rational::new(num, den);
                }
                _ => return Err(self.err("expected coefficient or variable")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((mono, coeff));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n).unwrap()
    }

    #[test]
    fn parses_pants_section() {
        assert_eq!(p("1 + y1 + y2", 2), LaurentPoly::pants_section(2));
        assert_eq!(LaurentPoly::pants_section(2).to_string(), "1 + y1 + y2");
    }

    #[test]
    fn parses_zero_and_negative_exponents() {
        assert!(p("0", 1).is_zero());
        let f = p("3/2*y1^-2*y2 - y2", 2);
        assert_eq!(f.num_terms(), 2);
        let exps: Vec<Vec<i32>> = f.terms().map(|(m, _)| m.exponents().to_vec()).collect();
        assert!(exps.contains(&vec![-2, 1]));
        assert!(exps.contains(&vec![0, 1]));
        assert_eq!(f.to_string(), "3/2*y1^-2*y2 - y2");
    }

    #[test]
    fn parse_errors_carry_position() {
        match LaurentPoly::parse("1 + y3", 2) {
            Err(LaurentError::VariableOutOfRange { pos, index: 3, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {:?}", other),
        }
        assert!(matches!(
            LaurentPoly::parse("1 + ", 1),
            Err(LaurentError::Syntax { .. })
        ));
        assert!(matches!(
            LaurentPoly::parse("1 ** y1", 1),
            Err(LaurentError::Syntax { .. })
        ));
        assert!(matches!(LaurentPoly::parse("1/0", 1), Err(LaurentError::Syntax { .. })));
    }

    #[test]
    fn ring_examples() {
        let y1 = p("y1", 1);
        assert!((&y1 * &p("y1^-1", 1)).is_one());
        assert!((&y1 + &(-&y1)).is_zero());
        assert_eq!(&p("1 + y1", 1) * &p("1 - y1", 1), p("1 - y1^2", 1));
    }

    #[test]
    fn var_count_mismatch() {
        assert_eq!(
            p("y1", 1).checked_add(&p("y1", 2)),
            Err(LaurentError::VarCountMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn evaluation() {
        let two = TorusPoint::from_ints(&[2]).unwrap();
        assert_eq!(p("1 + y1", 1).evaluate(&two), int(3));
        assert_eq!(p("y1^-1", 1).evaluate(&two), rat(1, 2));
        let q = TorusPoint::from_ints(&[1, -2]).unwrap();
        assert_eq!(LaurentPoly::pants_section(2).evaluate(&q), int(0));
    }

    #[test]
    fn units() {
        assert!(p("y1", 1).is_unit());
        assert!(!p("1 + y1", 1).is_unit());
        let u = p("3*y1^2*y2^-1", 2);
        assert_eq!(u.unit_inverse().unwrap(), p("1/3*y1^-2*y2", 2));
        assert_eq!(p("1 + y1", 1).unit_inverse(), Err(LaurentError::NotAUnit));
    }

    #[test]
    fn torus_point_rejects_zero() {
        assert!(TorusPoint::from_ints(&[1, 0]).is_err());
        assert_eq!("2, -1/3".parse::<TorusPoint>().unwrap().coords()[1], rat(-1, 3));
    }

    #[test]
    fn exact_division() {
        let s = p("1 + y1 + y2", 2);
        let a = &s * &p("y1^-1 - 2*y2", 2);
        assert_eq!(a.exact_div(&s), Some(p("y1^-1 - 2*y2", 2)));
        assert_eq!(p("y1^3 - 1", 2).exact_div(&p("y1 - 1", 2)), Some(p("1 + y1 + y1^2", 2)));
        assert_eq!(p("1 + y1", 2).exact_div(&p("1 + y2", 2)), None);
        assert_eq!(p("1 + y1", 2).exact_div(&LaurentPoly::zero(2)), None);
    }
}
