//! Exact rational scalars, sparse multivariate polynomials over a fixed
//! symbol table, and a sign classifier for bivariate quadratics.
//!
//! Everything here is immutable after construction. The [`Ring`] and
//! [`Field`] traits let the closed-form formulas elsewhere in the crate be
//! written once and evaluated over rationals, floats or polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses `"p/q"`, `"p"` or a terminating decimal such as `"-0.25"`
/// (surrounding whitespace ignored).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::BadRational(text.to_string());
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(bad());
    }
    if let Some((whole, fraction)) = trimmed.split_once('.') {
        let digits_only = |s: &str| s.chars().all(|c| c.is_ascii_digit());
        let (negative, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if !digits_only(whole) || !digits_only(fraction) || (whole.is_empty() && fraction.is_empty()) {
            return Err(bad());
        }
        let numerator: BigInt = format!("{whole}{fraction}").parse().map_err(|_| bad())?;
        let value = Rational::new(numerator, num_traits::pow(BigInt::from(10), fraction.len()));
        return Ok(if negative { -value } else { value });
    }
    trimmed.parse::<Rational>().map_err(|_| bad())
}

/// Parses a comma-separated list of rational literals.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rational).collect()
}

pub fn rat(numerator: i64, denominator: i64) -> Rational {
    Rational::new(BigInt::from(numerator), BigInt::from(denominator))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rationals(values: &[(i64, i64)]) -> Vec<Rational> {
    values.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn integers(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&n| int(n)).collect()
}

pub fn rational_to_f64(value: &Rational) -> f64 {
    ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
}

/// Returns the exact square root when `value` is the square of a rational.
pub fn rational_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let numer = value.numer().sqrt();
    let denom = value.denom().sqrt();
    if &(&numer * &numer) == value.numer() && &(&denom * &denom) == value.denom() {
        Some(Rational::new(numer, denom))
    } else {
        None
    }
}

/// Symbols that may appear in a polynomial.
///
/// The derived ordering fixes the printing order and the layout of
/// exponent vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Minkowski tensor parameter, or Killing-vector parameter (1..=6).
    Alpha(u8),
    /// Euclidean tensor parameter (1..=6).
    Beta(u8),
    /// α′1 = α1 + α2.
    AlphaPrime1,
    /// β′1 = β1 − β2.
    BetaPrime1,
    T,
    X,
    Y,
    A,
    B,
    C,
    S,
    K2,
    P1,
    P2,
    Q1,
    Q2,
}

impl Var {
    pub fn alpha(i: u8) -> Var {
        assert!((1..=6).contains(&i), "alpha index out of range: {i}");
        Var::Alpha(i)
    }

    pub fn beta(i: u8) -> Var {
        assert!((1..=6).contains(&i), "beta index out of range: {i}");
        Var::Beta(i)
    }

    pub fn name(self) -> String {
        match self {
            Var::Alpha(i) => format!("alpha{i}"),
            Var::Beta(i) => format!("beta{i}"),
            Var::AlphaPrime1 => "alpha1p".into(),
            Var::BetaPrime1 => "beta1p".into(),
            Var::T => "t".into(),
            Var::X => "x".into(),
            Var::Y => "y".into(),
            Var::A => "a".into(),
            Var::B => "b".into(),
            Var::C => "c".into(),
            Var::S => "s".into(),
            Var::K2 => "k2".into(),
            Var::P1 => "p1".into(),
            Var::P2 => "p2".into(),
            Var::Q1 => "q1".into(),
            Var::Q2 => "q2".into(),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A power product: sorted by symbol, no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut powers: Vec<(Var, u32)>) -> Self {
        powers.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(powers.len());
        for (v, e) in powers {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        merged.retain(|&(_, e)| e > 0);
        Monomial(merged)
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(v, _)| v == var)
            .map_or(0, |&(_, e)| e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Removes `var` entirely, returning its exponent and the remainder.
    fn split(&self, var: Var) -> (u32, Monomial) {
        let e = self.exponent(var);
        let rest = self.0.iter().copied().filter(|&(v, _)| v != var).collect();
        (e, Monomial(rest))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| if e == 1 { v.name() } else { format!("{v}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(value: Rational) -> Self {
        MultiPoly::term(value, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(int(n))
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::term(Rational::one(), Monomial(vec![(v, 1)]))
    }

    pub fn term(coefficient: Rational, monomial: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(monomial, coefficient);
        }
        MultiPoly { terms }
    }

    /// Σ values[i]·vars[i], a linear form.
    pub fn linear(vars: &[Var], values: &[Rational]) -> Self {
        let mut out = MultiPoly::zero();
        for (v, c) in vars.iter().zip(values) {
            out.add_term(Monomial(vec![(*v, 1)]), c.clone());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Total degree counting only the listed symbols.
    pub fn degree_in(&self, vars: &[Var]) -> u32 {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.exponent(v)).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    fn add_term(&mut self, monomial: Monomial, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(monomial);
        match entry {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &Rational) -> MultiPoly {
        if factor.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact partial derivative.
    pub fn diff(&self, var: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(var);
            if e == 0 {
                continue;
            }
            let lowered = rest.mul(&Monomial(vec![(var, e - 1)]));
            out.add_term(Monomial::new(lowered.0), c * int(e as i64));
        }
        out
    }

    /// Simultaneous substitution; unbound symbols pass through.
    pub fn subst(&self, bindings: &BTreeMap<Var, MultiPoly>) -> MultiPoly {
        let mut cache: BTreeMap<(Var, u32), MultiPoly> = BTreeMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut product = MultiPoly::constant(c.clone());
            let mut untouched = Vec::new();
            for &(v, e) in &m.0 {
                match bindings.get(&v) {
                    Some(image) => {
                        let power = cache.entry((v, e)).or_insert_with(|| image.pow(e));
                        product = &product * &*power;
                    }
                    None => untouched.push((v, e)),
                }
            }
            if !untouched.is_empty() {
                product = &product * &MultiPoly::term(Rational::one(), Monomial(untouched));
            }
            out = out + product;
        }
        out
    }

    /// Substitutes rational values for some symbols.
    pub fn subst_values(&self, values: &[(Var, Rational)]) -> MultiPoly {
        let bindings = values
            .iter()
            .map(|(v, c)| (*v, MultiPoly::constant(c.clone())))
            .collect();
        self.subst(&bindings)
    }

    /// Evaluates over any [`Ring`], given a value for every symbol that occurs.
    pub fn evaluate<R: Ring>(&self, value_of: impl Fn(Var) -> R) -> R {
        let mut total = R::zero();
        for (m, c) in &self.terms {
            let mut product = R::from_rational(c);
            for &(v, e) in &m.0 {
                let base = value_of(v);
                for _ in 0..e {
                    product = product * base.clone();
                }
            }
            total = total + product;
        }
        total
    }

    /// Evaluates at rational values; `None` if a symbol is left unbound.
    pub fn eval_rational(&self, values: &[(Var, Rational)]) -> Option<Rational> {
        self.subst_values(values).as_constant()
    }

    /// Groups terms by their exponents in `vars`; the values are polynomials
    /// in the remaining symbols.
    pub fn coefficients_in(&self, vars: &[Var]) -> BTreeMap<Vec<u32>, MultiPoly> {
        let mut out: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = vars.iter().map(|&v| m.exponent(v)).collect();
            let rest: Vec<(Var, u32)> =
                m.0.iter().copied().filter(|(v, _)| !vars.contains(v)).collect();
            out.entry(key)
                .or_default()
                .add_term(Monomial(rest), c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// The coefficient of one exponent pattern in `vars`.
    pub fn coefficient(&self, vars: &[Var], exponents: &[u32]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if vars.iter().zip(exponents).all(|(&v, &e)| m.exponent(v) == e) {
                let rest: Vec<(Var, u32)> =
                    m.0.iter().copied().filter(|(v, _)| !vars.contains(v)).collect();
                out.add_term(Monomial(rest), c.clone());
            }
        }
        out
    }

    /// Rewrites every `var^k` as `var^(k mod 2) · square^(k div 2)`.
    ///
    /// Used to reduce trigonometric and hyperbolic expressions modulo
    /// `s² = 1 − c²` or `s² = c² − 1`.
    pub fn reduce_square(&self, var: Var, square: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(var);
            if e < 2 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let base = MultiPoly::term(c.clone(), rest.mul(&Monomial::new(vec![(var, e % 2)])));
            out = out + &base * &square.pow(e / 2);
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&Rational) -> Rational) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl From<Rational> for MultiPoly {
    fn from(value: Rational) -> Self {
        MultiPoly::constant(value)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest degree first reads more naturally.
        let mut ordered: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(a.0.cmp(b.0)));
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if m.0.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.map_coefficients(|c| -c)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! forward_owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly { (&self).$method(&rhs) }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly { (&self).$method(rhs) }
        }
        impl $trait<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly { self.$method(&rhs) }
        }
    )*};
}

forward_owned_ops!(Add add, Sub sub, Mul mul);

/// Commutative ring with the constants the closed forms need.
pub trait Ring:
    Clone
    + Zero
    + One
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(value: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Ring for Rational {
    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }
}

impl Ring for f64 {
    fn from_rational(value: &Rational) -> Self {
        rational_to_f64(value)
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::one()
    }
}

impl Ring for MultiPoly {
    fn from_rational(value: &Rational) -> Self {
        MultiPoly::constant(value.clone())
    }
}

/// A [`Ring`] with division and a sign test. Rationals decide signs exactly;
/// floats treat anything within `tol` of zero as zero.
pub trait Field: Ring + Div<Output = Self> {
    fn signum_tol(&self, tol: f64) -> i8;
    fn to_f64(&self) -> f64;
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Field for Rational {
    fn signum_tol(&self, _tol: f64) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl Field for f64 {
    fn signum_tol(&self, tol: f64) -> i8 {
        if self.abs() <= tol {
            0
        } else if *self > 0.0 {
            1
        } else {
            -1
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Sign behaviour of a polynomial over the whole plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignClass {
    Zero,
    NonzeroConst,
    /// Nonconstant, everywhere ≥ 0, not identically zero.
    Pos,
    Neg,
    Indef,
}

impl SignClass {
    pub fn tag(self) -> &'static str {
        match self {
            SignClass::Zero => "ZERO",
            SignClass::NonzeroConst => "NONZERO_CONST",
            SignClass::Pos => "POS",
            SignClass::Neg => "NEG",
            SignClass::Indef => "INDEF",
        }
    }

    /// The class of `-p` given the class of `p`.
    pub fn negated(self) -> SignClass {
        match self {
            SignClass::Pos => SignClass::Neg,
            SignClass::Neg => SignClass::Pos,
            other => other,
        }
    }
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `uu·u² + uv·uv + vv·v² + u·u + v·v + constant`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadratic<T> {
    pub uu: T,
    pub uv: T,
    pub vv: T,
    pub u: T,
    pub v: T,
    pub constant: T,
}

impl Quadratic<Rational> {
    /// Reads the six coefficients of a polynomial in exactly the two point symbols.
    pub fn from_poly(p: &MultiPoly, point: (Var, Var)) -> Result<Self> {
        let vars = [point.0, point.1];
        let foreign: Vec<String> = p
            .variables()
            .into_iter()
            .filter(|v| !vars.contains(v))
            .map(Var::name)
            .collect();
        if !foreign.is_empty() {
            return Err(Error::ForeignVariables(foreign.join(", ")));
        }
        let degree = p.total_degree();
        if degree > 2 {
            return Err(Error::NotQuadratic { degree });
        }
        let c = |i: u32, j: u32| {
            p.coefficient(&vars, &[i, j])
                .as_constant()
                .expect("only point symbols remain")
        };
        Ok(Quadratic {
            uu: c(2, 0),
            uv: c(1, 1),
            vv: c(0, 2),
            u: c(1, 0),
            v: c(0, 1),
            constant: c(0, 0),
        })
    }
}

impl<T: Field> Quadratic<T> {
    pub fn eval(&self, u: &T, v: &T) -> T {
        self.uu.clone() * u.clone() * u.clone()
            + self.uv.clone() * u.clone() * v.clone()
            + self.vv.clone() * v.clone() * v.clone()
            + self.u.clone() * u.clone()
            + self.v.clone() * v.clone()
            + self.constant.clone()
    }

    fn largest_coefficient(&self) -> f64 {
        [&self.uu, &self.uv, &self.vv, &self.u, &self.v, &self.constant]
            .iter()
            .map(|c| c.magnitude())
            .fold(0.0, f64::max)
    }

    /// Classifies the sign over the whole plane.
    ///
    /// `rel_tol` is ignored for rationals; for floats a value is zero when it
    /// is within `rel_tol` times the largest coefficient (squared for
    /// determinant-like quantities).
    pub fn sign_class(&self, rel_tol: f64) -> SignClass {
        let scale = self.largest_coefficient().max(f64::MIN_POSITIVE);
        let tol1 = rel_tol * scale;
        let tol2 = rel_tol * scale * scale;
        let two = T::from_i64(2);
        let four = T::from_i64(4);

        let quadratic_zero = self.uu.signum_tol(tol1) == 0
            && self.uv.signum_tol(tol1) == 0
            && self.vv.signum_tol(tol1) == 0;
        let linear_zero = self.u.signum_tol(tol1) == 0 && self.v.signum_tol(tol1) == 0;
        if quadratic_zero {
            return match (linear_zero, self.constant.signum_tol(tol1)) {
                (false, _) => SignClass::Indef,
                (true, 0) => SignClass::Zero,
                (true, _) => SignClass::NonzeroConst,
            };
        }

        // det of [[uu, uv/2], [uv/2, vv]], scaled by 4.
        let det4 = four.clone() * self.uu.clone() * self.vv.clone() - self.uv.square();
        let det_sign = det4.signum_tol(tol2);
        if det_sign < 0 {
            return SignClass::Indef;
        }
        let orientation = (self.uu.clone() + self.vv.clone()).signum_tol(tol1);

        // Extreme value of the polynomial, when it is bounded on that side.
        let extreme = if det_sign > 0 {
            // F − ¼ ℓᵀ Q⁻¹ ℓ with Q⁻¹ = (4/det4)·[[vv, −uv/2], [−uv/2, uu]].
            let form = self.vv.clone() * self.u.square() - self.uv.clone() * self.u.clone() * self.v.clone()
                + self.uu.clone() * self.v.square();
            self.constant.clone() - form / det4
        } else if self.uu.signum_tol(tol1) != 0 {
            // Rank one: uu·(u + uv/(2uu)·v)² + ℓ·(u, v) + F; ℓ must lie along (2uu, uv).
            let kernel = self.v.clone() * two.clone() * self.uu.clone() - self.u.clone() * self.uv.clone();
            if kernel.signum_tol(tol2) != 0 {
                return SignClass::Indef;
            }
            self.constant.clone() - self.u.square() / (four * self.uu.clone())
        } else {
            // uu = 0 forces uv = 0, leaving vv·v² + ℓ·(u, v) + F.
            if self.u.signum_tol(tol1) != 0 {
                return SignClass::Indef;
            }
            self.constant.clone() - self.v.square() / (four * self.vv.clone())
        };

        match (orientation, extreme.signum_tol(tol1)) {
            (1, s) if s >= 0 => SignClass::Pos,
            (-1, s) if s <= 0 => SignClass::Neg,
            _ => SignClass::Indef,
        }
    }
}

/// Exact sign class of a polynomial of degree ≤ 2 in the two point symbols.
pub fn quadratic_sign_class(p: &MultiPoly, point: (Var, Var)) -> Result<SignClass> {
    Ok(Quadratic::from_poly(p, point)?.sign_class(0.0))
}

/// Exact rank by fraction-free (Bareiss) elimination.
pub fn exact_rank(matrix: &[Vec<Rational>]) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    // Clear denominators row by row so elimination stays in the integers.
    let mut rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
            row.iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect()
        })
        .collect();
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut previous = BigInt::one();
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            for c in col + 1..ncols {
                let value = (&rows[rank][col] * &rows[r][c] - &rows[r][col] * &rows[rank][c]) / &previous;
                rows[r][c] = value;
            }
            rows[r][col] = BigInt::zero();
        }
        previous = rows[rank][col].clone();
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t() -> MultiPoly {
        MultiPoly::var(Var::T)
    }
    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(Var::Y)
    }
    fn a(i: u8) -> MultiPoly {
        MultiPoly::var(Var::alpha(i))
    }

    fn tx_sign(p: &MultiPoly) -> SignClass {
        quadratic_sign_class(p, (Var::T, Var::X)).unwrap()
    }

    #[test]
    fn parses_rational_literals() {
        assert_eq!(parse_rational("-3/256").unwrap(), rat(-3, 256));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("4/8").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("1.5").unwrap(), rat(3, 2));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational(".").is_err());
        assert!(parse_rational("1e3").is_err());
        assert_eq!(parse_rational_list("0,0,-1,0,0,1/4").unwrap().len(), 6);
        assert_eq!(rat(0, 5).to_string(), "0");
        assert_eq!(rat(6, -4).to_string(), "-3/2");
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 64)), Some(rat(3, 8)));
        assert_eq!(rational_sqrt(&rat(3, 64)), None);
        assert_eq!(rational_sqrt(&rat(-1, 4)), None);
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&(&t() + &x()) + &(&t() - &x()), t().scale(&int(2)));
        assert_eq!(
            (&t() + &x()) * (&t() - &x()),
            &t().pow(2) - &x().pow(2)
        );
        let p = a(6) * t() * x() + a(3);
        assert!((MultiPoly::zero() * p).is_zero());
    }

    #[test]
    fn differentiation_examples() {
        assert_eq!((a(6) * x().pow(2)).diff(Var::X), a(6) * x() * MultiPoly::int(2));
        let ktx = a(3) + a(4) * t() + a(5) * x() + a(6) * t() * x();
        assert_eq!(ktx.diff(Var::T), a(4) + a(6) * x());
        assert!(MultiPoly::int(5).diff(Var::Y).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let p = t().pow(2) - x().pow(2);
        let shifted = p.subst(&BTreeMap::from([(Var::T, t() + MultiPoly::one())]));
        assert_eq!(shifted, t().pow(2) + t() * MultiPoly::int(2) + MultiPoly::one() - x().pow(2));
        let identity = BTreeMap::from([(Var::T, t()), (Var::X, x())]);
        assert_eq!(p.subst(&identity), p);
    }

    #[test]
    fn boosted_covariant_expands_consistently() {
        // (α6t+α5)² − (α6x+α4)² under a symbolic boost, checked at one rational instance.
        let c1 = (a(6) * t() + a(5)).pow(2) - (a(6) * x() + a(4)).pow(2);
        let (c, s) = (MultiPoly::var(Var::C), MultiPoly::var(Var::S));
        let map = BTreeMap::from([
            (Var::T, &c * &t() + &s * &x() + MultiPoly::var(Var::A)),
            (Var::X, &s * &t() + &c * &x() + MultiPoly::var(Var::B)),
        ]);
        let expanded = c1.subst(&map);
        assert_eq!(expanded.degree_in(&[Var::T, Var::X]), 2);
        let values = [
            (Var::alpha(4), rat(1, 3)),
            (Var::alpha(5), rat(-2, 7)),
            (Var::alpha(6), int(2)),
            (Var::C, rat(5, 4)),
            (Var::S, rat(3, 4)),
            (Var::A, rat(1, 2)),
            (Var::B, int(-3)),
            (Var::T, rat(2, 5)),
            (Var::X, int(1)),
        ];
        let tt = rat(5, 4) * rat(2, 5) + rat(3, 4) + rat(1, 2);
        let xx = rat(3, 4) * rat(2, 5) + rat(5, 4) - int(3);
        let manual = (int(2) * &tt + rat(-2, 7)).pow(2) - (int(2) * &xx + rat(1, 3)).pow(2);
        assert_eq!(expanded.eval_rational(&values), Some(manual));
    }

    #[test]
    fn reduce_square_applies_the_circle_relation() {
        let (c, s) = (MultiPoly::var(Var::C), MultiPoly::var(Var::S));
        let rule = MultiPoly::one() - c.pow(2);
        assert_eq!((c.pow(2) + s.pow(2)).reduce_square(Var::S, &rule), MultiPoly::one());
        assert_eq!(s.pow(3).reduce_square(Var::S, &rule), &s * &rule);
    }

    #[test]
    fn coefficient_extraction() {
        let p = a(1) + a(4) * x() * MultiPoly::int(2) + a(6) * x().pow(2);
        let coeffs = p.coefficients_in(&[Var::T, Var::X]);
        assert_eq!(coeffs[&vec![0, 0]], a(1));
        assert_eq!(coeffs[&vec![0, 1]], a(4) * MultiPoly::int(2));
        assert_eq!(p.coefficient(&[Var::T, Var::X], &[0, 2]), a(6));
        assert!(p.coefficient(&[Var::T, Var::X], &[1, 0]).is_zero());
    }

    #[test]
    fn display_is_readable() {
        let p = a(6) * x().pow(2) - a(4) * x() * MultiPoly::int(2) + MultiPoly::constant(rat(1, 2));
        assert_eq!(p.to_string(), "alpha6*x^2 - 2*alpha4*x + 1/2");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn sign_class_examples() {
        assert_eq!(
            quadratic_sign_class(&(x().pow(2) + y().pow(2)), (Var::X, Var::Y)).unwrap(),
            SignClass::Pos
        );
        assert_eq!(tx_sign(&(t().pow(2) - x().pow(2))), SignClass::Indef);
        assert_eq!(tx_sign(&(t() - x()).pow(2).scale(&rat(1, 128))), SignClass::Pos);
        assert_eq!(tx_sign(&MultiPoly::one()), SignClass::NonzeroConst);
        assert_eq!(tx_sign(&MultiPoly::zero()), SignClass::Zero);
        assert_eq!(tx_sign(&t()), SignClass::Indef);
        assert_eq!(tx_sign(&(t().pow(2) + x())), SignClass::Indef);
        assert_eq!(tx_sign(&(t().pow(2) + t() + MultiPoly::one())), SignClass::Pos);
        assert_eq!(tx_sign(&(t().pow(2) + t())), SignClass::Indef);
        assert_eq!(tx_sign(&-(x().pow(2) + MultiPoly::one())), SignClass::Neg);
        assert_eq!(
            tx_sign(&(t().pow(2) + x().pow(2) + MultiPoly::int(-1))),
            SignClass::Indef
        );
        assert_eq!(
            tx_sign(&(t().pow(2) - t() * x() * MultiPoly::int(4) + x().pow(2)).scale(&rat(-1, 256))),
            SignClass::Indef
        );
    }

    #[test]
    fn sign_class_rejects_bad_input() {
        assert_eq!(
            quadratic_sign_class(&t().pow(3), (Var::T, Var::X)),
            Err(Error::NotQuadratic { degree: 3 })
        );
        assert!(matches!(
            quadratic_sign_class(&a(1), (Var::T, Var::X)),
            Err(Error::ForeignVariables(_))
        ));
    }

    /// Brute-force sign sampling on a 21×21 rational grid plus the exact zero set along it.
    fn sampled_sign(p: &MultiPoly) -> (bool, bool, bool) {
        let (mut pos, mut neg, mut zero) = (false, false, false);
        for i in -10..=10 {
            for j in -10..=10 {
                let v = p
                    .eval_rational(&[(Var::T, rat(i, 3)), (Var::X, rat(j, 3))])
                    .unwrap();
                pos |= v.is_positive();
                neg |= v.is_negative();
                zero |= v.is_zero();
            }
        }
        (pos, neg, zero)
    }

    #[test]
    fn ec7_covariant_is_semidefinite_by_sampling() {
        let p = (t() - x()).pow(2).scale(&rat(1, 128));
        assert_eq!(sampled_sign(&p), (true, false, true));
        assert_eq!(tx_sign(&p), SignClass::Pos);
    }

    #[test]
    fn float_classifier_agrees_on_simple_cases() {
        let q = Quadratic { uu: 1.0, uv: -2.0, vv: 1.0, u: 0.0, v: 0.0, constant: 1e-14 };
        assert_eq!(q.sign_class(1e-9), SignClass::Pos);
        let q = Quadratic { uu: 1.0, uv: 0.0, vv: -1.0, u: 0.0, v: 0.0, constant: 0.0 };
        assert_eq!(q.sign_class(1e-9), SignClass::Indef);
    }

    #[test]
    fn rank_examples() {
        let m = vec![
            integers(&[1, 2, 3]),
            integers(&[2, 4, 6]),
            vec![rat(1, 2), int(0), rat(-1, 3)],
        ];
        assert_eq!(exact_rank(&m), 2);
        assert_eq!(exact_rank(&[integers(&[0, 0])]), 0);
        assert_eq!(exact_rank(&[integers(&[0, 1]), integers(&[1, 0]), integers(&[1, 1])]), 2);
        assert_eq!(exact_rank(&[]), 0);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        let symbols = [Var::T, Var::X, Var::alpha(1)];
        prop::collection::vec((small_rational(), 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(
            move |terms| {
                terms.into_iter().fold(MultiPoly::zero(), |acc, (c, i, j, k)| {
                    let m = Monomial::new(vec![(symbols[0], i), (symbols[1], j), (symbols[2], k)]);
                    acc + MultiPoly::term(c, m)
                })
            },
        )
    }

    fn quadratic_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(small_rational(), 6).prop_map(|c| {
            let pts = [
                t().pow(2),
                t() * x(),
                x().pow(2),
                t(),
                x(),
                MultiPoly::one(),
            ];
            pts.iter()
                .zip(&c)
                .fold(MultiPoly::zero(), |acc, (m, k)| acc + m.scale(k))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn mixed_partials_commute(p in small_poly()) {
            prop_assert_eq!(p.diff(Var::X).diff(Var::T), p.diff(Var::T).diff(Var::X));
        }

        #[test]
        fn sign_class_is_scale_covariant(p in quadratic_poly(), n in 1i64..20, d in 1i64..7) {
            let base = tx_sign(&p);
            prop_assert_eq!(tx_sign(&p.scale(&rat(n, d))), base);
            prop_assert_eq!(tx_sign(&p.scale(&rat(-n, d))), base.negated());
        }

        #[test]
        fn sign_class_agrees_with_sampling(p in quadratic_poly()) {
            let (pos, neg, _) = sampled_sign(&p);
            match tx_sign(&p) {
                SignClass::Pos => prop_assert!(!neg),
                SignClass::Neg => prop_assert!(!pos),
                SignClass::Zero => prop_assert!(!pos && !neg),
                SignClass::NonzeroConst => prop_assert!(pos != neg),
                SignClass::Indef => {}
            }
        }

        #[test]
        fn affine_substitution_round_trips(
            p in small_poly(),
            m in prop::collection::vec(small_rational(), 6),
        ) {
            let det = &m[0] * &m[3] - &m[1] * &m[2];
            prop_assume!(!det.is_zero());
            // (t, x) ↦ M(t, x) + (m4, m5) and its inverse.
            let forward = BTreeMap::from([
                (Var::T, t().scale(&m[0]) + x().scale(&m[1]) + MultiPoly::constant(m[4].clone())),
                (Var::X, t().scale(&m[2]) + x().scale(&m[3]) + MultiPoly::constant(m[5].clone())),
            ]);
            let (i0, i1, i2, i3) = (&m[3] / &det, -&m[1] / &det, -&m[2] / &det, &m[0] / &det);
            let ts = t() - MultiPoly::constant(m[4].clone());
            let xs = x() - MultiPoly::constant(m[5].clone());
            let inverse = BTreeMap::from([
                (Var::T, ts.scale(&i0) + xs.scale(&i1)),
                (Var::X, ts.scale(&i2) + xs.scale(&i3)),
            ]);
            prop_assert_eq!(p.subst(&forward).subst(&inverse), p);
        }

        #[test]
        fn parse_display_round_trip(n in any::<i64>(), d in 1i64..1_000_000) {
            let value = rat(n, d);
            prop_assert_eq!(parse_rational(&value.to_string()).unwrap(), value);
        }
    }
}
