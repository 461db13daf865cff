//! Univariate polynomials and rational functions in `t` over `Q`, with expansions at `t = 0` and
//! at `t = 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Dense polynomial in `t`, coefficients from the constant term up, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `t^e`.
    pub fn monomial(e: usize) -> Self {
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        UniPoly { coeffs: c }
    }

    /// `1 - t^k`.
    pub fn one_minus_t_pow(k: usize) -> Self {
        &Self::one() - &Self::monomial(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dl = d.leading().expect("division by zero polynomial").clone();
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = &r[i + j] - &c * dc;
            }
            q[i] = c;
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        (0..e).fold(UniPoly::one(), |acc, _| &acc * self)
    }

    /// `p(1 - u)` as a polynomial in `u`.
    pub fn substitute_one_minus(&self) -> UniPoly {
        let one_minus_u = UniPoly::from_i64(&[1, -1]);
        self.coeffs.iter().rev().fold(UniPoly::zero(), |acc, c| {
            &(&acc * &one_minus_u) + &UniPoly::constant(c.clone())
        })
    }

    /// Multiplicity of `t = 1` as a root.
    pub fn order_at_one(&self) -> usize {
        assert!(!self.is_zero(), "zero polynomial has no finite order");
        let linear = UniPoly::from_i64(&[-1, 1]);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.div_rem(&linear);
            if !r.is_zero() {
                return k;
            }
            p = q;
            k += 1;
        }
    }

    fn fmt_in(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let num = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            match i {
                0 => write!(f, "{num}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{num}*")?;
                    }
                    if i == 1 {
                        write!(f, "{var}")?;
                    } else {
                        write!(f, "{var}^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in("t", f)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Reduced quotient of polynomials in `t`; the denominator is monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

/// Coefficients of an expansion in powers of `1 - t`: `coeffs[i]` multiplies
/// `(1 - t)^(i - pole_order)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentAtOne {
    pub pole_order: usize,
    pub coeffs: Vec<BigRational>,
}

impl LaurentAtOne {
    /// Coefficient of `(1 - t)^j`, for `j >= -pole_order`.
    pub fn coeff(&self, j: i64) -> BigRational {
        let idx = j + self.pole_order as i64;
        if idx < 0 {
            return BigRational::zero();
        }
        self.coeffs
            .get(idx as usize)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num,
                den: UniPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().unwrap().clone().recip();
        RationalFunction {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self::new(p, UniPoly::one())
    }

    pub fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    /// `1 / prod (1 - t^k)`.
    pub fn hilbert_product(degrees: &[usize]) -> Self {
        let den = degrees.iter().fold(UniPoly::one(), |acc, &k| {
            &acc * &UniPoly::one_minus_t_pow(k)
        });
        Self::new(UniPoly::one(), den)
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::Pole("reciprocal of zero".into()));
        }
        Ok(Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RationalFunction) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    /// First `len` power-series coefficients at `t = 0`.
    pub fn taylor_at_zero(&self, len: usize) -> Result<Vec<BigRational>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::Pole("pole at t = 0".into()));
        }
        Ok(power_series_quotient(&self.num, &self.den, len))
    }

    /// Expansion in powers of `(1 - t)` from `(1 - t)^(-k)` (k the pole order) up to
    /// `(1 - t)^order`.
    pub fn laurent_at_one(&self, order: i64) -> LaurentAtOne {
        let num_u = self.num.substitute_one_minus();
        let den_u = self.den.substitute_one_minus();
        if num_u.is_zero() {
            return LaurentAtOne {
                pole_order: 0,
                coeffs: vec![BigRational::zero(); (order.max(-1) + 1) as usize],
            };
        }
        let den_shift = den_u.coeffs.iter().take_while(|c| c.is_zero()).count();
        let num_shift = num_u.coeffs.iter().take_while(|c| c.is_zero()).count();
        let den_r = UniPoly::new(den_u.coeffs[den_shift..].to_vec());
        let num_r = UniPoly::new(num_u.coeffs[num_shift..].to_vec());
        // f = u^(num_shift - den_shift) * num_r / den_r with den_r(0) != 0
        let valuation = num_shift as i64 - den_shift as i64;
        let pole_order = (-valuation).max(0) as usize;
        let len = order + pole_order as i64 + 1;
        if len <= 0 {
            return LaurentAtOne {
                pole_order,
                coeffs: Vec::new(),
            };
        }
        let lead_zeros = (valuation + pole_order as i64) as usize;
        let series = power_series_quotient(&num_r, &den_r, len as usize);
        let mut coeffs = vec![BigRational::zero(); len as usize];
        for (i, c) in series.into_iter().enumerate() {
            if i + lead_zeros < coeffs.len() {
                coeffs[i + lead_zeros] = c;
            }
        }
        LaurentAtOne { pole_order, coeffs }
    }

    /// Writes the denominator as a product of factors `1 - t^k` when it is a product of
    /// cyclotomic polynomials: returns the numerator over that product and the list of `k`.
    pub fn as_hilbert_form(&self) -> Option<(UniPoly, Vec<usize>)> {
        let mut rest = self.den.clone();
        let mut ks = Vec::new();
        let deg = rest.degree().unwrap_or(0);
        // phi(d) >= sqrt(d / 2), so only d <= 2 deg^2 can divide
        let cyclo = cyclotomic_table();
        let bound = (2 * deg * deg).min(cyclo.len() - 1);
        while rest.degree().unwrap_or(0) > 0 {
            let k = (1..=bound)
                .rev()
                .find(|&d| rest.div_rem(&cyclo[d]).1.is_zero())?;
            let factor = UniPoly::one_minus_t_pow(k);
            let g = rest.gcd(&factor);
            rest = rest.div_rem(&g).0;
            ks.push(k);
        }
        ks.sort_unstable();
        let full = ks.iter().fold(UniPoly::one(), |acc, &k| {
            &acc * &UniPoly::one_minus_t_pow(k)
        });
        // num/den = num * (full/den) / full
        let (cofactor, r) = full.div_rem(&self.den);
        debug_assert!(r.is_zero());
        Some((&self.num * &cofactor, ks))
    }
}

const CYCLOTOMIC_BOUND: usize = 72;

/// `table[d]` is the `d`-th cyclotomic polynomial.
fn cyclotomic_table() -> &'static [UniPoly] {
    static TABLE: OnceLock<Vec<UniPoly>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = vec![UniPoly::one(); CYCLOTOMIC_BOUND + 1];
        for d in 1..=CYCLOTOMIC_BOUND {
            let mut p = &UniPoly::monomial(d) - &UniPoly::one();
            for (e, c) in table.iter().enumerate().take(d).skip(1) {
                if d % e == 0 {
                    p = p.div_rem(c).0;
                }
            }
            table[d] = p;
        }
        table
    })
}

/// Power series of `num / den` at 0 (requires `den(0) != 0`), first `len` terms.
fn power_series_quotient(num: &UniPoly, den: &UniPoly, len: usize) -> Vec<BigRational> {
    let d0 = den.coeff(0);
    let mut out: Vec<BigRational> = Vec::with_capacity(len);
    for i in 0..len {
        let mut acc = num.coeff(i);
        for j in 1..=i.min(den.degree().unwrap_or(0)) {
            acc -= den.coeff(j) * &out[i - j];
        }
        out.push(acc / &d0);
    }
    out
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = rhs.den.div_rem(&g).0;
        let b = self.den.div_rem(&g).0;
        RationalFunction::new(&(&self.num * &a) + &(&rhs.num * &b), &self.den * &a)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &RationalFunction::new(-&rhs.num, rhs.den.clone())
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((num, ks)) = self.as_hilbert_form() {
            if ks.is_empty() {
                return write!(f, "{num}");
            }
            let wrap = num.coeffs.iter().filter(|c| !c.is_zero()).count() > 1;
            if wrap {
                write!(f, "({num})/")?;
            } else {
                write!(f, "{num}/")?;
            }
            let factors: Vec<String> = ks
                .iter()
                .map(|&k| {
                    if k == 1 {
                        "(1-t)".to_string()
                    } else {
                        format!("(1-t^{k})")
                    }
                })
                .collect();
            if factors.len() == 1 {
                write!(f, "{}", factors[0])
            } else {
                write!(f, "({})", factors.concat())
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Laurent expansion of `f` at `t = 1` in powers of `(1 - t)`, up to `(1 - t)^order`.
pub fn ratfun_laurent_at_one(f: &RationalFunction, order: i64) -> LaurentAtOne {
    f.laurent_at_one(order)
}
