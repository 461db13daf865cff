//! Sparse multivariate polynomials in `x1, ..., xn` over a [`FieldSpec`], the contragredient
//! group action on them, and division by linear forms.
//!
//! Terms are kept in graded lexicographic order (`x1 > x2 > ... > xn`). The text form lists terms
//! from the largest monomial down, e.g. `x1^2*x2 + x1*x2^2` or `3/2*x1 - x2 + 1`; a coefficient of
//! one is omitted except on the constant term, and `^1` is never written.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::group::MatGroup;
use crate::matrix::Matrix;

/// Exponent vector, ordered by total degree and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u16>>>()
            .map(Monomial)
    }

    /// All monomials of total degree `d` in `nvars` variables, largest first.
    pub fn all_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
        fn rec(nvars: usize, left: usize, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == nvars {
                prefix.push(left as u16);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e as u16);
                rec(nvars, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Poly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: Scalar) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i), field.one())
    }

    pub fn term(field: FieldSpec, m: Monomial, c: Scalar) -> Self {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            field,
            nvars,
            terms,
        }
    }

    /// `sum coeffs[i] * x_{i+1}`.
    pub fn linear_form(field: FieldSpec, coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(field, n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(n, i), c.clone());
            }
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// The constant value, if the polynomial has degree at most zero.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.degree() {
            None => Some(self.field.zero()),
            Some(0) => Some(self.coeff(&Monomial::one(self.nvars))),
            Some(_) => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    e.insert(v);
                }
            }
        }
    }

    /// `self += c * m * other`.
    fn add_scaled_shifted(&mut self, other: &Poly, m: &Monomial, c: &Scalar) {
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), oc * c);
        }
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        self.terms.iter().fold(self.field.zero(), |acc, (m, c)| {
            let v =
                m.0.iter()
                    .zip(point)
                    .fold(c.clone(), |v, (&e, x)| &v * &x.pow(e as u64));
            &acc + &v
        })
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading_term().expect("division by zero polynomial");
        let (dm, dc_inv) = (dm.clone(), dc.inv().expect("nonzero"));
        let mut r = self.clone();
        let mut q = Poly::zero(self.field, self.nvars);
        while let Some((m, c)) = r.leading_term() {
            let t = m.checked_div(&dm)?;
            let tc = c * &dc_inv;
            r.add_scaled_shifted(d, &t, &-&tc);
            q.add_term(t, tc);
        }
        Some(q)
    }

    /// Substitutes `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let n_out = images.first().map_or(self.nvars, |p| p.nvars);
        let mut powers: HashMap<(usize, u16), Poly> = HashMap::new();
        let mut out = Poly::zero(self.field, n_out);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(self.field, n_out, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e as usize));
                t = &t * pw;
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        out
    }

    /// `f(g^{-1} v)` given the matrix of `g^{-1}` on `V`: each `x_i` goes to
    /// `sum_j (g^{-1})_{ij} x_j`.
    pub fn act_by_inverse(&self, inverse: &Matrix) -> Poly {
        let images: Vec<Poly> = (0..self.nvars)
            .map(|i| Poly::linear_form(self.field, inverse.row(i)))
            .collect();
        self.substitute(&images)
    }

    /// Substitutes `x_v = -(sum_{j != v} c_j x_j) / c_v` where `v` is the first variable of `ell`.
    /// Returns `(quotient, remainder)` with `self = quotient * ell + remainder` and the remainder
    /// free of `x_v`.
    pub fn divide_by_linear(&self, ell: &Poly) -> (Poly, Poly) {
        let v = linear_pivot(ell);
        let cv_inv = ell
            .coeff(&Monomial::var(self.nvars, v))
            .inv()
            .expect("pivot coefficient nonzero");
        let mut r = self.clone();
        let mut q = Poly::zero(self.field, self.nvars);
        loop {
            let next = r
                .terms
                .iter()
                .filter(|(m, _)| m.0[v] > 0)
                .max_by(|(a, _), (b, _)| a.0[v].cmp(&b.0[v]).then_with(|| a.cmp(b)))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = next else { break };
            let mut t = m;
            t.0[v] -= 1;
            let tc = &c * &cv_inv;
            r.add_scaled_shifted(ell, &t, &-&tc);
            q.add_term(t, tc);
        }
        (q, r)
    }

    /// Largest `k` with `ell^k | self`.
    pub fn linear_multiplicity(&self, ell: &Poly) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut f = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = f.divide_by_linear(ell);
            if !r.is_zero() {
                return Ok(k);
            }
            f = q;
            k += 1;
        }
    }

    /// Parses expressions such as `x1*x4*(x1 + x4) + 3/2*x2^2 - 1`.
    pub fn parse(field: FieldSpec, nvars: usize, text: &str) -> Result<Poly> {
        let mut p = Parser {
            field,
            nvars,
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let out = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.error("trailing input"));
        }
        Ok(out)
    }
}

fn linear_pivot(ell: &Poly) -> usize {
    assert!(
        !ell.is_zero() && ell.is_homogeneous() && ell.degree() == Some(1),
        "not a nonzero linear form: {ell}"
    );
    (0..ell.nvars)
        .find(|&i| !ell.coeff(&Monomial::var(ell.nvars, i)).is_zero())
        .expect("nonzero linear form")
}

/// `g . f` for the element with index `element`: `(g f)(v) = f(g^{-1} v)`.
pub fn act(group: &MatGroup, element: usize, f: &Poly) -> Result<Poly> {
    if f.nvars != group.dim() || f.field != group.field() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial in {} variables over {} vs group of degree {} over {}",
            f.nvars,
            f.field,
            group.dim(),
            group.field()
        )));
    }
    Ok(f.act_by_inverse(group.element(group.inverse_index(element))))
}

/// See [`Poly::divide_by_linear`].
pub fn divide_by_linear(f: &Poly, ell: &Poly) -> (Poly, Poly) {
    f.divide_by_linear(ell)
}

/// See [`Poly::linear_multiplicity`].
pub fn linear_multiplicity(f: &Poly, ell: &Poly) -> Result<usize> {
    f.linear_multiplicity(ell)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            out.add_scaled_shifted(rhs, m, c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-&self.field.one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, e)
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser {
    field: FieldSpec,
    nvars: usize,
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, what: &str) -> Error {
        let text: String = self.chars.iter().collect();
        Error::Parse(format!("{what} at offset {} in {text:?}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let rhs = self.power()?;
            acc = if c == '*' {
                &acc * &rhs
            } else {
                let d = rhs
                    .as_constant()
                    .and_then(|c| c.inv())
                    .ok_or_else(|| self.error("division by a non-constant or zero"))?;
                acc.scale(&d)
            };
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: usize = e.parse().map_err(|_| self.error("bad exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('x') => {
                self.pos += 1;
                let i: usize = self
                    .integer()?
                    .parse()
                    .map_err(|_| self.error("bad index"))?;
                if i == 0 || i > self.nvars {
                    return Err(self.error("variable index out of range"));
                }
                Ok(Poly::var(self.field, self.nvars, i - 1))
            }
            Some('-') => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.integer()?;
                let c = self.field.parse_scalar(&digits)?;
                Ok(Poly::constant(self.field, self.nvars, c))
            }
            _ => Err(self.error("unexpected input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> FieldSpec {
        FieldSpec::new(2).unwrap()
    }

    fn p(field: FieldSpec, n: usize, s: &str) -> Poly {
        Poly::parse(field, n, s).unwrap()
    }

    #[test]
    fn rendering_is_graded_lex() {
        let q = FieldSpec::RATIONALS;
        assert_eq!(p(f2(), 2, "x1*x2*(x1+x2)").to_string(), "x1^2*x2 + x1*x2^2");
        assert_eq!(p(q, 2, "1 - x2 + 3/2*x1").to_string(), "3/2*x1 - x2 + 1");
        assert_eq!(p(q, 2, "-x1^2").to_string(), "-x1^2");
        assert_eq!(Poly::zero(q, 3).to_string(), "0");
        assert_eq!(p(FieldSpec::new(3).unwrap(), 1, "-x1").to_string(), "2*x1");
    }

    #[test]
    fn monomials_of_degree_two_in_three_vars() {
        let ms = Monomial::all_of_degree(3, 2);
        let shown: Vec<String> = ms
            .iter()
            .map(|m| Poly::term(f2(), m.clone(), f2().one()).to_string())
            .collect();
        assert_eq!(shown, ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn divide_out_linear_factor() {
        let f = p(f2(), 2, "x2*(x1+x2)");
        let (q, r) = f.divide_by_linear(&p(f2(), 2, "x2"));
        assert_eq!(q, p(f2(), 2, "x1+x2"));
        assert!(r.is_zero());
        let c = p(f2(), 2, "1");
        let (q, r) = c.divide_by_linear(&p(f2(), 2, "x1"));
        assert!(q.is_zero());
        assert_eq!(r, c);
    }

    #[test]
    fn multiplicities() {
        let fm = p(f2(), 2, "x1*x2*(x1+x2)");
        assert_eq!(fm.linear_multiplicity(&p(f2(), 2, "x1")).unwrap(), 1);
        assert_eq!(
            p(f2(), 2, "x1^2*x2")
                .linear_multiplicity(&p(f2(), 2, "x1"))
                .unwrap(),
            2
        );
        assert_eq!(
            p(f2(), 2, "x2^3")
                .linear_multiplicity(&p(f2(), 2, "x1"))
                .unwrap(),
            0
        );
        let cube = p(f2(), 2, "x1^3 + x1^2*x2 + x1*x2^2 + x2^3");
        assert_eq!(cube, p(f2(), 2, "(x1+x2)^3"));
        assert_eq!(cube.linear_multiplicity(&p(f2(), 2, "x1+x2")).unwrap(), 3);
        assert_eq!(
            Poly::zero(f2(), 2).linear_multiplicity(&p(f2(), 2, "x1")),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn division_by_non_monic_form() {
        let q = FieldSpec::RATIONALS;
        let ell = p(q, 2, "2*x1 - 3*x2");
        let f = &ell * &p(q, 2, "x1 + 5");
        let (quot, r) = f.divide_by_linear(&ell);
        assert!(r.is_zero());
        assert_eq!(quot, p(q, 2, "x1 + 5"));
    }

    #[test]
    fn swap_substitution() {
        let q = FieldSpec::RATIONALS;
        let swap = Matrix::from_i64(q, &[&[0, 1], &[1, 0]]);
        let f = p(q, 2, "x1*x2^2");
        assert_eq!(f.act_by_inverse(&swap), p(q, 2, "x1^2*x2"));
    }

    #[test]
    fn exact_division() {
        let q = FieldSpec::RATIONALS;
        let a = p(q, 3, "x1 - x2 + 2*x3");
        let b = p(q, 3, "x1*x3 + 7*x2^2 - 1");
        assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
    }

    #[test]
    fn parse_errors() {
        let q = FieldSpec::RATIONALS;
        assert!(Poly::parse(q, 2, "x3").is_err());
        assert!(Poly::parse(q, 2, "x1 +").is_err());
        assert!(Poly::parse(q, 2, "x1/x2").is_err());
        assert!(Poly::parse(q, 2, "(x1").is_err());
    }

    fn small_poly(field: FieldSpec, n: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((prop::collection::vec(0u16..3, n), -3i64..4), 0..5).prop_map(
            move |ts| {
                let mut out = Poly::zero(field, n);
                for (e, c) in ts {
                    out = &out + &Poly::term(field, Monomial::new(e), field.from_i64(c));
                }
                out
            },
        )
    }

    proptest! {
        #[test]
        fn linear_division_round_trip(
            f in small_poly(FieldSpec::RATIONALS, 3),
            l in prop::collection::vec(-2i64..3, 3),
        ) {
            let q = FieldSpec::RATIONALS;
            prop_assume!(l.iter().any(|&c| c != 0));
            let ell = Poly::linear_form(q, &l.iter().map(|&c| q.from_i64(c)).collect::<Vec<_>>());
            let (quot, r) = f.divide_by_linear(&ell);
            prop_assert_eq!(&(&quot * &ell) + &r, f);
            let v = linear_pivot(&ell);
            prop_assert!(r.terms().all(|(m, _)| m.exponents()[v] == 0));
        }

        #[test]
        fn ring_laws_mod_3(a in small_poly(FieldSpec::new(3).unwrap(), 2), b in small_poly(FieldSpec::new(3).unwrap(), 2)) {
            prop_assert_eq!(&a * &b, &b * &a);
            let s = &a + &b;
            prop_assert_eq!(&s - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
            }
        }
    }
}
