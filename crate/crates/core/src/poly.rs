//! Dense univariate and sparse multivariate polynomials over the exact fields.
//!
//! Conventions, fixed once and tested:
//! * univariate coefficients are stored in ascending degree, trailing zeros
//!   stripped, the zero polynomial is the empty list;
//! * the multivariate term order is graded lexicographic with earlier
//!   variables more significant;
//! * the resultant is the determinant of the Sylvester matrix with the rows
//!   of the first argument on top, so `res(z - a, z - b) = a - b`;
//! * `disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElem};
use crate::linalg::Matrix;

/// Dense univariate polynomial with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: FieldDescriptor,
    coeffs: Vec<FieldElem>,
}

impl UniPoly {
    pub fn zero(field: &FieldDescriptor) -> Self {
        UniPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElem) -> Self {
        let field = c.descriptor();
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        UniPoly { field, coeffs }
    }

    /// Build from ascending coefficients; checks that every coefficient lives
    /// in `field` and strips trailing zeros.
    pub fn from_coeffs(field: &FieldDescriptor, coeffs: Vec<FieldElem>) -> Result<Self> {
        for c in &coeffs {
            if &c.descriptor() != field {
                return Err(Error::DescriptorMismatch {
                    expected: format!("{field}"),
                    found: format!("{}", c.descriptor()),
                });
            }
        }
        let mut p = UniPoly {
            field: field.clone(),
            coeffs,
        };
        p.normalize();
        Ok(p)
    }

    /// Monic polynomial from its roots: prod (z - r_i).
    pub fn from_roots(field: &FieldDescriptor, roots: &[FieldElem]) -> Result<Self> {
        let mut p = UniPoly::constant(field.one());
        for r in roots {
            let lin = UniPoly::from_coeffs(field, vec![r.neg(), field.one()])?;
            p = p.mul(&lin)?;
        }
        Ok(p)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one_poly(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_one())
    }

    /// Coefficient of z^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    fn check_same(&self, other: &UniPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DescriptorMismatch {
                expected: format!("{}", self.field),
                found: format!("{}", other.field),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &UniPoly) -> Result<UniPoly> {
        self.check_same(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&other.coeff(i))?);
        }
        let mut p = UniPoly {
            field: self.field.clone(),
            coeffs,
        };
        p.normalize();
        Ok(p)
    }

    pub fn sub(&self, other: &UniPoly) -> Result<UniPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> Result<UniPoly> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(UniPoly::zero(&self.field));
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        let mut p = UniPoly {
            field: self.field.clone(),
            coeffs,
        };
        p.normalize();
        Ok(p)
    }

    pub fn scale(&self, c: &FieldElem) -> Result<UniPoly> {
        if c.is_zero() {
            return Ok(UniPoly::zero(&self.field));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.mul(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPoly {
            field: self.field.clone(),
            coeffs,
        })
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divmod(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        self.check_same(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = divisor.degree().expect("nonzero divisor");
        let lc_inv = divisor.leading_coefficient().unwrap().inverse()?;
        let mut rem = self.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(d)];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let t = rem.coeffs[rd].mul(&lc_inv)?;
            let shift = rd - d;
            quot[shift] = t.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let sub = t.mul(c)?;
                rem.coeffs[shift + j] = rem.coeffs[shift + j].sub(&sub)?;
            }
            rem.normalize();
        }
        let mut q = UniPoly {
            field: self.field.clone(),
            coeffs: quot,
        };
        q.normalize();
        Ok((q, rem))
    }

    /// Exact quotient; fails if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly> {
        self.check_same(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        let lc_inv = a.leading_coefficient().unwrap().inverse()?;
        a.scale(&lc_inv)
    }

    pub fn derivative(&self) -> Result<UniPoly> {
        if self.coeffs.len() <= 1 {
            return Ok(UniPoly::zero(&self.field));
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            coeffs.push(c.mul(&self.field.integer(i as i64))?);
        }
        let mut p = UniPoly {
            field: self.field.clone(),
            coeffs,
        };
        p.normalize();
        Ok(p)
    }

    pub fn eval(&self, point: &FieldElem) -> Result<FieldElem> {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(point)?.add(c)?;
        }
        Ok(acc)
    }

    /// Determinant of the Sylvester matrix with the rows of `self` first.
    ///
    /// With this convention `res(f, g) = lc(f)^deg(g) prod g(root of f)`, so
    /// `res(z - a, z - b) = a - b`. If exactly one argument is zero the
    /// result is zero; both zero is an error.
    pub fn resultant(&self, other: &UniPoly) -> Result<FieldElem> {
        self.check_same(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::InvalidInput(
                "resultant of two zero polynomials".into(),
            ));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(self.field.zero());
        }
        let m = self.degree().unwrap();
        let n = other.degree().unwrap();
        if m == 0 {
            return self.coeffs[0].pow(n as u64);
        }
        if n == 0 {
            return other.coeffs[0].pow(m as u64);
        }
        let size = m + n;
        let mut mat = Matrix::zero(&self.field, size, size);
        for row in 0..n {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                mat.set(row, row + k, c.clone());
            }
        }
        for row in 0..m {
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                mat.set(n + row, row + k, c.clone());
            }
        }
        mat.determinant()
    }

    /// disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f); needs degree >= 1.
    pub fn discriminant(&self) -> Result<FieldElem> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => {
                return Err(Error::InvalidInput(
                    "discriminant needs degree at least 1".into(),
                ))
            }
        };
        let deriv = self.derivative()?;
        let res = if deriv.is_zero() {
            self.field.zero()
        } else {
            self.resultant(&deriv)?
        };
        let lc = self.leading_coefficient().unwrap();
        let signed = if (n * (n - 1) / 2) % 2 == 1 {
            res.neg()
        } else {
            res
        };
        signed.div(lc)
    }

    pub fn canonical_cmp(&self, other: &UniPoly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                let c = a.canonical_cmp(b);
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }

    pub fn display_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                out.push_str(" + ");
            }
            first = false;
            match i {
                0 => {
                    let _ = write!(out, "{c}");
                }
                _ => {
                    if !c.is_one() {
                        let _ = write!(out, "{c}*");
                    }
                    let _ = write!(out, "{var}");
                    if i > 1 {
                        let _ = write!(out, "^{i}");
                    }
                }
            }
        }
        out
    }
}

/// The elementary symmetric polynomials (e_1, ..., e_n) of the given values;
/// `prod (x - a_i)` has coefficients `(-1)^k e_k`.
pub fn elementary_symmetric(values: &[FieldElem]) -> Result<Vec<FieldElem>> {
    if values.is_empty() {
        return Ok(Vec::new());
    }
    let field = values[0].descriptor();
    let mut e = vec![field.zero(); values.len() + 1];
    e[0] = field.one();
    for (count, a) in values.iter().enumerate() {
        if a.descriptor() != field {
            return Err(Error::DescriptorMismatch {
                expected: format!("{field}"),
                found: format!("{}", a.descriptor()),
            });
        }
        for k in (1..=count + 1).rev() {
            e[k] = e[k].add(&a.mul(&e[k - 1])?)?;
        }
    }
    Ok(e[1..].to_vec())
}

/// Exponent vector under the graded lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial; the term map never stores zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: FieldDescriptor,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl MultiPoly {
    pub fn zero(field: &FieldDescriptor, nvars: usize) -> Self {
        MultiPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &FieldDescriptor, nvars: usize, c: FieldElem) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::unit(nvars), c)?;
        Ok(p)
    }

    pub fn variable(field: &FieldDescriptor, nvars: usize, index: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::LengthMismatch {
                expected: nvars,
                found: index,
            });
        }
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::new(exps), field.one())?;
        Ok(p)
    }

    pub fn monomial_term(
        field: &FieldDescriptor,
        nvars: usize,
        exponents: Vec<u32>,
        c: FieldElem,
    ) -> Result<Self> {
        if exponents.len() != nvars {
            return Err(Error::LengthMismatch {
                expected: nvars,
                found: exponents.len(),
            });
        }
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::new(exponents), c)?;
        Ok(p)
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Leading term in the graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElem)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: FieldElem) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if c.descriptor() != self.field {
            return Err(Error::DescriptorMismatch {
                expected: format!("{}", self.field),
                found: format!("{}", c.descriptor()),
            });
        }
        if m.exponents().len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: m.exponents().len(),
            });
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.add(&c)?;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
        Ok(())
    }

    fn check_same(&self, other: &MultiPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DescriptorMismatch {
                expected: format!("{}", self.field),
                found: format!("{}", other.field),
            });
        }
        if self.nvars != other.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2)?)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElem) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.mul(c)?)?;
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<MultiPoly> {
        let mut acc = MultiPoly::constant(&self.field, self.nvars, self.field.one())?;
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Exact substitution value at a point.
    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    term = term.mul(&x.pow(e as u64)?)?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Substitute a polynomial for every variable.
    pub fn substitute(&self, values: &[MultiPoly]) -> Result<MultiPoly> {
        if values.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: values.len(),
            });
        }
        let target_vars = values.first().map(|v| v.num_vars()).unwrap_or(self.nvars);
        let mut acc = MultiPoly::zero(&self.field, target_vars);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(&self.field, target_vars, c.clone())?;
            for (v, &e) in values.iter().zip(m.exponents()) {
                if e > 0 {
                    term = term.mul(&v.pow(e)?)?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Image under the sign action x_i -> -x_i on the flagged variables.
    pub fn apply_signs(&self, flip: &[bool]) -> Result<MultiPoly> {
        if flip.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: flip.len(),
            });
        }
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let flipped_degree: u32 = m
                .exponents()
                .iter()
                .zip(flip)
                .filter(|(_, &s)| s)
                .map(|(e, _)| e)
                .sum();
            let coeff = if flipped_degree % 2 == 1 {
                c.neg()
            } else {
                c.clone()
            };
            out.add_term(m.clone(), coeff)?;
        }
        Ok(out)
    }

    /// Exact multivariate division by a single nonzero divisor under the
    /// graded lexicographic order. Returns `Some(q)` with `self = q * f`
    /// when `f` divides exactly, `None` otherwise.
    pub fn exact_divide(&self, f: &MultiPoly) -> Result<Option<MultiPoly>> {
        self.check_same(f)?;
        if f.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (f_lm, f_lc) = f.leading_term().expect("nonzero divisor");
        let f_lm = f_lm.clone();
        let f_lc_inv = f_lc.inverse()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.field, self.nvars);
        while let Some((r_lm, r_lc)) = rem.leading_term() {
            // A leading term the divisor's leading monomial does not divide
            // can never be cancelled later: the division has a remainder.
            if !f_lm.divides(r_lm) {
                return Ok(None);
            }
            let q_mono = f_lm.quotient_into(r_lm);
            let q_coeff = r_lc.mul(&f_lc_inv)?;
            let mut piece = MultiPoly::zero(&self.field, self.nvars);
            piece.add_term(q_mono.clone(), q_coeff.clone())?;
            quot.add_term(q_mono, q_coeff)?;
            rem = rem.sub(&piece.mul(f)?)?;
        }
        Ok(Some(quot))
    }

    pub fn display_with_vars(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                out.push_str(" + ");
            }
            first = false;
            let is_unit_mono = m.total_degree() == 0;
            if !c.is_one() || is_unit_mono {
                let _ = write!(out, "{c}");
                if !is_unit_mono {
                    out.push('*');
                }
            }
            let mut started = false;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if started {
                    out.push('*');
                }
                started = true;
                let _ = write!(
                    out,
                    "{}",
                    names.get(i).cloned().unwrap_or(format!("x{}", i + 1))
                );
                if e > 1 {
                    let _ = write!(out, "^{e}");
                }
            }
        }
        out
    }
}
