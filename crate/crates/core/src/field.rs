//! Exact scalar domains: the rationals, prime fields F_p, and univariate
//! rational-function fields over either.
//!
//! Every element carries its field descriptor, and all arithmetic is checked:
//! mixing descriptors or dividing by zero is an [`Error`], never a silent
//! wrong answer.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// Deterministic Miller–Rabin, valid for all u64 inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse by the extended Euclidean algorithm. `a` must be nonzero mod `p`.
fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of non-unit");
    (t.rem_euclid(p as i128)) as u64
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Desc {
    Rationals,
    Prime(u64),
    RatFunc { base: Box<Desc>, var: String },
}

/// Description of a coefficient field: Q, F_p, or a one-variable rational
/// function field over one of those.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldDescriptor(Desc);

impl FieldDescriptor {
    /// The field Q of rational numbers.
    pub fn rationals() -> Self {
        FieldDescriptor(Desc::Rationals)
    }

    /// The prime field F_p. Fails unless `p` is prime.
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldDescriptor(Desc::Prime(p)))
    }

    /// The rational function field base(var). The base must be Q or F_p:
    /// function fields do not nest.
    pub fn rational_functions(base: &FieldDescriptor, var: &str) -> Result<Self> {
        match base.0 {
            Desc::Rationals | Desc::Prime(_) => {}
            Desc::RatFunc { .. } => {
                return Err(Error::InvalidDescriptor(
                    "rational function fields do not nest".into(),
                ))
            }
        }
        if var.is_empty() {
            return Err(Error::InvalidDescriptor("empty variable name".into()));
        }
        Ok(FieldDescriptor(Desc::RatFunc {
            base: Box::new(base.0.clone()),
            var: var.to_string(),
        }))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0, Desc::Prime(_))
    }

    /// Number of elements for finite fields, `None` otherwise.
    pub fn size(&self) -> Option<u64> {
        match self.0 {
            Desc::Prime(p) => Some(p),
            _ => None,
        }
    }

    /// The characteristic, with 0 for characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match &self.0 {
            Desc::Rationals => 0,
            Desc::Prime(p) => *p,
            Desc::RatFunc { base, .. } => match **base {
                Desc::Rationals => 0,
                Desc::Prime(p) => p,
                Desc::RatFunc { .. } => unreachable!("nested function field"),
            },
        }
    }

    /// Base field of a function field, or a copy of `self` otherwise.
    pub fn base(&self) -> FieldDescriptor {
        match &self.0 {
            Desc::RatFunc { base, .. } => FieldDescriptor((**base).clone()),
            other => FieldDescriptor(other.clone()),
        }
    }

    pub fn is_rational_function_field(&self) -> bool {
        matches!(self.0, Desc::RatFunc { .. })
    }

    pub fn zero(&self) -> FieldElem {
        self.integer(0)
    }

    pub fn one(&self) -> FieldElem {
        self.integer(1)
    }

    /// The image of the integer `n` in this field.
    pub fn integer(&self, n: i64) -> FieldElem {
        match &self.0 {
            Desc::Rationals => FieldElem(Val::Rational(BigRational::from_integer(BigInt::from(n)))),
            Desc::Prime(p) => FieldElem(Val::Prime {
                p: *p,
                v: n.rem_euclid(*p as i64) as u64,
            }),
            Desc::RatFunc { base, var } => {
                let base = FieldDescriptor((**base).clone());
                let num = UniPoly::constant(base.integer(n));
                let den = UniPoly::constant(base.one());
                FieldElem(Val::RatFunc(Box::new(RatFunc {
                    var: var.clone(),
                    num,
                    den,
                })))
            }
        }
    }

    /// Residue class `v` in a prime field.
    pub fn residue(&self, v: u64) -> Result<FieldElem> {
        match self.0 {
            Desc::Prime(p) => Ok(FieldElem(Val::Prime { p, v: v % p })),
            _ => Err(Error::InvalidInput("residue() needs a prime field".into())),
        }
    }

    /// Rational number `num/den`.
    pub fn fraction(&self, num: i64, den: i64) -> Result<FieldElem> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        match self.0 {
            Desc::Rationals => Ok(FieldElem(Val::Rational(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            )))),
            _ => self.integer(num).div(&self.integer(den)),
        }
    }

    /// The transcendental generator of a rational function field.
    pub fn function_variable(&self) -> Result<FieldElem> {
        match &self.0 {
            Desc::RatFunc { base, var } => {
                let base = FieldDescriptor((**base).clone());
                let num = UniPoly::from_coeffs(&base, vec![base.zero(), base.one()])?;
                let den = UniPoly::constant(base.one());
                Ok(FieldElem(Val::RatFunc(Box::new(RatFunc {
                    var: var.clone(),
                    num,
                    den,
                }))))
            }
            _ => Err(Error::InvalidInput(
                "function_variable() needs a function field".into(),
            )),
        }
    }

    /// Form `num/den` in a rational function field; reduces to canonical form.
    pub fn from_polys(&self, num: UniPoly, den: UniPoly) -> Result<FieldElem> {
        match &self.0 {
            Desc::RatFunc { base, var } => {
                let base = FieldDescriptor((**base).clone());
                if num.field() != &base || den.field() != &base {
                    return Err(Error::DescriptorMismatch {
                        expected: format!("{base}"),
                        found: format!("{}", num.field()),
                    });
                }
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let rf = RatFunc::reduced(var.clone(), num, den)?;
                Ok(FieldElem(Val::RatFunc(Box::new(rf))))
            }
            _ => Err(Error::InvalidInput(
                "from_polys() needs a function field".into(),
            )),
        }
    }

    /// Embed a base-field scalar into the function field.
    pub fn embed_scalar(&self, x: &FieldElem) -> Result<FieldElem> {
        match &self.0 {
            Desc::RatFunc { base, var } => {
                let base_desc = FieldDescriptor((**base).clone());
                if x.descriptor() != base_desc {
                    return Err(Error::DescriptorMismatch {
                        expected: format!("{base_desc}"),
                        found: format!("{}", x.descriptor()),
                    });
                }
                Ok(FieldElem(Val::RatFunc(Box::new(RatFunc {
                    var: var.clone(),
                    num: UniPoly::constant(x.clone()),
                    den: UniPoly::constant(base_desc.one()),
                }))))
            }
            _ => Err(Error::InvalidInput(
                "embed_scalar() needs a function field".into(),
            )),
        }
    }

    /// All elements of a finite field, in residue order.
    pub fn elements(&self) -> Result<Vec<FieldElem>> {
        match self.0 {
            Desc::Prime(p) => Ok((0..p).map(|v| FieldElem(Val::Prime { p, v })).collect()),
            _ => Err(Error::InfiniteField),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Desc::Rationals => write!(f, "Q"),
            Desc::Prime(p) => write!(f, "F{p}"),
            Desc::RatFunc { base, var } => {
                let b = FieldDescriptor((**base).clone());
                write!(f, "{b}({var})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct RatFunc {
    var: String,
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    /// Canonical form: coprime numerator and denominator, monic denominator,
    /// zero stored as 0/1.
    fn reduced(var: String, num: UniPoly, den: UniPoly) -> Result<RatFunc> {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            let one = UniPoly::constant(num.field().one());
            return Ok(RatFunc { var, num, den: one });
        }
        let g = num.gcd(&den)?;
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let lc = den.leading_coefficient().expect("nonzero denominator");
        let lc_inv = lc.inverse()?;
        Ok(RatFunc {
            var,
            num: num.scale(&lc_inv)?,
            den: den.scale(&lc_inv)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Val {
    Rational(BigRational),
    Prime { p: u64, v: u64 },
    RatFunc(Box<RatFunc>),
}

/// An exact element of one of the supported fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElem(Val);

impl FieldElem {
    pub fn descriptor(&self) -> FieldDescriptor {
        match &self.0 {
            Val::Rational(_) => FieldDescriptor(Desc::Rationals),
            Val::Prime { p, .. } => FieldDescriptor(Desc::Prime(*p)),
            Val::RatFunc(rf) => FieldDescriptor(Desc::RatFunc {
                base: Box::new(rf.num.field().0.clone()),
                var: rf.var.clone(),
            }),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Val::Rational(r) => r.is_zero(),
            Val::Prime { v, .. } => *v == 0,
            Val::RatFunc(rf) => rf.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Val::Rational(r) => r.is_one(),
            Val::Prime { v, .. } => *v == 1,
            Val::RatFunc(rf) => rf.den.is_one_poly() && rf.num.is_one_poly(),
        }
    }

    /// In a field, an element is a unit exactly when it is nonzero.
    pub fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    /// Residue value for prime-field elements.
    pub fn residue_value(&self) -> Option<u64> {
        match &self.0 {
            Val::Prime { v, .. } => Some(*v),
            _ => None,
        }
    }

    /// Numerator and denominator for function-field elements.
    pub fn as_polys(&self) -> Option<(&UniPoly, &UniPoly)> {
        match &self.0 {
            Val::RatFunc(rf) => Some((&rf.num, &rf.den)),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Val::Rational(r) => Some(r),
            _ => None,
        }
    }

    fn check_same(&self, other: &FieldElem) -> Result<()> {
        let a = self.descriptor();
        let b = other.descriptor();
        if a != b {
            return Err(Error::DescriptorMismatch {
                expected: format!("{a}"),
                found: format!("{b}"),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check_same(other)?;
        Ok(match (&self.0, &other.0) {
            (Val::Rational(a), Val::Rational(b)) => FieldElem(Val::Rational(a + b)),
            (Val::Prime { p, v: a }, Val::Prime { v: b, .. }) => FieldElem(Val::Prime {
                p: *p,
                v: ((*a as u128 + *b as u128) % *p as u128) as u64,
            }),
            (Val::RatFunc(a), Val::RatFunc(b)) => {
                // a/b + c/d = (ad + cb) / bd
                let num = a.num.mul(&b.den)?.add(&b.num.mul(&a.den)?)?;
                let den = a.den.mul(&b.den)?;
                FieldElem(Val::RatFunc(Box::new(RatFunc::reduced(
                    a.var.clone(),
                    num,
                    den,
                )?)))
            }
            _ => unreachable!("descriptors checked"),
        })
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElem {
        match &self.0 {
            Val::Rational(a) => FieldElem(Val::Rational(-a)),
            Val::Prime { p, v } => FieldElem(Val::Prime {
                p: *p,
                v: if *v == 0 { 0 } else { p - v },
            }),
            Val::RatFunc(rf) => FieldElem(Val::RatFunc(Box::new(RatFunc {
                var: rf.var.clone(),
                num: rf.num.neg(),
                den: rf.den.clone(),
            }))),
        }
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check_same(other)?;
        Ok(match (&self.0, &other.0) {
            (Val::Rational(a), Val::Rational(b)) => FieldElem(Val::Rational(a * b)),
            (Val::Prime { p, v: a }, Val::Prime { v: b, .. }) => FieldElem(Val::Prime {
                p: *p,
                v: mod_mul(*a, *b, *p),
            }),
            (Val::RatFunc(a), Val::RatFunc(b)) => {
                let num = a.num.mul(&b.num)?;
                let den = a.den.mul(&b.den)?;
                FieldElem(Val::RatFunc(Box::new(RatFunc::reduced(
                    a.var.clone(),
                    num,
                    den,
                )?)))
            }
            _ => unreachable!("descriptors checked"),
        })
    }

    pub fn inverse(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Val::Rational(a) => FieldElem(Val::Rational(a.recip())),
            Val::Prime { p, v } => FieldElem(Val::Prime {
                p: *p,
                v: mod_inv(*v, *p),
            }),
            Val::RatFunc(rf) => FieldElem(Val::RatFunc(Box::new(RatFunc::reduced(
                rf.var.clone(),
                rf.den.clone(),
                rf.num.clone(),
            )?))),
        })
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.mul(&other.inverse()?)
    }

    pub fn pow(&self, mut exp: u64) -> Result<FieldElem> {
        let mut acc = self.descriptor().one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Evaluate a function-field element at a base-field point.
    /// Fails when the denominator vanishes there.
    pub fn evaluate_at(&self, point: &FieldElem) -> Result<FieldElem> {
        match &self.0 {
            Val::RatFunc(rf) => {
                let d = rf.den.eval(point)?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                rf.num.eval(point)?.div(&d)
            }
            _ => Err(Error::InvalidInput(
                "evaluate_at() needs a function-field element".into(),
            )),
        }
    }

    /// Total order used for canonical forms. Within one field: residues by
    /// value; rationals by (sign, numerator, denominator); function-field
    /// elements by numerator then denominator coefficient lists. Elements of
    /// different fields compare by descriptor first.
    pub fn canonical_cmp(&self, other: &FieldElem) -> Ordering {
        let d = self.descriptor().cmp(&other.descriptor());
        if d != Ordering::Equal {
            return d;
        }
        match (&self.0, &other.0) {
            (Val::Rational(a), Val::Rational(b)) => {
                let sign = |r: &BigRational| match r.numer().sign() {
                    Sign::Minus => -1i8,
                    Sign::NoSign => 0,
                    Sign::Plus => 1,
                };
                sign(a)
                    .cmp(&sign(b))
                    .then_with(|| a.numer().cmp(b.numer()))
                    .then_with(|| a.denom().cmp(b.denom()))
            }
            (Val::Prime { v: a, .. }, Val::Prime { v: b, .. }) => a.cmp(b),
            (Val::RatFunc(a), Val::RatFunc(b)) => a
                .num
                .canonical_cmp(&b.num)
                .then_with(|| a.den.canonical_cmp(&b.den)),
            _ => unreachable!("descriptors equal"),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Val::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Val::Prime { v, .. } => write!(f, "{v}"),
            Val::RatFunc(rf) => {
                if rf.den.is_one_poly() {
                    write!(f, "{}", rf.num.display_with_var(&rf.var))
                } else {
                    write!(
                        f,
                        "({})/({})",
                        rf.num.display_with_var(&rf.var),
                        rf.den.display_with_var(&rf.var)
                    )
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldDescriptor {
        FieldDescriptor::prime_field(5).unwrap()
    }

    #[test]
    fn primality_checks() {
        assert!(FieldDescriptor::prime_field(2).is_ok());
        assert!(FieldDescriptor::prime_field(97).is_ok());
        assert_eq!(FieldDescriptor::prime_field(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldDescriptor::prime_field(91), Err(Error::NotPrime(91)));
        assert!(FieldDescriptor::prime_field(4294967311).is_ok()); // prime > 2^32
    }

    #[test]
    fn no_nested_function_fields() {
        let qt = FieldDescriptor::rational_functions(&FieldDescriptor::rationals(), "t").unwrap();
        assert!(FieldDescriptor::rational_functions(&qt, "u").is_err());
    }

    #[test]
    fn f5_product() {
        // 2 * 3 = 6 = 1 mod 5
        let f = f5();
        let r = f.integer(2).mul(&f.integer(3)).unwrap();
        assert_eq!(r, f.integer(1));
    }

    #[test]
    fn rational_sum() {
        // 1/2 + 1/3 = 5/6
        let q = FieldDescriptor::rationals();
        let r = q
            .fraction(1, 2)
            .unwrap()
            .add(&q.fraction(1, 3).unwrap())
            .unwrap();
        assert_eq!(r, q.fraction(5, 6).unwrap());
    }

    #[test]
    fn function_field_inverse_pair() {
        // over F3(t): (t+1)/t * t/(t+1) = 1
        let f3 = FieldDescriptor::prime_field(3).unwrap();
        let f3t = FieldDescriptor::rational_functions(&f3, "t").unwrap();
        let t_plus_1 = UniPoly::from_coeffs(&f3, vec![f3.one(), f3.one()]).unwrap();
        let t = UniPoly::from_coeffs(&f3, vec![f3.zero(), f3.one()]).unwrap();
        let a = f3t.from_polys(t_plus_1.clone(), t.clone()).unwrap();
        let b = f3t.from_polys(t, t_plus_1).unwrap();
        assert_eq!(a.mul(&b).unwrap(), f3t.one());
        assert!(a.mul(&b).unwrap().is_one());
    }

    #[test]
    fn descriptor_mismatch_is_an_error() {
        let f5 = f5();
        let f3 = FieldDescriptor::prime_field(3).unwrap();
        assert!(matches!(
            f5.integer(1).add(&f3.integer(1)),
            Err(Error::DescriptorMismatch { .. })
        ));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = f5();
        assert_eq!(f.integer(3).div(&f.zero()), Err(Error::DivisionByZero));
        assert_eq!(f.zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn is_unit_iff_nonzero() {
        let f = f5();
        for v in 0..5 {
            let x = f.integer(v);
            assert_eq!(x.is_unit(), v != 0);
        }
    }

    #[test]
    fn field_axioms_randomized() {
        // Associativity, commutativity, distributivity, inverses — exercised
        // over every descriptor kind with seeded pseudo-random triples.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let q = FieldDescriptor::rationals();
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        let f5t = FieldDescriptor::rational_functions(&f5(), "t").unwrap();
        let qt = FieldDescriptor::rational_functions(&q, "t").unwrap();

        let random_elem = |desc: &FieldDescriptor, rng: &mut rand_chacha::ChaCha8Rng| {
            if desc.is_rational_function_field() {
                let base = desc.base();
                let num_coeffs: Vec<_> = (0..rng.gen_range(1..4))
                    .map(|_| base.integer(rng.gen_range(-6..6)))
                    .collect();
                let mut den_coeffs: Vec<_> = (0..rng.gen_range(1..3))
                    .map(|_| base.integer(rng.gen_range(-6..6)))
                    .collect();
                den_coeffs.push(base.one()); // keep the denominator nonzero
                desc.from_polys(
                    UniPoly::from_coeffs(&base, num_coeffs).unwrap(),
                    UniPoly::from_coeffs(&base, den_coeffs).unwrap(),
                )
                .unwrap()
            } else if *desc == FieldDescriptor::rationals() {
                desc.fraction(rng.gen_range(-20..20), rng.gen_range(1..12))
                    .unwrap()
            } else {
                desc.integer(rng.gen_range(0..desc.size().unwrap() as i64))
            }
        };

        for desc in [&q, &f7, &f5t, &qt] {
            for _ in 0..40 {
                let a = random_elem(desc, &mut rng);
                let b = random_elem(desc, &mut rng);
                let c = random_elem(desc, &mut rng);
                let ab_c = a.add(&b).unwrap().add(&c).unwrap();
                let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
                assert_eq!(ab_c, a_bc);
                let ab = a.mul(&b).unwrap();
                assert_eq!(ab, b.mul(&a).unwrap());
                let abc1 = ab.mul(&c).unwrap();
                let abc2 = a.mul(&b.mul(&c).unwrap()).unwrap();
                assert_eq!(abc1, abc2);
                let dist1 = a.mul(&b.add(&c).unwrap()).unwrap();
                let dist2 = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                assert_eq!(dist1, dist2);
                if !a.is_zero() {
                    assert!(a.mul(&a.inverse().unwrap()).unwrap().is_one());
                }
                assert!(a.sub(&a).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn canonical_order_is_total_and_consistent() {
        let q = FieldDescriptor::rationals();
        let xs = [
            q.fraction(-1, 2).unwrap(),
            q.zero(),
            q.fraction(1, 3).unwrap(),
            q.fraction(1, 2).unwrap(),
            q.integer(2),
        ];
        for a in &xs {
            for b in &xs {
                let c = a.canonical_cmp(b);
                assert_eq!(c == Ordering::Equal, a == b);
                assert_eq!(c.reverse(), b.canonical_cmp(a));
            }
        }
        // documented order on rationals: sign first, then numerator, then denominator
        assert_eq!(
            q.fraction(1, 2)
                .unwrap()
                .canonical_cmp(&q.fraction(1, 3).unwrap()),
            Ordering::Less
        );
    }
}
