//! Table-driven arithmetic for small finite fields F_(p^d), used by the
//! point-enumeration scans. Elements are packed codes sum c_i p^i over the
//! polynomial basis of a fixed irreducible modulus; multiplication goes
//! through discrete-log tables.

use crate::error::{Error, Result};

/// Largest field size for which the exp/log tables are built.
const TABLE_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub(crate) struct Gfq {
    p: u64,
    d: usize,
    q: u64,
    /// Monic irreducible modulus, ascending coefficients, length d + 1.
    modulus: Vec<u64>,
    exp: Vec<u64>,
    log: Vec<u64>,
    neg: Vec<u64>,
    frob: Vec<u64>,
    unpack: Vec<u64>, // code * d + i -> coefficient of z^i
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let d = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // reduce: z^d = -(lower part of modulus)
    for k in (d..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..d {
            let sub = c * modulus[i] % p;
            prod[k - d + i] = (prod[k - d + i] + p - sub) % p;
        }
    }
    prod.truncate(d.max(1));
    prod
}

fn poly_pow_mod(base: &[u64], mut exp: u128, modulus: &[u64], p: u64) -> Vec<u64> {
    let d = modulus.len() - 1;
    let mut acc = vec![0u64; d.max(1)];
    acc[0] = 1;
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, modulus, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = poly_mul_mod(&b, &b, modulus, p);
        }
    }
    acc
}

fn poly_gcd_is_const(a: &[u64], b: &[u64], p: u64) -> bool {
    let trim = |v: &[u64]| {
        let mut v = v.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let mut x = trim(a);
    let mut y = trim(b);
    while !y.is_empty() {
        // x mod y
        let lead_inv = mod_inv(y[y.len() - 1], p);
        while x.len() >= y.len() && !x.is_empty() {
            let shift = x.len() - y.len();
            let factor = x[x.len() - 1] * lead_inv % p;
            if factor != 0 {
                for (i, &yi) in y.iter().enumerate() {
                    let sub = factor * yi % p;
                    x[shift + i] = (x[shift + i] + p - sub) % p;
                }
            }
            x = trim(&x);
            if x.len() < y.len() {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len() == 1
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let d = modulus.len() - 1;
    let z = if d == 1 {
        // linear polynomials are irreducible
        return true;
    } else {
        let mut z = vec![0u64; d];
        z[1] = 1;
        z
    };
    // z^(p^d) == z mod f
    let q = (p as u128).pow(d as u32);
    let zq = poly_pow_mod(&z, q, modulus, p);
    if zq != z {
        return false;
    }
    // gcd(z^(p^(d/l)) - z, f) constant for every prime l | d
    let mut rem = d;
    let mut primes = Vec::new();
    let mut t = 2;
    while t * t <= rem {
        if rem.is_multiple_of(t) {
            primes.push(t);
            while rem.is_multiple_of(t) {
                rem /= t;
            }
        }
        t += 1;
    }
    if rem > 1 {
        primes.push(rem);
    }
    for l in primes {
        let e = (p as u128).pow((d / l) as u32);
        let ze = poly_pow_mod(&z, e, modulus, p);
        // ze - z
        let mut diff = ze;
        diff[1] = (diff[1] + p - 1) % p;
        if !poly_gcd_is_const(&diff, modulus, p) {
            return false;
        }
    }
    true
}

impl Gfq {
    /// Build F_(p^d) with the first irreducible monic modulus in code order
    /// and the first primitive element, so the tables are reproducible.
    pub fn new(p: u64, d: usize) -> Result<Gfq> {
        if d == 0 {
            return Err(Error::InvalidInput(
                "extension degree must be positive".into(),
            ));
        }
        let q = (p as u128)
            .checked_pow(d as u32)
            .ok_or(Error::BudgetExceeded {
                required: u128::MAX,
                budget: TABLE_LIMIT,
            })?;
        if q > TABLE_LIMIT as u128 {
            return Err(Error::BudgetExceeded {
                required: q,
                budget: TABLE_LIMIT,
            });
        }
        let q = q as u64;

        let modulus = {
            let mut found = None;
            'search: for code in 0..q {
                let mut f = Vec::with_capacity(d + 1);
                let mut c = code;
                for _ in 0..d {
                    f.push(c % p);
                    c /= p;
                }
                f.push(1);
                if is_irreducible(&f, p) {
                    found = Some(f);
                    break 'search;
                }
            }
            found.ok_or_else(|| Error::StructureCheck("no irreducible modulus found".into()))?
        };

        let mut unpack = vec![0u64; (q as usize) * d];
        for code in 0..q {
            let mut c = code;
            for i in 0..d {
                unpack[(code as usize) * d + i] = c % p;
                c /= p;
            }
        }

        let pack = |coeffs: &[u64]| -> u64 {
            let mut code = 0u64;
            for &c in coeffs.iter().rev() {
                code = code * p + (c % p);
            }
            code
        };

        // neg table
        let mut neg = vec![0u64; q as usize];
        for code in 0..q {
            let base = (code as usize) * d;
            let coeffs: Vec<u64> = (0..d).map(|i| (p - unpack[base + i]) % p).collect();
            neg[code as usize] = pack(&coeffs);
        }

        // exp/log via the first primitive element
        let mut exp = vec![0u64; (q - 1) as usize];
        let mut log = vec![0u64; q as usize];
        let mut found_generator = false;
        'gen: for g_code in 1..q {
            let g: Vec<u64> = (0..d).map(|i| unpack[(g_code as usize) * d + i]).collect();
            let mut acc = vec![0u64; d];
            acc[0] = 1;
            for i in 0..(q - 1) as usize {
                let code = pack(&acc);
                if code == 1 && i > 0 {
                    continue 'gen; // order divides i < q-1
                }
                exp[i] = code;
                acc = poly_mul_mod(&acc, &g, &modulus, p);
            }
            if pack(&acc) == 1 {
                found_generator = true;
                for (i, &code) in exp.iter().enumerate() {
                    log[code as usize] = i as u64;
                }
                break 'gen;
            }
        }
        if !found_generator {
            return Err(Error::StructureCheck("no primitive element found".into()));
        }

        // Frobenius x -> x^p through the log tables
        let mut frob = vec![0u64; q as usize];
        for code in 1..q {
            let l = log[code as usize] as u128;
            frob[code as usize] = exp[((l * p as u128) % (q as u128 - 1)) as usize];
        }

        Ok(Gfq {
            p,
            d,
            q,
            modulus,
            exp,
            log,
            neg,
            frob,
            unpack,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    pub fn coeff(&self, code: u64, i: usize) -> u64 {
        self.unpack[(code as usize) * self.d + i]
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let mut code = 0u64;
        for i in (0..self.d).rev() {
            let s = (self.coeff(a, i) + self.coeff(b, i)) % self.p;
            code = code * self.p + s;
        }
        code
    }

    #[inline]
    pub fn neg_of(&self, a: u64) -> u64 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let l = self.log[a as usize] + self.log[b as usize];
        let m = self.q - 1;
        self.exp[(if l >= m { l - m } else { l }) as usize]
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let m = self.q - 1;
        let l = self.log[a as usize];
        Ok(self.exp[((m - l) % m) as usize])
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let m = (self.q - 1) as u128;
        let l = (self.log[a as usize] as u128 * e as u128) % m;
        self.exp[l as usize]
    }

    /// x -> x^p.
    #[inline]
    pub fn frobenius(&self, a: u64) -> u64 {
        self.frob[a as usize]
    }

    /// x -> x^(p^k).
    pub fn frobenius_iter(&self, mut a: u64, k: usize) -> u64 {
        for _ in 0..k {
            a = self.frob[a as usize];
        }
        a
    }

    /// True when the element lies in the subfield F_(p^e); e must divide d.
    pub fn in_subfield(&self, a: u64, e: usize) -> bool {
        self.frobenius_iter(a, e) == a
    }

    /// Render a code as coefficients over the polynomial basis.
    pub fn render(&self, a: u64) -> Vec<u64> {
        (0..self.d).map(|i| self.coeff(a, i)).collect()
    }
}
