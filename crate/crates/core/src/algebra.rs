//! Finite-dimensional commutative unital algebras given by structure
//! constants: étale testing via the trace form, the closure-based generation
//! oracle, the split-algebra separation criterion with explicit separating
//! polynomials, minimal-generator search, and primitive idempotents.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElem};
use crate::linalg::{Matrix, RowSpan};
use crate::poly::{MultiPoly, UniPoly};

/// Largest prime field we are willing to scan for polynomial roots when
/// splitting idempotents.
const ROOT_SCAN_LIMIT: u64 = 1 << 20;

/// Random tuples tried per generator count once exhaustive search exceeds
/// its budget.
const RANDOM_TRIALS: u64 = 20_000;

/// Element of a [`FiniteAlgebra`], stored as its coordinate vector over the
/// algebra basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElem(pub Vec<FieldElem>);

impl AlgebraElem {
    pub fn coords(&self) -> &[FieldElem] {
        &self.0
    }
}

/// Compiled form of a prime-field algebra: residues only, used by the hot
/// search loops. Same closure algorithm as the generic path.
#[derive(Clone, Debug, PartialEq, Eq)]
struct PrimeRepr {
    p: u64,
    dim: usize,
    table: Vec<u64>,
    unit: Vec<u64>,
    split: bool,
}

impl PrimeRepr {
    #[inline]
    fn c(&self, i: usize, j: usize, k: usize) -> u64 {
        self.table[(i * self.dim + j) * self.dim + k]
    }

    fn mul_into(&self, x: &[u64], y: &[u64], out: &mut [u64]) {
        out.fill(0);
        if self.split {
            for k in 0..self.dim {
                out[k] = (x[k] as u128 * y[k] as u128 % self.p as u128) as u64;
            }
            return;
        }
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                if y[j] == 0 {
                    continue;
                }
                let coef = x[i] as u128 * y[j] as u128 % self.p as u128;
                if coef == 0 {
                    continue;
                }
                for k in 0..self.dim {
                    let c = self.c(i, j, k);
                    if c != 0 {
                        out[k] = ((out[k] as u128 + coef * c as u128) % self.p as u128) as u64;
                    }
                }
            }
        }
    }

    /// Row-reduction insert; returns true when the vector was independent.
    fn span_insert(&self, rows: &mut Vec<Vec<u64>>, pivots: &mut Vec<usize>, v: &[u64]) -> bool {
        let p = self.p as u128;
        let mut w = v.to_vec();
        for (row, &pc) in rows.iter().zip(pivots.iter()) {
            if w[pc] == 0 {
                continue;
            }
            let factor = w[pc] as u128;
            for c in 0..self.dim {
                let sub = factor * row[c] as u128 % p;
                w[c] = ((w[c] as u128 + p - sub) % p) as u64;
            }
        }
        let pivot = match w.iter().position(|&x| x != 0) {
            Some(idx) => idx,
            None => return false,
        };
        let inv = mod_inv_u64(w[pivot], self.p);
        for c in 0..self.dim {
            w[c] = (w[c] as u128 * inv as u128 % p) as u64;
        }
        for row in rows.iter_mut() {
            if row[pivot] == 0 {
                continue;
            }
            let factor = row[pivot] as u128;
            for c in 0..self.dim {
                let sub = factor * w[c] as u128 % p;
                row[c] = ((row[c] as u128 + p - sub) % p) as u64;
            }
        }
        let at = pivots
            .iter()
            .position(|&pc| pc > pivot)
            .unwrap_or(rows.len());
        rows.insert(at, w);
        pivots.insert(at, pivot);
        true
    }

    /// Dimension of the unital subalgebra generated by `gens`.
    fn closure_dim(&self, gens: &[Vec<u64>]) -> usize {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(self.dim);
        let mut pivots: Vec<usize> = Vec::with_capacity(self.dim);
        let mut frontier: Vec<Vec<u64>> = Vec::new();
        if self.span_insert(&mut rows, &mut pivots, &self.unit) {
            frontier.push(self.unit.clone());
        }
        for g in gens {
            if self.span_insert(&mut rows, &mut pivots, g) {
                frontier.push(g.clone());
            }
        }
        let mut prod = vec![0u64; self.dim];
        while !frontier.is_empty() && rows.len() < self.dim {
            let mut next = Vec::new();
            for b in &frontier {
                for g in gens {
                    self.mul_into(b, g, &mut prod);
                    if self.span_insert(&mut rows, &mut pivots, &prod) {
                        next.push(prod.clone());
                        if rows.len() == self.dim {
                            return self.dim;
                        }
                    }
                }
            }
            frontier = next;
        }
        rows.len()
    }
}

fn mod_inv_u64(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = (result as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    result
}

/// Commutative unital algebra of finite dimension, defined by structure
/// constants e_i e_j = sum_k c[i][j][k] e_k. Commutativity, associativity,
/// and the unit law are all verified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    field: FieldDescriptor,
    dim: usize,
    /// Flattened c[i][j][k] at index (i*dim + j)*dim + k.
    table: Vec<FieldElem>,
    unit: Vec<FieldElem>,
    prime: Option<PrimeRepr>,
}

impl FiniteAlgebra {
    pub fn new(
        field: &FieldDescriptor,
        constants: Vec<Vec<Vec<FieldElem>>>,
        unit: Vec<FieldElem>,
    ) -> Result<Self> {
        let dim = constants.len();
        if dim == 0 {
            return Err(Error::StructureCheck("dimension must be positive".into()));
        }
        let mut table = Vec::with_capacity(dim * dim * dim);
        for row in &constants {
            if row.len() != dim {
                return Err(Error::LengthMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            for entry in row {
                if entry.len() != dim {
                    return Err(Error::LengthMismatch {
                        expected: dim,
                        found: entry.len(),
                    });
                }
                for x in entry {
                    if x.descriptor() != *field {
                        return Err(Error::DescriptorMismatch {
                            expected: format!("{field}"),
                            found: format!("{}", x.descriptor()),
                        });
                    }
                    table.push(x.clone());
                }
            }
        }
        if unit.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                found: unit.len(),
            });
        }
        let mut alg = FiniteAlgebra {
            field: field.clone(),
            dim,
            table,
            unit,
            prime: None,
        };
        alg.validate()?;
        alg.prime = alg.build_prime_repr();
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..i {
                if self.c(i, j) != self.c(j, i) {
                    return Err(Error::StructureCheck(format!(
                        "commutativity fails at e{i}*e{j}"
                    )));
                }
            }
        }
        for i in 0..n {
            let ei = self.basis_elem(i);
            let prod = self.mul(&self.unit_elem(), &ei)?;
            if prod != ei {
                return Err(Error::StructureCheck(format!("unit law fails at e{i}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ij = AlgebraElem(self.c(i, j).to_vec());
                    let jk = AlgebraElem(self.c(j, k).to_vec());
                    let left = self.mul(&ij, &self.basis_elem(k))?;
                    let right = self.mul(&self.basis_elem(i), &jk)?;
                    if left != right {
                        return Err(Error::StructureCheck(format!(
                            "associativity fails at (e{i}*e{j})*e{k}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn build_prime_repr(&self) -> Option<PrimeRepr> {
        let p = self.field.size()?;
        let table: Vec<u64> = self
            .table
            .iter()
            .map(|x| x.residue_value().expect("prime field"))
            .collect();
        let unit: Vec<u64> = self
            .unit
            .iter()
            .map(|x| x.residue_value().expect("prime field"))
            .collect();
        let n = self.dim;
        let split = unit.iter().all(|&u| u == 1)
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    (0..n).all(|k| {
                        let expected = if i == j && j == k { 1 } else { 0 };
                        table[(i * n + j) * n + k] == expected
                    })
                })
            });
        Some(PrimeRepr {
            p,
            dim: n,
            table,
            unit,
            split,
        })
    }

    /// The trivial split algebra F^n with componentwise operations.
    pub fn split(field: &FieldDescriptor, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::StructureCheck("dimension must be positive".into()));
        }
        let mut constants = vec![vec![vec![field.zero(); n]; n]; n];
        for (i, c_i) in constants.iter_mut().enumerate() {
            c_i[i][i] = field.one();
        }
        FiniteAlgebra::new(field, constants, vec![field.one(); n])
    }

    /// F[z]/(f) for monic f, on the basis 1, z, ..., z^(n-1).
    pub fn monogenic(f: &UniPoly) -> Result<Self> {
        if !f.is_monic() {
            return Err(Error::InvalidInput(
                "monogenic algebra needs a monic polynomial".into(),
            ));
        }
        let n = f.degree().unwrap();
        if n == 0 {
            return Err(Error::InvalidInput(
                "monogenic algebra needs degree >= 1".into(),
            ));
        }
        let field = f.field().clone();
        // z^k mod f for k up to 2n - 2
        let mut powers: Vec<Vec<FieldElem>> = Vec::with_capacity(2 * n - 1);
        let z = UniPoly::from_coeffs(&field, vec![field.zero(), field.one()])?;
        let mut acc = UniPoly::constant(field.one());
        for _ in 0..(2 * n - 1) {
            let (_, rem) = acc.divmod(f)?;
            powers.push((0..n).map(|i| rem.coeff(i)).collect());
            acc = acc.mul(&z)?;
        }
        let constants = (0..n)
            .map(|i| (0..n).map(|j| powers[i + j].clone()).collect())
            .collect();
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        FiniteAlgebra::new(&field, constants, unit)
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Structure constant vector for e_i e_j.
    pub fn c(&self, i: usize, j: usize) -> &[FieldElem] {
        &self.table[(i * self.dim + j) * self.dim..(i * self.dim + j + 1) * self.dim]
    }

    pub fn unit_elem(&self) -> AlgebraElem {
        AlgebraElem(self.unit.clone())
    }

    pub fn zero_elem(&self) -> AlgebraElem {
        AlgebraElem(vec![self.field.zero(); self.dim])
    }

    pub fn basis_elem(&self, i: usize) -> AlgebraElem {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        AlgebraElem(v)
    }

    pub fn element(&self, coords: Vec<FieldElem>) -> Result<AlgebraElem> {
        if coords.len() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                found: coords.len(),
            });
        }
        for x in &coords {
            if x.descriptor() != self.field {
                return Err(Error::DescriptorMismatch {
                    expected: format!("{}", self.field),
                    found: format!("{}", x.descriptor()),
                });
            }
        }
        Ok(AlgebraElem(coords))
    }

    /// The scalar c embedded as c * 1.
    pub fn scalar(&self, c: &FieldElem) -> Result<AlgebraElem> {
        Ok(AlgebraElem(
            self.unit
                .iter()
                .map(|u| u.mul(c))
                .collect::<Result<Vec<_>>>()?,
        ))
    }

    pub fn add(&self, x: &AlgebraElem, y: &AlgebraElem) -> Result<AlgebraElem> {
        Ok(AlgebraElem(
            x.0.iter()
                .zip(&y.0)
                .map(|(a, b)| a.add(b))
                .collect::<Result<Vec<_>>>()?,
        ))
    }

    pub fn sub(&self, x: &AlgebraElem, y: &AlgebraElem) -> Result<AlgebraElem> {
        Ok(AlgebraElem(
            x.0.iter()
                .zip(&y.0)
                .map(|(a, b)| a.sub(b))
                .collect::<Result<Vec<_>>>()?,
        ))
    }

    pub fn scale(&self, c: &FieldElem, x: &AlgebraElem) -> Result<AlgebraElem> {
        Ok(AlgebraElem(
            x.0.iter().map(|a| a.mul(c)).collect::<Result<Vec<_>>>()?,
        ))
    }

    pub fn mul(&self, x: &AlgebraElem, y: &AlgebraElem) -> Result<AlgebraElem> {
        let mut out = vec![self.field.zero(); self.dim];
        for i in 0..self.dim {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y.0[j].is_zero() {
                    continue;
                }
                let coef = x.0[i].mul(&y.0[j])?;
                let cij = self.c(i, j);
                for k in 0..self.dim {
                    if !cij[k].is_zero() {
                        out[k] = out[k].add(&coef.mul(&cij[k])?)?;
                    }
                }
            }
        }
        Ok(AlgebraElem(out))
    }

    pub fn pow(&self, x: &AlgebraElem, mut exp: u64) -> Result<AlgebraElem> {
        let mut acc = self.unit_elem();
        let mut base = x.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Matrix of left multiplication by x, acting on column coordinates.
    pub fn left_mul_matrix(&self, x: &AlgebraElem) -> Result<Matrix> {
        let mut m = Matrix::zero(&self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(x, &self.basis_elem(j))?;
            for (k, v) in col.0.into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        Ok(m)
    }

    /// Trace of the left-multiplication operator of x.
    pub fn trace(&self, x: &AlgebraElem) -> Result<FieldElem> {
        let mut acc = self.field.zero();
        for (l, xl) in x.0.iter().enumerate() {
            if xl.is_zero() {
                continue;
            }
            // trace of multiplication by e_l is sum_k c[l][k][k]
            let mut t = self.field.zero();
            for k in 0..self.dim {
                t = t.add(&self.c(l, k)[k])?;
            }
            acc = acc.add(&xl.mul(&t)?)?;
        }
        Ok(acc)
    }

    /// The bilinear form (i, j) -> Tr(e_i e_j).
    pub fn trace_form(&self) -> Result<Matrix> {
        let mut m = Matrix::zero(&self.field, self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..=i {
                let prod = self.mul(&self.basis_elem(i), &self.basis_elem(j))?;
                let t = self.trace(&prod)?;
                m.set(i, j, t.clone());
                m.set(j, i, t);
            }
        }
        Ok(m)
    }

    /// Étale over a field means the trace form is nondegenerate.
    pub fn is_etale(&self) -> Result<bool> {
        Ok(!self.trace_form()?.determinant()?.is_zero())
    }

    /// Span of all monomials in the generators, including the unit, computed
    /// by saturating span <- span + span * gens. Returns the dimension and a
    /// canonical reduced basis.
    pub fn subalgebra_closure(&self, gens: &[AlgebraElem]) -> Result<(usize, Vec<AlgebraElem>)> {
        for g in gens {
            if g.0.len() != self.dim {
                return Err(Error::LengthMismatch {
                    expected: self.dim,
                    found: g.0.len(),
                });
            }
        }
        let mut span = RowSpan::new(self.dim);
        let mut frontier: Vec<AlgebraElem> = Vec::new();
        if span.insert(self.unit.clone())? {
            frontier.push(self.unit_elem());
        }
        for g in gens {
            if span.insert(g.0.clone())? {
                frontier.push(g.clone());
            }
        }
        while !frontier.is_empty() && span.dim() < self.dim {
            let mut next = Vec::new();
            for b in &frontier {
                for g in gens {
                    let prod = self.mul(b, g)?;
                    if span.insert(prod.0.clone())? {
                        next.push(prod);
                    }
                }
            }
            frontier = next;
        }
        let basis = span.basis().iter().cloned().map(AlgebraElem).collect();
        Ok((span.dim(), basis))
    }

    /// True when the generators generate the whole algebra.
    pub fn generates(&self, gens: &[AlgebraElem]) -> Result<bool> {
        if let Some(pr) = &self.prime {
            let gens_u: Vec<Vec<u64>> = gens
                .iter()
                .map(|g| {
                    if g.0.len() != self.dim {
                        return Err(Error::LengthMismatch {
                            expected: self.dim,
                            found: g.0.len(),
                        });
                    }
                    Ok(g.0
                        .iter()
                        .map(|x| x.residue_value().expect("prime field"))
                        .collect())
                })
                .collect::<Result<_>>()?;
            return Ok(pr.closure_dim(&gens_u) == self.dim);
        }
        Ok(self.subalgebra_closure(gens)?.0 == self.dim)
    }

    /// Rebuild the algebra over another field by mapping every structure
    /// constant (used to extend scalars, e.g. from F to F(t)).
    pub fn map_scalars(
        &self,
        target: &FieldDescriptor,
        f: &dyn Fn(&FieldElem) -> Result<FieldElem>,
    ) -> Result<FiniteAlgebra> {
        let n = self.dim;
        let mut constants = vec![vec![vec![target.zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    constants[i][j][k] = f(&self.c(i, j)[k])?;
                }
            }
        }
        let unit = self.unit.iter().map(f).collect::<Result<Vec<_>>>()?;
        FiniteAlgebra::new(target, constants, unit)
    }

    /// The complete set of primitive idempotents of a split étale algebra,
    /// sorted canonically. Over finite fields the set is computed from the
    /// Frobenius-fixed subalgebra followed by recursive splitting; over
    /// infinite fields only algebras whose basis is already a complete
    /// orthogonal idempotent family are recognized.
    pub fn primitive_idempotents(&self) -> Result<Vec<AlgebraElem>> {
        if !self.is_etale()? {
            return Err(Error::NotEtale);
        }
        if self.prime.as_ref().is_some_and(|pr| pr.split) || self.basis_is_idempotent_family()? {
            return Ok((0..self.dim).map(|i| self.basis_elem(i)).collect());
        }
        let p =
            match self.field.size() {
                Some(p) => p,
                None => return Err(Error::InvalidInput(
                    "cannot split over an infinite field unless the basis is already idempotent"
                        .into(),
                )),
            };
        if p > ROOT_SCAN_LIMIT {
            return Err(Error::BudgetExceeded {
                required: p as u128,
                budget: ROOT_SCAN_LIMIT,
            });
        }

        // Frobenius x -> x^p is F_p-linear; its fixed space is spanned by the
        // primitive idempotents.
        let mut frob = Matrix::zero(&self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let img = self.pow(&self.basis_elem(j), p)?;
            for (k, v) in img.0.into_iter().enumerate() {
                frob.set(k, j, v);
            }
        }
        let mut f_minus_id = frob;
        for k in 0..self.dim {
            let v = f_minus_id.get(k, k).sub(&self.field.one())?;
            f_minus_id.set(k, k, v);
        }
        let fixed_basis: Vec<AlgebraElem> = f_minus_id
            .kernel_basis()?
            .into_iter()
            .map(AlgebraElem)
            .collect();

        // Recursively split blocks (f, basis of f*B) until each is a line.
        let mut final_idems: Vec<AlgebraElem> = Vec::new();
        let mut queue: Vec<(AlgebraElem, Vec<AlgebraElem>)> = vec![(self.unit_elem(), fixed_basis)];
        while let Some((f_idem, block)) = queue.pop() {
            let block_dim = self.span_dim(&block)?;
            if block_dim <= 1 {
                final_idems.push(f_idem);
                continue;
            }
            let x = self.pick_non_scalar(&f_idem, &block)?;
            let min_poly = self.relative_min_poly(&f_idem, &x)?;
            let mut roots = Vec::new();
            for v in 0..p {
                let lambda = self.field.integer(v as i64);
                if min_poly.eval(&lambda)?.is_zero() {
                    roots.push(lambda);
                }
            }
            if roots.len() != min_poly.degree().unwrap_or(0) {
                return Err(Error::StructureCheck(
                    "minimal polynomial of a Frobenius-fixed element failed to split".into(),
                ));
            }
            for lambda in &roots {
                // Lagrange idempotent prod_{mu != lambda} (x - mu f)/(lambda - mu)
                let mut e = f_idem.clone();
                for mu in &roots {
                    if mu == lambda {
                        continue;
                    }
                    let factor = self.sub(&x, &self.scale(mu, &f_idem)?)?;
                    let denom = lambda.sub(mu)?.inverse()?;
                    e = self.scale(&denom, &self.mul(&e, &factor)?)?;
                }
                let sub_block = block
                    .iter()
                    .map(|b| self.mul(&e, b))
                    .collect::<Result<Vec<_>>>()?;
                queue.push((e, sub_block));
            }
        }

        final_idems.sort_by(|a, b| {
            for (x, y) in a.0.iter().zip(&b.0) {
                let c = x.canonical_cmp(y);
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        });

        // Factor degrees are the dimensions of the blocks e_i * A.
        let mut degrees = Vec::new();
        for e in &final_idems {
            let images = (0..self.dim)
                .map(|j| self.mul(e, &self.basis_elem(j)))
                .collect::<Result<Vec<_>>>()?;
            degrees.push(self.span_dim(&images)?);
        }
        if degrees.iter().any(|&d| d != 1) {
            degrees.sort_unstable();
            return Err(Error::DoesNotSplit {
                factor_degrees: degrees,
            });
        }
        Ok(final_idems)
    }

    fn basis_is_idempotent_family(&self) -> Result<bool> {
        if self.unit.iter().any(|u| !u.is_one()) {
            return Ok(false);
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let cij = self.c(i, j);
                for (k, v) in cij.iter().enumerate() {
                    let expected_one = i == j && j == k;
                    if expected_one != v.is_one() && !(v.is_zero() && !expected_one) {
                        return Ok(false);
                    }
                    if expected_one && !v.is_one() {
                        return Ok(false);
                    }
                    if !expected_one && !v.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn span_dim(&self, elems: &[AlgebraElem]) -> Result<usize> {
        let mut span = RowSpan::new(self.dim);
        for e in elems {
            span.insert(e.0.clone())?;
        }
        Ok(span.dim())
    }

    fn pick_non_scalar(&self, f_idem: &AlgebraElem, block: &[AlgebraElem]) -> Result<AlgebraElem> {
        let mut span = RowSpan::new(self.dim);
        span.insert(f_idem.0.clone())?;
        for b in block {
            if !span.contains(&b.0)? {
                return Ok(b.clone());
            }
        }
        Err(Error::StructureCheck(
            "block of dimension > 1 with no independent basis vector".into(),
        ))
    }

    /// Minimal polynomial of x inside the block with identity f.
    fn relative_min_poly(&self, f_idem: &AlgebraElem, x: &AlgebraElem) -> Result<UniPoly> {
        let mut span = RowSpan::new(self.dim);
        let mut powers = vec![f_idem.clone()];
        span.insert(f_idem.0.clone())?;
        let mut current = f_idem.clone();
        loop {
            current = self.mul(&current, x)?;
            if !span.insert(current.0.clone())? {
                break;
            }
            powers.push(current.clone());
        }
        // current = x^d is a combination of lower powers: solve for it
        let cols = Matrix::from_rows(
            &self.field,
            (0..self.dim)
                .map(|k| powers.iter().map(|pw| pw.0[k].clone()).collect())
                .collect(),
        )?;
        let combo = cols
            .solve(&current.0)?
            .ok_or_else(|| Error::StructureCheck("minimal polynomial solve failed".into()))?;
        let mut coeffs: Vec<FieldElem> = combo.into_iter().map(|c| c.neg()).collect();
        coeffs.push(self.field.one());
        UniPoly::from_coeffs(&self.field, coeffs)
    }

    /// Least r <= r_max for which some r-tuple generates. Tuples are scanned
    /// in lexicographic order, short-circuiting on the first success;
    /// exhaustive while q^(n r) stays within the budget, then seeded random
    /// trials whose positive answers are only upper bounds.
    pub fn min_generators(
        &self,
        r_max: usize,
        budget: u64,
        seed: u64,
    ) -> Result<MinGeneratorsReport> {
        let q = self.field.size().ok_or(Error::InfiniteField)?;
        let pr = self.prime.as_ref().expect("finite field has prime repr");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut levels = Vec::new();
        let mut witness: Option<Vec<AlgebraElem>> = None;
        let mut min = None;
        for r in 1..=r_max {
            let total = (q as u128).checked_pow((self.dim * r) as u32);
            let exhaustive = total.is_some_and(|t| t <= budget as u128);
            let mut found = false;
            let mut checked = 0u64;
            let mut tuple = vec![vec![0u64; self.dim]; r];
            if exhaustive {
                let total = total.unwrap();
                let mut code = 0u128;
                while code < total {
                    decode_tuple(code, q, &mut tuple);
                    checked += 1;
                    if pr.closure_dim(&tuple) == self.dim {
                        found = true;
                        break;
                    }
                    code += 1;
                }
            } else {
                for _ in 0..RANDOM_TRIALS {
                    for row in tuple.iter_mut() {
                        for v in row.iter_mut() {
                            *v = rng.gen_range(0..q);
                        }
                    }
                    checked += 1;
                    if pr.closure_dim(&tuple) == self.dim {
                        found = true;
                        break;
                    }
                }
            }
            levels.push(MinGenLevel {
                r,
                exhaustive,
                tuples_checked: checked,
                found,
            });
            if found {
                min = Some(r);
                witness = Some(
                    tuple
                        .iter()
                        .map(|row| {
                            AlgebraElem(row.iter().map(|&v| self.field.integer(v as i64)).collect())
                        })
                        .collect(),
                );
                break;
            }
        }
        let exact = match min {
            Some(r) => levels.iter().take(r - 1).all(|l| l.exhaustive),
            None => levels.iter().all(|l| l.exhaustive),
        };
        Ok(MinGeneratorsReport {
            min,
            exact,
            levels,
            witness,
        })
    }
}

/// Lexicographic decode: the first coordinate of the first generator is
/// the most significant digit, so ascending codes scan tuples in reading
/// order.
fn decode_tuple(mut code: u128, q: u64, tuple: &mut [Vec<u64>]) {
    for row in tuple.iter_mut().rev() {
        for v in row.iter_mut().rev() {
            *v = (code % q as u128) as u64;
            code /= q as u128;
        }
    }
}

/// Outcome of [`FiniteAlgebra::min_generators`]. `exact` is true when every
/// level below the answer was searched exhaustively, so the answer is the
/// true minimum rather than an upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinGeneratorsReport {
    pub min: Option<usize>,
    pub exact: bool,
    pub levels: Vec<MinGenLevel>,
    pub witness: Option<Vec<AlgebraElem>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinGenLevel {
    pub r: usize,
    pub exhaustive: bool,
    pub tuples_checked: u64,
    pub found: bool,
}

/// r x n coordinate matrix: row l holds the coordinates of generator l in
/// the split algebra F^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMatrix {
    field: FieldDescriptor,
    entries: Vec<Vec<FieldElem>>,
    cols: usize,
}

impl GenMatrix {
    pub fn new(field: &FieldDescriptor, rows: Vec<Vec<FieldElem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if cols == 0 {
            return Err(Error::InvalidInput(
                "matrix needs at least one column".into(),
            ));
        }
        for row in &rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for x in row {
                if x.descriptor() != *field {
                    return Err(Error::DescriptorMismatch {
                        expected: format!("{field}"),
                        found: format!("{}", x.descriptor()),
                    });
                }
            }
        }
        Ok(GenMatrix {
            field: field.clone(),
            entries: rows,
            cols,
        })
    }

    pub fn from_integers(field: &FieldDescriptor, rows: &[Vec<i64>]) -> Result<Self> {
        GenMatrix::new(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.integer(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &FieldElem {
        &self.entries[row][col]
    }

    pub fn row(&self, row: usize) -> &[FieldElem] {
        &self.entries[row]
    }

    pub fn column(&self, col: usize) -> Vec<FieldElem> {
        self.entries.iter().map(|r| r[col].clone()).collect()
    }

    /// Rows as elements of the split algebra F^n.
    pub fn row_elems(&self) -> Vec<AlgebraElem> {
        self.entries.iter().cloned().map(AlgebraElem).collect()
    }

    pub fn permute_columns(&self, perm: &[usize]) -> Result<GenMatrix> {
        if perm.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: perm.len(),
            });
        }
        let rows = self
            .entries
            .iter()
            .map(|r| perm.iter().map(|&p| r[p].clone()).collect())
            .collect();
        GenMatrix::new(&self.field, rows)
    }

    /// Column pairs (i, j), i < j, that no row separates.
    pub fn violated_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.cols {
            for j in i + 1..self.cols {
                let separated = self.entries.iter().any(|row| row[i] != row[j]);
                if !separated {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// For every column pair some row takes distinct values there. Over the
    /// split algebra this decides generation of F^n by the rows.
    pub fn split_generation_criterion(&self) -> bool {
        self.violated_pairs().is_empty()
    }

    /// Polynomials p_1, ..., p_n with p_i(column j) = delta_ij, built as
    /// products of the linear forms (a_ki - a_kj)^(-1) (x_k - a_kj) over the
    /// first separating row k for each pair.
    pub fn separating_polynomials(&self) -> Result<Vec<MultiPoly>> {
        let violated = self.violated_pairs();
        if !violated.is_empty() {
            return Err(Error::SeparationFails { violated });
        }
        let r = self.rows();
        let n = self.cols;
        let mut polys = Vec::with_capacity(n);
        for i in 0..n {
            let mut p = MultiPoly::constant(&self.field, r, self.field.one())?;
            for j in 0..n {
                if j == i {
                    continue;
                }
                let k = (0..r)
                    .find(|&k| self.entries[k][i] != self.entries[k][j])
                    .expect("criterion verified");
                let diff_inv = self.entries[k][i].sub(&self.entries[k][j])?.inverse()?;
                let xk = MultiPoly::variable(&self.field, r, k)?;
                let shift = MultiPoly::constant(&self.field, r, self.entries[k][j].clone())?;
                let linear = xk.sub(&shift)?.scale(&diff_inv)?;
                p = p.mul(&linear)?;
            }
            polys.push(p);
        }
        Ok(polys)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime_field(p).unwrap()
    }

    fn upoly(field: &FieldDescriptor, coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(field, coeffs.iter().map(|&c| field.integer(c)).collect()).unwrap()
    }

    fn elem(a: &FiniteAlgebra, coords: &[i64]) -> AlgebraElem {
        a.element(coords.iter().map(|&v| a.field().integer(v)).collect())
            .unwrap()
    }

    #[test]
    fn split_algebra_structure() {
        let f2 = fp(2);
        let a = FiniteAlgebra::split(&f2, 2).unwrap();
        assert_eq!(a.c(0, 0), elem(&a, &[1, 0]).coords());
        assert_eq!(a.c(1, 1), elem(&a, &[0, 1]).coords());
        assert_eq!(a.c(0, 1), elem(&a, &[0, 0]).coords());

        let q = FieldDescriptor::rationals();
        let one_dim = FiniteAlgebra::split(&q, 1).unwrap();
        assert_eq!(one_dim.dim(), 1);
        assert!(one_dim.is_etale().unwrap());

        // unit law over F5^3
        let f5 = fp(5);
        let a = FiniteAlgebra::split(&f5, 3).unwrap();
        let x = elem(&a, &[1, 2, 3]);
        assert_eq!(a.mul(&x, &a.unit_elem()).unwrap(), x);
    }

    #[test]
    fn monogenic_structure() {
        let f5 = fp(5);
        let a = FiniteAlgebra::monogenic(&upoly(&f5, &[1, 0, 1])).unwrap(); // z^2 + 1
        let z = a.basis_elem(1);
        assert_eq!(a.mul(&z, &z).unwrap(), elem(&a, &[4, 0])); // z^2 = -1 = 4

        let f3 = fp(3);
        let b = FiniteAlgebra::monogenic(&upoly(&f3, &[0, -1, 1])).unwrap(); // z^2 - z
        let z = b.basis_elem(1);
        assert_eq!(b.mul(&z, &z).unwrap(), z); // idempotent generator

        let f2 = fp(2);
        let c = FiniteAlgebra::monogenic(&upoly(&f2, &[1, 0, 0, 1])).unwrap(); // z^3 - 1 = z^3 + 1
        let z2 = c.basis_elem(2);
        assert_eq!(c.mul(&z2, &z2).unwrap(), c.basis_elem(1)); // z^4 = z

        // non-monic rejected
        assert!(FiniteAlgebra::monogenic(&upoly(&f5, &[1, 2])).is_err());
    }

    #[test]
    fn bad_structure_constants_rejected() {
        let f2 = fp(2);
        // e0 is not a unit here: e0*e1 = 0 but the unit claims to be e0
        let constants = vec![
            vec![vec![f2.one(), f2.zero()], vec![f2.zero(), f2.zero()]],
            vec![vec![f2.zero(), f2.zero()], vec![f2.zero(), f2.one()]],
        ];
        let err = FiniteAlgebra::new(&f2, constants, vec![f2.one(), f2.zero()]);
        assert!(matches!(err, Err(Error::StructureCheck(_))));
    }

    #[test]
    fn trace_forms() {
        let f5 = fp(5);
        let split = FiniteAlgebra::split(&f5, 2).unwrap();
        let tf = split.trace_form().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { f5.one() } else { f5.zero() };
                assert_eq!(*tf.get(i, j), expected);
            }
        }

        let f3 = fp(3);
        let dual = FiniteAlgebra::monogenic(&upoly(&f3, &[0, 0, 1])).unwrap(); // z^2
        let tf = dual.trace_form().unwrap();
        assert_eq!(*tf.get(0, 0), f3.integer(2));
        assert!(tf.get(0, 1).is_zero() && tf.get(1, 0).is_zero() && tf.get(1, 1).is_zero());

        // F5[z]/(z^2 - c): [[2, 0], [0, 2c]]
        for c in 0..5i64 {
            let a = FiniteAlgebra::monogenic(&upoly(&f5, &[-c, 0, 1])).unwrap();
            let tf = a.trace_form().unwrap();
            assert_eq!(*tf.get(0, 0), f5.integer(2));
            assert_eq!(*tf.get(1, 1), f5.integer(2 * c));
            assert!(tf.get(0, 1).is_zero());
        }
    }

    #[test]
    fn etale_detection() {
        let f5 = fp(5);
        assert!(FiniteAlgebra::monogenic(&upoly(&f5, &[-1, 0, 1]))
            .unwrap()
            .is_etale()
            .unwrap());
        let f3 = fp(3);
        assert!(!FiniteAlgebra::monogenic(&upoly(&f3, &[0, 0, 1]))
            .unwrap()
            .is_etale()
            .unwrap());
        let f2 = fp(2);
        assert!(FiniteAlgebra::split(&f2, 3).unwrap().is_etale().unwrap());
    }

    #[test]
    fn etale_iff_discriminant_nonzero_exhaustive() {
        // monogenic quadratics and cubics over F2, F3, F5
        for p in [2u64, 3, 5] {
            let field = fp(p);
            for deg in 2..=3usize {
                let count = (p as usize).pow(deg as u32);
                for code in 0..count {
                    let mut coeffs = Vec::new();
                    let mut c = code;
                    for _ in 0..deg {
                        coeffs.push(field.integer((c % p as usize) as i64));
                        c /= p as usize;
                    }
                    coeffs.push(field.one());
                    let f = UniPoly::from_coeffs(&field, coeffs).unwrap();
                    let alg = FiniteAlgebra::monogenic(&f).unwrap();
                    assert_eq!(
                        alg.is_etale().unwrap(),
                        !f.discriminant().unwrap().is_zero(),
                        "p={p} f={f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn closure_examples() {
        let f5 = fp(5);
        let a = FiniteAlgebra::split(&f5, 3).unwrap();
        // 1, g, g^2 independent for g = (0,1,2)
        assert_eq!(a.subalgebra_closure(&[elem(&a, &[0, 1, 2])]).unwrap().0, 3);
        let f2 = fp(2);
        let b = FiniteAlgebra::split(&f2, 3).unwrap();
        assert_eq!(b.subalgebra_closure(&[elem(&b, &[0, 0, 1])]).unwrap().0, 2);
        assert_eq!(b.subalgebra_closure(&[]).unwrap().0, 1);
    }

    #[test]
    fn generates_examples() {
        let f5 = fp(5);
        let a = FiniteAlgebra::split(&f5, 3).unwrap();
        assert!(a.generates(&[elem(&a, &[0, 1, 2])]).unwrap());
        let f2 = fp(2);
        let b = FiniteAlgebra::split(&f2, 3).unwrap();
        assert!(!b.generates(&[elem(&b, &[0, 0, 1])]).unwrap());
        assert!(b
            .generates(&[elem(&b, &[0, 0, 1]), elem(&b, &[0, 1, 0])])
            .unwrap());
    }

    #[test]
    fn generates_matches_generic_closure() {
        // the compiled prime-field path and the generic path agree
        let f3 = fp(3);
        let a = FiniteAlgebra::split(&f3, 3).unwrap();
        for code in 0..27u64 {
            let coords: Vec<i64> = vec![
                (code % 3) as i64,
                (code / 3 % 3) as i64,
                (code / 9 % 3) as i64,
            ];
            let g = elem(&a, &coords);
            let via_fast = a.generates(std::slice::from_ref(&g)).unwrap();
            let via_closure = a.subalgebra_closure(std::slice::from_ref(&g)).unwrap().0 == 3;
            assert_eq!(via_fast, via_closure);
        }
    }

    #[test]
    fn criterion_examples() {
        let f2 = fp(2);
        let m = GenMatrix::from_integers(&f2, &[vec![0, 0, 1]]).unwrap();
        assert!(!m.split_generation_criterion());
        assert_eq!(m.violated_pairs(), vec![(0, 1)]);

        let m = GenMatrix::from_integers(&f2, &[vec![0, 0, 1], vec![0, 1, 0]]).unwrap();
        assert!(m.split_generation_criterion());

        let f7 = fp(7);
        let m = GenMatrix::from_integers(&f7, &[vec![1, 2, 1], vec![3, 4, 3]]).unwrap();
        assert!(!m.split_generation_criterion()); // columns 0 and 2 equal
    }

    #[test]
    fn criterion_agrees_with_closure_small_exhaustive() {
        for p in [2u64, 3] {
            let field = fp(p);
            for n in 1..=3usize {
                let alg = FiniteAlgebra::split(&field, n).unwrap();
                for r in 1..=2usize {
                    let total = (p as usize).pow((n * r) as u32);
                    for code in 0..total {
                        let mut c = code;
                        let mut rows = Vec::new();
                        for _ in 0..r {
                            let mut row = Vec::new();
                            for _ in 0..n {
                                row.push((c % p as usize) as i64);
                                c /= p as usize;
                            }
                            rows.push(row);
                        }
                        let m = GenMatrix::from_integers(&field, &rows).unwrap();
                        assert_eq!(
                            m.split_generation_criterion(),
                            alg.generates(&m.row_elems()).unwrap(),
                            "p={p} n={n} matrix={rows:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn separating_polynomials_example() {
        let f5 = fp(5);
        // one row (1, 3): p_1 = 2 x_1 + 4
        let m = GenMatrix::from_integers(&f5, &[vec![1, 3]]).unwrap();
        let polys = m.separating_polynomials().unwrap();
        assert_eq!(polys[0].eval(&[f5.integer(1)]).unwrap(), f5.one());
        assert_eq!(polys[0].eval(&[f5.integer(3)]).unwrap(), f5.zero());
        let expected = MultiPoly::variable(&f5, 1, 0)
            .unwrap()
            .scale(&f5.integer(2))
            .unwrap()
            .add(&MultiPoly::constant(&f5, 1, f5.integer(4)).unwrap())
            .unwrap();
        assert_eq!(polys[0], expected);

        // n = 1: empty product
        let m = GenMatrix::from_integers(&f5, &[vec![2]]).unwrap();
        let polys = m.separating_polynomials().unwrap();
        assert_eq!(polys[0].eval(&[f5.integer(2)]).unwrap(), f5.one());

        // failing criterion reports the violated pairs
        let m = GenMatrix::from_integers(&f5, &[vec![1, 1]]).unwrap();
        assert!(matches!(
            m.separating_polynomials(),
            Err(Error::SeparationFails { .. })
        ));
    }

    #[test]
    fn separating_polynomials_delta_property() {
        let f2 = fp(2);
        let m = GenMatrix::from_integers(&f2, &[vec![0, 0, 1], vec![0, 1, 0]]).unwrap();
        let polys = m.separating_polynomials().unwrap();
        for (i, p) in polys.iter().enumerate() {
            for j in 0..3 {
                let col = m.column(j);
                let expected = if i == j { f2.one() } else { f2.zero() };
                assert_eq!(p.eval(&col).unwrap(), expected, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn separating_polynomials_randomized() {
        // 200 random passing matrices over F5 and F7
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 200 {
            let p = if rng.gen_bool(0.5) { 5 } else { 7 };
            let field = fp(p);
            let n = rng.gen_range(2..5usize);
            let r = rng.gen_range(1..4usize);
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..n).map(|_| rng.gen_range(0..p as i64)).collect())
                .collect();
            let m = GenMatrix::from_integers(&field, &rows).unwrap();
            if !m.split_generation_criterion() {
                continue;
            }
            done += 1;
            let polys = m.separating_polynomials().unwrap();
            for (i, poly) in polys.iter().enumerate() {
                for j in 0..n {
                    let expected = if i == j { field.one() } else { field.zero() };
                    assert_eq!(poly.eval(&m.column(j)).unwrap(), expected);
                }
            }
            // constructive converse: the rows generate
            let alg = FiniteAlgebra::split(&field, n).unwrap();
            assert!(alg.generates(&m.row_elems()).unwrap());
        }
    }

    #[test]
    fn min_generators_examples() {
        let f2 = fp(2);
        let a = FiniteAlgebra::split(&f2, 3).unwrap();
        let rep = a.min_generators(3, 1_000_000, 0).unwrap();
        assert_eq!(rep.min, Some(2));
        assert!(rep.exact);

        let f5 = fp(5);
        let b = FiniteAlgebra::split(&f5, 2).unwrap();
        let rep = b.min_generators(2, 1_000_000, 0).unwrap();
        assert_eq!(rep.min, Some(1));
        assert!(rep.exact);

        // no tuple of bounded length generates when r_max is too small
        let big = FiniteAlgebra::split(&f2, 3).unwrap();
        let rep = big.min_generators(1, 1_000_000, 0).unwrap();
        assert_eq!(rep.min, None);
        assert!(rep.exact);

        // infinite fields are rejected
        let q = FieldDescriptor::rationals();
        let c = FiniteAlgebra::split(&q, 2).unwrap();
        assert!(matches!(
            c.min_generators(1, 100, 0),
            Err(Error::InfiniteField)
        ));
    }

    #[test]
    fn primitive_idempotents_split() {
        let f5 = fp(5);
        let a = FiniteAlgebra::split(&f5, 3).unwrap();
        let idems = a.primitive_idempotents().unwrap();
        assert_eq!(idems.len(), 3);
        for (i, e) in idems.iter().enumerate() {
            assert_eq!(*e, a.basis_elem(i));
        }
    }

    #[test]
    fn primitive_idempotents_monogenic() {
        let f5 = fp(5);
        let a = FiniteAlgebra::monogenic(&upoly(&f5, &[1, 0, 1])).unwrap(); // z^2 + 1
        let idems = a.primitive_idempotents().unwrap();

        // brute-force oracle: solve e^2 = e over all 25 elements
        let mut expected = Vec::new();
        for b in 0..5i64 {
            for c in 0..5i64 {
                let e = elem(&a, &[b, c]);
                if a.mul(&e, &e).unwrap() == e && e != a.zero_elem() && e != a.unit_elem() {
                    expected.push(e);
                }
            }
        }
        assert_eq!(expected.len(), 2);
        let sum = a.add(&expected[0], &expected[1]).unwrap();
        assert_eq!(sum, a.unit_elem());
        for e in &idems {
            assert!(expected.contains(e));
        }
        // frozen values: 3 + z and 3 + 4z
        assert_eq!(idems[0], elem(&a, &[3, 1]));
        assert_eq!(idems[1], elem(&a, &[3, 4]));
    }

    #[test]
    fn primitive_idempotents_nonsplit_reports_degrees() {
        let f3 = fp(3);
        let a = FiniteAlgebra::monogenic(&upoly(&f3, &[1, 0, 1])).unwrap(); // z^2 + 1 irreducible
        assert_eq!(
            a.primitive_idempotents(),
            Err(Error::DoesNotSplit {
                factor_degrees: vec![2]
            })
        );
        // non-étale rejected before splitting
        let b = FiniteAlgebra::monogenic(&upoly(&f3, &[0, 0, 1])).unwrap();
        assert_eq!(b.primitive_idempotents(), Err(Error::NotEtale));
    }

    #[test]
    fn primitive_idempotents_mixed_product() {
        // F5[z]/(z^2+1) x F5 has three factors, all of degree 1
        let f5 = fp(5);
        let f = upoly(&f5, &[1, 0, 1]);
        let g = upoly(&f5, &[0, 1]); // z
        let prod = f.mul(&g).unwrap(); // z^3 + z, distinct roots 0, 2, 3
        let a = FiniteAlgebra::monogenic(&prod).unwrap();
        let idems = a.primitive_idempotents().unwrap();
        assert_eq!(idems.len(), 3);
        let mut sum = a.zero_elem();
        for e in &idems {
            assert_eq!(a.mul(e, e).unwrap(), *e);
            sum = a.add(&sum, e).unwrap();
        }
        assert_eq!(sum, a.unit_elem());
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(a.mul(&idems[i], &idems[j]).unwrap(), a.zero_elem());
                }
            }
        }
    }

    #[test]
    fn automorphism_rigidity_small() {
        // every unital algebra automorphism of split F^n permutes the
        // primitive idempotents; there are exactly n! of them
        for (p, n) in [(2u64, 2usize), (2, 3), (3, 2), (3, 3)] {
            let field = fp(p);
            let alg = FiniteAlgebra::split(&field, n).unwrap();
            let idems = alg.primitive_idempotents().unwrap();
            let total = (p as usize).pow((n * n) as u32);
            let mut automorphisms = 0usize;
            for code in 0..total {
                let mut c = code;
                let mut rows = Vec::with_capacity(n);
                for _ in 0..n {
                    let mut row = Vec::with_capacity(n);
                    for _ in 0..n {
                        row.push(field.integer((c % p as usize) as i64));
                        c /= p as usize;
                    }
                    rows.push(row);
                }
                let m = Matrix::from_rows(&field, rows.clone()).unwrap();
                if m.determinant().unwrap().is_zero() {
                    continue;
                }
                // phi(e_j) = column j of the matrix; phi must be unital and
                // multiplicative on the basis
                let image = |j: usize| AlgebraElem((0..n).map(|k| rows[k][j].clone()).collect());
                let unit_img: AlgebraElem = {
                    let mut acc = alg.zero_elem();
                    for j in 0..n {
                        acc = alg.add(&acc, &image(j)).unwrap();
                    }
                    acc
                };
                if unit_img != alg.unit_elem() {
                    continue;
                }
                let mut is_hom = true;
                'outer: for i in 0..n {
                    for j in 0..n {
                        let lhs = alg.mul(&image(i), &image(j)).unwrap();
                        let rhs = if i == j { image(i) } else { alg.zero_elem() };
                        if lhs != rhs {
                            is_hom = false;
                            break 'outer;
                        }
                    }
                }
                if !is_hom {
                    continue;
                }
                automorphisms += 1;
                for j in 0..n {
                    assert!(idems.contains(&image(j)));
                }
            }
            let factorial: usize = (1..=n).product();
            assert_eq!(automorphisms, factorial, "p={p} n={n}");
        }
    }

    #[test]
    fn closure_monotone_randomized() {
        let f5 = fp(5);
        let a = FiniteAlgebra::split(&f5, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let gens: Vec<AlgebraElem> = (0..2)
                .map(|_| elem(&a, &(0..4).map(|_| rng.gen_range(0..5)).collect::<Vec<_>>()))
                .collect();
            let extra = elem(&a, &(0..4).map(|_| rng.gen_range(0..5)).collect::<Vec<_>>());
            let d1 = a.subalgebra_closure(&gens).unwrap().0;
            let mut more = gens.clone();
            more.push(extra);
            let d2 = a.subalgebra_closure(&more).unwrap().0;
            assert!(d2 >= d1);
        }
    }
}
