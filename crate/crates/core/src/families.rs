//! Finitely presented coordinate rings with sign actions: the sphere ring
//! z_1^2 + ... + z_r^2 = 1 and the deleted-quadric ring x.y = 1, their
//! invariant subrings through declared even monomials, symbolic subalgebra
//! certificates by exact division, point enumeration over small extension
//! fields, and the fiberwise generation scan.
//!
//! The scan is a falsifier, not a proof: it checks the rank-2 fiber at every
//! closed point it can reach within the degree bound and reports exactly
//! what was covered.

use crate::algebra::GenMatrix;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElem};
use crate::gfq::Gfq;
use crate::poly::MultiPoly;

/// Finitely presented ring: named variables, nonzero relations, and an
/// optional sign action (true = the variable is negated). The action must
/// send each relation to plus or minus a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedRing {
    field: FieldDescriptor,
    var_names: Vec<String>,
    relations: Vec<MultiPoly>,
    action: Option<Vec<bool>>,
}

impl PresentedRing {
    pub fn new(
        field: &FieldDescriptor,
        var_names: Vec<String>,
        relations: Vec<MultiPoly>,
        action: Option<Vec<bool>>,
    ) -> Result<Self> {
        let nvars = var_names.len();
        for rel in &relations {
            if rel.is_zero() {
                return Err(Error::InvalidInput("zero relation".into()));
            }
            if rel.num_vars() != nvars {
                return Err(Error::LengthMismatch {
                    expected: nvars,
                    found: rel.num_vars(),
                });
            }
            if rel.field() != field {
                return Err(Error::DescriptorMismatch {
                    expected: format!("{field}"),
                    found: format!("{}", rel.field()),
                });
            }
        }
        if let Some(signs) = &action {
            if signs.len() != nvars {
                return Err(Error::LengthMismatch {
                    expected: nvars,
                    found: signs.len(),
                });
            }
            for rel in &relations {
                let image = rel.apply_signs(signs)?;
                let fits = relations.iter().any(|r| image == *r || image == r.neg());
                if !fits {
                    return Err(Error::InvalidInput(
                        "the sign action does not preserve the relation ideal".into(),
                    ));
                }
            }
        }
        Ok(PresentedRing {
            field: field.clone(),
            var_names,
            relations,
            action,
        })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn relations(&self) -> &[MultiPoly] {
        &self.relations
    }

    pub fn action(&self) -> Option<&[bool]> {
        self.action.as_deref()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    pub fn variable(&self, index: usize) -> Result<MultiPoly> {
        MultiPoly::variable(&self.field, self.num_vars(), index)
    }
}

/// The sphere ring S = k[z_1..z_r]/(z_1^2 + ... + z_r^2 - 1) with the sign
/// action negating every variable, together with the degree-2 monomial
/// generators z_i z_j of the invariant subring R (which is never presented
/// directly; it is reached through its residue fields and these scalars).
#[derive(Clone, Debug)]
pub struct ChaseRings {
    pub sphere: PresentedRing,
    pub invariant_generators: Vec<MultiPoly>,
}

pub fn chase_rings(r: usize, field: &FieldDescriptor) -> Result<ChaseRings> {
    if r == 0 {
        return Err(Error::InvalidInput("need at least one variable".into()));
    }
    let names: Vec<String> = (1..=r).map(|i| format!("z{i}")).collect();
    let mut relation = MultiPoly::constant(field, r, field.integer(-1))?;
    for i in 0..r {
        let zi = MultiPoly::variable(field, r, i)?;
        relation = relation.add(&zi.mul(&zi)?)?;
    }
    let sphere = PresentedRing::new(field, names, vec![relation], Some(vec![true; r]))?;
    let mut invariant_generators = Vec::new();
    for i in 0..r {
        for j in i..r {
            let mut exps = vec![0u32; r];
            exps[i] += 1;
            exps[j] += 1;
            invariant_generators.push(MultiPoly::monomial_term(field, r, exps, field.one())?);
        }
    }
    Ok(ChaseRings {
        sphere,
        invariant_generators,
    })
}

/// The deleted-quadric coordinate ring T = k[x_1..x_r, y_1..y_r] modulo
/// 1 - sum x_i y_i, with every variable negated by the action. Its even
/// subring is the coordinate ring of the deleted quadric of dimension 2r-1.
pub fn dq_ring(r: usize, field: &FieldDescriptor) -> Result<PresentedRing> {
    if r == 0 {
        return Err(Error::InvalidInput(
            "need at least one variable pair".into(),
        ));
    }
    let mut names: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
    names.extend((1..=r).map(|i| format!("y{i}")));
    let n = 2 * r;
    let mut relation = MultiPoly::constant(field, n, field.one())?;
    for i in 0..r {
        let xi = MultiPoly::variable(field, n, i)?;
        let yi = MultiPoly::variable(field, n, r + i)?;
        relation = relation.sub(&xi.mul(&yi)?)?;
    }
    PresentedRing::new(field, names, vec![relation], Some(vec![true; n]))
}

/// The substitution x_j = z_(2j-1) + i z_(2j), y_j = z_(2j-1) - i z_(2j)
/// identifying the sphere ring with the deleted-quadric ring when -1 has a
/// square root i. `forward` expresses the x, y variables in the z
/// variables; `inverse` goes back. The identity sum x_j y_j - 1 =
/// sum z_i^2 - 1 is verified symbolically at construction.
#[derive(Clone, Debug)]
pub struct ChangeOfVariables {
    pub i_value: FieldElem,
    pub forward: Vec<MultiPoly>,
    pub inverse: Vec<MultiPoly>,
    pub transformed_relation: MultiPoly,
}

/// Least square root of -1 in a prime field, scanning residues in order.
fn sqrt_of_minus_one(field: &FieldDescriptor) -> Result<FieldElem> {
    let p = field.size().ok_or(Error::InfiniteField)?;
    let minus_one = field.integer(-1);
    for v in 0..p {
        let x = field.integer(v as i64);
        if x.mul(&x)? == minus_one {
            return Ok(x);
        }
    }
    Err(Error::MinusOneNotSquare)
}

pub fn remark71_change_of_variables(
    r: usize,
    field: &FieldDescriptor,
) -> Result<ChangeOfVariables> {
    if r == 0 || !r.is_multiple_of(2) {
        return Err(Error::InvalidInput(
            "the change of variables needs an even number of sphere variables".into(),
        ));
    }
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let i_value = sqrt_of_minus_one(field)?;
    let m = r / 2;

    // forward: x_j, y_j as polynomials in z_1..z_r
    let mut forward = Vec::with_capacity(r);
    for j in 0..m {
        let z_odd = MultiPoly::variable(field, r, 2 * j)?;
        let z_even = MultiPoly::variable(field, r, 2 * j + 1)?;
        forward.push(z_odd.add(&z_even.scale(&i_value)?)?);
    }
    for j in 0..m {
        let z_odd = MultiPoly::variable(field, r, 2 * j)?;
        let z_even = MultiPoly::variable(field, r, 2 * j + 1)?;
        forward.push(z_odd.sub(&z_even.scale(&i_value)?)?);
    }

    // inverse: z_(2j-1) = (x_j + y_j)/2, z_(2j) = (x_j - y_j)/(2i)
    let half = field.integer(2).inverse()?;
    let half_over_i = half.div(&i_value)?;
    let mut inverse = Vec::with_capacity(r);
    for j in 0..m {
        let xj = MultiPoly::variable(field, r, j)?;
        let yj = MultiPoly::variable(field, r, m + j)?;
        inverse.push(xj.add(&yj)?.scale(&half)?);
        inverse.push(xj.sub(&yj)?.scale(&half_over_i)?);
    }
    // interleave: inverse currently pushes z_(2j-1), z_(2j) in order already
    // (two per j), which matches variable order z1, z2, z3, ...

    // verify: substituting forward into sum x_j y_j - 1 gives sum z_i^2 - 1
    let dq = dq_ring(m, field)?;
    let transformed_relation = {
        let dq_relation = &dq.relations()[0]; // 1 - sum x y
        let image = dq_relation.substitute(&forward)?;
        image.neg() // sum z^2 - 1
    };
    let sphere = chase_rings(r, field)?.sphere;
    if transformed_relation != sphere.relations()[0] {
        return Err(Error::StructureCheck(
            "change of variables failed to transform the relation".into(),
        ));
    }
    // verify the roundtrip: inverse(forward) is the identity on variables
    for (idx, inv) in inverse.iter().enumerate() {
        let back = inv.substitute(&forward)?;
        if back != MultiPoly::variable(field, r, idx)? {
            return Err(Error::StructureCheck(
                "change of variables is not invertible".into(),
            ));
        }
    }
    Ok(ChangeOfVariables {
        i_value,
        forward,
        inverse,
        transformed_relation,
    })
}

/// Difference/sum coordinates for two-column matrices: z_l = first column
/// minus second, w_l = first plus second. The matrix is separated exactly
/// when z != 0, and swapping the two columns negates z and fixes w.
pub fn coordinate_change_n2(m: &GenMatrix) -> Result<(Vec<FieldElem>, Vec<FieldElem>)> {
    if m.cols() != 2 {
        return Err(Error::InvalidInput("needs a two-column matrix".into()));
    }
    if m.field().characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let mut z = Vec::with_capacity(m.rows());
    let mut w = Vec::with_capacity(m.rows());
    for l in 0..m.rows() {
        z.push(m.entry(l, 0).sub(m.entry(l, 1))?);
        w.push(m.entry(l, 0).add(m.entry(l, 1))?);
    }
    Ok((z, w))
}

/// Inverse of [`coordinate_change_n2`].
pub fn matrix_from_zw(
    field: &FieldDescriptor,
    z: &[FieldElem],
    w: &[FieldElem],
) -> Result<GenMatrix> {
    if z.len() != w.len() {
        return Err(Error::LengthMismatch {
            expected: z.len(),
            found: w.len(),
        });
    }
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let half = field.integer(2).inverse()?;
    let rows = z
        .iter()
        .zip(w)
        .map(|(zi, wi)| Ok(vec![wi.add(zi)?.mul(&half)?, wi.sub(zi)?.mul(&half)?]))
        .collect::<Result<Vec<_>>>()?;
    GenMatrix::new(field, rows)
}

/// Building block of a certificate expression: a declared generator or a
/// previously certified target variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertFactor {
    Generator(usize),
    Certified(usize),
}

/// One summand scalar * product of factors. The scalar monomial must be
/// invariant under the ring's action: it stands for an element of the
/// invariant base ring.
#[derive(Clone, Debug)]
pub struct CertTerm {
    pub scalar_exponents: Vec<u32>,
    pub factors: Vec<CertFactor>,
}

/// Claim that the target variable equals the expression inside the
/// subalgebra generated by the generators over the invariant base.
#[derive(Clone, Debug)]
pub struct CertificateClaim {
    pub target: usize,
    pub terms: Vec<CertTerm>,
}

#[derive(Clone, Debug)]
pub struct ClaimOutcome {
    pub target: usize,
    pub expression: MultiPoly,
    pub divisible: bool,
    pub quotient: Option<MultiPoly>,
}

#[derive(Clone, Debug)]
pub struct CertificateOutcome {
    pub passed: bool,
    pub claims: Vec<ClaimOutcome>,
}

/// Check a chain of membership claims against the single relation of the
/// ring: each claim passes when target - expression is exactly divisible by
/// the relation. Expressions are built only from declared generators,
/// previously certified targets, and action-invariant scalar monomials, so
/// admissibility is structural.
pub fn subalgebra_certificate_check(
    ring: &PresentedRing,
    generators: &[MultiPoly],
    claims: &[CertificateClaim],
) -> Result<CertificateOutcome> {
    if ring.relations().len() != 1 {
        return Err(Error::MultipleRelations {
            found: ring.relations().len(),
        });
    }
    let relation = &ring.relations()[0];
    let nvars = ring.num_vars();
    for g in generators {
        if g.num_vars() != nvars {
            return Err(Error::LengthMismatch {
                expected: nvars,
                found: g.num_vars(),
            });
        }
    }
    let mut certified: Vec<usize> = Vec::new();
    let mut outcomes = Vec::new();
    let mut passed = true;
    for claim in claims {
        if claim.target >= nvars {
            return Err(Error::InadmissibleExpression(format!(
                "target index {} out of range",
                claim.target
            )));
        }
        let mut expr = MultiPoly::zero(ring.field(), nvars);
        for term in &claim.terms {
            if term.scalar_exponents.len() != nvars {
                return Err(Error::LengthMismatch {
                    expected: nvars,
                    found: term.scalar_exponents.len(),
                });
            }
            if let Some(signs) = ring.action() {
                let flipped: u32 = term
                    .scalar_exponents
                    .iter()
                    .zip(signs)
                    .filter(|(_, &s)| s)
                    .map(|(e, _)| e)
                    .sum();
                if !flipped.is_multiple_of(2) {
                    return Err(Error::InadmissibleExpression(
                        "scalar monomial is not invariant under the action".into(),
                    ));
                }
            }
            let mut product = MultiPoly::monomial_term(
                ring.field(),
                nvars,
                term.scalar_exponents.clone(),
                ring.field().one(),
            )?;
            for factor in &term.factors {
                let poly = match factor {
                    CertFactor::Generator(idx) => generators.get(*idx).ok_or_else(|| {
                        Error::InadmissibleExpression(format!("generator index {idx} out of range"))
                    })?,
                    CertFactor::Certified(var) => {
                        if !certified.contains(var) {
                            return Err(Error::InadmissibleExpression(format!(
                                "variable {var} used before being certified"
                            )));
                        }
                        &ring.variable(*var)?
                    }
                };
                product = product.mul(poly)?;
            }
            expr = expr.add(&product)?;
        }
        let target_poly = ring.variable(claim.target)?;
        let difference = target_poly.sub(&expr)?;
        let quotient = difference.exact_divide(relation)?;
        let divisible = quotient.is_some();
        if divisible {
            certified.push(claim.target);
        } else {
            passed = false;
        }
        outcomes.push(ClaimOutcome {
            target: claim.target,
            expression: expr,
            divisible,
            quotient,
        });
    }
    Ok(CertificateOutcome {
        passed,
        claims: outcomes,
    })
}

/// The certificate that x_1, ..., x_m generate the deleted-quadric ring
/// over its invariant subring: y_j = sum_l x_l (y_l y_j), with the products
/// y_l y_j declared as invariant scalars.
pub fn dq_standard_certificate(
    m: usize,
    field: &FieldDescriptor,
) -> Result<(PresentedRing, Vec<MultiPoly>, Vec<CertificateClaim>)> {
    let ring = dq_ring(m, field)?;
    let nvars = 2 * m;
    let generators = (0..m)
        .map(|l| ring.variable(l))
        .collect::<Result<Vec<_>>>()?;
    let mut claims = Vec::with_capacity(m);
    for j in 0..m {
        let mut terms = Vec::with_capacity(m);
        for l in 0..m {
            let mut scalar = vec![0u32; nvars];
            scalar[m + l] += 1;
            scalar[m + j] += 1;
            terms.push(CertTerm {
                scalar_exponents: scalar,
                factors: vec![CertFactor::Generator(l)],
            });
        }
        claims.push(CertificateClaim {
            target: m + j,
            terms,
        });
    }
    Ok((ring, generators, claims))
}

#[derive(Clone, Debug)]
struct CompiledPoly {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

fn compile_poly(poly: &MultiPoly, _gfq: &Gfq) -> CompiledPoly {
    let terms = poly
        .terms()
        .map(|(m, c)| {
            let code = c.residue_value().expect("prime-field coefficient");
            let vars: Vec<(usize, u32)> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e))
                .collect();
            (code, vars)
        })
        .collect();
    CompiledPoly { terms }
}

impl CompiledPoly {
    fn eval(&self, gfq: &Gfq, coords: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (coeff, vars) in &self.terms {
            let mut t = *coeff;
            for &(v, e) in vars {
                if t == 0 {
                    break;
                }
                t = gfq.mul(t, gfq.pow(coords[v], e as u64));
            }
            acc = gfq.add(acc, t);
        }
        acc
    }
}

/// A variable the single relation is linear in, if any; the last one wins.
fn linear_variable(poly: &MultiPoly) -> Option<usize> {
    let n = poly.num_vars();
    (0..n).rev().find(|&v| {
        let mut appears = false;
        for (m, _) in poly.terms() {
            let e = m.exponents()[v];
            if e > 1 {
                return false;
            }
            if e == 1 {
                appears = true;
            }
        }
        appears
    })
}

/// Split the relation as A * v + B with neither part involving v.
fn split_linear(poly: &MultiPoly, v: usize) -> Result<(MultiPoly, MultiPoly)> {
    let field = poly.field();
    let n = poly.num_vars();
    let mut a = MultiPoly::zero(field, n);
    let mut b = MultiPoly::zero(field, n);
    for (m, c) in poly.terms() {
        let mut exps = m.exponents().to_vec();
        if exps[v] == 1 {
            exps[v] = 0;
            a = a.add(&MultiPoly::monomial_term(field, n, exps, c.clone())?)?;
        } else {
            b = b.add(&MultiPoly::monomial_term(field, n, exps, c.clone())?)?;
        }
    }
    Ok((a, b))
}

/// Stream every solution of the relations over F_(q^d). Uses a
/// solve-for-the-last-linear-variable pass when the presentation is a single
/// relation linear in some variable; the budget bounds the enumerated grid.
fn for_each_point(
    ring: &PresentedRing,
    gfq: &Gfq,
    budget: u64,
    visit: &mut dyn FnMut(&[u64]) -> Result<()>,
) -> Result<()> {
    let nvars = ring.num_vars();
    let q = gfq.q();

    if ring.relations().len() == 1 {
        if let Some(v) = linear_variable(&ring.relations()[0]) {
            let required = (q as u128).checked_pow((nvars - 1) as u32);
            match required {
                Some(r) if r <= budget as u128 => {}
                _ => {
                    return Err(Error::BudgetExceeded {
                        required: required.unwrap_or(u128::MAX),
                        budget,
                    })
                }
            }
            let (a_poly, b_poly) = split_linear(&ring.relations()[0], v)?;
            let a = compile_poly(&a_poly, gfq);
            let b = compile_poly(&b_poly, gfq);
            let mut coords = vec![0u64; nvars];
            let free: Vec<usize> = (0..nvars).filter(|&i| i != v).collect();
            loop {
                let av = a.eval(gfq, &coords);
                let bv = b.eval(gfq, &coords);
                if av != 0 {
                    // relation A v + B = 0 => v = -B/A
                    coords[v] = gfq.mul(gfq.neg_of(bv), gfq.inv(av)?);
                    visit(&coords)?;
                } else if bv == 0 {
                    for val in 0..q {
                        coords[v] = val;
                        visit(&coords)?;
                    }
                }
                coords[v] = 0;
                // odometer over the free variables
                let mut done = true;
                for &i in &free {
                    coords[i] += 1;
                    if coords[i] < q {
                        done = false;
                        break;
                    }
                    coords[i] = 0;
                }
                if done {
                    break;
                }
            }
            return Ok(());
        }
    }

    let required = (q as u128).checked_pow(nvars as u32);
    match required {
        Some(r) if r <= budget as u128 => {}
        _ => {
            return Err(Error::BudgetExceeded {
                required: required.unwrap_or(u128::MAX),
                budget,
            })
        }
    }
    let compiled: Vec<CompiledPoly> = ring
        .relations()
        .iter()
        .map(|r| compile_poly(r, gfq))
        .collect();
    let mut coords = vec![0u64; nvars];
    loop {
        if compiled.iter().all(|c| c.eval(gfq, &coords) == 0) {
            visit(&coords)?;
        }
        let mut done = true;
        for i in 0..nvars {
            coords[i] += 1;
            if coords[i] < q {
                done = false;
                break;
            }
            coords[i] = 0;
        }
        if done {
            break;
        }
    }
    Ok(())
}

/// A solution of the relations over the extension field, with its orbit
/// bookkeeping. Coordinates are packed codes over the polynomial basis of
/// the enumeration's modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSample {
    pub coords: Vec<u64>,
    pub orbit_id: usize,
    pub free: bool,
    pub canonical: bool,
}

/// All points of the presented ring over F_(q^d), sorted by coordinates,
/// grouped into orbits under the sign action.
#[derive(Clone, Debug)]
pub struct PointEnumeration {
    pub p: u64,
    pub extension_degree: usize,
    /// Monic modulus of the extension field, ascending coefficients.
    pub modulus: Vec<u64>,
    pub points: Vec<PointSample>,
    pub free_orbits: usize,
    pub fixed_points: usize,
}

pub fn enumerate_points(
    ring: &PresentedRing,
    extension_degree: usize,
    budget: u64,
) -> Result<PointEnumeration> {
    let p = ring.field().size().ok_or(Error::InfiniteField)?;
    let gfq = Gfq::new(p, extension_degree)?;
    let mut all: Vec<Vec<u64>> = Vec::new();
    for_each_point(ring, &gfq, budget, &mut |coords| {
        all.push(coords.to_vec());
        if all.len() as u64 > budget {
            return Err(Error::BudgetExceeded {
                required: all.len() as u128,
                budget,
            });
        }
        Ok(())
    })?;
    all.sort();
    all.dedup();

    let signs = ring.action();
    let mirror = |coords: &[u64]| -> Vec<u64> {
        match signs {
            None => coords.to_vec(),
            Some(signs) => coords
                .iter()
                .zip(signs)
                .map(|(&c, &s)| if s { gfq.neg_of(c) } else { c })
                .collect(),
        }
    };
    let index_of = |coords: &Vec<u64>| all.binary_search(coords).expect("orbit closed");
    let mut points = Vec::with_capacity(all.len());
    let mut free_orbits = 0;
    let mut fixed_points = 0;
    for (idx, coords) in all.iter().enumerate() {
        let m = mirror(coords);
        if m == *coords {
            fixed_points += 1;
            points.push(PointSample {
                coords: coords.clone(),
                orbit_id: idx,
                free: false,
                canonical: true,
            });
        } else {
            let mate = index_of(&m);
            let canonical = idx < mate;
            if canonical {
                free_orbits += 1;
            }
            points.push(PointSample {
                coords: coords.clone(),
                orbit_id: idx.min(mate),
                free: true,
                canonical,
            });
        }
    }
    Ok(PointEnumeration {
        p,
        extension_degree,
        modulus: gfq.modulus().to_vec(),
        points,
        free_orbits,
        fixed_points,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitKind {
    /// Two points rational over the residue field.
    Split,
    /// One point over the quadratic extension of the residue field,
    /// conjugate to its mirror under the half-degree Frobenius.
    ConjugatePair,
}

#[derive(Clone, Debug)]
pub struct OrbitFailure {
    pub extension_degree: usize,
    pub kind: OrbitKind,
    /// Coordinates of the canonical orbit representative, one coefficient
    /// vector per ring variable.
    pub point: Vec<Vec<u64>>,
}

#[derive(Clone, Debug)]
pub struct ScanLevel {
    pub extension_degree: usize,
    pub split_orbits: u64,
    pub conjugate_orbits: u64,
    pub failing_orbits: u64,
    pub nonfree_skipped: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanVerdict {
    VerifiedUpToDegree(usize),
    CounterexampleFound,
}

/// Report of a fiberwise generation scan. A passing scan means: at every
/// closed point reached (split fibers at residue degrees up to the bound,
/// conjugate-pair fibers at residue degrees up to half the bound), the
/// proposed generators generate the rank-2 fiber. It is a necessary
/// condition, never a proof of generation over the whole invariant ring.
#[derive(Clone, Debug)]
pub struct ScanReport {
    pub degree_bound: usize,
    pub levels: Vec<ScanLevel>,
    pub failures: Vec<OrbitFailure>,
    pub total_failures: u64,
    pub nonfree_skipped: u64,
    pub verdict: ScanVerdict,
    pub provenance: String,
}

const FAILURE_CAP: usize = 16;

/// Scan every reachable closed point of the quotient and test generation of
/// the rank-2 fiber there: a split fiber passes when some generator takes
/// distinct values at the two points; a conjugate-pair fiber passes when
/// some generator value lies outside the residue subfield. Generators must
/// be odd for the action.
pub fn fiberwise_generation_scan(
    ring: &PresentedRing,
    generators: &[MultiPoly],
    degree_bound: usize,
    budget: u64,
) -> Result<ScanReport> {
    let p = ring.field().size().ok_or(Error::InfiniteField)?;
    let signs = ring
        .action()
        .ok_or_else(|| Error::InvalidInput("the scan needs a ring with a sign action".into()))?
        .to_vec();
    if degree_bound == 0 {
        return Err(Error::InvalidInput("degree bound must be positive".into()));
    }
    for g in generators {
        if g.num_vars() != ring.num_vars() {
            return Err(Error::LengthMismatch {
                expected: ring.num_vars(),
                found: g.num_vars(),
            });
        }
        if g.apply_signs(&signs)? != g.neg() {
            return Err(Error::InvalidInput(
                "scan generators must be odd for the sign action".into(),
            ));
        }
    }

    let nvars = ring.num_vars();
    let mut levels = Vec::new();
    let mut failures: Vec<OrbitFailure> = Vec::new();
    let mut total_failures = 0u64;
    let mut nonfree_total = 0u64;

    for d in 1..=degree_bound {
        let gfq = Gfq::new(p, d)?;
        let compiled: Vec<CompiledPoly> =
            generators.iter().map(|g| compile_poly(g, &gfq)).collect();
        let divisors: Vec<usize> = (1..d).filter(|e| d % e == 0).collect();
        let mut split_orbits = 0u64;
        let mut conjugate_orbits = 0u64;
        let mut failing = 0u64;
        let mut nonfree = 0u64;

        let mut scratch = vec![0u64; nvars];
        for_each_point(ring, &gfq, budget, &mut |coords| {
            // only points whose minimal field of definition is exactly F_(p^d)
            for &e in &divisors {
                if coords.iter().all(|&c| gfq.in_subfield(c, e)) {
                    return Ok(());
                }
            }
            // mirror under the sign action
            for (i, &c) in coords.iter().enumerate() {
                scratch[i] = if signs[i] { gfq.neg_of(c) } else { c };
            }
            if scratch == coords {
                nonfree += 1;
                return Ok(());
            }
            // canonical representative of { +-Frob^j(P) }
            let mut is_canonical = true;
            let mut probe: Vec<u64> = coords.to_vec();
            let mut probe_mirror = scratch.clone();
            'canon: for _ in 0..d {
                for cand in [&probe, &probe_mirror] {
                    if cand.as_slice() < coords {
                        is_canonical = false;
                        break 'canon;
                    }
                }
                for v in probe.iter_mut() {
                    *v = gfq.frobenius(*v);
                }
                for v in probe_mirror.iter_mut() {
                    *v = gfq.frobenius(*v);
                }
            }
            if !is_canonical {
                return Ok(());
            }

            let conjugate = d % 2 == 0 && {
                let half = d / 2;
                coords
                    .iter()
                    .zip(scratch.iter())
                    .all(|(&c, &m)| gfq.frobenius_iter(c, half) == m)
            };

            let generated = if conjugate {
                conjugate_orbits += 1;
                let half = d / 2;
                compiled.iter().any(|g| {
                    let value = g.eval(&gfq, coords);
                    !gfq.in_subfield(value, half)
                })
            } else {
                split_orbits += 1;
                compiled
                    .iter()
                    .any(|g| g.eval(&gfq, coords) != g.eval(&gfq, &scratch))
            };
            if !generated {
                failing += 1;
                total_failures += 1;
                if failures.len() < FAILURE_CAP {
                    failures.push(OrbitFailure {
                        extension_degree: d,
                        kind: if conjugate {
                            OrbitKind::ConjugatePair
                        } else {
                            OrbitKind::Split
                        },
                        point: coords.iter().map(|&c| gfq.render(c)).collect(),
                    });
                }
            }
            Ok(())
        })?;

        nonfree_total += nonfree;
        levels.push(ScanLevel {
            extension_degree: d,
            split_orbits,
            conjugate_orbits,
            failing_orbits: failing,
            nonfree_skipped: nonfree,
        });
    }

    let verdict = if total_failures == 0 {
        ScanVerdict::VerifiedUpToDegree(degree_bound)
    } else {
        ScanVerdict::CounterexampleFound
    };
    let provenance = format!(
        "necessary check only: split fibers verified at residue degrees 1..={degree_bound}, \
         conjugate-pair fibers at residue degrees 1..={}",
        degree_bound / 2
    );
    Ok(ScanReport {
        degree_bound,
        levels,
        failures,
        total_failures,
        nonfree_skipped: nonfree_total,
        verdict,
        provenance,
    })
}
