//! Points of the generating-tuple locus and its symmetric-group quotient:
//! canonical orbit representatives, classifying points of algebras with
//! chosen generators, stabilization by zero sections, and path verification
//! over the rational function field F(t).

use crate::algebra::{AlgebraElem, FiniteAlgebra, GenMatrix};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElem};
use crate::linalg::Matrix;
use crate::poly::{elementary_symmetric, UniPoly};

/// Membership in the separated locus: true plus no violated pairs, or false
/// plus every column pair no row separates. Decides exactly what
/// [`GenMatrix::split_generation_criterion`] decides.
pub fn u_membership(m: &GenMatrix) -> (bool, Vec<(usize, usize)>) {
    let violated = m.violated_pairs();
    (violated.is_empty(), violated)
}

/// A point of the quotient of the separated locus by column permutations.
///
/// Orbit form stores the canonical representative: the column permutation
/// that sorts columns ascending under the canonical order on coordinate
/// vectors. Coefficient form (single generator only) stores
/// (c_{n-1}, ..., c_0), the elementary symmetric functions of the
/// generator's factor values, so the generator satisfies
/// z^n - c_{n-1} z^(n-1) + c_{n-2} z^(n-2) - ... = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BPoint {
    Orbit(GenMatrix),
    Coeff {
        field: FieldDescriptor,
        coeffs: Vec<FieldElem>,
    },
}

impl BPoint {
    pub fn field(&self) -> &FieldDescriptor {
        match self {
            BPoint::Orbit(m) => m.field(),
            BPoint::Coeff { field, .. } => field,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            BPoint::Orbit(m) => m.cols(),
            BPoint::Coeff { coeffs, .. } => coeffs.len(),
        }
    }

    pub fn generator_count(&self) -> usize {
        match self {
            BPoint::Orbit(m) => m.rows(),
            BPoint::Coeff { .. } => 1,
        }
    }

    /// The monic polynomial attached to a coefficient-form point.
    pub fn minimal_polynomial(&self) -> Result<UniPoly> {
        match self {
            BPoint::Coeff { field, coeffs } => {
                let n = coeffs.len();
                let mut cs = vec![field.zero(); n + 1];
                cs[n] = field.one();
                for (k, e) in coeffs.iter().enumerate() {
                    // coefficient of z^(n-1-k) is (-1)^(k+1) e_(k+1)
                    cs[n - 1 - k] = if (k + 1) % 2 == 1 { e.neg() } else { e.clone() };
                }
                UniPoly::from_coeffs(field, cs)
            }
            BPoint::Orbit(_) => Err(Error::InvalidInput(
                "orbit-form point has no attached polynomial".into(),
            )),
        }
    }
}

fn compare_columns(m: &GenMatrix, i: usize, j: usize) -> std::cmp::Ordering {
    for k in 0..m.rows() {
        let c = m.entry(k, i).canonical_cmp(m.entry(k, j));
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    std::cmp::Ordering::Equal
}

/// Canonical representative of the column-permutation orbit of a separated
/// matrix: sort the columns ascending. Fails when some column pair is not
/// separated.
pub fn b_point(m: &GenMatrix) -> Result<BPoint> {
    let (ok, violated) = u_membership(m);
    if !ok {
        return Err(Error::SeparationFails { violated });
    }
    let mut perm: Vec<usize> = (0..m.cols()).collect();
    perm.sort_by(|&i, &j| compare_columns(m, i, j));
    Ok(BPoint::Orbit(m.permute_columns(&perm)?))
}

/// Classifying point of an étale algebra with a generating tuple. The
/// algebra must split over its field; with a single generator a coefficient
/// form point is produced instead when it does not.
pub fn classify(algebra: &FiniteAlgebra, gens: &[AlgebraElem]) -> Result<BPoint> {
    if !algebra.is_etale()? {
        return Err(Error::NotEtale);
    }
    if !algebra.generates(gens)? {
        return Err(Error::NotGenerating);
    }
    match algebra.primitive_idempotents() {
        Ok(idems) => {
            let n = algebra.dim();
            let field = algebra.field();
            // columns of E are the idempotents; solve E * coords = gen
            let e = Matrix::from_rows(
                field,
                (0..n)
                    .map(|k| idems.iter().map(|id| id.0[k].clone()).collect())
                    .collect(),
            )?;
            let mut rows = Vec::with_capacity(gens.len());
            for g in gens {
                let coords = e.solve(&g.0)?.ok_or_else(|| {
                    Error::StructureCheck("idempotents do not form a basis".into())
                })?;
                rows.push(coords);
            }
            b_point(&GenMatrix::new(field, rows)?)
        }
        Err(Error::DoesNotSplit { factor_degrees }) => {
            if gens.len() == 1 {
                classify_monogenic(algebra, &gens[0])
            } else {
                Err(Error::DoesNotSplit { factor_degrees })
            }
        }
        Err(other) => Err(other),
    }
}

/// Coefficient-form classifying point of an algebra with one generator: the
/// signed coefficients of the characteristic (= minimal) polynomial of
/// multiplication by the generator. For degree 2 this is (c1, c0) with
/// a^2 - c1 a + c0 = 0.
pub fn classify_monogenic(algebra: &FiniteAlgebra, gen: &AlgebraElem) -> Result<BPoint> {
    if !algebra.is_etale()? {
        return Err(Error::NotEtale);
    }
    let n = algebra.dim();
    let field = algebra.field().clone();
    // powers 1, a, a^2, ... until dependence; a generates iff we reach n
    let mut span = crate::linalg::RowSpan::new(n);
    let mut powers = vec![algebra.unit_elem()];
    span.insert(algebra.unit_elem().0)?;
    let mut current = algebra.unit_elem();
    loop {
        current = algebra.mul(&current, gen)?;
        if !span.insert(current.0.clone())? {
            break;
        }
        powers.push(current.clone());
    }
    if powers.len() < n {
        return Err(Error::NotGenerating);
    }
    let cols = Matrix::from_rows(
        &field,
        (0..n)
            .map(|k| powers.iter().map(|pw| pw.0[k].clone()).collect())
            .collect(),
    )?;
    let combo = cols
        .solve(&current.0)?
        .ok_or_else(|| Error::StructureCheck("minimal polynomial solve failed".into()))?;
    // minimal polynomial z^n - sum combo_i z^i; coefficient list ascending
    let mut min_poly_coeffs: Vec<FieldElem> = combo.iter().map(FieldElem::neg).collect();
    min_poly_coeffs.push(field.one());
    let min_poly = UniPoly::from_coeffs(&field, min_poly_coeffs)?;
    if min_poly.discriminant()?.is_zero() {
        return Err(Error::StructureCheck(
            "étale algebra produced a repeated-root minimal polynomial".into(),
        ));
    }
    // e_k = (-1)^k * coefficient of z^(n-k)
    let coeffs = (1..=n)
        .map(|k| {
            let c = min_poly.coeff(n - k);
            if k % 2 == 1 {
                c.neg()
            } else {
                c
            }
        })
        .collect();
    Ok(BPoint::Coeff { field, coeffs })
}

/// The split algebra carried by an orbit-form point, with the point's rows
/// as its sections. Classifying the result returns the point.
#[derive(Clone, Debug)]
pub struct TautologicalData {
    pub point: BPoint,
    pub algebra: FiniteAlgebra,
    pub sections: Vec<AlgebraElem>,
}

pub fn tautological(point: &BPoint) -> Result<TautologicalData> {
    match point {
        BPoint::Orbit(m) => Ok(TautologicalData {
            point: point.clone(),
            algebra: FiniteAlgebra::split(m.field(), m.cols())?,
            sections: m.row_elems(),
        }),
        BPoint::Coeff { field, .. } => {
            let _ = field;
            Err(Error::InvalidInput(
                "coefficient-form point: build the monogenic algebra from its polynomial instead"
                    .into(),
            ))
        }
    }
}

/// Append zero sections up to `r_new` generators and recanonicalize.
/// Transitive: stabilizing twice equals stabilizing once to the final count.
pub fn stabilize(point: &BPoint, r_new: usize) -> Result<BPoint> {
    let m = match point {
        BPoint::Orbit(m) => m,
        BPoint::Coeff { .. } => {
            return Err(Error::InvalidInput(
                "stabilization needs an orbit-form point".into(),
            ))
        }
    };
    if r_new < m.rows() {
        return Err(Error::InvalidInput(format!(
            "cannot stabilize from {} generators down to {}",
            m.rows(),
            r_new
        )));
    }
    let field = m.field();
    let mut rows: Vec<Vec<FieldElem>> = (0..m.rows()).map(|k| m.row(k).to_vec()).collect();
    while rows.len() < r_new {
        rows.push(vec![field.zero(); m.cols()]);
    }
    b_point(&GenMatrix::new(field, rows)?)
}

/// One straight-line segment of generators over F(t), with its verification
/// results at the generic point and at the specialization checkpoints.
#[derive(Clone, Debug)]
pub struct HomotopySegment {
    pub label: String,
    pub generic_generates: bool,
    pub checkpoints: Vec<(FieldElem, bool)>,
    pub start: Vec<AlgebraElem>,
    pub end: Vec<AlgebraElem>,
}

/// Verification record for the path joining two generating tuples through
/// the doubled tuple ((1-t) a, t a'), followed by the two extra segments
/// that move (0, a') to the stabilized position (a', 0).
#[derive(Clone, Debug)]
pub struct HomotopyReport {
    pub common_length: usize,
    pub segments: Vec<HomotopySegment>,
    pub start_is_stabilized_first: bool,
    pub end_is_stabilized_second: bool,
    pub continuous: bool,
    pub verified: bool,
}

fn pad_tuple(algebra: &FiniteAlgebra, gens: &[AlgebraElem], len: usize) -> Vec<AlgebraElem> {
    let mut out = gens.to_vec();
    while out.len() < len {
        out.push(algebra.zero_elem());
    }
    out
}

/// Default specialization checkpoints: every element of a finite field;
/// 0, 1, 2, -1, 1/2 over the rationals.
pub fn default_checkpoints(field: &FieldDescriptor) -> Result<Vec<FieldElem>> {
    if field.is_finite() {
        field.elements()
    } else {
        Ok(vec![
            field.zero(),
            field.one(),
            field.integer(2),
            field.integer(-1),
            field.fraction(1, 2)?,
        ])
    }
}

/// Verify the straight-line path between two generating tuples of the same
/// algebra: generation at the generic point of F(t) and at every checkpoint,
/// for the main segment and for the two segments realizing the block swap.
pub fn homotopy_path(
    algebra: &FiniteAlgebra,
    gens_a: &[AlgebraElem],
    gens_b: &[AlgebraElem],
    checkpoints: Option<&[FieldElem]>,
) -> Result<HomotopyReport> {
    if !algebra.generates(gens_a)? || !algebra.generates(gens_b)? {
        return Err(Error::NotGenerating);
    }
    let field = algebra.field().clone();
    if field.is_rational_function_field() {
        return Err(Error::InvalidDescriptor(
            "path verification needs a base field, not a function field".into(),
        ));
    }
    let r = gens_a.len().max(gens_b.len());
    let a_pad = pad_tuple(algebra, gens_a, r);
    let b_pad = pad_tuple(algebra, gens_b, r);

    let ft = FieldDescriptor::rational_functions(&field, "t")?;
    let extended = algebra.map_scalars(&ft, &|x| ft.embed_scalar(x))?;
    let t = ft.function_variable()?;
    let one_minus_t = ft.one().sub(&t)?;

    let checkpoints: Vec<FieldElem> = match checkpoints {
        Some(cs) => cs.to_vec(),
        None => default_checkpoints(&field)?,
    };

    let embed_elem = |x: &AlgebraElem| -> Result<AlgebraElem> {
        Ok(AlgebraElem(
            x.0.iter()
                .map(|c| ft.embed_scalar(c))
                .collect::<Result<Vec<_>>>()?,
        ))
    };
    let scale_block = |elems: &[AlgebraElem], factor: &FieldElem| -> Result<Vec<AlgebraElem>> {
        elems
            .iter()
            .map(|x| extended.scale(factor, &embed_elem(x)?))
            .collect()
    };

    // segment 1: ((1-t) a, t b), from (a, 0) to (0, b)
    let mut seg1 = scale_block(&a_pad, &one_minus_t)?;
    seg1.extend(scale_block(&b_pad, &t)?);
    // segment 2: (t b, b), from (0, b) to (b, b)
    let mut seg2 = scale_block(&b_pad, &t)?;
    seg2.extend(scale_block(&b_pad, &ft.one())?);
    // segment 3: (b, (1-t) b), from (b, b) to (b, 0)
    let mut seg3 = scale_block(&b_pad, &ft.one())?;
    seg3.extend(scale_block(&b_pad, &one_minus_t)?);

    let specialize = |tuple: &[AlgebraElem], t0: &FieldElem| -> Result<Vec<AlgebraElem>> {
        tuple
            .iter()
            .map(|x| {
                Ok(AlgebraElem(
                    x.0.iter()
                        .map(|c| c.evaluate_at(t0))
                        .collect::<Result<Vec<_>>>()?,
                ))
            })
            .collect()
    };

    let mut segments = Vec::new();
    for (label, tuple) in [
        ("(1-t)*first, t*second", &seg1),
        ("t*second, second", &seg2),
        ("second, (1-t)*second", &seg3),
    ] {
        let generic = extended.generates(tuple)?;
        let mut cps = Vec::new();
        for t0 in &checkpoints {
            let specialized = specialize(tuple, t0)?;
            cps.push((t0.clone(), algebra.generates(&specialized)?));
        }
        segments.push(HomotopySegment {
            label: label.to_string(),
            generic_generates: generic,
            checkpoints: cps,
            start: specialize(tuple, &field.zero())?,
            end: specialize(tuple, &field.one())?,
        });
    }

    let stabilized_a = {
        let mut v = a_pad.clone();
        v.extend(std::iter::repeat_n(algebra.zero_elem(), r));
        v
    };
    let stabilized_b = {
        let mut v = b_pad.clone();
        v.extend(std::iter::repeat_n(algebra.zero_elem(), r));
        v
    };
    let start_is_stabilized_first = segments[0].start == stabilized_a;
    let end_is_stabilized_second = segments[2].end == stabilized_b;
    let continuous = segments[0].end == segments[1].start && segments[1].end == segments[2].start;
    let verified = start_is_stabilized_first
        && end_is_stabilized_second
        && continuous
        && segments
            .iter()
            .all(|s| s.generic_generates && s.checkpoints.iter().all(|(_, ok)| *ok));
    Ok(HomotopyReport {
        common_length: r,
        segments,
        start_is_stabilized_first,
        end_is_stabilized_second,
        continuous,
        verified,
    })
}

/// Orbit agreement for degree 2: the coefficient form is the pair of
/// elementary symmetric functions of the orbit columns.
pub fn coeff_from_orbit_n2(point: &BPoint) -> Result<BPoint> {
    match point {
        BPoint::Orbit(m) if m.cols() == 2 && m.rows() == 1 => {
            let values = [m.entry(0, 0).clone(), m.entry(0, 1).clone()];
            Ok(BPoint::Coeff {
                field: m.field().clone(),
                coeffs: elementary_symmetric(&values)?,
            })
        }
        _ => Err(Error::InvalidInput(
            "needs a one-row orbit point of degree 2".into(),
        )),
    }
}
