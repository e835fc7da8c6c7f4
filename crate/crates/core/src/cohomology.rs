//! Finite graded rings and the generator lower-bound certificates built on
//! them: the mod-2 cohomology F2[theta]/(theta^(m+1)) of real projective
//! space, the two-component ring for the real points of the degree-2
//! classifying space, the integral Chow ring Z[b]/(2b, b^r) of the deleted
//! quadric, and its mod-2 motivic cohomology M2[a, b]/(a^2 - rho a - tau b,
//! b^r) in the algebraically-closed-type and real-type coefficient modes.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

const MAX_TRUNCATION: usize = 127;

/// F2[theta]/(theta^(m+1)): elements are bit vectors indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedThetaRing {
    m: usize,
}

/// Element of a [`TruncatedThetaRing`]; bit j is the degree-j coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaElem {
    m: usize,
    bits: u128,
}

impl ThetaElem {
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }
}

impl TruncatedThetaRing {
    pub fn new(m: usize) -> Result<Self> {
        if m > MAX_TRUNCATION {
            return Err(Error::BudgetExceeded {
                required: m as u128,
                budget: MAX_TRUNCATION as u64,
            });
        }
        Ok(TruncatedThetaRing { m })
    }

    /// Truncation order: theta^m is the top nonzero power.
    pub fn truncation_order(&self) -> usize {
        self.m
    }

    fn mask(&self) -> u128 {
        if self.m == 127 {
            u128::MAX
        } else {
            (1u128 << (self.m + 1)) - 1
        }
    }

    pub fn zero(&self) -> ThetaElem {
        ThetaElem { m: self.m, bits: 0 }
    }

    pub fn one(&self) -> ThetaElem {
        ThetaElem { m: self.m, bits: 1 }
    }

    pub fn theta(&self) -> ThetaElem {
        self.theta_pow(1)
    }

    /// theta^j, which is zero once j exceeds the truncation order.
    pub fn theta_pow(&self, j: usize) -> ThetaElem {
        ThetaElem {
            m: self.m,
            bits: if j <= self.m { 1u128 << j } else { 0 },
        }
    }

    fn check(&self, x: &ThetaElem) -> Result<()> {
        if x.m != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                found: x.m,
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &ThetaElem, b: &ThetaElem) -> Result<ThetaElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(ThetaElem {
            m: self.m,
            bits: a.bits ^ b.bits,
        })
    }

    /// Carry-less polynomial product, truncated.
    pub fn mul(&self, a: &ThetaElem, b: &ThetaElem) -> Result<ThetaElem> {
        self.check(a)?;
        self.check(b)?;
        let mut acc = 0u128;
        let mut rest = a.bits;
        while rest != 0 {
            let i = rest.trailing_zeros();
            rest &= rest - 1;
            if (i as usize) <= self.m {
                acc ^= (b.bits << i) & self.mask();
            }
        }
        Ok(ThetaElem {
            m: self.m,
            bits: acc & self.mask(),
        })
    }

    pub fn degree_dimension(&self, j: usize) -> usize {
        if j <= self.m {
            1
        } else {
            0
        }
    }
}

/// The mod-2 cohomology ring of m-dimensional real projective space.
pub fn rp_cohomology(m: usize) -> Result<TruncatedThetaRing> {
    TruncatedThetaRing::new(m)
}

/// Two disjoint copies of F2[theta]/(theta^r): the cohomology of the real
/// points of the degree-2 classifying space with r generating sections.
/// Degrees 0 through r-1 have dimension 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BRealCohomology {
    pub r: usize,
    pub components: [TruncatedThetaRing; 2],
}

pub fn b_real_cohomology(r: usize) -> Result<BRealCohomology> {
    if r == 0 {
        return Err(Error::InvalidInput("need r >= 1".into()));
    }
    let comp = TruncatedThetaRing::new(r - 1)?;
    Ok(BRealCohomology {
        r,
        components: [comp.clone(), comp],
    })
}

impl BRealCohomology {
    pub fn degree_dimension(&self, j: usize) -> usize {
        2 * self.components[0].degree_dimension(j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Isomorphism,
    Zero,
    Other,
}

/// Per-degree behavior of a graded map, with computed ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kind: MapKind,
}

fn classify_map(source_dim: usize, target_dim: usize, rank: usize) -> MapKind {
    if rank == source_dim && rank == target_dim {
        MapKind::Isomorphism
    } else if rank == 0 && source_dim > 0 {
        MapKind::Zero
    } else {
        MapKind::Other
    }
}

/// Report for the reduction map F2[theta]/(theta^(m+2)) ->
/// F2[theta]/(theta^(m+1)) sending theta to theta: computed rank table per
/// degree. The map is bijective in degrees up to m and zero in degree m+1.
#[derive(Clone, Debug)]
pub struct RpStabilization {
    pub source_order: usize,
    pub target_order: usize,
    pub rows: Vec<DegreeVerdict>,
}

pub fn rp_stabilization(target_m: usize) -> Result<RpStabilization> {
    let source = TruncatedThetaRing::new(target_m + 1)?;
    let target = TruncatedThetaRing::new(target_m)?;
    let mut rows = Vec::new();
    for j in 0..=target_m + 1 {
        let source_dim = source.degree_dimension(j);
        let target_dim = target.degree_dimension(j);
        // image of theta^j under theta -> theta
        let image = target.theta_pow(j);
        let rank = if source_dim > 0 && !image.is_zero() {
            1
        } else {
            0
        };
        rows.push(DegreeVerdict {
            degree: j,
            source_dim,
            target_dim,
            rank,
            kind: classify_map(source_dim, target_dim, rank),
        });
    }
    Ok(RpStabilization {
        source_order: target_m + 1,
        target_order: target_m,
        rows,
    })
}

/// One degree of the two-component stabilization comparison, carrying both
/// the computed behavior and the literature claim ("isomorphism for j <= r,
/// zero otherwise"), with a flag where they disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BStabRow {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub computed: MapKind,
    pub claimed: MapKind,
    pub discrepancy: bool,
}

/// Rank table for the stabilization-induced map from the cohomology of the
/// real points at r+1 generators to the one at r generators. Direct
/// computation gives an isomorphism in degrees j <= r-1 and the zero map in
/// degree r (the source still has dimension 2 there, the target vanishes);
/// the row where this differs from the claimed range is flagged rather than
/// silently adopted.
#[derive(Clone, Debug)]
pub struct BStabilizationReport {
    pub r: usize,
    pub rows: Vec<BStabRow>,
}

pub fn b_stabilization(r: usize) -> Result<BStabilizationReport> {
    if r == 0 {
        return Err(Error::InvalidInput("need r >= 1".into()));
    }
    let source = b_real_cohomology(r + 1)?;
    let target = b_real_cohomology(r)?;
    let mut rows = Vec::new();
    for j in 0..=r {
        let source_dim = source.degree_dimension(j);
        let target_dim = target.degree_dimension(j);
        let per_component = target.components[0].theta_pow(j);
        let rank = if per_component.is_zero() { 0 } else { 2 };
        let computed = classify_map(source_dim, target_dim, rank);
        let claimed = if j <= r {
            MapKind::Isomorphism
        } else {
            MapKind::Zero
        };
        rows.push(BStabRow {
            degree: j,
            source_dim,
            target_dim,
            rank,
            computed,
            claimed,
            discrepancy: computed != claimed,
        });
    }
    Ok(BStabilizationReport { r, rows })
}

/// Z[b]/(2b, b^r): an integer in degree 0 and 2-torsion classes b^k for
/// 1 <= k <= r-1, stored as bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowDQRing {
    r: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChowElem {
    r: usize,
    pub free_part: i64,
    pub torsion_bits: u128,
}

impl ChowElem {
    pub fn is_zero(&self) -> bool {
        self.free_part == 0 && self.torsion_bits == 0
    }
}

impl ChowDQRing {
    pub fn new(r: usize) -> Result<Self> {
        if r == 0 || r > MAX_TRUNCATION {
            return Err(Error::InvalidInput(format!(
                "truncation {r} out of range 1..={MAX_TRUNCATION}"
            )));
        }
        Ok(ChowDQRing { r })
    }

    pub fn truncation(&self) -> usize {
        self.r
    }

    fn torsion_mask(&self) -> u128 {
        // degrees 1..r-1
        if self.r == 128 {
            u128::MAX - 1
        } else {
            ((1u128 << self.r) - 1) & !1
        }
    }

    pub fn zero(&self) -> ChowElem {
        ChowElem {
            r: self.r,
            free_part: 0,
            torsion_bits: 0,
        }
    }

    pub fn integer(&self, n: i64) -> ChowElem {
        ChowElem {
            r: self.r,
            free_part: n,
            torsion_bits: 0,
        }
    }

    pub fn b_tilde(&self) -> ChowElem {
        self.b_pow(1)
    }

    /// b^k; zero for k >= r, the unit for k = 0.
    pub fn b_pow(&self, k: usize) -> ChowElem {
        if k == 0 {
            return self.integer(1);
        }
        ChowElem {
            r: self.r,
            free_part: 0,
            torsion_bits: if k < self.r { 1u128 << k } else { 0 },
        }
    }

    fn check(&self, x: &ChowElem) -> Result<()> {
        if x.r != self.r {
            return Err(Error::LengthMismatch {
                expected: self.r,
                found: x.r,
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &ChowElem, b: &ChowElem) -> Result<ChowElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(ChowElem {
            r: self.r,
            free_part: a.free_part + b.free_part,
            torsion_bits: a.torsion_bits ^ b.torsion_bits,
        })
    }

    /// Product: torsion classes multiply carry-lessly (2b = 0), the integer
    /// part acts through its parity on torsion.
    pub fn mul(&self, a: &ChowElem, b: &ChowElem) -> Result<ChowElem> {
        self.check(a)?;
        self.check(b)?;
        let mut torsion = 0u128;
        if a.free_part.rem_euclid(2) == 1 {
            torsion ^= b.torsion_bits;
        }
        if b.free_part.rem_euclid(2) == 1 {
            torsion ^= a.torsion_bits;
        }
        let mut rest = a.torsion_bits;
        while rest != 0 {
            let i = rest.trailing_zeros();
            rest &= rest - 1;
            torsion ^= b.torsion_bits << i;
        }
        Ok(ChowElem {
            r: self.r,
            free_part: a.free_part * b.free_part,
            torsion_bits: torsion & self.torsion_mask(),
        })
    }

    /// Image in a smaller truncation under b -> b.
    pub fn truncate_into(&self, target: &ChowDQRing, x: &ChowElem) -> Result<ChowElem> {
        self.check(x)?;
        if target.r > self.r {
            return Err(Error::InvalidInput(
                "truncation target must not be larger".into(),
            ));
        }
        Ok(ChowElem {
            r: target.r,
            free_part: x.free_part,
            torsion_bits: x.torsion_bits & target.torsion_mask(),
        })
    }
}

/// The integral Chow ring of the deleted quadric of dimension 2r-1.
pub fn chow_dq_ring(r: usize) -> Result<ChowDQRing> {
    ChowDQRing::new(r)
}

/// Coefficient modes for the motivic ring: F2[tau] over fields of
/// algebraically closed type (rho = 0), F2[rho, tau] over real type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientMode {
    AlgClosed,
    RealType,
}

/// Monomial tau^t rho^s a^e b^m with e in {0, 1} and m below the
/// truncation. Bidegree: |tau| = (0,1), |rho| = (1,1), |a| = (1,1),
/// |b| = (2,1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MotivicMono {
    pub tau: u32,
    pub rho: u32,
    pub a: bool,
    pub b: u32,
}

impl MotivicMono {
    /// (degree, weight).
    pub fn bidegree(&self) -> (u32, u32) {
        let e = self.a as u32;
        (self.rho + e + 2 * self.b, self.tau + self.rho + e + self.b)
    }
}

/// F2-combination of monomials; membership in the set means coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MotivicElem {
    terms: BTreeSet<MotivicMono>,
}

impl MotivicElem {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &MotivicMono> {
        self.terms.iter()
    }

    fn toggle(&mut self, m: MotivicMono) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }
}

/// M2[a, b]/(a^2 - rho a - tau b, b^r) in the chosen coefficient mode. The
/// rewriting is one-step confluent: a.a expands and b^r truncates away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotivicDQRing {
    r: usize,
    mode: CoefficientMode,
}

impl MotivicDQRing {
    pub fn new(r: usize, mode: CoefficientMode) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("need r >= 1".into()));
        }
        Ok(MotivicDQRing { r, mode })
    }

    pub fn truncation(&self) -> usize {
        self.r
    }

    pub fn mode(&self) -> CoefficientMode {
        self.mode
    }

    pub fn zero(&self) -> MotivicElem {
        MotivicElem::default()
    }

    pub fn monomial(&self, tau: u32, rho: u32, a: bool, b: u32) -> Result<MotivicElem> {
        if self.mode == CoefficientMode::AlgClosed && rho > 0 {
            return Err(Error::InvalidInput(
                "rho vanishes in algebraically-closed mode".into(),
            ));
        }
        let mut e = MotivicElem::default();
        if (b as usize) < self.r {
            e.toggle(MotivicMono { tau, rho, a, b });
        }
        Ok(e)
    }

    pub fn one(&self) -> MotivicElem {
        self.monomial(0, 0, false, 0).expect("unit")
    }

    pub fn a(&self) -> MotivicElem {
        self.monomial(0, 0, true, 0).expect("a")
    }

    pub fn b(&self) -> MotivicElem {
        // zero when r = 1 (b is nilpotent of order 1)
        self.monomial(0, 0, false, 1).expect("b")
    }

    pub fn tau(&self) -> MotivicElem {
        self.monomial(1, 0, false, 0).expect("tau")
    }

    pub fn rho(&self) -> Result<MotivicElem> {
        self.monomial(0, 1, false, 0)
    }

    pub fn add(&self, x: &MotivicElem, y: &MotivicElem) -> MotivicElem {
        let mut out = x.clone();
        for m in &y.terms {
            out.toggle(*m);
        }
        out
    }

    pub fn mul(&self, x: &MotivicElem, y: &MotivicElem) -> MotivicElem {
        let mut out = MotivicElem::default();
        for m1 in &x.terms {
            for m2 in &y.terms {
                let tau = m1.tau + m2.tau;
                let rho = m1.rho + m2.rho;
                let b = m1.b + m2.b;
                let expect = (
                    m1.bidegree().0 + m2.bidegree().0,
                    m1.bidegree().1 + m2.bidegree().1,
                );
                match (m1.a, m2.a) {
                    (false, false) => self.push_term(
                        &mut out,
                        MotivicMono {
                            tau,
                            rho,
                            a: false,
                            b,
                        },
                        expect,
                    ),
                    (true, false) | (false, true) => self.push_term(
                        &mut out,
                        MotivicMono {
                            tau,
                            rho,
                            a: true,
                            b,
                        },
                        expect,
                    ),
                    (true, true) => {
                        // a^2 = rho a + tau b
                        if self.mode == CoefficientMode::RealType {
                            self.push_term(
                                &mut out,
                                MotivicMono {
                                    tau,
                                    rho: rho + 1,
                                    a: true,
                                    b,
                                },
                                expect,
                            );
                        }
                        self.push_term(
                            &mut out,
                            MotivicMono {
                                tau: tau + 1,
                                rho,
                                a: false,
                                b: b + 1,
                            },
                            expect,
                        );
                    }
                }
            }
        }
        out
    }

    fn push_term(&self, out: &mut MotivicElem, m: MotivicMono, expected_bidegree: (u32, u32)) {
        debug_assert_eq!(m.bidegree(), expected_bidegree, "bidegree additivity");
        if (m.b as usize) < self.r {
            out.toggle(m);
        }
    }

    pub fn pow(&self, x: &MotivicElem, e: u32) -> MotivicElem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Number of monomials of the given bidegree.
    pub fn dimension_in_bidegree(&self, degree: u32, weight: u32) -> u64 {
        let mut count = 0u64;
        for e in 0..=1u32 {
            for b in 0..self.r as u32 {
                let rho_max = match self.mode {
                    CoefficientMode::AlgClosed => 0,
                    CoefficientMode::RealType => degree,
                };
                for rho in 0..=rho_max {
                    if rho + e + 2 * b != degree {
                        continue;
                    }
                    // weight = tau + rho + e + b with tau >= 0
                    if weight >= rho + e + b {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// Image of an element in a smaller truncation under a -> a, b -> b.
    pub fn truncate_into(&self, target: &MotivicDQRing, x: &MotivicElem) -> Result<MotivicElem> {
        if target.mode != self.mode {
            return Err(Error::InvalidInput("coefficient mode mismatch".into()));
        }
        if target.r > self.r {
            return Err(Error::InvalidInput(
                "truncation target must not be larger".into(),
            ));
        }
        let mut out = MotivicElem::default();
        for m in &x.terms {
            if (m.b as usize) < target.r {
                out.toggle(*m);
            }
        }
        Ok(out)
    }

    /// Setting tau = 1 in algebraically-closed mode, where a^2 = b makes
    /// the ring F2[a]/(a^(2r)): monomial tau^i a^e b^m lands on a^(e + 2m).
    /// Returns the bit vector of a-exponents (needs 2r <= 128).
    pub fn tau_one_specialization(&self, x: &MotivicElem) -> Result<u128> {
        if self.mode != CoefficientMode::AlgClosed {
            return Err(Error::InvalidInput(
                "specialization applies to algebraically-closed mode".into(),
            ));
        }
        if 2 * self.r > 128 {
            return Err(Error::BudgetExceeded {
                required: 2 * self.r as u128,
                budget: 128,
            });
        }
        let mut bits = 0u128;
        for m in &x.terms {
            let a_deg = m.a as u32 + 2 * m.b;
            bits ^= 1u128 << a_deg;
        }
        Ok(bits)
    }
}

/// Build the motivic ring of the deleted quadric of dimension 2r-1.
pub fn motivic_dq_ring(r: usize, mode: CoefficientMode) -> Result<MotivicDQRing> {
    MotivicDQRing::new(r, mode)
}

/// Witness pair for a generator lower bound: a class nonvanishing in the
/// truncation for r generators but vanishing in the truncation for r-1, so
/// no classifying map through the smaller space can exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateVerdict {
    pub r: usize,
    pub witness_degree: usize,
    pub nonzero_at_r: bool,
    pub zero_below: bool,
    pub witness_nonzero: String,
    pub witness_zero: String,
    pub verdict: String,
    pub holds: bool,
}

/// Lower bound for the sphere quadratic algebra: theta^(r-1) survives in
/// both components of the rank-r real cohomology but dies one step down, so
/// the algebra admits no r-1 generating sections.
pub fn chase_certificate(r: usize) -> Result<CertificateVerdict> {
    if r < 2 {
        return Err(Error::InvalidInput("need r >= 2".into()));
    }
    let at_r = b_real_cohomology(r)?;
    let below = b_real_cohomology(r - 1)?;
    let witness_degree = r - 1;
    let nonzero_at_r = at_r
        .components
        .iter()
        .all(|c| !c.theta_pow(witness_degree).is_zero());
    // stabilized image: theta^(r-1) pushed into the smaller truncation
    let zero_below = below
        .components
        .iter()
        .all(|c| c.theta_pow(witness_degree).is_zero());
    let holds = nonzero_at_r && zero_below;
    Ok(CertificateVerdict {
        r,
        witness_degree,
        nonzero_at_r,
        zero_below,
        witness_nonzero: format!(
            "theta^{witness_degree} != 0 in each component F2[theta]/(theta^{r})"
        ),
        witness_zero: format!("theta^{witness_degree} = 0 in F2[theta]/(theta^{})", r - 1),
        verdict: format!(
            "the rank-2 sphere extension at r = {r} cannot be generated by {} elements",
            r - 1
        ),
        holds,
    })
}

/// Lower bound for the deleted-quadric quadratic algebra: b^(r-1) maps to a
/// nonzero class through the stabilizations down to truncation r, but to
/// zero through truncation r-1.
pub fn ojanguren_certificate(r: usize) -> Result<CertificateVerdict> {
    if r < 2 {
        return Err(Error::InvalidInput("need r >= 2".into()));
    }
    let witness_degree = r - 1;
    let top = chow_dq_ring(2 * r - 1)?;
    let class = top.b_pow(witness_degree);
    // composite of the single-step truncations b -> b down to rank r
    let mut current_ring = top.clone();
    let mut current = class;
    for rr in (r..2 * r - 1).rev() {
        let next = chow_dq_ring(rr)?;
        current = current_ring.truncate_into(&next, &current)?;
        current_ring = next;
    }
    let nonzero_at_r = !current.is_zero();
    let below = chow_dq_ring(r - 1)?;
    let pushed_below = current_ring.truncate_into(&below, &current)?;
    let zero_below = pushed_below.is_zero();
    let holds = nonzero_at_r && zero_below;
    Ok(CertificateVerdict {
        r,
        witness_degree,
        nonzero_at_r,
        zero_below,
        witness_nonzero: format!(
            "b^{witness_degree} != 0 in Z[b]/(2b, b^{r}) (image from truncation {})",
            2 * r - 1
        ),
        witness_zero: format!("b^{witness_degree} = 0 in Z[b]/(2b, b^{})", r - 1),
        verdict: format!(
            "the deleted-quadric quadratic algebra at r = {r} cannot be generated by {} elements",
            r - 1
        ),
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn theta_ring_basics() {
        let ring = rp_cohomology(2).unwrap();
        let theta = ring.theta();
        let theta2 = ring.mul(&theta, &theta).unwrap();
        assert_eq!(theta2, ring.theta_pow(2));
        assert!(ring.mul(&theta2, &theta).unwrap().is_zero());
        // m = 0: the ring is F2
        let f2 = rp_cohomology(0).unwrap();
        assert!(f2.theta().is_zero());
        assert!(!f2.one().is_zero());
        // (1 + theta)^2 = 1 + theta^2 in characteristic 2
        let one_plus = ring.add(&ring.one(), &theta).unwrap();
        let sq = ring.mul(&one_plus, &one_plus).unwrap();
        assert_eq!(sq, ring.add(&ring.one(), &ring.theta_pow(2)).unwrap());
    }

    #[test]
    fn b_real_cohomology_dimensions() {
        let b = b_real_cohomology(2).unwrap();
        assert_eq!(b.components[0].truncation_order(), 1);
        for j in 0..2 {
            assert_eq!(b.degree_dimension(j), 2);
        }
        assert_eq!(b.degree_dimension(2), 0);
        // degree r-1 has dimension 2, degree r has 0
        let b = b_real_cohomology(7).unwrap();
        assert_eq!(b.degree_dimension(6), 2);
        assert_eq!(b.degree_dimension(7), 0);
    }

    #[test]
    fn rp_stabilization_table() {
        let rep = rp_stabilization(2).unwrap();
        // theta^2 -> theta^2, theta^3 -> 0, 1 -> 1
        assert_eq!(rep.rows[0].kind, MapKind::Isomorphism);
        assert_eq!(rep.rows[2].kind, MapKind::Isomorphism);
        assert_eq!(rep.rows[3].kind, MapKind::Zero);
        // full rank table for m = 4
        let rep = rp_stabilization(4).unwrap();
        for row in &rep.rows {
            if row.degree <= 4 {
                assert_eq!((row.rank, row.kind), (1, MapKind::Isomorphism));
            } else {
                assert_eq!((row.rank, row.kind), (0, MapKind::Zero));
            }
        }
    }

    #[test]
    fn b_stabilization_discrepancy_exactly_at_top_degree() {
        for r in 1..=16usize {
            let rep = b_stabilization(r).unwrap();
            for row in &rep.rows {
                if row.degree < r {
                    assert_eq!(row.computed, MapKind::Isomorphism);
                    assert!(!row.discrepancy, "r={r} degree={}", row.degree);
                } else {
                    assert_eq!(row.degree, r);
                    assert_eq!((row.source_dim, row.target_dim), (2, 0));
                    assert_eq!(row.computed, MapKind::Zero);
                    assert_eq!(row.claimed, MapKind::Isomorphism);
                    assert!(row.discrepancy);
                }
            }
        }
    }

    #[test]
    fn chow_ring_relations() {
        let ring = chow_dq_ring(3).unwrap();
        let b = ring.b_tilde();
        let b2 = ring.mul(&b, &b).unwrap();
        assert!(!b2.is_zero());
        assert!(ring.mul(&b2, &b).unwrap().is_zero());
        // 2b = 0
        let two = ring.integer(2);
        assert!(ring.mul(&two, &b).unwrap().is_zero());
        // degree-0 part is the integers: 3 * 1 = 3
        let three = ring.mul(&ring.integer(3), &ring.integer(1)).unwrap();
        assert_eq!(three.free_part, 3);
        // (1 + b)(1 + b) = 1 + 2b + b^2 = 1 + b^2
        let one_plus_b = ring.add(&ring.integer(1), &b).unwrap();
        let sq = ring.mul(&one_plus_b, &one_plus_b).unwrap();
        assert_eq!(sq.free_part, 1);
        assert_eq!(sq.torsion_bits, ring.b_pow(2).torsion_bits);
    }

    #[test]
    fn chow_relations_up_to_64() {
        for r in 2..=64usize {
            let ring = chow_dq_ring(r).unwrap();
            assert!(!ring.b_pow(r - 1).is_zero());
            assert!(ring.b_pow(r).is_zero());
            assert!(ring
                .mul(&ring.integer(2), &ring.b_tilde())
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn motivic_defining_relation() {
        let real = motivic_dq_ring(3, CoefficientMode::RealType).unwrap();
        let a = real.a();
        let a_sq = real.mul(&a, &a);
        let expected = real.add(
            &real.mul(&real.rho().unwrap(), &a),
            &real.mul(&real.tau(), &real.b()),
        );
        assert_eq!(a_sq, expected);

        let closed = motivic_dq_ring(3, CoefficientMode::AlgClosed).unwrap();
        let a = closed.a();
        let a_sq = closed.mul(&a, &a);
        assert_eq!(a_sq, closed.mul(&closed.tau(), &closed.b()));
        assert!(closed.rho().is_err());

        // b^(r-1) * b = 0
        let b_top = real.pow(&real.b(), 2);
        assert!(!b_top.is_zero());
        assert!(real.mul(&b_top, &real.b()).is_zero());
    }

    #[test]
    fn motivic_associativity_and_commutativity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for mode in [CoefficientMode::AlgClosed, CoefficientMode::RealType] {
            for r in [2usize, 3, 5] {
                let ring = motivic_dq_ring(r, mode).unwrap();
                let random_elem = |rng: &mut ChaCha8Rng| {
                    let mut e = ring.zero();
                    for _ in 0..rng.gen_range(1..4) {
                        let rho = match mode {
                            CoefficientMode::AlgClosed => 0,
                            CoefficientMode::RealType => rng.gen_range(0..3),
                        };
                        let m = ring
                            .monomial(
                                rng.gen_range(0..3),
                                rho,
                                rng.gen_bool(0.5),
                                rng.gen_range(0..r as u32),
                            )
                            .unwrap();
                        e = ring.add(&e, &m);
                    }
                    e
                };
                for _ in 0..100 {
                    let x = random_elem(&mut rng);
                    let y = random_elem(&mut rng);
                    let z = random_elem(&mut rng);
                    assert_eq!(ring.mul(&x, &y), ring.mul(&y, &x));
                    assert_eq!(
                        ring.mul(&ring.mul(&x, &y), &z),
                        ring.mul(&x, &ring.mul(&y, &z))
                    );
                    // distributivity
                    assert_eq!(
                        ring.mul(&x, &ring.add(&y, &z)),
                        ring.add(&ring.mul(&x, &y), &ring.mul(&x, &z))
                    );
                }
            }
        }
    }

    #[test]
    fn alg_closed_specialization_is_truncated_polynomial_ring() {
        // with tau = 1: dimension 1 in every degree 0..2r-1, a^(2r-1) != 0,
        // a^(2r) = 0
        for r in 1..=8usize {
            let ring = motivic_dq_ring(r, CoefficientMode::AlgClosed).unwrap();
            let a = ring.a();
            // basis monomials a^e b^m map bijectively onto degrees e + 2m
            let mut seen = vec![false; 2 * r];
            for e in 0..=1u32 {
                for m in 0..r as u32 {
                    let mono = ring.monomial(0, 0, e == 1, m).unwrap();
                    let bits = ring.tau_one_specialization(&mono).unwrap();
                    let deg = (e + 2 * m) as usize;
                    assert_eq!(bits, 1u128 << deg);
                    assert!(!seen[deg]);
                    seen[deg] = true;
                }
            }
            assert!(seen.into_iter().all(|s| s));
            // a^(2r-1) != 0 and a^(2r) = 0 in the ring itself
            let top = ring.pow(&a, (2 * r - 1) as u32);
            assert!(!top.is_zero(), "r = {r}");
            assert!(ring.mul(&top, &a).is_zero());
        }
    }

    #[test]
    fn tau_one_specialization_is_a_ring_map() {
        let ring = motivic_dq_ring(4, CoefficientMode::AlgClosed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let clmul = |x: u128, y: u128, r: usize| {
            let mut acc = 0u128;
            let mut rest = x;
            while rest != 0 {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                acc ^= y << i;
            }
            acc & ((1u128 << (2 * r)) - 1)
        };
        for _ in 0..200 {
            let mut x = ring.zero();
            let mut y = ring.zero();
            for _ in 0..3 {
                x = ring.add(
                    &x,
                    &ring
                        .monomial(
                            rng.gen_range(0..3),
                            0,
                            rng.gen_bool(0.5),
                            rng.gen_range(0..4),
                        )
                        .unwrap(),
                );
                y = ring.add(
                    &y,
                    &ring
                        .monomial(
                            rng.gen_range(0..3),
                            0,
                            rng.gen_bool(0.5),
                            rng.gen_range(0..4),
                        )
                        .unwrap(),
                );
            }
            let lhs = ring.tau_one_specialization(&ring.mul(&x, &y)).unwrap();
            let rhs = clmul(
                ring.tau_one_specialization(&x).unwrap(),
                ring.tau_one_specialization(&y).unwrap(),
                4,
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn motivic_stabilization_is_a_ring_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for mode in [CoefficientMode::AlgClosed, CoefficientMode::RealType] {
            let source = motivic_dq_ring(4, mode).unwrap();
            let target = motivic_dq_ring(3, mode).unwrap();
            // b^r -> 0, b^(r-1) -> b^(r-1), a b^(r-1) -> a b^(r-1)
            let b3 = source.pow(&source.b(), 3);
            assert!(source.truncate_into(&target, &b3).unwrap().is_zero());
            let b2 = source.pow(&source.b(), 2);
            assert_eq!(
                source.truncate_into(&target, &b2).unwrap(),
                target.pow(&target.b(), 2)
            );
            let ab2 = source.mul(&source.a(), &b2);
            assert_eq!(
                source.truncate_into(&target, &ab2).unwrap(),
                target.mul(&target.a(), &target.pow(&target.b(), 2))
            );
            // map(x y) = map(x) map(y) on random pairs
            for _ in 0..100 {
                let mut x = source.zero();
                let mut y = source.zero();
                for _ in 0..3 {
                    let rho = match mode {
                        CoefficientMode::AlgClosed => 0,
                        CoefficientMode::RealType => rng.gen_range(0..2),
                    };
                    x = source.add(
                        &x,
                        &source
                            .monomial(
                                rng.gen_range(0..2),
                                rho,
                                rng.gen_bool(0.5),
                                rng.gen_range(0..4),
                            )
                            .unwrap(),
                    );
                    y = source.add(
                        &y,
                        &source
                            .monomial(
                                rng.gen_range(0..2),
                                rho,
                                rng.gen_bool(0.5),
                                rng.gen_range(0..4),
                            )
                            .unwrap(),
                    );
                }
                let lhs = source.truncate_into(&target, &source.mul(&x, &y)).unwrap();
                let rhs = target.mul(
                    &source.truncate_into(&target, &x).unwrap(),
                    &source.truncate_into(&target, &y).unwrap(),
                );
                assert_eq!(lhs, rhs);
            }
            // mode mismatch is an error
            let other = motivic_dq_ring(
                3,
                match mode {
                    CoefficientMode::AlgClosed => CoefficientMode::RealType,
                    CoefficientMode::RealType => CoefficientMode::AlgClosed,
                },
            )
            .unwrap();
            assert!(source.truncate_into(&other, &source.one()).is_err());
        }
    }

    #[test]
    fn mod2_chow_comparison() {
        // the span of the b-tilde powers maps isomorphically onto the
        // subring generated by b, compatibly with products
        for r in 2..=8usize {
            let chow = chow_dq_ring(r).unwrap();
            let motivic = motivic_dq_ring(r, CoefficientMode::RealType).unwrap();
            let to_motivic = |x: &ChowElem| {
                let mut out = if x.free_part.rem_euclid(2) == 1 {
                    motivic.one()
                } else {
                    motivic.zero()
                };
                for k in 1..r {
                    if x.torsion_bits >> k & 1 == 1 {
                        out = motivic.add(&out, &motivic.pow(&motivic.b(), k as u32));
                    }
                }
                out
            };
            // injectivity on the power basis
            for k in 0..r {
                assert!(!to_motivic(&chow.b_pow(k)).is_zero());
            }
            // multiplicativity on random mod-2 combinations
            let mut rng = ChaCha8Rng::seed_from_u64(31);
            for _ in 0..100 {
                let rand_elem = |rng: &mut ChaCha8Rng| {
                    let mut e = chow.integer(rng.gen_range(0..2));
                    for k in 1..r {
                        if rng.gen_bool(0.4) {
                            e = chow.add(&e, &chow.b_pow(k)).unwrap();
                        }
                    }
                    e
                };
                let x = rand_elem(&mut rng);
                let y = rand_elem(&mut rng);
                let lhs = to_motivic(&chow.mul(&x, &y).unwrap());
                let rhs = motivic.mul(&to_motivic(&x), &to_motivic(&y));
                assert_eq!(lhs, rhs, "r={r}");
            }
        }
    }

    #[test]
    fn dimension_queries() {
        let real = motivic_dq_ring(2, CoefficientMode::RealType).unwrap();
        // bidegree (1,1): rho and a
        assert_eq!(real.dimension_in_bidegree(1, 1), 2);
        // bidegree (0,1): tau
        assert_eq!(real.dimension_in_bidegree(0, 1), 1);
        // bidegree (2,1): b
        assert!(real.dimension_in_bidegree(2, 1) >= 1);
        let closed = motivic_dq_ring(2, CoefficientMode::AlgClosed).unwrap();
        assert_eq!(closed.dimension_in_bidegree(1, 1), 1); // just a
    }

    #[test]
    fn chase_certificate_witnesses() {
        let cert = chase_certificate(2).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.witness_degree, 1);
        assert!(cert.nonzero_at_r && cert.zero_below);
        for r in [10usize, 64] {
            let cert = chase_certificate(r).unwrap();
            assert!(cert.holds, "r = {r}");
            assert_eq!(cert.witness_degree, r - 1);
        }
        assert!(chase_certificate(1).is_err());
    }

    #[test]
    fn ojanguren_certificate_witnesses() {
        let cert = ojanguren_certificate(2).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.witness_degree, 1);
        for r in [10usize, 64] {
            let cert = ojanguren_certificate(r).unwrap();
            assert!(cert.holds, "r = {r}");
        }
        // the composite through the top truncation really is b -> b
        let top = chow_dq_ring(5).unwrap();
        let mid = chow_dq_ring(3).unwrap();
        let image = top.truncate_into(&mid, &top.b_pow(2)).unwrap();
        assert_eq!(image, mid.b_pow(2));
        assert!(ojanguren_certificate(1).is_err());
    }

    #[test]
    fn certificates_complete_quickly_up_to_64() {
        let start = std::time::Instant::now();
        for r in 2..=64usize {
            assert!(chase_certificate(r).unwrap().holds);
            assert!(ojanguren_certificate(r).unwrap().holds);
        }
        let elapsed = start.elapsed();
        assert!(elapsed.as_secs() < 5, "took {elapsed:?}");
    }
}
