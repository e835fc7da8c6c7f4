//! The degree-2 correspondence: trace and involution of a quadratic algebra,
//! the trace-zero line with its square form, the inverse construction from a
//! form value, and the equivalence between generating the algebra and
//! generating the line.

use crate::algebra::{AlgebraElem, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElem};
use crate::linalg::Matrix;

/// A dimension-2 algebra over a field of characteristic different from 2,
/// with its étale flag recorded at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticAlgebra {
    algebra: FiniteAlgebra,
    etale: bool,
}

/// Basis vector of the trace kernel together with the scalar c such that
/// the vector squares to c * 1. The pair (line, c) determines the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineWithForm {
    pub ell: AlgebraElem,
    pub phi_value: FieldElem,
}

/// Trace functional and involution of a quadratic algebra, as a row of
/// values on the basis and a matrix.
#[derive(Clone, Debug)]
pub struct TraceInvolution {
    pub trace_on_basis: Vec<FieldElem>,
    pub sigma: Matrix,
}

impl QuadraticAlgebra {
    pub fn new(algebra: FiniteAlgebra) -> Result<Self> {
        if algebra.dim() != 2 {
            return Err(Error::InvalidInput(format!(
                "quadratic algebra needs dimension 2, got {}",
                algebra.dim()
            )));
        }
        if algebra.field().characteristic() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        let etale = algebra.is_etale()?;
        Ok(QuadraticAlgebra { algebra, etale })
    }

    /// The algebra F[l]/(l^2 - c) on the basis (1, l); multiplication is
    /// (r, x)(r', x') = (rr' + c xx', rx' + r'x). Étale exactly when c != 0;
    /// c = 0 is accepted and flagged non-étale.
    pub fn from_form_value(c: &FieldElem) -> Result<Self> {
        let field = c.descriptor();
        let f =
            crate::poly::UniPoly::from_coeffs(&field, vec![c.neg(), field.zero(), field.one()])?;
        QuadraticAlgebra::new(FiniteAlgebra::monogenic(&f)?)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.algebra.field()
    }

    pub fn is_etale(&self) -> bool {
        self.etale
    }

    /// The trace of the multiplication operator and sigma = Tr - id.
    /// sigma is a unital algebra involution and Tr(x) * 1 = x + sigma(x).
    pub fn trace_and_involution(&self) -> Result<TraceInvolution> {
        let a = &self.algebra;
        let field = a.field();
        let trace_on_basis = (0..2)
            .map(|i| a.trace(&a.basis_elem(i)))
            .collect::<Result<Vec<_>>>()?;
        let mut sigma = Matrix::zero(field, 2, 2);
        for j in 0..2 {
            let img = self.apply_sigma_raw(&trace_on_basis, &a.basis_elem(j))?;
            for (k, v) in img.0.into_iter().enumerate() {
                sigma.set(k, j, v);
            }
        }
        Ok(TraceInvolution {
            trace_on_basis,
            sigma,
        })
    }

    fn apply_sigma_raw(
        &self,
        trace_on_basis: &[FieldElem],
        x: &AlgebraElem,
    ) -> Result<AlgebraElem> {
        let a = &self.algebra;
        let mut t = a.field().zero();
        for (xi, ti) in x.0.iter().zip(trace_on_basis) {
            t = t.add(&xi.mul(ti)?)?;
        }
        a.sub(&a.scalar(&t)?, x)
    }

    pub fn trace(&self, x: &AlgebraElem) -> Result<FieldElem> {
        self.algebra.trace(x)
    }

    pub fn sigma(&self, x: &AlgebraElem) -> Result<AlgebraElem> {
        let ti = self.trace_and_involution()?;
        self.apply_sigma_raw(&ti.trace_on_basis, x)
    }

    /// Spanning vector of ker(Tr), normalized so its first nonzero
    /// coordinate is 1, together with the scalar its square gives on the
    /// unit. The decomposition A = F*1 + ker(Tr) is direct.
    pub fn trace_kernel(&self) -> Result<LineWithForm> {
        let a = &self.algebra;
        let field = a.field();
        let trace_row = Matrix::from_rows(
            field,
            vec![(0..2)
                .map(|i| a.trace(&a.basis_elem(i)))
                .collect::<Result<Vec<_>>>()?],
        )?;
        let kernel = trace_row.kernel_basis()?;
        if kernel.len() != 1 {
            return Err(Error::StructureCheck(
                "trace kernel is not a line (characteristic 2?)".into(),
            ));
        }
        let mut ell = kernel.into_iter().next().unwrap();
        let lead = ell
            .iter()
            .find(|x| !x.is_zero())
            .cloned()
            .expect("kernel basis vector is nonzero");
        let lead_inv = lead.inverse()?;
        for x in ell.iter_mut() {
            *x = x.mul(&lead_inv)?;
        }
        let ell = AlgebraElem(ell);
        let square = a.mul(&ell, &ell)?;
        let phi_value = self.scalar_part(&square)?;
        Ok(LineWithForm { ell, phi_value })
    }

    /// Write x = c * 1; fails if x is not a scalar multiple of the unit.
    fn scalar_part(&self, x: &AlgebraElem) -> Result<FieldElem> {
        let a = &self.algebra;
        let unit = a.unit_elem();
        let k = unit
            .0
            .iter()
            .position(|u| !u.is_zero())
            .expect("unit is nonzero");
        let c = x.0[k].div(&unit.0[k])?;
        if a.scalar(&c)? != *x {
            return Err(Error::StructureCheck(
                "element is not a scalar multiple of the unit".into(),
            ));
        }
        Ok(c)
    }

    /// q(a) = a - (1/2) Tr(a) * 1: the projection onto the trace kernel.
    /// q is linear, q(1) = 0, and Tr(q(a)) = 0.
    pub fn q_projection(&self, x: &AlgebraElem) -> Result<AlgebraElem> {
        let a = &self.algebra;
        let half = a.field().integer(2).inverse()?;
        let t = a.trace(x)?;
        let shift = a.scalar(&t.mul(&half)?)?;
        a.sub(x, &shift)
    }

    /// Both sides of the generation equivalence: does the tuple generate the
    /// algebra, and does some projection q(a_i) land outside zero? For étale
    /// algebras the two verdicts coincide.
    pub fn generation_equivalence_check(
        &self,
        gens: &[AlgebraElem],
    ) -> Result<GenerationEquivalence> {
        if !self.etale {
            return Err(Error::NotEtale);
        }
        let algebra_side = self.algebra.generates(gens)?;
        let zero = self.algebra.zero_elem();
        let mut line_side = false;
        for g in gens {
            if self.q_projection(g)? != zero {
                line_side = true;
                break;
            }
        }
        debug_assert_eq!(algebra_side, line_side, "degree-2 equivalence violated");
        Ok(GenerationEquivalence {
            algebra_side,
            line_side,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerationEquivalence {
    pub algebra_side: bool,
    pub line_side: bool,
}

impl GenerationEquivalence {
    pub fn agree(&self) -> bool {
        self.algebra_side == self.line_side
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::UniPoly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f5() -> FieldDescriptor {
        FieldDescriptor::prime_field(5).unwrap()
    }

    fn monogenic_minus_c(field: &FieldDescriptor, c: i64) -> QuadraticAlgebra {
        let f = UniPoly::from_coeffs(field, vec![field.integer(-c), field.zero(), field.one()])
            .unwrap();
        QuadraticAlgebra::new(FiniteAlgebra::monogenic(&f).unwrap()).unwrap()
    }

    fn elem(a: &QuadraticAlgebra, coords: &[i64]) -> AlgebraElem {
        a.algebra()
            .element(coords.iter().map(|&v| a.field().integer(v)).collect())
            .unwrap()
    }

    #[test]
    fn characteristic_two_rejected() {
        let f2 = FieldDescriptor::prime_field(2).unwrap();
        let split = FiniteAlgebra::split(&f2, 2).unwrap();
        assert_eq!(QuadraticAlgebra::new(split), Err(Error::CharacteristicTwo));
    }

    #[test]
    fn trace_and_sigma_on_monogenic() {
        // A = F5[z]/(z^2 - c): Tr(az + b) = 2b and sigma(z) = -z
        let field = f5();
        for c in 1..5i64 {
            let a = monogenic_minus_c(&field, c);
            for b_val in 0..5i64 {
                for a_val in 0..5i64 {
                    let x = elem(&a, &[b_val, a_val]);
                    assert_eq!(a.trace(&x).unwrap(), field.integer(2 * b_val));
                }
            }
            let z = a.algebra().basis_elem(1);
            assert_eq!(a.sigma(&z).unwrap(), elem(&a, &[0, -1]));
            // sigma(1) = 1
            assert_eq!(
                a.sigma(&a.algebra().unit_elem()).unwrap(),
                a.algebra().unit_elem()
            );
        }
    }

    #[test]
    fn trace_and_sigma_on_split() {
        let field = f5();
        let a = QuadraticAlgebra::new(FiniteAlgebra::split(&field, 2).unwrap()).unwrap();
        // sigma swaps the coordinates, Tr(x, y) = x + y
        let x = elem(&a, &[3, 1]);
        assert_eq!(a.sigma(&x).unwrap(), elem(&a, &[1, 3]));
        assert_eq!(a.trace(&x).unwrap(), field.integer(4));
    }

    #[test]
    fn sigma_is_a_unital_involution() {
        let field = f5();
        for alg in [
            monogenic_minus_c(&field, 2),
            monogenic_minus_c(&field, 1),
            QuadraticAlgebra::new(FiniteAlgebra::split(&field, 2).unwrap()).unwrap(),
        ] {
            for b in 0..5i64 {
                for c in 0..5i64 {
                    let x = elem(&alg, &[b, c]);
                    let sx = alg.sigma(&x).unwrap();
                    // involution
                    assert_eq!(alg.sigma(&sx).unwrap(), x);
                    // Tr(x) * 1 = x + sigma(x)
                    let t = alg.trace(&x).unwrap();
                    let sum = alg.algebra().add(&x, &sx).unwrap();
                    assert_eq!(alg.algebra().scalar(&t).unwrap(), sum);
                }
            }
            // multiplicative on a spot check of pairs
            for (u, v) in [([1, 2], [3, 4]), ([0, 1], [0, 1]), ([2, 0], [1, 1])] {
                let x = elem(&alg, &u);
                let y = elem(&alg, &v);
                let lhs = alg.sigma(&alg.algebra().mul(&x, &y).unwrap()).unwrap();
                let rhs = alg
                    .algebra()
                    .mul(&alg.sigma(&x).unwrap(), &alg.sigma(&y).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn trace_kernel_examples() {
        let field = f5();
        // F5[z]/(z^2 - 2): ell = z, phi = 2
        let a = monogenic_minus_c(&field, 2);
        let line = a.trace_kernel().unwrap();
        assert_eq!(line.ell, elem(&a, &[0, 1]));
        assert_eq!(line.phi_value, field.integer(2));

        // split F5^2: ell = (1, 4), ell^2 = (1, 1), phi = 1
        let s = QuadraticAlgebra::new(FiniteAlgebra::split(&field, 2).unwrap()).unwrap();
        let line = s.trace_kernel().unwrap();
        assert_eq!(line.ell, elem(&s, &[1, 4]));
        assert_eq!(line.phi_value, field.one());

        // scaling ell by u scales the form value by u^2
        for u in 1..5i64 {
            let scaled = s.algebra().scale(&field.integer(u), &line.ell).unwrap();
            let sq = s.algebra().mul(&scaled, &scaled).unwrap();
            let expected = field.integer(u * u).mul(&line.phi_value).unwrap();
            assert_eq!(sq, s.algebra().scalar(&expected).unwrap());
        }
    }

    #[test]
    fn from_form_value_examples() {
        let field = f5();
        // c = 1 gives the split algebra: (1 +- ell)/2 are idempotents
        let a = QuadraticAlgebra::from_form_value(&field.one()).unwrap();
        assert!(a.is_etale());
        let half = field.integer(2).inverse().unwrap();
        let one = a.algebra().unit_elem();
        let ell = a.algebra().basis_elem(1);
        for sign in [1i64, -1] {
            let e = a
                .algebra()
                .scale(
                    &half,
                    &a.algebra()
                        .add(
                            &one,
                            &a.algebra().scale(&field.integer(sign), &ell).unwrap(),
                        )
                        .unwrap(),
                )
                .unwrap();
            assert_eq!(a.algebra().mul(&e, &e).unwrap(), e);
        }
        let idems = a.algebra().primitive_idempotents().unwrap();
        assert_eq!(idems.len(), 2);

        // c = 0: accepted, flagged non-étale
        let degenerate = QuadraticAlgebra::from_form_value(&field.zero()).unwrap();
        assert!(!degenerate.is_etale());

        // c = 2: étale but nonsplit, since 2 is not a square mod 5
        let nonsplit = QuadraticAlgebra::from_form_value(&field.integer(2)).unwrap();
        assert!(nonsplit.is_etale());
        assert_eq!(
            nonsplit.algebra().primitive_idempotents(),
            Err(Error::DoesNotSplit {
                factor_degrees: vec![2]
            })
        );
    }

    #[test]
    fn roundtrip_form_value() {
        // trace_kernel(from_form_value(c)) recovers c for every c in F5
        let field = f5();
        for c in 0..5i64 {
            let a = QuadraticAlgebra::from_form_value(&field.integer(c)).unwrap();
            let line = a.trace_kernel().unwrap();
            assert_eq!(line.phi_value, field.integer(c));
            assert_eq!(line.ell, elem(&a, &[0, 1]));
            // the other direction on the chosen basis: rebuilding from the
            // extracted form value gives the same structure constants
            let back = QuadraticAlgebra::from_form_value(&line.phi_value).unwrap();
            assert_eq!(back.algebra(), a.algebra());
        }
    }

    #[test]
    fn q_projection_examples() {
        let field = f5();
        let a = monogenic_minus_c(&field, 3);
        // q(az + b) = az
        for b in 0..5i64 {
            for c in 0..5i64 {
                let x = elem(&a, &[b, c]);
                assert_eq!(a.q_projection(&x).unwrap(), elem(&a, &[0, c]));
            }
        }
        // q(1) = 0
        assert_eq!(
            a.q_projection(&a.algebra().unit_elem()).unwrap(),
            a.algebra().zero_elem()
        );
        // split F5^2 with a = (3, 1): Tr = 4, q(a) = (1, 4)
        let s = QuadraticAlgebra::new(FiniteAlgebra::split(&field, 2).unwrap()).unwrap();
        assert_eq!(a.field(), s.field());
        assert_eq!(
            s.q_projection(&elem(&s, &[3, 1])).unwrap(),
            elem(&s, &[1, 4])
        );
    }

    #[test]
    fn splitting_identity_random() {
        // a = (1/2) Tr(a) * 1 + q(a) on random elements
        let field = f5();
        let a = monogenic_minus_c(&field, 2);
        let s = QuadraticAlgebra::new(FiniteAlgebra::split(&field, 2).unwrap()).unwrap();
        let half = field.integer(2).inverse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            for alg in [&a, &s] {
                let x = elem(alg, &[rng.gen_range(0..5), rng.gen_range(0..5)]);
                let t = alg.trace(&x).unwrap();
                let scalar = alg.algebra().scalar(&t.mul(&half).unwrap()).unwrap();
                let back = alg
                    .algebra()
                    .add(&scalar, &alg.q_projection(&x).unwrap())
                    .unwrap();
                assert_eq!(back, x);
            }
        }
    }

    #[test]
    fn generation_equivalence_examples() {
        let field = f5();
        let a = monogenic_minus_c(&field, 2);
        // z + 3 generates and has nonzero projection
        let check = a
            .generation_equivalence_check(&[elem(&a, &[3, 1])])
            .unwrap();
        assert_eq!((check.algebra_side, check.line_side), (true, true));
        // scalars do not generate and are killed by q
        let check = a
            .generation_equivalence_check(&[elem(&a, &[1, 0]), elem(&a, &[4, 0])])
            .unwrap();
        assert_eq!((check.algebra_side, check.line_side), (false, false));
        // split algebra, equal coordinates
        let s = QuadraticAlgebra::new(FiniteAlgebra::split(&field, 2).unwrap()).unwrap();
        let check = s
            .generation_equivalence_check(&[elem(&s, &[2, 2])])
            .unwrap();
        assert_eq!((check.algebra_side, check.line_side), (false, false));
        // non-étale algebras are rejected
        let degenerate = QuadraticAlgebra::from_form_value(&field.zero()).unwrap();
        assert_eq!(
            degenerate.generation_equivalence_check(&[elem(&degenerate, &[0, 1])]),
            Err(Error::NotEtale)
        );
    }

    #[test]
    fn generation_equivalence_exhaustive_single() {
        // every c in F5^x, every single-element tuple: the two sides agree
        let field = f5();
        for c in 1..5i64 {
            let a = QuadraticAlgebra::from_form_value(&field.integer(c)).unwrap();
            for b in 0..5i64 {
                for d in 0..5i64 {
                    let check = a
                        .generation_equivalence_check(&[elem(&a, &[b, d])])
                        .unwrap();
                    assert!(check.agree());
                    // the line side is just d != 0
                    assert_eq!(check.line_side, d != 0);
                }
            }
        }
    }

    #[test]
    fn sigma_is_the_unique_nontrivial_automorphism() {
        // enumerate all unital algebra automorphisms of étale quadratics
        // over F3 and F5: exactly two, the identity and sigma
        for p in [3u64, 5] {
            let field = FieldDescriptor::prime_field(p).unwrap();
            for c in 1..p as i64 {
                let alg = QuadraticAlgebra::from_form_value(&field.integer(c)).unwrap();
                let a = alg.algebra();
                let ti = alg.trace_and_involution().unwrap();
                let mut autos = Vec::new();
                for code in 0..(p as usize).pow(4) {
                    let mut v = Vec::with_capacity(4);
                    let mut cc = code;
                    for _ in 0..4 {
                        v.push(field.integer((cc % p as usize) as i64));
                        cc /= p as usize;
                    }
                    let image =
                        |j: usize| AlgebraElem(vec![v[2 * j].clone(), v[2 * j + 1].clone()]);
                    let m = Matrix::from_rows(
                        &field,
                        vec![
                            vec![v[0].clone(), v[2].clone()],
                            vec![v[1].clone(), v[3].clone()],
                        ],
                    )
                    .unwrap();
                    if m.determinant().unwrap().is_zero() {
                        continue;
                    }
                    if image(0) != a.unit_elem() {
                        continue;
                    }
                    let z_img = image(1);
                    let lhs = a.mul(&z_img, &z_img).unwrap();
                    let rhs = a.scalar(&field.integer(c)).unwrap();
                    if lhs == rhs {
                        autos.push(code);
                    }
                }
                assert_eq!(autos.len(), 2, "p={p} c={c}");
                // one of them is sigma
                let sigma_col = (ti.sigma.get(0, 1).clone(), ti.sigma.get(1, 1).clone());
                assert_eq!(sigma_col, (field.zero(), field.integer(-1)));
            }
        }
    }
}
