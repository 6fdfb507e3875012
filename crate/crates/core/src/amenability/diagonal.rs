use std::sync::Arc;

use serde::Serialize;

use super::{is_left_invariant, JohnsonCertificate};
use crate::algebra::{Element, Functional};
use crate::field::Scalar;
use crate::group::FiniteGroup;
use crate::hopf::{e_map, pi0, EnvelopingQuotient, TensorElement, TensorFlavor};
use crate::linalg::{Solution, SparseSystem};
use crate::Error;

/// A virtual diagonal of `l(G)`, stored in the enveloping flavor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct VirtualDiagonal {
    tensor: TensorElement,
}

impl VirtualDiagonal {
    /// Wraps `t` after checking both diagonal identities.
    pub fn new(t: TensorElement) -> Result<Self, Error> {
        let d = VirtualDiagonal {
            tensor: t.with_flavor(TensorFlavor::Enveloping),
        };
        d.verify()?;
        Ok(d)
    }

    /// `|G|^{-1} Σ_g δ_g ⊗ δ_{g^{-1}}`
    pub fn closed_form(group: &Arc<FiniteGroup>) -> TensorElement {
        let n = Scalar::from_integer(group.order() as i64);
        let avg = Element::ones(group).scale(&n.inv().expect("positive order"));
        e_map(&avg)
    }

    pub fn tensor(&self) -> &TensorElement {
        &self.tensor
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.tensor.group()
    }

    /// Basis elements `a` violating `(a⊗1)d = (1⊗a)d`.
    pub fn commutation_failures(&self) -> Vec<usize> {
        let g = self.group();
        let d = &self.tensor;
        g.elements()
            .filter(|&a| {
                let left = TensorElement::basis(g, TensorFlavor::Enveloping, a, g.identity());
                let right = TensorElement::basis(g, TensorFlavor::Enveloping, g.identity(), a);
                left.mul(d).ok() != right.mul(d).ok()
            })
            .collect()
    }

    /// Basis elements `a` violating `π_0(d)⋆a = a⋆π_0(d) = a`.
    pub fn unit_failures(&self) -> Vec<usize> {
        let g = self.group();
        let p = pi0(&self.tensor);
        g.elements()
            .filter(|&a| {
                let a = Element::delta(g, a);
                p.convolve(&a).ok().as_ref() != Some(&a) || a.convolve(&p).ok().as_ref() != Some(&a)
            })
            .collect()
    }

    pub fn verify(&self) -> Result<(), Error> {
        let bad = self.commutation_failures();
        if let Some(&a) = bad.first() {
            return Err(Error::Invariant(format!(
                "(a⊗1)d != (1⊗a)d for a = {} over {}",
                self.group().label(a),
                self.group().name()
            )));
        }
        let bad = self.unit_failures();
        if let Some(&a) = bad.first() {
            return Err(Error::Invariant(format!(
                "π_0(d) is not a unit on a = {} over {}",
                self.group().label(a),
                self.group().name()
            )));
        }
        Ok(())
    }
}

/// Builds the virtual diagonal by following the amenable-implies-diagonal
/// argument: lift `δ_e` to the class of `(δ_e⊗δ_e)⊗1` in `A^e_E ⊗_A K`,
/// tensor with the mean `β` and map `u ⊗ β ↦ u·E(β)`.
pub fn virtual_diagonal_construct(
    group: &Arc<FiniteGroup>,
    johnson: &JohnsonCertificate,
    cap: usize,
) -> Result<VirtualDiagonal, Error> {
    let Some(mean) = johnson.mean.as_ref().filter(|_| johnson.amenable) else {
        return Err(Error::Invariant(format!(
            "no invariant mean for {}; cannot build a virtual diagonal",
            group.name()
        )));
    };
    crate::algebra::same_group(group, mean.group())?;
    let quotient = EnvelopingQuotient::build(group, cap)?;
    let unit = TensorElement::unit(group, TensorFlavor::Enveloping);

    let class = quotient.from_algebra(&Element::unit(group))?;
    if class != quotient.class_of(&unit)? {
        return Err(Error::Invariant(
            "preimage of δ_e is not the class of δ_e⊗δ_e".into(),
        ));
    }
    let u = quotient.representative(&class);
    let beta = mean.as_element();
    let d = u.mul(&e_map(&beta))?;

    if d != unit.mul(&e_map(&beta))? {
        return Err(Error::Invariant(
            "u·E(β) depends on the representative of the class".into(),
        ));
    }
    if d != VirtualDiagonal::closed_form(group) {
        return Err(Error::Invariant(format!(
            "constructed diagonal over {} differs from |G|^-1 Σ δ_g⊗δ_g^-1",
            group.name()
        )));
    }
    if pi0(&d) != Element::unit(group).scale(&mean.pair_element(&Element::ones(group))?) {
        return Err(Error::Invariant("π_0(d) != m(𝟙)δ_e".into()));
    }
    VirtualDiagonal::new(d)
}

/// `m(φ) = Σ_{g,h} d_{g,h} φ(g)`, re-verified to be a normalized invariant mean.
pub fn mean_from_diagonal(d: &VirtualDiagonal) -> Result<Functional, Error> {
    let g = d.group();
    let values = g
        .elements()
        .map(|x| g.elements().map(|y| d.tensor.coeff(x, y)).sum())
        .collect();
    let m = Functional::from_values(g, values)?;
    if !is_left_invariant(&m) {
        return Err(Error::Invariant(
            "mean from diagonal is not left invariant".into(),
        ));
    }
    if !m.pair(&Functional::ones(g))?.is_one() {
        return Err(Error::Invariant("mean from diagonal has m(𝟙) != 1".into()));
    }
    Ok(m)
}

/// A right identity of `I^Δ = ker π_0` obtained by solving, compared with
/// `1⊗1 - d`.
#[derive(Debug, Clone, Serialize)]
pub struct DiagonalIdealIdentity {
    /// The solver's particular solution (free variables set to zero).
    pub solved: TensorElement,
    pub closed_form: TensorElement,
    pub kernel_dim: usize,
    pub equations: usize,
    /// Dimension of the space of right identities, as an affine space.
    pub nullity: usize,
    pub matches_closed_form: bool,
}

fn kernel_of_pi0(group: &Arc<FiniteGroup>) -> Vec<TensorElement> {
    let n = group.order();
    let mut sys = SparseSystem::new(n * n);
    for target in group.elements() {
        let row = group
            .elements()
            .map(|x| (x * n + group.mul(group.inverse(x), target), Scalar::one()))
            .collect();
        sys.push_homogeneous(row).expect("columns in range");
    }
    sys.kernel_basis()
        .into_iter()
        .map(|v| TensorElement::from_coeffs(group, TensorFlavor::Enveloping, v).expect("length n²"))
        .collect()
}

fn is_right_identity(u: &TensorElement, basis: &[TensorElement]) -> bool {
    pi0(u).is_zero() && basis.iter().all(|v| v.mul(u).ok().as_ref() == Some(v))
}

/// Solves `π_0(u) = 0, v·u = v` for every `v` in a basis of `ker π_0` and
/// checks that `1⊗1 - d` solves the same system. When the solution is
/// unique the two must coincide.
pub fn diagonal_ideal_identity(d: &VirtualDiagonal) -> Result<DiagonalIdealIdentity, Error> {
    let g = d.group();
    let n = g.order();
    let basis = kernel_of_pi0(g);
    let mut sys = SparseSystem::new(n * n);
    for target in g.elements() {
        let row = g
            .elements()
            .map(|x| (x * n + g.mul(g.inverse(x), target), Scalar::one()))
            .collect();
        sys.push_homogeneous(row)?;
    }
    // (v·u)(x, y) = Σ_{(a,b)} v_{a,b} u_{a^-1 x, y b^-1}
    for v in &basis {
        let support: Vec<(usize, usize, &Scalar)> = (0..n * n)
            .map(|i| (i / n, i % n, &v.coeffs()[i]))
            .filter(|(_, _, c)| !c.is_zero())
            .collect();
        for x in g.elements() {
            for y in g.elements() {
                let row = support
                    .iter()
                    .map(|&(a, b, c)| {
                        let col = g.mul(g.inverse(a), x) * n + g.mul(y, g.inverse(b));
                        (col, c.clone())
                    })
                    .collect();
                sys.push(row, v.coeff(x, y).clone())?;
            }
        }
    }

    let closed_form = TensorElement::unit(g, TensorFlavor::Enveloping).sub(d.tensor())?;
    if !sys.is_satisfied_by(closed_form.coeffs()) || !is_right_identity(&closed_form, &basis) {
        return Err(Error::Invariant(format!(
            "1⊗1 - d is not a right identity of ker π_0 over {}",
            g.name()
        )));
    }
    let (solution, nullity) = match sys.solve() {
        Solution::Consistent { solution, nullity } => (solution, nullity),
        Solution::Inconsistent { .. } => {
            return Err(Error::Invariant(
                "right identity system is inconsistent".into(),
            ))
        }
    };
    let solved = TensorElement::from_coeffs(g, TensorFlavor::Enveloping, solution)?;
    if !is_right_identity(&solved, &basis) {
        return Err(Error::Invariant(
            "solver output is not a right identity of ker π_0".into(),
        ));
    }
    let matches_closed_form = solved == closed_form;
    if nullity == 0 && !matches_closed_form {
        return Err(Error::Invariant(
            "unique right identity of ker π_0 differs from 1⊗1 - d".into(),
        ));
    }
    Ok(DiagonalIdealIdentity {
        solved,
        closed_form,
        kernel_dim: basis.len(),
        equations: sys.len(),
        nullity,
        matches_closed_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amenability::johnson_check;
    use crate::field::FieldDescriptor;
    use crate::group::DEFAULT_ORDER_CAP;

    fn diag(g: FiniteGroup, p: u64) -> VirtualDiagonal {
        let g = Arc::new(g);
        let j = johnson_check(&g, &FieldDescriptor::new(p).unwrap()).unwrap();
        virtual_diagonal_construct(&g, &j, DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn trivial_group_diagonal() {
        let d = diag(FiniteGroup::cyclic(1).unwrap(), 2);
        let g = d.group().clone();
        assert_eq!(
            *d.tensor(),
            TensorElement::unit(&g, TensorFlavor::Enveloping)
        );
        assert_eq!(
            mean_from_diagonal(&d).unwrap(),
            Functional::indicator(&g, 0)
        );
        let r = diagonal_ideal_identity(&d).unwrap();
        assert!(r.solved.is_zero() && r.kernel_dim == 0);
    }

    #[test]
    fn cyclic_two_diagonal() {
        let d = diag(FiniteGroup::cyclic(2).unwrap(), 3);
        let half = Scalar::new(1, 2).unwrap();
        assert_eq!(d.tensor().coeff(0, 0), &half);
        assert_eq!(d.tensor().coeff(1, 1), &half);
        assert!(d.tensor().coeff(0, 1).is_zero());
        let m = mean_from_diagonal(&d).unwrap();
        assert_eq!(m.values(), &[half.clone(), half.clone()]);
        let r = diagonal_ideal_identity(&d).unwrap();
        assert!(r.matches_closed_form);
        assert_eq!(r.nullity, 0);
        assert_eq!(r.closed_form.coeff(0, 0), &half);
        assert_eq!(r.closed_form.coeff(1, 1), &-half);
    }

    #[test]
    fn nonabelian_right_identity_is_not_unique() {
        let d = diag(FiniteGroup::symmetric(3).unwrap(), 5);
        let r = diagonal_ideal_identity(&d).unwrap();
        assert_eq!(r.kernel_dim, 30);
        assert!(r.nullity > 0);
    }

    #[test]
    fn corrupted_diagonal_is_rejected() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let not_diagonal = TensorElement::unit(&g, TensorFlavor::Enveloping);
        assert!(VirtualDiagonal::new(not_diagonal).is_err());
        let mut c = VirtualDiagonal::closed_form(&g).coeffs().to_vec();
        c[0] = Scalar::zero();
        let t = TensorElement::from_coeffs(&g, TensorFlavor::Enveloping, c).unwrap();
        assert!(VirtualDiagonal::new(t).is_err());
    }
}
