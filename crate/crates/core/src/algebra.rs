//! The group algebra `l(G)` of a finite group over `Q ⊂ Q_p`.
//!
//! An [`Element`] is `f = Σ α_g δ_g`, with sup norm `max |α_g|_p` and
//! convolution product. For finite `G` the spaces `l(G)`, `l^∞(G)` and
//! their duals all have the same coordinates; [`Functional`] is the common
//! representation of functions on `G` (elements of `l^∞(G) = l(G)^*`) and
//! of functionals on them (elements of `l^∞(G)^* = l(G)^**`), with the
//! pairing `<m, φ> = Σ_h m_h φ_h` written out explicitly.

use std::sync::Arc;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::field::{AbsValue, Prime, Scalar};
use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live over different groups ({0} vs {1})")]
    GroupMismatch(String, String),
    #[error("expected {expected} coefficients, found {found}")]
    Length { expected: usize, found: usize },
    #[error("element index {0} out of range")]
    BadElement(usize),
    #[error("{0}")]
    Check(String),
}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<(), AlgebraError> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(AlgebraError::GroupMismatch(
            a.name().to_string(),
            b.name().to_string(),
        ))
    }
}

/// Largest absolute value of a coefficient list.
pub fn sup_norm<'a>(coeffs: impl IntoIterator<Item = &'a Scalar>, p: Prime) -> AbsValue {
    coeffs
        .into_iter()
        .map(|c| c.abs_value(p))
        .max()
        .unwrap_or(AbsValue::Zero)
}

/// An element `Σ α_g δ_g` of `l(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    group: Arc<FiniteGroup>,
    coeffs: Vec<Scalar>,
}

impl Element {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        Element {
            group: group.clone(),
            coeffs: vec![Scalar::zero(); group.order()],
        }
    }

    /// The point mass `δ_g`.
    pub fn delta(group: &Arc<FiniteGroup>, g: usize) -> Self {
        let mut e = Self::zero(group);
        e.coeffs[g] = Scalar::one();
        e
    }

    /// The unit `δ_e`.
    pub fn unit(group: &Arc<FiniteGroup>) -> Self {
        Self::delta(group, group.identity())
    }

    /// All coefficients equal to one.
    pub fn ones(group: &Arc<FiniteGroup>) -> Self {
        Element {
            group: group.clone(),
            coeffs: vec![Scalar::one(); group.order()],
        }
    }

    pub fn from_coeffs(
        group: &Arc<FiniteGroup>,
        coeffs: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        if coeffs.len() != group.order() {
            return Err(AlgebraError::Length {
                expected: group.order(),
                found: coeffs.len(),
            });
        }
        Ok(Element {
            group: group.clone(),
            coeffs,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn coeff(&self, g: usize) -> &Scalar {
        &self.coeffs[g]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Element) -> Result<Element, AlgebraError> {
        same_group(&self.group, &other.group)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Element {
            group: self.group.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        same_group(&self.group, &other.group)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Element {
            group: self.group.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `(f ⋆ h)(g) = Σ_t α_t β_{t^{-1} g}`
    pub fn convolve(&self, other: &Element) -> Result<Element, AlgebraError> {
        same_group(&self.group, &other.group)?;
        let g = &self.group;
        let mut out = vec![Scalar::zero(); g.order()];
        for (t, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (s, b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                out[g.mul(t, s)] += a * b;
            }
        }
        Ok(Element {
            group: g.clone(),
            coeffs: out,
        })
    }

    /// `‖f‖ = max_g |α_g|_p`, as an exponent of `p`.
    pub fn norm(&self, p: Prime) -> AbsValue {
        sup_norm(&self.coeffs, p)
    }

    /// `ε(f) = Σ_g α_g`
    pub fn augmentation(&self) -> Scalar {
        self.coeffs.iter().sum()
    }

    /// Membership in the augmentation ideal `I_0 = ker ε`.
    pub fn in_augmentation_ideal(&self) -> bool {
        self.augmentation().is_zero()
    }

    /// `f̃(s) = f(s^{-1})`
    pub fn reflect(&self) -> Element {
        let g = &self.group;
        let mut out = vec![Scalar::zero(); g.order()];
        for (s, a) in self.coeffs.iter().enumerate() {
            out[g.inverse(s)] = a.clone();
        }
        Element {
            group: g.clone(),
            coeffs: out,
        }
    }

    /// Reinterprets the coefficients as a function on `G`.
    pub fn as_functional(&self) -> Functional {
        Functional {
            group: self.group.clone(),
            values: self.coeffs.clone(),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_labelled(&self.group, &self.coeffs, s)
    }
}

fn serialize_labelled<S: Serializer>(
    group: &FiniteGroup,
    values: &[Scalar],
    s: S,
) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(values.len()))?;
    for (g, v) in values.iter().enumerate() {
        map.serialize_entry(group.label(g), v)?;
    }
    map.end()
}

/// A function on `G` (or a functional on such functions); see the module docs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functional {
    group: Arc<FiniteGroup>,
    values: Vec<Scalar>,
}

impl Functional {
    pub fn from_values(
        group: &Arc<FiniteGroup>,
        values: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        if values.len() != group.order() {
            return Err(AlgebraError::Length {
                expected: group.order(),
                found: values.len(),
            });
        }
        Ok(Functional {
            group: group.clone(),
            values,
        })
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        Functional {
            group: group.clone(),
            values: vec![Scalar::zero(); group.order()],
        }
    }

    /// The constant function `𝟙`.
    pub fn ones(group: &Arc<FiniteGroup>) -> Self {
        Functional {
            group: group.clone(),
            values: vec![Scalar::one(); group.order()],
        }
    }

    /// Indicator of a single element.
    pub fn indicator(group: &Arc<FiniteGroup>, h: usize) -> Self {
        let mut f = Self::zero(group);
        f.values[h] = Scalar::one();
        f
    }

    /// `φ ↦ |G|^{-1} Σ_g φ(g)`.
    pub fn averaging(group: &Arc<FiniteGroup>) -> Self {
        let w = Scalar::new(1, group.order() as i64).expect("positive order");
        Functional {
            group: group.clone(),
            values: vec![w; group.order()],
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value(&self, h: usize) -> &Scalar {
        &self.values[h]
    }

    pub fn scale(&self, c: &Scalar) -> Functional {
        Functional {
            group: self.group.clone(),
            values: self.values.iter().map(|a| a * c).collect(),
        }
    }

    /// `<self, φ> = Σ_h self_h φ_h`
    pub fn pair(&self, phi: &Functional) -> Result<Scalar, AlgebraError> {
        same_group(&self.group, &phi.group)?;
        Ok(crate::linalg::dot(&self.values, &phi.values))
    }

    /// `<self, f> = Σ_h self_h α_h`
    pub fn pair_element(&self, f: &Element) -> Result<Scalar, AlgebraError> {
        same_group(&self.group, &f.group)?;
        Ok(crate::linalg::dot(&self.values, &f.coeffs))
    }

    /// Operator norm `max_h |m_h|_p` under sup-norm duality.
    pub fn norm(&self, p: Prime) -> AbsValue {
        sup_norm(&self.values, p)
    }

    /// `(g·φ)(h) = φ(g^{-1} h)`
    pub fn left_translate(&self, g: usize) -> Result<Functional, AlgebraError> {
        let grp = &self.group;
        if g >= grp.order() {
            return Err(AlgebraError::BadElement(g));
        }
        let ginv = grp.inverse(g);
        let values = grp
            .elements()
            .map(|h| self.values[grp.mul(ginv, h)].clone())
            .collect();
        Ok(Functional {
            group: grp.clone(),
            values,
        })
    }

    /// The right action of `l(G)` on `l^∞(G)`: `φ·h = h̃ ⋆ φ`.
    pub fn dual_right_action(&self, h: &Element) -> Result<Functional, AlgebraError> {
        same_group(&self.group, &h.group)?;
        let grp = &self.group;
        let reflected = h.reflect();
        // (h̃ ⋆ φ)(x) = Σ_t h̃(t) φ(t^{-1} x)
        let values = grp
            .elements()
            .map(|x| {
                reflected
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(t, a)| a * &self.values[grp.mul(grp.inverse(t), x)])
                    .sum()
            })
            .collect();
        Ok(Functional {
            group: grp.clone(),
            values,
        })
    }

    pub fn as_element(&self) -> Element {
        Element {
            group: self.group.clone(),
            coeffs: self.values.clone(),
        }
    }
}

impl Serialize for Functional {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_labelled(&self.group, &self.values, s)
    }
}

/// Basis `δ_g - δ_e` (`g != e`) of the augmentation ideal.
pub fn augmentation_ideal_basis(group: &Arc<FiniteGroup>) -> Vec<Element> {
    let unit = Element::unit(group);
    group
        .elements()
        .filter(|&g| g != group.identity())
        .map(|g| Element::delta(group, g).sub(&unit).expect("same group"))
        .collect()
}

/// The identity element of the ideal `I_0`.
#[derive(Debug, Clone)]
pub struct I0Identity {
    pub element: Element,
    pub norm: AbsValue,
    pub basis_checked: usize,
}

/// `e_0 = δ_e - |G|^{-1} 𝟙`, checked to be a two-sided identity on a basis
/// of `I_0`. In finite dimension this is the bounded approximate identity
/// of `I_0`, and its norm is `p^{v_p(|G|)}`.
pub fn i0_identity(group: &Arc<FiniteGroup>, p: Prime) -> Result<I0Identity, AlgebraError> {
    let n = Scalar::from_integer(group.order() as i64);
    let avg = Element::ones(group).scale(&n.inv().expect("positive order"));
    let e0 = Element::unit(group).sub(&avg)?;
    if !e0.in_augmentation_ideal() {
        return Err(AlgebraError::Check("e_0 is not in I_0".into()));
    }
    let basis = augmentation_ideal_basis(group);
    for f in &basis {
        if f.convolve(&e0)? != *f || e0.convolve(f)? != *f {
            return Err(AlgebraError::Check(format!(
                "e_0 fails to act as identity on a basis vector of I_0 over {}",
                group.name()
            )));
        }
    }
    Ok(I0Identity {
        norm: e0.norm(p),
        element: e0,
        basis_checked: basis.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn point_masses_multiply_like_the_group() {
        let g = grp(FiniteGroup::symmetric(3).unwrap());
        for a in g.elements() {
            for b in g.elements() {
                let prod = Element::delta(&g, a)
                    .convolve(&Element::delta(&g, b))
                    .unwrap();
                assert_eq!(prod, Element::delta(&g, g.mul(a, b)));
            }
        }
        let f = Element::from_coeffs(
            &g,
            (0..6).map(|i| Scalar::from_integer(i * i - 3)).collect(),
        )
        .unwrap();
        assert_eq!(Element::unit(&g).convolve(&f).unwrap(), f);
        assert_eq!(f.convolve(&Element::unit(&g)).unwrap(), f);
    }

    #[test]
    fn zero_divisor_in_order_two() {
        let g = grp(FiniteGroup::cyclic(2).unwrap());
        let plus = Element::from_coeffs(&g, vec![Scalar::one(), Scalar::one()]).unwrap();
        let minus = Element::from_coeffs(&g, vec![Scalar::one(), -Scalar::one()]).unwrap();
        assert!(plus.convolve(&minus).unwrap().is_zero());
    }

    #[test]
    fn group_mismatch_is_an_error() {
        let a = grp(FiniteGroup::cyclic(2).unwrap());
        let b = grp(FiniteGroup::cyclic(3).unwrap());
        assert!(matches!(
            Element::unit(&a).convolve(&Element::unit(&b)),
            Err(AlgebraError::GroupMismatch(..))
        ));
        // structurally equal groups behind different pointers are accepted
        let c = grp(FiniteGroup::cyclic(2).unwrap());
        assert!(Element::unit(&a).convolve(&Element::unit(&c)).is_ok());
    }

    #[test]
    fn norms() {
        let g = grp(FiniteGroup::cyclic(2).unwrap());
        assert_eq!(Element::unit(&g).norm(p(2)), AbsValue::Pow(0));
        for q in [2, 3, 5, 7] {
            let f = Element::unit(&g).scale(&Scalar::from_integer(q as i64));
            assert_eq!(f.norm(p(q)), AbsValue::Pow(-1));
        }
        let f = Element::from_coeffs(&g, vec![Scalar::from_integer(2), Scalar::from_integer(4)])
            .unwrap();
        assert_eq!(f.norm(p(2)), AbsValue::Pow(-1));
        assert_eq!(Element::zero(&g).norm(p(2)), AbsValue::Zero);
    }

    #[test]
    fn augmentation_and_ideal() {
        let g = grp(FiniteGroup::cyclic(4).unwrap());
        assert!(Element::delta(&g, 3).augmentation().is_one());
        let diff = Element::unit(&g).sub(&Element::delta(&g, 1)).unwrap();
        assert!(diff.augmentation().is_zero());
        assert!(diff.in_augmentation_ideal());
        assert!(!Element::unit(&g).in_augmentation_ideal());
        assert_eq!(Element::ones(&g).augmentation(), Scalar::from_integer(4));
        assert!(!Element::ones(&g).in_augmentation_ideal());
    }

    #[test]
    fn i0_identities() {
        let trivial = grp(FiniteGroup::cyclic(1).unwrap());
        let id = i0_identity(&trivial, p(2)).unwrap();
        assert!(id.element.is_zero());
        assert_eq!(id.norm, AbsValue::Zero);

        let c2 = grp(FiniteGroup::cyclic(2).unwrap());
        let id = i0_identity(&c2, p(3)).unwrap();
        assert_eq!(id.element.coeffs(), &[s("1/2"), s("-1/2")]);
        assert_eq!(id.norm, AbsValue::Pow(0));
        let basis = Element::unit(&c2).sub(&Element::delta(&c2, 1)).unwrap();
        assert_eq!(basis.convolve(&id.element).unwrap(), basis);

        for q in [2, 3, 5, 7] {
            let cp = grp(FiniteGroup::cyclic(q as usize).unwrap());
            assert_eq!(i0_identity(&cp, p(q)).unwrap().norm, AbsValue::Pow(1));
        }
    }

    #[test]
    fn translations() {
        let g = grp(FiniteGroup::dihedral(3).unwrap());
        let phi = Functional::from_values(
            &g,
            (0..6).map(|i| Scalar::from_integer(7 * i + 1)).collect(),
        )
        .unwrap();
        assert_eq!(phi.left_translate(g.identity()).unwrap(), phi);
        for a in g.elements() {
            assert_eq!(
                Functional::ones(&g).left_translate(a).unwrap(),
                Functional::ones(&g)
            );
            for h in g.elements() {
                let moved = Functional::indicator(&g, h).left_translate(a).unwrap();
                assert_eq!(moved, Functional::indicator(&g, g.mul(a, h)));
            }
        }
        assert!(phi.left_translate(6).is_err());
    }

    #[test]
    fn dual_right_action_matches_translation() {
        let g = grp(FiniteGroup::dihedral(4).unwrap());
        let phi = Functional::from_values(
            &g,
            (0..8).map(|i| Scalar::from_integer(i * i - i)).collect(),
        )
        .unwrap();
        assert_eq!(phi.dual_right_action(&Element::unit(&g)).unwrap(), phi);
        for a in g.elements() {
            // φ·δ_a = a^{-1}·φ, i.e. a·φ = φ·δ_{a^{-1}}
            let right = phi
                .dual_right_action(&Element::delta(&g, g.inverse(a)))
                .unwrap();
            assert_eq!(phi.left_translate(a).unwrap(), right);
            let right = phi.dual_right_action(&Element::delta(&g, a)).unwrap();
            assert_eq!(phi.left_translate(g.inverse(a)).unwrap(), right);
        }
        let h = Element::from_coeffs(&g, (0..8).map(|i| Scalar::from_integer(3 - i)).collect())
            .unwrap();
        let image = Functional::ones(&g).dual_right_action(&h).unwrap();
        assert_eq!(image, Functional::ones(&g).scale(&h.augmentation()));
    }

    #[test]
    fn serializes_by_label() {
        let g = grp(FiniteGroup::cyclic(2).unwrap());
        let f = Element::from_coeffs(&g, vec![s("1/2"), s("-3")]).unwrap();
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"0":"1/2","1":"-3/1"}"#
        );
    }
}
